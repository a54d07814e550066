import json

from hyperg_gauss.cli import EXIT_OK, EXIT_USAGE, REPORT_HEADER, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pmf_hypergeometric(capsys):
    code, out, _ = run(capsys, "pmf", "--hyper", "2", "3", "3")
    assert code == EXIT_OK
    assert "0: 1/5" in out and "1: 3/5" in out
    assert "variance = 2/5" in out
    assert "sigma0_sq = 1/3" in out
    assert "symmetric = true" in out


def test_pmf_binomial(capsys):
    code, out, _ = run(capsys, "pmf", "--binom", "2", "1/2")
    assert code == EXIT_OK
    assert "1: 1/2" in out
    assert "kappa3 = 0" in out


def test_pmf_rejects_bad_params(capsys):
    code, _, err = run(capsys, "pmf", "--hyper", "9", "3", "3")
    assert code == EXIT_USAGE
    assert "error:" in err


def test_distance_exception_case(capsys):
    code, out, _ = run(capsys, "distance", "--N", "2", "--n", "1", "--tau", "sigma0")
    assert code == EXIT_OK
    assert "exception = true" in out
    assert "sigma_d_upper: EXPECTED_FAIL" in out


def test_distance_generic(capsys):
    code, out, _ = run(capsys, "distance", "--N", "10", "--n", "4", "--tau", "mid")
    assert code == EXIT_OK
    assert "exception = false" in out
    assert "d_exact" in out  # n even


def test_distance_rejects_tau_outside_range(capsys):
    code, _, err = run(capsys, "distance", "--N", "10", "--n", "4", "--tau", "7")
    assert code == EXIT_USAGE
    assert "sigma" in err


def test_verify_small_sweep_deterministic(capsys, tmp_path):
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["verify", "--N-max", "4", "--include-binomial-n-max", "1",
            "--suites", "theorem,remarks", "--tau-grid", "sigma"]
    assert main(argv + ["--output", str(out_a)]) == EXIT_OK
    assert main(argv + ["--output", str(out_b), "--jobs", "2"]) == EXIT_OK
    capsys.readouterr()
    assert out_a.read_bytes() == out_b.read_bytes()
    text = out_a.read_text()
    assert text.startswith(REPORT_HEADER)
    assert "theorem,2,1,sigma" in text
    assert "EXPECTED_FAIL" not in text.split("\n")[0]


def test_verify_json_format(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify", "--N-max", "4", "--include-binomial-n-max", "0",
                 "--suites", "theorem", "--tau-grid", "sigma0",
                 "--format", "json", "--output", str(out)])
    capsys.readouterr()
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["version"] == "hyperg-gauss-report v1"
    statuses = {row["status"] for row in payload["rows"]}
    assert statuses <= {"PASS", "EXPECTED_FAIL", "INFO"}


def test_verify_config_file_with_flag_override(capsys, tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("N_max = 8\nsuites = theorem\ntau_grid = sigma\n")
    out = tmp_path / "r.csv"
    code = main(["verify", "--config", str(cfg), "--N-max", "4",
                 "--include-binomial-n-max", "0", "--output", str(out)])
    capsys.readouterr()
    assert code == EXIT_OK
    rows = [line for line in out.read_text().splitlines()[2:] if line]
    assert rows
    for line in rows:
        suite, N = line.split(",")[:2]
        assert suite == "theorem"
        assert int(N) <= 4  # the flag beats the config file


def test_verify_rejects_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suites", "nonsense")
    assert code == EXIT_USAGE
    assert "suite" in err


def test_limit_sweep(capsys):
    code, out, _ = run(capsys, "limit-sweep", "--n", "1", "3", "5")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == REPORT_HEADER
    assert lines[1].startswith("n,sigma,d,")
    first = lines[2].split(",")
    assert first[0] == "1"
    assert first[3].startswith("0.1706723")


def test_limit_sweep_rejects_even_n(capsys):
    code, _, err = run(capsys, "limit-sweep", "--n", "2")
    assert code == EXIT_USAGE
    assert "odd" in err


def test_factorize_command(capsys):
    code, out, _ = run(capsys, "factorize", "--hyper", "2", "2", "2")
    assert code == EXIT_OK
    assert "p_1 = [" in out and "p_2 = [" in out
    assert "reconstruction_error <=" in out


def test_concentration_command(capsys):
    code, out, _ = run(capsys, "concentration", "--binom", "1", "1/2", "--h", "1")
    assert code == EXIT_OK
    assert "window_sup = 1/2" in out
    assert "window_vs_variance: PASS" in out
    assert "levy_refined: PASS" in out
