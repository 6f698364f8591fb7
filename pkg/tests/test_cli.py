"""CLI behaviour: formats, exit codes, determinism, config handling."""

import json

import pytest

from noncongruent.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- certify -------------------------------------------------------------------


def test_certify_single(capsys):
    code, out, _ = run_cli(capsys, "certify", "26611")
    assert code == 0
    record = json.loads(out.strip())
    assert record["n"] == 26611
    assert record["certified_noncongruent"] is True
    assert record["selmer_rank"] == 0


def test_certify_inconclusive_is_still_success(capsys):
    code, out, _ = run_cli(capsys, "certify", "5")
    assert code == 0
    record = json.loads(out.strip())
    assert record["certified_noncongruent"] is False
    assert record["selmer_rank"] == 1


def test_certify_error_record(capsys):
    code, out, _ = run_cli(capsys, "certify", "12")
    assert code == 1
    record = json.loads(out.strip())
    assert "not square-free" in record["error"]


def test_certify_parse_error_record(capsys):
    code, out, _ = run_cli(capsys, "certify", "26611", "banana")
    assert code == 1
    lines = out.strip().splitlines()
    assert json.loads(lines[0])["n"] == 26611
    assert json.loads(lines[1])["error"] == "not an integer"


def test_certify_order_preserved(capsys):
    code, out, _ = run_cli(capsys, "certify", "7", "3", "11", "5")
    assert code == 0
    ns = [json.loads(line)["n"] for line in out.strip().splitlines()]
    assert ns == [7, 3, 11, 5]


def test_certify_text_format(capsys):
    code, out, _ = run_cli(capsys, "certify", "--format", "text", "483")
    assert code == 0
    assert "n=483" in out and "certified=True" in out


def test_certify_from_file(tmp_path, capsys):
    path = tmp_path / "inputs.txt"
    path.write_text("26611\n1290\n")
    code, out, _ = run_cli(capsys, "certify", "--file", str(path))
    assert code == 0
    assert [json.loads(l)["n"] for l in out.strip().splitlines()] == [26611, 1290]


def test_certify_worker_counts_byte_identical(capsys):
    inputs = [str(n) for n in (26611, 5, 1290, 483, 1, 2, 34, 31161)]
    outputs = []
    for workers in ("1", "4"):
        code, out, _ = run_cli(capsys, "certify", "--workers", workers, *inputs)
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_certify_workers_env(capsys, monkeypatch):
    monkeypatch.setenv("NONCONGRUENT_WORKERS", "3")
    code, out, _ = run_cli(capsys, "certify", "26611")
    assert code == 0


def test_certify_mw_rank_annotation(capsys):
    code, out, _ = run_cli(capsys, "certify", "--mw-rank", "0", "26611")
    assert code == 0
    assert json.loads(out.strip())["external_mw_rank"] == 0


def test_certify_no_inputs(capsys):
    code, _, err = run_cli(capsys, "certify")
    assert code == 1
    assert "no inputs" in err


# -- search --------------------------------------------------------------------


def test_search_json(capsys):
    code, out, _ = run_cli(
        capsys, "search", "--theorem", "157", "--t", "1",
        "--bound", "100", "--limit", "1", "--validate",
    )
    assert code == 0
    record = json.loads(out.strip())
    assert record["primes"] == {"p": [17], "q": [5], "r": [7]}
    assert record["n"] == 595
    assert record["selmer_rank"] == 0


def test_search_csv_columns(capsys):
    code, out, _ = run_cli(
        capsys, "search", "--theorem", "533", "--case", "B(i)",
        "--bound", "200", "--limit", "2", "--format", "csv", "--validate",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "theorem,t,params,primes,n,selmer_rank"
    first = lines[1].split(",")
    assert first[0] == "533" and first[4] == "1290" and first[5] == "0"
    assert first[3] == "5;3;43"


def test_search_unvalidated_csv_blank_rank(capsys):
    code, out, _ = run_cli(
        capsys, "search", "--theorem", "157", "--t", "1",
        "--bound", "100", "--limit", "1", "--format", "csv",
    )
    assert code == 0
    assert out.strip().splitlines()[1].endswith(",595,")


def test_search_runs_deterministic(capsys):
    argv = ("search", "--theorem", "1357", "--t", "1", "--bound", "300", "--limit", "10")
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_search_missing_param_is_usage_error(capsys):
    code, _, err = run_cli(
        capsys, "search", "--theorem", "157", "--t", "2", "--bound", "300"
    )
    assert code == 1
    assert "alpha" in err


def test_search_bad_flag_value(capsys):
    code, _, _ = run_cli(capsys, "search", "--theorem", "157", "--alpha", "2", "--bound", "50")
    assert code == 1


# -- verify-table -----------------------------------------------------------------


def test_verify_table_all_pass(capsys):
    code, out, _ = run_cli(capsys, "verify-table")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == 10
    assert all(l.startswith("PASS") for l in lines)
    assert "all 10 reference members verified" in out


# -- lemma-check --------------------------------------------------------------------


def test_lemma_check_passes(capsys):
    code, out, _ = run_cli(capsys, "lemma-check", "--t-max", "12")
    assert code == 0
    assert "FAIL" not in out
    assert "N^2 = tN" in out


def test_lemma_check_bad_t_max(capsys):
    code, _, _ = run_cli(capsys, "lemma-check", "--t-max", "0")
    assert code == 1


# -- density ----------------------------------------------------------------------


def test_density_k_mode(capsys):
    code, out, _ = run_cli(capsys, "density", "--x", "100000", "--k", "2")
    assert code == 0
    payload = json.loads(out.splitlines()[0])
    assert payload["k"] == 2 and payload["x"] == 100000
    assert payload["exact_count"] == 23313
    assert payload["ratio"] == pytest.approx(payload["exact_count"] / payload["asymptotic_value"])


def test_density_family_mode(capsys):
    code, out, _ = run_cli(capsys, "density", "--x", "10000", "--theorem", "157", "--t", "1")
    assert code == 0
    payload = json.loads(out.splitlines()[0])
    assert payload["theorem"] == "157"
    assert payload["exact_count"] > 0


def test_density_requires_exactly_one_mode(capsys):
    code, _, _ = run_cli(capsys, "density", "--x", "1000")
    assert code == 1
    code, _, _ = run_cli(capsys, "density", "--x", "1000", "--k", "1", "--theorem", "157")
    assert code == 1


# -- config / usage ------------------------------------------------------------------


def test_config_file_sets_defaults(tmp_path, capsys):
    config = tmp_path / "run.conf"
    config.write_text("format=text\nworkers=2\n")
    code, out, _ = run_cli(capsys, "--config", str(config), "certify", "483")
    assert code == 0
    assert out.startswith("n=483")


def test_flags_override_config(tmp_path, capsys):
    config = tmp_path / "run.conf"
    config.write_text("format=text\n")
    code, out, _ = run_cli(capsys, "--config", str(config), "certify", "--format", "json", "483")
    assert code == 0
    assert json.loads(out.strip())["n"] == 483


def test_missing_config_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "--config", "/nonexistent.conf", "certify", "1")
    assert code == 1


def test_unknown_command_usage_error(capsys):
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == 1


def test_certificate_json_roundtrip_through_cli(capsys):
    from noncongruent.monsky import Certificate

    code, out, _ = run_cli(capsys, "certify", "1290")
    assert code == 0
    cert = Certificate.from_dict(json.loads(out.strip()))
    assert cert.n == 1290 and cert.certified_noncongruent
