import json
from fractions import Fraction

import pytest

from diagdeform.cli import _emit, _encode, main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sphere_h2_regular(capsys):
    code, out, _ = run_cli(["sphere", "h2", "--cutoff", "3", "--regular"], capsys)
    assert code == 0
    assert "check canonical_class_idempotent_on_basis: PASS" in out
    assert "(1)*x" in out


def test_weyl_eta_json_matches_frozen_table(capsys):
    code, out, _ = run_cli(["weyl", "eta", "--order", "2", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["payload"]["eta"]["1"] == [[1, 2, "1/2"]]
    assert data["payload"]["eta"]["2"] == [[1, 2, "-1/4"], [2, 3, "1/3"]]


def test_groebner_exceptional_is_payload_not_failure(capsys):
    code, out, _ = run_cli(["groebner", "run", "--lambda", "1/1", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["payload"]["specialization"]["verdict"] == "EXCEPTIONAL"
    assert data["payload"]["exceptional_roots"] == ["0", "1"]


def test_groebner_generic_specialization(capsys):
    code, out, _ = run_cli(["groebner", "run", "--lambda", "7/3", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["payload"]["specialization"]["verdict"] == "FIXED_BASIS"


def test_star_check_qplane(capsys):
    code, out, _ = run_cli(
        ["star", "check", "--kind", "qplane", "--trials", "5"], capsys)
    assert code == 0
    assert "check xy_equals_exp_hbar_times_yx: PASS" in out


def test_diagram_nerve_ranks(capsys):
    code, out, _ = run_cli(
        ["diagram", "nerve", "--shape", "cospan", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["payload"]["cohomology_ranks"] == [1, 0, 0]


def test_w1_reduce_roundtrip(tmp_path, capsys):
    f = tmp_path / "coc.json"
    f.write_text(json.dumps(
        {"gammaF": [[1, 2, "1"]], "gammaG": [[0, 1, "3"]]}))
    code, out, _ = run_cli(
        ["w1", "reduce", "--input", str(f), "--cutoff", "6", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["payload"]["class_is_zero"] is True
    assert data["payload"]["witness"]["chi"] == [[1, 3, "1/3"]]


def test_w1_reduce_missing_file_is_usage_error(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["w1", "reduce", "--input", str(tmp_path / "nope.json")])
    assert info.value.code == 2


def test_w1_reduce_misspelled_key_is_usage_error(tmp_path, capsys):
    f = tmp_path / "coc.json"
    f.write_text('{"gamma_f": [[1, 2, "1"]]}')
    with pytest.raises(SystemExit) as info:
        main(["w1", "reduce", "--input", str(f)])
    assert info.value.code == 2


def test_w1_basis_small_cutoff_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["w1", "basis", "--cutoff", "2"])
    assert info.value.code == 2


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-group"])
    assert info.value.code == 2


def test_bad_lambda_value_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["groebner", "run", "--lambda", "pi"])
    assert info.value.code == 2


def test_acceptance_filter(capsys):
    code, out, _ = run_cli(["acceptance", "--filter", "weyl"], capsys)
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert lines == ["PASS weyl-isomorphism", "PASS q-weyl-identities"]


def test_acceptance_unmatched_filter_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["acceptance", "--filter", "zzz"])
    assert info.value.code == 2


def test_json_output_is_deterministic(capsys):
    _, out1, _ = run_cli(["weyl", "closed-form", "--order", "3", "--json"], capsys)
    _, out2, _ = run_cli(["weyl", "closed-form", "--order", "3", "--json"], capsys)
    assert out1 == out2


def test_failed_verdict_exits_1(capsys):
    report = {"command": "probe", "params": {}, "verdicts": {"broken": False},
              "payload": {}}
    assert _emit(report, False) == 1
    out = capsys.readouterr().out
    assert "check broken: FAIL" in out


def test_encoder_exact_scalars():
    assert _encode(Fraction(3, 2)) == "3/2"
    assert _encode({(1, 2): Fraction(1, 3)}) == {"1,2": "1/3"}
    assert _encode([True, None, 5]) == [True, None, 5]
