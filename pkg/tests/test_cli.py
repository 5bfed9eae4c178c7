import json

import pytest

from hopfkit.bundles import parse_hopf, parse_module, serialize_hopf, serialize_module
from hopfkit.cli import main, resolve_hopf, resolve_inclusion, resolve_module
from hopfkit.errors import BundleParseError
from hopfkit.hopf_core import verify_hopf


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_verify_builtin_h8(capsys):
    code, out = run(["verify", "builtin:h8"], capsys)
    assert code == 0
    assert "result: OK" in out


def test_verify_taft(capsys):
    code, out = run(["verify", "builtin:taft?l=3"], capsys)
    assert code == 0


def test_verify_json_deterministic(capsys):
    code1, out1 = run(["verify", "builtin:group?table=klein", "--report", "json"], capsys)
    code2, out2 = run(["verify", "builtin:group?table=klein", "--report", "json"], capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["ok"] is True
    assert all(c["status"] == "pass" for c in data["checks"])


def test_bundle_roundtrip(h8, tmp_path):
    text = serialize_hopf(h8)
    H2 = parse_hopf(text)
    assert H2.mult == h8.mult
    assert H2.comult == h8.comult
    assert H2.unit == h8.unit
    assert H2.counit == h8.counit
    assert H2.antipode_cols == h8.antipode_cols
    assert verify_hopf(H2).ok
    # byte-identical re-serialization
    assert serialize_hopf(H2) == text


def test_bundle_file_verify(tmp_path, capsys, h8):
    p = tmp_path / "h8.bundle"
    p.write_text(serialize_hopf(h8))
    code, out = run(["verify", str(p)], capsys)
    assert code == 0


def test_corrupt_bundle_exit_2(tmp_path, capsys, h8):
    text = serialize_hopf(h8).replace("\n0 0 0 1\n", "\n0 0 99 1\n", 1)
    p = tmp_path / "bad.bundle"
    p.write_text(text)
    code = main(["verify", str(p)])
    assert code == 2


def test_module_bundle_roundtrip(h8_incl, tmp_path):
    from conftest import kchar

    V = kchar(h8_incl.K, 1, -1)
    text = serialize_module(V, "K")
    V2 = parse_module(text, lambda ref: h8_incl.K)
    assert V2.action == tuple(m for m in V.action)


def test_analyze_h8(capsys):
    code, out = run(["analyze", "builtin:h8", "--expect-frobenius", "true",
                     "--expect-central", "true"], capsys)
    assert code == 0
    assert "frobenius" in out


def test_analyze_taft_expectations(capsys):
    code, _ = run(["analyze", "builtin:taft?l=3", "--expect-frobenius", "false"], capsys)
    assert code == 0
    code, _ = run(["analyze", "builtin:taft?l=3", "--expect-frobenius", "true"], capsys)
    assert code == 1


def test_analyze_uqsl2_cartan(capsys):
    code, out = run(["analyze", "builtin:uqsl2?l=3&sub=cartan",
                     "--expect-frobenius", "true", "--expect-central", "false"], capsys)
    assert code == 0


def test_check_functor_h8(capsys):
    code, out = run([
        "check-functor", "builtin:h8",
        "--module", "builtin:kchar?act=1,1,1,1",
        "--module", "builtin:kchar?act=1,-1,-1,1&deg=x&name=linex",
        "--frobenius-monoidal", "--separable", "--braided",
    ], capsys)
    assert code == 0, out
    assert "separable" in out and "braided" in out


def test_check_functor_braided_skipped_on_noncentral(capsys):
    code, out = run([
        "check-functor", "builtin:uqsl2?l=3&sub=cartan",
        "--module", "builtin:trivial",
        "--frobenius-monoidal", "--braided",
    ], capsys)
    assert code == 0
    assert "SKIPPED" in out and "not central" in out


def test_frob_objects_cmd(capsys):
    code, out = run([
        "frob-objects", "builtin:h8", "--separable-normalized",
        "--object", "builtin:unit",
        "--object", "builtin:etale?n=x&ex=1&ey=-1",
    ], capsys)
    assert code == 0, out
    assert "commutative" in out


def test_frob_objects_refuses_non_central(capsys):
    code, out = run(["frob-objects", "builtin:uqsl2?l=3&sub=cartan"], capsys)
    assert code == 1
    assert "central" in out


def test_frob_objects_bad_object_spec(capsys):
    code = main(["frob-objects", "builtin:h8", "--object", "builtin:wat"])
    assert code == 2


def test_scan_sl2_l3(capsys):
    code, out = run(["scan-sl2", "--l", "3"], capsys)
    assert code == 0


def test_cartan_check(capsys):
    code, out = run(["cartan-check", "--types", "A1,A2,G2", "--l", "5,7"], capsys)
    assert code == 0
    code, out = run(["cartan-check", "--types", "A2", "--l", "3"], capsys)
    assert code == 0
    assert "witness" in out


def test_resolver_errors():
    with pytest.raises(BundleParseError):
        resolve_hopf("builtin:nope")
    with pytest.raises(BundleParseError):
        resolve_inclusion("builtin:uqsl2?l=3&sub=parabolic")


def test_dump_roundtrip(capsys):
    code, out = run(["dump", "builtin:taft?l=3"], capsys)
    assert code == 0
    H = parse_hopf(out)
    assert verify_hopf(H).ok


def test_yd_module_bundle_verify(tmp_path, h8_incl, capsys):
    from conftest import kline
    from hopfkit.bundles import serialize_module

    L = kline(h8_incl.K, "x", 1, -1)
    text = serialize_module(L.module, "builtin:group?table=klein", coaction=L.coaction)
    p = tmp_path / "line.bundle"
    p.write_text(text)
    code, out = run(["verify", str(p)], capsys)
    assert code == 0
    assert "yd-compatibility" in out


def test_check_functor_parallel_jobs(monkeypatch, capsys):
    monkeypatch.setenv("HOPFKIT_JOBS", "2")
    code1, out1 = run([
        "check-functor", "builtin:h8",
        "--module", "builtin:kchar?act=1,1,1,1",
        "--module", "builtin:kchar?act=1,-1,-1,1",
        "--frobenius-monoidal", "--report", "json",
    ], capsys)
    monkeypatch.setenv("HOPFKIT_JOBS", "1")
    code2, out2 = run([
        "check-functor", "builtin:h8",
        "--module", "builtin:kchar?act=1,1,1,1",
        "--module", "builtin:kchar?act=1,-1,-1,1",
        "--frobenius-monoidal", "--report", "json",
    ], capsys)
    assert code1 == code2 == 0
    assert out1 == out2  # deterministic assembly regardless of parallelism
