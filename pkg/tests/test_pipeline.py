import json
import os
import stat
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from descent2.cas import CasClient, CasConfig
from descent2.pipeline import (
    CurveInput,
    GlobalCertificate,
    PipelineConfig,
    batch_run,
    ingest_lmfdb,
    run_conditions,
    stats_table,
)
from descent2.polynomials import RatPoly

FIX = Path(__file__).parent / "fixtures"


def _corpus():
    ingest = ingest_lmfdb(str(FIX / "curves12.csv"))
    assert not ingest.errors
    certs = {}
    for path in sorted((FIX / "certs").glob("*.json")):
        cert = GlobalCertificate.from_json(json.loads(path.read_text()))
        certs[cert.label] = cert
    return ingest.accepted, certs


def test_curve_input_validation():
    with pytest.raises(ValueError):
        CurveInput("even", RatPoly([1, 0, 0, 0, 1]), 0)
    with pytest.raises(ValueError):
        CurveInput("nonsep", RatPoly([0, 0, 1, 0, 1]) * RatPoly([0, 1]), 0)


def test_reducible_short_circuits():
    rep = run_conditions(CurveInput("r", RatPoly([-1, 0, 0, 0, 0, 1]), 2), None)
    assert rep.conditions["1_irreducible"] == "fail"
    assert rep.conditions["6_theta_rank"] == "skipped"
    assert rep.verdict == "not-certified"


def test_bad_prime_constructed_failure():
    rep = run_conditions(CurveInput("b", RatPoly([-1, -4, 0, 4, -6, 1]), 2), None)
    assert rep.conditions["4_bad_primes"] == "fail"


def test_no_certificate_skips_with_fail():
    rep = run_conditions(CurveInput("n", RatPoly([1, 0, 0, 1, 0, 1]), 2), None)
    assert rep.conditions["5_class_groups"] == "skipped"
    assert rep.verdict == "not-certified"


def test_certificate_label_mismatch():
    with pytest.raises(ValueError):
        run_conditions(
            CurveInput("a", RatPoly([1, 0, 0, 1, 0, 1]), 2),
            GlobalCertificate("b", 0, 0),
        )


def test_verdict_monotone_under_certificate_removal():
    curve = CurveInput("m", RatPoly([1, -4, 0, 0, 0, 4]), 2)
    with_cert = run_conditions(curve, GlobalCertificate("m", 0, 0))
    without = run_conditions(curve, None)
    assert with_cert.verdict == "finite-certified"
    assert without.verdict == "not-certified"


def test_ingest_rejects_malformed(tmp_path):
    csv = tmp_path / "c.csv"
    csv.write_text(
        "# comment\n"
        "c0,0;0;0;2;1;... ,2\n"        # unparseable coefficient
        "c1,0;0;1;2;1;0;1,2\n"         # even degree after trimming: rejected
        "csq,0;0;3;0;0;3,1\n"          # 3x^2(x^3+1)-ish: not separable: rejected
        "c2,1;-4;0;0;0;4,2\n"          # the motivating curve: accepted
        "c2,1;-4;0;0;0;4,2\n"          # duplicate label
        "broken line\n"
        "c3,1;2;3,notanint\n"
    )
    ingest = ingest_lmfdb(str(csv))
    assert [c.label for c in ingest.accepted] == ["c2"]
    assert len(ingest.errors) == 6
    assert ingest.accepted[0].mw_rank == 2


def test_ingest_empty_file(tmp_path):
    csv = tmp_path / "e.csv"
    csv.write_text("")
    ingest = ingest_lmfdb(str(csv))
    assert ingest.accepted == [] and ingest.errors == []


@pytest.mark.slow
def test_batch_matches_frozen_corpus_and_is_deterministic():
    curves, certs = _corpus()
    expected = json.loads((FIX / "curves12_expected.json").read_text())
    report1 = batch_run(curves, certs, jobs=1)
    report3 = batch_run(curves, certs, jobs=3)
    assert json.dumps(report1, sort_keys=True) == json.dumps(report3, sort_keys=True)
    assert report1["total"] == 12
    by_label = {r["label"]: r for r in report1["reports"]}
    for label, exp in expected.items():
        got = by_label[label]
        assert got["verdict"] == exp["verdict"], label
        for key in ("deg_H", "d_real_pairs", "spec_kf2_at_2", "spec_kf_at_2",
                    "theta2_rank", "thetaR_rank", "theta_rank_sum", "literal_threshold"):
            if key in exp:
                assert got["quantities"][key] == exp[key], (label, key)
    verified = sum(1 for e in expected.values() if e["verdict"] == "finite-certified")
    assert report1["verified"] == verified
    table = stats_table(report1)
    assert str(report1["verified"]) in table


def _write_helper(tmp_path, body: str) -> str:
    helper = tmp_path / "helper.py"
    helper.write_text(body)
    return f"{sys.executable} {helper}"


def test_cas_client_disabled_returns_none(tmp_path):
    client = CasClient(CasConfig(helper_cmd=None))
    curve = CurveInput("x", RatPoly([1, 0, 0, 1, 0, 1]), 2)
    assert client.fetch(curve) is None


def test_cas_client_round_trip_and_cache(tmp_path):
    body = (
        "import sys, json\n"
        "line = sys.stdin.readline().split()\n"
        "if line[0] == 'CL2':\n"
        "    print(json.dumps({'cl2_kf': 1, 'cl2_kf2': 1}))\n"
        "else:\n"
        "    print(json.dumps({'s_units': [['1'] + ['0']*9]}))\n"
    )
    cmd = _write_helper(tmp_path, body).split()
    client = CasClient(CasConfig(helper_cmd=cmd, cache_dir=str(tmp_path / "cache")))
    curve = CurveInput("y", RatPoly([1, 0, 0, 1, 0, 1]), 2)
    cert = client.fetch(curve, bad_primes=[3])
    assert cert is not None and cert.cl2_kf == 1 and cert.cl2_kf2 == 1
    assert cert.s_units and cert.s_units[0][0] == Fraction(1)
    # cached copy is used even if the helper now misbehaves
    client2 = CasClient(CasConfig(helper_cmd=["false"], cache_dir=str(tmp_path / "cache")))
    cert2 = client2.fetch(curve)
    assert cert2 is not None and cert2.cl2_kf == 1


def test_cas_client_malformed_json(tmp_path):
    cmd = _write_helper(tmp_path, "print('not json at all')\n").split()
    client = CasClient(CasConfig(helper_cmd=cmd))
    curve = CurveInput("z", RatPoly([1, 0, 0, 1, 0, 1]), 2)
    assert client.fetch(curve) is None


def test_cas_client_timeout(tmp_path):
    cmd = _write_helper(tmp_path, "import time\ntime.sleep(5)\n").split()
    client = CasClient(CasConfig(helper_cmd=cmd, timeout=0.5))
    curve = CurveInput("t", RatPoly([1, 0, 0, 1, 0, 1]), 2)
    assert client.fetch(curve) is None


def test_sunits_route_quantities():
    curve = CurveInput("s", RatPoly([2, -5, -2, 0, 1, 1]), 2)
    cert = GlobalCertificate(
        "s", 0, 0,
        s_units=[[Fraction(1)] + [Fraction(0)] * 9, [Fraction(0), Fraction(1)] + [Fraction(0)] * 8],
    )
    rep = run_conditions(curve, cert)
    assert rep.verdict == "finite-certified"
    assert "kernel_intersection_dim" in rep.quantities
    assert rep.quantities["kernel_intersection_bound"] == 7 - 2
    # the generator theta is not a kernel element: it must have been ignored
    assert any("ignored" in n for n in rep.notes)
    assert rep.quantities["s_unit_generators_used"] == 1
