"""Smoke tests for the rotwalk extension module."""

import json
import math

import pytest

import rotwalk as rw


def test_circle_ops():
    assert rw.reduce(1.25) == pytest.approx(0.25)
    assert rw.reduce(-0.25) == pytest.approx(0.75)
    assert rw.reduce_rational("7/3") == "1/3"
    assert rw.circle_dist(0.1, 0.9) == pytest.approx(0.2)
    assert rw.grid_dist(0.05, 3) == pytest.approx(0.05)
    assert rw.in_good_set(0.05, 3, "1/5")
    assert not rw.in_good_set(1.0 / 6.0, 3, "49/100")


def test_continued_fractions():
    golden = rw.angle_golden()
    cf = rw.continued_fraction(golden, 8)
    assert cf == ["0"] + ["1"] * 7
    assert rw.angle_value(golden) == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-14)

    third = rw.angle_rational("1/3")
    assert rw.continued_fraction(third, 8) == ["0", "3"]
    convs = rw.convergents(third)
    assert convs[-1] == ("1", "3")


def test_liouville_and_witness():
    angle = rw.build_liouville(["6"], 10)
    convs = rw.convergents(angle)
    assert convs[1] == ("1", "10")
    # the first convergent is a gamma = 6 witness, so the exponent exceeds 6
    assert rw.witness_exponent(angle, 1, 10) >= 6.0
    e = rw.witness_exponent(rw.angle_golden(), 2, 3)
    assert e == pytest.approx(2.7519, abs=1e-3)


def test_series_and_spectral():
    s = rw.series([(1, "1")])
    assert rw.eval_series(s, 0.0) == pytest.approx(1.0)
    assert rw.fourier_coeff(s, 1) == pytest.approx(0.5)
    assert rw.cr_norm_bound(s, 1) == pytest.approx(2 * math.pi)

    t2 = json.loads(rw.t2_term(10, "6", "3/5"))
    assert t2["terms"][0] == ["10", "1/100"]

    quarter = rw.angle_rational("1/4")
    assert rw.eigenvalue(1, quarter) == pytest.approx(1.0)
    assert rw.kv_partial(rw.series([(1, "2")]), quarter, 1) == pytest.approx(2.0)
    with pytest.raises(rw.ResonanceError):
        rw.kv_partial(rw.series([(2, "1")]), rw.angle_rational("1/2"), 4)


def test_chain():
    lam = rw.chain_spectrum(3, 1)
    assert lam[0] == pytest.approx(1.0)
    assert lam[1] == pytest.approx(-0.5)
    assert rw.mixing_rho(5, 1) == pytest.approx(math.cos(math.pi / 5))
    bound = rw.lemma2_bound(1, "1", 3, 1, 1e4, 0.6, 0.25)
    assert bound == pytest.approx(12.5 * 16 / 10**0.8, rel=1e-12)


def test_walk_and_oracle():
    g = rw.angle_golden()
    s = rw.series([(1, "1")])
    est = json.loads(rw.mc_tail(g, s, n=1, m=4000, s=1.0, t=0.0, seed=7))
    lo, hi = est["wilson99"]
    assert lo < 0.5 < hi

    p = rw.exact_tail(s, g, n=1, t=0.0, s=1.0)
    assert p == pytest.approx(0.5, abs=1e-3)

    # determinism across thread counts
    a = rw.mc_tail(g, s, n=200, m=500, s=0.6, t=0.2, seed=5, threads=1)
    b = rw.mc_tail(g, s, n=200, m=500, s=0.6, t=0.2, seed=5, threads=3)
    assert a == b


def test_construction_and_verify():
    built = json.loads(rw.theorem1_build(s="3/5", depth=1, toy=False))
    ledger = built["ledger"]
    assert ledger["levels"][0]["N"] == "5800"
    report = json.loads(rw.verify_ledger(json.dumps(ledger)))
    assert report["all_pass"]

    # negative control: corrupt one level
    ledger["levels"][0]["N"] = "5700"
    report = json.loads(rw.verify_ledger(json.dumps(ledger)))
    assert not report["all_pass"]

    with pytest.raises(rw.InfeasibleError):
        rw.theorem1_build(s="3/5", depth=2, toy=False)


def test_lemma1_and_wilson():
    cert = json.loads(rw.lemma1_check("1/3", 3, 200, "3/5", "1/2"))
    assert cert["delta"] == "1/7200"
    lo, hi = rw.wilson99(0, 1000)
    assert lo == 0.0 and 0 < hi < 0.02
