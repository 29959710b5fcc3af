import cmath
import math

import pytest

import nullseries as ns


def test_weight_values():
    assert ns.eval_weight("t_log", 2.0, 1.0) == pytest.approx(1.0)
    assert ns.eval_weight("power", 2.0, 3.0) == pytest.approx(9.0)
    with pytest.raises(ns.NullSeriesError):
        ns.eval_weight("power", 2.0, -1.0)


def test_schedule_identities():
    s = ns.schedule(n_max=8)
    assert s["phi"][0] == 1.0
    assert s["sigma"][0] == pytest.approx(2 * math.pi)
    for n in range(1, 9):
        assert s["tau"][n] == pytest.approx((s["sigma"][n - 1] - 2 * s["sigma"][n]) / 12, rel=1e-12)


def test_cantor_measure():
    c = ns.cantor_endpoints(6, seed=3)
    s = ns.schedule(n_max=6)
    assert len(c["left"][6]) == 64
    assert 64 * c["sigma"][6] == pytest.approx(2 * math.pi * s["phi"][6], rel=1e-12)


def test_spectral_round_trip_and_conjugate():
    N = 64
    cos3 = [math.cos(3 * 2 * math.pi * j / N) for j in range(N)]
    conj = ns.conjugate(cos3)
    for j in range(N):
        assert conj[j] == pytest.approx(math.sin(3 * 2 * math.pi * j / N), abs=1e-12)
    c = ns.analyze([complex(v) for v in cos3])
    back = ns.synthesize(c, N)
    assert max(abs(b - v) for b, v in zip(back, cos3)) < 1e-13
    assert ns.poisson(c, 0j) == pytest.approx(0.0, abs=1e-15)


def test_harmonic_measure_annulus():
    v, se = ns.harmonic_measure("annulus", inner=0.8, z=0.9, target="inner", paths=20000, seed=1)
    assert abs(v - math.log(0.9) / math.log(0.8)) < 4 * se


def test_truncation_extremal():
    lhs, rhs, holds = ns.truncation([-2.0, 5.0], [0.7, 0.3], -2.0, 5.0, 1.0)
    assert holds
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_audit_recursion():
    out = ns.audit_synthetic(deltas=[1 / 16])
    assert out["recursion_pass"]
    assert len(out["c_values"]) == 1
