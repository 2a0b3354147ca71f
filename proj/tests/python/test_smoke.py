import math

import pytest

import renyikit as rk


@pytest.fixture
def bsc():
    return rk.JointPmf([[0.4, 0.1], [0.1, 0.4]])


def test_joint_roundtrip(bsc):
    assert bsc.nx == 2 and bsc.ny == 2
    again = rk.JointPmf.from_json(bsc.to_json())
    assert again.rows() == bsc.rows()
    assert rk.power(bsc, 2).nx == 4
    assert rk.product(bsc, bsc).ny == 4


def test_classic_measures():
    assert rk.renyi_entropy([0.25] * 4, 2.0) == pytest.approx(2.0)
    assert rk.renyi_divergence([0.5, 0.5], [0.5, 0.5], math.inf) == pytest.approx(0.0)
    uniform = rk.JointPmf([[0.125, 0.125]] * 4)
    for alpha in (0.0, 0.5, 1.0, 2.0, math.inf):
        assert rk.cond_entropy(uniform, alpha) == pytest.approx(2.0)
        assert rk.mutual_info(uniform, alpha) == pytest.approx(0.0, abs=1e-12)


def test_two_parameter_collapse(bsc):
    assert rk.i_tilde(bsc, 2.0, 2.0)["value"] == pytest.approx(rk.mutual_info(bsc, 2.0))
    assert rk.h_tilde(bsc, 2.0, 1.0)["value"] == pytest.approx(rk.cond_entropy(bsc, 2.0, "Hstar"))
    corner = rk.h_tilde(bsc, 0.0, 0.0)
    assert corner["corner_warning"]
    with pytest.raises(rk.UndefinedCorner):
        rk.h_tilde(bsc, 1.0, math.inf)
    with pytest.raises(rk.InvalidOrder):
        rk.h_tilde(bsc, -1.0, 0.5)
    assert issubclass(rk.RenyiError, ValueError)


def test_variational_and_exponents(bsc):
    rep = rk.variational_i(bsc, 2.0, 0.5)
    closed = (1 - 2.0) * rk.i_tilde(bsc, 2.0, 0.5)["value"]
    assert abs(rep["minimum"] - closed) <= max(1e-4, rep["gap"])
    h2 = rk.cond_entropy(bsc, 2.0)
    assert rk.pa_exponent(bsc, 2.0, 1.0)["value"] == pytest.approx(max(0.0, 1.0 - h2))
    e = rk.sc_exponent(bsc, 0.5, 0.1, compute_dual=True)
    assert e["dual_value"] == pytest.approx(e["value"], abs=1e-3)


def test_simulations(bsc):
    value, table = rk.pa_min_divergence_exhaustive(bsc, 1, 0.5)
    assert value == pytest.approx(0.0, abs=1e-12)
    assert table == [0, 0]
    px, channel = [0.5, 0.5], [[0.8, 0.2], [0.2, 0.8]]
    exact = rk.sc_expected_divergence_exact(px, channel, 1, 1, 2.0)
    assert exact["value_bits"] == pytest.approx(rk.mutual_info(bsc, 2.0))
    assert exact["stderr"] is None
    a = rk.sc_expected_divergence_mc(px, channel, 2, 2, 2.0, samples=1000, seed=3)
    b = rk.sc_expected_divergence_mc(px, channel, 2, 2, 2.0, samples=1000, seed=3)
    assert a == b
    with pytest.raises(rk.EnumerationCap):
        rk.sc_expected_divergence_exact(px, channel, 4, 8, 2.0)


def test_verify_subset():
    report = rk.verify(["additivity"], samples=10)
    assert report["all_passed"]
    assert [p["id"] for p in report["properties"]] == ["additivity"]
