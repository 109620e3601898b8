import math

import numpy as np
import pytest

import walshpy as w


def sign(n, c):
    return -1.0 if bin(n & c).count("1") % 2 else 1.0


def test_walsh_functions_match_bit_parity():
    for n in range(8):
        expect = [sign(n, c) for c in range(8)]
        assert w.walsh_function(n, 3).tolist() == expect


def test_dirichlet_kernel_modes_agree():
    for n in range(17):
        assert np.array_equal(w.dirichlet_kernel(n, 4), w.dirichlet_kernel(n, 4, direct=True))
    assert w.dirichlet_kernel(4, 3).tolist() == [4, 0, 0, 0, 4, 0, 0, 0]


def test_forward_matches_direct_sum():
    rng = np.random.default_rng(0)
    f = rng.uniform(-1, 1, size=(8, 8))
    s = w.forward(f)
    for i, j in [(0, 0), (3, 5), (7, 2)]:
        direct = sum(f[x, y] * sign(i, x) * sign(j, y) for x in range(8) for y in range(8)) / 64
        assert s[i, j] == pytest.approx(direct, abs=1e-14)
    assert np.allclose(w.inverse(s), f, rtol=0, atol=1e-14)


def test_quasinorms_and_hp_example():
    d4 = w.dirichlet_kernel(4, 3)
    assert w.lp_quasinorm(d4, 0.5) == pytest.approx(0.25)
    assert w.hp_quasinorm(np.outer(d4, d4), 0.5) == pytest.approx(1.890625, abs=1e-9)
    assert w.integrate(np.ones((4, 4))) == 1.0


def test_conditional_expectation_is_dyadic_partial_sum():
    rng = np.random.default_rng(1)
    f = rng.integers(-8, 8, size=(16, 16)).astype(float)
    for n in range(5):
        assert np.array_equal(w.conditional_expectation(f, n), w.partial_sum_rect(f, 2**n, 2**n))


def test_random_atom_and_sweep():
    atom = w.random_atom(6, 0.5, 2, seed=7)
    assert 0.5 < atom["saturation"] <= 1.0
    assert abs(atom["grid"].sum()) < 1e-9
    rep = w.theorem1_sum(atom["grid"], 0.5, 64, threads=2)
    assert len(rep["n"]) == 64
    assert np.all(np.isfinite(rep["cumulative"]))
    assert np.all(rep["term"][:4] == 0.0)


def test_one_dimensional_zeta():
    rep = w.simon_1d_sum(np.ones(16), 0.5, 10000)
    direct = sum(k ** -1.5 for k in range(1, 10001))
    assert rep["cumulative"][-1] == pytest.approx(direct, abs=1e-9)
    assert rep["cumulative"][-1] + rep["tail"] == pytest.approx(2.612375348685488, abs=1e-9)


def test_counterexample():
    assert w.select_alphas(0.5, 4, 62)["alphas"] == [2, 8, 16, 24]
    cm = w.counterexample([2, 5], 7)
    assert cm["block_values"][0] == pytest.approx(16 / math.sqrt(2))
    div = w.divergence_experiment([2, 5], 7, 127)
    assert div["monotone"] and div["floors_met"]
    with pytest.raises(ValueError):
        w.counterexample([1, 5], 7)


def test_kernel_identities_and_errors():
    for name, (checked, failures) in w.kernel_identities(5).items():
        assert checked > 0 and failures == 0, name
    with pytest.raises(ValueError):
        w.forward(np.ones(6))
    with pytest.raises(ValueError):
        w.hp_quasinorm(np.ones((4, 2)), 0.5)
