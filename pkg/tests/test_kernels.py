import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import norm

from nlkpp import kernels as ker


def test_dirac_mass_and_support():
    k = ker.dirac(-1.0, 2.0)
    assert k.total_mass == 2.0
    assert k.support() == (-1.0, -1.0)
    kn = ker.normalize(k)
    assert kn.total_mass == pytest.approx(1.0)


def test_normalize_uniform_halves():
    k = ker.uniform_density(-1.0, 1.0, mass=2.0)
    kn = ker.normalize(k)
    assert kn.total_mass == pytest.approx(1.0, abs=1e-12)
    assert kn.density.values[0] == pytest.approx(0.5)


def test_zero_mass_rejected():
    with pytest.raises(ker.KernelError):
        ker.normalize(ker.Kernel(atoms=((0.0, 0.0),)))


def test_negative_atom_rejected():
    with pytest.raises(ker.KernelError):
        ker.Kernel(atoms=((0.0, -1.0),))


def test_nonuniform_grid_rejected():
    with pytest.raises(ker.KernelError):
        ker.Density(np.array([0.0, 1.0, 3.0]), np.ones(3))


def test_alpha_plus_single_advanced_atom():
    # K = delta(. + 1): interaction mass one unit ahead of the front
    k = ker.dirac(-1.0)
    assert ker.alpha_plus(k, 2.5) == pytest.approx(0.4, abs=1e-12)
    assert ker.alpha_minus(k, 2.5) == pytest.approx(0.0, abs=1e-12)


def test_alpha_uniform_symmetric():
    k = ker.uniform_density(-1.0, 1.0, n=2001)
    assert ker.alpha_plus(k, 2.0) == pytest.approx(0.125, abs=1e-6)
    assert ker.alpha_minus(k, 2.0) == pytest.approx(0.125, abs=1e-6)


def test_exp_moment_gaussian_right_tail():
    # int_0^inf e^{-s} N(0,1)(s) ds = e^{1/2} (1 - Phi(1))
    k = ker.gaussian_density()
    oracle = math.exp(0.5) * (1.0 - norm.cdf(1.0))
    assert ker.exp_moment(k, -1.0, "right") == pytest.approx(oracle, abs=5e-3)


def test_exp_moment_atom_exact():
    k = ker.dirac(2.0, 1.0)
    assert ker.exp_moment(k, -0.5, "both") == pytest.approx(math.exp(-1.0))
    assert ker.exp_moment(k, -0.5, "left") == 0.0


def test_exp_moment_overflow_is_inf():
    k = ker.dirac(1000.0, 1.0)
    assert ker.exp_moment(k, 10.0, "right") == math.inf


def test_convolve_constant_profile():
    k = ker.normalize(ker.Kernel(atoms=((-1.0, 0.3), (2.0, 0.7))))
    prof = lambda t: np.ones_like(np.asarray(t, dtype=float))
    assert ker.convolve(k, prof, 0.0) == pytest.approx(1.0)


def test_convolve_shifts_atom():
    k = ker.dirac(1.0)
    prof = lambda t: np.asarray(t, dtype=float) ** 2
    # (K * phi)(t) = phi(t - 1)
    assert ker.convolve(k, prof, 3.0) == pytest.approx(4.0)


def test_convolve_density_linear_profile():
    k = ker.uniform_density(-1.0, 1.0, n=801)
    prof = lambda t: 2.0 * np.asarray(t, dtype=float) + 1.0
    # linear profiles pass through symmetric kernels unchanged
    assert ker.convolve(k, prof, 0.5) == pytest.approx(2.0, abs=1e-6)


def test_from_config_roundtrip():
    cfg = {
        "atoms": [{"s": -1.0, "mass": 1.0}, {"s": 0.5, "mass": 1.0}],
        "density": {"lo": -2.0, "hi": 2.0, "n": 101, "kind": "uniform"},
    }
    k, raw_mass = ker.from_config(cfg)
    assert k.total_mass == pytest.approx(1.0, abs=1e-12)
    assert raw_mass == pytest.approx(3.0, abs=1e-9)
    assert k.support() == (-2.0, 2.0)


def test_from_config_table_length_mismatch():
    cfg = {"density": {"lo": 0.0, "hi": 1.0, "n": 5, "kind": "table",
                       "values": [1.0, 2.0]}}
    with pytest.raises(ker.KernelError):
        ker.from_config(cfg)


atom_lists = st.lists(
    st.tuples(st.floats(-5, 5), st.floats(0.01, 10)), min_size=1, max_size=4
)


@given(atom_lists)
@settings(max_examples=50, deadline=None)
def test_normalize_idempotent(atoms):
    k = ker.normalize(ker.Kernel(atoms=tuple(atoms)))
    k2 = ker.normalize(k)
    assert k2.total_mass == pytest.approx(1.0, rel=1e-12)
    for (s1, m1), (s2, m2) in zip(k.atoms, k2.atoms):
        assert m1 == pytest.approx(m2, rel=1e-12)


@given(atom_lists, st.floats(0.5, 10), st.floats(1.1, 5))
@settings(max_examples=50, deadline=None)
def test_alpha_scales_inversely_with_speed(atoms, c, factor):
    k = ker.normalize(ker.Kernel(atoms=tuple(atoms)))
    assert ker.alpha_plus(k, c * factor) * factor == pytest.approx(
        ker.alpha_plus(k, c), rel=1e-10, abs=1e-12)
    assert ker.alpha_minus(k, c * factor) * factor == pytest.approx(
        ker.alpha_minus(k, c), rel=1e-10, abs=1e-12)


@given(atom_lists)
@settings(max_examples=50, deadline=None)
def test_exp_moment_zero_rate_is_mass(atoms):
    k = ker.normalize(ker.Kernel(atoms=tuple(atoms)))
    assert ker.exp_moment(k, 0.0, "both") == pytest.approx(1.0, rel=1e-12)


@given(atom_lists)
@settings(max_examples=50, deadline=None)
def test_sides_partition_moment(atoms):
    # atoms strictly off the origin: left + right = both
    atoms = tuple((s if abs(s) > 1e-3 else s + 1.0, m) for s, m in atoms)
    k = ker.normalize(ker.Kernel(atoms=atoms))
    tot = ker.exp_moment(k, -0.3, "left") + ker.exp_moment(k, -0.3, "right")
    assert tot == pytest.approx(ker.exp_moment(k, -0.3, "both"), rel=1e-10)
