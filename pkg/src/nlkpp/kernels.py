"""Interaction kernels: finite atoms plus a finitely supported gridded density.

A kernel is a normalized nonnegative measure K on the real line.  Atoms
realize Dirac kernels (pure delay/advance interactions); the density part
covers integrable kernels truncated to a finite window.  All moment and
convolution formulas reduce to exact atom sums plus trapezoid quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class KernelError(ValueError):
    """Invalid kernel data (zero mass, bad grid, negative weights)."""


class CoverageError(ValueError):
    """A convolution needed profile values outside the covered range."""


@dataclass(frozen=True)
class Density:
    """Uniformly gridded nonnegative density with trapezoid weights."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.ndim != 1 or g.size < 2 or g.size != v.size:
            raise KernelError("density grid/values must be 1-d and of equal length >= 2")
        dg = np.diff(g)
        if np.any(dg <= 0) or not np.allclose(dg, dg[0], rtol=1e-9, atol=0.0):
            raise KernelError("density grid must be strictly increasing and uniform")
        if np.any(v < 0):
            raise KernelError("density values must be nonnegative")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    @property
    def h(self) -> float:
        return float(self.grid[1] - self.grid[0])

    @property
    def weights(self) -> np.ndarray:
        w = np.full(self.grid.size, self.h)
        w[0] = w[-1] = 0.5 * self.h
        return w

    def mass(self) -> float:
        return float(self.weights @ self.values)


@dataclass(frozen=True)
class Kernel:
    """Normalized interaction kernel: atoms (location, mass) + optional density."""

    atoms: tuple[tuple[float, float], ...] = ()
    density: Density | None = None
    total_mass: float = field(init=False)

    def __post_init__(self):
        atoms = tuple((float(s), float(m)) for s, m in self.atoms)
        for s, m in atoms:
            if m < 0:
                raise KernelError(f"atom at s={s} has negative mass {m}")
        object.__setattr__(self, "atoms", atoms)
        mass = sum(m for _, m in atoms)
        if self.density is not None:
            mass += self.density.mass()
        object.__setattr__(self, "total_mass", float(mass))

    # -- geometry ---------------------------------------------------------

    def support(self) -> tuple[float, float]:
        """Smallest interval containing all atoms and the density grid."""
        lo, hi = math.inf, -math.inf
        for s, m in self.atoms:
            if m > 0:
                lo, hi = min(lo, s), max(hi, s)
        if self.density is not None:
            lo = min(lo, float(self.density.grid[0]))
            hi = max(hi, float(self.density.grid[-1]))
        if lo > hi:
            raise KernelError("kernel has empty support")
        return lo, hi

    # -- moments ----------------------------------------------------------

    def moment(self, fn) -> float:
        """Integral of fn(s) against the kernel measure."""
        total = sum(m * fn(s) for s, m in self.atoms if m > 0)
        if self.density is not None:
            g = self.density.grid
            total += float(self.density.weights @ (self.density.values * fn(g)))
        return float(total)


def normalize(k: Kernel) -> Kernel:
    """Rescale masses so the kernel integrates to one."""
    if k.total_mass <= 0:
        raise KernelError("cannot normalize a zero-mass kernel")
    c = 1.0 / k.total_mass
    atoms = tuple((s, m * c) for s, m in k.atoms)
    dens = None
    if k.density is not None:
        dens = Density(k.density.grid, k.density.values * c)
    return Kernel(atoms, dens)


def _check_speed(c: float):
    if c <= 0:
        raise ValueError(f"wave speed must be positive, got c={c}")


def alpha_plus(k: Kernel, c: float) -> float:
    """Speed-normalized first absolute moment of the kernel over s < 0."""
    _check_speed(c)
    return k.moment(lambda s: np.where(s < 0, -s, 0.0)) / c


def alpha_minus(k: Kernel, c: float) -> float:
    """Speed-normalized first moment of the kernel over s > 0."""
    _check_speed(c)
    return k.moment(lambda s: np.where(s > 0, s, 0.0)) / c


def _exp_clip(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        return np.where(x > 700.0, np.inf, np.exp(np.minimum(x, 700.0)))


def exp_moment(k: Kernel, rate: float, side: str = "both") -> float:
    """Integral of exp(rate*s) dK(s) over a half-line or all of R.

    side is "left" (s < 0) or "right" (s > 0); atoms at exactly 0 count for
    neither half.  Exact for atoms; the density is integrated cell-by-cell
    with cells straddling 0 split there, so the half-line integrals sum to
    the full one.  Overflow is reported as +inf.
    """
    if side not in ("left", "right", "both"):
        raise ValueError(f"side must be left/right/both, got {side!r}")

    total = 0.0
    for s, m in k.atoms:
        if m <= 0:
            continue
        if side == "left" and not s < 0:
            continue
        if side == "right" and not s > 0:
            continue
        total += m * float(_exp_clip(rate * s))

    if k.density is not None:
        g = k.density.grid
        fv = k.density.values * _exp_clip(rate * g)
        a, b = g[:-1], g[1:]
        fa, fb = fv[:-1], fv[1:]
        cell = 0.5 * (fa + fb) * (b - a)
        if side == "both":
            total += float(np.sum(cell))
        else:
            # linear sub-cell split at 0 for the straddling cell
            keep = b <= 0 if side == "left" else a >= 0
            total += float(np.sum(cell[keep]))
            straddle = (a < 0) & (b > 0)
            if straddle.any():
                (i,) = np.nonzero(straddle)
                for j in i:
                    f0 = fa[j] + (fb[j] - fa[j]) * (0.0 - a[j]) / (b[j] - a[j])
                    if side == "left":
                        total += 0.5 * (fa[j] + f0) * (0.0 - a[j])
                    else:
                        total += 0.5 * (f0 + fb[j]) * (b[j] - 0.0)
    return total


def convolve(k: Kernel, profile, t) -> float | np.ndarray:
    """(K * phi)(t) = integral of K(y) phi(t - y) dy.

    `profile` must provide vectorized evaluation with asymptotic extension
    (see profiles.Profile.__call__); atoms are evaluated by the profile's
    cubic interpolant, the density by trapezoid quadrature.
    """
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    for s, m in k.atoms:
        if m > 0:
            out = out + m * profile(t - s)
    if k.density is not None:
        g = k.density.grid
        w = k.density.weights * k.density.values
        for y, wy in zip(g, w):
            if wy != 0.0:
                out = out + wy * profile(t - y)
    return out if out.shape else float(out)


# -- constructors ----------------------------------------------------------

def dirac(s: float, mass: float = 1.0) -> Kernel:
    """Single-atom kernel K = mass * delta(. - s)."""
    return Kernel(atoms=((s, mass),))


def uniform_density(lo: float, hi: float, n: int = 401, mass: float = 1.0) -> Kernel:
    grid = np.linspace(lo, hi, n)
    vals = np.full(n, mass / (hi - lo))
    return Kernel(density=Density(grid, vals))


def gaussian_density(sigma: float = 1.0, n: int = 1601, width: float = 8.0) -> Kernel:
    """Standard Gaussian kernel truncated to [-width*sigma, width*sigma]."""
    grid = np.linspace(-width * sigma, width * sigma, n)
    vals = np.exp(-0.5 * (grid / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
    return normalize(Kernel(density=Density(grid, vals)))


def from_config(cfg: dict) -> tuple[Kernel, float]:
    """Build a kernel from its JSON dict; returns (normalized kernel, raw mass).

    Schema: {"atoms": [{"s": ..., "mass": ...}],
             "density": {"lo", "hi", "n", "kind": "gaussian"|"uniform"|"table",
                         "params": {...}, "values": [...]}}
    """
    atoms = tuple((a["s"], a["mass"]) for a in cfg.get("atoms", []))
    dens = None
    d = cfg.get("density")
    if d is not None:
        n = int(d.get("n", 401))
        grid = np.linspace(d["lo"], d["hi"], n)
        kind = d.get("kind", "table")
        if kind == "uniform":
            vals = np.full(n, 1.0 / (d["hi"] - d["lo"]))
        elif kind == "gaussian":
            sigma = d.get("params", {}).get("sigma", 1.0)
            vals = (np.exp(-0.5 * (grid / sigma) ** 2)
                    / (sigma * math.sqrt(2 * math.pi)))
        elif kind == "table":
            vals = np.asarray(d["values"], dtype=float)
            if vals.size != n:
                raise KernelError("table density needs exactly n values")
        else:
            raise KernelError(f"unknown density kind {kind!r}")
        dens = Density(grid, vals)
    raw = Kernel(atoms, dens)
    return normalize(raw), raw.total_mass
