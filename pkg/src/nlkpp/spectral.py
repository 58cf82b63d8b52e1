"""Root solvers and argument-principle root counters for the characteristic
functions attached to the traveling-wave problem:

  quad:         z^2 - c z + 1            (linearization at the leading edge)
  front_criterion:    z^2 - c z - E_K(-z)      (monotone-front criterion)
  chi1:         z - exp(-tau z)          (limit delay equation at 0)
  eps_advanced: eps z^2 + z - exp(-tau z)
  toy_steady:   z^2 - c z - exp(-ctau z) (piecewise toy model at 1)
"""
from __future__ import annotations

import math
import cmath
from dataclasses import dataclass, field

import numpy as np

from .kernels import Kernel, exp_moment


class DomainError(ValueError):
    pass


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class RootReport:
    function_id: str
    region: str
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    count: int
    parameters: dict = field(default_factory=dict)
    boundary: bool = False
    converged: bool = True

    def as_dict(self) -> dict:
        return {
            "function_id": self.function_id,
            "region": self.region,
            "params": self.parameters,
            "count": self.count,
            "boundary": self.boundary,
            "converged": self.converged,
            "roots": [
                {"re": r.real, "im": r.imag, "residual": res}
                for r, res in zip(self.roots, self.residuals)
            ],
        }


# -- quadratic roots -------------------------------------------------------

def quad_roots(c: float) -> tuple[float, float]:
    """Positive roots (lam, mu) of z^2 - c z + 1 = 0, lam <= mu; needs c >= 2."""
    if c < 2:
        raise DomainError(f"no real decay rates for c={c} < 2 (no semi-wavefront regime)")
    disc = math.sqrt(c * c - 4.0)
    return (c - disc) / 2.0, (c + disc) / 2.0


# -- monotone-front criterion ---------------------------------------------------

def monotone_front_root(c: float, k: Kernel, lam_min: float = -40.0,
                            n_brackets: int = 400):
    """Largest negative root of z^2 - c z - int K(s) e^{-z s} ds = 0, or None.

    Scans [lam_min, 0) with n_brackets sign brackets and bisects.  For a
    single atom supported on s > 0 a monotone tail certificate rules out
    roots below the scan window.  Returns (root, diagnostic dict).
    """
    if c < 2:
        raise DomainError(f"monotone-front criterion needs c >= 2, got {c}")

    def g(lam):
        return lam * lam - c * lam - exp_moment(k, -lam, "both")

    grid = np.linspace(lam_min, 0.0, n_brackets + 1)
    vals = np.array([g(x) for x in grid])
    # g(0^-) = -1; walk up from 0 looking for the sign change closest to 0
    root = None
    for i in range(n_brackets - 1, -1, -1):
        a, b = grid[i], grid[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            root = a
            break
        if fa * fb < 0:
            for _ in range(200):
                m = 0.5 * (a + b)
                fm = g(m)
                if fm == 0.0 or b - a < 1e-14:
                    break
                if fa * fm < 0:
                    b, fb = m, fm
                else:
                    a, fa = m, fm
            root = 0.5 * (a + b)
            break
    diag = {"scan_lo": lam_min, "scan_hi": 0.0, "n_brackets": n_brackets}
    if root is not None:
        return root, diag
    # tail certificate for a single right-supported atom: below lam_min the
    # exponential moment dominates the quadratic, so g stays negative
    if k.density is None and len([a for a in k.atoms if a[1] > 0]) == 1:
        (s0, m0), = [a for a in k.atoms if a[1] > 0]
        if s0 > 0:
            x = -lam_min
            grows = (s0 * m0 * math.exp(x * s0) > 2 * x + c
                     and s0 * s0 * m0 * math.exp(x * s0) > 2.0)
            if grows and g(lam_min) < 0:
                diag["tail_certificate"] = "single-atom exponential dominance"
    return None, diag


# -- argument-principle machinery -----------------------------------------

def _winding_number(f, df, corners, tol=1e-3, n0=64, max_refine=12):
    """Winding count of f along the closed polygonal contour `corners`.

    Trapezoid evaluation of (1/2pi i) oint f'/f, refined until within `tol`
    of an integer.  Returns (count, ok_flag, min |f| seen on the contour).
    """
    corners = list(corners) + [corners[0]]
    minmod = math.inf
    n = n0
    for _ in range(max_refine):
        total = 0.0 + 0.0j
        minmod = math.inf
        for a, b in zip(corners[:-1], corners[1:]):
            t = np.linspace(0.0, 1.0, n + 1)
            z = a + (b - a) * t
            fz = f(z)
            minmod = min(minmod, float(np.abs(fz).min()))
            integrand = df(z) / fz * (b - a)
            total += np.trapezoid(integrand, t)
        w = total / (2j * math.pi)
        count = round(w.real)
        if abs(w - count) < tol and abs(w.imag) < tol:
            return int(count), True, minmod
        n *= 2
    return int(round(w.real)), False, minmod


def _newton_complex(f, df, z0, tol=1e-12, maxit=100):
    z = complex(z0)
    for _ in range(maxit):
        fz = f(z)
        if abs(fz) < tol * (1.0 + abs(z) ** 2):
            return z, True
        d = df(z)
        if d == 0:
            break
        step = fz / d
        z = z - step
        if abs(step) < 1e-16 * (1 + abs(z)):
            return z, abs(f(z)) < 1e-6
    return z, abs(f(z)) < tol * (1.0 + abs(z) ** 2)


def _dedupe(roots, radius=1e-6):
    kept = []
    for r in roots:
        if all(abs(r - q) > radius for q in kept):
            kept.append(r)
    return kept


def _locate_in_rectangle(f, df, re_lo, re_hi, im_hi, count, seeds=None):
    """Newton from a seed lattice, keeping distinct roots inside the rectangle."""
    roots = []
    if seeds is None:
        seeds = []
    seeds = list(seeds)
    ng = 8
    for x in np.linspace(re_lo, re_hi, ng):
        for y in np.linspace(0.0, im_hi, ng):
            seeds.append(complex(x, y))
    for z0 in seeds:
        z, ok = _newton_complex(f, df, z0)
        if not ok:
            continue
        if not (re_lo - 1e-9 <= z.real <= re_hi + 1e-9 and abs(z.imag) <= im_hi + 1e-9):
            continue
        if abs(z.imag) < 1e-9:
            z = complex(z.real, 0.0)
        roots.append(z)
        if z.imag != 0.0:
            roots.append(z.conjugate())
        if len(_dedupe(roots)) >= count:
            pass
    roots = _dedupe(roots)
    roots.sort(key=lambda z: (-z.real, z.imag))
    return roots


def chi1_roots(tau: float) -> RootReport:
    """All roots of chi1(z) = z - exp(-z tau) with Re z >= 0.

    Roots in the closed right half-plane satisfy |z| <= 1, so a fixed
    rectangle plus the argument principle gives a certified census.  If the
    contour passes too close to a root (tau at 3pi/2 + 2pi n, where a pair
    sits on the imaginary axis), the left edge is shifted slightly into the
    left half-plane and the report is flagged as boundary.
    """
    if tau <= 0:
        raise DomainError(f"chi1_roots needs tau > 0, got {tau}")

    f = lambda z: z - np.exp(-z * tau)
    df = lambda z: 1.0 + tau * np.exp(-z * tau)

    boundary = False
    shift = 0.0
    im_hi = max(2.0, 2 * math.pi / tau)
    count = None
    for attempt in range(2):
        corners = [complex(shift, -im_hi), complex(2.0, -im_hi),
                   complex(2.0, im_hi), complex(shift, im_hi)]
        cnt, ok, minmod = _winding_number(f, df, corners)
        if ok and minmod > 1e-4:
            count = cnt
            break
        boundary = True
        shift = -1e-3
    if count is None:
        count = cnt

    seeds = [complex(0.6, 0.0), complex(0.2, 1.0), complex(0.1, 1.0),
             complex(0.4, 0.9)]
    roots = _locate_in_rectangle(f, df, shift, 2.0, im_hi, count, seeds=seeds)
    roots = [z for z in roots if z.real >= shift - 1e-12]
    residuals = tuple(abs(f(z)) for z in roots)
    return RootReport(
        function_id="chi1",
        region=f"rect [{shift:.1e}, 2] x [-{im_hi:.3f}, {im_hi:.3f}]",
        roots=tuple(roots),
        residuals=residuals,
        count=count,
        parameters={"tau": tau},
        boundary=boundary,
        converged=(count == len(roots)),
    )


def eps_advanced_roots(tau: float, eps: float, strip_lo: float = 0.0) -> RootReport:
    """Roots of eps z^2 + z - exp(-tau z) with Re z > strip_lo.

    Obtained by Newton continuation from the eps = 0 census (chi1_roots),
    stepping eps up a geometric ladder, then filtered to the strip and
    cross-checked by an argument-principle count.
    """
    if eps < 0 or tau <= 0:
        raise DomainError("eps_advanced_roots needs eps >= 0 and tau > 0")

    base = chi1_roots(tau)
    if eps == 0.0:
        roots = [z for z in base.roots if z.real > strip_lo]
        return RootReport("eps_advanced", base.region, tuple(roots),
                          tuple(abs(z - cmath.exp(-z * tau)) for z in roots),
                          len(roots), {"tau": tau, "eps": 0.0, "strip_lo": strip_lo},
                          base.boundary, base.converged)

    def make_f(e):
        f = lambda z: e * z * z + z - np.exp(-z * tau)
        df = lambda z: 2 * e * z + 1.0 + tau * np.exp(-z * tau)
        return f, df

    roots = list(base.roots)
    n_steps = max(4, int(math.ceil(math.log10(max(eps / 1e-4, 10.0)) * 4)))
    for e in np.geomspace(eps / 2 ** n_steps, eps, n_steps + 1):
        f, df = make_f(e)
        moved = []
        for z in roots:
            zn, ok = _newton_complex(f, df, z)
            if not ok:
                raise NoConvergence(f"continuation lost a root near {z} at eps={e}")
            moved.append(zn)
        roots = moved
    f, df = make_f(eps)
    roots = _dedupe([complex(z.real, 0.0) if abs(z.imag) < 1e-9 else z for z in roots])
    roots = [z for z in roots if z.real > strip_lo]
    roots.sort(key=lambda z: (-z.real, z.imag))

    # verify the census in the strip with a contour
    im_hi = max(2.0, 2 * math.pi / tau)
    corners = [complex(strip_lo, -im_hi), complex(2.0, -im_hi),
               complex(2.0, im_hi), complex(strip_lo, im_hi)]
    cnt, ok, _ = _winding_number(f, df, corners)
    return RootReport(
        function_id="eps_advanced",
        region=f"strip Re z > {strip_lo}, |Im z| <= {im_hi:.3f}",
        roots=tuple(roots),
        residuals=tuple(abs(f(z)) for z in roots),
        count=cnt if ok else len(roots),
        parameters={"tau": tau, "eps": eps, "strip_lo": strip_lo},
        converged=(not ok) or cnt == len(roots),
    )


def toy_steady_roots(c: float, ctau: float, near: complex) -> complex:
    """One root of z^2 - c z - exp(-ctau z) = 0 by complex Newton from `near`."""
    if c <= 0 or ctau <= 0:
        raise DomainError("toy_steady_roots needs c > 0 and ctau > 0")
    f = lambda z: z * z - c * z - np.exp(-ctau * z)
    df = lambda z: 2 * z - c + ctau * np.exp(-ctau * z)
    z, ok = _newton_complex(f, df, near, tol=1e-10)
    if not ok:
        raise NoConvergence(f"Newton did not converge from seed {near}; last iterate {z}")
    if abs(z.imag) < 1e-10:
        z = complex(z.real, 0.0)
    return z
