"""Radial reduction of the DKP equation and its verification oracles.

With Phi_1 = exp(i m phi) exp(i k z) F(r) the four remaining spinor components
are algebraic in Phi_1, and the first row of the system becomes a second-order
equation for F.  Writing F = (M + q r)**(1/2) r**(-1/2) R removes the
first-derivative term and leaves a Schroedinger-like equation for R.

Operators are stored as coefficients of a fixed set of radial basis terms so
the symbolic content can be compared term by term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .model import DKPError, PhysicalParams, SampledFunction, check

BASIS = ("r2", "r", "1", "inv_r", "inv_r2", "inv_w", "inv_w2")


class Variant(str, Enum):
    EQ14_ON_F = "EQ14_ON_F"  # equation for F, first-derivative term present
    EQ16_OSC = "EQ16_OSC"  # equation for R, oscillator kept
    EQ24_ARBITRARY = "EQ24_ARBITRARY"  # varpi = 0
    EQ34_SMALL = "EQ34_SMALL"  # varpi = 0 and the m^2 omega^2 constant dropped


def basis_values(params: PhysicalParams, r) -> dict[str, np.ndarray]:
    r = np.asarray(r, dtype=float)
    w = params.potential(r)
    return {
        "r2": r * r,
        "r": r,
        "1": np.ones_like(r),
        "inv_r": 1.0 / r,
        "inv_r2": 1.0 / (r * r),
        "inv_w": 1.0 / w,
        "inv_w2": 1.0 / (w * w),
    }


def kappa2_from_energy(params: PhysicalParams, E: float) -> float:
    """kappa^2 = E^2 - k^2 - M^2 + 2 E m omega."""
    return E * E - params.k**2 - params.M**2 + 2.0 * E * params.m * params.omega


@dataclass(frozen=True)
class RadialOperator:
    """f'' + first(r) f' + potential(r) f, with both coefficient maps over BASIS."""

    variant: Variant
    params: PhysicalParams
    kappa2: float
    potential: dict[str, float]
    first: dict[str, float] = field(default_factory=dict)
    E: float | None = None

    def bracket(self, r) -> np.ndarray:
        vals = basis_values(self.params, r)
        return sum(c * vals[name] for name, c in self.potential.items() if c != 0)

    def first_coefficient(self, r) -> np.ndarray:
        vals = basis_values(self.params, r)
        out = np.zeros_like(np.asarray(r, dtype=float))
        for name, c in self.first.items():
            if c != 0:
                out = out + c * vals[name]
        return out

    def apply(self, r, f, d1, d2) -> np.ndarray:
        return d2 + self.first_coefficient(r) * d1 + self.bracket(r) * f

    def apply_to(self, sample: SampledFunction) -> np.ndarray:
        if not sample.has_derivatives:
            raise DKPError("NO_DERIVATIVES", "sample carries no derivatives")
        return self.apply(sample.grid, sample.values, sample.d1, sample.d2)


def radial_operator(
    params: PhysicalParams,
    E: float | None = None,
    variant: Variant = Variant.EQ24_ARBITRARY,
    *,
    kappa2: float | None = None,
) -> RadialOperator:
    """Coefficient decomposition of the radial equation for ``variant``.

    Either the trial energy ``E`` or ``kappa2`` must be given; every coefficient
    depends on E only through kappa^2.
    """
    check(params)
    variant = Variant(variant)
    if (E is None) == (kappa2 is None):
        raise DKPError("BAD_ARGUMENTS", "give exactly one of E and kappa2")
    if kappa2 is None:
        kappa2 = kappa2_from_energy(params, E)
    M, q, vp = params.M, params.q, params.varpi
    rot = (params.m * params.omega) ** 2  # m_alpha^2 (omega alpha)^2
    ma2 = params.m_alpha**2

    if variant is Variant.EQ14_ON_F:
        # -(U'/W) M varpi r = -M varpi + M^2 varpi / W, and (M + q r)^2 expanded
        potential = {
            "r2": -(q * q + (M * vp) ** 2),
            "r": -2.0 * M * q,
            "1": kappa2 + M * vp + rot,
            "inv_r2": -ma2,
            "inv_w": M * M * vp,
        }
        return RadialOperator(variant, params, kappa2, potential, {"inv_r": 1.0, "inv_w": -q}, E)

    if M <= 0:
        raise DKPError("MASS_ZERO_UNSUPPORTED", f"{variant.value} needs M > 0")
    if variant is not Variant.EQ16_OSC and vp != 0:
        raise DKPError("OSCILLATOR_NOT_ALLOWED", f"{variant.value} requires varpi = 0")
    potential = {
        "r2": -(q * q + (M * vp) ** 2),
        "r": -2.0 * M * q,
        "1": rot + M * vp + kappa2,
        "inv_r": q / (2.0 * M),
        "inv_r2": 0.25 - ma2,
        "inv_w": (-q * q + 2.0 * M**3 * vp) / (2.0 * M),
        "inv_w2": -0.75 * q * q,
    }
    if variant is Variant.EQ34_SMALL:
        potential["1"] -= rot
    return RadialOperator(variant, params, kappa2, potential, {}, E)


# --- test functions with closed-form derivatives -----------------------------


def gaussian_polynomial(grid, center, width, coeffs, kind="F") -> SampledFunction:
    """P(r) exp(-(r - center)^2 / (2 width^2)) with exact first and second derivatives."""
    r = np.asarray(grid, dtype=float)
    poly = np.polynomial.Polynomial(coeffs)
    x = r - center
    g = np.exp(-0.5 * (x / width) ** 2)
    g1 = -x / width**2 * g
    g2 = (x * x / width**4 - 1.0 / width**2) * g
    p, p1, p2 = poly(r), poly.deriv(1)(r), poly.deriv(2)(r)
    return SampledFunction(
        r, p * g, kind=kind, d1=p1 * g + p * g1, d2=p2 * g + 2 * p1 * g1 + p * g2
    )


def fd_derivatives(sample: SampledFunction) -> SampledFunction:
    """Attach 4th-order central finite-difference derivatives (uniform grid only).

    Fallback for externally supplied samples; the two points at each end use
    one-sided 4th-order stencils.
    """
    r, f = sample.grid, np.asarray(sample.values, dtype=float)
    if r.size < 6:
        raise DKPError("GRID_TOO_SHORT", "need at least 6 points")
    h = np.diff(r)
    if not np.allclose(h, h[0], rtol=1e-9, atol=0):
        raise DKPError("GRID_NOT_UNIFORM", "finite differences need a uniform grid")
    h = h[0]
    d1 = np.empty_like(f)
    d2 = np.empty_like(f)
    d1[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    d2[2:-2] = (-f[:-4] + 16 * f[1:-3] - 30 * f[2:-2] + 16 * f[3:-1] - f[4:]) / (12 * h * h)
    # one-sided stencils at offsets 0 and 1 from each boundary
    c1 = {
        0: np.array([-25, 48, -36, 16, -3]) / 12,
        1: np.array([-3, -10, 18, -6, 1]) / 12,
    }
    c2 = {
        0: np.array([45, -154, 214, -156, 61, -10]) / 12,
        1: np.array([10, -15, -4, 14, -6, 1]) / 12,
    }
    rev = f[::-1]
    for off in (0, 1):
        d1[off] = c1[off] @ f[:5] / h
        d2[off] = c2[off] @ f[:6] / (h * h)
        d1[-1 - off] = -(c1[off] @ rev[:5]) / h
        d2[-1 - off] = c2[off] @ rev[:6] / (h * h)
    return SampledFunction(
        r, f, kind=sample.kind, normalization=sample.normalization, d1=d1, d2=d2
    )


# --- F <-> R map ---------------------------------------------------------------


def _prefactor(params: PhysicalParams, r):
    """A = (M + q r)^(1/2) r^(-1/2) and its first two derivatives."""
    r = np.asarray(r, dtype=float)
    w = params.potential(r)
    if np.any(r <= 0) or np.any(w <= 0):
        raise DKPError("POTENTIAL_NONPOSITIVE", "need r > 0 and M + q r > 0 on the grid")
    a = np.sqrt(w / r)
    h = 0.5 * (params.q / w - 1.0 / r)
    dh = 0.5 * (-((params.q / w) ** 2) + 1.0 / (r * r))
    return a, a * h, a * (dh + h * h)


def to_reduced_form(F: SampledFunction, params: PhysicalParams) -> SampledFunction:
    """R = (M + q r)^(-1/2) r^(1/2) F, derivatives carried along when present."""
    a, a1, a2 = _prefactor(params, F.grid)
    R = F.values / a
    if not F.has_derivatives:
        return SampledFunction(F.grid, R, kind="R", normalization=F.normalization)
    R1 = (F.d1 - a1 * R) / a
    R2 = (F.d2 - 2 * a1 * R1 - a2 * R) / a
    return SampledFunction(F.grid, R, kind="R", normalization=F.normalization, d1=R1, d2=R2)


def from_reduced_form(R: SampledFunction, params: PhysicalParams) -> SampledFunction:
    """Inverse of :func:`to_reduced_form`: F = (M + q r)^(1/2) r^(-1/2) R."""
    a, a1, a2 = _prefactor(params, R.grid)
    F = a * R.values
    if not R.has_derivatives:
        return SampledFunction(R.grid, F, kind="F", normalization=R.normalization)
    F1 = a1 * R.values + a * R.d1
    F2 = a2 * R.values + 2 * a1 * R.d1 + a * R.d2
    return SampledFunction(R.grid, F, kind="F", normalization=R.normalization, d1=F1, d2=F2)


# --- component elimination ---------------------------------------------------


@dataclass(frozen=True)
class SpinorSample:
    """Phi_1 .. Phi_5 on a shared grid with the e^{i m phi} e^{i k z} factor stripped."""

    components: tuple[SampledFunction, ...]
    m: int
    k: float
    E: float


def eliminate_components(phi1: SampledFunction, params: PhysicalParams, E: float):
    """Build Phi_2..Phi_5 from Phi_1 and substitute them into the first row.

    Returns the spinor and the first-row residual multiplied by (M + U), which
    is real once the angular and axial phases cancel.
    """
    check(params, phi1.grid)
    if not phi1.has_derivatives:
        raise DKPError("NO_DERIVATIVES", "phi1 must carry first and second derivatives")
    r = phi1.grid
    F, F1, F2 = (np.asarray(x, dtype=float) for x in (phi1.values, phi1.d1, phi1.d2))
    w = params.potential(r)
    if np.any(w == 0):
        bad = r[w == 0][0]
        raise DKPError("POTENTIAL_ZERO_CROSSING", f"M + q r = 0 at r={bad:g}")
    M, q, vp, m, k, al = params.M, params.q, params.varpi, params.m, params.k, params.alpha
    rho = params.rho(r)
    s = np.sqrt(1.0 - rho * rho)
    d_phi = 1j * m
    d_z = 1j * k

    phi2 = E * F / (s * w)
    G = F1 + M * vp * r * F
    G1 = F2 + M * vp * F + M * vp * r * F1
    phi3 = 1j * G / w
    phi3_r = 1j * (G1 / w - q * G / (w * w))
    angular = E * rho / s + 1j * s / (al * r) * d_phi
    phi4 = angular * F / w
    phi5 = 1j * d_z * F / w

    row = (
        -w * F
        + E / s * phi2
        - 1j * (phi3_r - M * vp * r * phi3 + phi3 / r)
        - angular * phi4
        - 1j * d_z * phi5
    )
    scaled = w * row
    imag = np.max(np.abs(scaled.imag)) if scaled.size else 0.0
    if imag > 1e-9 * max(1.0, float(np.max(np.abs(scaled.real), initial=0.0))):
        raise DKPError("COMPLEX_RESIDUAL", f"imaginary part {imag:g}")

    names = ("PHI1", "PHI2", "PHI3", "PHI4", "PHI5")
    comps = tuple(
        SampledFunction(r, np.asarray(v, dtype=complex), kind=n)
        for n, v in zip(names, (F, phi2, phi3, phi4, phi5))
    )
    residual = SampledFunction(r, scaled.real, kind="RESIDUAL")
    return SpinorSample(comps, m, k, E), residual


# --- equivalence report ----------------------------------------------------------


def _relative_deviation(a, b) -> float:
    scale = max(float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(a - b)) / scale)


def default_check_grid(params: PhysicalParams, n: int = 201) -> np.ndarray:
    """Interior grid kept away from r = 0, the wall, and any zero of M + q r."""
    hi = 6.0
    if params.omega_alpha > 0:
        hi = min(hi, 0.95 * params.r0)
    if params.q < 0 and params.M > 0:
        hi = min(hi, 0.95 * (-params.M / params.q))
    return np.linspace(0.05 * hi, hi, n)


def random_test_function(rng: np.random.Generator, grid, kind="F") -> SampledFunction:
    lo, hi = grid[0], grid[-1]
    center = rng.uniform(lo, hi)
    width = rng.uniform(0.15, 0.6) * (hi - lo)
    coeffs = rng.normal(size=rng.integers(1, 5))
    return gaussian_polynomial(grid, center, width, coeffs, kind=kind)


def operator_equivalence_report(
    params: PhysicalParams, E: float, trials: int = 10, seed: int = 0, tol: float = 1e-8
) -> dict:
    """Check both derivation steps on ``trials`` random smooth functions.

    (i) the eliminated first row against the F-equation operator; (ii) the
    F-equation operator applied to F = A R, divided by A, against the
    R-equation operator (with oscillator when varpi > 0).
    """
    check(params)
    rng = np.random.default_rng(seed)
    grid = default_check_grid(params)
    op14 = radial_operator(params, E, Variant.EQ14_ON_F)
    reduced = None
    if params.M > 0 and np.all(params.potential(grid) > 0):
        variant = Variant.EQ16_OSC if params.varpi > 0 else Variant.EQ24_ARBITRARY
        reduced = radial_operator(params, E, variant)

    elim, subst = [], []
    for _ in range(trials):
        F = random_test_function(rng, grid, kind="F")
        _, res = eliminate_components(F, params, E)
        elim.append(_relative_deviation(res.values, op14.apply_to(F)))
        if reduced is not None:
            R = random_test_function(rng, grid, kind="R")
            Fr = from_reduced_form(R, params)
            a, _, _ = _prefactor(params, grid)
            subst.append(_relative_deviation(op14.apply_to(Fr) / a, reduced.apply_to(R)))

    max_elim = max(elim, default=0.0)
    max_subst = max(subst, default=0.0)
    return {
        "trials": trials,
        "seed": seed,
        "E": E,
        "elimination_max_rel_dev": max_elim,
        "substitution_max_rel_dev": max_subst,
        "substitution_variant": None if reduced is None else reduced.variant.value,
        "tolerance": tol,
        "pass": max_elim < tol and max_subst < tol,
    }
