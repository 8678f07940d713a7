"""Energy tables, sweeps, eigenfunction samples and the ODE-residual oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ansatz import Policy, solve_nodeless, solve_onenode
from .energy import energy_pair
from .model import (
    AnsatzSolution,
    BranchSelection,
    DKPError,
    PhysicalParams,
    Regime,
    SampledFunction,
    validate,
)
from .radial import BASIS, Variant, basis_values, radial_operator

__all__ = [
    "energy_pair",
    "TableRow",
    "PRINTED_TABLES",
    "canonical_params",
    "reproduce_table",
    "SweepRow",
    "sweep_energy",
    "radial_profile",
    "default_grid",
    "eval_wavefunction",
    "governing_variant",
    "ode_residual",
    "decompose_residual",
    "count_nodes",
]

OMEGA_ALPHAS = tuple(round(0.001 * i, 3) for i in range(1, 11))

# reference (e_plus, e_minus), keyed by table and omega*alpha
PRINTED_TABLES = {
    1: {
        "selection": BranchSelection(-1, 1, Fraction(3, 2)),
        "n": 0,
        "energies": [
            (5.0890, -5.1090), (3.99, -4.010), (3.5490, -3.5690), (3.3066, -3.3266),
            (3.1522, -3.1722), (3.0450, -3.0650), (2.9861, -2.9861), (2.9054, -2.9254),
            (2.8574, -2.8774), (2.8384, -2.8384),
        ],
    },
    2: {
        "selection": BranchSelection(-1, 1, Fraction(-1, 2)),
        "n": 0,
        "energies": [
            (4.6804, -4.7004), (3.4541, -3.4741), (2.9339, -2.9539), (2.6357, -2.6557),
            (2.4394, -2.4594), (2.2994, -2.3194), (2.1938, -2.2138), (2.1113, -2.1313),
            (2.0448, -2.0448), (1.990, -2.010),
        ],
    },
    3: {
        "selection": BranchSelection(-1, 1, Fraction(3, 2)),
        "n": 1,
        "energies": [
            (5.2815, -5.3015), (4.2326, -4.2526), (3.8197, -3.8397), (3.5955, -3.6155),
            (3.4541, -3.4742), (3.3565, -3.3765), (3.2850, -3.3050), (3.23039, -3.25039),
            (3.1872, -3.2072), (3.1522, -3.1722),
        ],
        "alpha11": [
            10.9091, 5.8333, 4.1025, 3.2142, 2.6666, 2.2916, 2.0168, 1.8055, 1.6374, 1.5,
        ],
    },
}


def canonical_params(omega_alpha: float, omega: float = 0.01) -> PhysicalParams:
    """M = q = m = k = 1 and alpha = omega_alpha / omega."""
    return PhysicalParams(M=1.0, q=1.0, omega=omega, alpha=round(omega_alpha / omega, 12), m=1, k=1.0)


@dataclass(frozen=True)
class TableRow:
    table: int
    omega_alpha: float
    alpha: float
    e_plus: float
    e_minus: float
    printed_e_plus: float | None = None
    printed_e_minus: float | None = None
    alpha11: float | None = None
    printed_alpha11: float | None = None
    typo_flag: bool = False
    restored_e_plus: float | None = None
    restored_e_minus: float | None = None

    @property
    def energy_deviation(self) -> float | None:
        """max |computed - reference|, the reference being restored for flagged rows."""
        if self.printed_e_plus is None:
            return None
        ref = (
            (self.restored_e_plus, self.restored_e_minus)
            if self.typo_flag
            else (self.printed_e_plus, self.printed_e_minus)
        )
        return max(abs(self.e_plus - ref[0]), abs(self.e_minus - ref[1]))

    @property
    def alpha11_deviation(self) -> float | None:
        if self.alpha11 is None or self.printed_alpha11 is None:
            return None
        return abs(self.alpha11 - self.printed_alpha11)


def restore_shift(reference: tuple[float, float], computed: tuple[float, float], shift: float):
    """Undo a dropped -m omega shift in a symmetric reference pair (v, -v).

    The symmetric value may stand for either root, so both readings
    (v, -v - 2 shift) and (v - 2 shift, -v) are formed and the closer one kept.
    """
    v = reference[0]
    candidates = [(v, -v - 2 * shift), (v - 2 * shift, -v)]
    return min(candidates, key=lambda c: max(abs(c[0] - computed[0]), abs(c[1] - computed[1])))


def reproduce_table(which: int) -> list[TableRow]:
    """Recompute one of the three energy tables next to the reference values.

    A row is typo-flagged when its reference pair is exactly symmetric although
    m omega != 0.
    """
    if which not in PRINTED_TABLES:
        raise DKPError("BAD_TABLE", f"table {which} not in 1..3")
    spec = PRINTED_TABLES[which]
    solve = solve_onenode if spec["n"] == 1 else solve_nodeless
    rows = []
    for i, wa in enumerate(OMEGA_ALPHAS):
        params = canonical_params(wa)
        sol = solve(params, Regime.SMALL, spec["selection"], Policy.PAPER_PRESET)
        pe, pm = spec["energies"][i]
        shift = params.m * params.omega
        flag = pe == -pm and shift != 0
        restored = (
            restore_shift((pe, pm), (sol.energies.e_plus, sol.energies.e_minus), shift)
            if flag
            else (None, None)
        )
        rows.append(
            TableRow(
                table=which,
                omega_alpha=wa,
                alpha=params.alpha,
                e_plus=sol.energies.e_plus,
                e_minus=sol.energies.e_minus,
                printed_e_plus=pe,
                printed_e_minus=pm,
                alpha11=sol.alpha11,
                printed_alpha11=spec["alpha11"][i] if "alpha11" in spec else None,
                typo_flag=flag,
                restored_e_plus=restored[0],
                restored_e_minus=restored[1],
            )
        )
    return rows


@dataclass(frozen=True)
class SweepRow:
    value: float
    omega: float
    e_plus: float | None
    e_minus: float | None
    error: str | None = None


def sweep_energy(
    template: PhysicalParams,
    sweep_var: str,
    grid,
    omegas,
    state: int = 0,
    selection: BranchSelection | None = None,
    regime: Regime = Regime.SMALL,
) -> list[SweepRow]:
    """Energy pairs over alpha or omega*alpha, one series per omega.

    Points that fail validation or have no real energy are kept with an error code.
    """
    if sweep_var not in ("alpha", "omega_alpha"):
        raise DKPError("BAD_SWEEP_VARIABLE", sweep_var)
    selection = selection or BranchSelection(-1, 1, Fraction(3, 2))
    solve = solve_onenode if state == 1 else solve_nodeless
    rows = []
    for w in omegas:
        for v in grid:
            v, w = float(v), float(w)
            if sweep_var == "alpha":
                params = template.replace(alpha=v, omega=w)
            elif w == 0:
                rows.append(SweepRow(v, w, None, None, "OMEGA_ZERO"))
                continue
            else:
                params = template.replace(alpha=v / w, omega=w)
            issues = validate(params)
            if issues:
                rows.append(SweepRow(v, w, None, None, issues[0].code))
                continue
            try:
                sol = solve(params, regime, selection, Policy.FIRST_PRINCIPLES)
            except DKPError as exc:
                rows.append(SweepRow(v, w, None, None, exc.code))
                continue
            if sol.energies is None:
                rows.append(SweepRow(v, w, None, None, "COMPLEX_ENERGY"))
            else:
                rows.append(SweepRow(v, w, sol.energies.e_plus, sol.energies.e_minus))
    return sorted(rows, key=lambda row: (row.omega, row.value))


# --- eigenfunctions ------------------------------------------------------------


def radial_profile(solution: AnsatzSolution, params: PhysicalParams, r):
    """Closed-form R, R', R'' of f_n(r) exp(b1 r + b2 r^2) r^b3 (M + q r)^b4.

    No domain checks beyond the sign of M + q r; callers wanting grid
    validation use :func:`eval_wavefunction`.
    """
    r = np.asarray(r, dtype=float)
    b1, b2, b3, b4 = solution.b
    q = params.q
    w = params.potential(r)
    scale = np.maximum(abs(params.M), abs(q) * np.abs(r))
    w = np.where(np.abs(w) <= 1e-14 * scale, 0.0, w)
    if np.any(w < 0) and float(b4) != int(b4):
        raise DKPError("POTENTIAL_NONPOSITIVE", "M + q r < 0 with non-integer b4")
    with np.errstate(divide="ignore", invalid="ignore"):
        env = np.exp(b1 * r + b2 * r * r) * r**b3 * np.power(w, b4)
        g1 = b1 + 2 * b2 * r + b3 / r + b4 * q / w
        g2 = 2 * b2 - b3 / (r * r) - b4 * q * q / (w * w)
        if solution.n == 1:
            f = r - solution.alpha11
            R = f * env
            R1 = env * (1 + f * g1)
            R2 = env * (2 * g1 + f * (g2 + g1 * g1))
        else:
            R = env
            R1 = env * g1
            R2 = env * (g2 + g1 * g1)
    return R, R1, R2


def default_grid(solution: AnsatzSolution, params: PhysicalParams, points: int = 2000) -> np.ndarray:
    """Uniform grid: (r0 1e-3, r0 (1 - 1e-3)) behind a hard wall, else (1e-3, 8/sqrt|b2|)."""
    r0 = params.r0
    if solution.regime is Regime.ARBITRARY and math.isfinite(r0):
        return np.linspace(r0 * 1e-3, r0 * (1 - 1e-3), points)
    hi = 8.0 / math.sqrt(abs(solution.b2)) if solution.b2 != 0 else 10.0
    if math.isfinite(r0):
        hi = min(hi, r0 * (1 - 1e-3))
    return np.linspace(1e-3, hi, points)


def eval_wavefunction(
    solution: AnsatzSolution,
    params: PhysicalParams,
    grid=None,
    normalization: str = "RAW",
) -> SampledFunction:
    """Sample the reduced radial function; MAX1 scales the peak magnitude to 1."""
    grid = default_grid(solution, params) if grid is None else np.asarray(grid, dtype=float)
    if grid.size and (grid[0] <= 0 or grid[-1] >= params.r0):
        raise DKPError("GRID_OUTSIDE_DOMAIN", f"grid must lie in (0, r0={params.r0:g})")
    R, R1, R2 = radial_profile(solution, params, grid)
    if normalization == "MAX1":
        peak = float(np.max(np.abs(R)))
        if peak > 0:
            R, R1, R2 = R / peak, R1 / peak, R2 / peak
    return SampledFunction(grid, R, kind="R", normalization=normalization, d1=R1, d2=R2)


def governing_variant(regime: Regime) -> Variant:
    return {
        Regime.OSCILLATOR: Variant.EQ16_OSC,
        Regime.ARBITRARY: Variant.EQ24_ARBITRARY,
        Regime.SMALL: Variant.EQ34_SMALL,
    }[Regime(regime)]


def ode_residual(
    solution: AnsatzSolution,
    params: PhysicalParams,
    variant: Variant | None = None,
    grid=None,
):
    """Apply the radial operator to the closed form with exact derivatives.

    Returns the residual samples and a summary; never a verdict.  With
    ``EQ14_ON_F`` the closed form is read as F rather than R.
    """
    variant = governing_variant(solution.regime) if variant is None else Variant(variant)
    grid = default_grid(solution, params) if grid is None else np.asarray(grid, dtype=float)
    op = radial_operator(params, variant=variant, kappa2=solution.kappa2)
    R, R1, R2 = radial_profile(solution, params, grid)
    res = op.apply(grid, R, R1, R2)
    summary = {
        "max_abs": float(np.max(np.abs(res))),
        "rms": float(np.sqrt(np.mean(res * res))),
    }
    return SampledFunction(grid, res, kind="RESIDUAL"), summary


def decompose_residual(
    residual: SampledFunction, solution: AnsatzSolution, params: PhysicalParams, terms=BASIS
) -> dict[str, float]:
    """Least-squares coefficients of residual / R on the radial basis (node-less only)."""
    if solution.n != 0:
        raise DKPError("NODE_COUNT_UNSUPPORTED", "decomposition needs a node-less solution")
    R, _, _ = radial_profile(solution, params, residual.grid)
    ratio = residual.values / R
    vals = basis_values(params, residual.grid)
    design = np.column_stack([vals[t] for t in terms])
    coef, *_ = np.linalg.lstsq(design, ratio, rcond=None)
    return dict(zip(terms, map(float, coef)))


def diagnostics_from_decomposition(coefficients: dict[str, float], params: PhysicalParams) -> dict[str, float]:
    """Map basis coefficients back to the node-less diagnostic residuals.

    The normalised matching equations enter residual / R as
    res_inv_r / (2 M r) - res_inv_w / (2 M (M + q r)).
    """
    if params.M == 0:
        raise DKPError("MASS_ZERO_UNSUPPORTED", "normalisation needs M != 0")
    return {
        "inv_r": 2 * params.M * coefficients["inv_r"],
        "inv_w": -2 * params.M * coefficients["inv_w"],
    }


def count_nodes(sample: SampledFunction) -> int:
    """Strict sign changes strictly inside the sampled interval."""
    signs = np.sign(np.real(sample.values[1:-1]))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def exact_oscillator_solution(params: PhysicalParams) -> AnsatzSolution:
    """Closed-form ground state for M = m = 0, read in the F-form.

    With W = q r the factor r^(1/2) (q r)^(-1/2) is constant, so F is
    proportional to exp(-q r^2 / 2), which solves F'' + (q - q^2 r^2) F = 0.
    """
    if params.M != 0 or params.m != 0 or params.q <= 0:
        raise DKPError("BAD_ARGUMENTS", "exact case needs M = m = 0 and q > 0")
    q = params.q
    return AnsatzSolution(n=0, b1=0.0, b2=-q / 2, b3=0.5, b4=-0.5, kappa2=q, regime=Regime.SMALL)
