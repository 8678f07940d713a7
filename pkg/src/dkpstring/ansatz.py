"""Closed-form bound states from the exponential-polynomial ansatz.

The reduced radial function is taken as

    R(r) = f_n(r) exp(b1 r + b2 r^2) r^b3 (M + q r)^b4,   f_0 = 1, f_1 = r - alpha11.

Substituting into the radial equation and matching basis terms gives more
equations than unknowns.  A fixed *determining set* pins b1..b4, alpha11 and
kappa^2; the leftover equations are evaluated and reported, never forced.

Deliberate corrections to the matching equations, each covered by a regression test:

* the b4 quadratic is b4 (b4 - 1) - 3/4 = 0 in every system (roots 3/2, -1/2);
* the b3 quadratic of the one-node system uses m/alpha, and its rotational
  constant is (m/alpha)^2 (omega alpha)^2 = m^2 omega^2;
* the 1/r and 1/(M + q r) matching lines are normalised as 4(...) + q and
  4(...) + q^2 - 2 M^3 varpi in every node-less system.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Callable, NamedTuple

from .energy import energy_pair
from .model import (
    AnsatzSolution,
    BranchSelection,
    DKPError,
    PhysicalParams,
    Regime,
    all_selections,
    check,
)


class SystemVariant(str, Enum):
    OSC_N0 = "OSC_N0"
    ARB_N0 = "ARB_N0"
    SMALL_N0 = "SMALL_N0"
    ONE_NODE = "ONE_NODE"


class Policy(str, Enum):
    PAPER_PRESET = "PAPER_PRESET"
    FIRST_PRINCIPLES = "FIRST_PRINCIPLES"


class Unknowns(NamedTuple):
    b1: float
    b2: float
    b3: float
    b4: float
    alpha11: float = 0.0
    kappa2: float = 0.0


Equation = Callable[[Unknowns], float]


class ConstraintSystem(NamedTuple):
    variant: SystemVariant
    equations: dict[str, Equation]
    determining: tuple[str, ...]
    diagnostic: tuple[str, ...]

    def evaluate(self, u: Unknowns) -> dict[str, float]:
        return {name: float(eq(u)) for name, eq in self.equations.items()}


NODELESS_DETERMINING = ("r2", "r", "inv_r2", "inv_w2", "const")
NODELESS_DIAGNOSTIC = ("inv_r", "inv_w")
ONE_NODE_DETERMINING = ("31.1", "31.2", "31.4", "31.6", "31.7")
ONE_NODE_DIAGNOSTIC = ("31.3", "31.5", "31.8")


def system_variant(n: int, regime: Regime) -> SystemVariant:
    regime = Regime(regime)
    if n == 1:
        if regime is Regime.OSCILLATOR:
            raise DKPError("OSCILLATOR_ONE_NODE_UNSUPPORTED", "one-node states need varpi = 0")
        return SystemVariant.ONE_NODE
    if n != 0:
        raise DKPError("NODE_COUNT_UNSUPPORTED", f"n={n}; only n in {{0, 1}}")
    return {
        Regime.OSCILLATOR: SystemVariant.OSC_N0,
        Regime.ARBITRARY: SystemVariant.ARB_N0,
        Regime.SMALL: SystemVariant.SMALL_N0,
    }[regime]


def build_system(params: PhysicalParams, variant: SystemVariant) -> ConstraintSystem:
    """Matching equations of ``variant`` as residual functions of the unknowns."""
    check(params)
    variant = SystemVariant(variant)
    if params.q == 0:
        raise DKPError("Q_ZERO_UNSUPPORTED", "the ln(M + q r) term degenerates at q = 0")
    M, q, m = params.M, params.q, params.m
    ma2 = params.m_alpha**2
    rot = (m * params.omega) ** 2
    vp = params.varpi if variant is SystemVariant.OSC_N0 else 0.0
    if vp == 0 and params.varpi != 0:
        raise DKPError("OSCILLATOR_NOT_ALLOWED", f"{variant.value} requires varpi = 0")

    if variant is not SystemVariant.ONE_NODE:
        const_extra = {
            SystemVariant.OSC_N0: rot + M * vp,
            SystemVariant.ARB_N0: rot,
            SystemVariant.SMALL_N0: 0.0,
        }[variant]
        eqs = {
            "const": lambda u: const_extra
            + u.kappa2
            + u.b1**2
            + 2 * u.b2
            + 4 * u.b2 * u.b3
            + 4 * u.b2 * u.b4,
            "inv_r2": lambda u: u.b3 * (u.b3 - 1) + 0.25 - ma2,
            "inv_r": lambda u: 4 * (M * u.b1 * u.b3 + u.b3 * u.b4 * q) + q,
            "r": lambda u: 4 * u.b1 * u.b2 - 2 * M * q,
            "r2": lambda u: 4 * u.b2**2 - (q * q + (M * vp) ** 2),
            "inv_w2": lambda u: u.b4 * (u.b4 - 1) - 0.75,
            "inv_w": lambda u: 4
            * (2 * u.b2 * u.b4 * M**2 - u.b1 * u.b4 * M * q + u.b3 * u.b4 * q * q)
            + q * q
            - 2 * M**3 * vp,
        }
        return ConstraintSystem(variant, eqs, NODELESS_DETERMINING, NODELESS_DIAGNOSTIC)

    def eq31_5(u):
        b1, b2, b3, b4, a, k2 = u
        # the -2 b1 b4 q term deliberately appears twice (reference form kept)
        return (
            4 * b2 * b4 * M
            - 2 * b4 * q
            + a * b1**2 * q
            + 2 * a * b2 * q
            - 2 * b1 * b4 * q
            + 4 * a * b2 * b3 * q
            - 2 * b1 * b4 * q
            + 4 * a * b2 * b4 * q
            + a * k2 * q
            + a * rot * q
        )

    def eq31_6(u):
        b1, b2, b3, b4, a, _ = u
        # bare m^2 here, not (m/alpha)^2: the tabulated node positions need it
        return (
            -4 * m * m * M
            + M
            + 4 * b3 * M
            - 8 * a * b1 * b3 * M
            + 4 * b3 * b3 * M
            - 2 * a * q
            - 8 * a * b3 * b4 * q
        )

    def eq31_8(u):
        b1, b2, b3, b4, a, _ = u
        return (
            16 * b2 * b4 * M**3
            - 8 * b1 * b4 * M**2 * q
            + 16 * a * b2 * b4 * M**2 * q
            - M * q * q
            + 4 * b4 * M * q * q
            - 8 * a * b1 * b4 * M * q * q
            + 8 * b3 * b4 * M * q * q
            + 4 * b4 * b4 * M * q * q
            + 2 * a * q**3
            + 8 * a * b3 * b4 * q**3
        )

    eqs = {
        "31.1": lambda u: 4 * u.b2**2 - q * q,
        "31.2": lambda u: u.b3 * (1 - u.b3) + (ma2 - 0.25),
        "31.3": lambda u: 3 * M * q
        + 4 * u.b4 * M * q
        - 4 * u.b4**2 * M * q
        + 3 * u.alpha11 * q * q
        + 4 * u.alpha11 * u.b4 * q * q
        - 4 * u.alpha11 * u.b4**2 * q * q,
        "31.4": lambda u: 4 * u.b1 * u.b2
        - 4 * u.alpha11 * u.b2**2
        - 2 * M * q
        + u.alpha11 * q * q,
        "31.5": eq31_5,
        "31.6": eq31_6,
        "31.7": lambda u: u.b1**2
        + 6 * u.b2
        - 4 * u.alpha11 * u.b1 * u.b2
        + 4 * u.b2 * u.b3
        + 4 * u.b2 * u.b4
        + u.kappa2
        + 2 * u.alpha11 * M * q
        + rot,
        "31.8": eq31_8,
    }
    return ConstraintSystem(variant, eqs, ONE_NODE_DETERMINING, ONE_NODE_DIAGNOSTIC)


def branch_values(
    selection: BranchSelection, params: PhysicalParams, regime: Regime = Regime.SMALL
) -> tuple[float, float, float, float]:
    """(b1, b2, b3, b4) for one branch.

    With the oscillator, b2 = sign12 * sgn(q) * sqrt(q^2 + M^2 varpi^2) / 2 and
    b1 = sign12 * M |q| / sqrt(q^2 + M^2 varpi^2); the sgn(q) factor makes the
    labels agree with the varpi = 0 branches b2 = sign12 q/2, b1 = sign12 M for
    either sign of q.
    """
    M, q, vp = params.M, params.q, params.varpi
    s12 = selection.sign12
    if Regime(regime) is Regime.OSCILLATOR:
        d = q * q + (M * vp) ** 2
        if d == 0:
            raise DKPError("DEGENERATE_BRANCH", "q = 0 and varpi = 0")
        root = math.sqrt(d)
        sgn = -1.0 if q < 0 else 1.0
        b2 = s12 * sgn * root / 2
        b1 = s12 * M * abs(q) / root
    else:
        if vp != 0:
            raise DKPError("OSCILLATOR_NOT_ALLOWED", "use the oscillator regime for varpi > 0")
        if q == 0:
            raise DKPError("DEGENERATE_BRANCH", "q = 0 and varpi = 0")
        b2 = s12 * q / 2
        b1 = s12 * M
    b3 = 0.5 + selection.sign3 * params.m / params.alpha
    return (b1, b2, b3, float(selection.b4))


def solve_linear(fn: Callable[[float], float]) -> float:
    """Root of a function known to be affine in its argument."""
    c0 = fn(0.0)
    c1 = fn(1.0) - c0
    if c1 == 0:
        raise DKPError("SINGULAR_LINEAR", "zero linear coefficient")
    return -c0 / c1


def _finish(params, regime, selection, n, u, system, policy):
    try:
        energies = energy_pair(u.kappa2, params)
    except DKPError:
        energies = None
    sol = AnsatzSolution(
        n=n,
        b1=u.b1,
        b2=u.b2,
        b3=u.b3,
        b4=u.b4,
        kappa2=u.kappa2,
        regime=Regime(regime),
        selection=selection,
        alpha11=u.alpha11 if n == 1 else None,
        energies=energies,
        residuals=system.evaluate(u),
        determining=system.determining,
    )
    sol.physical, sol.reasons = physicality(sol, params, policy)
    return sol


def solve_nodeless(
    params: PhysicalParams,
    regime: Regime,
    selection: BranchSelection,
    policy: Policy = Policy.PAPER_PRESET,
) -> AnsatzSolution:
    """Node-less branch: b's from the selection, kappa^2 from the constant match."""
    system = build_system(params, system_variant(0, regime))
    b1, b2, b3, b4 = branch_values(selection, params, regime)
    const = system.equations["const"]
    kappa2 = solve_linear(lambda k2: const(Unknowns(b1, b2, b3, b4, 0.0, k2)))
    return _finish(params, regime, selection, 0, Unknowns(b1, b2, b3, b4, 0.0, kappa2), system, policy)


def solve_onenode(
    params: PhysicalParams,
    regime: Regime,
    selection: BranchSelection,
    policy: Policy = Policy.PAPER_PRESET,
) -> AnsatzSolution:
    """One-node branch: alpha11 from the node-matching line "31.6", then kappa^2 from "31.7"."""
    system = build_system(params, system_variant(1, regime))
    b1, b2, b3, b4 = branch_values(selection, params, regime)
    node_eq = system.equations["31.6"]
    try:
        alpha11 = solve_linear(lambda a: node_eq(Unknowns(b1, b2, b3, b4, a, 0.0)))
    except DKPError:
        raise DKPError("ALPHA11_SINGULAR", f"node equation degenerate for {selection.label}") from None
    energy_eq = system.equations["31.7"]
    kappa2 = solve_linear(lambda k2: energy_eq(Unknowns(b1, b2, b3, b4, alpha11, k2)))
    return _finish(params, regime, selection, 1, Unknowns(b1, b2, b3, b4, alpha11, kappa2), system, policy)


def solve_branches(
    params: PhysicalParams, n: int, regime: Regime, policy: Policy = Policy.PAPER_PRESET
) -> list[AnsatzSolution]:
    """All eight branches, ordered by selection tuple, each with its verdict."""
    solve = solve_onenode if n == 1 else solve_nodeless
    return [solve(params, regime, sel, policy) for sel in all_selections()]


def physical_solutions(params, n, regime, policy=Policy.PAPER_PRESET) -> list[AnsatzSolution]:
    found = [s for s in solve_branches(params, n, regime, policy) if s.physical]
    if not found:
        raise DKPError("NO_PHYSICAL_BRANCH", f"no physical n={n} branch under {Policy(policy).value}")
    return found


def hard_wall_q(M: float, r0: float) -> float:
    """Slope for which M + q r0 = 0, so (M + q r)^b4 vanishes at the wall."""
    if not r0 > 0 or not M > 0:
        raise DKPError("BAD_ARGUMENTS", "need r0 > 0 and M > 0")
    return -M / r0


def _sel(s12, s3, b4):
    return BranchSelection(s12, s3, Fraction(b4))


PAPER_PRESETS = {
    (Regime.ARBITRARY, 0): {_sel(-1, 1, "3/2"), _sel(1, 1, "3/2")},
    (Regime.ARBITRARY, 1): {_sel(1, 1, "3/2")},
    (Regime.SMALL, 0): {_sel(-1, 1, "3/2"), _sel(-1, 1, "-1/2")},
    (Regime.SMALL, 1): {_sel(-1, 1, "3/2")},
    # no reference list exists for the oscillator; the confining (b2 < 0) one is reused
    (Regime.OSCILLATOR, 0): {_sel(-1, 1, "3/2"), _sel(-1, 1, "-1/2")},
}


def exact_alpha11(params: PhysicalParams, selection: BranchSelection) -> Fraction | None:
    """Node position of a one-node branch in exact rational arithmetic.

    Floats are read at their exact binary values; None when the node
    equation has no unique root.
    """
    M, q, m = (Fraction(params.M), Fraction(params.q), Fraction(params.m))
    b1 = selection.sign12 * M
    b3 = Fraction(1, 2) + selection.sign3 * m / Fraction(params.alpha)
    b4 = Fraction(selection.b4)
    num = M * (1 - 4 * m * m + 4 * b3 + 4 * b3 * b3)
    den = 8 * b1 * b3 * M + 2 * q + 8 * b3 * b4 * q
    return None if den == 0 else num / den


def _node_at_wall(solution, params) -> bool:
    """Exact rational equality first, then 1e-12 r0 for inputs typed as decimals."""
    if params.omega_alpha == 0:
        return False
    r0 = params.r0
    exact = exact_alpha11(params, solution.selection) if solution.selection else None
    if exact is not None and exact == 1 / (Fraction(params.omega) * Fraction(params.alpha)):
        return True
    return abs(solution.alpha11 - r0) <= 1e-12 * r0


def _node_reasons(solution, params) -> list[str]:
    reasons = []
    a = solution.alpha11
    if a is None or not a > 0:
        reasons.append("NODE_NOT_POSITIVE")
    r0 = params.r0
    if a is not None and math.isfinite(r0):
        if _node_at_wall(solution, params):
            reasons.append("NODE_AT_WALL")
        elif a > r0:
            reasons.append("NODE_OUTSIDE_DOMAIN")
    return reasons


def physicality(
    solution: AnsatzSolution, params: PhysicalParams, policy: Policy = Policy.PAPER_PRESET
) -> tuple[bool, tuple[str, ...]]:
    """Verdict and reason codes; an empty reason list means physical."""
    policy = Policy(policy)
    reasons = []
    if solution.energies is None:
        reasons.append("COMPLEX_ENERGY")
    if solution.n == 1:
        reasons += _node_reasons(solution, params)

    if policy is Policy.PAPER_PRESET:
        preset = PAPER_PRESETS.get((solution.regime, solution.n), set())
        if solution.selection not in preset:
            reasons.append("NOT_IN_PAPER_PRESET")
        return (not reasons, tuple(reasons))

    b1, b2, b3, b4 = solution.b
    M, q = params.M, params.q
    if b3 < 0:
        reasons.append("DIVERGES_AT_ORIGIN")
    r0 = params.r0
    if solution.regime is Regime.ARBITRARY and math.isfinite(r0):
        if abs(M + q * r0) > 1e-12 * max(M, abs(q) * r0):
            reasons.append("WALL_CONDITION_UNMET")
        if not b4 > 0:
            reasons.append("NOT_VANISHING_AT_WALL")
    else:
        if b2 > 0 or (b2 == 0 and b1 >= 0):
            reasons.append("NOT_NORMALIZABLE_AT_INFINITY")
        if q < 0:
            reasons.append("POTENTIAL_SIGN_CHANGE")
    return (not reasons, tuple(reasons))
