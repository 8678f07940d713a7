"""Physical parameters and the value types shared by every module.

Natural units (hbar = c = 1).  The scalar potential is U(r) = q r, the frame
rotates with angular velocity ``omega`` and the cosmic string has deficit
parameter ``alpha``.  Rotation confines the geometry to ``0 < r < r0`` with
``r0 = 1 / (omega * alpha)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

import numpy as np


class DKPError(ValueError):
    """Domain error carrying a stable machine-readable ``code``."""

    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)


class Issue(NamedTuple):
    code: str
    message: str


class Regime(str, Enum):
    """Which master equation governs the radial problem."""

    OSCILLATOR = "OSCILLATOR"  # oscillator term kept
    ARBITRARY = "ARBITRARY"  # varpi = 0, finite omega*alpha, hard wall at r0
    SMALL = "SMALL"  # varpi = 0, omega*alpha << 1, r0 -> infinity


@dataclass(frozen=True)
class PhysicalParams:
    M: float = 1.0
    q: float = 1.0
    varpi: float = 0.0
    omega: float = 0.01
    alpha: float = 0.5
    m: int = 1
    k: float = 1.0

    @property
    def omega_alpha(self) -> float:
        return self.omega * self.alpha

    @property
    def r0(self) -> float:
        wa = self.omega_alpha
        return math.inf if wa == 0 else 1.0 / wa

    @property
    def m_alpha(self) -> float:
        return self.m / self.alpha

    def rho(self, r):
        return self.omega_alpha * np.asarray(r, dtype=float)

    def potential(self, r):
        """M + U(r); vanishes at r = -M/q."""
        return self.M + self.q * np.asarray(r, dtype=float)

    def replace(self, **changes) -> "PhysicalParams":
        values = {name: getattr(self, name) for name in self.__dataclass_fields__}
        values.update(changes)
        return PhysicalParams(**values)


def validate(params: PhysicalParams, r=None) -> list[Issue]:
    """Return every violated invariant; an empty list means the params are ok.

    ``r`` optionally names radii that must lie inside the rotating frame.
    """
    issues = []
    if not (0.0 < params.alpha <= 1.0):
        issues.append(Issue("ALPHA_OUT_OF_RANGE", f"alpha={params.alpha} not in (0, 1]"))
    if params.varpi < 0:
        issues.append(Issue("NEGATIVE_FREQUENCY", f"varpi={params.varpi} < 0"))
    if params.omega < 0:
        issues.append(Issue("NEGATIVE_FREQUENCY", f"omega={params.omega} < 0"))
    if params.M < 0:
        issues.append(Issue("NEGATIVE_MASS", f"M={params.M} < 0"))
    if float(params.m) != int(params.m):
        issues.append(Issue("M_NOT_INTEGER", f"m={params.m} is not an integer"))
    for name in ("M", "q", "varpi", "omega", "alpha", "k"):
        if not math.isfinite(getattr(params, name)):
            issues.append(Issue("NOT_FINITE", f"{name} is not finite"))
    if r is not None and not issues:
        radii = np.atleast_1d(np.asarray(r, dtype=float))
        bad = radii[params.rho(radii) >= 1.0]
        if bad.size:
            issues.append(
                Issue("RHO_GE_ONE", f"r={bad[0]:g} >= r0={params.r0:g} (rho >= 1)")
            )
    return issues


def check(params: PhysicalParams, r=None) -> PhysicalParams:
    """Raise :class:`DKPError` with the first violated invariant."""
    issues = validate(params, r)
    if issues:
        raise DKPError(issues[0].code, "; ".join(i.message for i in issues))
    return params


class Derived(NamedTuple):
    rho: float
    r0: float
    m_alpha: float


def derived(params: PhysicalParams, r: float) -> Derived:
    check(params, r)
    return Derived(float(params.rho(r)), params.r0, params.m_alpha)


@dataclass(frozen=True)
class EnergyPair:
    e_plus: float
    e_minus: float
    kappa2: float


_B4_CHOICES = (Fraction(3, 2), Fraction(-1, 2))


@dataclass(frozen=True, order=True)
class BranchSelection:
    """Sign choices picking one of the eight closed-form branches.

    ``sign12`` couples (b1, b2), ``sign3`` picks b3 = 1/2 + sign3 * m/alpha and
    ``b4`` is one of the two roots 3/2 and -1/2.
    """

    sign12: int
    sign3: int
    b4: Fraction

    def __post_init__(self):
        if self.sign12 not in (1, -1) or self.sign3 not in (1, -1):
            raise DKPError("BAD_SELECTION", "signs must be +1 or -1")
        b4 = Fraction(self.b4).limit_denominator(4)
        if b4 not in _B4_CHOICES:
            raise DKPError("BAD_SELECTION", f"b4 must be 3/2 or -1/2, got {self.b4}")
        object.__setattr__(self, "b4", b4)

    @property
    def label(self) -> str:
        sign = {1: "+", -1: "-"}
        return f"({sign[self.sign12]},{sign[self.sign3]},{self.b4})"

    @classmethod
    def parse(cls, text: str) -> "BranchSelection":
        s12, s3, b4 = text.strip().strip("()").split(",")
        return cls(int(s12 + "1"), int(s3 + "1"), Fraction(b4))


def all_selections() -> list[BranchSelection]:
    """The eight selections, sorted by selection tuple."""
    return sorted(
        BranchSelection(s12, s3, b4)
        for s12 in (1, -1)
        for s3 in (1, -1)
        for b4 in _B4_CHOICES
    )


@dataclass
class AnsatzSolution:
    """One closed-form branch of the exponential-polynomial ansatz.

    ``residuals`` maps every matching equation of the governing system to its
    value at the returned parameters; ``determining`` names the ones used to fix
    the unknowns (these vanish), the rest quantify over-determination.
    """

    n: int
    b1: float
    b2: float
    b3: float
    b4: float
    kappa2: float
    regime: Regime = Regime.SMALL
    selection: BranchSelection | None = None
    alpha11: float | None = None
    energies: EnergyPair | None = None
    residuals: dict[str, float] = field(default_factory=dict)
    determining: tuple[str, ...] = ()
    physical: bool = False
    reasons: tuple[str, ...] = ()

    @property
    def b(self) -> tuple[float, float, float, float]:
        return (self.b1, self.b2, self.b3, self.b4)

    @property
    def diagnostics(self) -> dict[str, float]:
        return {k: v for k, v in self.residuals.items() if k not in self.determining}


FUNCTION_KINDS = ("F", "R", "PHI1", "PHI2", "PHI3", "PHI4", "PHI5", "RESIDUAL")


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Samples of a radial function, optionally with its first two derivatives."""

    grid: np.ndarray
    values: np.ndarray
    kind: str = "F"
    normalization: str = "RAW"
    d1: np.ndarray | None = None
    d2: np.ndarray | None = None

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
            raise DKPError("GRID_NOT_INCREASING", "grid must be strictly increasing")
        if self.kind not in FUNCTION_KINDS:
            raise DKPError("BAD_KIND", self.kind)
        if self.normalization not in ("RAW", "MAX1"):
            raise DKPError("BAD_NORMALIZATION", self.normalization)
        object.__setattr__(self, "grid", grid)
        for name in ("values", "d1", "d2"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr)
                if arr.shape != grid.shape:
                    raise DKPError("SHAPE_MISMATCH", f"{name} does not match grid")
                object.__setattr__(self, name, arr)

    @property
    def has_derivatives(self) -> bool:
        return self.d1 is not None and self.d2 is not None
