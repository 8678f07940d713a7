"""Beta matrices, tetrad and spin connections of the five-dimensional DKP field.

Frame indices a = 0..3 carry the algebra signature ``ETA_ALGEBRA`` =
diag(+1, -1, -1, -1); this is the only signature for which the flat matrices
close under the trilinear algebra (beta0**3 == beta0 forces eta^00 = +1).
Coordinate indices mu = (t, r, phi, z) carry the rotating-frame metric, whose
line element has the opposite signature (-, +, +, +).  The tetrad is therefore
orthonormal with respect to ``ETA_LINE = -ETA_ALGEBRA``, and contracting it with
``ETA_ALGEBRA`` yields ``-g^{mu nu}``.

Tetrad orientation: the off-diagonal entry omega*alpha*r/sqrt(1 - rho**2)
belongs to frame leg a=2 and coordinate t (e_2^t).  This is the reading that
reproduces the curved beta^t and the inverse metric; the naive row/column
reading of the tetrad as a 4x4 array satisfies neither.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .model import DKPError, PhysicalParams, check

ETA_ALGEBRA = np.diag([1, -1, -1, -1])
ETA_LINE = -ETA_ALGEBRA
COORDS = ("t", "r", "phi", "z")


def _unit(i, j):
    e = np.zeros((5, 5), dtype=np.int64)
    e[i, j] = 1
    return e


def flat_betas() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Integer 5x5 matrices beta^0 .. beta^3.

    beta^0 holds theta = [[0, 1], [1, 0]] in its upper-left block; beta^i holds
    rho^i (a 2x3 block whose only entry is -1 in row 0, column i-1) above the
    diagonal and -rho^i^T below it.
    """
    beta0 = _unit(0, 1) + _unit(1, 0)
    spatial = [-_unit(0, j) + _unit(j, 0) for j in (2, 3, 4)]
    return (beta0, *spatial)


def trilinear_defect(betas, metric) -> np.ndarray:
    """Max-abs defect of b^a b^b b^c + b^c b^b b^a - g^ab b^c - g^cb b^a per triple.

    Returns a 4x4x4 array; exact zeros for integer input that satisfies the algebra.
    """
    out = np.zeros((4, 4, 4), dtype=np.result_type(betas[0], metric))
    for a, b, c in itertools.product(range(4), repeat=3):
        lhs = betas[a] @ betas[b] @ betas[c] + betas[c] @ betas[b] @ betas[a]
        rhs = metric[a, b] * betas[c] + metric[c, b] * betas[a]
        out[a, b, c] = np.max(np.abs(lhs - rhs))
    return out


def _frame(params: PhysicalParams, r: float):
    check(params, r)
    if r <= 0:
        raise DKPError("RADIUS_NONPOSITIVE", f"r={r}")
    rho = params.omega_alpha * r
    return rho, np.sqrt(1.0 - rho * rho)


def tetrad(params: PhysicalParams, r: float) -> np.ndarray:
    """e[a, mu] = e_a^mu at radius r."""
    rho, s = _frame(params, r)
    e = np.zeros((4, 4))
    e[0, 0] = 1.0 / s
    e[1, 1] = 1.0
    e[2, 0] = rho / s
    e[2, 2] = s / (params.alpha * r)
    e[3, 3] = 1.0
    return e


def tetrad_derivative(params: PhysicalParams, r: float) -> np.ndarray:
    """d/dr of :func:`tetrad`, closed form."""
    rho, s = _frame(params, r)
    wa = params.omega_alpha
    de = np.zeros((4, 4))
    de[0, 0] = rho * wa / s**3
    de[2, 0] = wa / s**3
    de[2, 2] = -rho * wa / (s * params.alpha * r) - s / (params.alpha * r * r)
    return de


def metric(params: PhysicalParams, r: float) -> np.ndarray:
    """Covariant rotating-frame metric g_{mu nu}, signature (-, +, +, +)."""
    check(params, r)
    w, a = params.omega, params.alpha
    g = np.zeros((4, 4))
    g[0, 0] = -(1.0 - (w * a * r) ** 2)
    g[0, 2] = g[2, 0] = w * a * a * r * r
    g[1, 1] = 1.0
    g[2, 2] = (a * r) ** 2
    g[3, 3] = 1.0
    return g


def metric_derivative(params: PhysicalParams, r: float) -> np.ndarray:
    w, a = params.omega, params.alpha
    dg = np.zeros((4, 4))
    dg[0, 0] = 2.0 * (w * a) ** 2 * r
    dg[0, 2] = dg[2, 0] = 2.0 * w * a * a * r
    dg[2, 2] = 2.0 * a * a * r
    return dg


def inverse_metric(params: PhysicalParams, r: float) -> np.ndarray:
    """Contravariant g^{mu nu} by block inversion of the (t, phi) sector."""
    check(params, r)
    rho = params.omega_alpha * r
    ginv = np.zeros((4, 4))
    ginv[0, 0] = -1.0
    ginv[0, 2] = ginv[2, 0] = params.omega
    ginv[1, 1] = 1.0
    ginv[2, 2] = (1.0 - rho * rho) / (params.alpha * r) ** 2
    ginv[3, 3] = 1.0
    return ginv


def tetrad_metric_defect(params: PhysicalParams, r: float) -> float:
    """max |eta^{ab} e_a^mu e_b^nu - g^{mu nu}| with the line-element frame metric."""
    e = tetrad(params, r)
    return float(np.max(np.abs(e.T @ ETA_LINE @ e - inverse_metric(params, r))))


def curved_betas(params: PhysicalParams, r: float) -> tuple[np.ndarray, ...]:
    """beta^mu = e_a^mu beta^a for mu = t, r, phi, z."""
    e = tetrad(params, r)
    flat = [b.astype(float) for b in flat_betas()]
    return tuple(sum(e[a, mu] * flat[a] for a in range(4)) for mu in range(4))


def algebra_metric(params: PhysicalParams, r: float) -> np.ndarray:
    """The metric in the algebra signature: -g^{mu nu}."""
    return -inverse_metric(params, r)


@dataclass(frozen=True)
class SpinConnectionSet:
    gamma_t: np.ndarray
    gamma_r: np.ndarray
    gamma_phi: np.ndarray
    gamma_z: np.ndarray

    def as_tuple(self):
        return (self.gamma_t, self.gamma_r, self.gamma_phi, self.gamma_z)


def spin_connections(params: PhysicalParams, r: float) -> SpinConnectionSet:
    """The closed-form connection matrices Gamma_t, Gamma_r, Gamma_phi, Gamma_z."""
    rho, s = _frame(params, r)
    wa, a = params.omega_alpha, params.alpha

    rot = np.zeros((5, 5))
    rot[1, 2] = rot[2, 1] = -rho
    rot[2, 3] = 1.0
    rot[3, 2] = -1.0

    boost = np.zeros((5, 5))
    boost[1, 3] = boost[3, 1] = -1.0

    return SpinConnectionSet(
        gamma_t=(wa / s) * rot,
        gamma_r=(-wa / (s * s)) * boost,
        gamma_phi=(a / s) * rot,
        gamma_z=np.zeros((5, 5)),
    )


def christoffel(params: PhysicalParams, r: float) -> np.ndarray:
    """Gamma^l_{mn} of the rotating-frame metric; only r-derivatives are non-zero."""
    ginv = inverse_metric(params, r)
    dg = np.zeros((4, 4, 4))  # dg[s, m, n] = d_s g_mn
    dg[1] = metric_derivative(params, r)
    lowered = 0.5 * (
        np.einsum("mns->smn", dg)  # d_m g_sn
        + np.einsum("nms->smn", dg)  # d_n g_sm
        - dg
    )
    return np.einsum("ls,smn->lmn", ginv, lowered)


def connection_coefficients(params: PhysicalParams, r: float) -> np.ndarray:
    """omega[mu, a, b] = omega_{mu ab} from the tetrad postulate.

    omega_mu^a_b = e^a_nu (d_mu e_b^nu + Gamma^nu_{mu lam} e_b^lam); the frame
    index is lowered with the algebra signature.
    """
    e = tetrad(params, r)
    coframe = np.linalg.inv(e).T  # coframe[a, nu] = e^a_nu
    de = np.zeros((4, 4, 4))  # de[mu, b, nu] = d_mu e_b^nu
    de[1] = tetrad_derivative(params, r)
    gam = christoffel(params, r)
    mixed = np.einsum("an,mbn->mab", coframe, de) + np.einsum(
        "an,nml,bl->mab", coframe, gam, e
    )
    return np.einsum("ac,mcb->mab", ETA_ALGEBRA, mixed)


def geometry_cross_check(params: PhysicalParams, r: float, tol: float = 1e-10) -> dict:
    """Compare the closed-form spin connections with 1/2 omega_{mu ab}[beta^a, beta^b].

    omega_{mu ab} is rebuilt from the tetrad and the Christoffel symbols.  Both
    index orders of omega are reported ("ab" as constructed, "ba" transposed),
    since the sign of the assembled matrix depends on that convention.  Only
    reports; a mismatch is data, not an error.
    """
    omega_mab = connection_coefficients(params, r)
    flat = [b.astype(float) for b in flat_betas()]
    comm = [[flat[a] @ flat[b] - flat[b] @ flat[a] for b in range(4)] for a in range(4)]
    built = [
        0.5 * sum(omega_mab[mu, a, b] * comm[a][b] for a in range(4) for b in range(4))
        for mu in range(4)
    ]
    closed = spin_connections(params, r).as_tuple()
    names = ("gamma_t", "gamma_r", "gamma_phi", "gamma_z")
    matrices = {}
    for name, lhs, rhs in zip(names, closed, built):
        dev_ab = float(np.max(np.abs(lhs - rhs)))
        dev_ba = float(np.max(np.abs(lhs + rhs)))
        matrices[name] = {
            "max_abs_deviation": dev_ab,
            "max_abs_deviation_transposed": dev_ba,
            "pass": dev_ab <= tol,
            "pass_transposed": dev_ba <= tol,
        }
    antisym = float(np.max(np.abs(omega_mab + np.swapaxes(omega_mab, 1, 2))))
    return {
        "r": float(r),
        "matrices": matrices,
        "consistent_index_order": [
            order
            for order, key in (("ab", "pass"), ("ba", "pass_transposed"))
            if all(m[key] for m in matrices.values())
        ],
        "omega_antisymmetry_defect": antisym,
        "tolerance": tol,
    }


def algebra_report(params: PhysicalParams, r: float) -> dict:
    """Every algebraic identity of the module evaluated at one point."""
    flat = flat_betas()
    curved = curved_betas(params, r)
    conn = spin_connections(params, r)
    checks = {
        "flat_trilinear_exact": bool(np.all(trilinear_defect(flat, ETA_ALGEBRA) == 0)),
        "curved_trilinear_defect": float(
            trilinear_defect(curved, algebra_metric(params, r)).max()
        ),
        "tetrad_metric_defect": tetrad_metric_defect(params, r),
    }
    if params.omega > 0:
        checks["gamma_phi_vs_gamma_t_over_omega"] = float(
            np.max(np.abs(conn.gamma_phi - conn.gamma_t / params.omega))
        )
    report = {
        "checks": checks,
        "pass": {
            "flat_trilinear_exact": checks["flat_trilinear_exact"],
            "curved_trilinear_defect": checks["curved_trilinear_defect"] <= 1e-12,
            "tetrad_metric_defect": checks["tetrad_metric_defect"] <= 1e-12,
        },
        "geometry_cross_check": geometry_cross_check(params, r),
    }
    if "gamma_phi_vs_gamma_t_over_omega" in checks:
        report["pass"]["gamma_phi_vs_gamma_t_over_omega"] = (
            checks["gamma_phi_vs_gamma_t_over_omega"] <= 1e-14
        )
    return report
