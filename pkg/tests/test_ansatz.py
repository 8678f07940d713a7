import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dkpstring import ansatz
from dkpstring.ansatz import Policy, SystemVariant, Unknowns
from dkpstring.model import BranchSelection, DKPError, PhysicalParams, Regime, all_selections

CANON = PhysicalParams()
SEL = BranchSelection.parse


@st.composite
def params_no_osc(draw):
    return PhysicalParams(
        M=draw(st.floats(0.2, 3.0)),
        q=draw(st.floats(0.1, 2.0)) * draw(st.sampled_from([1, -1])),
        omega=draw(st.floats(0.0, 0.05)),
        alpha=draw(st.floats(0.1, 1.0)),
        m=draw(st.integers(-3, 3)),
        k=draw(st.floats(0.0, 2.0)),
    )


def test_canonical_table_branch():
    s = ansatz.solve_nodeless(CANON, Regime.SMALL, SEL("(-,+,3/2)"))
    assert s.b == pytest.approx((-1.0, -0.5, 2.5, 1.5), abs=1e-15)
    assert s.kappa2 == pytest.approx(8.0, abs=1e-12)
    assert s.energies.e_plus == pytest.approx(3.15229, abs=1e-5)
    assert s.energies.e_minus == pytest.approx(-3.17229, abs=1e-5)
    assert s.physical and s.reasons == ()


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 1.0])
def test_small_regime_kappa2_closed_form(alpha):
    s = ansatz.solve_nodeless(CANON.replace(alpha=alpha), Regime.SMALL, SEL("(-,+,3/2)"))
    assert s.kappa2 == pytest.approx(2 / alpha + 4, rel=1e-14)


def test_one_node_canonical():
    s = ansatz.solve_onenode(CANON, Regime.SMALL, SEL("(-,+,3/2)"))
    assert s.alpha11 == pytest.approx(8 / 3, rel=1e-14)
    assert s.energies.e_plus == pytest.approx(3.4541, abs=1e-4)
    assert s.physical


def test_solve_branches_returns_eight_sorted():
    sols = ansatz.solve_branches(CANON, 0, Regime.SMALL)
    assert [s.selection for s in sols] == all_selections()
    physical = {s.selection.label for s in sols if s.physical}
    assert physical == {"(-,+,3/2)", "(-,+,-1/2)"}


@pytest.mark.parametrize("n", [0, 1])
@pytest.mark.parametrize("regime", [Regime.SMALL, Regime.ARBITRARY])
def test_determining_residuals_vanish(n, regime):
    solve = ansatz.solve_onenode if n else ansatz.solve_nodeless
    for sel in all_selections():
        try:
            s = solve(CANON, regime, sel)
        except DKPError as exc:
            assert exc.code == "ALPHA11_SINGULAR"
            continue
        for name in s.determining:
            assert abs(s.residuals[name]) <= 1e-10, (sel.label, name)


def test_oscillator_determining_residuals_vanish():
    p = CANON.replace(varpi=0.4, q=0.8)
    for sel in all_selections():
        s = ansatz.solve_nodeless(p, Regime.OSCILLATOR, sel)
        assert max(abs(s.residuals[n]) for n in s.determining) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(params_no_osc(), st.sampled_from(all_selections()), st.floats(-5, 5))
def test_eq31_4_identity_on_matched_branches(params, sel, a):
    system = ansatz.build_system(params, SystemVariant.ONE_NODE)
    b1, b2, b3, b4 = ansatz.branch_values(sel, params, Regime.SMALL)
    assert b1 * b2 == pytest.approx(params.M * params.q / 2, rel=1e-14)
    assert abs(system.equations["31.4"](Unknowns(b1, b2, b3, b4, a, 0.0))) <= 1e-12 * (1 + abs(a)) * (1 + params.q**2)


@pytest.mark.parametrize("b4", ["3/2", "-1/2"])
def test_eq31_3_vanishes_for_allowed_b4(b4):
    s = ansatz.solve_onenode(CANON, Regime.SMALL, SEL(f"(-,+,{b4})"))
    assert s.residuals["31.3"] == 0


@settings(max_examples=30, deadline=None)
@given(params_no_osc(), st.sampled_from(all_selections()))
def test_diagnostics_reproducible(params, sel):
    for n, variant in ((0, SystemVariant.SMALL_N0), (1, SystemVariant.ONE_NODE)):
        solve = ansatz.solve_onenode if n else ansatz.solve_nodeless
        try:
            s = solve(params, Regime.SMALL, sel)
        except DKPError:
            continue
        u = Unknowns(*s.b, s.alpha11 or 0.0, s.kappa2)
        direct = ansatz.build_system(params, variant).evaluate(u)
        for name, value in s.diagnostics.items():
            assert abs(value - direct[name]) <= 1e-12


@pytest.mark.parametrize("scale", [1e-3, -2.0, 7.5])
def test_alpha11_invariant_under_rescaling(scale):
    system = ansatz.build_system(CANON, SystemVariant.ONE_NODE)
    b = ansatz.branch_values(SEL("(-,+,3/2)"), CANON, Regime.SMALL)
    eq = system.equations["31.6"]
    plain = ansatz.solve_linear(lambda a: eq(Unknowns(*b, a, 0.0)))
    scaled = ansatz.solve_linear(lambda a: scale * eq(Unknowns(*b, a, 0.0)))
    assert scaled == pytest.approx(plain, rel=1e-14)


def test_nodeless_diagnostics_are_nonzero():
    s = ansatz.solve_nodeless(CANON, Regime.SMALL, SEL("(-,+,3/2)"))
    assert s.diagnostics == {"inv_r": pytest.approx(6.0, abs=1e-12), "inv_w": pytest.approx(16.0, abs=1e-12)}


def test_oscillator_branch_tends_to_arbitrary_branch():
    for sel in all_selections():
        a = ansatz.branch_values(sel, CANON, Regime.ARBITRARY)
        o = ansatz.branch_values(sel, CANON.replace(varpi=1e-6), Regime.OSCILLATOR)
        assert max(abs(x - y) for x, y in zip(a, o)) < 1e-8


@pytest.mark.parametrize("varpi", [1e-6, 1e-5, 1e-4])
def test_oscillator_kappa2_shift_is_linear_in_frequency(varpi):
    """kappa^2 moves by -M varpi + O(varpi^2) from the M varpi constant."""
    p = CANON.replace(M=1.5)
    sel = SEL("(-,+,3/2)")
    a = ansatz.solve_nodeless(p, Regime.ARBITRARY, sel)
    o = ansatz.solve_nodeless(p.replace(varpi=varpi), Regime.OSCILLATOR, sel)
    # the b's move at O(varpi^2), coefficient about 15 here
    assert abs(o.kappa2 - a.kappa2 + p.M * varpi) <= 50 * varpi**2


def test_oscillator_branch_sign_follows_q():
    p = CANON.replace(q=-0.5, varpi=0.3)
    b1, b2, _, _ = ansatz.branch_values(SEL("(+,+,3/2)"), p, Regime.OSCILLATOR)
    assert b2 < 0 and b1 > 0
    assert 4 * b1 * b2 == pytest.approx(2 * p.M * p.q)


@pytest.mark.parametrize(
    "call, code",
    [
        (lambda: ansatz.system_variant(1, Regime.OSCILLATOR), "OSCILLATOR_ONE_NODE_UNSUPPORTED"),
        (lambda: ansatz.system_variant(2, Regime.SMALL), "NODE_COUNT_UNSUPPORTED"),
        (lambda: ansatz.build_system(CANON.replace(q=0.0), SystemVariant.SMALL_N0), "Q_ZERO_UNSUPPORTED"),
        (lambda: ansatz.branch_values(SEL("(+,+,3/2)"), CANON.replace(varpi=0.1), Regime.SMALL), "OSCILLATOR_NOT_ALLOWED"),
        (lambda: ansatz.solve_linear(lambda x: 3.0), "SINGULAR_LINEAR"),
        (lambda: ansatz.hard_wall_q(1.0, 0.0), "BAD_ARGUMENTS"),
    ],
)
def test_error_codes(call, code):
    with pytest.raises(DKPError) as exc:
        call()
    assert exc.value.code == code


def test_first_principles_hard_wall():
    p = PhysicalParams(M=1.0, q=ansatz.hard_wall_q(1.0, 2.0), omega=1.0, alpha=0.5)
    sols = ansatz.solve_branches(p, 0, Regime.ARBITRARY, Policy.FIRST_PRINCIPLES)
    assert {s.selection.label for s in sols if s.physical} == {"(+,+,3/2)"}
    reasons = {s.selection.label: set(s.reasons) for s in sols}
    assert "DIVERGES_AT_ORIGIN" in reasons["(+,-,3/2)"]
    assert "NOT_VANISHING_AT_WALL" in reasons["(+,+,-1/2)"]


def test_wall_condition_flagged():
    p = PhysicalParams(M=1.0, q=-0.3, omega=1.0, alpha=0.5)
    s = ansatz.solve_nodeless(p, Regime.ARBITRARY, SEL("(+,+,3/2)"), Policy.FIRST_PRINCIPLES)
    assert "WALL_CONDITION_UNMET" in s.reasons


def test_one_node_beyond_wall():
    p = PhysicalParams(M=1.0, q=-0.5, omega=1.0, alpha=0.5)
    with pytest.raises(DKPError) as exc:
        ansatz.physical_solutions(p, 1, Regime.ARBITRARY, Policy.FIRST_PRINCIPLES)
    assert exc.value.code == "NO_PHYSICAL_BRANCH"
    s = ansatz.solve_onenode(p, Regime.ARBITRARY, SEL("(+,+,3/2)"), Policy.FIRST_PRINCIPLES)
    assert s.alpha11 == pytest.approx(8.0)
    assert "NODE_OUTSIDE_DOMAIN" in s.reasons


def test_node_exactly_at_wall():
    # alpha11 = 8/3 does not depend on omega; omega = 3/4 puts the wall there
    p = CANON.replace(omega=0.75)
    s = ansatz.solve_onenode(p, Regime.SMALL, SEL("(-,+,3/2)"))
    assert ansatz.exact_alpha11(p, s.selection) == Fraction(8, 3)
    assert "NODE_AT_WALL" in s.reasons


def test_exact_alpha11_agrees_with_float_solve():
    for sel in all_selections():
        s = ansatz.solve_onenode(CANON, Regime.SMALL, sel)
        assert float(ansatz.exact_alpha11(CANON, sel)) == pytest.approx(s.alpha11, abs=1e-14)


def test_decaying_regime_rejects_growing_branch():
    s = ansatz.solve_nodeless(CANON, Regime.SMALL, SEL("(+,+,3/2)"), Policy.FIRST_PRINCIPLES)
    assert "NOT_NORMALIZABLE_AT_INFINITY" in s.reasons


def test_complex_energy_reported_not_raised():
    s = ansatz.solve_nodeless(CANON, Regime.SMALL, SEL("(-,-,-1/2)"))
    assert s.energies is None
    assert "COMPLEX_ENERGY" in s.reasons


def test_presets_differ_between_regimes():
    arb = ansatz.PAPER_PRESETS[(Regime.ARBITRARY, 1)]
    small = ansatz.PAPER_PRESETS[(Regime.SMALL, 1)]
    assert arb != small
    assert math.copysign(1, next(iter(arb)).sign12) == -math.copysign(1, next(iter(small)).sign12)
