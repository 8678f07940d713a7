"""Spin-zero DKP bosons in a rotating cosmic-string frame with a linear scalar potential."""

from .algebra import (
    algebra_report,
    curved_betas,
    flat_betas,
    geometry_cross_check,
    spin_connections,
    tetrad,
    trilinear_defect,
)
from .ansatz import (
    Policy,
    hard_wall_q,
    physical_solutions,
    solve_branches,
    solve_nodeless,
    solve_onenode,
)
from .energy import energy_pair
from .model import (
    AnsatzSolution,
    BranchSelection,
    DKPError,
    EnergyPair,
    PhysicalParams,
    Regime,
    SampledFunction,
    all_selections,
    check,
    validate,
)
from .radial import Variant, operator_equivalence_report, radial_operator
from .spectrum import (
    count_nodes,
    decompose_residual,
    diagnostics_from_decomposition,
    eval_wavefunction,
    ode_residual,
    reproduce_table,
    sweep_energy,
)

__version__ = "0.1.0"
