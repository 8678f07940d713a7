"""Radial eigenfunction shapes: the alpha family, the hard wall, the node.

Writes CSV and SVG files into ./demo_output (created if missing).
Run: python3 demos/03_eigenfunctions.py
"""

import math
from pathlib import Path

import numpy as np

from dkpstring import ansatz, spectrum
from dkpstring.emit import fmt_full, svg_polyline, to_csv
from dkpstring.model import BranchSelection, PhysicalParams, Regime

out = Path("demo_output")
out.mkdir(exist_ok=True)
sel = BranchSelection.parse("(-,+,3/2)")
base = PhysicalParams()

# Node-less states for several deficit parameters. r^b3 equals 1 at r = 1, so
# every raw curve passes through exp(-1.5) * 2^1.5 there.
grid = np.linspace(0.01, 6.0, 600)
columns = {"r": grid}
for alpha in (0.25, 0.5, 0.75, 1.0):
    p = base.replace(alpha=alpha)
    sol = ansatz.solve_nodeless(p, Regime.SMALL, sel)
    raw = spectrum.eval_wavefunction(sol, p, grid)
    at_one = spectrum.eval_wavefunction(sol, p, np.array([0.5, 1.0])).values[1]
    peak = grid[np.argmax(raw.values)]
    print(f"alpha={alpha:4.2f}  R(1)={at_one:.12f}  peak at r={peak:.3f}")
    columns[f"R_alpha_{alpha}"] = raw.values
print("expected R(1) =", math.exp(-1.5) * 2**1.5)
rows = [[fmt_full(v) for v in vals] for vals in zip(*columns.values())]
(out / "nodeless_alpha_family.csv").write_text(to_csv(list(columns), rows))

# Hard wall: with q = -M/r0 the factor (M + q r)^(3/2) vanishes at r0.
wall = PhysicalParams(M=1.0, q=ansatz.hard_wall_q(1.0, 2.0), omega=1.0, alpha=0.5)
sol = ansatz.solve_nodeless(wall, Regime.ARBITRARY, BranchSelection.parse("(+,+,3/2)"))
sample = spectrum.eval_wavefunction(sol, wall, normalization="MAX1")
R_wall = spectrum.radial_profile(sol, wall, np.array([wall.r0]))[0][0]
print(f"\nhard wall r0={wall.r0}: R(r0) = {R_wall}, nodes = {spectrum.count_nodes(sample)}")
(out / "hard_wall.svg").write_text(svg_polyline(sample.grid, sample.values, title="hard wall"))

# One-node state: the linear factor (r - alpha11) puts a single zero at 8/3.
one = ansatz.solve_onenode(base, Regime.SMALL, sel)
sample = spectrum.eval_wavefunction(one, base, normalization="MAX1")
print(f"\none node: alpha11 = {one.alpha11:.6f}, nodes counted = {spectrum.count_nodes(sample)}")
(out / "one_node.svg").write_text(svg_polyline(sample.grid, sample.values, title="one node"))
print(f"\nfiles written to {out.resolve()}")
