"""Energies against alpha (node-less) and against omega*alpha (one node).

Run: python3 demos/04_energy_sweeps.py
"""

import numpy as np

from dkpstring import spectrum
from dkpstring.model import PhysicalParams

base = PhysicalParams()

# Both roots shrink in magnitude as the cone opens towards flat space.
rows = spectrum.sweep_energy(base, "alpha", np.linspace(0.05, 1.0, 8), [0.0, 0.01, 0.1])
print(f"{'alpha':>6} {'omega':>6} {'E+':>9} {'E-':>9}")
for r in rows:
    print(f"{r.value:6.3f} {r.omega:6.2f} {r.e_plus:9.5f} {r.e_minus:9.5f}")
print("omega = 0 rows are symmetric; rotation shifts both roots by -m omega.")

# One-node energies fall as the rotation grows over the tabulated range.
rows = spectrum.sweep_energy(base, "omega_alpha", spectrum.OMEGA_ALPHAS, [0.01], state=1)
print(f"\n{'wa':>6} {'E+':>9} {'E-':>9}")
for r in rows:
    print(f"{r.value:6.3f} {r.e_plus:9.5f} {r.e_minus:9.5f}")

# Points that fail validation stay in the output with a reason.
rows = spectrum.sweep_energy(base, "omega_alpha", [0.005, 0.02], [0.0, 0.01])
print("\nfailed points:", [(r.value, r.omega, r.error) for r in rows if r.error])
