"""Recompute the three energy tables and look at the rows that break the pattern.

Run: python3 demos/02_energy_tables.py
"""

from dkpstring import spectrum

# Canonical inputs: M = q = m = k = 1, omega = 0.01, alpha = omega*alpha / omega.
for which, title in ((1, "node-less, branch (-,+,3/2)"), (2, "node-less, branch (-,+,-1/2)"), (3, "one node")):
    print(f"\nTable {which}: {title}")
    print(f"{'wa':>6} {'alpha':>5} {'E+':>9} {'E-':>9} {'printed':>19} {'dev':>8}  note")
    for row in spectrum.reproduce_table(which):
        note = ""
        if row.typo_flag:
            note = f"symmetric print; restored ({row.restored_e_plus:.4f}, {row.restored_e_minus:.4f})"
        if row.alpha11 is not None:
            note += f"alpha11 {row.alpha11:.4f} vs {row.printed_alpha11}"
        print(
            f"{row.omega_alpha:6.3f} {row.alpha:5.2f} {row.e_plus:9.5f} {row.e_minus:9.5f} "
            f"({row.printed_e_plus:8.4f},{row.printed_e_minus:8.4f}) {row.energy_deviation:8.1e}  {note}"
        )

# Every honest row obeys E+ + E- = -2 m omega = -0.02. Three printed rows are
# exactly symmetric instead, which is what the typo flag picks up.
