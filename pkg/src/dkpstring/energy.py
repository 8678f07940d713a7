"""Energies from the spectral combination kappa^2 = E^2 - k^2 - M^2 + 2 E m omega."""

from __future__ import annotations

import math

from .model import DKPError, EnergyPair, PhysicalParams


def energy_pair(kappa2: float, params: PhysicalParams) -> EnergyPair:
    """Both roots E = -m omega +/- sqrt(m^2 omega^2 + kappa^2 + k^2 + M^2).

    Raises ``COMPLEX_ENERGY`` when the discriminant is negative (no real state).
    """
    shift = params.m * params.omega
    disc = shift * shift + kappa2 + params.k**2 + params.M**2
    if disc < 0:
        raise DKPError("COMPLEX_ENERGY", f"discriminant {disc:g} < 0")
    root = math.sqrt(disc)
    return EnergyPair(e_plus=-shift + root, e_minus=-shift - root, kappa2=kappa2)
