"""Unit conventions and physical constants.

All energies in this package are stored as ordinary frequencies E/h in GHz
and all times in ns, so transition energies are directly the transition
frequencies quoted in experiments.  The Schrodinger equation needs angular
frequencies; :func:`angular` is the single place where the 2*pi conversion
happens.  Everything downstream (propagation kernels included) receives
already-converted rad/ns quantities.
"""

import math

import scipy.constants

TWO_PI = 2.0 * math.pi

# CODATA values via scipy.constants
E_CHARGE = scipy.constants.e        # elementary charge, C
PLANCK_H = scipy.constants.h        # Planck constant, J s
HBAR = scipy.constants.hbar         # reduced Planck constant, J s


def angular(frequency_ghz: float) -> float:
    """Convert an ordinary frequency in GHz to an angular frequency in rad/ns.

    With energies as E/h (GHz) and times in ns, the phase accumulated by an
    eigenstate is exp(-i * angular(E) * t).
    """
    return TWO_PI * frequency_ghz


def charging_energy_ghz(capacitance_ff: float) -> float:
    """Charging energy E_C/h in GHz of a capacitance given in fF.

    E_C = e^2 / (2 C).
    """
    if capacitance_ff <= 0.0:
        raise ValueError(f"capacitance must be positive, got {capacitance_ff} fF")
    c_farad = capacitance_ff * 1e-15
    return E_CHARGE**2 / (2.0 * c_farad * PLANCK_H) / 1e9


def inductive_energy_ghz(inductance_nh: float) -> float:
    """Inductive energy E_L/h in GHz of an inductance given in nH.

    E_L = (hbar / 2e)^2 / L.
    """
    if inductance_nh <= 0.0:
        raise ValueError(f"inductance must be positive, got {inductance_nh} nH")
    l_henry = inductance_nh * 1e-9
    return (HBAR / (2.0 * E_CHARGE)) ** 2 / (l_henry * PLANCK_H) / 1e9
