"""Exactly solvable families and the worked transformations built on them."""

from .examples import Example, ExampleResult, run_example
from .families import (
    CoulombParams,
    EigenPair,
    OscillatorParams,
    SpectralFamily,
    coulomb_eigenpair,
    coulomb_potential,
    coulomb_wavefunction,
    oscillator_eigenpair,
    oscillator_potential,
    oscillator_wavefunction,
)

__all__ = [
    "CoulombParams",
    "EigenPair",
    "Example",
    "ExampleResult",
    "OscillatorParams",
    "SpectralFamily",
    "coulomb_eigenpair",
    "coulomb_potential",
    "coulomb_wavefunction",
    "oscillator_eigenpair",
    "oscillator_potential",
    "oscillator_wavefunction",
    "run_example",
]
