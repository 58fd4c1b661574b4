"""Digital quantum-walk simulation of the time-dependent Dirac equation.

Library layout:

* :mod:`diracwalk.lattice` — grids, spinor fields, packets, observables
* :mod:`diracwalk.gatesim` — gates, statevector backend, QFT, gate counting
* :mod:`diracwalk.walsh` — Walsh spectra and diagonal-unitary synthesis
* :mod:`diracwalk.evolution` — Dirac term circuits and product formulas
* :mod:`diracwalk.oracle` — classical references (dense and split-step)
* :mod:`diracwalk.experiments` — experiment runners writing CSV/JSON
* :mod:`diracwalk.cli` — ``diracwalk`` command-line entry point
"""

from .errors import (ConfigError, DegenerateModeError, DimensionError,
                     DomainError, InsufficientDataError, ResourceCapError)
from .evolution import (DiracTerms, ProductFormula, evolve,
                        kinetic_axis_circuit, mass_coin_circuit, n_exp_bound,
                        scalar_potential_circuit, substep_schedule,
                        trotter_step_circuit, vector_potential_circuit)
from .experiments import SimConfig, run_experiment
from .gatesim import (Circuit, Gate, QubitLayout, Statevector, circuit_unitary,
                      decode, encode, export_qasm3, export_text, gate_count,
                      qft_circuit, run)
from .lattice import (Grid, PhysParams, SpinorField, cfl_timestep,
                      density_projection, gaussian_spinor_packet,
                      load_snapshot, momentum_grid, position_expectation,
                      position_grid, positive_branch_overlap,
                      positive_energy_packet, save_snapshot,
                      transmission_probability)
from .oracle import (dense_hamiltonian, exact_evolve, split_evolve, split_step,
                     zitterbewegung_frequency)
from .walsh import (WalshSpectrum, fwht, synthesize_diagonal,
                    truncation_error, walsh_transform)

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DegenerateModeError", "DimensionError", "DomainError",
    "InsufficientDataError", "ResourceCapError",
    "DiracTerms", "ProductFormula", "evolve", "kinetic_axis_circuit",
    "mass_coin_circuit", "n_exp_bound", "scalar_potential_circuit",
    "substep_schedule", "trotter_step_circuit", "vector_potential_circuit",
    "SimConfig", "run_experiment",
    "Circuit", "Gate", "QubitLayout", "Statevector", "circuit_unitary",
    "decode", "encode", "export_qasm3", "export_text", "gate_count",
    "qft_circuit", "run",
    "Grid", "PhysParams", "SpinorField", "cfl_timestep", "density_projection",
    "gaussian_spinor_packet", "load_snapshot", "momentum_grid",
    "position_expectation", "position_grid", "positive_branch_overlap",
    "positive_energy_packet", "save_snapshot", "transmission_probability",
    "dense_hamiltonian", "exact_evolve", "split_evolve", "split_step",
    "zitterbewegung_frequency",
    "WalshSpectrum", "fwht", "synthesize_diagonal", "truncation_error",
    "walsh_transform",
    "__version__",
]
