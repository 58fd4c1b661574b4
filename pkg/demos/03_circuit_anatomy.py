"""What one time step of the walk looks like as a quantum circuit.

Builds a single second-order step for a small 1D grid with mass and a step
potential, prints the per-block gate tally, shows that the step potential
costs exactly one rotation, and exports the circuit as OpenQASM 3.
"""

import numpy as np

from diracwalk import (DiracTerms, Grid, PhysParams, ProductFormula,
                       QubitLayout, export_qasm3, gate_count,
                       trotter_step_circuit)

grid = Grid(dim=1, n=64, omega=1.4)
layout = QubitLayout.for_grid(grid)
phi = np.where(grid.positions() >= 0.0, -1.0, 0.0)  # step barrier
terms = DiracTerms(grid, PhysParams(m=1.0), phi_axes=(phi,))
circuit = trotter_step_circuit(terms, ProductFormula(order=2, t=0.01), layout)

counts = gate_count(circuit)
print(f"qubits: {layout.num_qubits} ({grid.q} position + 1 spin)")
print(f"total gates: {counts['total']}, two-qubit: {counts['two_qubit']}, "
      f"depth: {counts['depth']}")
print("\nper block:")
for block, n in sorted(counts["by_block"].items()):
    print(f"  {block:14s} {n:4d}")
print("\nper kind:")
for kind, n in sorted(counts["by_kind"].items()):
    print(f"  {kind:8s} {n:4d}")

qasm = export_qasm3(circuit)
print(f"\nOpenQASM 3 export: {len(qasm.splitlines())} lines; first five:")
print("\n".join(qasm.splitlines()[:5]))
