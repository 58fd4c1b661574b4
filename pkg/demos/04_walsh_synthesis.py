"""Compiling an arbitrary diagonal phase into CNOTs and rotations.

Any real function f on 2^q grid points defines a diagonal unitary
diag(e^{if}). Its Walsh spectrum turns that into parity-chain rotations;
Gray-code ordering keeps the CNOT count at most 2^q. Smooth functions
truncate well; a step function at the origin collapses to a single rotation.
"""

import numpy as np

from diracwalk import (QubitLayout, circuit_unitary, gate_count,
                       synthesize_diagonal, truncation_error, walsh_transform)

q = 6
layout = QubitLayout(dim=1, q=q)
targets = layout.axis_register(1)
x = np.linspace(-1.0, 1.0, 2**q, endpoint=False)

for label, f in [
    ("smooth cosine", 0.5 * np.cos(np.pi * x)),
    ("harmonic well", 0.8 * x**2),
    ("step at origin", np.where(x >= 0.0, 0.7, 0.0)),
]:
    spec = walsh_transform(f)
    circ = synthesize_diagonal(spec, layout, targets)
    counts = gate_count(circ)["by_kind"]
    diag = np.diag(circuit_unitary(circ))[: 2**q]
    err = np.max(np.abs(diag - np.exp(1j * f)))
    print(f"{label:15s} rz={counts.get('rz', 0):3d} "
          f"cnot={counts.get('cnot', 0):3d} exact to {err:.2e}")

print("\ntruncating the cosine spectrum:")
for threshold in (1e-4, 1e-3, 1e-2):
    spec = walsh_transform(0.5 * np.cos(np.pi * x), threshold=threshold)
    report = truncation_error(spec)
    kept = len(spec.kept_masks())
    print(f"  threshold {threshold:.0e}: kept {kept:2d}/{2**q} terms, "
          f"max phase error {report['max_phase_error']:.2e} "
          f"(bound {report['bound']:.2e})")
