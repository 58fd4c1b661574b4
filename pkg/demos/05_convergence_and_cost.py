"""Accuracy and cost of the product-formula stepping.

Compares first- and second-order splitting against the exact dense
propagator on a small grid, and evaluates the closed-form bound on the
number of exponentials needed for a target accuracy.
"""

import numpy as np

from diracwalk import (DiracTerms, Grid, PhysParams, ProductFormula, evolve,
                       exact_evolve, gaussian_spinor_packet, n_exp_bound)

grid = Grid(dim=1, n=64, omega=2.0)
phi = np.where(grid.positions() >= 0.0, -3.0, 0.0)
terms = DiracTerms(grid, PhysParams(m=1.0), phi_axes=(phi,))
packet = gaussian_spinor_packet(grid, p0=2.0, sigma=0.1)
T = 0.5
exact = exact_evolve(packet, terms, T)
w = grid.spacing**0.5

print("L2 error vs number of steps:")
print(f"{'r':>6s} {'order 1':>12s} {'order 2':>12s}")
for r in (16, 32, 64, 128):
    errs = []
    for order in (1, 2):
        out, _ = evolve(packet, terms, ProductFormula(order, T / r, r))
        errs.append(np.linalg.norm((out.amplitudes - exact.amplitudes).ravel()) * w)
    print(f"{r:6d} {errs[0]:12.3e} {errs[1]:12.3e}")

print("\nexponential-count bound (order-2k formula, time T=0.5):")
for k in (1, 2):
    for eps in (1e-2, 1e-4):
        print(f"  k={k}, eps={eps:.0e}: N_exp <= {n_exp_bound(k, T, eps, terms):,}")
