"""A massive Dirac wave packet trembles; a massless one just moves.

Runs the same Gaussian packet through the quantum-walk circuit at several
masses and prints the position trace. The massless packet translates at the
speed of light; with mass, interference between the positive- and
negative-energy branches makes the mean position oscillate (Zitterbewegung).
"""

from diracwalk import (DiracTerms, Grid, PhysParams, ProductFormula, evolve,
                       gaussian_spinor_packet, position_expectation)

grid = Grid(dim=1, n=256, omega=1.0)
formula = ProductFormula(order=2, t=0.05 / 50, r=50)

for mass in (0.0, 33.0):
    terms = DiracTerms(grid, PhysParams(m=mass))
    packet = gaussian_spinor_packet(grid, p0=0.25, sigma=0.05)
    _, records = evolve(
        packet, terms, formula,
        record=lambda i, t, f: (t, position_expectation(f)),
    )
    print(f"m = {mass:g}")
    for t, x in records[::10]:
        bar = "#" * int(3000 * abs(x))
        print(f"  t={t:.3f}  <x>={x:+.5f}  {bar}")
    print()
