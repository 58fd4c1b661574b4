"""The Klein paradox: a barrier twice the rest energy transmits MORE.

A positive-energy electron packet (atomic units) hits a step barrier.
A barrier comparable to the packet's kinetic energy reflects it almost
completely — but raising the barrier further *increases* transmission,
because the packet couples to the antiparticle continuum inside the step.
"""

from diracwalk import (DiracTerms, Grid, PhysParams, ProductFormula,
                       positive_energy_packet, split_evolve,
                       transmission_probability)
from diracwalk.experiments import step_potential

grid = Grid(dim=1, n=1024, omega=1.4)
phys = PhysParams.atomic(m=1.0)
mc2 = phys.m * phys.c**2
formula = ProductFormula(order=2, t=6.82e-3 / 512, r=512)
packet = positive_energy_packet(grid, p0=106.4, z0=-0.35, dz=0.03, phys=phys)

print(f"rest energy mc^2 = {mc2:.1f} a.u., barrier unit = Omega*mc^2 = {grid.omega * mc2:.0f} a.u.\n")
for factor in (0.0, 1.0, 2.0, 4.0):
    v0 = factor * grid.omega * mc2
    phi = (step_potential(grid, v0),) if v0 else None
    terms = DiracTerms(grid, phys, phi_axes=phi)
    final, _ = split_evolve(packet, terms, formula)
    tr = transmission_probability(final)
    print(f"V0 = {factor:g} x Omega*mc^2  ->  transmission {tr:.4f}")
