"""Trotterized Dirac-term circuits, Suzuki product formulas and resource bounds.

Term-circuit convention: each builder takes a parameter ``t`` and realizes
the *half-step* operator of its term, ``exp(-i (t/2) H_term)``, matching the
factors appearing in the symmetric second-order step.  The step composer
accounts for this when assembling first- and higher-order formulas.

The Hamiltonian splits as
``H1 = c alpha.(-i grad)``, ``H2 = beta m c^2``, ``H3 = -e phi``,
``H4 = c e alpha.A``; all four reduce to the familiar natural-unit forms
at c = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigError, DimensionError, DomainError
from .gatesim import (CNOT, Circuit, H, QubitLayout, Rz, TwoQubitUnitary, X,
                      qft_circuit)
from .lattice import Grid, PhysParams
from .walsh import synthesize_diagonal, walsh_transform

_PAULI = {
    0: np.eye(2, dtype=complex),
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


def alpha_matrix(axis: int, s: int) -> np.ndarray:
    """Dirac alpha^axis in the standard representation (s = 2 or 4)."""
    if s == 2:
        if axis != 1:
            raise DimensionError("1+1D has only axis 1")
        return _PAULI[1].copy()
    return np.kron(_PAULI[1], _PAULI[axis])


def beta_matrix(s: int) -> np.ndarray:
    if s == 2:
        return _PAULI[3].copy()
    return np.kron(_PAULI[3], _PAULI[0])


def pi_matrix(axis: int, s: int) -> np.ndarray:
    """Self-inverse basis change (beta + alpha^axis)/sqrt(2); Hadamard in 1+1D."""
    return (beta_matrix(s) + alpha_matrix(axis, s)) / math.sqrt(2.0)


def _pi_gates(axis: int, layout: QubitLayout) -> list:
    if layout.dim == 1:
        return [H(layout.beta_qubit)]
    hi, lo = layout.aux_register[1], layout.aux_register[0]
    return [TwoQubitUnitary(hi, lo, pi_matrix(axis, 4), name=f"Pi{axis}")]


@dataclass
class DiracTerms:
    """Grid-sampled potentials and the term norms entering the gate bound.

    ``phi_axes``/``a_axes`` hold per-axis samples (length n each, unsigned
    grid-index order) of a separable scalar potential phi(x) = sum_i phi_i(x_i)
    and of the vector potential components A_i(x_i).  A non-separable scalar
    potential may instead be supplied on the full grid via ``phi_full``
    (explicit opt-in, cost 2^(dim q) Walsh coefficients).
    """

    grid: Grid
    phys: PhysParams = dc_field(default_factory=PhysParams)
    phi_axes: tuple | None = None
    a_axes: tuple | None = None
    phi_full: np.ndarray | None = None

    def __post_init__(self):
        d, n = self.grid.dim, self.grid.n
        if self.phi_axes is not None:
            self.phi_axes = tuple(np.asarray(p, dtype=float) for p in self.phi_axes)
            if len(self.phi_axes) != d or any(p.shape != (n,) for p in self.phi_axes):
                raise DimensionError(f"phi_axes must be {d} arrays of length {n}")
        if self.a_axes is not None:
            self.a_axes = tuple(np.asarray(a, dtype=float) for a in self.a_axes)
            if len(self.a_axes) != d or any(a.shape != (n,) for a in self.a_axes):
                raise DimensionError(f"a_axes must be {d} arrays of length {n}")
        if self.phi_full is not None:
            if self.phi_axes is not None:
                raise ConfigError("give phi_axes or phi_full, not both")
            self.phi_full = np.asarray(self.phi_full, dtype=float)
            if self.phi_full.shape != (n,) * d:
                raise DimensionError(f"phi_full must have shape {(n,) * d}")

    @property
    def has_scalar(self) -> bool:
        return self.phi_axes is not None or self.phi_full is not None

    @property
    def has_vector(self) -> bool:
        return self.a_axes is not None

    def phi_extrema(self) -> tuple[float, float]:
        if self.phi_full is not None:
            return float(self.phi_full.min()), float(self.phi_full.max())
        if self.phi_axes is not None:
            # exact for a separable sum over independent coordinates
            return (sum(float(p.min()) for p in self.phi_axes),
                    sum(float(p.max()) for p in self.phi_axes))
        return 0.0, 0.0

    def norms(self) -> dict[str, float]:
        """Spectral norms of H1..H4 on the discrete grid."""
        c, g = self.phys.c, self.grid
        lo, hi = self.phi_extrema()
        a_max = max((float(np.max(np.abs(a))) for a in self.a_axes), default=0.0) \
            if self.a_axes is not None else 0.0
        return {
            "H1": c * g.n * math.pi / g.omega,
            "H2": self.phys.m * c**2,
            "H3": abs(self.phys.e) * max(abs(lo), abs(hi)),
            "H4": abs(self.phys.e) * c * a_max,
        }


def suzuki_weight(k: int) -> float:
    """u_k = 1 / (1 - 4^(1/(2k-1))) of the order-2k recursion."""
    if k < 2:
        raise DomainError("suzuki_weight is defined for k >= 2")
    return 1.0 / (1.0 - 4.0 ** (1.0 / (2 * k - 1)))


@dataclass(frozen=True)
class ProductFormula:
    """Product-formula configuration: order 1, 2, or 2k with k >= 2."""

    order: int
    t: float
    r: int = 1

    def __post_init__(self):
        if self.order != 1 and (self.order < 2 or self.order % 2):
            raise ConfigError(f"order must be 1 or an even integer, got {self.order}")
        if self.r < 1:
            raise ConfigError(f"r must be >= 1, got {self.r}")


def substep_schedule(formula: ProductFormula, terms: DiracTerms) -> list[tuple[str, int, float]]:
    """Exponential sequence of one step as (term, axis, tau) entries.

    ``tau`` is the evolution time of that exponential, exp(-i tau H_term);
    entries are listed in application order.  The order-2 step is the
    gate-wise palindrome of its forward half; multi-axis kinetic and vector
    splitting stays first-order inside each half.
    """
    forward: list[tuple[str, int]] = []
    for axis in range(1, terms.grid.dim + 1):
        forward.append(("kinetic", axis))
    if terms.phys.m != 0.0:
        forward.append(("mass", 0))
    if terms.has_scalar:
        forward.append(("scalar", 0))
    if terms.has_vector:
        for axis in range(1, terms.grid.dim + 1):
            forward.append(("vector", axis))

    def compose(order: int, t: float) -> list[tuple[str, int, float]]:
        if order == 1:
            return [(kind, axis, t) for kind, axis in forward]
        if order == 2:
            half = [(kind, axis, 0.5 * t) for kind, axis in forward]
            return half + half[::-1]
        u = suzuki_weight(order // 2)
        outer = compose(order - 2, u * t)
        middle = compose(order - 2, (1.0 - 4.0 * u) * t)
        return outer + outer + middle + outer + outer

    return compose(formula.order, formula.t)


def kinetic_axis_circuit(
    axis: int,
    t: float,
    grid: Grid,
    layout: QubitLayout,
    phys: PhysParams | None = None,
    qft_cutoff: float | None = None,
) -> Circuit:
    """Circuit for exp(-(t/2) c alpha^axis d_axis) with the spectral derivative.

    Structure: Pi basis change, inverse QFT on the axis register, X on the
    register MSB to center the momentum spectrum, one ZZ rotation per
    register qubit (CNOT-sandwiched Rz, conditioned on the beta qubit) plus
    an aux Rz for the constant ladder offset, then the mirror.
    """
    if not 1 <= axis <= grid.dim:
        raise DimensionError(f"axis {axis} invalid for dim {grid.dim}")
    c = (phys.c if phys is not None else 1.0)
    block = f"kinetic-x{axis}"
    reg = layout.axis_register(axis)
    aux = layout.beta_qubit
    circ = Circuit(layout)
    circ.extend(_pi_gates(axis, layout), block)
    qft = qft_circuit(layout, reg, approx_threshold=qft_cutoff)
    circ.append_circuit(qft.inverse(), relabel=block)
    msb = reg[-1]
    circ.add(X(msb), block)
    # exp(-i (t/2) c k beta) over centered modes; with the MSB flip the mode
    # index is linear in the register bits: k = (2 pi / Omega)(sum_j 2^j b_j - n/2).
    scale = t * c * math.pi / grid.omega
    for j, qubit in enumerate(reg):
        phi = scale * 2.0 ** (j - 1)  # coefficient of Z_aux Z_j
        if phi != 0.0:
            circ.add(CNOT(aux, qubit), block)
            circ.add(Rz(qubit, -2.0 * phi), block)
            circ.add(CNOT(aux, qubit), block)
    offset = scale * 0.5  # coefficient of the lone Z_aux term
    if offset != 0.0:
        circ.add(Rz(aux, -2.0 * offset), block)
    circ.add(X(msb), block)
    circ.append_circuit(qft, relabel=block)
    circ.extend(_pi_gates(axis, layout), block)
    return circ


def mass_coin_circuit(t: float, m: float, layout: QubitLayout,
                      c: float = 1.0) -> Circuit:
    """Single Rz(t m c^2) on the beta qubit, realizing exp(-i (t/2) beta m c^2)."""
    if m < 0:
        raise DomainError(f"mass must be non-negative, got {m}")
    circ = Circuit(layout)
    circ.add(Rz(layout.beta_qubit, t * m * c * c), "coin-mass")
    return circ


def scalar_potential_circuit(
    t: float,
    terms: DiracTerms,
    layout: QubitLayout,
    threshold: float = 0.0,
) -> Circuit:
    """Walsh-synthesized diagonal exp(+i (t/2) e phi) on the position registers."""
    circ = Circuit(layout)
    e = terms.phys.e
    if terms.phi_full is not None:
        samples = terms.phi_full
        if terms.grid.dim == 3:
            samples = samples  # indexed (x1, x2, x3)
            # flat Walsh index must follow the qubit order (axis1 lowest)
            samples = np.transpose(samples, (2, 1, 0)).reshape(-1)
        spec = walsh_transform(0.5 * t * e * np.asarray(samples).reshape(-1),
                               threshold=threshold)
        all_targets = [q for axis in range(1, layout.dim + 1)
                       for q in layout.axis_register(axis)]
        circ.append_circuit(
            synthesize_diagonal(spec, layout, all_targets, block="phase-scalar"))
        return circ
    if terms.phi_axes is None:
        return circ
    for axis in range(1, terms.grid.dim + 1):
        spec = walsh_transform(0.5 * t * e * terms.phi_axes[axis - 1],
                               threshold=threshold)
        circ.append_circuit(
            synthesize_diagonal(spec, layout, layout.axis_register(axis),
                                block="phase-scalar"))
    return circ


def vector_potential_circuit(
    t: float,
    terms: DiracTerms,
    layout: QubitLayout,
    threshold: float = 0.0,
    axes: tuple[int, ...] | None = None,
) -> Circuit:
    """Position-dependent coin exp(-i (t/2) c e alpha.A), axis by axis.

    Each axis factor is a Pi conjugation around a beta-conditioned Walsh
    diagonal (the beta qubit joins every parity chain).
    """
    if terms.a_axes is None:
        return Circuit(layout)
    circ = Circuit(layout)
    e, c = terms.phys.e, terms.phys.c
    for axis in axes or range(1, terms.grid.dim + 1):
        block = f"coin-vector-{axis}"
        spec = walsh_transform(-0.5 * t * e * c * terms.a_axes[axis - 1],
                               threshold=threshold)
        circ.extend(_pi_gates(axis, layout), block)
        circ.append_circuit(
            synthesize_diagonal(spec, layout, layout.axis_register(axis),
                                condition=(layout.beta_qubit, 1), block=block))
        circ.extend(_pi_gates(axis, layout), block)
    return circ


def _term_circuit(kind: str, axis: int, tau: float, terms: DiracTerms,
                  layout: QubitLayout, qft_cutoff: float | None,
                  walsh_threshold: float) -> Circuit:
    # builders use the half-step convention, so pass 2*tau
    t2 = 2.0 * tau
    if kind == "kinetic":
        return kinetic_axis_circuit(axis, t2, terms.grid, layout,
                                    phys=terms.phys, qft_cutoff=qft_cutoff)
    if kind == "mass":
        return mass_coin_circuit(t2, terms.phys.m, layout, c=terms.phys.c)
    if kind == "scalar":
        return scalar_potential_circuit(t2, terms, layout, threshold=walsh_threshold)
    if kind == "vector":
        return vector_potential_circuit(t2, terms, layout,
                                        threshold=walsh_threshold, axes=(axis,))
    raise ConfigError(f"unknown term kind {kind!r}")


def trotter_step_circuit(
    terms: DiracTerms,
    formula: ProductFormula,
    layout: QubitLayout,
    qft_cutoff: float | None = None,
    walsh_threshold: float = 0.0,
) -> Circuit:
    """One product-formula step [U_order(t)] as a gate circuit."""
    circ = Circuit(layout)
    for kind, axis, tau in substep_schedule(formula, terms):
        circ.append_circuit(_term_circuit(kind, axis, tau, terms, layout,
                                          qft_cutoff, walsh_threshold))
    return circ


def evolve(
    field,
    terms: DiracTerms,
    formula: ProductFormula,
    layout: QubitLayout | None = None,
    record=None,
    qft_cutoff: float | None = None,
    walsh_threshold: float = 0.0,
):
    """Apply r product-formula steps to a SpinorField via the gate backend.

    ``record(step, time, field)`` is called after every step (and once at
    step 0) when given; returns (final_field, records).
    """
    from .gatesim import decode, encode, run

    if layout is None:
        layout = QubitLayout.for_grid(terms.grid)
    step = trotter_step_circuit(terms, formula, layout,
                                qft_cutoff=qft_cutoff,
                                walsh_threshold=walsh_threshold)
    state = encode(field, layout)
    records = []
    if record is not None:
        records.append(record(0, 0.0, decode(state, layout, terms.grid)))
    for i in range(1, formula.r + 1):
        run(step, state)
        if record is not None:
            records.append(record(i, i * formula.t,
                                  decode(state, layout, terms.grid)))
    return decode(state, layout, terms.grid), records


def n_exp_bound(k: int, T: float, eps: float, terms: DiracTerms) -> int:
    """Exponential-count bound 14 * 5^{2k} * 7^{1+1/2k} * [T sum||H_i||]^{1+1/2k} / eps^{1/2k}."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    power = 1.0 + 1.0 / (2 * k)
    bracket = T * sum(terms.norms().values())
    value = 14.0 * 5.0 ** (2 * k) * 7.0**power * bracket**power / eps ** (1.0 / (2 * k))
    return math.ceil(value)
