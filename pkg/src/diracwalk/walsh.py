"""Walsh-Hadamard analysis of grid functions and Gray-code diagonal synthesis.

A real function f on 2^q grid points expands as
``f(x) = sum_w a_w * (-1)^{popcount(w & x)}``; the diagonal unitary
``diag(exp(i f(x)))`` then factors into commuting exponentials
``exp(i a_w W_w)`` with ``W_w = tensor_{j in w} Z_j``.  Each nonzero term is
realized by folding the parity of the masked qubits onto the lowest set bit
with CNOTs and rotating it with a single ``Rz(-2 a_w)``; iterating masks in
Gray-code order lets consecutive parity chains share CNOTs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DomainError
from .gatesim import CNOT, Circuit, GlobalPhase, QubitLayout, Rz


@dataclass
class WalshSpectrum:
    """Coefficients a_w of a real grid function, with an elision threshold."""

    q: int
    coefficients: np.ndarray = dc_field(repr=False)
    threshold: float = 0.0

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=float)
        if self.coefficients.shape != (2**self.q,):
            raise DomainError(f"expected {2**self.q} coefficients")

    def kept_masks(self) -> np.ndarray:
        """Masks surviving the threshold (exact zeros always drop)."""
        a = self.coefficients
        keep = a != 0.0
        if self.threshold > 0.0:
            keep &= np.abs(a) >= self.threshold
        return np.nonzero(keep)[0]

    def reconstruct(self, masks: np.ndarray | None = None) -> np.ndarray:
        """Evaluate the (possibly truncated) Walsh series on all grid points."""
        if masks is None:
            masks = self.kept_masks()
        x = np.arange(2**self.q)
        out = np.zeros(2**self.q)
        for w in masks:
            signs = 1 - 2 * (_popcount(np.bitwise_and(int(w), x)) & 1)
            out += self.coefficients[w] * signs
        return out


def _popcount(arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr)
    out = np.zeros_like(arr)
    while arr.any():
        out += arr & 1
        arr = arr >> 1
    return out


def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalized in-place fast Walsh-Hadamard transform, O(q 2^q)."""
    a = np.array(values, dtype=float)
    n = a.size
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            lo = a[start:start + h].copy()
            hi = a[start + h:start + 2 * h].copy()
            a[start:start + h] = lo + hi
            a[start + h:start + 2 * h] = lo - hi
        h *= 2
    return a


def walsh_transform(f: np.ndarray, threshold: float = 0.0) -> WalshSpectrum:
    """Spectrum a_w = 2^{-q} sum_x f(x) (-1)^{popcount(w & x)}."""
    f = np.asarray(f, dtype=float)
    n = f.size
    if n < 1 or n & (n - 1):
        raise DomainError(f"length must be a power of two, got {n}")
    q = n.bit_length() - 1
    return WalshSpectrum(q=q, coefficients=fwht(f) / n, threshold=threshold)


def synthesize_diagonal(
    spec: WalshSpectrum,
    layout: QubitLayout,
    targets: list[int],
    condition: tuple[int, int] | None = None,
    block: str = "walsh",
) -> Circuit:
    """Circuit for prod_w exp(i a_w W_w) on the target qubits.

    ``targets[j]`` carries bit j of the grid index.  With
    ``condition=(aux, sign)`` every W_w is tensored with ``sign * Z_aux``
    (the aux qubit joins every parity chain), realizing
    block-diag(e^{i f}, e^{-i f}) on (aux, targets) for sign=+1.
    """
    if len(targets) != spec.q:
        raise DomainError(f"need {spec.q} target qubits, got {len(targets)}")
    circ = Circuit(layout)
    masks = spec.kept_masks()
    if masks.size == 0 and np.any(spec.coefficients != 0.0):
        warnings.warn("threshold drops every Walsh coefficient; empty circuit",
                      RuntimeWarning, stacklevel=2)

    a0 = spec.coefficients[0] if 0 in masks else 0.0
    if a0 != 0.0:
        if condition is not None:
            # w=0 still carries the conditioning Z: an aux rotation, not a phase
            aux_q, sign_q = condition
            circ.add(Rz(aux_q, -2.0 * sign_q * a0), block)
        else:
            circ.add(GlobalPhase(a0), block)
    nonzero = [int(w) for w in masks if w != 0]
    if not nonzero:
        return circ

    # Walk masks grouped by their chain target (lowest set bit), with the
    # control bits in Gray-code order: consecutive full-spectrum chains then
    # differ by a single CNOT, for 2^q - 1 CNOTs in total.
    kept = set(nonzero)
    order = []
    for low in range(spec.q):
        width = spec.q - 1 - low
        for i in range(2**width):
            w = (1 << low) | ((i ^ (i >> 1)) << (low + 1))
            if w in kept:
                order.append(w)

    aux, sign = condition if condition is not None else (None, 1)
    cur_target: int | None = None
    cur_controls: set[int] = set()

    def emit_chain(controls: set[int], target_q: int):
        for c in sorted(controls):
            circ.add(CNOT(c, target_q), block)

    for w in order:
        bits = [j for j in range(spec.q) if (w >> j) & 1]
        target_q = targets[bits[0]]
        controls = {targets[j] for j in bits[1:]}
        if aux is not None:
            controls.add(aux)
        if cur_target != target_q:
            if cur_target is not None:
                emit_chain(cur_controls, cur_target)
            emit_chain(controls, target_q)
        else:
            emit_chain(cur_controls ^ controls, target_q)
        circ.add(Rz(target_q, -2.0 * sign * spec.coefficients[w]), block)
        cur_target, cur_controls = target_q, controls
    if cur_target is not None:
        emit_chain(cur_controls, cur_target)
    return circ


def truncation_error(spec: WalshSpectrum, threshold: float | None = None) -> dict:
    """Error of dropping sub-threshold coefficients.

    Returns the triangle-inequality bound sum_dropped |a_w| and the exact
    max-over-grid phase error obtained by reconstructing the dropped tail.
    """
    thr = spec.threshold if threshold is None else threshold
    trial = WalshSpectrum(spec.q, spec.coefficients, threshold=thr)
    kept = set(int(w) for w in trial.kept_masks())
    dropped = np.array(
        [w for w in range(2**spec.q)
         if w not in kept and spec.coefficients[w] != 0.0],
        dtype=int,
    )
    bound = float(np.sum(np.abs(spec.coefficients[dropped]))) if dropped.size else 0.0
    exact = float(np.max(np.abs(spec.reconstruct(dropped)))) if dropped.size else 0.0
    return {"bound": bound, "max_phase_error": exact, "dropped": int(dropped.size)}
