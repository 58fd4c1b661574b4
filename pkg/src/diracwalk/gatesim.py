"""Qubit layout, primitive gates, dense statevector backend, QFT and gate counting.

Bit order: qubit ``j`` carries bit ``j`` of the basis index (little-endian).
Registers occupy contiguous qubit ranges ordered, from least to most
significant, (axis1, axis2, axis3, aux); the aux register's top qubit is the
global most significant bit and carries the beta (large/small block) sign.

Rz convention, fixed repo-wide: ``Rz(theta) = diag(exp(-i theta/2), exp(+i theta/2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigError, DimensionError, ResourceCapError
from .lattice import Grid, SpinorField

DEFAULT_MAX_QUBITS = 27


@dataclass(frozen=True)
class QubitLayout:
    """Assignment of spinor and position registers to qubit ids."""

    dim: int
    q: int
    max_qubits: int = DEFAULT_MAX_QUBITS

    def __post_init__(self):
        if self.dim not in (1, 3):
            raise ConfigError(f"dim must be 1 or 3, got {self.dim}")
        if self.q < 1:
            raise ConfigError(f"q must be >= 1, got {self.q}")
        if self.num_qubits > self.max_qubits:
            mem = 16.0 * 2**self.num_qubits / 2**30
            raise ResourceCapError(
                f"{self.num_qubits} qubits exceeds cap {self.max_qubits} "
                f"(statevector would need {mem:.1f} GiB)"
            )

    @classmethod
    def for_grid(cls, grid: Grid, max_qubits: int = DEFAULT_MAX_QUBITS) -> "QubitLayout":
        return cls(dim=grid.dim, q=grid.q, max_qubits=max_qubits)

    @property
    def aux_qubits(self) -> int:
        return 1 if self.dim == 1 else 2

    @property
    def spinor_components(self) -> int:
        return 2**self.aux_qubits

    @property
    def num_qubits(self) -> int:
        return self.aux_qubits + self.dim * self.q

    def axis_register(self, axis: int) -> list[int]:
        """Qubit ids of a position axis (1-based), LSB first."""
        if not 1 <= axis <= self.dim:
            raise DimensionError(f"axis {axis} invalid for dim {self.dim}")
        lo = (axis - 1) * self.q
        return list(range(lo, lo + self.q))

    @property
    def aux_register(self) -> list[int]:
        lo = self.dim * self.q
        return list(range(lo, lo + self.aux_qubits))

    @property
    def beta_qubit(self) -> int:
        """Aux qubit acted on by beta = sigma^3 (the global MSB)."""
        return self.num_qubits - 1


_KINDS_1Q = frozenset({"x", "h", "rz", "phase"})
_KINDS_2Q = frozenset({"cnot", "cphase", "swap", "u2q"})


@dataclass(frozen=True)
class Gate:
    """One primitive gate: kind, target qubits, optional angle or 4x4 matrix."""

    kind: str
    qubits: tuple[int, ...] = ()
    angle: float = 0.0
    matrix: np.ndarray | None = dc_field(default=None, repr=False)
    name: str = ""

    def __post_init__(self):
        if self.kind in _KINDS_1Q and len(self.qubits) != 1:
            raise ConfigError(f"{self.kind} takes one qubit, got {self.qubits}")
        if self.kind in _KINDS_2Q and len(self.qubits) != 2:
            raise ConfigError(f"{self.kind} takes two qubits, got {self.qubits}")
        if self.kind == "gphase" and self.qubits:
            raise ConfigError("gphase takes no qubits")
        if self.kind not in _KINDS_1Q | _KINDS_2Q | {"gphase"}:
            raise ConfigError(f"unknown gate kind {self.kind!r}")
        if self.kind == "u2q":
            u = np.asarray(self.matrix, dtype=complex)
            if u.shape != (4, 4):
                raise ConfigError("u2q requires a 4x4 matrix")
            if np.max(np.abs(u.conj().T @ u - np.eye(4))) > 1e-14:
                raise ConfigError(f"u2q matrix {self.name or ''} is not unitary")
            object.__setattr__(self, "matrix", u)

    def inverse(self) -> "Gate":
        if self.kind in ("x", "h", "cnot", "swap"):
            return self
        if self.kind in ("rz", "phase", "cphase", "gphase"):
            return Gate(self.kind, self.qubits, -self.angle)
        return Gate("u2q", self.qubits, matrix=self.matrix.conj().T,
                    name=self.name + "+" if self.name else "")


def X(q: int) -> Gate:
    return Gate("x", (q,))


def H(q: int) -> Gate:
    return Gate("h", (q,))


def Rz(q: int, theta: float) -> Gate:
    return Gate("rz", (q,), theta)


def Phase(q: int, theta: float) -> Gate:
    return Gate("phase", (q,), theta)


def CNOT(control: int, target: int) -> Gate:
    return Gate("cnot", (control, target))


def CPhase(a: int, b: int, theta: float) -> Gate:
    return Gate("cphase", (a, b), theta)


def Swap(a: int, b: int) -> Gate:
    return Gate("swap", (a, b))


def TwoQubitUnitary(hi: int, lo: int, matrix: np.ndarray, name: str = "") -> Gate:
    """4x4 unitary on basis |b_hi b_lo>; qubit ``hi`` carries the high bit."""
    return Gate("u2q", (hi, lo), matrix=matrix, name=name)


def GlobalPhase(theta: float) -> Gate:
    return Gate("gphase", angle=theta)


class Circuit:
    """Ordered gate list over a QubitLayout, partitioned into labeled blocks."""

    def __init__(self, layout: QubitLayout):
        self.layout = layout
        self.gates: list[Gate] = []
        self.blocks: list[str] = []  # one label per gate

    def add(self, gate: Gate, block: str = "") -> None:
        for q in gate.qubits:
            if not 0 <= q < self.layout.num_qubits:
                raise ConfigError(f"qubit {q} outside layout of {self.layout.num_qubits}")
        self.gates.append(gate)
        self.blocks.append(block)

    def extend(self, gates, block: str = "") -> None:
        for g in gates:
            self.add(g, block)

    def append_circuit(self, other: "Circuit", relabel: str | None = None) -> None:
        for g, b in zip(other.gates, other.blocks):
            self.add(g, relabel if relabel is not None else b)

    def inverse(self) -> "Circuit":
        inv = Circuit(self.layout)
        for g, b in zip(reversed(self.gates), reversed(self.blocks)):
            inv.add(g.inverse(), b)
        return inv

    def __len__(self) -> int:
        return len(self.gates)


class Statevector:
    """Dense 2^Q amplitude vector with light instrumentation."""

    def __init__(self, num_qubits: int, amps: np.ndarray | None = None):
        self.num_qubits = num_qubits
        if amps is None:
            amps = np.zeros(2**num_qubits, dtype=complex)
            amps[0] = 1.0
        else:
            amps = np.asarray(amps, dtype=complex)
            if amps.shape != (2**num_qubits,):
                raise DimensionError(f"expected {2**num_qubits} amplitudes")
        self.amps = amps
        self.pairs_touched = 0  # amplitude pairs updated by 1-qubit gates

    def copy(self) -> "Statevector":
        sv = Statevector(self.num_qubits, self.amps.copy())
        return sv

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def _view(self) -> np.ndarray:
        return self.amps.reshape((2,) * self.num_qubits)

    def _axis(self, qubit: int) -> int:
        return self.num_qubits - 1 - qubit


def encode(field: SpinorField, layout: QubitLayout) -> Statevector:
    """Map a SpinorField onto the qubit register; exact inverse of decode."""
    if layout.dim != field.grid.dim or layout.q != field.grid.q:
        raise DimensionError("layout does not match the field's grid")
    w = field.grid.spacing ** (field.grid.dim / 2.0)
    amps = field.amplitudes * w
    if field.grid.dim == 3:
        amps = amps.transpose(0, 3, 2, 1)  # flat index = ((a*n + x3)*n + x2)*n + x1
    return Statevector(layout.num_qubits, amps.reshape(-1))


def decode(state: Statevector, layout: QubitLayout, grid: Grid) -> SpinorField:
    if layout.dim != grid.dim or layout.q != grid.q:
        raise DimensionError("layout does not match the grid")
    s = layout.spinor_components
    amps = state.amps.reshape((s,) + (grid.n,) * grid.dim)
    if grid.dim == 3:
        amps = amps.transpose(0, 3, 2, 1)
    w = grid.spacing ** (grid.dim / 2.0)
    return SpinorField(grid, amps / w)


def apply(state: Statevector, gate: Gate) -> Statevector:
    """In-place application of one gate; returns the same Statevector."""
    v = state._view()
    k = gate.kind
    if k == "gphase":
        state.amps *= np.exp(1j * gate.angle)
        return state
    if k in _KINDS_1Q:
        ax = state._axis(gate.qubits[0])
        lo = np.take(v, 0, axis=ax)
        hi = np.take(v, 1, axis=ax)
        if k == "x":
            new0, new1 = hi, lo
        elif k == "h":
            inv = 1.0 / math.sqrt(2.0)
            new0, new1 = inv * (lo + hi), inv * (lo - hi)
        elif k == "rz":
            half = 0.5 * gate.angle
            new0, new1 = np.exp(-1j * half) * lo, np.exp(1j * half) * hi
        else:  # phase
            new0, new1 = lo, np.exp(1j * gate.angle) * hi
        idx0 = [slice(None)] * state.num_qubits
        idx0[ax] = 0
        idx1 = list(idx0)
        idx1[ax] = 1
        v[tuple(idx0)] = new0
        v[tuple(idx1)] = new1
        state.pairs_touched += state.amps.size // 2
        return state
    if k == "u2q":
        hi_q, lo_q = gate.qubits
        ah, al = state._axis(hi_q), state._axis(lo_q)
        moved = np.moveaxis(v, (ah, al), (0, 1))  # view into state.amps
        shape = moved.shape
        mixed = gate.matrix @ moved.reshape(4, -1)
        moved[...] = mixed.reshape(shape)
        return state

    a, b = gate.qubits
    axa, axb = state._axis(a), state._axis(b)

    def sub(bit_a, bit_b):
        idx = [slice(None)] * state.num_qubits
        idx[axa], idx[axb] = bit_a, bit_b
        return tuple(idx)

    if k == "cnot":  # a controls, b target
        i10, i11 = sub(1, 0), sub(1, 1)
        tmp = v[i10].copy()
        v[i10] = v[i11]
        v[i11] = tmp
    elif k == "cphase":
        v[sub(1, 1)] *= np.exp(1j * gate.angle)
    else:  # swap
        i01, i10 = sub(0, 1), sub(1, 0)
        tmp = v[i01].copy()
        v[i01] = v[i10]
        v[i10] = tmp
    return state


def run(circuit: Circuit, state: Statevector) -> Statevector:
    for g in circuit.gates:
        apply(state, g)
    return state


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary of a circuit (small qubit counts only)."""
    n = 2**circuit.layout.num_qubits
    if n > 4096:
        raise ResourceCapError(f"dense unitary of dimension {n} over budget")
    cols = np.eye(n, dtype=complex)
    out = np.empty((n, n), dtype=complex)
    for j in range(n):
        sv = Statevector(circuit.layout.num_qubits, cols[:, j].copy())
        out[:, j] = run(circuit, sv).amps
    return out


def qft_circuit(layout: QubitLayout, register: list[int],
                approx_threshold: float | None = None) -> Circuit:
    """QFT on a little-endian register: |x> -> n^{-1/2} sum_y exp(2 pi i x y / n) |y>.

    Controlled phases with |angle| below ``approx_threshold`` are dropped
    (approximate QFT).
    """
    q = len(register)
    circ = Circuit(layout)
    for i in reversed(range(q)):
        circ.add(H(register[i]), "qft")
        for j in reversed(range(i)):
            theta = math.pi / 2 ** (i - j)
            if approx_threshold is not None and abs(theta) < approx_threshold:
                continue
            circ.add(CPhase(register[j], register[i], theta), "qft")
    for i in range(q // 2):
        circ.add(Swap(register[i], register[q - 1 - i]), "qft")
    return circ


def gate_count(circuit: Circuit) -> dict:
    """Tally gates by kind and block, plus two-qubit count and greedy depth."""
    by_kind: dict[str, int] = {}
    by_block: dict[str, int] = {}
    two_qubit = 0
    level: dict[int, int] = {}
    depth = 0
    for g, b in zip(circuit.gates, circuit.blocks):
        by_kind[g.kind] = by_kind.get(g.kind, 0) + 1
        by_block[b] = by_block.get(b, 0) + 1
        if g.kind in _KINDS_2Q:
            two_qubit += 1
        if g.qubits:
            lvl = 1 + max(level.get(q, 0) for q in g.qubits)
            for q in g.qubits:
                level[q] = lvl
            depth = max(depth, lvl)
    return {
        "total": len(circuit.gates),
        "by_kind": by_kind,
        "by_block": by_block,
        "two_qubit": two_qubit,
        "depth": depth,
    }


def export_text(circuit: Circuit) -> str:
    """One gate per line: kind [angle] qubits, diff-friendly."""
    lines = []
    for g, b in zip(circuit.gates, circuit.blocks):
        parts = [g.kind]
        if g.kind in ("rz", "phase", "cphase", "gphase"):
            parts.append(repr(g.angle))
        parts.extend(str(q) for q in g.qubits)
        if b:
            parts.append(f"# {b}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def export_qasm3(circuit: Circuit) -> str:
    """OpenQASM 3 for the primitive gate subset (no TwoQubitUnitary blocks)."""
    out = ["OPENQASM 3.0;", 'include "stdgates.inc";',
           f"qubit[{circuit.layout.num_qubits}] q;"]
    for g in circuit.gates:
        if g.kind == "x":
            out.append(f"x q[{g.qubits[0]}];")
        elif g.kind == "h":
            out.append(f"h q[{g.qubits[0]}];")
        elif g.kind == "rz":
            out.append(f"rz({g.angle!r}) q[{g.qubits[0]}];")
        elif g.kind == "phase":
            out.append(f"p({g.angle!r}) q[{g.qubits[0]}];")
        elif g.kind == "cnot":
            out.append(f"cx q[{g.qubits[0]}], q[{g.qubits[1]}];")
        elif g.kind == "cphase":
            out.append(f"cp({g.angle!r}) q[{g.qubits[0]}], q[{g.qubits[1]}];")
        elif g.kind == "swap":
            out.append(f"swap q[{g.qubits[0]}], q[{g.qubits[1]}];")
        elif g.kind == "gphase":
            out.append(f"gphase({g.angle!r});")
        else:
            raise ConfigError(
                f"gate kind {g.kind!r} ({g.name or 'unnamed'}) is outside the "
                "OpenQASM primitive subset"
            )
    return "\n".join(out) + "\n"
