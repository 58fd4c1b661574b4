"""Independent classical references for validating the circuit evolution.

Two routes: dense Hamiltonian exponentiation (exact on the discrete grid)
and an FFT split-step stepper that mirrors the circuit's exponential
schedule term for term.  Both use the same spectral (periodic-cycle)
derivative as the circuit, so any circuit/oracle disagreement isolates a
circuit bug rather than a discretization difference.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, InsufficientDataError, ResourceCapError
from .evolution import (DiracTerms, ProductFormula, alpha_matrix, beta_matrix,
                        substep_schedule)
from .lattice import SpinorField

DENSE_BUDGET = 4096


def _spatial_axis(field: SpinorField, axis: int) -> int:
    return axis  # amplitudes axes are (spinor, axis1[, axis2, axis3])


def dense_hamiltonian(terms: DiracTerms) -> np.ndarray:
    """Dense Dirac Hamiltonian on the periodic grid, basis index (a, x3, x2, x1)...

    The flat basis index matches the statevector convention:
    b = ((a*n + x3)*n + x2)*n + x1 in 3D, b = a*n + x1 in 1D.
    """
    g = terms.grid
    s = 2 if g.dim == 1 else 4
    size = s * g.n**g.dim
    if size > DENSE_BUDGET:
        raise ResourceCapError(f"dense Hamiltonian of size {size} over budget {DENSE_BUDGET}")
    c, m, e = terms.phys.c, terms.phys.m, terms.phys.e
    n = g.n
    x = np.arange(n)
    fmat = np.exp(-2j * np.pi * np.outer(x, x) / n)  # np.fft.fft matrix
    k = g.wavenumbers()
    pmat = np.linalg.inv(fmat) @ np.diag(k) @ fmat  # Hermitian momentum operator

    def space_op(axis: int, mat1d: np.ndarray) -> np.ndarray:
        """Lift a one-axis operator to the position factor (x3 x2 x1 index order)."""
        ops = [np.eye(n, dtype=complex)] * g.dim
        ops[g.dim - axis] = mat1d  # axis1 is the fastest index
        out = ops[0]
        for op in ops[1:]:
            out = np.kron(out, op)
        return out

    h = np.zeros((size, size), dtype=complex)
    for axis in range(1, g.dim + 1):
        h += c * np.kron(alpha_matrix(axis, s), space_op(axis, pmat))
    if m != 0.0:
        h += m * c**2 * np.kron(beta_matrix(s), np.eye(n**g.dim, dtype=complex))
    if terms.has_scalar:
        if terms.phi_full is not None:
            phi = terms.phi_full
            flat = np.transpose(phi, (2, 1, 0)).reshape(-1) if g.dim == 3 \
                else np.asarray(phi).reshape(-1)
            h += -e * np.kron(np.eye(s), np.diag(flat.astype(complex)))
        else:
            for axis in range(1, g.dim + 1):
                diag = np.diag(terms.phi_axes[axis - 1].astype(complex))
                h += -e * np.kron(np.eye(s), space_op(axis, diag))
    if terms.has_vector:
        for axis in range(1, g.dim + 1):
            diag = np.diag(terms.a_axes[axis - 1].astype(complex))
            h += c * e * np.kron(alpha_matrix(axis, s), space_op(axis, diag))
    return h


def _flat(field: SpinorField) -> np.ndarray:
    amps = field.amplitudes
    if field.grid.dim == 3:
        amps = amps.transpose(0, 3, 2, 1)
    return amps.reshape(-1)


def _unflat(vec: np.ndarray, field: SpinorField) -> SpinorField:
    g = field.grid
    s = field.s
    amps = vec.reshape((s,) + (g.n,) * g.dim)
    if g.dim == 3:
        amps = amps.transpose(0, 3, 2, 1)
    return SpinorField(g, amps)


def exact_evolve(field: SpinorField, terms: DiracTerms, T: float) -> SpinorField:
    """psi(T) = V exp(-i Lambda T) V^dagger psi(0) via dense eigendecomposition."""
    h = dense_hamiltonian(terms)
    evals, vecs = np.linalg.eigh(h)
    vec = _flat(field)
    out = vecs @ (np.exp(-1j * evals * T) * (vecs.conj().T @ vec))
    return _unflat(out, field)


def _apply_kinetic(amps: np.ndarray, axis: int, tau: float, terms: DiracTerms) -> np.ndarray:
    """exp(-i tau c k alpha^axis) per momentum mode along one axis."""
    g = terms.grid
    s = amps.shape[0]
    al = alpha_matrix(axis, s)
    k = g.wavenumbers()
    ax = _spatial_axis(None, axis)
    spec = np.fft.fft(amps, axis=ax)
    shape = [1] * amps.ndim
    shape[ax] = g.n
    theta = (tau * terms.phys.c * k).reshape(shape)
    mixed = np.einsum("ab,b...->a...", al, spec)
    spec = np.cos(theta) * spec - 1j * np.sin(theta) * mixed
    return np.fft.ifft(spec, axis=ax)


def _scalar_total(terms: DiracTerms) -> np.ndarray:
    g = terms.grid
    if terms.phi_full is not None:
        return terms.phi_full
    total = np.zeros((g.n,) * g.dim)
    for axis in range(1, g.dim + 1):
        shape = [1] * g.dim
        shape[axis - 1] = g.n
        total = total + terms.phi_axes[axis - 1].reshape(shape)
    return total


def _apply_term(amps: np.ndarray, kind: str, axis: int, tau: float,
                terms: DiracTerms) -> np.ndarray:
    g, phys = terms.grid, terms.phys
    s = amps.shape[0]
    if kind == "kinetic":
        return _apply_kinetic(amps, axis, tau, terms)
    if kind == "mass":
        beta_sign = np.where(np.arange(s) < s // 2, 1.0, -1.0)
        phase = np.exp(-1j * tau * phys.m * phys.c**2 * beta_sign)
        return amps * phase.reshape((s,) + (1,) * g.dim)
    if kind == "scalar":
        phase = np.exp(1j * tau * phys.e * _scalar_total(terms))
        return amps * phase[None, ...]
    if kind == "vector":
        al = alpha_matrix(axis, s)
        shape = [1] * (g.dim + 1)
        shape[axis] = g.n
        theta = (tau * phys.e * phys.c * terms.a_axes[axis - 1]).reshape(shape)
        mixed = np.einsum("ab,b...->a...", al, amps)
        return np.cos(theta) * amps - 1j * np.sin(theta) * mixed
    raise DomainError(f"unknown term kind {kind!r}")


def split_step(field: SpinorField, terms: DiracTerms,
               formula: ProductFormula) -> SpinorField:
    """One product-formula step applied with exact per-term exponentials.

    Uses the identical exponential schedule as the circuit step, so the two
    agree up to gate-level rounding (the defining cross-check).
    """
    amps = field.amplitudes.copy()
    for kind, axis, tau in substep_schedule(formula, terms):
        amps = _apply_term(amps, kind, axis, tau, terms)
    return SpinorField(field.grid, amps)


def split_evolve(field: SpinorField, terms: DiracTerms, formula: ProductFormula,
                 record=None):
    """Apply r split steps, mirroring evolution.evolve's recording interface."""
    records = []
    if record is not None:
        records.append(record(0, 0.0, field))
    out = field
    for i in range(1, formula.r + 1):
        out = split_step(out, terms, formula)
        if record is not None:
            records.append(record(i, i * formula.t, out))
    return out, records


def zitterbewegung_frequency(times: np.ndarray, x_expect: np.ndarray) -> dict:
    """Dominant angular frequency of the detrended <x>(t) trace.

    Returns the peak angular frequency and its spectral amplitude relative
    to the detrended signal's RMS; a flat trace reports zero amplitude.
    """
    times = np.asarray(times, dtype=float)
    x = np.asarray(x_expect, dtype=float)
    if times.size < 8:
        raise InsufficientDataError("need at least 8 samples to resolve a period")
    dt = np.diff(times)
    if not np.allclose(dt, dt[0], rtol=1e-9, atol=1e-15):
        raise DomainError("trajectory samples must be uniformly spaced")
    coeffs = np.polyfit(times, x, 1)
    resid = x - np.polyval(coeffs, times)
    spec = np.abs(np.fft.rfft(resid))
    freqs = 2.0 * np.pi * np.fft.rfftfreq(times.size, d=dt[0])
    spec[0] = 0.0
    peak = int(np.argmax(spec))
    rms = float(np.sqrt(np.mean(resid**2)))
    scale = float(np.max(np.abs(x) + 1e-300))
    amplitude = 2.0 * spec[peak] / times.size
    return {
        "omega": float(freqs[peak]),
        "amplitude": float(amplitude),
        "significant": bool(rms > 1e-9 * scale and amplitude > 0.1 * rms),
    }
