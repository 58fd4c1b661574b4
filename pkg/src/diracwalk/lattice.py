"""Periodic position/momentum grids, spinor fields, state preparation and observables.

Conventions used throughout the package:

* The unsigned grid index ``x`` runs over ``[0, n)``; the centered index is
  ``p = x - n/2`` and the physical coordinate is ``r_p = p * omega / n``.
* Momentum modes carry wavenumber ``k_p = 2*pi*p / omega`` for the same
  centered index set ``p in [-n/2, n/2)``.
* Spinor component ``a`` is a little-endian bit pattern whose most
  significant bit selects the large/small (beta = +1/-1) block and whose
  least significant bit selects spin.  In 1+1D the spinor has two
  components and ``a`` is the beta bit itself.
* Fields are normalized in the discrete L2 sense with cell-volume weight:
  ``sum |psi|^2 * spacing**dim == 1``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateModeError, DimensionError, DomainError, ConfigError

SPEED_OF_LIGHT_AU = 137.035999


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid with n = 2^q points per axis."""

    dim: int
    n: int
    omega: float
    n_star: float = 0.5

    def __post_init__(self):
        if self.dim not in (1, 3):
            raise ConfigError(f"dim must be 1 or 3, got {self.dim}")
        if self.n < 2 or self.n & (self.n - 1):
            raise ConfigError(f"n must be a power of two >= 2, got {self.n}")
        if self.omega <= 0:
            raise ConfigError(f"omega must be positive, got {self.omega}")

    @property
    def q(self) -> int:
        """Qubits per axis register."""
        return self.n.bit_length() - 1

    @property
    def spacing(self) -> float:
        return self.omega / self.n

    def centered_indices(self) -> np.ndarray:
        """Centered integer indices p = x - n/2 in unsigned-index order."""
        return np.arange(self.n) - self.n // 2

    def positions(self) -> np.ndarray:
        """Physical coordinates of all grid points, in unsigned-index order."""
        return self.centered_indices() * self.spacing

    def wavenumbers(self) -> np.ndarray:
        """Wavenumbers in numpy FFT frequency order (index f -> k)."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=1.0 / self.n) / self.omega


def position_grid(grid: Grid, p: int) -> float:
    """Coordinate r_p = p * omega / n of the centered index p."""
    if not -grid.n // 2 <= p < grid.n // 2:
        raise DomainError(f"p={p} outside [-n/2, n/2) for n={grid.n}")
    return p * grid.omega / grid.n


def momentum_grid(grid: Grid, p: int) -> float:
    """Wavenumber k_p = 2*pi*p / omega of the centered index p."""
    if not -grid.n // 2 <= p < grid.n // 2:
        raise DomainError(f"p={p} outside [-n/2, n/2) for n={grid.n}")
    return 2.0 * np.pi * p / grid.omega


def cfl_timestep(grid: Grid) -> float:
    """CFL step t = n_star * omega / n; n_star must be a positive half-integer."""
    doubled = 2.0 * grid.n_star
    if doubled <= 0 or abs(doubled - round(doubled)) > 1e-12:
        raise ConfigError(f"n_star must be a positive half-integer, got {grid.n_star}")
    return grid.n_star * grid.omega / grid.n


@dataclass(frozen=True)
class PhysParams:
    """Physical constants of a run."""

    m: float = 0.0
    e: float = 1.0
    c: float = 1.0
    unit_system: str = "natural"

    def __post_init__(self):
        if self.m < 0:
            raise ConfigError(f"mass must be non-negative, got {self.m}")
        if self.c <= 0:
            raise ConfigError(f"c must be positive, got {self.c}")
        if self.unit_system not in ("natural", "atomic"):
            raise ConfigError(f"unknown unit system {self.unit_system!r}")

    @classmethod
    def atomic(cls, m: float = 1.0, e: float = 1.0) -> "PhysParams":
        return cls(m=m, e=e, c=SPEED_OF_LIGHT_AU, unit_system="atomic")


@dataclass
class SpinorField:
    """Complex amplitudes over (spinor component, position grid).

    ``amplitudes`` has shape ``(s,) + (n,)*dim`` with spatial axes ordered
    (axis1, axis2, axis3) and indexed by the unsigned grid index.
    """

    grid: Grid
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = 2 if self.grid.dim == 1 else 4
        expected = (s,) + (self.grid.n,) * self.grid.dim
        if self.amplitudes.shape != expected:
            raise DimensionError(
                f"amplitudes shape {self.amplitudes.shape} != expected {expected}"
            )
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=complex)

    @property
    def s(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        w = self.grid.spacing ** self.grid.dim
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2) * w))

    def normalized(self) -> "SpinorField":
        nrm = self.norm()
        if nrm == 0.0:
            raise DomainError("cannot normalize the zero field")
        return SpinorField(self.grid, self.amplitudes / nrm)

    def density(self) -> np.ndarray:
        """Probability mass per cell (sums to 1 for a normalized field)."""
        w = self.grid.spacing ** self.grid.dim
        return np.sum(np.abs(self.amplitudes) ** 2, axis=0) * w

    def copy(self) -> "SpinorField":
        return SpinorField(self.grid, self.amplitudes.copy())


def gaussian_spinor_packet(grid: Grid, p0, sigma: float, spinor_weights=None) -> SpinorField:
    """Gaussian wave packet exp(i p0.r) exp(-|r|^2 / 4 sigma^2) with fixed spinor.

    ``p0`` is a scalar in 1D or a length-3 sequence in 3D.  The spinor weight
    vector is normalized internally; default is (1, -1)/sqrt(2) in 1D and
    (1, -1, 0, 0)/sqrt(2) in 3D.
    """
    if sigma <= 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    if sigma < 2.0 * grid.spacing:
        warnings.warn(
            f"sigma={sigma} is under-resolved on spacing {grid.spacing}",
            RuntimeWarning,
            stacklevel=2,
        )
    s = 2 if grid.dim == 1 else 4
    if spinor_weights is None:
        spinor_weights = [1.0, -1.0] + [0.0] * (s - 2)
    w = np.asarray(spinor_weights, dtype=complex)
    if w.shape != (s,):
        raise DimensionError(f"spinor_weights must have length {s}")
    w = w / np.linalg.norm(w)

    r = grid.positions()
    if grid.dim == 1:
        envelope = np.exp(1j * float(p0) * r - r**2 / (4.0 * sigma**2))
    else:
        p0 = np.broadcast_to(np.asarray(p0, dtype=float).ravel(), (3,)) \
            if np.ndim(p0) else np.array([float(p0), 0.0, 0.0])
        x, y, z = np.meshgrid(r, r, r, indexing="ij")
        phase = p0[0] * x + p0[1] * y + p0[2] * z
        envelope = np.exp(1j * phase - (x**2 + y**2 + z**2) / (4.0 * sigma**2))
    amps = w.reshape((s,) + (1,) * grid.dim) * envelope[None, ...]
    return SpinorField(grid, amps).normalized()


# 1+1D Dirac matrices used by the momentum-space projector.
_SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]])
_SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]])


def positive_energy_packet(
    grid: Grid, p0: float, z0: float, dz: float, phys: PhysParams
) -> SpinorField:
    """Pure particle-branch Gaussian packet, built mode-by-mode in momentum space.

    For each grid wavenumber k the positive-energy projector
    P+ = (I + (c*alpha^1*k + beta*m*c^2)/E) / 2 is applied to a reference
    spinor, weighted by exp(-(k-p0)^2 dz^2) and a phase centering the packet
    at z0, then transformed back to the position grid.
    """
    if grid.dim != 1:
        raise DimensionError("positive_energy_packet is defined for 1D grids")
    if dz <= 0:
        raise DomainError(f"dz must be positive, got {dz}")
    if phys.m == 0.0 and p0 == 0.0:
        raise DegenerateModeError("projector undefined for m=0 with p0=0")

    k = grid.wavenumbers()  # FFT frequency order
    energy = np.sqrt(phys.c**2 * k**2 + phys.m**2 * phys.c**4)
    # For m=0 the k=0 mode is degenerate; resolve by the incidence direction.
    direction = np.where(energy > 0.0, 1.0, 0.0)
    safe_e = np.where(energy > 0.0, energy, 1.0)
    hk = (phys.c * k[:, None, None] * _SIGMA1 + phys.m * phys.c**2 * _SIGMA3) / \
        safe_e[:, None, None]
    hk = np.where(
        direction[:, None, None] > 0.0,
        hk,
        np.sign(p0) * _SIGMA1[None, :, :],
    )
    proj = 0.5 * (np.eye(2)[None, :, :] + hk)

    weight = np.exp(-((k - p0) ** 2) * dz**2) * np.exp(-1j * k * z0)
    spec = proj[:, :, 0] * weight[:, None]  # reference spinor (1, 0)

    # ifft supplies exp(+2*pi*i f x / n); the extra (-1)^f converts the
    # frequency index to the centered position convention r = (x - n/2) h.
    f = np.fft.fftfreq(grid.n, d=1.0 / grid.n).astype(int)
    spec = spec * np.where(f % 2 == 0, 1.0, -1.0)[:, None]
    amps = np.fft.ifft(spec, axis=0).T
    return SpinorField(grid, amps).normalized()


def positive_branch_overlap(field: SpinorField, phys: PhysParams) -> float:
    """Probability weight of the negative-energy branch (0 for a pure packet)."""
    if field.grid.dim != 1:
        raise DimensionError("branch decomposition implemented for 1D fields")
    k = field.grid.wavenumbers()
    spec = np.fft.fft(field.amplitudes, axis=1)
    energy = np.sqrt(phys.c**2 * k**2 + phys.m**2 * phys.c**4)
    safe_e = np.where(energy > 0.0, energy, 1.0)
    hk = (phys.c * k[None, None, :] * _SIGMA1[:, :, None]
          + phys.m * phys.c**2 * _SIGMA3[:, :, None]) / safe_e[None, None, :]
    minus = 0.5 * (np.eye(2)[:, :, None] - hk)
    neg = np.einsum("abk,bk->ak", minus, spec)
    total = np.sum(np.abs(spec) ** 2)
    return float(np.sum(np.abs(neg) ** 2) / total)


def position_expectation(field: SpinorField, axis: int = 1) -> float:
    """Expectation of the coordinate along the given axis (1-based)."""
    if not 1 <= axis <= field.grid.dim:
        raise DimensionError(f"axis {axis} invalid for dim {field.grid.dim}")
    rho = field.density()
    other = tuple(i for i in range(field.grid.dim) if i != axis - 1)
    marginal = rho.sum(axis=other) if other else rho
    return float(np.dot(field.grid.positions(), marginal))


def transmission_probability(field: SpinorField, barrier_position: float = 0.0) -> float:
    """Probability mass strictly beyond the barrier coordinate (1D)."""
    if field.grid.dim != 1:
        raise DimensionError("transmission_probability is defined for 1D fields")
    rho = field.density()
    return float(rho[field.grid.positions() > barrier_position].sum())


_PLANES = {"xy": 2, "yz": 0, "xz": 1}


def density_projection(field: SpinorField, plane: str) -> np.ndarray:
    """Marginal probability density on a coordinate plane of a 3D field."""
    if field.grid.dim != 3:
        raise DimensionError("density_projection requires a 3D field")
    if plane not in _PLANES:
        raise DomainError(f"plane must be one of {sorted(_PLANES)}, got {plane!r}")
    return field.density().sum(axis=_PLANES[plane])


def save_snapshot(field: SpinorField, path, phys: PhysParams | None = None) -> None:
    """Write a SpinorField dump: header lines then one (a, index, re, im) row per amplitude.

    Layout (stable): lines starting with '#' carry key=value header entries
    (dim, n, omega, s, unit_system); data rows are whitespace-separated with
    the flat position index in C order over (axis1[, axis2, axis3]).
    """
    unit = phys.unit_system if phys is not None else "natural"
    g = field.grid
    flat = field.amplitudes.reshape(field.s, -1)
    with open(path, "w") as fh:
        fh.write(f"# dim={g.dim} n={g.n} omega={g.omega!r} s={field.s} unit_system={unit}\n")
        for a in range(field.s):
            for idx in range(flat.shape[1]):
                z = flat[a, idx]
                fh.write(f"{a} {idx} {float(z.real)!r} {float(z.imag)!r}\n")


def load_snapshot(path) -> SpinorField:
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("#"):
            raise ConfigError("snapshot missing header line")
        meta = dict(tok.split("=") for tok in header[1:].split())
        dim, n, s = int(meta["dim"]), int(meta["n"]), int(meta["s"])
        grid = Grid(dim=dim, n=n, omega=float(meta["omega"]))
        flat = np.zeros((s, n**dim), dtype=complex)
        for line in fh:
            a, idx, re, im = line.split()
            flat[int(a), int(idx)] = float(re) + 1j * float(im)
    return SpinorField(grid, flat.reshape((s,) + (n,) * dim))
