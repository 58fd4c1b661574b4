"""Experiment runners: Zitterbewegung (1D/3D), Klein paradox, convergence, gate counts.

Every runner takes a SimConfig, writes CSV/JSON artifacts into the output
directory and returns the summary dictionary.  Outputs are deterministic
for a fixed config; each file embeds the sha256 hash of the resolved
config for provenance.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .evolution import (DiracTerms, ProductFormula, evolve, kinetic_axis_circuit,
                        mass_coin_circuit, n_exp_bound, scalar_potential_circuit)
from .gatesim import QubitLayout, gate_count
from .lattice import (Grid, PhysParams, SpinorField, density_projection,
                      gaussian_spinor_packet, position_expectation,
                      positive_energy_packet, transmission_probability)
from . import oracle

EXPERIMENTS = ("zb1d", "zb3d", "klein", "convergence", "gatecount")


@dataclass
class SimConfig:
    """Resolved configuration of one experiment run."""

    experiment: str = "zb1d"
    dim: int = 1
    n: int = 1024
    omega: float = 1.0
    n_star: float = 0.5
    m: float = 0.0
    masses: tuple = (0.0, 11.0, 22.0, 33.0)
    e: float = 1.0
    c: float = 1.0
    unit_system: str = "natural"
    order: int = 2
    r: int = 100
    T: float = 0.05
    potential: str = "none"  # none | step
    v0: float = 0.0
    v0_factors: tuple = (0.0, 1.0, 2.0, 4.0)
    barrier_z: float = 0.0
    p0: float = 0.25
    sigma: float = 0.05
    z0: float = 0.0
    dz: float = 0.03
    seed: int = 7
    max_qubits: int = 27
    out_dir: str = "runs/out"

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")

    @classmethod
    def defaults_for(cls, experiment: str) -> "SimConfig":
        presets = {
            "zb1d": dict(experiment="zb1d", dim=1, n=1024, omega=1.0,
                         T=0.05, r=100, p0=0.25, sigma=0.05),
            "zb3d": dict(experiment="zb3d", dim=3, n=32, omega=30.0, m=1.0,
                         T=1.0, r=64, p0=0.0, sigma=4.0),
            "klein": dict(experiment="klein", dim=1, n=1024, omega=1.4,
                          m=1.0, c=137.035999, unit_system="atomic",
                          T=6.82e-3, r=512, potential="step",
                          p0=106.4, dz=0.03, z0=-0.35),
            "convergence": dict(experiment="convergence", dim=1, n=64,
                                omega=2.0, m=1.0, T=0.5, potential="step",
                                v0=3.0),
            "gatecount": dict(experiment="gatecount", dim=1, n=1024, omega=1.4),
        }
        if experiment not in presets:
            raise ConfigError(f"unknown experiment {experiment!r}")
        return cls(**presets[experiment])

    @classmethod
    def from_dict(cls, data: dict) -> "SimConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        base = cls.defaults_for(data.get("experiment", "zb1d"))
        merged = dataclasses.asdict(base)
        merged.update(data)
        for key in ("masses", "v0_factors"):
            merged[key] = tuple(merged[key])
        return cls(**merged)

    def resolved(self) -> dict:
        out = dataclasses.asdict(self)
        out["masses"] = list(out["masses"])
        out["v0_factors"] = list(out["v0_factors"])
        return out

    def config_hash(self) -> str:
        payload = self.resolved()
        payload.pop("out_dir")  # output location does not affect results
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def grid(self) -> Grid:
        return Grid(dim=self.dim, n=self.n, omega=self.omega, n_star=self.n_star)

    def phys(self, m: float | None = None) -> PhysParams:
        return PhysParams(m=self.m if m is None else m, e=self.e, c=self.c,
                          unit_system=self.unit_system)


def _write_csv(path: str, header: list[str], rows, config_hash: str) -> None:
    with open(path, "w") as fh:
        fh.write(f"# config_sha256: {config_hash}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(
                repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)
                for v in row) + "\n")


def _write_summary(cfg: SimConfig, summary: dict) -> dict:
    os.makedirs(cfg.out_dir, exist_ok=True)
    summary = {"config_sha256": cfg.config_hash(), **summary}
    with open(os.path.join(cfg.out_dir, "resolved_config.json"), "w") as fh:
        json.dump({"config_sha256": cfg.config_hash(), **cfg.resolved()}, fh, indent=2)
    with open(os.path.join(cfg.out_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2)
    return summary


def _sign_changes(values: np.ndarray) -> int:
    signs = np.sign(values[values != 0.0])
    return int(np.sum(np.diff(signs) != 0))


def detrended_sign_changes(times: np.ndarray, xs: np.ndarray) -> int:
    """Zero crossings of <x>(t) after removing the best-fit linear drift."""
    resid = xs - np.polyval(np.polyfit(times, xs, 1), times)
    return _sign_changes(resid)


def step_potential(grid: Grid, v0: float, z0: float = 0.0) -> np.ndarray:
    """Potential energy V(z) = v0 for z >= z0; returned as phi = -V (e=+1)."""
    return np.where(grid.positions() >= z0, -v0, 0.0)


def run_zb1d(cfg: SimConfig, include_exact: bool = True) -> dict:
    """1D Zitterbewegung mass sweep: circuit, split-step and exact <x>(t) traces."""
    grid = cfg.grid()
    chash = cfg.config_hash()
    layout = QubitLayout.for_grid(grid, max_qubits=cfg.max_qubits)
    os.makedirs(cfg.out_dir, exist_ok=True)
    per_mass = {}
    for m in cfg.masses:
        phys = cfg.phys(m=m)
        terms = DiracTerms(grid, phys)
        formula = ProductFormula(cfg.order, cfg.T / cfg.r, cfg.r)
        packet = gaussian_spinor_packet(grid, cfg.p0, cfg.sigma)

        def rec(step, t, fld):
            return (step, t, fld.norm(), position_expectation(fld))

        _, crec = evolve(packet, terms, formula, layout=layout, record=rec)
        _, orec = oracle.split_evolve(packet, terms, formula, record=rec)
        times = np.array([row[1] for row in crec])
        xs_c = np.array([row[3] for row in crec])
        xs_o = np.array([row[3] for row in orec])
        xs_e = None
        if include_exact:
            h = oracle.dense_hamiltonian(terms)
            evals, vecs = np.linalg.eigh(h)
            v0 = vecs.conj().T @ oracle._flat(packet)
            xs_e = []
            for t in times:
                fld = oracle._unflat(vecs @ (np.exp(-1j * evals * t) * v0), packet)
                xs_e.append(position_expectation(fld))
            xs_e = np.array(xs_e)

        rows = []
        for i in range(times.size):
            row = [crec[i][0], times[i], crec[i][2], xs_c[i], xs_o[i]]
            if xs_e is not None:
                row.append(xs_e[i])
            rows.append(row)
        header = ["step", "time", "norm", "x_circuit", "x_split"] + \
            (["x_exact"] if xs_e is not None else [])
        tag = f"{m:g}"
        _write_csv(os.path.join(cfg.out_dir, f"zb1d_m{tag}.csv"), header, rows, chash)
        per_mass[tag] = {
            "final_x_circuit": float(xs_c[-1]),
            "final_x_exact": float(xs_e[-1]) if xs_e is not None else None,
            "max_dx_circuit_vs_split": float(np.max(np.abs(xs_c - xs_o))),
            "increment_sign_changes": _sign_changes(np.diff(xs_c)),
            "detrended_sign_changes": detrended_sign_changes(times, xs_c),
        }

    # long-run exact trace for the heaviest mass (figure inset + beat check)
    longrun = None
    if max(cfg.masses) > 0.0:
        study = zb_frequency_study(m=max(cfg.masses), c=cfg.c)
        rows = list(zip(study["times"], study["x"]))
        _write_csv(os.path.join(cfg.out_dir, "zb1d_longrun.csv"),
                   ["time", "x"], rows, chash)
        longrun = {"mass": max(cfg.masses), "omega_peak": study["omega"],
                   "expected_omega": study["expected_omega"],
                   "significant": study["significant"]}
    return _write_summary(cfg, {"experiment": "zb1d", "per_mass": per_mass,
                                "longrun": longrun})


def zb_frequency_study(m: float = 33.0, c: float = 1.0, n: int = 128,
                       omega: float = 1.0, T: float = 1.0, samples: int = 401,
                       p0: float = 0.25, sigma: float = 0.05) -> dict:
    """Long exact-oracle <x>(t) trace and its dominant trembling frequency.

    The discrete two-branch spectrum beats at 2 m c^2 for a narrow packet;
    this is a property of the model, reported for cross-checking.
    """
    grid = Grid(dim=1, n=n, omega=omega)
    terms = DiracTerms(grid, PhysParams(m=m, c=c))
    packet = gaussian_spinor_packet(grid, p0, sigma)
    h = oracle.dense_hamiltonian(terms)
    evals, vecs = np.linalg.eigh(h)
    v0 = vecs.conj().T @ oracle._flat(packet)
    times = np.linspace(0.0, T, samples)
    xs = np.array([
        position_expectation(oracle._unflat(vecs @ (np.exp(-1j * evals * t) * v0), packet))
        for t in times
    ])
    est = oracle.zitterbewegung_frequency(times, xs)
    est["expected_omega"] = 2.0 * m * c**2
    est["times"] = times.tolist()
    est["x"] = xs.tolist()
    return est


def run_zb3d(cfg: SimConfig, check_n: int = 8, check_r: int = 256) -> dict:
    """3D Zitterbewegung: density projections plus a small-grid exact check."""
    grid = cfg.grid()
    chash = cfg.config_hash()
    os.makedirs(cfg.out_dir, exist_ok=True)
    phys = cfg.phys()
    terms = DiracTerms(grid, phys)
    formula = ProductFormula(cfg.order, cfg.T / cfg.r, cfg.r)
    packet = gaussian_spinor_packet(grid, cfg.p0, cfg.sigma)
    layout = QubitLayout.for_grid(grid, max_qubits=cfg.max_qubits)

    projections = {}
    for plane in ("xy", "yz"):
        projections[(plane, "t0")] = density_projection(packet, plane)
    final, _ = evolve(packet, terms, formula, layout=layout)
    for plane in ("xy", "yz"):
        projections[(plane, "tT")] = density_projection(final, plane)
    for (plane, when), proj in projections.items():
        rows = [[i] + [float(v) for v in proj[i]] for i in range(proj.shape[0])]
        header = ["row"] + [f"c{j}" for j in range(proj.shape[1])]
        _write_csv(os.path.join(cfg.out_dir, f"zb3d_{plane}_{when}.csv"),
                   header, rows, chash)

    def proj_variance(proj: np.ndarray) -> float:
        idx = np.arange(proj.shape[0], dtype=float)
        var = 0.0
        for axis in (0, 1):
            marg = proj.sum(axis=1 - axis)
            mean = float(np.dot(idx, marg))
            var += float(np.dot((idx - mean) ** 2, marg))
        return var

    variances = {f"{plane}_{when}": proj_variance(p)
                 for (plane, when), p in projections.items()}

    # small-grid circuit-vs-exact agreement (dense oracle budget)
    small = Grid(dim=3, n=check_n, omega=cfg.omega)
    sterms = DiracTerms(small, phys)
    sformula = ProductFormula(2, cfg.T / check_r, check_r)
    spacket = gaussian_spinor_packet(small, cfg.p0,
                                    max(cfg.sigma, 2 * small.spacing))
    sfinal, _ = evolve(spacket, sterms, sformula)
    sexact = oracle.exact_evolve(spacket, sterms, cfg.T)
    w = small.spacing**3
    fidelity = abs(np.vdot(sexact.amplitudes, sfinal.amplitudes) * w) ** 2
    agreement = {
        "n_per_axis": check_n,
        "r": check_r,
        "fidelity": float(fidelity),
        "max_amp_diff": float(np.max(np.abs(sfinal.amplitudes - sexact.amplitudes)) *
                              math.sqrt(w)),
    }
    with open(os.path.join(cfg.out_dir, "zb3d_agreement.json"), "w") as fh:
        json.dump({"config_sha256": chash, **agreement}, fh, indent=2)
    return _write_summary(cfg, {"experiment": "zb3d", "variances": variances,
                                "agreement": agreement})


def run_klein(cfg: SimConfig, density_steps: tuple = (0, 128, 256, 384, 512)) -> dict:
    """Klein step-potential sweep over V0 = factor * Omega * m * c^2."""
    grid = cfg.grid()
    chash = cfg.config_hash()
    layout = QubitLayout.for_grid(grid, max_qubits=cfg.max_qubits)
    os.makedirs(cfg.out_dir, exist_ok=True)
    phys = cfg.phys()
    mc2 = phys.m * phys.c**2
    formula = ProductFormula(cfg.order, cfg.T / cfg.r, cfg.r)
    packet = positive_energy_packet(grid, cfg.p0, cfg.z0, cfg.dz, phys)
    table = []
    for factor in cfg.v0_factors:
        v0 = factor * grid.omega * mc2
        phi = step_potential(grid, v0, cfg.barrier_z) if v0 != 0.0 else None
        terms = DiracTerms(grid, phys, phi_axes=(phi,) if phi is not None else None)
        wanted = {s for s in density_steps if s <= cfg.r}
        densities = {}

        def rec(step, t, fld):
            if step in wanted:
                densities[step] = fld.density()
            return (step, t, fld.norm(), position_expectation(fld),
                    transmission_probability(fld, cfg.barrier_z))

        final, recs = evolve(packet, terms, formula, layout=layout, record=rec)
        tag = f"{factor:g}"
        _write_csv(os.path.join(cfg.out_dir, f"klein_V{tag}_trace.csv"),
                   ["step", "time", "norm", "x", "transmission"], recs, chash)
        zrows = [[float(z)] + [float(densities[s][i]) for s in sorted(densities)]
                 for i, z in enumerate(grid.positions())]
        _write_csv(os.path.join(cfg.out_dir, f"klein_V{tag}_density.csv"),
                   ["z"] + [f"step{s}" for s in sorted(densities)], zrows, chash)
        table.append({"factor": factor, "v0": float(v0),
                      "transmission": float(recs[-1][4])})
    return _write_summary(cfg, {"experiment": "klein", "barrier_z": cfg.barrier_z,
                                "transmissions": table})


def run_convergence(cfg: SimConfig, r_values: tuple = (16, 32, 64, 128, 256),
                    orders: tuple = (1, 2)) -> dict:
    """log-log Trotter error vs step count against the exact dense oracle."""
    grid = cfg.grid()
    chash = cfg.config_hash()
    os.makedirs(cfg.out_dir, exist_ok=True)
    phys = cfg.phys()
    phi = step_potential(grid, cfg.v0, cfg.barrier_z)
    terms = DiracTerms(grid, phys, phi_axes=(phi,))
    rng = np.random.default_rng(cfg.seed)
    shape = (2,) + (grid.n,) * grid.dim
    packet = SpinorField(grid, rng.normal(size=shape) + 1j * rng.normal(size=shape))
    packet = packet.normalized()
    exact = oracle.exact_evolve(packet, terms, cfg.T)
    w = math.sqrt(grid.spacing**grid.dim)
    layout = QubitLayout.for_grid(grid, max_qubits=cfg.max_qubits)

    rows, fits = [], {}
    for order in orders:
        errs = []
        for r in r_values:
            formula = ProductFormula(order, cfg.T / r, r)
            out, _ = evolve(packet, terms, formula, layout=layout)
            err = float(np.linalg.norm((out.amplitudes - exact.amplitudes).ravel()) * w)
            errs.append(err)
            rows.append([order, r, err])
        errs = np.array(errs)
        # fit window: skip pre-asymptotic (saturated) points and the fp floor
        usable = (errs > 1e-12) & (errs < 0.05)
        if usable.sum() < 2:
            usable = errs > 1e-12
        slope = float(np.polyfit(np.log(np.array(r_values)[usable]),
                                 np.log(errs[usable]), 1)[0])
        fits[str(order)] = {"slope": slope, "errors": errs.tolist()}
    _write_csv(os.path.join(cfg.out_dir, "convergence.csv"),
               ["order", "r", "error"], rows, chash)
    return _write_summary(cfg, {"experiment": "convergence",
                                "r_values": list(r_values), "fits": fits})


def run_gatecount(cfg: SimConfig, q_values: tuple = (4, 5, 6, 7, 8, 9, 10, 11, 12),
                  qft_cutoff: float | None = None) -> dict:
    """Per-block gate counts across register sizes, plus the exponential bound."""
    chash = cfg.config_hash()
    os.makedirs(cfg.out_dir, exist_ok=True)
    rows = []
    report = {}
    for q in q_values:
        n = 2**q
        grid = Grid(dim=1, n=n, omega=cfg.omega)
        layout = QubitLayout(dim=1, q=q, max_qubits=max(cfg.max_qubits, q + 1))
        phys = cfg.phys(m=1.0)
        kin = gate_count(kinetic_axis_circuit(1, 0.01, grid, layout, phys=phys,
                                              qft_cutoff=qft_cutoff))
        mass = gate_count(mass_coin_circuit(0.01, 1.0, layout))
        terms = DiracTerms(grid, phys, phi_axes=(step_potential(grid, 1.0),))
        step = gate_count(scalar_potential_circuit(0.01, terms, layout))
        rows.append([q, kin["total"], kin["two_qubit"],
                     mass["by_kind"].get("rz", 0), step["by_kind"].get("rz", 0)])
        report[str(q)] = {"kinetic_total": kin["total"],
                          "kinetic_two_qubit": kin["two_qubit"],
                          "mass_rz": mass["by_kind"].get("rz", 0),
                          "step_potential_rz": step["by_kind"].get("rz", 0)}
    _write_csv(os.path.join(cfg.out_dir, "gatecount.csv"),
               ["q", "kinetic_total", "kinetic_two_qubit", "mass_rz", "step_rz"],
               rows, chash)

    qs = np.array([row[0] for row in rows], dtype=float)
    two_q = np.array([row[2] for row in rows], dtype=float)
    quad_coeff = float(np.max(two_q / qs**2))
    grid = cfg.grid()
    terms = DiracTerms(grid, cfg.phys(m=1.0),
                       phi_axes=(step_potential(grid, grid.omega * cfg.c**2),))
    bound = n_exp_bound(1, cfg.T if cfg.T else 1.0, 1e-3, terms)
    return _write_summary(cfg, {"experiment": "gatecount", "per_q": report,
                                "kinetic_two_qubit_quadratic_coeff": quad_coeff,
                                "n_exp_bound_k1_eps1e-3": bound})


RUNNERS = {
    "zb1d": run_zb1d,
    "zb3d": run_zb3d,
    "klein": run_klein,
    "convergence": run_convergence,
    "gatecount": run_gatecount,
}


def run_experiment(cfg: SimConfig) -> dict:
    return RUNNERS[cfg.experiment](cfg)
