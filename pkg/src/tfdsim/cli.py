"""Scenario sweeps, oracle validation, and CSV/JSON emission.

Sweeps walk a uniform time grid and, per point, evaluate the scenario's
squeeze parameter, build the matching covariance family (two-mode squeezed
for the eta = 0 case, a pair of single-mode squeezed states for the
eta != 0 case), and emit the minimum transposed symplectic eigenvalue,
logarithmic negativity, and mutual information.

Configuration is a flat JSON object with the field names below; unknown keys
are rejected.  Output is deterministic: CSV with a ``#``-prefixed header
block recording the full configuration, full-precision ``%.17g`` numbers,
``\\n`` line endings.

Exit codes: 0 success, 1 configuration error, 2 numerical/physicality error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields, asdict

import numpy as np

from . import __version__
from .errors import (ConfigError, DegenerateFactorization, NumericalFailure,
                     TruncationOverflow, UnphysicalCovariance, UnstableRegime)
from .fock import two_mode_space, two_mode_squeezed_vacuum
from .gaussian import (SqueezeSpec, cov_two_mode_squeezed,
                       cov_two_single_mode_squeezed, log_negativity,
                       mutual_information, symplectic_eigs)
from .hartree_fock import (MeanFields, delta_case1, delta_case2, delta1_case2,
                           squeeze_case1, squeeze_case2)
from .lindblad import (ModelParams, fock_log_negativity, make_generator,
                       master_rhs, von_neumann_entropy)
from .su11 import SU11Coeffs, disentangle, rep2x2, rep2x2_product
from . import fock
from . import tfd

CASES = ("eta_zero", "eta_nonzero")
PHI_MODES = ("from_formula", "fixed")
DELTA_MODES = ("constant", "short_time")


@dataclass
class SweepConfig:
    """Flat configuration of one scenario sweep (JSON field names match)."""

    case: str = "eta_zero"
    gamma1: float = 0.1
    w: float = 1.5
    delta0: float = 0.1
    c: float = 1.0
    eta: float = 0.0
    phi_mode: str = "fixed"
    phi_fixed: float = 0.0
    t_max: float = 10.0
    n_steps: int = 101
    delta_mode: str = "constant"
    nbar1: float = 0.0
    nbar2: float = 0.0
    n_max: int = 2
    truncation: int = 25

    def validate(self) -> "SweepConfig":
        if self.case not in CASES:
            raise ConfigError(f"case must be one of {CASES}, got {self.case!r}")
        if self.phi_mode not in PHI_MODES:
            raise ConfigError(f"phi_mode must be one of {PHI_MODES}, got {self.phi_mode!r}")
        if self.delta_mode not in DELTA_MODES:
            raise ConfigError(f"delta_mode must be one of {DELTA_MODES}, got {self.delta_mode!r}")
        if self.t_max <= 0:
            raise ConfigError("t_max must be positive")
        if self.n_steps < 2:
            raise ConfigError("n_steps must be >= 2")
        if self.truncation < 2:
            raise ConfigError("truncation must be >= 2")
        if self.w <= 0:
            raise ConfigError("w must be positive")
        if self.gamma1 < 0:
            raise ConfigError("gamma1 must be non-negative")
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")
        if self.nbar1 < 0 or self.nbar2 < 0:
            raise ConfigError("thermal occupations must be non-negative")
        return self


@dataclass
class SweepRow:
    """One time point of a scenario sweep."""

    t: float
    r_mag: float
    phi: float
    d_minus_tilde: float
    E_N: float
    I_M: float


def load_config(path: str) -> SweepConfig:
    """Read and validate a JSON sweep configuration; unknown keys rejected."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> SweepConfig:
    known = {f.name: f.type for f in fields(SweepConfig)}
    unknown = sorted(set(raw) - set(known))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    cfg = SweepConfig()
    for key, value in raw.items():
        current = getattr(cfg, key)
        if isinstance(current, str):
            if not isinstance(value, str):
                raise ConfigError(f"config key {key!r} must be a string")
        elif isinstance(current, int) and not isinstance(current, bool):
            if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
                raise ConfigError(f"config key {key!r} must be an integer")
            value = int(value)
        else:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"config key {key!r} must be a number")
            value = float(value)
        setattr(cfg, key, value)
    return cfg.validate()


def _delta_at(cfg: SweepConfig, mf: MeanFields, t: float) -> complex:
    if cfg.delta_mode == "constant":
        return complex(cfg.delta0)
    if cfg.case == "eta_zero":
        return delta_case1(t, cfg.gamma1, cfg.w, mf, cfg.nbar1, cfg.nbar2, cfg.n_max)
    return delta_case2(t, cfg.gamma1, cfg.w, mf, cfg.nbar1, cfg.nbar2, cfg.n_max)


def _squeeze_at(cfg: SweepConfig, mf: MeanFields, t: float) -> tuple[float, float]:
    """(r_mag, phi) for one grid point.

    In the eta != 0 case the covariance family assumes equal per-mode
    squeezes, so the mode-a branch is used; at eta = 0 both branches
    coincide exactly.
    """
    delta = _delta_at(cfg, mf, t)
    if cfg.case == "eta_zero":
        r_mag, phi = squeeze_case1(t, cfg.gamma1, cfg.w, delta)
    else:
        r_a, _r_b, phi_a, _phi_b = squeeze_case2(t, cfg.gamma1, cfg.w, delta, cfg.eta)
        r_mag, phi = abs(r_a), phi_a
    if cfg.phi_mode == "fixed":
        phi = cfg.phi_fixed
    return float(r_mag), float(phi)


def run_negativity_sweep(cfg: SweepConfig) -> list[SweepRow]:
    """Evaluate the sweep grid; E_N is the headline column."""
    cfg.validate()
    mf = MeanFields(delta=cfg.delta0, delta1=0.0, c=cfg.c)
    build = cov_two_mode_squeezed if cfg.case == "eta_zero" else cov_two_single_mode_squeezed
    rows = []
    for t in np.linspace(0.0, cfg.t_max, cfg.n_steps):
        r_mag, phi = _squeeze_at(cfg, mf, float(t))
        sigma = build(SqueezeSpec(r_mag, phi))
        _, d_minus = symplectic_eigs(sigma, transposed=True)
        rows.append(SweepRow(t=float(t), r_mag=r_mag, phi=phi,
                             d_minus_tilde=d_minus,
                             E_N=log_negativity(sigma),
                             I_M=mutual_information(sigma)))
    return rows


def run_mutualinfo_sweep(cfg: SweepConfig) -> list[SweepRow]:
    """Same grid and columns as the negativity sweep; I_M is the headline."""
    return run_negativity_sweep(cfg)


def run_delta_evolution(cfg: SweepConfig) -> list[tuple[float, float, float, float, float]]:
    """Tabulate (t, Re Delta, Im Delta, Re Delta1, Im Delta1) on the grid.

    The eta = 0 case has a time-independent Delta1 (emitted as its t = 0
    value); the eta != 0 case uses the short-time Delta1 evaluation.
    Delta1(0) is taken as 0 (the sweep configuration carries no separate
    Delta1 field).
    """
    cfg.validate()
    mf = MeanFields(delta=cfg.delta0, delta1=0.0, c=cfg.c)
    rows = []
    for t in np.linspace(0.0, cfg.t_max, cfg.n_steps):
        t = float(t)
        if cfg.case == "eta_zero":
            d = delta_case1(t, cfg.gamma1, cfg.w, mf, cfg.nbar1, cfg.nbar2, cfg.n_max)
            d1 = complex(mf.delta1)
        else:
            d = delta_case2(t, cfg.gamma1, cfg.w, mf, cfg.nbar1, cfg.nbar2, cfg.n_max)
            d1 = delta1_case2(t, cfg.gamma1, cfg.w, mf, cfg.nbar1, cfg.nbar2, cfg.n_max)
        rows.append((t, d.real, d.imag, d1.real, d1.imag))
    return rows


def run_oracle_validation(truncation: int, r: float, seed: int) -> dict:
    """Cross-validate the analytic routes against Fock-space ground truth.

    Checks (thresholds are the acceptance tolerances):

    * vectorized-generator identity against the master-equation right-hand
      side over 20 seeded random states at ``truncation`` levels per mode;
    * Gaussian vs Fock logarithmic negativity and mutual information at the
      given squeeze ``r`` (Fock side at 25 and 30 levels per mode, matching
      the tolerances, independent of ``truncation``);
    * single-exponential vs product-form factorization residual in the 2x2
      representation over 100 seeded coefficient draws.
    """
    if truncation < 3:
        raise ConfigError("truncation must be >= 3")
    if r < 0:
        raise ConfigError("r must be non-negative")
    rng = np.random.default_rng(seed)
    report: dict[str, dict] = {}

    # (i) vectorized generator vs master equation
    space = two_mode_space(truncation)
    dspace = tfd.DoubledSpace(space)
    p = ModelParams(eps0=2.44744765, eps1=-1.22372382, g1=0.2,
                    E1=0.7 + 0.3j, gamma1=0.1)
    gen = make_generator(p, space)
    lv = tfd.liouvillian_superoperator(p, dspace)
    resid = 0.0
    for _ in range(20):
        g = rng.normal(size=(space.dim, space.dim)) + 1j * rng.normal(size=(space.dim, space.dim))
        rho = g @ g.conj().T
        rho /= rho.trace()
        lhs = lv @ tfd.vec(rho, dspace)
        rhs = tfd.vec(master_rhs(rho, p, gen), dspace)
        resid = max(resid, float(np.abs(lhs - rhs).max()))
    report["liouvillian_vs_master_rhs"] = _check(resid, 1e-10)

    # (ii) Gaussian vs Fock measures
    sq = SqueezeSpec(r, 0.0)
    sigma = cov_two_mode_squeezed(sq)
    rho_en = two_mode_squeezed_vacuum(r, two_mode_space(25))
    resid_en = abs(log_negativity(sigma) - fock_log_negativity(rho_en))
    report["gaussian_vs_fock_log_negativity"] = _check(float(resid_en), 1e-6)

    rho_im = two_mode_squeezed_vacuum(r, two_mode_space(30))
    s_a = von_neumann_entropy(fock.partial_trace(rho_im, "a"))
    s_b = von_neumann_entropy(fock.partial_trace(rho_im, "b"))
    s_ab = von_neumann_entropy(rho_im)
    resid_im = abs(mutual_information(sigma) - (s_a + s_b - s_ab))
    report["gaussian_vs_fock_mutual_information"] = _check(float(resid_im), 1e-5)

    # (iii) factorization identity in the 2x2 representation
    resid_d = 0.0
    n_draws = 0
    while n_draws < 100:
        c = SU11Coeffs(*(rng.normal(scale=0.8, size=3) + 1j * rng.normal(scale=0.8, size=3)))
        phi = np.sqrt(complex(c.xi3) ** 2 / 4.0 - complex(c.xi_plus) * complex(c.xi_minus))
        if abs(phi) > 2.0:
            continue
        try:
            g = disentangle(c, denom_tol=1e-3)
        except DegenerateFactorization:
            continue
        resid_d = max(resid_d, float(np.abs(rep2x2(c) - rep2x2_product(g)).max()))
        n_draws += 1
    report["disentangle_2x2"] = _check(resid_d, 1e-12)
    return report


def _check(residual: float, threshold: float) -> dict:
    return {"residual": residual, "threshold": threshold,
            "pass": bool(residual <= threshold)}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_sweep_csv(rows: list[SweepRow], cfg: SweepConfig, path: str, headline: str) -> None:
    lines = [f"# tfdsim {__version__} {headline} sweep"]
    for key, value in asdict(cfg).items():
        lines.append(f"# {key} = {value}")
    lines.append("t,r_mag,phi,d_minus_tilde,E_N,I_M")
    for row in rows:
        lines.append(",".join(_fmt(v) for v in
                              (row.t, row.r_mag, row.phi, row.d_minus_tilde, row.E_N, row.I_M)))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_delta_csv(rows, cfg: SweepConfig, path: str) -> None:
    lines = [f"# tfdsim {__version__} mean-field evolution"]
    for key, value in asdict(cfg).items():
        lines.append(f"# {key} = {value}")
    lines.append("t,delta_re,delta_im,delta1_re,delta1_im")
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tfdsim",
        description="Two-mode dissipative quantum optics: sweeps and oracle validation.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, headline in (("sweep-negativity", "logarithmic negativity"),
                           ("sweep-mutualinfo", "mutual information")):
        sp = sub.add_parser(name, help=f"time sweep of {headline}")
        sp.add_argument("--config", required=True, help="JSON sweep configuration")
        sp.add_argument("--out", required=True, help="output CSV path")

    sp = sub.add_parser("oracle-validate", help="cross-validate analytic routes against Fock oracles")
    sp.add_argument("--truncation", type=int, required=True)
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", required=True, help="output JSON path")

    sp = sub.add_parser("delta-evolve", help="tabulate the short-time mean fields")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", required=True)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command in ("sweep-negativity", "sweep-mutualinfo"):
            cfg = load_config(args.config)
            if args.command == "sweep-negativity":
                rows = run_negativity_sweep(cfg)
                write_sweep_csv(rows, cfg, args.out, "logarithmic-negativity")
            else:
                rows = run_mutualinfo_sweep(cfg)
                write_sweep_csv(rows, cfg, args.out, "mutual-information")
        elif args.command == "oracle-validate":
            report = run_oracle_validation(args.truncation, args.r, args.seed)
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(report, fh, indent=2, sort_keys=True)
                fh.write("\n")
            if not all(entry["pass"] for entry in report.values()):
                print("oracle validation FAILED", file=sys.stderr)
                return 2
        elif args.command == "delta-evolve":
            cfg = load_config(args.config)
            rows = run_delta_evolution(cfg)
            write_delta_csv(rows, cfg, args.out)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (NumericalFailure, UnstableRegime, UnphysicalCovariance,
            DegenerateFactorization, TruncationOverflow) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
