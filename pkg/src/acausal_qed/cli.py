"""Command line front end: ``acausal <subcommand> ...``.

Exit status is 0 on success, 2 on usage or input errors and 1 when a
numerical procedure fails.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import correlations as corr
from . import propagator as prop
from . import spectral
from . import transmission_line as tl
from . import units
from . import wavepacket as wp
from .errors import AcausalError, BadSweep
from .io import ConfigError, fmt, load_json, parse_complex, read_csv_columns, take, write_csv


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------


def cmd_constants(args):
    const = units.constants(args.system)
    imp = units.vacuum_impedance(args.system)
    lines = [
        f"system={const.system.value}",
        f"c={fmt(const.c)}",
        f"hbar={fmt(const.hbar)}",
        f"e_charge={fmt(const.e_charge)}",
        f"r_vac={fmt(imp.value)}",
        f"r_vac_unit={imp.unit}",
        f"alpha={fmt(const.alpha)}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")


def cmd_propagator(args):
    p = prop.SpacetimePoint(args.r, args.ct)
    off = prop.offcone_im(p, args.tol_cone)
    on = prop.oncone_re_mollified(p, args.sigma)
    write_csv(None, ["r_cm", "ct_cm", "sigma_cm", "offcone_im", "oncone_re"],
              [(args.r, args.ct, args.sigma, off, on)])


def cmd_decompose(args):
    cols = read_csv_columns(args.infile, ["t", "re", "im"])
    t = cols["t"]
    if t.size < 2:
        raise ConfigError(f"{args.infile}: need at least 2 samples")
    dt = np.diff(t)
    if np.any(dt <= 0) or not np.allclose(dt, dt[0], rtol=1e-9, atol=0.0):
        raise ConfigError(f"{args.infile}: t must be uniformly spaced and increasing")
    sig = spectral.SampledSignal(cols["re"] + 1j * cols["im"], float(dt[0]), float(t[0]))
    d = spectral.decompose(sig)
    rows = zip(t, d.plus.samples.real, d.plus.samples.imag, d.minus.samples.real, d.minus.samples.imag)
    write_csv(args.out, ["t", "re_plus", "im_plus", "re_minus", "im_minus"], rows)


_PACKET_KEYS = ("type", "center_cm", "width_cm", "polarization")


def _packet_from_config(doc, where, n, spacing, const):
    take(doc, where, required=_PACKET_KEYS)
    if doc["type"] != "gaussian":
        raise ConfigError(f"{where}.type: only 'gaussian' packets are supported")
    center = doc["center_cm"]
    if not (isinstance(center, list) and len(center) == 3):
        raise ConfigError(f"{where}.center_cm: expected a list of 3 numbers")
    pol = doc["polarization"]
    if not (isinstance(pol, list) and len(pol) == 3):
        raise ConfigError(f"{where}.polarization: expected 3 complex components")
    pol = [parse_complex(c, f"{where}.polarization[{i}]") for i, c in enumerate(pol)]
    width = float(doc["width_cm"])
    if not width > 0:
        raise ConfigError(f"{where}.width_cm must be positive")
    return wp.gaussian_packet([float(c) for c in center], width, pol, n, spacing, const=const)


def cmd_overlap(args):
    doc = load_json(args.config)
    take(doc, "config", required=("grid", "initial", "final"), optional=("routes", "units"))
    grid = take(doc["grid"], "grid", required=("n", "spacing_cm"))
    n = grid["n"]
    if not isinstance(n, int) or n < 2:
        raise ConfigError("grid.n must be an integer >= 2")
    spacing = float(grid["spacing_cm"])
    if not spacing > 0:
        raise ConfigError("grid.spacing_cm must be positive")
    if doc.get("units", "gaussian") != "gaussian":
        raise ConfigError("units: wavepacket scenarios are defined in gaussian units")
    routes = doc.get("routes", ["momentum", "position"])
    bad = [r for r in routes if r not in ("momentum", "position")]
    if bad or not routes:
        raise ConfigError(f"routes: expected a non-empty subset of momentum, position; got {routes!r}")
    const = units.GAUSSIAN
    psi_i = _packet_from_config(doc["initial"], "initial", n, spacing, const)
    psi_f = _packet_from_config(doc["final"], "final", n, spacing, const)
    rows = []
    for route in routes:
        if route == "momentum":
            amp = wp.overlap(psi_f, psi_i, const)
        else:
            amp = wp.overlap_position(wp.from_momentum(psi_f), wp.from_momentum(psi_i), const,
                                      backend=args.backend)
        rows.append((route, amp.real, amp.imag, abs(amp) ** 2))
    write_csv(args.out, ["route", "re", "im", "probability"], rows)


def cmd_tline_beta(args):
    r = units.ohms_to_s_per_cm(args.r_ohms)
    sys.stdout.write(f"beta={fmt(tl.beta(args.n, r))}\n")


def cmd_tline_sweep(args):
    if args.points < 3:
        raise BadSweep("--points must be at least 3")
    if not (0 < args.b_min < args.b_max):
        raise BadSweep(f"need 0 < b-min < b-max, got b-min={args.b_min}, b-max={args.b_max}")
    line = tl.line_for_impedance(args.r_ohms, args.eps_mu)
    profile = tl.ChargeProfile.gaussian(args.n, args.a)
    b = np.logspace(np.log10(args.b_min), np.log10(args.b_max), args.points)
    res = tl.sweep(profile, line, b, threads=args.threads, rtol=args.rtol)
    logp = np.array([r.log_probability for r in res])
    run = tl.running_beta(b, logp)
    write_csv(args.out, ["b", "log_p", "p", "beta_running"],
              [(bi, r.log_probability, r.probability, rb) for bi, r, rb in zip(b, res, run)])


def cmd_tline_classical(args):
    cols = read_csv_columns(args.profile, ["z", "v"])
    z = cols["z"]
    if z.size < 2 or np.any(np.diff(z) <= 0):
        raise ConfigError(f"{args.profile}: z must be strictly increasing")
    line = tl.line_params(args.eps, args.mu)
    v = tl.dalembert_evolve(z, cols["v"], args.t, line)
    write_csv(args.out, ["z", "v"], zip(z, v))


def _complex_arg(text):
    try:
        return parse_complex(text, "amplitude")
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_coincidence(args):
    amps = corr.CoincidenceAmplitudes(args.a11, args.a22, args.a12, args.a21)
    p = corr.coincidence_probability(amps)
    stats = corr.two_photon_stats(corr.interference_amplitudes_to_state(amps))
    sys.stdout.write(
        f"P={fmt(p)}\nC={fmt(stats.correlation)}\n"
        f"mean_n1={fmt(stats.mean_n1)}\nmean_n1_sq={fmt(stats.mean_n1_sq)}\n"
    )


def cmd_fringes(args):
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if not (args.wavelength > 0 and args.baseline >= 0):
        raise UsageError("--wavelength must be positive and --baseline non-negative")
    rows = corr.fringe_scan(args.baseline, args.wavelength, args.separation, args.points)
    write_csv(args.out, ["baseline_m", "phase_rad", "p_coincidence", "c11"], rows)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="acausal", description="Acausal QED quantities: propagators, "
                                 "frequency decomposition, photon overlaps, quantum line, coincidences.")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("constants", help="print physical constants")
    p.add_argument("--system", choices=[s.value for s in units.UnitSystem], default="gaussian")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("propagator", help="off-cone and mollified on-cone propagator values")
    p.add_argument("--r", type=float, required=True, help="spatial separation (cm)")
    p.add_argument("--ct", type=float, required=True, help="time separation times c (cm)")
    p.add_argument("--sigma", type=float, default=1e-3, help="mollifier width (cm)")
    p.add_argument("--tol-cone", type=float, default=None, help="light-cone tolerance on |R^2-(cT)^2|")
    p.set_defaults(func=cmd_propagator)

    p = sub.add_parser("decompose", help="split a sampled signal into positive/negative frequency parts")
    p.add_argument("--in", dest="infile", required=True, help="CSV with columns t,re,im")
    p.add_argument("--out", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("overlap", help="photon transition amplitude between two packets")
    p.add_argument("--config", required=True, help="scenario JSON")
    p.add_argument("--out", default=None, help="output CSV (default stdout)")
    p.add_argument("--backend", choices=["numba", "numpy"], default=None)
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("tline", help="quantum transmission line")
    tsub = p.add_subparsers(dest="tline_command", metavar="ACTION")
    tsub.required = True
    q = tsub.add_parser("beta", help="decay exponent for N electrons")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--r-ohms", type=float, required=True)
    q.set_defaults(func=cmd_tline_beta)
    q = tsub.add_parser("sweep", help="transition probability against displacement b")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--r-ohms", type=float, required=True)
    q.add_argument("--a", type=float, required=True, help="charge spread (cm)")
    q.add_argument("--b-min", type=float, required=True, help="smallest displacement (cm)")
    q.add_argument("--b-max", type=float, required=True, help="largest displacement (cm)")
    q.add_argument("--points", type=int, default=20)
    q.add_argument("--eps-mu", type=float, default=1.0, help="eps*mu of the line (>= 1)")
    q.add_argument("--rtol", type=float, default=1e-9, help="quadrature tolerance")
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_tline_sweep)
    q = tsub.add_parser("classical", help="classical d'Alembert evolution of a voltage profile")
    q.add_argument("--profile", required=True, help="CSV with columns z,v")
    q.add_argument("--t", type=float, required=True, help="time (s)")
    q.add_argument("--eps", type=float, default=1.0)
    q.add_argument("--mu", type=float, default=1.0)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_tline_classical)

    p = sub.add_parser("coincidence", help="two-photon coincidence statistics")
    for name in ("a11", "a22", "a12", "a21"):
        p.add_argument(f"--{name}", type=_complex_arg, default=0j, metavar="RE,IM")
    p.set_defaults(func=cmd_coincidence)
    csub = p.add_subparsers(dest="coincidence_command", metavar="ACTION")
    q = csub.add_parser("fringes", help="illustrative two-star coincidence fringes")
    q.add_argument("--baseline", type=float, required=True, help="largest detector separation (m)")
    q.add_argument("--wavelength", type=float, required=True, help="wavelength (m)")
    q.add_argument("--separation", type=float, required=True, help="angular source separation (rad)")
    q.add_argument("--points", type=int, default=101)
    q.add_argument("--out", default=None)
    q.set_defaults(func=cmd_fringes)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        args.func(args)
    except (UsageError, ConfigError, BadSweep) as exc:
        print(f"{parser.prog} {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (AcausalError, ArithmeticError) as exc:
        print(f"{parser.prog} {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())
