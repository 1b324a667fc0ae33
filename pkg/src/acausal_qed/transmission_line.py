"""Quantum transmission line: line parameters, classical evolution, the
Euclidean action of displaced charge states and the resulting superluminal
transition probability.

Gaussian units throughout: lengths in cm, times in s, charges in esu and
impedances in s/cm.  Probabilities are carried as logarithms because they
underflow quickly for more than a handful of electrons.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import (
    BadSweep,
    InsufficientData,
    QuadratureNotConverged,
    RegulatorViolation,
    SuperluminalClassicalLine,
)
from .propagator import RegulatedLine
from .units import GAUSSIAN, Constants, fine_structure, ohms_to_s_per_cm

# Gaussian profiles are cut at this many widths; exp(-81) is far below rounding.
GAUSSIAN_CUTOFF = 9.0


@dataclass(frozen=True)
class LineSpec:
    """Line with capacitance ``eps`` and inductance ``mu`` per unit length."""

    eps: float
    mu: float
    const: Constants = field(default=GAUSSIAN, repr=False)

    def __post_init__(self):
        if not (self.eps > 0.0 and self.mu > 0.0):
            raise ValueError(f"eps and mu must be positive, got eps={self.eps}, mu={self.mu}")
        # relative slack keeps eps*mu == 1 lines (and rounding of it) legal
        if self.eps * self.mu < 1.0 - 1e-12:
            raise SuperluminalClassicalLine(
                f"eps*mu = {self.eps * self.mu} < 1 gives a classical signal speed above c"
            )

    @property
    def u(self) -> float:
        """Signal velocity in cm/s."""
        return self.const.c / math.sqrt(self.eps * self.mu)

    @property
    def r_line(self) -> float:
        """Line impedance ``1 / (eps u)`` in s/cm."""
        return 1.0 / (self.eps * self.u)

    def impedance_forms(self) -> tuple[float, float, float]:
        """The three equivalent impedance expressions, for consistency checks."""
        c = self.const.c
        r_vac = 4.0 * math.pi / c
        return (
            1.0 / (self.eps * self.u),
            self.mu * self.u / c**2,
            r_vac / (4.0 * math.pi) * math.sqrt(self.mu / self.eps),
        )


def line_params(eps: float, mu: float, const: Constants = GAUSSIAN) -> LineSpec:
    return LineSpec(eps, mu, const)


def line_for_impedance(r_ohms: float, eps_mu: float = 1.0, const: Constants = GAUSSIAN) -> LineSpec:
    """Line of impedance ``r_ohms`` whose signal speed is ``c / sqrt(eps_mu)``."""
    r = ohms_to_s_per_cm(r_ohms)
    if not r > 0.0:
        raise ValueError("line impedance must be positive")
    root = math.sqrt(eps_mu)
    ratio = r * const.c  # sqrt(mu / eps)
    return LineSpec(root / ratio, root * ratio, const)


@dataclass(frozen=True, eq=False)
class ChargeProfile:
    """Line charge density ``lambda(z)``.

    ``kind="gaussian"``: ``lambda(z) = Q / (a sqrt(pi)) exp(-z^2 / a^2)``.
    ``kind="sampled"``: cubic-spline interpolation of ``samples = (z, lambda)``,
    zero outside the sampled interval.
    """

    kind: str
    total_charge: float
    width_a: float
    samples: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("gaussian", "sampled"):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if not self.width_a > 0.0:
            raise ValueError(f"width must be positive, got {self.width_a}")
        if self.kind == "sampled":
            if self.samples is None:
                raise ValueError("sampled profile needs (z, lambda) samples")
            from scipy.interpolate import CubicSpline

            z, lam = (np.asarray(v, dtype=float) for v in self.samples)
            object.__setattr__(self, "samples", (z, lam))
            object.__setattr__(self, "_spline", CubicSpline(z, lam, extrapolate=False))

    @classmethod
    def gaussian(cls, n_electrons: float, a: float, const: Constants = GAUSSIAN) -> "ChargeProfile":
        return cls("gaussian", n_electrons * const.e_charge, float(a))

    @classmethod
    def sampled(cls, z, lam) -> "ChargeProfile":
        z = np.asarray(z, dtype=float)
        lam = np.asarray(lam, dtype=float)
        if z.ndim != 1 or z.shape != lam.shape or z.size < 4:
            raise ValueError("sampled profile needs matching 1D arrays with at least 4 points")
        if np.any(np.diff(z) <= 0):
            raise ValueError("sample positions must be strictly increasing")
        q = float(np.trapezoid(lam, z))
        mean = np.trapezoid(z * lam, z) / q
        var = np.trapezoid((z - mean) ** 2 * lam, z) / q
        return cls("sampled", q, math.sqrt(2.0 * abs(var)), (z, lam))

    def support(self) -> tuple[float, float]:
        if self.kind == "gaussian":
            cut = GAUSSIAN_CUTOFF * self.width_a
            return -cut, cut
        z = self.samples[0]
        return float(z[0]), float(z[-1])

    def density(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        if self.kind == "gaussian":
            a = self.width_a
            return self.total_charge / (a * math.sqrt(math.pi)) * np.exp(-((z / a) ** 2))
        return np.nan_to_num(self._spline(z), nan=0.0)

    def n_electrons(self, const: Constants = GAUSSIAN) -> float:
        return self.total_charge / const.e_charge


@dataclass(frozen=True)
class ActionResult:
    action: float
    log_probability: float
    probability: float
    error_estimate: float = 0.0
    levels: int = 0


def _result(action, hbar, err=0.0, levels=0):
    logp = -2.0 * action / hbar
    return ActionResult(action, logp, math.exp(logp), err, levels)


def _nodes(profile, b, h):
    lo, hi = profile.support()
    n = int(math.ceil((hi - lo) / h)) + 1
    za = lo + h * np.arange(n)
    # offset by h/6: the log singularities at x = 0, +-b then sit a sixth of a
    # cell from the nearest node, which cancels the O(h) midpoint error
    zb = za + h / 6.0
    return za, profile.density(za) * h, zb, profile.density(zb) * h


def _base_step(profile, b, h0):
    if h0 is None:
        h0 = profile.width_a / 4.0
    if b > 0.0:
        # align the lattice with b so all three singularities share the offset
        k = max(1, int(math.ceil(b / h0)))
        return b / k
    return h0


def _richardson(evaluate, h, rtol, atol, max_levels):
    """Refine by halving ``h`` and eliminate error terms h^2, h^3, ... in turn."""
    rows = []
    prev_best = None
    for level in range(max_levels):
        row = [evaluate(h / 2**level)]
        for j, prev in enumerate(rows[-1] if rows else []):
            p = 2 + j
            row.append(row[j] + (row[j] - prev) / (2**p - 1))
        rows.append(row)
        best = row[-1]
        if prev_best is not None:
            err = abs(best - prev_best)
            if err <= rtol * abs(best) + atol:
                return best, err, level + 1
        prev_best = best
    raise QuadratureNotConverged(
        f"Richardson refinement did not reach rtol={rtol} in {max_levels} levels "
        f"(last two estimates {rows[-2][-1]!r}, {rows[-1][-1]!r})"
    )


def action_displaced(profile: ChargeProfile, b: float, line: LineSpec, *, regulator: float | None = None,
                     rtol: float = 1e-9, atol: float = 0.0, h0: float | None = None, max_levels: int = 8,
                     backend: str | None = None) -> ActionResult:
    """Euclidean action for moving ``profile`` a distance ``b`` along the line.

    By default the regulator-free kernel ``ln|b^2/x^2 - 1|`` is integrated.
    Passing ``regulator`` evaluates the unreduced combination
    ``2W(x) - W(x-b) - W(x+b)`` of regulated correlators instead; the regulator
    length must exceed every separation that occurs.

    The double integral is a tensor-product midpoint sum refined by Richardson
    extrapolation until successive estimates agree to ``rtol``.
    """
    b = abs(float(b))
    hbar = line.const.hbar
    if b == 0.0:
        return _result(0.0, hbar)
    h = _base_step(profile, b, h0)
    pref = line.r_line / (4.0 * math.pi)

    if regulator is None:
        def evaluate(step):
            za, wa, zb, wb = _nodes(profile, b, step)
            return pref * kernels.log_displaced_sum(wa, za, wb, zb, b, backend=backend)
    else:
        reg = RegulatedLine(regulator, line.r_line)
        lo, hi = profile.support()
        if (hi - lo) + b + h >= reg.lambda_reg:
            raise RegulatorViolation(
                f"separations up to {(hi - lo) + b:.3e} cm exceed the regulator length {reg.lambda_reg:.3e} cm"
            )

        def evaluate(step):
            za, wa, zb, wb = _nodes(profile, b, step)
            return pref * kernels.wightman_combo_sum(wa, za, wb, zb, b, reg.lambda_reg, backend=backend)

    scale = pref * profile.total_charge**2
    action, err, levels = _richardson(evaluate, h, rtol, atol + 1e-14 * abs(scale), max_levels)
    return _result(action, hbar, err, levels)


def beta(n_electrons: float, r_line: float, const: Constants = GAUSSIAN) -> float:
    """Decay exponent ``e^2 R N^2 / (pi hbar)`` for a line of impedance ``r_line`` (s/cm).

    Also evaluates the equivalent ``4 alpha (R / R_vac) N^2`` and insists the
    two agree.
    """
    if n_electrons < 0:
        raise ValueError(f"electron count must be >= 0, got {n_electrons}")
    if not r_line > 0.0:
        raise ValueError(f"line impedance must be positive, got {r_line}")
    n2 = float(n_electrons) ** 2
    direct = const.e_charge**2 * r_line / (math.pi * const.hbar) * n2
    via_alpha = 4.0 * fine_structure(const) * r_line / (4.0 * math.pi / const.c) * n2
    if abs(direct - via_alpha) > 1e-12 * max(abs(direct), 1e-300):
        raise ArithmeticError(f"beta forms disagree: {direct!r} vs {via_alpha!r}")
    return direct


@dataclass(frozen=True)
class DecayFit:
    beta: float
    intercept: float
    a_eff: float
    residual_rms: float


def decay_fit(b, log_probability) -> DecayFit:
    """Least-squares fit of ``log P = -beta ln b + intercept``.

    ``a_eff`` solves ``log P = -beta ln(b / a_eff)``.
    """
    b = np.asarray(b, dtype=float)
    logp = np.asarray(log_probability, dtype=float)
    if b.shape != logp.shape or b.ndim != 1:
        raise ValueError("b and log_probability must be matching 1D arrays")
    if b.size < 3:
        raise InsufficientData(f"need at least 3 samples, got {b.size}")
    if np.any(np.diff(b) <= 0.0):
        raise BadSweep("b values must be strictly increasing")
    if np.any(b <= 0.0):
        raise BadSweep("b values must be positive")
    x = np.log(b)
    (slope, intercept), res, *_ = np.polyfit(x, logp, 1, full=True)
    rms = math.sqrt(float(res[0]) / b.size) if res.size else 0.0
    fitted_beta = -float(slope)
    a_eff = math.exp(intercept / fitted_beta) if fitted_beta != 0.0 else math.nan
    return DecayFit(fitted_beta, float(intercept), a_eff, rms)


def running_beta(b, log_probability) -> np.ndarray:
    """Local exponent ``-d log P / d ln b`` by finite differences."""
    return -np.gradient(np.asarray(log_probability, dtype=float), np.log(np.asarray(b, dtype=float)))


def sweep(profile: ChargeProfile, line: LineSpec, b_values, threads: int = 1, **kwargs) -> list[ActionResult]:
    """Evaluate :func:`action_displaced` at every ``b``, output in input order."""
    b_values = [float(v) for v in b_values]

    def one(b):
        return action_displaced(profile, b, line, **kwargs)

    if threads <= 1:
        return [one(b) for b in b_values]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, b_values))


def dalembert_evolve(z, v0, t: float, line: LineSpec) -> np.ndarray:
    """Classical line voltage at time ``t`` for initial profile ``v0`` at rest.

    ``v(z, t) = [v0(z - u t) + v0(z + u t)] / 2`` with ``v0`` linearly
    interpolated on the sample grid and zero outside it.
    """
    z = np.asarray(z, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    shift = line.u * float(t)
    right = np.interp(z - shift, z, v0, left=0.0, right=0.0)
    left = np.interp(z + shift, z, v0, left=0.0, right=0.0)
    return 0.5 * (right + left)


def support_front(z, v0, t: float, line: LineSpec, tol: float = 0.0) -> tuple[float, float]:
    """Interval ``[z_min - u t, z_max + u t]`` the classical signal can occupy."""
    z = np.asarray(z, dtype=float)
    nz = np.nonzero(np.abs(np.asarray(v0)) > tol)[0]
    if nz.size == 0:
        return (math.nan, math.nan)
    # the linear interpolant extends one cell past the last nonzero sample
    lo = z[max(nz[0] - 1, 0)]
    hi = z[min(nz[-1] + 1, z.size - 1)]
    shift = line.u * float(t)
    return lo - shift, hi + shift


def wave_energy(z, v, v_t, u: float) -> float:
    """``int [(1/u^2) v_t^2 + v_z^2] dz`` with ``v_z`` from central differences."""
    z = np.asarray(z, dtype=float)
    v_z = np.gradient(np.asarray(v, dtype=float), z)
    return float(np.trapezoid(np.asarray(v_t) ** 2 / u**2 + v_z**2, z))
