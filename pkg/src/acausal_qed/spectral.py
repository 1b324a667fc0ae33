"""Positive/negative-frequency decomposition of sampled fields and the
single-point intensity functional.

Frequency convention: a mode ``exp(-i w t)`` with ``w > 0`` is *positive*
frequency.  numpy's FFT bins carry ``exp(+2 pi i f n / M)``, so physical
positive frequencies live in numpy's negative-``f`` bins.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import KernelShapeMismatch, SignalTooShort, WindowTooShort
from .units import GAUSSIAN, Constants


def next_pow2(m: int) -> int:
    return 1 << max(0, (int(m) - 1).bit_length())


@dataclass(frozen=True)
class SampledSignal:
    """Uniformly sampled complex time series starting at ``t0`` with spacing ``dt``."""

    samples: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim != 1:
            raise ValueError(f"samples must be one-dimensional, got shape {s.shape}")
        object.__setattr__(self, "samples", s)
        if s.size < 2:
            raise SignalTooShort(f"need at least 2 samples, got {s.size}")
        if not self.dt > 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")

    def __len__(self):
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.size)

    @classmethod
    def from_function(cls, func, m: int, dt: float, t0: float = 0.0) -> "SampledSignal":
        t = t0 + dt * np.arange(m)
        return cls(np.asarray(func(t), dtype=complex), dt, t0)


@dataclass(frozen=True)
class FrequencyDecomposition:
    plus: SampledSignal
    minus: SampledSignal

    def reconstruct(self) -> np.ndarray:
        return self.plus.samples + self.minus.samples


def positive_mask(m: int) -> np.ndarray:
    """Spectral weights selecting the positive-frequency part on an ``m``-point FFT.

    DC and (for even ``m``) Nyquist bins get weight 1/2.  The negative-frequency
    mask is ``1 - positive_mask(m)``, so the two parts always sum to the input.
    """
    f = np.fft.fftfreq(m)
    mask = np.where(f < 0.0, 1.0, 0.0)
    mask[0] = 0.5
    if m % 2 == 0:
        mask[m // 2] = 0.5
    return mask


def _padded(samples: np.ndarray) -> np.ndarray:
    m = samples.size
    p = next_pow2(m)
    if p == m:
        return samples
    out = np.zeros(p, dtype=complex)
    out[:m] = samples
    return out


def decompose(signal: SampledSignal) -> FrequencyDecomposition:
    """Split a signal into positive- and negative-frequency parts by spectral masking.

    The signal is zero padded to the next power of two; the padding is dropped
    from the returned parts.
    """
    m = len(signal)
    x = _padded(signal.samples)
    xk = np.fft.fft(x)
    mask = positive_mask(x.size)
    plus = np.fft.ifft(xk * mask)[:m]
    minus = np.fft.ifft(xk * (1.0 - mask))[:m]
    return FrequencyDecomposition(
        SampledSignal(plus, signal.dt, signal.t0),
        SampledSignal(minus, signal.dt, signal.t0),
    )


def decompose_kernel(signal: SampledSignal, epsilon: float, tau_window: float) -> FrequencyDecomposition:
    """Time-domain decomposition by convolution with ``(i/2pi) / (tau + i eps)``.

    The signal is treated as periodic over its (power-of-two padded) length and
    lags are summed over ``|tau| <= tau_window / 2``.  As ``epsilon -> 0`` and the
    window grows, the result approaches :func:`decompose`.
    """
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    dt = signal.dt
    if not tau_window >= 2.0 * dt:
        raise WindowTooShort(f"window {tau_window} shorter than two samples (2*dt={2 * dt})")
    m = len(signal)
    x = _padded(signal.samples)
    p = x.size
    half = int(math.floor(tau_window / (2.0 * dt) + 1e-9))
    lags = np.arange(-half, half + 1)
    w = (0.5j / math.pi) * dt / (lags * dt + 1j * epsilon)
    # fold lags onto the periodic grid
    wp = np.zeros(p, dtype=complex)
    np.add.at(wp, lags % p, w)
    xk = np.fft.fft(x)
    plus = np.fft.ifft(xk * (p * np.fft.ifft(wp)))[:m]
    minus = np.fft.ifft(xk * np.fft.fft(wp))[:m]
    return FrequencyDecomposition(
        SampledSignal(plus, dt, signal.t0),
        SampledSignal(minus, dt, signal.t0),
    )


@dataclass(frozen=True)
class CorrelationKernel:
    """Samples of ``<E(t+s1) E(t+s2)>`` on a square offset grid.

    ``s0`` is the first offset; by default the grid is centred on zero.
    """

    values: np.ndarray
    ds: float
    s0: float | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", v)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise KernelShapeMismatch(f"kernel grid must be square, got shape {v.shape}")
        if not self.ds > 0.0:
            raise ValueError(f"ds must be positive, got {self.ds}")
        if self.s0 is None:
            object.__setattr__(self, "s0", -0.5 * (v.shape[0] - 1) * self.ds)

    @property
    def offsets(self) -> np.ndarray:
        return self.s0 + self.ds * np.arange(self.values.shape[0])

    @classmethod
    def from_field(cls, field, t: float, n: int, ds: float) -> "CorrelationKernel":
        """Kernel of a deterministic real field: ``E(t+s1) E(t+s2)``."""
        s = -0.5 * (n - 1) * ds + ds * np.arange(n)
        e = np.asarray(field(t + s), dtype=complex)
        return cls(np.outer(e, e), ds)

    @classmethod
    def from_autocorrelation(cls, acf, n: int, ds: float) -> "CorrelationKernel":
        """Kernel of a stationary field with autocorrelation ``acf(s1 - s2)``."""
        s = -0.5 * (n - 1) * ds + ds * np.arange(n)
        return cls(np.asarray(acf(s[:, None] - s[None, :]), dtype=complex), ds)


def intensity_complex(kernel: CorrelationKernel, epsilon: float, const: Constants = GAUSSIAN) -> complex:
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    s = kernel.offsets
    w1 = kernel.ds / (s - 1j * epsilon)
    w2 = kernel.ds / (s + 1j * epsilon)
    total = w1 @ kernel.values @ w2
    return complex(const.c / (16.0 * math.pi**3) * total)


def intensity(kernel: CorrelationKernel, epsilon: float, const: Constants = GAUSSIAN) -> float:
    """Beam intensity from the two-time field correlation.

    Evaluates ``(c / 16 pi^3) sum K(s1,s2) ds^2 / ((s1 - i eps)(s2 + i eps))``.
    For Hermitian kernels the sum is real; the real part is returned.  Use
    :func:`intensity_complex` to inspect the imaginary remainder.
    """
    return intensity_complex(kernel, epsilon, const).real


def analytic_intensity(e_plus, const: Constants = GAUSSIAN) -> np.ndarray:
    """``(c / 4 pi) |E_+|^2`` summed over any leading vector axis."""
    e_plus = np.asarray(e_plus)
    mag2 = np.abs(e_plus) ** 2
    if mag2.ndim > 1:
        mag2 = mag2.sum(axis=0)
    return const.c / (4.0 * math.pi) * mag2
