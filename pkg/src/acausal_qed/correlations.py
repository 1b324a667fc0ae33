"""Two-photon coincidence statistics.

Amplitudes for the four ways two photons can reach two counters combine as
``|a11|^2 + |a22|^2 + |a12 + a21|^2``: probabilities add for distinguishable
histories, amplitudes add for the two indistinguishable ones.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized, ZeroState

STATE_TOL = 1e-12


@dataclass(frozen=True)
class CoincidenceAmplitudes:
    """Both photons from source 1 (``a11``) or source 2 (``a22``), direct
    (``a12``) and exchanged (``a21``) paths.  Not normalized."""

    a11: complex = 0j
    a22: complex = 0j
    a12: complex = 0j
    a21: complex = 0j

    def swapped(self) -> "CoincidenceAmplitudes":
        """Relabel counters 1 <-> 2."""
        return CoincidenceAmplitudes(self.a22, self.a11, self.a21, self.a12)

    def scaled(self, factor: complex) -> "CoincidenceAmplitudes":
        return CoincidenceAmplitudes(*(factor * a for a in (self.a11, self.a22, self.a12, self.a21)))


@dataclass(frozen=True)
class TwoPhotonState:
    """Amplitudes of the occupations (N1, N2) = (2, 0), (0, 2), (1, 1)."""

    c20: complex
    c02: complex
    c11: complex

    def __post_init__(self):
        nrm = self.norm()
        if abs(nrm - 1.0) > STATE_TOL:
            raise NotNormalized(f"two-photon state has norm {nrm!r}, expected 1")

    def norm(self) -> float:
        return abs(self.c20) ** 2 + abs(self.c02) ** 2 + abs(self.c11) ** 2

    @classmethod
    def from_unnormalized(cls, c20, c02, c11) -> "TwoPhotonState":
        s = math.sqrt(abs(c20) ** 2 + abs(c02) ** 2 + abs(c11) ** 2)
        if s == 0.0:
            raise ZeroState("all occupation amplitudes vanish")
        return cls(c20 / s, c02 / s, c11 / s)


@dataclass(frozen=True)
class TwoPhotonStats:
    mean_n1: float
    mean_n1_sq: float
    correlation: float

    @property
    def spooky_residual(self) -> float:
        """``2 <N1> - <N1^2> - <N1 N2>``; zero on the two-photon sector."""
        return 2.0 * self.mean_n1 - self.mean_n1_sq - self.correlation


def coincidence_probability(amps: CoincidenceAmplitudes) -> float:
    return (
        abs(amps.a11) ** 2
        + abs(amps.a22) ** 2
        + abs(amps.a12 + amps.a21) ** 2
    )


def two_photon_stats(state: TwoPhotonState) -> TwoPhotonStats:
    p20 = abs(state.c20) ** 2
    p02 = abs(state.c02) ** 2
    p11 = abs(state.c11) ** 2
    nrm = p20 + p02 + p11
    if abs(nrm - 1.0) > STATE_TOL:
        raise NotNormalized(f"two-photon state has norm {nrm!r}, expected 1")
    return TwoPhotonStats(
        mean_n1=2.0 * p20 + p11,
        mean_n1_sq=4.0 * p20 + p11,
        correlation=p11,
    )


def interference_amplitudes_to_state(amps: CoincidenceAmplitudes) -> TwoPhotonState:
    """Occupation state with ``c20 ~ a11``, ``c02 ~ a22``, ``c11 ~ a12 + a21``."""
    if amps.a11 == 0 and amps.a22 == 0 and amps.a12 == 0 and amps.a21 == 0:
        raise ZeroState("all coincidence amplitudes vanish")
    c11 = amps.a12 + amps.a21
    if amps.a11 == 0 and amps.a22 == 0 and c11 == 0:
        raise ZeroState("direct and exchange amplitudes cancel and no other path remains")
    return TwoPhotonState.from_unnormalized(complex(amps.a11), complex(amps.a22), complex(c11))


def star_fringe_amplitudes(baseline: float, wavelength: float, separation: float) -> CoincidenceAmplitudes:
    """Illustrative amplitudes for two distant point sources.

    Unit-magnitude amplitudes; only the exchange path picks up the relative
    phase ``2 pi baseline separation / wavelength`` (small-angle plane waves).
    """
    phase = 2.0 * math.pi * baseline * separation / wavelength
    return CoincidenceAmplitudes(1.0 + 0j, 1.0 + 0j, 1.0 + 0j, complex(np.exp(1j * phase)))


def fringe_scan(max_baseline: float, wavelength: float, separation: float, points: int):
    """Coincidence probability and ``<N1 N2>`` against detector baseline."""
    if points < 2:
        raise ValueError("need at least 2 points")
    baselines = np.linspace(0.0, max_baseline, points)
    rows = []
    for bl in baselines:
        amps = star_fringe_amplitudes(bl, wavelength, separation)
        stats = two_photon_stats(interference_amplitudes_to_state(amps))
        phase = 2.0 * math.pi * bl * separation / wavelength
        rows.append((float(bl), phase, coincidence_probability(amps), stats.correlation))
    return rows
