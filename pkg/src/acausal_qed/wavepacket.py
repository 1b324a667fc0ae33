"""Single-photon wavepackets at time zero on a periodic cubic grid.

Position-space fields ``F = e + i b`` (Riemann-Silberstein form) and momentum
space wave functions ``Psi(k)`` are related by

    Psi(k) = sum_r F(r) exp(-i k.r) h^3
    F(r)   = sum_k Psi(k) exp(+i k.r) dk^3 / (2 pi)^3

with ``h`` the grid spacing and ``dk = 2 pi / (n h)``.  Arrays hold the
three Cartesian components on the leading axis: shape ``(3, n, n, n)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import GridMismatch, NotNormalized, ZeroNorm
from .units import GAUSSIAN, Constants

# Average of 1/|u|^2 over the unit cube [-1/2, 1/2]^3.
CELL_AVG_INV_R2 = 7.674124222443732
# Minus the cubic-lattice zeta value sum'_m |m|^-2 (analytic continuation).
# Used as the self weight it cancels the O(h) error of the singular lattice
# sum, leaving O(h^3); the plain cell average leaves an O(h) term with
# coefficient CELL_AVG_INV_R2 - LATTICE_SELF_INV_R2 ~ -1.24.
LATTICE_SELF_INV_R2 = 8.913632917585151
SELF_WEIGHTS = {"lattice": LATTICE_SELF_INV_R2, "cell_average": CELL_AVG_INV_R2}

NORM_TOL = 1e-9


def _as_origin(origin, n, spacing):
    if origin is None:
        return np.full(3, -0.5 * (n - 1) * spacing)
    o = np.asarray(origin, dtype=float).reshape(-1)
    if o.size == 1:
        o = np.repeat(o, 3)
    if o.size != 3:
        raise ValueError(f"origin must be a scalar or a 3-vector, got {origin!r}")
    return o


def _check_values(values):
    v = np.asarray(values, dtype=complex)
    if v.ndim != 4 or v.shape[0] != 3 or not (v.shape[1] == v.shape[2] == v.shape[3]):
        raise ValueError(f"expected shape (3, n, n, n), got {v.shape}")
    if v.shape[1] < 2:
        raise ValueError("grid needs n >= 2")
    return v


@dataclass(frozen=True, eq=False)
class VectorFieldGrid:
    """Complex 3-vector field sampled on an ``n^3`` grid with spacing ``spacing`` (cm)."""

    values: np.ndarray
    spacing: float
    origin: np.ndarray | None = None

    def __post_init__(self):
        v = _check_values(self.values)
        object.__setattr__(self, "values", v)
        if not self.spacing > 0.0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        object.__setattr__(self, "origin", _as_origin(self.origin, v.shape[1], self.spacing))

    @property
    def n(self) -> int:
        return self.values.shape[1]

    def axes(self):
        return [self.origin[i] + self.spacing * np.arange(self.n) for i in range(3)]

    def positions(self) -> np.ndarray:
        """Node coordinates, shape ``(3, n, n, n)``."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"))

    def same_grid(self, other) -> bool:
        return (
            self.n == other.n
            and self.spacing == other.spacing
            and np.array_equal(self.origin, other.origin)
        )

    def with_values(self, values) -> "VectorFieldGrid":
        return VectorFieldGrid(values, self.spacing, self.origin)


@dataclass(frozen=True, eq=False)
class MomentumWavepacket:
    """Momentum-space wave function on the grid dual to a :class:`VectorFieldGrid`.

    ``spacing`` and ``origin`` describe the position grid the packet maps back
    to; ``dk = 2 pi / (n spacing)``.
    """

    values: np.ndarray
    spacing: float
    origin: np.ndarray | None = None

    def __post_init__(self):
        v = _check_values(self.values)
        object.__setattr__(self, "values", v)
        if not self.spacing > 0.0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        object.__setattr__(self, "origin", _as_origin(self.origin, v.shape[1], self.spacing))

    @property
    def n(self) -> int:
        return self.values.shape[1]

    @property
    def dk(self) -> float:
        return 2.0 * math.pi / (self.n * self.spacing)

    def kvec(self) -> np.ndarray:
        k1 = 2.0 * math.pi * np.fft.fftfreq(self.n, self.spacing)
        return np.stack(np.meshgrid(k1, k1, k1, indexing="ij"))

    def kmag(self) -> np.ndarray:
        return np.sqrt(np.sum(self.kvec() ** 2, axis=0))

    def same_grid(self, other) -> bool:
        return (
            self.n == other.n
            and self.spacing == other.spacing
            and np.array_equal(self.origin, other.origin)
        )

    def with_values(self, values) -> "MomentumWavepacket":
        return MomentumWavepacket(values, self.spacing, self.origin)


def riemann_silberstein(e: VectorFieldGrid, b: VectorFieldGrid) -> VectorFieldGrid:
    """``F = e + i b`` node by node."""
    if not e.same_grid(b):
        raise GridMismatch("electric and magnetic fields live on different grids")
    return e.with_values(e.values + 1j * b.values)


def _origin_phase(kvec, origin):
    return np.exp(-1j * np.tensordot(origin, kvec, axes=(0, 0)))


def to_momentum(field: VectorFieldGrid) -> MomentumWavepacket:
    h = field.spacing
    out = MomentumWavepacket(np.zeros_like(field.values), h, field.origin)
    xk = np.fft.fftn(field.values, axes=(1, 2, 3))
    return out.with_values(h**3 * _origin_phase(out.kvec(), field.origin) * xk)


def from_momentum(psi: MomentumWavepacket) -> VectorFieldGrid:
    h = psi.spacing
    phase = np.conj(_origin_phase(psi.kvec(), psi.origin))
    vals = np.fft.ifftn(psi.values * phase, axes=(1, 2, 3)) / h**3
    return VectorFieldGrid(vals, h, psi.origin)


def mean_energy(field: VectorFieldGrid) -> float:
    """Field energy ``(1/8 pi) sum |F|^2 h^3`` in erg."""
    return float(np.sum(np.abs(field.values) ** 2) * field.spacing**3 / (8.0 * math.pi))


def mean_energy_momentum(psi: MomentumWavepacket) -> float:
    """The same energy evaluated in momentum space."""
    return float(np.sum(np.abs(psi.values) ** 2) * psi.dk**3 / (8.0 * math.pi * (2.0 * math.pi) ** 3))


def project_transverse(psi: MomentumWavepacket) -> MomentumWavepacket:
    """Remove the longitudinal part ``k_hat (k_hat . Psi)``; the ``k = 0`` node is zeroed."""
    k = psi.kvec()
    k2 = np.sum(k * k, axis=0)
    safe = np.where(k2 > 0.0, k2, 1.0)
    kdot = np.sum(k * psi.values, axis=0)
    out = psi.values - k * (kdot / safe)
    out[:, k2 == 0.0] = 0.0
    return psi.with_values(out)


def transversality_residual(psi: MomentumWavepacket) -> float:
    """``||k . Psi|| / (||Psi|| * k_max)``; zero for a transverse packet."""
    k = psi.kvec()
    num = np.linalg.norm(np.sum(k * psi.values, axis=0))
    den = np.linalg.norm(psi.values) * np.max(np.abs(k))
    return float(num / den) if den > 0 else 0.0


def _phase_space_weight(psi: MomentumWavepacket, const: Constants) -> np.ndarray:
    kmag = psi.kmag()
    w = np.zeros_like(kmag)
    nz = kmag > 0.0
    w[nz] = psi.dk**3 / ((2.0 * math.pi) ** 3 * kmag[nz])
    return w / (8.0 * math.pi * const.hbar * const.c)


def norm(psi: MomentumWavepacket, const: Constants = GAUSSIAN) -> float:
    """Photon-number norm with the invariant ``d^3k / |k|`` measure (k = 0 excluded)."""
    w = _phase_space_weight(psi, const)
    return float(np.sum(w * np.sum(np.abs(psi.values) ** 2, axis=0)))


def normalize(psi: MomentumWavepacket, const: Constants = GAUSSIAN) -> MomentumWavepacket:
    nrm = norm(psi, const)
    if not nrm > 0.0:
        raise ZeroNorm("cannot normalize a wave function with zero norm")
    return psi.with_values(psi.values / math.sqrt(nrm))


def _check_normalized(psi, const, tol, label):
    nrm = norm(psi, const)
    if abs(nrm - 1.0) > tol:
        raise NotNormalized(f"{label} packet has norm {nrm!r}, expected 1")


def overlap(psi_f: MomentumWavepacket, psi_i: MomentumWavepacket, const: Constants = GAUSSIAN,
            tol: float = NORM_TOL) -> complex:
    """Transition amplitude ``<f|i>`` in momentum space."""
    if not psi_f.same_grid(psi_i):
        raise GridMismatch("initial and final packets live on different grids")
    _check_normalized(psi_f, const, tol, "final")
    _check_normalized(psi_i, const, tol, "initial")
    w = _phase_space_weight(psi_i, const)
    return complex(np.sum(w * np.sum(np.conj(psi_f.values) * psi_i.values, axis=0)))


def inverse_square_table(n: int, spacing: float, self_term: str = "lattice") -> np.ndarray:
    """``1/|r-s|^2`` by index offset, with the singular self term replaced.

    ``self_term="lattice"`` uses the zeta-corrected weight (third-order
    accurate); ``"cell_average"`` uses the mean of ``1/|u|^2`` over one cell.
    """
    try:
        self_weight = SELF_WEIGHTS[self_term]
    except KeyError:
        raise ValueError(f"self_term must be one of {sorted(SELF_WEIGHTS)}, got {self_term!r}") from None
    i = np.arange(n, dtype=float)
    d2 = i[:, None, None] ** 2 + i[None, :, None] ** 2 + i[None, None, :] ** 2
    d2[0, 0, 0] = 1.0
    table = 1.0 / (d2 * spacing**2)
    table[0, 0, 0] = self_weight / spacing**2
    return table


def overlap_position(field_f: VectorFieldGrid, field_i: VectorFieldGrid, const: Constants = GAUSSIAN,
                     chunk: int = kernels.DEFAULT_CHUNK, backend: str | None = None,
                     self_term: str = "lattice") -> complex:
    """Transition amplitude from position-space fields by direct double summation.

    Sums ``conj(F_f(r)) . F_i(s) / |r - s|^2`` over all node pairs, which costs
    O(n^6).  No normalization check is made here.
    """
    if not field_f.same_grid(field_i):
        raise GridMismatch("initial and final fields live on different grids")
    h = field_f.spacing
    table = inverse_square_table(field_f.n, h, self_term)
    total = kernels.lattice_pair_sum(field_f.values, field_i.values, table, chunk=chunk, backend=backend)
    return total * h**6 / (16.0 * math.pi**3 * const.hbar * const.c)


def transition_probability(psi_f: MomentumWavepacket, psi_i: MomentumWavepacket,
                           const: Constants = GAUSSIAN, tol: float = NORM_TOL) -> float:
    return abs(overlap(psi_f, psi_i, const, tol)) ** 2


def divergence_spectral(field: VectorFieldGrid) -> np.ndarray:
    psi = to_momentum(field)
    div_k = 1j * np.sum(psi.kvec() * psi.values, axis=0)
    phase = np.conj(_origin_phase(psi.kvec(), psi.origin))
    return np.fft.ifftn(div_k * phase) / field.spacing**3


def divergence_central(field: VectorFieldGrid) -> np.ndarray:
    """Periodic second-order central-difference divergence."""
    h = field.spacing
    v = field.values
    return sum((np.roll(v[i], -1, axis=i) - np.roll(v[i], 1, axis=i)) / (2.0 * h) for i in range(3))


def gaussian_curl_field(center, width: float, polarization, n: int, spacing: float,
                        origin=None) -> VectorFieldGrid:
    """Sample ``curl curl (u g)`` with ``g = exp(-|r - center|^2 / width^2)``.

    The result is divergence free and Gaussian localised around ``center``;
    near the centre it points along ``u``.
    """
    grid = VectorFieldGrid(np.zeros((3, n, n, n), dtype=complex), spacing, origin)
    u = np.asarray(polarization, dtype=complex).reshape(3)
    rho = grid.positions() - np.asarray(center, dtype=float).reshape(3, 1, 1, 1)
    rho2 = np.sum(rho * rho, axis=0)
    g = np.exp(-rho2 / width**2)
    udotr = np.tensordot(u, rho, axes=(0, 0))
    w2 = width**2
    vals = (4.0 / w2) * g * (u[:, None, None, None] * (1.0 - rho2 / w2) + udotr * rho / w2)
    return grid.with_values(vals)


def compact_curl_field(center, radius: float, polarization, n: int, spacing: float,
                       origin=None, order: int = 6) -> VectorFieldGrid:
    """``curl curl (u g)`` for the bump ``g = (1 - |r - center|^2 / radius^2)^order``.

    The field vanishes identically outside the ball of ``radius``, so two such
    fields with distant centres have strictly disjoint supports.
    """
    if order < 3:
        raise ValueError("order must be >= 3 for a continuous field")
    grid = VectorFieldGrid(np.zeros((3, n, n, n), dtype=complex), spacing, origin)
    u = np.asarray(polarization, dtype=complex).reshape(3)
    rho = grid.positions() - np.asarray(center, dtype=float).reshape(3, 1, 1, 1)
    s = np.sum(rho * rho, axis=0)
    base = np.clip(1.0 - s / radius**2, 0.0, None)
    # derivatives of G(s) = base**order with respect to s = |rho|^2
    g1 = -order / radius**2 * base ** (order - 1)
    g2 = order * (order - 1) / radius**4 * base ** (order - 2)
    udotr = np.tensordot(u, rho, axes=(0, 0))
    vals = -4.0 * g1 * u[:, None, None, None] + 4.0 * g2 * (rho * udotr - s * u[:, None, None, None])
    return grid.with_values(vals)


def gaussian_packet(center, width: float, polarization, n: int, spacing: float, origin=None,
                    const: Constants = GAUSSIAN) -> MomentumWavepacket:
    """Normalized transverse packet built from :func:`gaussian_curl_field`."""
    f = gaussian_curl_field(center, width, polarization, n, spacing, origin)
    return normalize(project_transverse(to_momentum(f)), const)
