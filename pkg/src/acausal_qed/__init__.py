"""Numerical tools for acausal effects in quantum electrodynamics."""
from .correlations import (
    CoincidenceAmplitudes,
    TwoPhotonState,
    coincidence_probability,
    interference_amplitudes_to_state,
    two_photon_stats,
)
from .propagator import RegulatedLine, SpacetimePoint, offcone_im, oncone_re_mollified, tline_wightman
from .spectral import CorrelationKernel, SampledSignal, decompose, decompose_kernel, intensity
from .transmission_line import (
    ChargeProfile,
    LineSpec,
    action_displaced,
    beta,
    dalembert_evolve,
    decay_fit,
    line_for_impedance,
    line_params,
)
from .units import UnitSystem, constants, fine_structure, ohms_to_gaussian, vacuum_impedance
from .wavepacket import (
    MomentumWavepacket,
    VectorFieldGrid,
    from_momentum,
    gaussian_packet,
    mean_energy,
    normalize,
    overlap,
    overlap_position,
    project_transverse,
    riemann_silberstein,
    to_momentum,
    transition_probability,
)

__version__ = "0.1.0"
