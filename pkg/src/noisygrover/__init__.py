"""Floquet analysis of Grover search under frozen systematic gate noise."""

from .core import (
    DenseOperator,
    DimensionError,
    Statevector,
    averaged_half_cut_entropy,
    entanglement_entropy,
    hermitian_eigs,
    page_entropy,
    principal_branch,
    unitary_eigs,
)
from .circuit import (
    GateSpec,
    GroverCircuit,
    NoiseRealization,
    abstract_grover,
    build_grover_circuit,
    decompose_mcx,
    expected_gate_counts,
    grover_angle,
    sample_noise,
)
from .spectral import (
    QuasiSpectrum,
    find_delta_c_gap,
    gap_at,
    noiseless_gap,
    quasi_spectrum,
    special_bulk_gap,
)
from .heff import (
    EffHamiltonianReport,
    build_h_eff,
    bulk_validation_distance,
    density_fit,
    e0,
    e0_closed_form,
    element_structure,
    expected_trace_per_dim,
    kl_divergence,
    level_spacing_ratios,
)
from .special import (
    SpecialBlock,
    estimate_delta_c_comp,
    gap_squared,
    special_block,
    special_phases_model,
    theta_prime,
)
from .dynamics import (
    AnalyticPrediction,
    DynamicsTrace,
    analytic_prediction,
    estimate_p_b,
    evolve_probabilities,
    measure_p_b,
    noiseless_target_probability,
)
from .config import SweepConfig, load_config
from .runner import run

__version__ = "0.1.0"
