"""Lorentz boosts of spin-1/2 particles and partition-dependent linear entropies."""

from ._relqi import (
    DensityMatrix,
    LorentzTransform,
    MomentumLabel,
    NumericalError,
    PartitionSpec,
    Spin,
    StateVector,
    all_partitions,
    amplitude_distance,
    apply,
    axis_angle,
    boost_along_axis,
    boost_state,
    cli,
    compose,
    entropy_sweep,
    friis_state,
    from_state,
    inner_product,
    invariance_scan,
    inverse,
    linear_entropy,
    make_state,
    partial_trace,
    purity,
    rotation_about_axis,
    run_self_checks,
    standard_boost,
    state_entropy,
    state_from_json,
    state_to_json,
    su2_lift,
    wigner_rotation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
