"""Partition-function laboratory.

Partition vectors and the fixed/general-width partition functions, boolean
functions with parameters and the trial operator, arithmetic and indicator
circuits, exact minimum-gate-count fitting with proper-sampling-set
decision procedures, and a scenario harness that verifies the constructive
results at desk scale.
"""

from .bits import (
    BitArray,
    NumberSet,
    SamplingSet,
    TruthTable,
    cut_bits,
    cut_bits_general,
    encode_numbers,
    table_from_evaluator,
)
from .circuit import (
    CONST0,
    CONST1,
    Circuit,
    CircuitBundle,
    Gate,
    ParametricCircuit,
    Wire,
    build_adder,
    build_ge,
    build_indicator,
    build_parametric_union,
    build_phi_circuit,
    build_subpartition_circuit,
    build_subtractor,
    build_zero_test,
    canonical_encode,
    circuit_from_file,
    circuit_to_file,
    eval_circuit,
    node_count,
    phi_input_for_numbers,
    truth_table,
    xor_circuit,
)
from .errors import (
    CapacityError,
    DimensionError,
    DomainError,
    ParlabError,
    RangeError,
)
from .estimator import FittingExtremumClassifier
from .fepss import (
    BoundAudit,
    FESolution,
    PSSReport,
    WitnessRequirementReport,
    bound_audit,
    fe_solve,
    fe_solve_fn,
    fe_solve_naive,
    general_length_lower,
    mpss_search,
    pss_check,
    pss_from_circuit,
    witness_requirement_check,
)
from .paramfn import (
    ParamBoolFn,
    ParameterList,
    phi_partition,
    switchable_gate,
    trial,
)
from .partition import (
    PartitionVector,
    PartitionVectorSpace,
    WitnessChain,
    enumerate_pv,
    gpar,
    par_bits,
    par_range,
    random_pv_order,
    signed_sum,
    spar,
    unique_omega,
    verify_uniqueness,
    witness_chain,
)
from .scenarios import RunReport, run_scenario, run_suite, write_report

__version__ = "0.1.0"
