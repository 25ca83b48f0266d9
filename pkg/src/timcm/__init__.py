"""Secure symmetric degrees of freedom for partially connected interference networks."""

from .achievability import (
    InfeasibleTopology,
    Schedule,
    ScheduleError,
    Slot,
    best_secure_partition,
    fractional_sis_bound,
    nonsecure_fractional_is_bound,
    schedule_from_weights,
    secure_tdma_schedule,
)
from .converse import combined_upper_bound, mu, mu_tilde, thm4_upper_bound, thm5_upper_bound
from .feasibility import check_feasibility
from .kernels import BACKEND
from .report import AnalysisReport, InvariantError, analyze, classify_all
from .secure_sets import enumerate_secure_independent_sets, find_jammer_set, is_independent_set
from .topology import Topology, TopologyError, canonical_form, enumerate_topologies, parse_topology, serialize_topology
from .verifier import brute_force_best_schedule, symmetric_rate, verify_schedule

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BACKEND",
    "InfeasibleTopology",
    "InvariantError",
    "Schedule",
    "ScheduleError",
    "Slot",
    "Topology",
    "TopologyError",
    "analyze",
    "best_secure_partition",
    "brute_force_best_schedule",
    "canonical_form",
    "check_feasibility",
    "classify_all",
    "combined_upper_bound",
    "enumerate_secure_independent_sets",
    "enumerate_topologies",
    "find_jammer_set",
    "fractional_sis_bound",
    "is_independent_set",
    "mu",
    "mu_tilde",
    "nonsecure_fractional_is_bound",
    "parse_topology",
    "schedule_from_weights",
    "secure_tdma_schedule",
    "serialize_topology",
    "symmetric_rate",
    "thm4_upper_bound",
    "thm5_upper_bound",
    "verify_schedule",
]
