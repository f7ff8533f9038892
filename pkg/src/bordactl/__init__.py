"""Exact Borda control: scoring, winners, control solving, reductions."""

from .bruteforce import SearchBudgetExceeded, SolveResult, solve_control_bruteforce
from .control import (
    ControlInstance,
    ControlKind,
    InvalidSolutionError,
    apply_solution,
    verify,
    verify_explain,
)
from .election import (
    Election,
    ElectionError,
    MalformedVoteError,
    Rule,
    Vote,
    WinnerModel,
    diff,
    project_vote,
    score_in_vote,
    score_str,
    total_score,
    total_scores,
    winners,
)
from .fpt import (
    FptApplicabilityError,
    solve_1ccac,
    solve_1ccdc,
    solve_ccav_fpt,
    solve_ccdv_fpt,
)
from .graphs import Graph, closed_neighborhood, solve_dominating_set
from .reductions import REDUCTIONS, ReductionResult, lift_up_to_av

__version__ = "0.1.0"

__all__ = [
    "ControlInstance",
    "ControlKind",
    "Election",
    "ElectionError",
    "FptApplicabilityError",
    "Graph",
    "InvalidSolutionError",
    "MalformedVoteError",
    "REDUCTIONS",
    "ReductionResult",
    "Rule",
    "SearchBudgetExceeded",
    "SolveResult",
    "Vote",
    "WinnerModel",
    "apply_solution",
    "closed_neighborhood",
    "diff",
    "lift_up_to_av",
    "project_vote",
    "score_in_vote",
    "score_str",
    "solve_1ccac",
    "solve_1ccdc",
    "solve_ccav_fpt",
    "solve_ccdv_fpt",
    "solve_control_bruteforce",
    "solve_dominating_set",
    "total_score",
    "total_scores",
    "verify",
    "verify_explain",
    "winners",
]
