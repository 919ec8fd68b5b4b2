"""Numeric tolerances, centralized so tests and docs agree with the code."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # structural invariants
    reciprocity_rel: float = 1e-12       # |m_ij * m_ji - 1| bound for valid matrices
    weight_sum_abs: float = 1e-12        # |sum(weights) - 1| bound

    # power iteration (dominant eigenpair)
    power_lambda_abs: float = 1e-13      # successive lambda estimates
    power_residual_rel: float = 1e-12    # ||Mw - lambda w||_1 / lambda
    power_max_iter: int = 100_000

    # consistency
    cardinal_rel: float = 1e-9           # default rel_tol for the triple test
    cr_threshold: float = 0.1            # Saaty acceptability bound

    # parsing
    csv_reciprocity_rel: float = 5e-3    # published tables are 3-decimal rounded
    scale_snap_rel: float = 2e-3         # "0.333" -> 1/3 snapping


TOL = Tolerances()
