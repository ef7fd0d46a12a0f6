"""Existence/nonexistence verdicts for the entire-space coupled system.

The decision tree maps a coupling matrix and problem parameters (space
dimension, nonlinearity degree p) to a verdict with a certificate: an exact
constant solution, a cone witness of failed strict copositivity, or a
verifying weight for the degree-(p-1) form.  Inputs strictly copositive but
without a weight certificate in the applicable p-range land in the open gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog

from .copositivity import Copositivity, Tolerance, classify_copositivity
from .errors import ParameterError, PreconditionError
from .forms import ConeVector, SymMatrix, cone_power, fsum_terms
from .mu_search import (
    MuCertificate,
    MuSearchBudget,
    constructive_mu_n2,
    find_mu,
    sufficient_condition,
    verify_mu,
)

CONSTANT_RESIDUAL_TOL = 1e-10

OPEN_GAP_NOTE = (
    "undecided: the matrix is strictly copositive but no verifying weight for "
    "the degree-(p-1) form was found; for dimension >= 3 with 3 or more "
    "components, nonexistence under strict copositivity alone is an open case"
)


class SolvabilityKind(Enum):
    EXISTS = "ExistsNontrivial"
    NO_NONTRIVIAL = "NoNontrivial"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ProblemParams:
    """Space dimension and nonlinearity degree of the system.

    p must exceed 2 and, for dim >= 3, stay below the critical exponent
    2*dim/(dim-2); the comparison is exact (floats are compared as rationals).
    """

    dim: int
    p: float = 4.0

    def __post_init__(self) -> None:
        if int(self.dim) != self.dim or self.dim < 1:
            raise ParameterError(f"dimension must be a positive integer, got {self.dim}")
        if not self.p > 2:
            raise ParameterError(f"p must exceed 2, got {self.p}")
        if self.dim >= 3 and not Fraction(self.p) < Fraction(2 * self.dim, self.dim - 2):
            raise ParameterError(
                f"p={self.p} is not subcritical for dimension {self.dim}"
            )


@dataclass(frozen=True)
class ConstantSolutionCertificate:
    """Exact constant field u with componentwise equation residual below tol."""

    u: ConeVector
    support: tuple[int, ...]
    residual_inf: float


@dataclass(frozen=True)
class SufficientConditionCertificate:
    """Row-dominance constant kappa_0 certifying mu = (1, ..., 1)."""

    kappa0: float


@dataclass(frozen=True)
class SolvabilityVerdict:
    kind: SolvabilityKind
    reason: str
    certificate: object | None = None
    boundary_case: bool = False
    note: str = ""
    audit: object | None = None


def _positive_kernel_vector(sub: np.ndarray) -> np.ndarray | None:
    """Strictly positive vector in ker(sub), scaled to max component 1."""
    ns = null_space(sub, rcond=1e-12)
    if ns.size == 0:
        return None
    if ns.shape[1] == 1:
        v = ns[:, 0]
        if np.all(v > 0) or np.all(v < 0):
            v = np.abs(v)
            if v.min() > 1e-9 * v.max():
                return v / v.max()
        return None
    # Higher-dimensional kernel: look for a componentwise >= 1 combination.
    res = linprog(
        np.zeros(ns.shape[1]),
        A_ub=-ns,
        b_ub=-np.ones(ns.shape[0]),
        bounds=[(None, None)] * ns.shape[1],
        method="highs",
    )
    if res.status != 0:
        return None
    v = ns @ res.x
    return v / v.max()


def _constant_residual(A: np.ndarray, c_full: np.ndarray, p: float) -> np.ndarray:
    """Componentwise residual of the constant field u = c^(2/p)."""
    factors = cone_power(c_full, 1.0 - 2.0 / p)
    return np.array([factors[i] * fsum_terms(A[i] * c_full) for i in range(len(c_full))])


def constant_solution(B: SymMatrix, p: float) -> ConstantSolutionCertificate | None:
    """Exact constant solution from a positive support-restricted kernel vector.

    Scans supports by size; a strictly positive c with B_S c = 0 yields the
    constant field u = c^(2/p) on S (zero off S), which solves the system
    exactly.  A zero diagonal entry is the singleton case.
    """
    if not p > 2:
        raise ParameterError(f"p must exceed 2, got {p}")
    from .copositivity import _supports

    A = B.entries
    n = B.n
    for support in _supports(n):
        idx = list(support)
        if len(idx) == 1:
            if A[idx[0], idx[0]] != 0.0:
                continue
            c_sub = np.array([1.0])
        else:
            c_sub = _positive_kernel_vector(A[np.ix_(idx, idx)])
            if c_sub is None:
                continue
            # Snap to short decimals when that does not hurt the kernel residual.
            snapped = np.round(c_sub, 12)
            if np.all(snapped > 0):
                sub = A[np.ix_(idx, idx)]
                if np.max(np.abs(sub @ snapped)) <= np.max(np.abs(sub @ c_sub)):
                    c_sub = snapped
        c_full = np.zeros(n)
        c_full[idx] = c_sub
        residuals = _constant_residual(A, c_full, p)
        if np.max(np.abs(residuals)) < CONSTANT_RESIDUAL_TOL:
            u = cone_power(c_full, 2.0 / p)
            return ConstantSolutionCertificate(
                u=ConeVector(u),
                support=tuple(support),
                residual_inf=float(np.max(np.abs(residuals))),
            )
    return None


def _within_weighted_range(params: ProblemParams) -> bool:
    """p-range in which a weight certificate implies nonexistence."""
    if params.dim <= 2:
        return True
    return Fraction(params.p) <= Fraction(2 * params.dim - 2, params.dim - 2)


def classify_solvability(
    B: SymMatrix,
    params: ProblemParams,
    budget: MuSearchBudget = MuSearchBudget(),
    tol: Tolerance = Tolerance(),
) -> SolvabilityVerdict:
    """Decision tree for existence of nontrivial nonnegative entire solutions.

    Order: exact constant solutions, failed strict copositivity (existence),
    the low-dimension strict-copositivity route, the two-component
    constructive weight, the row-dominance bound, and finally the cutting
    plane weight search; anything left is the open gap.
    """
    diag = np.diag(B.entries)
    if np.any(diag < 0):
        raise PreconditionError("negative diagonal entries are outside scope")
    cubic = params.p == 4.0

    cs = constant_solution(B, params.p)
    if cs is not None:
        reason = "ConstantSolution"
        if len(cs.support) == 1 and diag[cs.support[0]] == 0.0:
            reason = "ZeroDiagonal"
        return SolvabilityVerdict(SolvabilityKind.EXISTS, reason, cs)

    verdict = classify_copositivity(B, tol)
    strictly_copositive = verdict.min_value > 0
    if not strictly_copositive:
        return SolvabilityVerdict(
            SolvabilityKind.EXISTS,
            "Thm1.1" if cubic else "Thm4.1",
            certificate=verdict.witness,
            boundary_case=verdict.boundary_case,
        )
    boundary = verdict.boundary_case

    if params.dim <= 2 and Fraction(params.p) <= 4:
        return SolvabilityVerdict(
            SolvabilityKind.NO_NONTRIVIAL,
            "Thm1.6" if cubic else "Thm4.6",
            boundary_case=boundary,
        )

    weighted_ok = _within_weighted_range(params)

    if B.n == 2 and weighted_ok:
        mu = constructive_mu_n2(B, params.p)
        cert = verify_mu(B, mu, params.p, resolution=budget.resolution, seed=budget.seed)
        if isinstance(cert, MuCertificate):
            return SolvabilityVerdict(
                SolvabilityKind.NO_NONTRIVIAL,
                "Cor1.3" if cubic else "Cor4.5",
                certificate=cert,
                boundary_case=boundary,
            )

    if weighted_ok:
        kappa0 = sufficient_condition(B)
        if kappa0 is not None:
            return SolvabilityVerdict(
                SolvabilityKind.NO_NONTRIVIAL,
                "Prop1.7" if cubic else "Prop4.7",
                certificate=SufficientConditionCertificate(kappa0),
                boundary_case=boundary,
            )
        outcome = find_mu(B, params.p, budget)
        if isinstance(outcome, MuCertificate):
            return SolvabilityVerdict(
                SolvabilityKind.NO_NONTRIVIAL,
                "Prop1.2" if cubic else "Prop4.3",
                certificate=outcome,
                boundary_case=boundary,
            )
        return SolvabilityVerdict(
            SolvabilityKind.UNKNOWN,
            "OpenGap",
            boundary_case=boundary,
            note=OPEN_GAP_NOTE,
            audit=outcome,
        )

    return SolvabilityVerdict(
        SolvabilityKind.UNKNOWN,
        "OpenGap",
        boundary_case=boundary,
        note=OPEN_GAP_NOTE,
    )
