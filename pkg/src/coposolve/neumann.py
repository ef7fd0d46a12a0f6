"""Finite-difference realization of the Neumann problem on a box.

Second-order uniform grid with mirror (ghost-node) closure of the Laplacian.
The discrete energy uses cell-midpoint differences for the gradient term and
trapezoid weights for the mass terms, which makes the assembled Euler-Lagrange
residual exactly the weighted gradient of the discrete energy.  Critical
points are located by Armijo gradient descent from a family of seed fields
(constants along a negative direction, separated bumps, and homotopy
mixtures), followed by a damped Newton polish of the discrete system.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .copositivity import Tolerance, simplex_min_quadratic
from .errors import CapacityError, NotApplicableError, ParameterError
from .forms import ConeVector, SymMatrix, cone_power, fsum_terms, quadratic_form
from .solvability import ConstantSolutionCertificate, constant_solution


@dataclass(frozen=True)
class Grid:
    """Uniform tensor grid on [0, extent]^dim with Neumann ghost closure."""

    dim: int
    extent: float = 1.0
    points_per_side: int = 129

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise ParameterError(f"grid dimension must be 1 or 2, got {self.dim}")
        if not self.extent > 0:
            raise ParameterError(f"box side must be positive, got {self.extent}")
        if self.points_per_side < 17:
            raise ParameterError(
                f"need at least 17 points per side, got {self.points_per_side}"
            )

    @property
    def h(self) -> float:
        return self.extent / (self.points_per_side - 1)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_side,) * self.dim

    @property
    def node_count(self) -> int:
        return self.points_per_side ** self.dim

    def axis(self) -> np.ndarray:
        return np.linspace(0.0, self.extent, self.points_per_side)

    def weights_1d(self) -> np.ndarray:
        w = np.full(self.points_per_side, self.h)
        w[0] = w[-1] = self.h / 2.0
        return w

    def weights(self) -> np.ndarray:
        w = self.weights_1d()
        if self.dim == 1:
            return w
        return np.outer(w, w)

    @property
    def volume(self) -> float:
        return self.extent ** self.dim


@dataclass(frozen=True)
class FieldTuple:
    """Tuple of scalar nodal fields, one per system component."""

    components: np.ndarray  # shape (n, *grid.shape)

    def __post_init__(self) -> None:
        arr = np.array(self.components, dtype=float)
        if arr.ndim < 2:
            raise ParameterError("field tuple needs shape (n, nodes...)")
        object.__setattr__(self, "components", arr)

    @property
    def n(self) -> int:
        return self.components.shape[0]

    def is_nonnegative(self, tol: float = 0.0) -> bool:
        return bool(self.components.min() >= -tol)

    @property
    def amplitude(self) -> float:
        return float(np.max(np.abs(self.components)))


@dataclass(frozen=True)
class EnergyReport:
    energy: float
    dirichlet: float  # integral of |grad u|^2 + |u^-|^2
    phi: float
    residual_inf: float
    identity_defects: tuple[float, ...]


@dataclass(frozen=True)
class NeumannSolution:
    field: FieldTuple
    report: EnergyReport
    classification: str  # "Constant" | "Nonconstant"
    seed_provenance: str


@dataclass(frozen=True)
class TrivialOnly:
    """Every seed collapsed below the nontriviality threshold."""

    seed_outcomes: tuple[str, ...]


@dataclass(frozen=True)
class SolveInconclusive:
    """No seed was accepted and at least one did not collapse cleanly."""

    best_field: FieldTuple
    best_residual: float
    seed_outcomes: tuple[str, ...]


@dataclass(frozen=True)
class SolveConfig:
    residual_tol: float = 1e-8
    negativity_tol: float = 1e-10
    nontriviality_threshold: float = 1e-4
    seed_count: int = 12
    max_descent_steps: int = 1200
    max_newton_steps: int = 60


def _laplacian(u: np.ndarray, h: float) -> np.ndarray:
    """Ghost-node Neumann Laplacian (mirror reflection across each face)."""
    if u.ndim == 1:
        padded = np.pad(u, 1, mode="reflect")
        return (padded[:-2] - 2.0 * u + padded[2:]) / h**2
    out = np.zeros_like(u)
    px = np.pad(u, ((1, 1), (0, 0)), mode="reflect")
    out += px[:-2, :] - 2.0 * u + px[2:, :]
    py = np.pad(u, ((0, 0), (1, 1)), mode="reflect")
    out += py[:, :-2] - 2.0 * u + py[:, 2:]
    return out / h**2


def _gradient_energy(u: np.ndarray, grid: Grid) -> float:
    """Cell-midpoint quadrature of the Dirichlet integrand of one component."""
    h = grid.h
    if grid.dim == 1:
        return float(np.sum(np.diff(u) ** 2)) / h
    w = grid.weights_1d()
    dx = np.diff(u, axis=0)
    dy = np.diff(u, axis=1)
    return float((dx**2).sum(axis=0) @ w + w @ (dy**2).sum(axis=1)) / h


def _nonlinear_term(A: np.ndarray, U: np.ndarray, p: float) -> np.ndarray:
    """Componentwise sum_j beta_ij (u_j^+)^(p/2) (u_i^+)^(p/2-1)."""
    plus = np.maximum(U, 0.0)
    powered = cone_power(plus, p / 2.0)
    lowered = cone_power(plus, p / 2.0 - 1.0)
    coupled = np.tensordot(A, powered, axes=1)
    return lowered * coupled


def _residual(A: np.ndarray, U: np.ndarray, p: float, grid: Grid) -> np.ndarray:
    lap = np.stack([_laplacian(U[i], grid.h) for i in range(U.shape[0])])
    return -lap + np.minimum(U, 0.0) - _nonlinear_term(A, U, p)


def _energy_value(A: np.ndarray, U: np.ndarray, p: float, grid: Grid) -> float:
    W = grid.weights()
    dirichlet = sum(_gradient_energy(U[i], grid) for i in range(U.shape[0]))
    dirichlet += float(np.sum(W * np.minimum(U, 0.0) ** 2))
    powered = cone_power(np.maximum(U, 0.0), p / 2.0)
    flat = powered.reshape(U.shape[0], -1)
    weighted = flat * W.ravel()
    overlap = weighted @ flat.T
    phi = fsum_terms(A * overlap) / p
    return dirichlet / 2.0 - phi


def energy(B: SymMatrix, u: FieldTuple, p: float, grid: Grid) -> EnergyReport:
    """Energy, Euler-Lagrange residual and per-component integral identities."""
    if not p > 2:
        raise ParameterError(f"p must exceed 2, got {p}")
    U = u.components
    if U.shape[0] != B.n or U.shape[1:] != grid.shape:
        raise ParameterError(
            f"field shape {U.shape} does not match n={B.n}, grid {grid.shape}"
        )
    A = B.entries
    W = grid.weights()
    dirichlet = sum(_gradient_energy(U[i], grid) for i in range(B.n))
    dirichlet += float(np.sum(W * np.minimum(U, 0.0) ** 2))
    powered = cone_power(np.maximum(U, 0.0), p / 2.0)
    flat = powered.reshape(B.n, -1)
    weighted = flat * W.ravel()
    overlap = weighted @ flat.T
    phi = fsum_terms(A * overlap) / p
    residual = _residual(A, U, p, grid)
    nonlinear = _nonlinear_term(A, U, p)
    defects = tuple(
        float(np.sum(W * nonlinear[i])) for i in range(B.n)
    )
    return EnergyReport(
        energy=dirichlet / 2.0 - phi,
        dirichlet=dirichlet,
        phi=phi,
        residual_inf=float(np.max(np.abs(residual))),
        identity_defects=defects,
    )


def find_direction_d(B: SymMatrix, p: float, tol: Tolerance = Tolerance()) -> ConeVector:
    """Interior cone direction d with b(d^(p/2)) < 0, normalized to max 1.

    Requires the matrix to fail strict copositivity while admitting no exact
    constant solution; the simplex minimizer of b is pushed to the interior
    (components at least 1e-4 of the largest) and mapped through the inverse
    power.
    """
    if constant_solution(B, p) is not None:
        raise NotApplicableError("ConstantSolutionExists")
    minimum = simplex_min_quadratic(B)
    if minimum.min_value > 0:
        raise NotApplicableError("StrictlyCopositive")
    c_star = minimum.argmin.components
    center = np.full(B.n, 1.0 / B.n)
    for blend in (0.0, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2):
        c = (1.0 - blend) * c_star + blend * center
        c = np.maximum(c, 1e-4 * c.max())
        c = c / c.sum()
        if quadratic_form(B, c).value < 0:
            d = cone_power(c, 2.0 / p)
            return ConeVector(d / d.max())
    raise NotApplicableError("NoInteriorNegativeDirection")


def _bump_intervals(n: int, extent: float) -> list[tuple[float, float]]:
    if n == 1:
        return [(0.1 * extent, 0.9 * extent)]
    width = 0.8 * extent / n
    gap = 0.2 * extent / (n - 1)
    return [(i * (width + gap), i * (width + gap) + width) for i in range(n)]


def bump_profiles(B: SymMatrix, grid: Grid) -> np.ndarray:
    """Smooth disjoint-support bump per component: cos^2 on its own interval.

    Profiles live along the first axis (constant across the second in 2d),
    satisfy 0 <= phi_i <= 1 and phi_i phi_j = 0 exactly on the grid nodes.
    """
    n = B.n
    x = grid.axis()
    intervals = _bump_intervals(n, grid.extent)
    profiles = []
    for a, b in intervals:
        inside = (x >= a) & (x <= b)
        if int(inside.sum()) < 4:
            raise CapacityError(
                f"grid too coarse for {n} disjoint bumps of >= 4 nodes each"
            )
        phi = np.zeros_like(x)
        phi[inside] = np.cos(np.pi * (x[inside] - (a + b) / 2.0) / (b - a)) ** 2
        if grid.dim == 2:
            phi = np.tile(phi[:, None], (1, grid.points_per_side))
        profiles.append(phi)
    return np.stack(profiles)


def homotopy_mixture(c: np.ndarray, t: float, profiles: np.ndarray) -> np.ndarray:
    """Field (1-t) c + t (c_1 phi_1, ..., c_n phi_n) for a cone point c."""
    c = np.asarray(c, dtype=float)
    shape = (1,) * (profiles.ndim - 1)
    cb = c.reshape((-1,) + shape)
    return cb * ((1.0 - t) + t * profiles)


def _ridge_scale(A: np.ndarray, V: np.ndarray, p: float, grid: Grid) -> float:
    """Amplitude s maximizing E(sV) along the ray, or 1.0 when E has no ridge."""
    quad = sum(_gradient_energy(V[i], grid) for i in range(V.shape[0]))
    quad += float(np.sum(grid.weights() * np.minimum(V, 0.0) ** 2))
    powered = cone_power(np.maximum(V, 0.0), p / 2.0)
    flat = powered.reshape(V.shape[0], -1)
    overlap = (flat * grid.weights().ravel()) @ flat.T
    phi = fsum_terms(A * overlap) / p
    if phi <= 0 or quad <= 0:
        return 1.0
    return float((quad / (p * phi)) ** (1.0 / (p - 2.0)))


def theta_seeds(B: SymMatrix, d: ConeVector, grid: Grid, count: int,
                p: float = 4.0) -> list[tuple[str, FieldTuple]]:
    """Seed fields sampling the competitor family, with provenance labels.

    Constants along d, per-component and combined separated bumps at their
    ridge amplitude, and homotopy mixtures between boundary rays and bump
    images at t in {1/4, 1/2, 3/4}.
    """
    n = B.n
    if not d.strictly_positive:
        raise ParameterError("direction d must be interior to the cone")
    if count < n + 2:
        raise ParameterError(f"count must be at least n + 2 = {n + 2}")
    A = B.entries
    profiles = bump_profiles(B, grid)
    dv = d.components / d.components.max()
    ones_shape = (n,) + grid.shape

    seeds: list[tuple[str, FieldTuple]] = []

    def constant_field(scale: float) -> np.ndarray:
        U = np.zeros(ones_shape)
        for i in range(n):
            U[i] = scale * dv[i]
        return U

    for lam in (0.5, 1.0, 2.0):
        seeds.append((f"constant lambda={lam}", FieldTuple(constant_field(lam))))

    scales = []
    for i in range(n):
        V = np.zeros(ones_shape)
        V[i] = profiles[i]
        s = _ridge_scale(A, V, p, grid)
        scales.append(s)
        # Slightly below the ridge: descent from the exact ridge maximum is a
        # coin flip between collapse and escape.
        seeds.append((f"bump component={i} amplitude={0.9 * s:.4g}", FieldTuple(0.9 * s * V)))

    combined = np.stack([scales[i] * profiles[i] for i in range(n)])
    seeds.append(("combined bumps x0.9", FieldTuple(0.9 * combined)))
    seeds.append(("combined bumps x1.5", FieldTuple(1.5 * combined)))

    ray_scale = 1.5 * max(scales)
    rays = [("d", dv * ray_scale)]
    for i in range(n):
        e = np.zeros(n)
        e[i] = ray_scale
        rays.append((f"e{i}", e))
    for name, c in rays:
        for t in (0.25, 0.5, 0.75):
            seeds.append(
                (f"mixture ray={name} t={t}", FieldTuple(homotopy_mixture(c, t, profiles)))
            )

    extra = 3.0
    while len(seeds) < count:
        seeds.append((f"constant lambda={extra}", FieldTuple(constant_field(extra))))
        extra += 1.0
    return seeds[:count]


def _laplacian_matrix_1d(m: int, h: float) -> sp.csr_matrix:
    main = np.full(m, -2.0)
    upper = np.ones(m - 1)
    lower = np.ones(m - 1)
    upper[0] = 2.0
    lower[-1] = 2.0
    return sp.diags([lower, main, upper], offsets=[-1, 0, 1], format="csr") / h**2


def _laplacian_matrix(grid: Grid) -> sp.csr_matrix:
    L1 = _laplacian_matrix_1d(grid.points_per_side, grid.h)
    if grid.dim == 1:
        return L1
    eye = sp.identity(grid.points_per_side, format="csr")
    return (sp.kron(L1, eye) + sp.kron(eye, L1)).tocsr()


def _newton_jacobian(A: np.ndarray, U: np.ndarray, p: float,
                     lap: sp.csr_matrix) -> sp.csr_matrix:
    n = U.shape[0]
    m = lap.shape[0]
    flat = U.reshape(n, -1)
    plus = np.maximum(flat, 0.0)
    lowered = cone_power(plus, p / 2.0 - 1.0)
    powered = cone_power(plus, p / 2.0)
    coupled = A @ powered
    e2 = p / 2.0 - 2.0
    if e2 == 0.0:
        z = (flat > 0).astype(float)
    else:
        z = np.zeros_like(flat)
        mask = flat > 0
        z[mask] = np.exp(e2 * np.log(flat[mask]))
    blocks: list[list[sp.spmatrix | None]] = []
    for i in range(n):
        row: list[sp.spmatrix | None] = []
        for j in range(n):
            diag = -(p / 2.0) * A[i, j] * lowered[i] * lowered[j]
            if i == j:
                diag = diag - (p / 2.0 - 1.0) * z[i] * coupled[i]
                diag = diag + (flat[i] < 0).astype(float)
            row.append(sp.diags(diag, format="csr"))
        blocks.append(row)
    local = sp.bmat(blocks, format="csr")
    return (sp.block_diag([-lap] * n, format="csr") + local).tocsr()


def _newton_polish(A: np.ndarray, U0: np.ndarray, p: float, grid: Grid,
                   config: SolveConfig) -> tuple[np.ndarray, float, bool]:
    """Damped Newton on the discrete Euler-Lagrange system.

    Returns (field, residual_inf, converged).
    """
    lap = _laplacian_matrix(grid)
    U = U0.copy()
    r = _residual(A, U, p, grid)
    rnorm = float(np.max(np.abs(r)))
    for _ in range(config.max_newton_steps):
        # Iterate to the improvement floor: degenerate descents to zero must
        # shrink well below the nontriviality threshold, not stop at it.
        if rnorm == 0.0 or not np.isfinite(rnorm):
            break
        jac = _newton_jacobian(A, U, p, lap)
        try:
            delta = splu(jac.tocsc()).solve(-r.reshape(U.shape[0], -1).ravel())
        except RuntimeError:
            return U, rnorm, False
        if not np.all(np.isfinite(delta)):
            return U, rnorm, False
        step = 1.0
        improved = False
        while step > 1e-6:
            cand = U + step * delta.reshape(U.shape)
            rc = _residual(A, cand, p, grid)
            rcnorm = float(np.max(np.abs(rc)))
            if np.isfinite(rcnorm) and rcnorm < (1.0 - 0.25 * step) * rnorm:
                U, r, rnorm = cand, rc, rcnorm
                improved = True
                break
            step *= 0.5
        if not improved:
            break
        if np.max(np.abs(U)) > 1e8:
            return U, rnorm, False
    return U, rnorm, rnorm < config.residual_tol


def _descend_energy(A: np.ndarray, U0: np.ndarray, p: float, grid: Grid,
                    config: SolveConfig) -> tuple[np.ndarray, float, float, bool]:
    """Armijo gradient descent on the energy.

    Returns (best iterate, its gradient norm, initial gradient norm, escaped).
    The best iterate is where the gradient norm dipped lowest (the
    saddle-passage candidate).  The energy is unbounded below, so a
    trajectory that falls past every seed scale is flagged as escaped: it
    carries no critical point beyond the dip already recorded.
    """
    W = grid.weights()
    U = U0.copy()
    E = _energy_value(A, U, p, grid)
    grad = W * _residual(A, U, p, grid)
    gnorm = float(np.sqrt(np.sum(grad**2)))
    best_U, best_g = U.copy(), gnorm
    step = 0.1 / max(1.0, gnorm)
    floor = 1e-10 * max(1.0, float(np.max(np.abs(U0))))
    g0 = gnorm
    energy_floor = -30.0 * (1.0 + abs(E))
    amp_ceiling = 8.0 * (1.0 + float(np.max(np.abs(U0))))
    escaped = False
    for _ in range(config.max_descent_steps):
        if gnorm < floor:
            break
        cand = U - step * grad
        Ec = _energy_value(A, cand, p, grid)
        if Ec < E - 1e-4 * step * gnorm**2:
            U, E = cand, Ec
            grad = W * _residual(A, U, p, grid)
            gnorm = float(np.sqrt(np.sum(grad**2)))
            if gnorm < best_g:
                best_U, best_g = U.copy(), gnorm
            step *= 1.3
            if E < energy_floor or np.max(np.abs(U)) > amp_ceiling:
                escaped = True
                break
        else:
            step *= 0.5
            if step < 1e-14:
                break
    return best_U, best_g, g0, escaped


def _constant_shortcut(B: SymMatrix, cert: ConstantSolutionCertificate,
                       p: float, grid: Grid) -> NeumannSolution:
    U = np.stack([np.full(grid.shape, v) for v in cert.u.components])
    field = FieldTuple(U)
    report = energy(B, field, p, grid)
    return NeumannSolution(
        field=field,
        report=report,
        classification="Constant",
        seed_provenance="constant-kernel shortcut",
    )


def mountain_pass_solve(
    B: SymMatrix,
    p: float,
    grid: Grid,
    config: SolveConfig = SolveConfig(),
    initial_fields: list[tuple[str, FieldTuple]] | None = None,
) -> NeumannSolution | TrivialOnly | SolveInconclusive:
    """Locate a nontrivial nonnegative critical point of the discrete energy.

    Pipeline: exact constant shortcut; otherwise descend from each seed field
    and Newton-polish the iterate where the gradient was smallest.  A field is
    accepted when its residual, negativity and nontriviality pass the
    configured thresholds; the accepted field with the smallest residual wins
    (ties by energy, then lexicographic comparison).
    """
    if np.any(np.diag(B.entries) < 0):
        raise ParameterError("diagonal entries must be nonnegative")
    if not p > 2:
        raise ParameterError(f"p must exceed 2, got {p}")
    A = B.entries

    cert = constant_solution(B, p)
    if cert is not None:
        return _constant_shortcut(B, cert, p, grid)

    if initial_fields is None:
        try:
            d = find_direction_d(B, p)
        except NotApplicableError:
            # No negative direction (e.g. strictly copositive input): the seed
            # family is still well defined and every run should collapse.
            d = ConeVector(np.ones(B.n))
        seeds = theta_seeds(B, d, grid, max(config.seed_count, B.n + 2), p)
    else:
        seeds = initial_fields

    accepted: list[tuple[float, float, NeumannSolution]] = []
    outcomes: list[str] = []
    pending = False
    best_residual = np.inf
    best_field: np.ndarray | None = None
    for provenance, seed in seeds:
        seed_amp = max(1.0, seed.amplitude)
        threshold = config.nontriviality_threshold * seed_amp
        start, dip_g, g0, escaped = _descend_energy(A, seed.components, p, grid, config)
        U, rnorm, converged = _newton_polish(A, start, p, grid, config)
        if rnorm < best_residual and np.all(np.isfinite(U)):
            best_residual, best_field = rnorm, U.copy()
        amp = float(np.max(np.abs(U))) if np.all(np.isfinite(U)) else 0.0
        if converged and amp <= threshold:
            outcomes.append(f"{provenance}: collapsed to trivial")
            continue
        if not converged:
            if escaped:
                outcomes.append(f"{provenance}: escaped (dip not polishable)")
            else:
                outcomes.append(f"{provenance}: newton stalled at residual {rnorm:.2e}")
                pending = True
            continue
        if U.min() < -config.negativity_tol:
            outcomes.append(f"{provenance}: negative part {U.min():.2e}")
            pending = True
            continue
        clamped = np.maximum(U, 0.0)
        field = FieldTuple(clamped)
        report = energy(B, field, p, grid)
        if report.residual_inf >= config.residual_tol:
            outcomes.append(f"{provenance}: clamped residual {report.residual_inf:.2e}")
            pending = True
            continue
        variation = max(
            float(clamped[i].max() - clamped[i].min()) for i in range(B.n)
        )
        classification = "Nonconstant" if variation > 1e-6 * (1.0 + amp) else "Constant"
        solution = NeumannSolution(field, report, classification, provenance)
        accepted.append((report.residual_inf, report.energy, solution))
        outcomes.append(f"{provenance}: accepted residual {report.residual_inf:.2e}")

    if accepted:
        accepted.sort(
            key=lambda item: (
                item[0],
                item[1],
                tuple(item[2].field.components.ravel()),
            )
        )
        return accepted[0][2]
    if not pending:
        return TrivialOnly(tuple(outcomes))
    return SolveInconclusive(
        best_field=FieldTuple(best_field if best_field is not None else np.zeros((B.n,) + grid.shape)),
        best_residual=float(best_residual),
        seed_outcomes=tuple(outcomes),
    )


def refine_solution(B: SymMatrix, solution: NeumannSolution, p: float,
                    grid_from: Grid, grid_to: Grid,
                    config: SolveConfig = SolveConfig()) -> NeumannSolution:
    """Prolong a solution to a finer grid and Newton-polish it there."""
    U = solution.field.components
    x_from = grid_from.axis()
    x_to = grid_to.axis()
    if grid_from.dim == 1:
        fine = np.stack([np.interp(x_to, x_from, U[i]) for i in range(U.shape[0])])
    else:
        fine_rows = np.stack(
            [
                np.stack([np.interp(x_to, x_from, U[i][:, k]) for k in range(U.shape[2])], axis=1)
                for i in range(U.shape[0])
            ]
        )
        fine = np.stack(
            [
                np.stack([np.interp(x_to, x_from, fine_rows[i][k, :]) for k in range(fine_rows.shape[1])], axis=0)
                for i in range(U.shape[0])
            ]
        )
    polished, rnorm, converged = _newton_polish(B.entries, fine, p, grid_to, config)
    if not converged:
        raise ParameterError(f"refinement failed to converge, residual {rnorm:.2e}")
    field = FieldTuple(np.maximum(polished, 0.0))
    report = energy(B, field, p, grid_to)
    return NeumannSolution(field, report, solution.classification, solution.seed_provenance)


def reflect_tile(u: FieldTuple, grid: Grid, copies: int) -> tuple[FieldTuple, Grid]:
    """Even reflection across each face, doubling the box ``copies`` times.

    The extension is periodic with period twice the original side; interior
    stencils of the extension map onto original stencils, so the discrete
    residual is preserved node for node.
    """
    if int(copies) != copies or copies < 1:
        raise ParameterError(f"copies must be a positive integer, got {copies}")
    m = grid.points_per_side
    factor = 2**copies
    new_m = (m - 1) * factor + 1
    idx = np.arange(new_m) % (2 * (m - 1))
    idx = np.minimum(idx, 2 * (m - 1) - idx)
    U = u.components
    if grid.dim == 1:
        ext = U[:, idx]
    else:
        ext = U[:, idx[:, None], idx[None, :]]
    new_grid = Grid(grid.dim, grid.extent * factor, new_m)
    return FieldTuple(ext), new_grid


def write_solution_csv(solution: NeumannSolution, grid: Grid, path: str | Path) -> Path:
    """Node-ordered CSV dump `x[,y],u1,...,un` plus a JSON sidecar report."""
    import json

    path = Path(path)
    U = solution.field.components
    n = U.shape[0]
    header = ("x," if grid.dim == 1 else "x,y,") + ",".join(
        f"u{i + 1}" for i in range(n)
    )
    lines = [header]
    axis = grid.axis()
    if grid.dim == 1:
        for k, x in enumerate(axis):
            values = ",".join(repr(float(U[i][k])) for i in range(n))
            lines.append(f"{float(x)!r},{values}")
    else:
        for ix, x in enumerate(axis):
            for iy, y in enumerate(axis):
                values = ",".join(repr(float(U[i][ix, iy])) for i in range(n))
                lines.append(f"{float(x)!r},{float(y)!r},{values}")
    path.write_text("\n".join(lines) + "\n")
    sidecar = path.with_suffix(path.suffix + ".json")
    report = solution.report
    sidecar.write_text(
        json.dumps(
            {
                "energy": report.energy,
                "dirichlet": report.dirichlet,
                "phi": report.phi,
                "residual_inf": report.residual_inf,
                "identity_defects": list(report.identity_defects),
                "classification": solution.classification,
                "seed_provenance": solution.seed_provenance,
            },
            indent=2,
            sort_keys=True,
        )
        + "\n"
    )
    return sidecar
