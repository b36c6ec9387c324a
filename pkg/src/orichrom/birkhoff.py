"""Optimization of the gamma_d functional over doubly stochastic matrices.

gamma_d(A) = -(1/k) sum_v a_v log a_v + (d/2) log(2 L_G(A) / k^2), where
the k x k matrix A is read as a weight vector on the k^2 vertices of the
Kronecker-square graph G and L_G is the graph Lagrangian
sum_{uv in E} a_u a_v.  Below the degree budget l_k the unique maximiser
is the barycenter J/k; the multistart ascent here verifies that
numerically.  The module also evaluates the single-row entropy profile
f(r), its difference quotient eta, and the Rayleigh bound
2 L_G(A) <= lambda (||A||^2 - 1) + 2|E|/k^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonPositiveLagrangian
from .product import ProductGraph
from .randmodels import rng_for

ENTRY_FLOOR = 1e-300
SINKHORN_TOL = 1e-12
ARMIJO_C = 1e-4
BARYCENTER_TOL = 1e-6
VALUE_TOL = 1e-8


def sinkhorn(mat: np.ndarray, tol: float = SINKHORN_TOL, max_iter: int = 10_000) -> np.ndarray:
    """Alternating row/column scaling onto the Birkhoff polytope.

    Entries are floored at a tiny positive value so logs stay finite.
    """
    a = np.maximum(np.asarray(mat, dtype=float), ENTRY_FLOOR)
    for _ in range(max_iter):
        a = a / a.sum(axis=1, keepdims=True)
        a = a / a.sum(axis=0, keepdims=True)
        r = np.abs(a.sum(axis=1) - 1.0).max()
        c = np.abs(a.sum(axis=0) - 1.0).max()
        if max(r, c) < tol:
            return a
    return a


def is_doubly_stochastic(a: np.ndarray, tol: float = 1e-10) -> bool:
    return (
        bool(np.all(a >= -tol))
        and bool(np.abs(a.sum(axis=1) - 1.0).max() <= tol)
        and bool(np.abs(a.sum(axis=0) - 1.0).max() <= tol)
    )


def lagrangian(g: ProductGraph, a) -> float:
    """sum over edges of a_u a_v for a weight vector on V(G)."""
    vec = np.asarray(a, dtype=float).reshape(-1)
    if vec.size != g.n:
        raise ValueError("weight vector length %d != |V| = %d" % (vec.size, g.n))
    b = g.adjacency_matrix().astype(float)
    return float(0.5 * vec @ (b @ vec))


def gamma_d(a: np.ndarray, g: ProductGraph, d: float) -> float:
    """Entropy plus (d/2) log(2 L / k^2), with 0 log 0 = 0."""
    k = g.source_order
    vec = np.asarray(a, dtype=float).reshape(-1)
    if vec.size != g.n:
        raise ValueError("matrix does not match the product graph")
    lag = lagrangian(g, vec)
    arg = 2.0 * lag / (k * k)
    if arg <= 0.0:
        raise NonPositiveLagrangian("2 L / k^2 = %r" % arg)
    pos = vec[vec > 0.0]
    entropy = -float(np.sum(pos * np.log(pos))) / k
    return entropy + (d / 2.0) * math.log(arg)


def gamma_gradient(a: np.ndarray, g: ProductGraph, d: float) -> np.ndarray:
    """Ambient-coordinate gradient; exact-zero entries are left at zero."""
    k = g.source_order
    vec = np.asarray(a, dtype=float).reshape(-1)
    b = g.adjacency_matrix().astype(float)
    lag = float(0.5 * vec @ (b @ vec))
    if lag <= 0.0:
        raise NonPositiveLagrangian("gradient undefined at L = %r" % lag)
    grad = np.zeros_like(vec)
    mask = vec > 0.0
    grad[mask] = -(1.0 + np.log(vec[mask])) / k
    grad += (d / 2.0) * (b @ vec) / lag
    return grad.reshape(k, k)


def barycenter_value(k: int, d: float) -> float:
    """gamma_d at J/k: log k + (d/2) log((k-1)^2 / (2 k^2))."""
    return math.log(k) + (d / 2.0) * math.log((k - 1) ** 2 / (2.0 * k * k))


def _tangent_project(grad: np.ndarray) -> np.ndarray:
    # orthogonal projection onto {X : X 1 = 0, X^T 1 = 0}
    k = grad.shape[0]
    r = grad.sum(axis=1, keepdims=True) / k
    c = grad.sum(axis=0, keepdims=True) / k
    s = grad.sum() / (k * k)
    return grad - r - c + s


@dataclass
class OptimizationOutcome:
    maximizer: np.ndarray
    value: float
    starts: int
    converged_to_barycenter: bool
    gradient_norm: float
    nonconverged_starts: int = 0
    max_barycenter_distance: float = 0.0

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "starts": self.starts,
            "converged_to_barycenter": self.converged_to_barycenter,
            "gradient_norm": self.gradient_norm,
            "nonconverged_starts": self.nonconverged_starts,
            "max_barycenter_distance": self.max_barycenter_distance,
            "maximizer": [[float(x) for x in row] for row in self.maximizer],
        }


def _gamma_fast(a: np.ndarray, bmat: np.ndarray, k: int, d: float) -> float:
    vec = a.reshape(-1)
    arg = float(vec @ (bmat @ vec)) / (k * k)
    if arg <= 0.0:
        raise NonPositiveLagrangian("2 L / k^2 = %r" % arg)
    pos = vec[vec > 0.0]
    return -float(np.sum(pos * np.log(pos))) / k + (d / 2.0) * math.log(arg)


def _grad_fast(a: np.ndarray, bmat: np.ndarray, k: int, d: float) -> np.ndarray:
    vec = a.reshape(-1)
    bv = bmat @ vec
    lag = 0.5 * float(vec @ bv)
    grad = np.where(vec > 0.0, -(1.0 + np.log(np.maximum(vec, ENTRY_FLOOR))) / k, 0.0)
    grad = grad + (d / 2.0) * bv / lag
    return grad.reshape(k, k)


def _ascend(a0: np.ndarray, g: ProductGraph, d: float, tol: float, max_iter: int):
    """Projected-gradient ascent from one start; returns (A, value, |Pg|, ok)."""
    k = g.source_order
    bmat = g.adjacency_matrix().astype(float)
    a = a0.copy()
    val = _gamma_fast(a, bmat, k, d)
    # initial step 1/k^2; after each accepted step the next trial doubles,
    # so Armijo backtracking sets the scale rather than a fixed constant
    alpha = 1.0 / (k * k)
    for _ in range(max_iter):
        pg = _tangent_project(_grad_fast(a, bmat, k, d))
        gnorm = float(np.linalg.norm(pg))
        if gnorm < tol:
            return a, val, gnorm, True
        alpha = min(alpha * 2.0, 1e6)
        improved = False
        while alpha > 1e-18:
            trial = a + alpha * pg
            if trial.min() <= 0.0:
                trial = sinkhorn(np.maximum(trial, ENTRY_FLOOR))
            tval = _gamma_fast(trial, bmat, k, d)
            if tval >= val + ARMIJO_C * alpha * gnorm * gnorm:
                a, val = trial, tval
                improved = True
                break
            alpha *= 0.5
        if not improved:
            return a, val, gnorm, gnorm < tol
    pg = _tangent_project(_grad_fast(a, bmat, k, d))
    gnorm = float(np.linalg.norm(pg))
    return a, val, gnorm, gnorm < tol


def random_doubly_stochastic(k: int, seed: int, trial: int) -> np.ndarray:
    """Sinkhorn-normalised iid uniform(0.1, 1) start, seeded reproducibly."""
    rng = rng_for(seed, trial, stream=2)
    return sinkhorn(rng.uniform(0.1, 1.0, size=(k, k)))


def maximize_gamma(
    g: ProductGraph,
    k: int,
    d: float,
    n_starts: int = 100,
    tol: float = 1e-9,
    seed: int = 0,
    max_iter: int = 100_000,
    barycenter_tol: float = BARYCENTER_TOL,
) -> OptimizationOutcome:
    """Multistart ascent of gamma_d over the Birkhoff polytope.

    Starts are Sinkhorn-projected random positive matrices; each runs
    Armijo-backtracked gradient ascent in the doubly-stochastic tangent
    space.  Non-convergent starts (residual above tol at the iteration
    cap) are counted, not fatal.  Ties between equally good starts break
    on the lower start index.
    """
    if k != g.source_order or g.n != k * k:
        raise ValueError("graph is not the Kronecker square for k = %d" % k)
    bary = np.full((k, k), 1.0 / k)
    best_a, best_val, best_norm = None, -math.inf, math.inf
    bad = 0
    max_dist = 0.0
    for s in range(n_starts):
        a0 = random_doubly_stochastic(k, seed, s)
        a, val, gnorm, ok = _ascend(a0, g, d, tol, max_iter)
        if not ok:
            bad += 1
        max_dist = max(max_dist, float(np.abs(a - bary).max()))
        if val > best_val:
            best_a, best_val, best_norm = a, val, gnorm
    assert best_a is not None
    return OptimizationOutcome(
        maximizer=best_a,
        value=best_val,
        starts=n_starts,
        converged_to_barycenter=max_dist < barycenter_tol,
        gradient_norm=best_norm,
        nonconverged_starts=bad,
        max_barycenter_distance=max_dist,
    )


def x_y_of_r(r: float, k: int) -> tuple[float, float]:
    """The unique x, y >= 0 with x + (k-1) y = 1 and x^2 + (k-1) y^2 = r."""
    if k < 2:
        raise DomainError("need k >= 2")
    if not (1.0 / k - 1e-12 <= r <= 1.0 + 1e-12):
        raise DomainError("r = %r outside [1/k, 1]" % r)
    disc = max((k - 1) * (k * r - 1.0), 0.0)
    x = (1.0 + math.sqrt(disc)) / k
    y = (1.0 - x) / (k - 1)
    assert abs(x + (k - 1) * y - 1.0) <= 1e-12
    assert abs(x * x + (k - 1) * y * y - r) <= 1e-12
    return x, y


def f_r(r: float, k: int) -> float:
    """Max row entropy -x log x - (k-1) y log y at squared norm r."""
    x, y = x_y_of_r(r, k)
    val = 0.0
    if x > 0.0:
        val -= x * math.log(x)
    if y > 0.0:
        val -= (k - 1) * y * math.log(y)
    return val


def eta(x: float, k: int) -> float:
    """Difference quotient (f(1/k) - f(1/k + x)) / x, with eta(0) = k/2."""
    if k < 3:
        raise DomainError("eta needs k >= 3")
    if not (0.0 <= x <= 1.0 - 1.0 / k + 1e-12):
        raise DomainError("x = %r outside [0, 1 - 1/k]" % x)
    if x == 0.0:
        return k / 2.0
    return (f_r(1.0 / k, k) - f_r(1.0 / k + x, k)) / x


def eta_min_location(k: int) -> tuple[float, float]:
    """The analytic minimiser x* = (k-2)^2/(k(k-1)) and its value."""
    x_star = (k - 2) ** 2 / (k * (k - 1.0))
    return x_star, (k - 1.0) / (k - 2.0) * math.log(k - 1.0)


def eta_min_check(k: int, tol: float = 1e-8, grid: int = 20_001) -> bool:
    """Grid scan plus golden-section refinement of the minimum of eta.

    Confirms location and value against the closed form within tol, and
    that the minimum is unique at grid resolution (the set of grid
    points within 1e-9 of the refined minimum is one contiguous run
    around x*).
    """
    if k < 3:
        raise DomainError("eta_min_check needs k >= 3")
    hi = 1.0 - 1.0 / k
    xs = np.linspace(0.0, hi, grid)
    vals = np.array([eta(float(x), k) for x in xs])
    i0 = int(np.argmin(vals))
    lo_i, hi_i = max(i0 - 1, 0), min(i0 + 1, grid - 1)
    a, b = float(xs[lo_i]), float(xs[hi_i])
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d_ = b - phi * (b - a), a + phi * (b - a)
    fc, fd = eta(c, k), eta(d_, k)
    for _ in range(200):
        if fc < fd:
            b, d_, fd = d_, c, fc
            c = b - phi * (b - a)
            fc = eta(c, k)
        else:
            a, c, fc = c, d_, fd
            d_ = a + phi * (b - a)
            fd = eta(d_, k)
        if b - a < 1e-13:
            break
    x_min = (a + b) / 2.0
    v_min = eta(x_min, k)
    x_star, v_star = eta_min_location(k)
    if abs(x_min - x_star) > tol or abs(v_min - v_star) > tol:
        return False
    near = np.nonzero(vals <= v_min + 1e-9)[0]
    return bool(near.size > 0 and near[-1] - near[0] == near.size - 1)


def rayleigh_lagrangian_bound(g: ProductGraph, a: np.ndarray) -> tuple[float, float]:
    """(2 L_G(A), lambda (||A||^2 - 1) + 2|E|/k^2) with lambda = (k+1)/2.

    The first term never exceeds the second for doubly stochastic A, with
    equality at the barycenter.
    """
    k = g.source_order
    vec = np.asarray(a, dtype=float).reshape(-1)
    lhs = 2.0 * lagrangian(g, vec)
    lam = (k + 1) / 2.0
    rhs = lam * (float(vec @ vec) - 1.0) + 2.0 * g.edge_count() / (k * k)
    assert lhs <= rhs + 1e-10
    return lhs, rhs
