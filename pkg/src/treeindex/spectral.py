"""Spectral radius (index) and Perron vector of a tree, plus the function
checks used by the rearrangement machinery: Rayleigh quotients, the
positive-eigenvector bound, unimodality, and caterpillar symmetry.

The index is computed matrix-free by shifted power iteration.  Trees are
bipartite, so -mu is also an eigenvalue; iterating on A + cI with
c = max degree separates |mu + c| from |-mu + c| and makes the iteration
converge to the Perron direction from the all-ones start.  Convergence is
measured by the eigenvalue-equation residual

    residual = max_v | mu*f(v) - sum_{u ~ v} f(u) |.

If the top eigenvalue gap is too small for plain power sweeps, a
Rayleigh-quotient polish kicks in halfway through the sweep budget: the
current Rayleigh estimate is used as a shift for a few inverse-iteration
steps, solved exactly in O(n) along the tree.  The reported residual is
always the true residual of the returned vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .trees import Tree, TreeError, trunk_path

__all__ = [
    "ConvergenceError",
    "SpectralResult",
    "PerronBound",
    "adjacency_matrix",
    "rayleigh_quotient",
    "spectral_radius",
    "perron_bound_check",
    "is_unimodal",
    "pendant_minima_check",
    "caterpillar_symmetry_check",
    "caterpillar_trunk_residual",
    "symmetrize_caterpillar",
]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000


class ConvergenceError(RuntimeError):
    """Power iteration did not reach the residual target.

    The last iterate is attached as `.result` so callers can inspect it.
    """

    def __init__(self, message: str, result: "SpectralResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class SpectralResult:
    """Converged top eigenpair: index mu and positive unit Perron vector."""

    mu: float
    perron: np.ndarray
    residual: float
    iterations: int

    def to_json(self) -> str:
        vec = ",".join("%.17g" % x for x in self.perron)
        return '{"mu":%.17g,"perron":[%s],"residual":%.17g,"iterations":%d}' % (
            self.mu,
            vec,
            self.residual,
            self.iterations,
        )


def adjacency_matrix(t: Tree, dtype=np.float64) -> np.ndarray:
    n = t.vertex_count
    a = np.zeros((n, n), dtype=dtype)
    for u, v in t.edges():
        a[u, v] = 1
        a[v, u] = 1
    return a


def _edge_arrays(t: Tree) -> tuple[np.ndarray, np.ndarray]:
    edges = t.edges()
    if not edges:
        return np.zeros(0, dtype=np.intp), np.zeros(0, dtype=np.intp)
    eu, ev = zip(*edges)
    return np.asarray(eu, dtype=np.intp), np.asarray(ev, dtype=np.intp)


def rayleigh_quotient(t: Tree, f) -> float:
    """2 * sum_{uv in E} f(u) f(v) / sum_v f(v)^2  ==  <Af, f> / <f, f>."""
    f = np.asarray(f)
    if f.shape != (t.vertex_count,):
        raise ValueError(f"valuation must have length {t.vertex_count}")
    norm2 = float(f @ f)
    if norm2 == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector is undefined")
    eu, ev = _edge_arrays(t)
    return float(2.0 * np.sum(f[eu] * f[ev]) / norm2)


def _residual(mu, f, eu, ev, n) -> float:
    s = np.zeros(n, dtype=f.dtype)
    np.add.at(s, eu, f[ev])
    np.add.at(s, ev, f[eu])
    return float(np.max(np.abs(mu * f - s)))


def _tree_shift_solve(t: Tree, sigma, b: np.ndarray):
    """Solve (A - sigma*I) y = b exactly by leaf elimination; None if a
    pivot vanishes (sigma essentially an eigenvalue of a subtree)."""
    n = t.vertex_count
    parent = np.full(n, -1, dtype=np.intp)
    order = [0]
    parent[0] = 0
    for v in order:
        for u in t.neighbors(v):
            if parent[u] < 0:
                parent[u] = v
                order.append(u)
    parent[0] = -1
    d = np.zeros(n, dtype=b.dtype)
    bb = b.astype(b.dtype, copy=True)
    for v in reversed(order):
        pivot = -sigma
        for u in t.neighbors(v):
            if u != parent[v]:
                pivot = pivot - 1.0 / d[u]
        if abs(pivot) < 1e-14:
            return None
        d[v] = pivot
        for u in t.neighbors(v):
            if u != parent[v]:
                bb[v] = bb[v] - bb[u] / d[u]
    y = np.zeros(n, dtype=b.dtype)
    for v in order:
        if parent[v] < 0:
            y[v] = bb[v] / d[v]
        else:
            y[v] = (bb[v] - y[parent[v]]) / d[v]
    return y


def _rayleigh_polish(t, x, mu, eu, ev, n, tol, rounds=8):
    """Inverse iteration with Rayleigh shifts; returns improved (x, mu, res)
    together with the number of solves spent."""
    res = _residual(mu, x, eu, ev, n)
    spent = 0
    for _ in range(rounds):
        if res <= tol:
            break
        sigma = mu
        y = None
        for bump in (0.0, 1e-10, -1e-10, 1e-8):
            y = _tree_shift_solve(t, sigma + bump * max(1.0, abs(mu)), x)
            if y is not None:
                break
        if y is None:
            break
        y = y / np.sqrt(y @ y)
        if float(np.sum(y)) < 0.0:
            y = -y
        spent += 1
        x = y
        s = np.zeros(n, dtype=x.dtype)
        np.add.at(s, eu, x[ev])
        np.add.at(s, ev, x[eu])
        mu = float(x @ s)
        res = _residual(mu, x, eu, ev, n)
    return x, mu, res, spent


def spectral_radius(
    t: Tree,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    extended: bool = False,
) -> SpectralResult:
    """Index mu(t) with its positive unit eigenvector.

    `extended=True` runs the whole iteration in extended precision
    (numpy longdouble), which is what the tie-resolution stage of the
    extremal search uses.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = t.vertex_count
    dtype = np.longdouble if extended else np.float64
    if n == 1:
        return SpectralResult(0.0, np.ones(1), 0.0, 0)
    if n == 2:
        r = math.sqrt(0.5)
        return SpectralResult(1.0, np.array([r, r]), 0.0, 0)

    eu, ev = _edge_arrays(t)
    c = dtype(max(t.degrees()))
    x = np.ones(n, dtype=dtype)
    x /= np.sqrt(x @ x)
    fallback_at = max(1, max_iter // 2)
    polished = False
    iterations = 0
    mu = 0.0
    res = math.inf
    while iterations < max_iter:
        s = np.zeros(n, dtype=dtype)
        np.add.at(s, eu, x[ev])
        np.add.at(s, ev, x[eu])
        y = s + c * x
        x = y / np.sqrt(y @ y)
        iterations += 1
        s = np.zeros(n, dtype=dtype)
        np.add.at(s, eu, x[ev])
        np.add.at(s, ev, x[eu])
        mu = float(x @ s)
        res = float(np.max(np.abs(mu * x - s)))
        if res <= tol:
            break
        if iterations >= fallback_at and not polished:
            polished = True
            x, mu, res, spent = _rayleigh_polish(t, x, mu, eu, ev, n, tol)
            iterations += spent
            if res <= tol:
                break
    perron = np.asarray(x, dtype=np.float64)
    result = SpectralResult(float(mu), perron, float(res), iterations)
    if res > tol:
        raise ConvergenceError(
            f"residual {res:.3e} above tol {tol:.3e} after {iterations} iterations",
            result,
        )
    if not np.all(perron > 0.0):
        raise ConvergenceError("iterate is not entrywise positive", result)
    return result


@dataclass(frozen=True)
class PerronBound:
    """Outcome of checking mu >= 2 sum_{uv} f(u) f(v) for a candidate f."""

    holds: bool
    equality: bool
    edge_sum: float


def perron_bound_check(t: Tree, f, result: SpectralResult, tol: float = 1e-10) -> PerronBound:
    """Check the positive-test-vector bound against a converged result.

    `f` must be positive with unit norm; equality within tol forces f to be
    the Perron vector itself.
    """
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (t.vertex_count,):
        raise ValueError(f"valuation must have length {t.vertex_count}")
    if not np.all(f > 0.0):
        raise ValueError("valuation must be entrywise positive")
    if abs(float(f @ f) - 1.0) > 1e-12:
        raise ValueError("valuation must have unit norm")
    eu, ev = _edge_arrays(t)
    edge_sum = float(2.0 * np.sum(f[eu] * f[ev]))
    return PerronBound(
        holds=result.mu >= edge_sum - tol,
        equality=abs(result.mu - edge_sum) <= tol,
        edge_sum=edge_sum,
    )


def is_unimodal(t: Tree, f, v_hat: int, tol: float = 0.0) -> bool:
    """True iff positive f is non-increasing along every path leaving v_hat
    and constant on at most one edge, which must be incident to v_hat.

    `tol` widens the equality band; the default compares floats exactly,
    which is the right mode for transported valuations whose entries are
    literal copies of each other.
    """
    f = np.asarray(f)
    if f.shape != (t.vertex_count,):
        raise ValueError(f"valuation must have length {t.vertex_count}")
    if not np.all(f > 0.0):
        return False
    flat_edges = 0
    parent = {v_hat: -1}
    stack = [v_hat]
    while stack:
        v = stack.pop()
        for u in t.neighbors(v):
            if u in parent:
                continue
            parent[u] = v
            stack.append(u)
            diff = float(f[u] - f[v])
            if diff > tol:
                return False
            if abs(diff) <= tol:
                if v != v_hat:
                    return False
                flat_edges += 1
                if flat_edges > 1:
                    return False
    return True


def pendant_minima_check(t: Tree, result: SpectralResult) -> bool:
    """True iff every pendant vertex is a strict local minimum of the
    Perron vector.  K_2 fails by symmetry: both entries are equal."""
    f = result.perron
    for v in t.vertices():
        if t.degree(v) == 1:
            u = t.neighbors(v)[0]
            if not f[v] < f[u]:
                return False
    return True


def _caterpillar_mirror_orbits(t: Tree) -> list[list[int]]:
    trunk = trunk_path(t)
    k = len(trunk)
    orbits: list[list[int]] = []
    if k == 0:
        orbits.append(list(t.vertices()))
        return orbits
    for i in range((k + 1) // 2):
        a, b = trunk[i], trunk[k - 1 - i]
        orbits.append([a] if a == b else [a, b])
        pa = sorted(u for u in t.neighbors(a) if t.degree(u) == 1)
        pb = sorted(u for u in t.neighbors(b) if t.degree(u) == 1)
        if len(pa) != len(pb):
            raise TreeError("caterpillar pendant loads are not mirror-symmetric")
        pod = sorted(set(pa) | set(pb))
        if pod:
            orbits.append(pod)
    return orbits


def caterpillar_symmetry_check(t: Tree, result: SpectralResult, tol: float = 1e-9) -> bool:
    """True iff the Perron values are invariant under reversing the trunk.

    Pendant values are compared pod against mirrored pod as sorted lists.
    """
    f = result.perron
    trunk = trunk_path(t)  # raises if not a caterpillar
    k = len(trunk)
    for i in range(k // 2 + 1):
        j = k - 1 - i
        if j < i:
            break
        if abs(float(f[trunk[i]] - f[trunk[j]])) > tol:
            return False
        pa = sorted(float(f[u]) for u in t.neighbors(trunk[i]) if t.degree(u) == 1)
        pb = sorted(float(f[u]) for u in t.neighbors(trunk[j]) if t.degree(u) == 1)
        if len(pa) != len(pb):
            return False
        if any(abs(x - y) > tol for x, y in zip(pa, pb)):
            return False
    return True


def symmetrize_caterpillar(t: Tree, f) -> np.ndarray:
    """Average a caterpillar valuation over the trunk-reversal symmetry and
    renormalize.

    The true Perron vector is exactly mirror-symmetric; averaging removes
    the last-bit numerical asymmetry so that mirror entries compare equal
    under the exact float comparisons used by valuation transport.
    """
    f = np.asarray(f, dtype=np.float64)
    out = f.copy()
    for orbit in _caterpillar_mirror_orbits(t):
        out[orbit] = float(np.mean(f[orbit]))
    out /= np.sqrt(out @ out)
    return out


def caterpillar_trunk_residual(t: Tree, result: SpectralResult) -> float:
    """Largest violation of the trunk recurrence

        (mu - (d-2)/mu) * f(v_i) = f(v_{i-1}) + f(v_{i+1})

    where v_0 and v_{k+1} are pendant neighbors of the trunk ends.  The
    recurrence follows from eliminating pendant values (mu*f(p) = f(v_i))
    from the eigenvalue equation; it holds at every trunk vertex of a
    caterpillar whose non-pendant vertices share the degree d.
    """
    trunk = trunk_path(t)
    if not trunk:
        return 0.0
    d = t.degree(trunk[0])
    if any(t.degree(v) != d for v in trunk):
        raise TreeError("trunk degrees are not constant")
    f = result.perron
    mu = result.mu
    coef = mu - (d - 2) / mu
    worst = 0.0
    for idx, v in enumerate(trunk):
        around = 0.0
        if idx > 0:
            around += float(f[trunk[idx - 1]])
        else:
            around += float(f[min(u for u in t.neighbors(v) if t.degree(u) == 1)])
        if idx < len(trunk) - 1:
            around += float(f[trunk[idx + 1]])
        else:
            around += float(f[min(u for u in t.neighbors(v) if t.degree(u) == 1)])
        worst = max(worst, abs(coef * float(f[v]) - around))
    return worst
