"""Spectral radius and Perron eigenvector of the adjacency matrix.

Power iteration runs on A + I so the iteration converges on bipartite graphs
too (the shift breaks the -lambda_1 oscillation); the reported radius is the
shifted limit minus one.  The eigenvector is normalized to minimum entry 1,
matching the optimizer's mu >= 1 convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_array

from .doubling import Measure
from .errors import SizeCapError, SolverError, ValidationError
from .graphs import Graph

DEFAULT_EIG_TOL = 1e-12
MAX_ITERATIONS = 10**6

_DENSE_LIMIT = 256  # above this, matvecs go through a sparse matrix


@dataclass(frozen=True)
class SpectralResult:
    radius: float
    eigvec: np.ndarray  # strictly positive, min entry 1
    residual: float
    iterations: int


def _operator(g: Graph):
    """Return x -> A_G x as a callable."""
    if g.n <= _DENSE_LIMIT:
        a = g.adjacency_matrix()
        return lambda x: a @ x
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    indices = []
    for v, nbrs in enumerate(g.adj):
        indptr[v + 1] = indptr[v] + len(nbrs)
        indices.extend(nbrs)
    a = csr_array(
        (np.ones(len(indices)), np.array(indices, dtype=np.int64), indptr),
        shape=(g.n, g.n),
    )
    return lambda x: a @ x


def perron(g: Graph, tol: float = DEFAULT_EIG_TOL, max_iter: int = MAX_ITERATIONS) -> SpectralResult:
    """Spectral radius and Perron eigenvector to a guaranteed tolerance.

    Stops when the Collatz-Wielandt bracket closes: for a positive iterate x,
    min_v (Ax)_v / x_v <= r(A) <= max_v (Ax)_v / x_v, so a bracket width
    <= tol bounds the radius error directly (and is scale-free, which matters
    for graphs whose Perron vector spans many orders of magnitude).  The
    reported residual is the eigen-residual of the max-normalized vector and
    never exceeds the bracket width.
    """
    if tol <= 0:
        raise ValidationError("tolerance must be > 0")
    if g.n == 1:
        return SpectralResult(0.0, np.ones(1), 0.0, 0)
    matvec = _operator(g)
    x = np.ones(g.n)  # deterministic start, never orthogonal to the Perron vector
    for it in range(1, max_iter + 1):
        ax = matvec(x)
        ratios = ax / x
        spread = float(ratios.max() - ratios.min())
        if spread <= tol:
            radius = float(x @ ax / (x @ x))
            u = x / x.max()
            residual = float(np.max(np.abs(matvec(u) - radius * u)))
            return SpectralResult(radius, x / x.min(), residual, it)
        y = ax + x  # (A + I) x keeps iterates strictly positive
        x = y / y.min()
    raise SolverError(
        f"power iteration bracket did not reach {tol} in {max_iter} iterations"
    )


def c0_constant(g: Graph, tol: float = DEFAULT_EIG_TOL) -> float:
    """Restricted doubling constant at radius 0: 1 + spectral radius."""
    return 1.0 + perron(g, tol).radius


def perron_measure(g: Graph, tol: float = DEFAULT_EIG_TOL) -> Measure:
    """Measure given by the Perron eigenvector; flattens all B(v,1)/mu(v) ratios."""
    return Measure(tuple(float(w) for w in perron(g, tol).eigvec))


CHROMATIC_SIZE_CAP = 64


def chromatic_number(g: Graph, cap: int = CHROMATIC_SIZE_CAP) -> int:
    """Exact chromatic number by saturation-ordered backtracking."""
    if g.n > cap:
        raise SizeCapError(f"chromatic_number capped at {cap} vertices, got {g.n}")
    if g.n == 1:
        return 1
    if g.m == 0:
        return 1
    lower = 2
    upper = max(g.degrees) + 1
    for k in range(lower, upper + 1):
        if _k_colorable(g, k):
            return k
    raise AssertionError("greedy bound violated")  # unreachable


def _k_colorable(g: Graph, k: int) -> bool:
    n = g.n
    colors = [-1] * n
    forbidden = [set() for _ in range(n)]
    used = 0

    def pick() -> int:
        best, score = -1, (-1, -1)
        for v in range(n):
            if colors[v] < 0:
                s = (len(forbidden[v]), len(g.adj[v]))
                if s > score:
                    score, best = s, v
        return best

    def backtrack(used: int) -> bool:
        v = pick()
        if v < 0:
            return True
        # at most one brand-new color: breaks color-permutation symmetry
        for c in range(min(used + 1, k)):
            if c in forbidden[v]:
                continue
            colors[v] = c
            touched = []
            dead = False
            for w in g.adj[v]:
                if colors[w] < 0 and c not in forbidden[w]:
                    forbidden[w].add(c)
                    touched.append(w)
                    if len(forbidden[w]) >= k:
                        dead = True
            if not dead and backtrack(max(used, c + 1)):
                return True
            for w in touched:
                forbidden[w].discard(c)
            colors[v] = -1
        return False

    return backtrack(used)
