"""Kronecker squares of tournaments and their strongly-regular structure.

The square of a tournament T is the undirected graph on ordered pairs
(u, v) with (u, v) ~ (x, y) iff both coordinate arcs point the same way.
Vertex (u, v) is linearised as u*k + v; this ordering is fixed because
the moment module's lattice indexing depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import NotDoublyRegular
from .tournament import Tournament, is_doubly_regular, signed_adjacency


@dataclass(frozen=True)
class ProductGraph:
    """Undirected simple graph on k^2 vertices with adjacency bitrows."""

    source_order: int
    rows: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def adjacent(self, a: int, b: int) -> bool:
        return bool((self.rows[a] >> b) & 1)

    def degree(self, a: int) -> int:
        return self.rows[a].bit_count()

    def edge_count(self) -> int:
        return sum(self.degree(a) for a in range(self.n)) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges (a, b) with a < b, sorted; the canonical edge ordering."""
        out = []
        for a in range(self.n):
            row = self.rows[a] >> (a + 1) << (a + 1)
            while row:
                b = (row & -row).bit_length() - 1
                out.append((a, b))
                row &= row - 1
        return out

    @cached_property
    def _adjacency(self) -> np.ndarray:
        n = self.n
        m = np.zeros((n, n), dtype=np.int64)
        for a in range(n):
            row = self.rows[a]
            while row:
                b = (row & -row).bit_length() - 1
                m[a, b] = 1
                row &= row - 1
        m.setflags(write=False)
        return m

    def adjacency_matrix(self) -> np.ndarray:
        return self._adjacency

    def to_edge_list_text(self) -> str:
        """Same "graph n m" text format as the random-model exporter."""
        edges = self.edges()
        lines = ["graph %d %d" % (self.n, len(edges))]
        lines.extend("%d %d" % e for e in edges)
        return "\n".join(lines) + "\n"


def pair_index(k: int, u: int, v: int) -> int:
    return u * k + v


def kronecker_square(t: Tournament) -> ProductGraph:
    """(u,v) ~ (x,y) iff (u->x and v->y) or (x->u and y->v)."""
    k = t.k
    rows = [0] * (k * k)
    for u in range(k):
        for x in range(k):
            if not t.has_arc(u, x):
                continue
            for v in range(k):
                row_v = t.out_rows[v]
                base = u * k + v
                while row_v:
                    y = (row_v & -row_v).bit_length() - 1
                    a, b = base, x * k + y
                    rows[a] |= 1 << b
                    rows[b] |= 1 << a
                    row_v &= row_v - 1
    return ProductGraph(k, tuple(rows))


def is_connected(g: ProductGraph) -> bool:
    n = g.n
    if n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            a = (f & -f).bit_length() - 1
            nxt |= g.rows[a]
            f &= f - 1
        nxt &= ~seen
        seen |= nxt
        frontier = nxt
    return seen == (1 << n) - 1


def components(g: ProductGraph) -> list[list[int]]:
    n = g.n
    unseen = (1 << n) - 1
    comps = []
    while unseen:
        start = (unseen & -unseen).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                a = (f & -f).bit_length() - 1
                nxt |= g.rows[a]
                f &= f - 1
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        comps.append([i for i in range(n) if (comp >> i) & 1])
        unseen &= ~comp
    return comps


def strong_regularity_params(g: ProductGraph):
    """Exhaustive census: (v, deg, lambda_adj, mu_nonadj), or None if not SRG."""
    n = g.n
    if n == 0:
        return None
    deg = g.degree(0)
    if any(g.degree(a) != deg for a in range(1, n)):
        return None
    lam = mu = None
    for a in range(n):
        for b in range(a + 1, n):
            common = (g.rows[a] & g.rows[b]).bit_count()
            if g.adjacent(a, b):
                if lam is None:
                    lam = common
                elif common != lam:
                    return None
            else:
                if mu is None:
                    mu = common
                elif common != mu:
                    return None
    if lam is None:
        lam = 0
    if mu is None:
        mu = 0
    return (n, deg, lam, mu)


def adjacency_identity_check(t: Tournament) -> bool:
    """Exact test of A(T x T) = (M (x) M + (J - I) (x) (J - I)) / 2."""
    k = t.k
    m = signed_adjacency(t)
    ji = np.ones((k, k), dtype=np.int64) - np.eye(k, dtype=np.int64)
    twice = np.kron(m, m) + np.kron(ji, ji)
    if np.any(twice % 2 != 0):
        return False
    return bool(np.array_equal(twice // 2, kronecker_square(t).adjacency_matrix()))


def spectrum_check(t: Tournament) -> bool:
    """Verify the SRG spectrum of the square via exact integer identities.

    Checks A 1 = deg 1, the relation A^2 = deg I + lam A + mu (J - I - A)
    with the census parameters, and that the trace system pins the
    eigenvalue multiplicities at {1, (k-1)^2/2, (k-1)(k+3)/2} for the
    eigenvalues {(k-1)^2/2, (k+1)/2, -(k-1)/2}.  At k = 3 the first two
    eigenvalues coincide (the square is 3 K_3) and the counts just merge.
    """
    if not is_doubly_regular(t).is_doubly_regular:
        raise NotDoublyRegular("spectrum check needs a doubly regular source")
    k = t.k
    g = kronecker_square(t)
    params = strong_regularity_params(g)
    if params is None:
        return False
    n, deg, lam, mu = params
    if n != k * k or 2 * deg != (k - 1) ** 2:
        return False
    if 4 * lam != (k - 1) * (k - 3) + 4 or 4 * mu != (k - 1) * (k - 3):
        return False
    a = g.adjacency_matrix()
    j = np.ones((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    if not np.array_equal(a @ a, deg * eye + lam * a + mu * (j - eye - a)):
        return False
    if np.any(a.sum(axis=1) != deg):
        return False
    # Multiplicities from traces: m+ + m- = k^2 - 1 and
    # theta m+ + tau m- = -deg (trace zero), solved exactly.
    theta = Fraction(k + 1, 2)
    tau = Fraction(-(k - 1), 2)
    m_minus = (Fraction(-deg) - theta * (k * k - 1)) / (tau - theta)
    m_plus = Fraction(k * k - 1) - m_minus
    if m_plus.denominator != 1 or m_minus.denominator != 1:
        return False
    if m_plus != Fraction((k - 1) ** 2, 2) or m_minus != Fraction((k - 1) * (k + 3), 2):
        return False
    # tr A^2 = sum of squared eigenvalues must equal 2|E|.
    sq_sum = Fraction(deg) ** 2 + theta**2 * m_plus + tau**2 * m_minus
    return sq_sum == int(np.trace(a @ a)) == 2 * g.edge_count()


def float_spectrum_check(t: Tournament, tol: float = 1e-8) -> bool:
    """Secondary float cross-check of the eigenvalues of the square."""
    k = t.k
    vals = np.sort(np.linalg.eigvalsh(kronecker_square(t).adjacency_matrix().astype(float)))
    expected = np.sort(
        np.concatenate(
            [
                np.full((k - 1) * (k + 3) // 2, -(k - 1) / 2.0),
                np.full((k - 1) ** 2 // 2, (k + 1) / 2.0),
                np.full(1, (k - 1) ** 2 / 2.0),
            ]
        )
    )
    return bool(np.max(np.abs(vals - expected)) < tol)
