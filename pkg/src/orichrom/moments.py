"""Exact finite-n moments of equitable tournament-colouring counts.

Everything on the exact path is arbitrary-precision rational: moments of
the uniform-arc multigraph model come from multinomial sums over overlap
matrices (the transportation polytope with row and column sums n/k), and
moments of the oriented configuration model additionally sum over edge
weightings of the Kronecker-square graph.  Brute-force enumeration
oracles over arc sequences / point matchings are included for the sizes
where that is feasible, and log-space asymptotic companions cover large
n.  Floats appear only in those companions and in the analytic ratio
formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DivisibilityError, DomainError, SizeLimit
from .product import ProductGraph, kronecker_square
from .tournament import Tournament

DEFAULT_LATTICE_BUDGET = 10_000_000


@dataclass
class MomentValue:
    exact: Fraction | None
    float_value: float
    formula_tag: str


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return math.factorial(n)


def frac_log(x: Fraction) -> float:
    """log of a positive rational, safe for huge numerators/denominators."""
    if x <= 0:
        raise DomainError("log of non-positive rational")
    return math.log(x.numerator) - math.log(x.denominator)


def frac_to_float(x: Fraction) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


def _double_factorial_odd(n: int) -> int:
    """(n)!! for odd n >= -1; the number of perfect matchings on n+1 points."""
    if n <= 0:
        return 1
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def equitable_colouring_count(n: int, k: int) -> int:
    if n % k != 0:
        raise DivisibilityError("k = %d must divide n = %d" % (k, n))
    return _fact(n) // (_fact(n // k) ** k)


def near_equitable_colouring_count(n: int, k: int) -> int:
    """Colourings with class sizes q+1 for the first n mod k classes, q after."""
    q, r = divmod(n, k)
    out = _fact(n)
    for i in range(k):
        out //= _fact(q + 1 if i < r else q)
    return out


# ---------------------------------------------------------------------------
# uniform-arc multigraph model


def first_moment_mnm_exact(n: int, m: int, k: int) -> MomentValue:
    """E Y for the m-arc model: n!/((n/k)!)^k * ((k-1)/(2k))^m exactly.

    An equitable colouring makes each uniform ordered pair compatible
    with probability (k-1)/(2k), independently per arc.
    """
    count = equitable_colouring_count(n, k)
    val = Fraction(count) * Fraction(k - 1, 2 * k) ** m
    return MomentValue(val, frac_to_float(val), "mnm-first-exact")


def first_moment_mnm_near_equitable(n: int, m: int, k: int) -> MomentValue:
    """Near-equitable companion: class sizes differ by at most one."""
    q, r = divmod(n, k)
    sizes = [q + 1] * r + [q] * (k - r)
    good = (n * n - sum(s * s for s in sizes)) // 2
    val = Fraction(near_equitable_colouring_count(n, k)) * Fraction(good, n * n) ** m
    return MomentValue(val, frac_to_float(val), "mnm-first-near-equitable")


def log_asymptotic_first_moment_mnm(n: int, m: int, k: int) -> float:
    """log of k^(k/2) (2 pi n)^(-(k-1)/2) (k ((k-1)/(2k))^c)^n at c = m/n."""
    return (
        0.5 * k * math.log(k)
        - 0.5 * (k - 1) * math.log(2 * math.pi * n)
        + n * math.log(k)
        + m * math.log((k - 1) / (2.0 * k))
    )


def transportation_matrices(k: int, s: int, budget: int = DEFAULT_LATTICE_BUDGET):
    """All k x k nonnegative integer matrices with every row/column sum s.

    Lattice-point walk over the transportation polytope: rows are filled
    in order against remaining column capacities, the last row being
    forced.  Raises SizeLimit when more than ``budget`` points appear.
    """
    colrem = [s] * k
    row = [0] * k
    mat: list[tuple[int, ...]] = []
    emitted = 0

    def fill_row(i: int, j: int, rem: int):
        if j == k - 1:
            if rem <= colrem[j]:
                row[j] = rem
                colrem[j] -= rem
                yield from next_row(i)
                colrem[j] += rem
            return
        for val in range(min(rem, colrem[j]) + 1):
            row[j] = val
            colrem[j] -= val
            yield from fill_row(i, j + 1, rem - val)
            colrem[j] += val

    def next_row(i: int):
        nonlocal emitted
        mat.append(tuple(row))
        if i == k - 2:
            if all(c >= 0 for c in colrem):
                last = tuple(colrem)
                if sum(last) == s:
                    emitted += 1
                    if emitted > budget:
                        raise SizeLimit("transportation lattice exceeds %d points" % budget)
                    yield tuple(mat) + (last,)
        else:
            yield from fill_row(i + 1, 0, s)
        mat.pop()

    if k == 1:
        yield ((s,),)
        return
    yield from fill_row(0, 0, s)


def second_moment_mnm_exact(
    n: int, m: int, t: Tournament, budget: int = DEFAULT_LATTICE_BUDGET
) -> MomentValue:
    """E Y^2 as an exact sum over integer overlap matrices.

    Each matrix N with margins n/k contributes n!/prod N_v! times the
    m-th power of the edge mass sum_{uv in E(square)} N_u N_v / n^2.
    """
    k = t.k
    if n % k != 0:
        raise DivisibilityError("k = %d must divide n = %d" % (k, n))
    g = kronecker_square(t)
    edges = g.edges()
    total = Fraction(0)
    nfact = _fact(n)
    for mat in transportation_matrices(k, n // k, budget):
        flat = [x for r in mat for x in r]
        coef = nfact
        for x in flat:
            coef //= _fact(x)
        mass = sum(flat[a] * flat[b] for a, b in edges)
        total += coef * Fraction(mass, n * n) ** m
    return MomentValue(total, frac_to_float(total), "mnm-second-exact")


def second_moment_ratio_mnm(k: int, c: float) -> float:
    """Closed-form limit E Y^2 / (E Y)^2 for the m = cn model.

    ((k-1)^4 / (((k-1)^2 - 2c)^2 - 4 c^2 k^2))^((k-1)^2/4); the
    denominator vanishes only at k = (c+1) +- sqrt(c^2 + 4c), outside
    the admissible range c < l_k / 2.
    """
    if c <= 0:
        raise DomainError("c must be positive")
    denom = ((k - 1) ** 2 - 2 * c) ** 2 - 4 * c * c * k * k
    if denom <= 0:
        raise DomainError("ratio undefined: denominator %r <= 0" % denom)
    return ((k - 1) ** 4 / denom) ** ((k - 1) ** 2 / 4.0)


# ---------------------------------------------------------------------------
# oriented configuration model


def _class_matching_weights(k: int, s: int):
    """Symmetric integer off-diagonal matrices with row sums s, with their
    matching counts prod_i s!/prod_{j != i} x_ij! * prod_{i<j} x_ij!."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    x = {}
    rem = [s] * k

    def rec(idx: int):
        if idx == len(pairs):
            if all(r == 0 for r in rem):
                w = 1
                for i in range(k):
                    w *= _fact(s)
                    for j in range(k):
                        if j != i:
                            w //= _fact(x[(min(i, j), max(i, j))])
                for p in pairs:
                    w *= _fact(x[p])
                yield dict(x), w
            return
        i, j = pairs[idx]
        # feasibility: everything left for row i must fit in its later pairs
        later_i = sum(1 for (a, b) in pairs[idx:] if a == i or b == i)
        for val in range(min(rem[i], rem[j]) + 1):
            if later_i == 1 and val != rem[i]:
                continue
            x[(i, j)] = val
            rem[i] -= val
            rem[j] -= val
            yield from rec(idx + 1)
            rem[i] += val
            rem[j] += val
        del x[(i, j)]

    yield from rec(0)


def first_moment_cnd(n: int, d: int, k: int, t: Tournament) -> MomentValue:
    """E Y for the oriented configuration model, exactly.

    Pairs (C, h) are counted through the class-matching lattice: an
    equitable colouring admits W matchings avoiding monochromatic pairs,
    and exactly one orientation in 2^(dn/2) matches the tournament, so
    E Y = count * W / ((dn-1)!! 2^(dn/2)).
    """
    if t.k != k:
        raise ValueError("tournament order %d != k = %d" % (t.k, k))
    if n % k != 0:
        raise DivisibilityError("k = %d must divide n = %d" % (k, n))
    if (d * n) % 2 != 0:
        raise DomainError("d*n must be even")
    count = equitable_colouring_count(n, k)
    if d == 0:
        val = Fraction(count)
        return MomentValue(val, frac_to_float(val), "cnd-first-exact")
    s = d * n // k
    w = sum(wt for _, wt in _class_matching_weights(k, s))
    val = Fraction(count * w, _double_factorial_odd(d * n - 1) * 2 ** (d * n // 2))
    return MomentValue(val, frac_to_float(val), "cnd-first-exact")


def second_moment_cnd_exact(
    n: int, d: int, t: Tournament, budget: int = DEFAULT_LATTICE_BUDGET
) -> MomentValue:
    """E Y^2 for the configuration model via the nested (A, B) lattice.

    The outer walk ranges over overlap matrices N (margins n/k); the
    inner walk over integer weights M_e on the edges of the square graph
    with sum_{e at v} M_e = d N_v.  Each pair contributes
    n!/prod N! * prod (dN)!/(dn)! * (dn/2)!/prod M_e!.
    """
    k = t.k
    if n % k != 0:
        raise DivisibilityError("k = %d must divide n = %d" % (k, n))
    if (d * n) % 2 != 0:
        raise DomainError("d*n must be even")
    g = kronecker_square(t)
    edges = g.edges()
    nfact = _fact(n)
    dnfact = _fact(d * n)
    half_fact = _fact(d * n // 2)
    total = Fraction(0)
    steps = 0
    for mat in transportation_matrices(k, n // k, budget):
        flat = [x for r in mat for x in r]
        a_coef = Fraction(nfact)
        for x in flat:
            a_coef = a_coef / _fact(x) * _fact(d * x)
        a_coef /= dnfact
        sigma = [d * x for x in flat]
        inner = Fraction(0)
        for weight in _edge_weight_sum(edges, sigma):
            steps += 1
            if steps > budget:
                raise SizeLimit("edge-weight lattice exceeds %d points" % budget)
            denom = 1
            for w in weight:
                denom *= _fact(w)
            inner += Fraction(half_fact, denom)
        total += a_coef * inner
    return MomentValue(total, frac_to_float(total), "cnd-second-exact")


def _edge_weight_sum(edges, sigma):
    """Integer assignments M_e >= 0 with sum over edges at v equal sigma[v].

    Edges are filled in order; when an edge is the last one incident to
    a vertex it must absorb that vertex's remaining budget, which prunes
    the walk down to the feasible lattice.
    """
    m = len(edges)
    weight = [0] * m
    rem = list(sigma)
    # how many slots at positions >= idx still touch each vertex
    later = [[0] * len(sigma) for _ in range(m + 1)]
    for idx in range(m - 1, -1, -1):
        later[idx] = list(later[idx + 1])
        a, b = edges[idx]
        later[idx][a] += 1
        later[idx][b] += 1

    def rec(idx: int):
        if idx == m:
            if all(r == 0 for r in rem):
                yield tuple(weight)
            return
        a, b = edges[idx]
        lo, hi = 0, min(rem[a], rem[b])
        if later[idx + 1][a] == 0:
            lo, hi = max(lo, rem[a]), min(hi, rem[a])
        if later[idx + 1][b] == 0:
            lo, hi = max(lo, rem[b]), min(hi, rem[b])
        for val in range(lo, hi + 1):
            weight[idx] = val
            rem[a] -= val
            rem[b] -= val
            yield from rec(idx + 1)
            rem[a] += val
            rem[b] += val
        weight[idx] = 0

    yield from rec(0)


def log_asymptotic_first_moment_cnd(n: int, d: int, k: int) -> float:
    """log of k^(k/2) ((k-1)/(2 pi (k-2)))^((k-1)/2) n^(-(k-1)/2) k^n
    ((1/2)(1 - 1/k))^(dn/2)."""
    if k < 3:
        raise DomainError("needs k >= 3")
    return (
        0.5 * k * math.log(k)
        + 0.5 * (k - 1) * math.log((k - 1) / (2.0 * math.pi * (k - 2)))
        - 0.5 * (k - 1) * math.log(n)
        + n * math.log(k)
        + 0.5 * d * n * math.log(0.5 * (1.0 - 1.0 / k))
    )


def asymptotic_first_moment_cnd(n: int, d: int, k: int) -> float:
    logv = log_asymptotic_first_moment_cnd(n, d, k)
    try:
        return math.exp(logv)
    except OverflowError:
        return math.inf


def cnd_growth_rate(d: float, k: int) -> float:
    """Per-vertex exponential rate log(k ((1/2)(1-1/k))^(d/2)); the sign
    flips at d = u_k."""
    return math.log(k) + 0.5 * d * math.log(0.5 * (1.0 - 1.0 / k))


# ---------------------------------------------------------------------------
# the exponent functions f(a, b) and f(A, B)


def f_ab(a, b: dict, d: float) -> float:
    """First-moment exponent sum_{i<i'} b log((a_i a_i')^(d-1) / (2 b)^d).

    a is the colour-proportion vector, b the symmetric ordered-pair map
    with row sums matching a.  The per-pair denominator is (2 b)^d: the
    global factor 2^(-dn/2) distributes as (1/2)^(d b n) over pairs.
    """
    k = len(a)
    if any(x < 0 for x in a) or abs(sum(a) - 1.0) > 1e-9:
        raise DomainError("a must be a probability vector")
    for (i, j), val in b.items():
        if i == j or not (0 <= i < k and 0 <= j < k):
            raise DomainError("b keys must be ordered pairs of distinct colours")
        if val < 0:
            raise DomainError("b entries must be nonnegative")
        if abs(val - b.get((j, i), val)) > 1e-12:
            raise DomainError("b must be symmetric")
    for i in range(k):
        row = sum(b.get((i, j), 0.0) for j in range(k) if j != i)
        if abs(row - a[i]) > 1e-9:
            raise DomainError("row sums of b must match a")
    total = 0.0
    for i in range(k):
        for j in range(i + 1, k):
            bij = b.get((i, j), 0.0)
            if bij == 0.0:
                continue
            if a[i] <= 0 or a[j] <= 0:
                raise DomainError("b positive on a zero-proportion colour")
            total += bij * ((d - 1) * math.log(a[i] * a[j]) - d * math.log(2.0 * bij))
    return total


def f_ab_hat_value(k: int, d: float) -> float:
    """f at the uniform pair (a, b): log(k ((1/2)(1 - 1/k))^(d/2))."""
    return math.log(k) + 0.5 * d * math.log(0.5 * (1.0 - 1.0 / k))


def uniform_ab(k: int) -> tuple[list, dict]:
    a = [1.0 / k] * k
    b = {(i, j): 1.0 / (k * (k - 1)) for i in range(k) for j in range(k) if i != j}
    return a, b


def _check_AB(a_mat, b_map: dict, g: ProductGraph):
    k = g.source_order
    flat = [a_mat[i][j] for i in range(k) for j in range(k)]
    if any(x < 0 for x in flat):
        raise DomainError("A entries must be nonnegative")
    for i in range(k):
        if abs(sum(a_mat[i][j] for j in range(k)) - 1.0 / k) > 1e-9:
            raise DomainError("row sums of A must be 1/k")
        if abs(sum(a_mat[j][i] for j in range(k)) - 1.0 / k) > 1e-9:
            raise DomainError("column sums of A must be 1/k")
    edge_set = {tuple(e) for e in g.edges()}
    for (u, v), val in b_map.items():
        key = (u, v) if u < v else (v, u)
        if key not in edge_set:
            raise DomainError("B supported off the edge set of the square graph")
        if val < 0:
            raise DomainError("B entries must be nonnegative")
    return flat


def f_AB(a_mat, b_map: dict, g: ProductGraph, d: float) -> float:
    """Second-moment exponent (d-1) sum a log a - d sum_E b log(2b)."""
    flat = _check_AB(a_mat, b_map, g)
    ent = sum(x * math.log(x) for x in flat if x > 0)
    eterm = 0.0
    for (u, v), val in b_map.items():
        if u > v:
            continue
        if val > 0:
            eterm += val * math.log(2.0 * val)
    return (d - 1) * ent - d * eterm


def f_AB_pair_form(a_mat, b_map: dict, g: ProductGraph, d: float) -> float:
    """Equivalent form -sum a log a + d sum_E b log(a_u a_v / (2 b))."""
    flat = _check_AB(a_mat, b_map, g)
    ent = -sum(x * math.log(x) for x in flat if x > 0)
    eterm = 0.0
    for (u, v), val in b_map.items():
        if u > v or val == 0:
            continue
        if flat[u] <= 0 or flat[v] <= 0:
            raise DomainError("B positive where A vanishes")
        eterm += val * math.log(flat[u] * flat[v] / (2.0 * val))
    return ent + d * eterm


def kl_argmax_B(a_mat, g: ProductGraph) -> dict:
    """The relaxed-constraint maximiser b*_uv = a_u a_v / (2 sum_E a_x a_y)."""
    k = g.source_order
    flat = [a_mat[i][j] for i in range(k) for j in range(k)]
    mass = sum(flat[u] * flat[v] for u, v in g.edges())
    if mass <= 0:
        raise DomainError("edge mass vanishes")
    return {(u, v): flat[u] * flat[v] / (2.0 * mass) for u, v in g.edges()}


def uniform_AB(k: int, g: ProductGraph) -> tuple[list, dict]:
    a = [[1.0 / (k * k)] * k for _ in range(k)]
    b = {(u, v): 2.0 / (k * k * (k - 1) ** 2) for u, v in g.edges()}
    return a, b


def f_AB_hat_value(k: int, d: float) -> float:
    """f at the uniform pair: log k^2 + d log((1/2)(1 - 1/k))."""
    return 2.0 * math.log(k) + d * math.log(0.5 * (1.0 - 1.0 / k))


# ---------------------------------------------------------------------------
# the Hessian determinant of the constraint system


def hessian_det_closed_form(k: int) -> Fraction:
    """(k-1)^(2k) (k(k-2))^(2k-2) ((k^2-k+4)(k^2-3k+4))^((k-1)^2/2) / 2^(k^2-1)."""
    if k < 3 or k % 2 == 0:
        raise DomainError("needs odd k >= 3")
    num = (k - 1) ** (2 * k) * (k * (k - 2)) ** (2 * k - 2)
    num *= ((k * k - k + 4) * (k * k - 3 * k + 4)) ** ((k - 1) ** 2 // 2)
    return Fraction(num, 2 ** (k * k - 1))


def constraint_matrix(t: Tournament) -> list[list[int]]:
    """The constraint matrix D-hat of the (A, B) system, first row removed.

    Rows: the k-1 remaining A-row-sum constraints, the k A-column-sum
    constraints, then one row per vertex (i, j) of the square graph tying
    its incident edge weights to -a_ij.  Columns: the k^2 entries a_ij at
    index i*k + j, then one column per edge of the square in the product
    module's canonical order.  Column permutations leave D D^T unchanged.
    """
    k = t.k
    g = kronecker_square(t)
    edges = g.edges()
    ncols = k * k + len(edges)
    rows = []
    for i in range(1, k):
        row = [0] * ncols
        for j in range(k):
            row[i * k + j] = 1
        rows.append(row)
    for j in range(k):
        row = [0] * ncols
        for i in range(k):
            row[i * k + j] = 1
        rows.append(row)
    for v in range(k * k):
        row = [0] * ncols
        row[v] = -1
        for idx, (a, b) in enumerate(edges):
            if a == v or b == v:
                row[k * k + idx] = 1
        rows.append(row)
    return rows


def bareiss_determinant(mat) -> int:
    """Fraction-free Gaussian elimination; exact over the integers."""
    m = [list(map(int, row)) for row in mat]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[i][i]
        for r in range(i + 1, n):
            mri = m[r][i]
            row_r = m[r]
            row_i = m[i]
            for c in range(i + 1, n):
                row_r[c] = (row_r[c] * piv - mri * row_i[c]) // prev
            row_r[i] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def hessian_det_numeric(t: Tournament) -> int:
    """det(D D^T) for the explicit constraint matrix, by exact elimination.

    D has k^2 + 2k - 1 rows and far more columns, so the Gram matrix on
    the row side is the full-rank object whose determinant the closed
    form describes.
    """
    k = t.k
    if k > 11:
        raise SizeLimit("numeric Hessian determinant capped at k <= 11")
    d = constraint_matrix(t)
    nrows = len(d)
    gram = [[sum(a * b for a, b in zip(d[i], d[j])) for j in range(nrows)] for i in range(nrows)]
    return bareiss_determinant(gram)


# ---------------------------------------------------------------------------
# brute-force oracles


def _equitable_assignments(n: int, k: int):
    if n % k != 0:
        raise DivisibilityError("k must divide n")
    size = n // k
    out: list[tuple[int, ...]] = []
    colour = [-1] * n
    counts = [0] * k

    def rec(v: int):
        if v == n:
            out.append(tuple(colour))
            return
        for c in range(k):
            if counts[c] < size:
                counts[c] += 1
                colour[v] = c
                rec(v + 1)
                counts[c] -= 1
        colour[v] = -1

    rec(0)
    return out


def _arc_ok(t: Tournament, h, u: int, v: int) -> bool:
    return h[u] != h[v] and t.has_arc(h[u], h[v])


def oracle_first_moment_mnm(n: int, m: int, t: Tournament) -> Fraction:
    """Literal enumeration of all n^(2m) arc sequences times all equitable
    colourings."""
    k = t.k
    hs = _equitable_assignments(n, k)
    pairs = [(u, v) for u in range(n) for v in range(n)]
    total = 0
    seqs = [[]]
    for _ in range(m):
        seqs = [s + [p] for s in seqs for p in pairs]
    for seq in seqs:
        for h in hs:
            if all(_arc_ok(t, h, u, v) for u, v in seq):
                total += 1
    return Fraction(total, len(pairs) ** m)


def oracle_second_moment_mnm(n: int, m: int, t: Tournament) -> Fraction:
    """Literal E Y^2: average of (number of valid colourings)^2 over all
    arc sequences."""
    k = t.k
    hs = _equitable_assignments(n, k)
    pairs = [(u, v) for u in range(n) for v in range(n)]
    seqs = [[]]
    for _ in range(m):
        seqs = [s + [p] for s in seqs for p in pairs]
    total = 0
    for seq in seqs:
        cnt = sum(1 for h in hs if all(_arc_ok(t, h, u, v) for u, v in seq))
        total += cnt * cnt
    return Fraction(total, len(pairs) ** m)


def _perfect_matchings(points: int):
    """All perfect matchings of range(points) as lists of point pairs."""
    if points % 2 != 0:
        raise DomainError("odd point count")
    pts = list(range(points))

    def rec(avail):
        if not avail:
            yield []
            return
        a = avail[0]
        for idx in range(1, len(avail)):
            b = avail[idx]
            rest = avail[1:idx] + avail[idx + 1 :]
            for tail in rec(rest):
                yield [(a, b)] + tail

    yield from rec(pts)


def oracle_first_moment_cnd(n: int, d: int, t: Tournament, literal_orientations: bool = False) -> Fraction:
    """Enumerate matchings of the dn points (and orientations for small cases).

    For each matching and equitable colouring with no monochromatic
    pair, exactly one orientation per edge matches the tournament, so
    the orientation average is the indicator divided by 2^(dn/2); the
    literal flag instead walks all 2^(dn/2) orientations.
    """
    k = t.k
    if n % k != 0:
        raise DivisibilityError("k must divide n")
    hs = _equitable_assignments(n, k)
    half = d * n // 2
    total = 0
    matchings = 0
    for matching in _perfect_matchings(d * n):
        matchings += 1
        groups = [(a // d, b // d) for a, b in matching]
        if literal_orientations:
            for bits in range(1 << half):
                arcs = [
                    (u, v) if (bits >> i) & 1 else (v, u)
                    for i, (u, v) in enumerate(groups)
                ]
                for h in hs:
                    if all(_arc_ok(t, h, u, v) for u, v in arcs):
                        total += 1
            continue
        for h in hs:
            if all(h[u] != h[v] for u, v in groups):
                total += 1
    return Fraction(total, matchings * (1 << half))


def oracle_second_moment_cnd(n: int, d: int, t: Tournament) -> Fraction:
    """E Y^2 over matchings, grouping colourings by forced orientation.

    Two colourings are simultaneously valid for an orientation iff they
    force the identical direction on every matched pair, so the sum of
    Y^2 over the 2^(dn/2) orientations is the number of colouring pairs
    in the same forcing class.
    """
    k = t.k
    if n % k != 0:
        raise DivisibilityError("k must divide n")
    hs = _equitable_assignments(n, k)
    half = d * n // 2
    total = 0
    matchings = 0
    for matching in _perfect_matchings(d * n):
        matchings += 1
        groups = [(a // d, b // d) for a, b in matching]
        if any(u == v for u, v in groups):
            continue
        classes: dict[tuple, int] = {}
        for h in hs:
            if any(h[u] == h[v] for u, v in groups):
                continue
            key = tuple(t.has_arc(h[u], h[v]) for u, v in groups)
            classes[key] = classes.get(key, 0) + 1
        total += sum(c * c for c in classes.values())
    return Fraction(total, matchings * (1 << half))
