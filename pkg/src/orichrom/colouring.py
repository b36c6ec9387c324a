"""Exact oriented colourability: solvers, fast paths, and the window construction.

An oriented colouring partitions the vertices into arc-free classes such
that between any two classes all arcs agree in direction; equivalently it
is a homomorphism onto a tournament on the colour set.  The exact solver
discovers that inter-class tournament on the fly while backtracking over
vertex colours, so the super-exponentially many candidate tournaments are
never enumerated.  Loops or two-cycles make every colouring invalid and
are reported as AboveCap with a diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CoreTooDense, NotTwoRegular, NotUnicyclic
from .randmodels import OrientedMultigraph, is_simple
from .tournament import Tournament, paley


@dataclass
class OrientedColouring:
    """Vertex colours plus the induced direction on each colour-class pair.

    class_orientation maps the unordered pair (min, max) to the ordered
    pair (src, dst); it is a sub-tournament on the colours in use.
    """

    colour: list[int]
    class_orientation: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def colours_used(self) -> int:
        return len(set(self.colour))


@dataclass
class ChiResult:
    chi: int | None
    witness: OrientedColouring | None
    nodes_explored: int
    above_cap: bool = False
    diagnostic: str | None = None


def _dedup_arcs(g: OrientedMultigraph) -> list[tuple[int, int]]:
    return sorted(set(g.arcs))


def _has_two_cycle(arcs) -> bool:
    s = set(arcs)
    return any((v, u) in s for u, v in s if u != v)


def orientation_from_assignment(g: OrientedMultigraph, colour) -> dict | None:
    """Derive the class orientation from an assignment; None on conflict."""
    orient: dict[tuple[int, int], tuple[int, int]] = {}
    for u, v in g.arcs:
        cu, cv = colour[u], colour[v]
        if cu == cv:
            return None
        key = (cu, cv) if cu < cv else (cv, cu)
        need = (cu, cv)
        prev = orient.get(key)
        if prev is None:
            orient[key] = need
        elif prev != need:
            return None
    return orient


def is_valid_oriented_colouring(g: OrientedMultigraph, colouring) -> bool:
    """Check the two invariants: arc-free classes, consistent pair directions.

    Accepts either an OrientedColouring (whose stored orientation must
    cover and agree with every arc) or a bare colour sequence (whose
    induced orientation must be conflict-free).  A loop invalidates any
    colouring.
    """
    colour = colouring.colour if isinstance(colouring, OrientedColouring) else list(colouring)
    if len(colour) != g.n:
        raise ValueError("colour list length %d != n = %d" % (len(colour), g.n))
    if any(c < 0 for c in colour):
        raise ValueError("negative colour")
    if g.has_loop:
        return False
    derived = orientation_from_assignment(g, colour)
    if derived is None:
        return False
    if isinstance(colouring, OrientedColouring):
        stored = colouring.class_orientation
        for key, (s, t) in stored.items():
            if {s, t} != set(key):
                return False
        for key, need in derived.items():
            if key not in stored or stored[key] != need:
                return False
    return True


# ---------------------------------------------------------------------------
# homomorphism search (T-colouring)


def _union_rows(rows, mask: int) -> int:
    out = 0
    while mask:
        c = (mask & -mask).bit_length() - 1
        out |= rows[c]
        mask &= mask - 1
    return out


class _BudgetExceeded(Exception):
    pass


class _HomSearcher:
    """Backtracking homomorphism search with bitset domains, AC propagation,
    and minimum-remaining-values ordering."""

    def __init__(self, n: int, arcs, target: Tournament, pin_first: bool, budget=None):
        self.n = n
        self.t = target
        self.out_rows = target.out_rows
        self.in_rows = tuple(target.in_row(v) for v in range(target.k))
        self.nbrs: list[list[tuple[int, bool]]] = [[] for _ in range(n)]
        for u, v in arcs:
            self.nbrs[u].append((v, True))
            self.nbrs[v].append((u, False))
        self.pin_first = pin_first
        self.budget = budget
        self.nodes = 0

    def _propagate(self, dom: list[int], seeds) -> bool:
        queue = list(seeds)
        in_queue = set(queue)
        while queue:
            x = queue.pop()
            in_queue.discard(x)
            dx = dom[x]
            sup_out = _union_rows(self.out_rows, dx)
            sup_in = _union_rows(self.in_rows, dx)
            for y, x_to_y in self.nbrs[x]:
                allowed = sup_out if x_to_y else sup_in
                new = dom[y] & allowed
                if new != dom[y]:
                    if not new:
                        return False
                    dom[y] = new
                    if y not in in_queue:
                        queue.append(y)
                        in_queue.add(y)
        return True

    def search(self):
        full = (1 << self.t.k) - 1
        dom = [full] * self.n
        assigned = [False] * self.n
        if self.n and self.pin_first:
            start = max(range(self.n), key=lambda v: (len(self.nbrs[v]), -v))
            dom[start] = 1
            if not self._propagate(dom, [start]):
                return None, self.nodes
        return self._solve(dom, assigned), self.nodes

    def _solve(self, dom, assigned):
        pick = -1
        best = None
        for v in range(self.n):
            if not assigned[v]:
                size = dom[v].bit_count()
                key = (size, -len(self.nbrs[v]))
                if best is None or key < best:
                    best = key
                    pick = v
        if pick < 0:
            return [d.bit_length() - 1 for d in dom]
        mask = dom[pick]
        while mask:
            bit = mask & -mask
            mask &= mask - 1
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _BudgetExceeded
            saved = dom[:]
            dom[pick] = bit
            assigned[pick] = True
            if self._propagate(dom, [pick]):
                res = self._solve(dom, assigned)
                if res is not None:
                    return res
            dom[:] = saved
            assigned[pick] = False
        return None


def t_colourable(
    g: OrientedMultigraph, target: Tournament, node_budget: int | None = None
) -> OrientedColouring | None:
    """Find a homomorphism of g onto the tournament, or prove none exists.

    Loops and two-cycles are immediately infeasible (the target has
    neither); repeated same-direction arcs impose the same constraint
    once.  Vertex-transitive targets pin the first image, which is sound
    because any homomorphism composes with a rotation.
    """
    res, _ = t_colourable_with_stats(g, target, node_budget)
    return res


def t_colourable_with_stats(
    g: OrientedMultigraph, target: Tournament, node_budget: int | None = None
):
    """t_colourable plus the explored node count; raises _BudgetExceeded when
    a node budget is given and exhausted before a decision."""
    if g.has_loop:
        return None, 0
    arcs = _dedup_arcs(g)
    if _has_two_cycle(arcs):
        return None, 0
    searcher = _HomSearcher(
        g.n, arcs, target, pin_first=target.vertex_transitive, budget=node_budget
    )
    assignment, nodes = searcher.search()
    if assignment is None:
        return None, nodes
    return _to_colouring(g, assignment, target), nodes


def _to_colouring(g: OrientedMultigraph, assignment, target: Tournament) -> OrientedColouring:
    used = sorted(set(assignment))
    orient = {}
    for i, a in enumerate(used):
        for b in used[i + 1 :]:
            orient[(a, b)] = (a, b) if target.has_arc(a, b) else (b, a)
    col = OrientedColouring(list(assignment), orient)
    assert is_valid_oriented_colouring(g, col)
    return col


# ---------------------------------------------------------------------------
# exact oriented chromatic number


def oriented_chromatic_number(g: OrientedMultigraph, cap: int) -> ChiResult:
    """Smallest k <= cap admitting a valid oriented k-colouring.

    Backtracks over vertex colours while building the inter-class
    orientation incrementally.  Symmetry is broken by requiring colour
    labels to appear in increasing first-use order (which also pins the
    first vertex to colour 0).
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if g.has_loop:
        return ChiResult(None, None, 0, above_cap=True, diagnostic="loop: chi_o is infinite")
    arcs = _dedup_arcs(g)
    if _has_two_cycle(arcs):
        return ChiResult(None, None, 0, above_cap=True, diagnostic="two-cycle: chi_o is infinite")
    order = _bfs_order(g.n, arcs)
    nbrs: list[list[tuple[int, bool]]] = [[] for _ in range(g.n)]
    for u, v in arcs:
        nbrs[u].append((v, True))
        nbrs[v].append((u, False))
    nodes = 0
    for k in range(1, cap + 1):
        colour = [-1] * g.n
        orient: dict[tuple[int, int], tuple[int, int]] = {}
        found, used_nodes = _partition_search(order, nbrs, colour, orient, 0, 0, k)
        nodes += used_nodes
        if found:
            witness = OrientedColouring(colour, dict(orient))
            assert is_valid_oriented_colouring(g, witness)
            return ChiResult(k, witness, nodes)
    return ChiResult(None, None, nodes, above_cap=True)


def _bfs_order(n: int, arcs) -> list[int]:
    und = [set() for _ in range(n)]
    for u, v in arcs:
        und[u].add(v)
        und[v].add(u)
    seen = [False] * n
    order = []
    for root in sorted(range(n), key=lambda v: (-len(und[v]), v)):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(und[x], key=lambda w: (-len(und[w]), w)):
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return order


def _partition_search(order, nbrs, colour, orient, idx, used, k):
    if idx == len(order):
        return True, 1
    v = order[idx]
    nodes = 1
    limit = min(used + 1, k)
    for c in range(limit):
        added = []
        ok = True
        for w, v_to_w in nbrs[v]:
            cw = colour[w]
            if cw < 0:
                continue
            if cw == c:
                ok = False
                break
            key = (c, cw) if c < cw else (cw, c)
            need = (c, cw) if v_to_w else (cw, c)
            prev = orient.get(key)
            if prev is None:
                orient[key] = need
                added.append(key)
            elif prev != need:
                ok = False
                break
        if ok:
            colour[v] = c
            found, sub = _partition_search(order, nbrs, colour, orient, idx + 1, max(used, c + 1), k)
            nodes += sub
            if found:
                return True, nodes
            colour[v] = -1
        for key in added:
            del orient[key]
    return False, nodes


# ---------------------------------------------------------------------------
# cycle fast paths


def cycle_c3_colourable(orientation) -> bool:
    """An oriented cycle maps onto the directed 3-cycle iff the number of
    forward arcs minus backward arcs is divisible by 3."""
    bits = list(orientation)
    if len(bits) < 3:
        raise ValueError("cycle length must be >= 3")
    f = sum(1 for b in bits if b)
    return (2 * f - len(bits)) % 3 == 0


def cycle_t3_colourable(orientation) -> bool:
    """An oriented cycle maps onto the transitive 3-tournament iff no three
    cyclically consecutive arcs share a direction."""
    bits = [bool(b) for b in orientation]
    n = len(bits)
    if n < 3:
        raise ValueError("cycle length must be >= 3")
    return not any(bits[i] == bits[(i + 1) % n] == bits[(i + 2) % n] for i in range(n))


def cycle_graph(orientation) -> OrientedMultigraph:
    """The oriented cycle with bit i orienting edge {i, i+1}: True = forward."""
    bits = list(orientation)
    n = len(bits)
    arcs = [((i, (i + 1) % n) if bits[i] else ((i + 1) % n, i)) for i in range(n)]
    return OrientedMultigraph(n, arcs)


def _cycle_components(g: OrientedMultigraph):
    """Decompose a simple 2-regular graph into per-cycle orientation bits."""
    arcs = set(g.arcs)
    und = [set() for _ in range(g.n)]
    for u, v in arcs:
        und[u].add(v)
        und[v].add(u)
    if any(len(s) != 2 for s in und):
        raise NotTwoRegular("every vertex must have exactly two neighbours")
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        prev, cur = None, start
        while True:
            nxt = next(w for w in sorted(und[cur]) if w != prev)
            if nxt == start:
                break
            cycle.append(nxt)
            seen[nxt] = True
            prev, cur = cur, nxt
        bits = [
            (cycle[i], cycle[(i + 1) % len(cycle)]) in arcs for i in range(len(cycle))
        ]
        comps.append(bits)
    return comps


def two_regular_chi(g: OrientedMultigraph) -> int:
    """chi_o of a simple 2-regular oriented graph, in {2, 3, 4, 5}.

    2 iff every component is an alternating even cycle; else 3 iff all
    components are C3-colourable or all are T3-colourable (one common
    3-tournament must host every component); else 5 iff some component
    is a directed 5-cycle, else 4.
    """
    if not is_simple(g):
        raise NotTwoRegular("graph must be simple")
    comps = _cycle_components(g)
    alt = all(
        len(bits) % 2 == 0 and all(bits[i] != bits[(i + 1) % len(bits)] for i in range(len(bits)))
        for bits in comps
    )
    if alt:
        return 2
    if all(cycle_c3_colourable(b) for b in comps) or all(cycle_t3_colourable(b) for b in comps):
        return 3
    if any(len(b) == 5 and (all(b) or not any(b)) for b in comps):
        return 5
    return 4


# ---------------------------------------------------------------------------
# trees, unicyclic components, and the 4-or-5 construction


def _und_adj(g: OrientedMultigraph):
    und = [set() for _ in range(g.n)]
    for u, v in _dedup_arcs(g):
        und[u].add(v)
        und[v].add(u)
    return und


def _components_of(und):
    n = len(und)
    seen = [False] * n
    comps = []
    for root in range(n):
        if seen[root]:
            continue
        comp = [root]
        seen[root] = True
        queue = [root]
        while queue:
            x = queue.pop()
            for y in und[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def _find_cycle(und, comp):
    """Vertices of the unique cycle of a unicyclic component, in cyclic order."""
    deg = {v: len(und[v]) for v in comp}
    queue = [v for v in comp if deg[v] == 1]
    alive = set(comp)
    while queue:
        v = queue.pop()
        alive.discard(v)
        for w in und[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    cyc = sorted(alive)
    start = cyc[0]
    order = [start]
    prev, cur = None, start
    while True:
        nxt = next(w for w in sorted(und[cur]) if w in alive and w != prev)
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def _is_directed_cycle(arcs: set, order) -> bool:
    L = len(order)
    fwd = all((order[i], order[(i + 1) % L]) in arcs for i in range(L))
    bwd = all((order[(i + 1) % L], order[i]) in arcs for i in range(L))
    return fwd or bwd


def colour_unicyclic_45(g: OrientedMultigraph) -> OrientedColouring:
    """Valid T5-colouring of a forest/unicyclic graph; T4 when no component
    holds a directed 5-cycle.

    Each cycle is coloured by homomorphism search restricted to the
    cycle, then the colouring grows outward along the trees; since every
    vertex of the targets has both in- and out-neighbours the greedy
    extension never blocks.
    """
    if not is_simple(g):
        raise NotUnicyclic("graph must be simple")
    arcs = set(_dedup_arcs(g))
    und = _und_adj(g)
    comps = _components_of(und)
    cycles = []
    for comp in comps:
        e = sum(1 for u, v in arcs if u in set(comp) and v in set(comp))
        if e == len(comp) - 1:
            cycles.append(None)
        elif e == len(comp):
            cycles.append(_find_cycle(und, comp))
        else:
            raise NotUnicyclic("component with %d vertices carries %d edges" % (len(comp), e))
    from .tournament import t4, t5

    needs_t5 = any(cyc is not None and len(cyc) == 5 and _is_directed_cycle(arcs, cyc) for cyc in cycles)
    target = t5() if needs_t5 else t4()
    colour = [-1] * g.n
    for comp, cyc in zip(comps, cycles):
        if cyc is None:
            root = comp[0]
            colour[root] = 0
            _extend_tree(arcs, und, colour, [root], target)
        else:
            cyc_set = set(cyc)
            sub_arcs = [(u, v) for u, v in arcs if u in cyc_set and v in cyc_set]
            relab = {v: i for i, v in enumerate(cyc)}
            sub = OrientedMultigraph(len(cyc), [(relab[u], relab[v]) for u, v in sub_arcs])
            sol = t_colourable(sub, target)
            if sol is None:
                raise NotUnicyclic("cycle admits no colouring by the chosen target")
            for v in cyc:
                colour[v] = sol.colour[relab[v]]
            _extend_tree(arcs, und, colour, list(cyc), target)
    result = _to_colouring(g, colour, target)
    return result


def _extend_tree(arcs, und, colour, frontier, target: Tournament):
    queue = list(frontier)
    while queue:
        p = queue.pop(0)
        for w in sorted(und[p]):
            if colour[w] >= 0:
                continue
            if (p, w) in arcs:
                row = target.out_rows[colour[p]]
            else:
                row = target.in_row(colour[p])
            colour[w] = (row & -row).bit_length() - 1
            queue.append(w)


# ---------------------------------------------------------------------------
# oriented cliques and subgraph density


def is_oriented_clique(g: OrientedMultigraph) -> bool:
    """True iff every vertex pair is adjacent or joined by a directed 2-path
    in at least one direction (weak diameter at most 2)."""
    n = g.n
    out = [0] * n
    inn = [0] * n
    for u, v in _dedup_arcs(g):
        out[u] |= 1 << v
        inn[v] |= 1 << u
    for u in range(n):
        for v in range(u + 1, n):
            if (out[u] >> v) & 1 or (out[v] >> u) & 1:
                continue
            if out[u] & inn[v] or out[v] & inn[u]:
                continue
            return False
    return True


class _Dinic:
    def __init__(self, n):
        self.n = n
        self.adj = [[] for _ in range(n)]

    def add(self, u, v, cap):
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])

    def max_flow(self, s, t):
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            while queue:
                x = queue.pop(0)
                for e in self.adj[x]:
                    if e[1] > 0 and level[e[0]] < 0:
                        level[e[0]] = level[x] + 1
                        queue.append(e[0])
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(x, pushed):
                if x == t:
                    return pushed
                while it[x] < len(self.adj[x]):
                    e = self.adj[x][it[x]]
                    if e[1] > 0 and level[e[0]] == level[x] + 1:
                        got = dfs(e[0], min(pushed, e[1]))
                        if got:
                            e[1] -= got
                            self.adj[e[0]][e[2]][1] += got
                            return got
                    it[x] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 62)
                if not pushed:
                    break
                flow += pushed


def max_avg_degree_below_3(g: OrientedMultigraph) -> bool:
    """Decide whether every subgraph has average degree strictly below 3.

    Equivalent to max_S e(S)/|S| < 3/2 over nonempty S.  Decided exactly
    by one max-flow on the density closure network with integer guess
    3/2 - 1/(4n): achievable densities have denominator at most n, so
    exceeding the shifted guess is the same as reaching 3/2, and a tie
    at exactly 3/2 counts as failure.
    """
    if not is_simple(g):
        raise ValueError("density check expects a simple oriented graph")
    n = g.n
    edges = sorted({(min(u, v), max(u, v)) for u, v in g.arcs})
    m = len(edges)
    if m == 0:
        return True
    # closure: pick edge (profit 4n) forces both endpoints (cost 6n - 1)
    dinic = _Dinic(2 + m + n)
    s, t = 0, 1 + m + n
    for i, (u, v) in enumerate(edges):
        dinic.add(s, 1 + i, 4 * n)
        dinic.add(1 + i, 1 + m + u, 1 << 62)
        dinic.add(1 + i, 1 + m + v, 1 << 62)
    for v in range(n):
        dinic.add(1 + m + v, t, 6 * n - 1)
    best = 4 * n * m - dinic.max_flow(s, t)
    return best <= 0


# ---------------------------------------------------------------------------
# window extension colouring


@dataclass
class WindowColouring:
    colouring: OrientedColouring
    core: frozenset
    boundary_in: frozenset
    boundary_out: frozenset
    palette_bound: int

    def colours_used(self) -> int:
        return self.colouring.colours_used()


def induced_subgraph(g: OrientedMultigraph, keep) -> tuple[OrientedMultigraph, list[int]]:
    keep = sorted(set(keep))
    relab = {v: i for i, v in enumerate(keep)}
    arcs = [(relab[u], relab[v]) for u, v in g.arcs if u in relab and v in relab]
    return OrientedMultigraph(len(keep), arcs), keep


def window_extension_colouring(
    g: OrientedMultigraph,
    k: int,
    target: Tournament,
    uncoloured: set,
    base: dict,
) -> WindowColouring:
    """Extend a T-colouring of G - S to all of G with at most 3k + 11 colours.

    S grows into a core U by absorbing adjacent outside pairs that both
    touch U, or single vertices with both an in- and an out-neighbour in
    U, until stable.  The outer neighbourhood N of the core is then
    independent and splits into N_I (all arcs from the core) and N_O
    (all arcs into the core).  Vertices keep their base colour tagged 0
    outside N, 1 in N_I, 2 in N_O; the core gets 11 fresh colours via a
    Paley-11 homomorphism with an exact 11-colour search as fallback.
    """
    if target.k != k:
        raise ValueError("palette size %d does not match the tournament order %d" % (k, target.k))
    arcs = _dedup_arcs(g)
    s_set = set(uncoloured)
    for v in range(g.n):
        if v not in s_set and v not in base:
            raise ValueError("vertex %d lacks a base colour" % v)
    for u, v in arcs:
        if u in s_set or v in s_set:
            continue
        if not target.has_arc(base[u], base[v]):
            raise ValueError("base assignment is not a valid T-colouring of G - S")

    in_from = [0] * g.n  # arcs core -> w
    out_to = [0] * g.n  # arcs w -> core
    out_nbrs = [[] for _ in range(g.n)]
    in_nbrs = [[] for _ in range(g.n)]
    for u, v in arcs:
        out_nbrs[u].append(v)
        in_nbrs[v].append(u)
    in_u: set = set()

    def absorb(w):
        in_u.add(w)
        for x in out_nbrs[w]:
            if x not in in_u:
                in_from[x] += 1
        for x in in_nbrs[w]:
            if x not in in_u:
                out_to[x] += 1

    for v in sorted(s_set):
        absorb(v)
    changed = True
    while changed:
        changed = False
        for w in range(g.n):
            if w not in in_u and in_from[w] > 0 and out_to[w] > 0:
                absorb(w)
                changed = True
        if changed:
            continue
        for u, v in arcs:
            if u in in_u or v in in_u:
                continue
            if in_from[u] + out_to[u] > 0 and in_from[v] + out_to[v] > 0:
                absorb(u)
                absorb(v)
                changed = True
                break

    core = frozenset(in_u)
    n_in = frozenset(w for w in range(g.n) if w not in in_u and in_from[w] > 0 and out_to[w] == 0)
    n_out = frozenset(w for w in range(g.n) if w not in in_u and out_to[w] > 0 and in_from[w] == 0)
    stray = [w for w in range(g.n) if w not in in_u and in_from[w] > 0 and out_to[w] > 0]
    assert not stray, "growth fixpoint violated"

    colour = [-1] * g.n
    for v in range(g.n):
        if v in core:
            continue
        tag = 1 if v in n_in else 2 if v in n_out else 0
        colour[v] = 3 * base[v] + tag
    if core:
        sub, keep = induced_subgraph(g, core)
        sol = t_colourable(sub, paley(11))
        if sol is None:
            res = oriented_chromatic_number(sub, 11)
            sol = res.witness
        if sol is None:
            sparse = max_avg_degree_below_3(sub)
            raise CoreTooDense(
                "core of size %d is not 11-colourable (density check %s)"
                % (len(core), "passed" if sparse else "failed")
            )
        for i, v in enumerate(keep):
            colour[v] = 3 * k + sol.colour[i]

    orient = orientation_from_assignment(g, colour)
    assert orient is not None, "window construction produced an invalid colouring"
    result = OrientedColouring(colour, orient)
    assert is_valid_oriented_colouring(g, result)
    assert result.colours_used() <= 3 * k + 11
    return WindowColouring(result, core, n_in, n_out, 3 * k + 11)


def greedy_uncoloured_set(
    g: OrientedMultigraph,
    target: Tournament,
    node_budget: int = 200_000,
) -> tuple[set, dict]:
    """Remove-on-failure heuristic for the uncoloured set S.

    Repeatedly attempts a homomorphism of G - S onto the target under a
    node budget; on failure or budget exhaustion the highest-degree
    remaining vertex moves into S.  Plumbing only; the window theorem
    does not prescribe how S is found.
    """
    s: set = set()
    deg = [0] * g.n
    for u, v in _dedup_arcs(g):
        deg[u] += 1
        deg[v] += 1
    while len(s) < g.n:
        sub, keep = induced_subgraph(g, set(range(g.n)) - s)
        try:
            sol, _ = t_colourable_with_stats(sub, target, node_budget=node_budget)
        except _BudgetExceeded:
            sol = None
        if sol is not None:
            return s, {v: sol.colour[i] for i, v in enumerate(keep)}
        victim = max((v for v in range(g.n) if v not in s), key=lambda v: (deg[v], -v))
        s.add(victim)
    return s, {}
