"""Seeded generators for the three random oriented graph models.

Randomness contract: every generator is a pure function of
(parameters, master seed, trial).  Streams come from numpy's Philox
counter-based generator keyed through ``SeedSequence(master, spawn_key=
(trial, stream))``, so parallel trials never share state and the output
is reproducible across platforms.  Stream 0 drives the graph structure
(arc endpoints / matching), stream 1 the orientation bits; generated
values are locked by test vectors in the suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import OddTotal, RejectionBudgetExceeded

STREAM_STRUCTURE = 0
STREAM_ORIENTATION = 1


def rng_for(seed: int, trial: int, stream: int) -> np.random.Generator:
    """The pinned counter-based generator for (master seed, trial, stream)."""
    ss = np.random.SeedSequence(seed, spawn_key=(trial, stream))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class Seed:
    """Master seed plus trial index; determines a generated object completely."""

    master: int
    trial: int = 0


@dataclass
class OrientedMultigraph:
    """n vertices and an arc multiset; loops and parallel arcs allowed.

    Parallel means two arcs on the same unordered pair in either
    direction (or a repeated identical arc), matching the convention
    that orientations of simple graphs have no loops or two-cycles.
    """

    n: int
    arcs: list[tuple[int, int]]
    has_loop: bool = field(init=False)
    has_parallel: bool = field(init=False)

    def __post_init__(self):
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError("arc endpoint out of range")
        self.has_loop = any(u == v for u, v in self.arcs)
        keys = [(u, v) if u <= v else (v, u) for u, v in self.arcs]
        self.has_parallel = len(set(keys)) != len(keys)

    @property
    def m(self) -> int:
        return len(self.arcs)


def is_simple(g: OrientedMultigraph) -> bool:
    return not g.has_loop and not g.has_parallel


def gen_mnm(n: int, m: int, seed: int, trial: int = 0) -> OrientedMultigraph:
    """m independent uniform draws from the n^2 ordered pairs, as arcs.

    Each arc is two independent uniform vertex draws (head drawn after
    tail), the with-replacement semantics of the multigraph model; loops
    are never rejected.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    rng = rng_for(seed, trial, STREAM_STRUCTURE)
    flat = rng.integers(0, n, size=2 * m)
    arcs = [(int(flat[2 * i]), int(flat[2 * i + 1])) for i in range(m)]
    return OrientedMultigraph(n, arcs)


def _config_pairing(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform perfect matching on the d*n points as a (dn/2, 2) array."""
    perm = rng.permutation(n * d)
    return perm.reshape(-1, 2)


def gen_config_oriented(
    n: int,
    d: int,
    seed: int,
    trial: int = 0,
    orientation_seed: int | None = None,
) -> OrientedMultigraph:
    """Oriented configuration model: matched points, contracted, coin-flipped.

    d*n points in n groups of d get a uniform perfect matching; each
    matched pair becomes an edge between its groups (a loop when both
    points share a group) and an independent fair bit orients it.  The
    orientation stream is separate from the matching stream, so passing
    orientation_seed re-flips the coins over the same matching.
    """
    if d < 1:
        raise ValueError("need d >= 1")
    if (d * n) % 2 != 0:
        raise OddTotal("d*n = %d is odd" % (d * n))
    pairs = _config_pairing(n, d, rng_for(seed, trial, STREAM_STRUCTURE))
    o_master = seed if orientation_seed is None else orientation_seed
    bits = rng_for(o_master, trial, STREAM_ORIENTATION).integers(0, 2, size=len(pairs))
    arcs = []
    for (a, b), bit in zip(pairs, bits):
        u, v = int(a) // d, int(b) // d
        arcs.append((u, v) if bit else (v, u))
    return OrientedMultigraph(n, arcs)


def _edge_index_to_pair(n: int, t: int) -> tuple[int, int]:
    # invert t = i*n - i*(i+1)/2 + (j - i - 1) over 0 <= i < j < n
    i = n - 2 - int((math.isqrt((2 * n - 1) ** 2 - 8 * (t + 1)) - 1) // 2)
    while i * n - i * (i + 1) // 2 > t:
        i -= 1
    while (i + 1) * n - (i + 1) * (i + 2) // 2 <= t:
        i += 1
    j = t - (i * n - i * (i + 1) // 2) + i + 1
    return i, j


def gen_gnp_oriented(n: int, p: float, seed: int, trial: int = 0) -> OrientedMultigraph:
    """Binomial random graph with a fair coin per edge; always simple.

    Sparse p walks the C(n,2) edge slots with geometric skips
    (Batagelj-Brandes), dense p draws the Bernoulli mask outright; both
    realise independent edge indicators exactly.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return OrientedMultigraph(n, [])
    rng = rng_for(seed, trial, STREAM_STRUCTURE)
    if p == 1.0:
        chosen = list(range(total))
    elif p > 0.01:
        chosen = np.nonzero(rng.random(total) < p)[0].tolist()
    else:
        chosen = []
        t = -1
        while True:
            t += int(rng.geometric(p))
            if t >= total:
                break
            chosen.append(t)
    bits = rng_for(seed, trial, STREAM_ORIENTATION).integers(0, 2, size=len(chosen))
    arcs = []
    for t, bit in zip(chosen, bits):
        i, j = _edge_index_to_pair(n, int(t))
        arcs.append((i, j) if bit else (j, i))
    return OrientedMultigraph(n, arcs)


def gen_gnd_oriented(
    n: int, d: int, seed: int, trial: int = 0, max_attempts: int = 100_000
) -> OrientedMultigraph:
    """Uniform simple d-regular oriented graph by rejection from the
    configuration model.

    The cap prevents hangs at large d where the simplicity probability
    exp(-(d-1)/2 - (d-1)^2/4) is tiny; raise it if needed.
    """
    return gen_gnd_oriented_with_attempts(n, d, seed, trial, max_attempts)[0]


def gen_gnd_oriented_with_attempts(
    n: int, d: int, seed: int, trial: int = 0, max_attempts: int = 100_000
) -> tuple[OrientedMultigraph, int]:
    """Same as gen_gnd_oriented but also reports the rejection count."""
    if d < 1:
        raise ValueError("need d >= 1")
    if (d * n) % 2 != 0:
        raise OddTotal("d*n = %d is odd" % (d * n))
    rng_struct = rng_for(seed, trial, STREAM_STRUCTURE)
    rng_orient = rng_for(seed, trial, STREAM_ORIENTATION)
    for attempt in range(1, max_attempts + 1):
        pairs = _config_pairing(n, d, rng_struct)
        groups = pairs // d
        u, v = groups[:, 0], groups[:, 1]
        if np.any(u == v):
            continue
        keys = np.minimum(u, v) * n + np.maximum(u, v)
        if np.unique(keys).size != keys.size:
            continue
        bits = rng_orient.integers(0, 2, size=len(pairs))
        arcs = [
            (int(a), int(b)) if bit else (int(b), int(a))
            for a, b, bit in zip(u, v, bits)
        ]
        return OrientedMultigraph(n, arcs), attempt
    raise RejectionBudgetExceeded(
        "no simple graph in %d attempts (n=%d, d=%d)" % (max_attempts, n, d)
    )


def edge_count_deviation(n: int, d: float, trials: int, seed: int) -> float:
    """Fraction of G(n, p=d/n) draws with |e - dn/2| >= n^(2/3).

    The arc count of the binomial model is Binomial(C(n,2), p), a
    sufficient statistic for this event, so it is sampled directly
    instead of materialising graphs.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    total = n * (n - 1) // 2
    p = d / n if n > 0 else 0.0
    if not 0.0 <= p <= 1.0:
        raise ValueError("d/n must lie in [0, 1]")
    threshold = n ** (2.0 / 3.0)
    hits = 0
    for trial in range(trials):
        rng = rng_for(seed, trial, STREAM_STRUCTURE)
        e = rng.binomial(total, p) if p > 0 else 0
        if abs(e - d * n / 2.0) >= threshold:
            hits += 1
    return hits / trials


def to_text(g: OrientedMultigraph) -> str:
    """Text format: header "graph n m", then one "u v" line per arc."""
    lines = ["graph %d %d" % (g.n, g.m)]
    lines.extend("%d %d" % a for a in g.arcs)
    return "\n".join(lines) + "\n"


def from_text(text: str) -> OrientedMultigraph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("graph "):
        raise ValueError('expected header "graph n m"')
    _, n_s, m_s = lines[0].split()
    n, m = int(n_s), int(m_s)
    if len(lines) - 1 != m:
        raise ValueError("expected %d arc lines, got %d" % (m, len(lines) - 1))
    arcs = []
    for ln in lines[1:]:
        u, v = map(int, ln.split())
        arcs.append((u, v))
    return OrientedMultigraph(n, arcs)


def to_json(g: OrientedMultigraph) -> str:
    return json.dumps({"n": g.n, "arcs": [[u, v] for u, v in g.arcs]})


def from_json(text: str) -> OrientedMultigraph:
    obj = json.loads(text)
    return OrientedMultigraph(int(obj["n"]), [(int(u), int(v)) for u, v in obj["arcs"]])
