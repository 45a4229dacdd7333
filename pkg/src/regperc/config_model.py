"""Uniform pairings on labeled points and the multigraphs they induce.

Vertex i owns a contiguous block of d_i point labels; a pairing is a perfect
matching on all N = sum(d_i) points. Collapsing points to their owners gives
a random multigraph with the prescribed degrees (loops and parallel edges
allowed). Rejection on simplicity yields the uniform simple graph.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np


class SimpleSampleError(RuntimeError):
    """Raised when rejection sampling exhausts its attempt budget."""

    def __init__(self, attempts: int):
        super().__init__(f"no simple graph found in {attempts} attempts")
        self.attempts = attempts


@dataclass(frozen=True)
class DegreeSpec:
    """Degree specification: regular degree d on n vertices, or an explicit
    per-vertex sequence. All degrees must be >= 3 and the total point count
    even."""

    n: int
    d: int | None = None
    degrees: tuple[int, ...] | None = None

    @classmethod
    def regular(cls, n: int, d: int) -> "DegreeSpec":
        return cls(n=n, d=d)

    @classmethod
    def sequence(cls, degrees) -> "DegreeSpec":
        return cls(n=len(degrees), d=None, degrees=tuple(int(x) for x in degrees))

    def __post_init__(self):
        if self.d is None and self.degrees is None:
            raise ValueError("need a regular degree or a degree sequence")
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        if self.degrees is not None and len(self.degrees) != self.n:
            raise ValueError("degree sequence length does not match n")
        if self.min_degree < 3:
            raise ValueError(f"all degrees must be >= 3, got {self.min_degree}")
        if self.point_count % 2 != 0:
            raise ValueError(f"total point count {self.point_count} is odd")

    @property
    def is_regular(self) -> bool:
        return self.d is not None

    @property
    def min_degree(self) -> int:
        return self.d if self.is_regular else min(self.degrees)

    @property
    def point_count(self) -> int:
        return self.n * self.d if self.is_regular else sum(self.degrees)

    def degree_array(self) -> np.ndarray:
        if self.is_regular:
            return np.full(self.n, self.d, dtype=np.int64)
        return np.asarray(self.degrees, dtype=np.int64)

    def owner_of(self, points):
        """Vertex (1-based) owning each point label (1-based)."""
        points = np.asarray(points, dtype=np.int64)
        if self.is_regular:
            return (points - 1) // self.d + 1
        ends = np.cumsum(self.degree_array())
        return np.searchsorted(ends, points, side="left") + 1


@dataclass
class Pairing:
    """Perfect matching on the point set of a degree specification.

    ``pairs`` holds N/2 rows of 1-based point labels; every label in [1..N]
    appears exactly once.
    """

    spec: DegreeSpec
    pairs: np.ndarray

    @property
    def num_points(self) -> int:
        return self.spec.point_count

    def partner_map(self) -> np.ndarray:
        """Array mapping point label s -> partner(s); index 0 unused."""
        partner = np.zeros(self.num_points + 1, dtype=np.int64)
        partner[self.pairs[:, 0]] = self.pairs[:, 1]
        partner[self.pairs[:, 1]] = self.pairs[:, 0]
        return partner

    def owner(self, points):
        return self.spec.owner_of(points)

    def validate(self):
        """Assert the matching invariants (tests call this per sample)."""
        flat = self.pairs.ravel()
        n_pts = self.num_points
        if flat.size != n_pts:
            raise AssertionError("pair rows do not cover the point set")
        seen = np.sort(flat)
        if not np.array_equal(seen, np.arange(1, n_pts + 1)):
            raise AssertionError("labels are not a permutation of 1..N")
        if np.any(self.pairs[:, 0] == self.pairs[:, 1]):
            raise AssertionError("fixed point in matching")
        partner = self.partner_map()
        if not np.array_equal(partner[partner[1:]], np.arange(1, n_pts + 1)):
            raise AssertionError("partner map is not an involution")


@dataclass
class Multigraph:
    """Multigraph on [1..n]; loops and parallel edges permitted.

    ``pair_index[e]`` is the row of the originating pairing that produced
    edge e, so percolation masks on pairs line up with edges.
    """

    n: int
    edges: np.ndarray
    pair_index: np.ndarray

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        """Vertex degrees, loops counted twice."""
        return np.bincount(self.edges.ravel(), minlength=self.n + 1)[1:]

    def to_edge_list(self) -> str:
        """One line per edge, "u v", 1-based; loops appear as "u u"."""
        return "\n".join(f"{u} {v}" for u, v in self.edges) + "\n"


def sample_pairing(spec: DegreeSpec, rng: np.random.Generator) -> Pairing:
    """Uniform perfect matching: a random permutation of [1..N] read off in
    consecutive disjoint pairs."""
    perm = rng.permutation(spec.point_count) + 1
    return Pairing(spec=spec, pairs=perm.reshape(-1, 2).astype(np.int64))


def pairing_to_multigraph(pairing: Pairing, spec: DegreeSpec | None = None) -> Multigraph:
    """Collapse each pair (s, t) to the edge (owner(s), owner(t))."""
    if spec is not None and spec != pairing.spec:
        raise ValueError("pairing was sampled from a different degree spec")
    spec = pairing.spec
    u = spec.owner_of(pairing.pairs[:, 0])
    v = spec.owner_of(pairing.pairs[:, 1])
    edges = np.column_stack([u, v])
    return Multigraph(n=spec.n, edges=edges, pair_index=np.arange(len(edges)))


def is_simple(g: Multigraph) -> bool:
    """True iff the multigraph has no loops and no parallel edges."""
    u = np.minimum(g.edges[:, 0], g.edges[:, 1])
    v = np.maximum(g.edges[:, 0], g.edges[:, 1])
    if np.any(u == v):
        return False
    order = np.lexsort((v, u))
    us, vs = u[order], v[order]
    return not np.any((us[1:] == us[:-1]) & (vs[1:] == vs[:-1]))


def sample_simple(
    spec: DegreeSpec, rng: np.random.Generator, max_attempts: int = 200
) -> Multigraph:
    """Rejection-sample pairings until the induced multigraph is simple.

    The acceptance rate is roughly exp(-(d^2-1)/4), so the default budget
    leaves a negligible failure probability for d <= 5.
    """
    if max_attempts < 1:
        raise ValueError(f"max_attempts must be >= 1, got {max_attempts}")
    for _ in range(max_attempts):
        g = pairing_to_multigraph(sample_pairing(spec, rng))
        if is_simple(g):
            return g
    raise SimpleSampleError(max_attempts)


@lru_cache(maxsize=None)
def double_factorial(m: int) -> int:
    """m!! for odd m >= -1 (exact integer; (-1)!! = 1)."""
    if m < -1 or m % 2 == 0:
        raise ValueError(f"need odd m >= -1, got {m}")
    out = 1
    for j in range(m, 1, -2):
        out *= j
    return out


def count_pairings(spec: DegreeSpec) -> int:
    """(N-1)!!, the number of perfect matchings on the N points."""
    return double_factorial(spec.point_count - 1)
