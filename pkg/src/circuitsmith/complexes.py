"""Finite simplicial complexes and the PL primitives everything else consumes.

Vertices are non-negative integers, simplices are strictly increasing vertex
tuples, and complexes are face-closed finite sets of simplices.  All values
are immutable after construction and every operation is a pure function, so
results may be computed concurrently and are deterministic.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    InternalInvariantError,
    MalformedInputError,
    MapError,
    NotFoundError,
    ResourceLimitError,
)

DEFAULT_MAX_SIMPLICES = 100_000
_MAX_SIMPLICES_ENV = "CIRCUITSMITH_MAX_SIMPLICES"


def max_simplices() -> int:
    """Instance-size cap, configurable via CIRCUITSMITH_MAX_SIMPLICES."""
    raw = os.environ.get(_MAX_SIMPLICES_ENV)
    if raw is None:
        return DEFAULT_MAX_SIMPLICES
    try:
        return int(raw)
    except ValueError:
        raise MalformedInputError(f"{_MAX_SIMPLICES_ENV} must be an integer, got {raw!r}")


def _check_cap(count: int) -> None:
    cap = max_simplices()
    if count > cap:
        raise ResourceLimitError(f"instance has {count} simplices, cap is {cap}")


@dataclass(frozen=True)
class Simplex:
    """A simplex given by its strictly increasing tuple of vertex ids."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vs = self.vertices
        if not isinstance(vs, tuple):
            object.__setattr__(self, "vertices", tuple(vs))
            vs = self.vertices
        if len(vs) == 0:
            raise MalformedInputError("a simplex needs at least one vertex")
        for v in vs:
            if not isinstance(v, int) or v < 0:
                raise MalformedInputError(f"vertex ids must be non-negative integers, got {v!r}")
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise MalformedInputError(f"vertices must be strictly increasing, got {vs}")

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Simplex":
        """Canonicalize an unordered, duplicate-free vertex collection."""
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            raise MalformedInputError(f"duplicate vertex in simplex {vs}")
        return cls(tuple(sorted(vs)))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.vertices), self.vertices)

    def __lt__(self, other: "Simplex") -> bool:
        return self.sort_key < other.sort_key

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, vertex: int) -> bool:
        return vertex in self.vertices

    def facets(self) -> list["Simplex"]:
        """Codimension-one faces, in the order opposite vertex 0, 1, ..."""
        if self.dim == 0:
            return []
        vs = self.vertices
        return [Simplex(vs[:i] + vs[i + 1 :]) for i in range(len(vs))]

    def faces(self, include_self: bool = True) -> list["Simplex"]:
        """All nonempty faces."""
        vs = self.vertices
        stop = len(vs) + 1 if include_self else len(vs)
        return [Simplex(c) for r in range(1, stop) for c in itertools.combinations(vs, r)]

    def is_face_of(self, other: "Simplex") -> bool:
        return set(self.vertices) <= set(other.vertices)

    def union(self, other: "Simplex") -> "Simplex":
        return Simplex.of(set(self.vertices) | set(other.vertices))

    def intersects(self, other: "Simplex") -> bool:
        return bool(set(self.vertices) & set(other.vertices))

    def __repr__(self) -> str:
        return f"Simplex{self.vertices}"


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite, face-closed set of simplices."""

    simplices: frozenset[Simplex]

    @classmethod
    def from_simplices(cls, simplices: Iterable[Simplex], closed: bool = False) -> "SimplicialComplex":
        """Build from a simplex collection, taking the face closure unless
        the caller asserts the input is already closed."""
        base = frozenset(simplices)
        if closed:
            return cls(base)
        closure: set[Simplex] = set()
        for s in base:
            closure.add(s)
            closure.update(s.faces(include_self=False))
        _check_cap(len(closure))
        return cls(frozenset(closure))

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(frozenset())

    def __post_init__(self) -> None:
        for s in self.simplices:
            for f in s.facets():
                if f not in self.simplices:
                    raise InternalInvariantError(f"complex not face-closed: {f} missing under {s}")

    @cached_property
    def dim(self) -> int:
        return max((s.dim for s in self.simplices), default=-1)

    @cached_property
    def sorted_simplices(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self.simplices, key=lambda s: s.sort_key))

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for s in self.simplices for v in s.vertices}))

    def simplices_of_dim(self, d: int) -> tuple[Simplex, ...]:
        return tuple(s for s in self.sorted_simplices if s.dim == d)

    @cached_property
    def maximal_simplices(self) -> tuple[Simplex, ...]:
        # Face-closure makes the one-vertex-extension probe exact.
        return tuple(s for s in self.sorted_simplices if not self._has_proper_coface(s))

    def _has_proper_coface(self, s: Simplex) -> bool:
        sv = set(s.vertices)
        for v in self.vertices:
            if v not in sv and Simplex.of(sv | {v}) in self.simplices:
                return True
        return False

    @cached_property
    def euler_characteristic(self) -> int:
        return sum((-1) ** s.dim for s in self.simplices)

    def __contains__(self, s: Simplex) -> bool:
        return s in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __bool__(self) -> bool:
        return bool(self.simplices)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices

    def restrict(self, members: Iterable[Simplex]) -> "SimplicialComplex":
        """Face closure of the given members, which must all belong to self."""
        ms = set(members)
        missing = ms - self.simplices
        if missing:
            raise NotFoundError(f"{len(missing)} simplices not in complex, e.g. {sorted(missing)[0]}")
        return SimplicialComplex.from_simplices(ms)

    def cofaces(self, s: Simplex) -> list[Simplex]:
        sv = set(s.vertices)
        return [t for t in self.sorted_simplices if sv <= set(t.vertices)]

    def top_cofaces(self, s: Simplex, d: int) -> list[Simplex]:
        sv = set(s.vertices)
        return [t for t in self.sorted_simplices if t.dim == d and sv <= set(t.vertices)]

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self.simplices | other.simplices)

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self.simplices & other.simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, n={len(self.simplices)})"


@dataclass(frozen=True)
class OpenSimplexSet:
    """A subset of a complex's simplices read as a union of open simplices."""

    host: SimplicialComplex
    members: frozenset[Simplex]

    def __post_init__(self) -> None:
        stray = self.members - self.host.simplices
        if stray:
            raise NotFoundError(f"members not hosted: e.g. {sorted(stray)[0]}")

    @classmethod
    def of(cls, host: SimplicialComplex, members: Iterable[Simplex]) -> "OpenSimplexSet":
        return cls(host, frozenset(members))

    @classmethod
    def whole(cls, host: SimplicialComplex) -> "OpenSimplexSet":
        return cls(host, frozenset(host.simplices))

    @cached_property
    def dim(self) -> int:
        return max((s.dim for s in self.members), default=-1)

    @cached_property
    def is_closed(self) -> bool:
        """True iff face-closed, i.e. the set is a subcomplex."""
        return all(f in self.members for s in self.members for f in s.facets())

    @cached_property
    def is_open(self) -> bool:
        """True iff the complement in the host is face-closed."""
        comp = self.host.simplices - self.members
        return all(f in comp for s in comp for f in s.facets())

    @cached_property
    def sorted_members(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self.members, key=lambda s: s.sort_key))

    def closure(self) -> SimplicialComplex:
        return SimplicialComplex.from_simplices(self.members)

    def complement(self) -> "OpenSimplexSet":
        return OpenSimplexSet(self.host, self.host.simplices - self.members)

    def __contains__(self, s: Simplex) -> bool:
        return s in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"OpenSimplexSet(dim={self.dim}, n={len(self.members)})"


@dataclass(frozen=True)
class SimplicialMap:
    """A simplicial map given by its vertex assignment.

    The assignment must send the vertex set of every source simplex to a
    (possibly degenerate) spanning set of some target simplex.
    """

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_assignment: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(
        cls,
        source: SimplicialComplex,
        target: SimplicialComplex,
        mapping: Mapping[int, int],
    ) -> "SimplicialMap":
        return cls(source, target, tuple(sorted(mapping.items())))

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertex_assignment", tuple(sorted(self.vertex_assignment)))
        vm = dict(self.vertex_assignment)
        missing = [v for v in self.source.vertices if v not in vm]
        if missing:
            raise MapError(f"vertex assignment misses source vertices {missing[:5]}")
        tverts = set(self.target.vertices)
        bad_targets = sorted({w for w in vm.values() if w not in tverts})
        if bad_targets and self.target.simplices:
            raise MapError(f"assignment hits vertices outside the target: {bad_targets[:5]}")
        for s in self.source.maximal_simplices:
            img = Simplex.of({vm[v] for v in s.vertices})
            if img not in self.target.simplices:
                raise MapError(f"image of {s} spans {img}, not a target simplex")

    @cached_property
    def mapping(self) -> dict[int, int]:
        return dict(self.vertex_assignment)

    def apply_vertex(self, v: int) -> int:
        return self.mapping[v]

    def apply(self, s: Simplex) -> Simplex:
        """Image simplex (dimension drops when the map degenerates on s)."""
        return Simplex.of({self.mapping[v] for v in s.vertices})

    def is_degenerate_on(self, s: Simplex) -> bool:
        return self.apply(s).dim < s.dim

    def image_of(self, simplices: Iterable[Simplex]) -> frozenset[Simplex]:
        return frozenset(self.apply(s) for s in simplices)

    def compose(self, outer: "SimplicialMap") -> "SimplicialMap":
        """outer after self; requires self.target == outer.source."""
        if self.target.simplices != outer.source.simplices:
            raise MapError("composition mismatch: target of inner is not source of outer")
        vm = {v: outer.mapping[w] for v, w in self.vertex_assignment}
        return SimplicialMap.from_dict(self.source, outer.target, vm)

    def restrict(self, sub: SimplicialComplex) -> "SimplicialMap":
        if not sub.is_subcomplex_of(self.source):
            raise NotFoundError("restriction domain is not a subcomplex of the source")
        vm = {v: self.mapping[v] for v in sub.vertices}
        return SimplicialMap.from_dict(sub, self.target, vm)

    @classmethod
    def identity(cls, K: SimplicialComplex) -> "SimplicialMap":
        return cls.from_dict(K, K, {v: v for v in K.vertices})

    def is_vertex_injective(self) -> bool:
        vals = [w for _, w in self.vertex_assignment]
        return len(set(vals)) == len(vals)


def build_complex(maximal_simplices: Sequence[Sequence[int]]) -> SimplicialComplex:
    """Face closure of the given simplices, with canonical vertex ordering."""
    gens = [Simplex.of(vs) for vs in maximal_simplices]
    return SimplicialComplex.from_simplices(gens)


def skeleton(K: SimplicialComplex, i: int) -> SimplicialComplex:
    """All simplices of dimension at most i (face-closed by construction)."""
    if i < -1:
        raise MalformedInputError(f"skeleton dimension must be >= -1, got {i}")
    return SimplicialComplex(frozenset(s for s in K.simplices if s.dim <= i))


def star(S: OpenSimplexSet, K: SimplicialComplex) -> OpenSimplexSet:
    """All simplices of K having some face in S (an open set in |K|)."""
    if S.host is not K and S.host.simplices != K.simplices:
        raise NotFoundError("star: S must be hosted in K")
    members = set()
    for t in K.simplices:
        if t in S.members or any(f in S.members for f in t.faces(include_self=False)):
            members.add(t)
    return OpenSimplexSet(K, frozenset(members))


def link(s: Simplex, K: SimplicialComplex) -> SimplicialComplex:
    """Simplices of K disjoint from s whose union with s is again in K."""
    if s not in K.simplices:
        raise NotFoundError(f"link: {s} is not a simplex of the complex")
    sv = set(s.vertices)
    out = set()
    for t in K.simplices:
        tv = set(t.vertices)
        if tv & sv:
            continue
        if Simplex.of(tv | sv) in K.simplices:
            out.add(t)
    return SimplicialComplex(frozenset(out))


@dataclass(frozen=True)
class SubdivisionResult:
    """Barycentric subdivision with its vertex-to-original-simplex chart."""

    complex: SimplicialComplex
    barycenter_of: Mapping[int, Simplex]       # new vertex id -> original simplex
    vertex_for: Mapping[Simplex, int]          # original simplex -> new vertex id

    def chain_of(self, s: Simplex) -> tuple[Simplex, ...]:
        """The face-ordered chain of original simplices behind a subdivision simplex."""
        originals = [self.barycenter_of[v] for v in s.vertices]
        originals.sort(key=lambda t: t.sort_key)
        return tuple(originals)


def barycentric_subdivision(K: SimplicialComplex) -> SubdivisionResult:
    """Chains of proper faces, one new vertex per original simplex."""
    order = K.sorted_simplices
    vertex_for = {s: i for i, s in enumerate(order)}
    barycenter_of = {i: s for s, i in vertex_for.items()}
    chains: set[Simplex] = set()

    def extend(chain: list[Simplex]) -> None:
        chains.add(Simplex.of({vertex_for[t] for t in chain}))
        top = chain[-1]
        tv = set(top.vertices)
        for t in K.simplices:
            if t.dim > top.dim and tv < set(t.vertices):
                chain.append(t)
                extend(chain)
                chain.pop()

    for s in order:
        extend([s])
    _check_cap(len(chains))
    sd = SimplicialComplex(frozenset(chains))
    return SubdivisionResult(sd, barycenter_of, vertex_for)


def join_decompose(
    chain: Sequence[Simplex] | Simplex, r: int, subdivision: SubdivisionResult | None = None
) -> tuple[tuple[Simplex, ...], tuple[Simplex, ...]]:
    """Split a subdivision chain at dimension r.

    Returns (prefix of simplices of dim <= r, suffix of simplices of dim > r);
    the join of the two parts reconstitutes the input chain, and the split is
    the unique one with this dimension profile.
    """
    if isinstance(chain, Simplex):
        if subdivision is None:
            raise MalformedInputError("join_decompose on a raw simplex needs the subdivision chart")
        parts = subdivision.chain_of(chain)
    else:
        parts = tuple(sorted(chain, key=lambda t: t.sort_key))
    for a, b in zip(parts, parts[1:]):
        if not a.is_face_of(b) or a == b:
            raise MalformedInputError(f"not a chain of proper faces: {a} then {b}")
    cut = 0
    while cut < len(parts) and parts[cut].dim <= r:
        cut += 1
    return parts[:cut], parts[cut:]


@dataclass(frozen=True)
class ProductResult:
    """Staircase triangulation of a product with its projection charts."""

    complex: SimplicialComplex
    vertex_pairs: Mapping[int, tuple[int, int]]   # product vertex id -> (u, v)
    pair_ids: Mapping[tuple[int, int], int]
    left: SimplicialComplex
    right: SimplicialComplex

    def project_left(self, s: Simplex) -> Simplex:
        return Simplex.of({self.vertex_pairs[v][0] for v in s.vertices})

    def project_right(self, s: Simplex) -> Simplex:
        return Simplex.of({self.vertex_pairs[v][1] for v in s.vertices})

    @cached_property
    def projection_left(self) -> SimplicialMap:
        return SimplicialMap.from_dict(
            self.complex, self.left, {i: uv[0] for i, uv in self.vertex_pairs.items()}
        )

    @cached_property
    def projection_right(self) -> SimplicialMap:
        return SimplicialMap.from_dict(
            self.complex, self.right, {i: uv[1] for i, uv in self.vertex_pairs.items()}
        )

    def lift(self, u: int, v: int) -> int:
        return self.pair_ids[(u, v)]

    def sub_product(self, A: SimplicialComplex, B: SimplicialComplex) -> frozenset[Simplex]:
        """Members of the product whose two projections land in A and B."""
        return frozenset(
            s
            for s in self.complex.simplices
            if self.project_left(s) in A.simplices and self.project_right(s) in B.simplices
        )


def product_complex(
    K: SimplicialComplex,
    L: SimplicialComplex,
    left_key=None,
    right_key=None,
) -> ProductResult:
    """Staircase (ordered-product) triangulation of |K| x |L|.

    The optional key functions override the vertex order used for the
    monotone-chain construction; any linear order yields a valid
    triangulation, and callers that need a map out of the product to stay
    simplicial can pass an adapted order.
    """
    if not K.simplices or not L.simplices:
        empty = SimplicialComplex.empty()
        return ProductResult(empty, {}, {}, K, L)
    lk = left_key or (lambda v: v)
    rk = right_key or (lambda v: v)
    pairs = sorted(
        ((u, v) for u in K.vertices for v in L.vertices),
        key=lambda uv: (lk(uv[0]), rk(uv[1]), uv),
    )
    pair_ids = {uv: i for i, uv in enumerate(pairs)}
    vertex_pairs = {i: uv for uv, i in pair_ids.items()}

    tops: set[Simplex] = set()
    for s in K.maximal_simplices:
        su = sorted(s.vertices, key=lk)
        for t in L.maximal_simplices:
            tv = sorted(t.vertices, key=rk)
            p, q = len(su) - 1, len(tv) - 1
            for moves in itertools.combinations(range(p + q), p):
                i = j = 0
                path = [pair_ids[(su[0], tv[0])]]
                for step in range(p + q):
                    if step in moves:
                        i += 1
                    else:
                        j += 1
                    path.append(pair_ids[(su[i], tv[j])])
                tops.add(Simplex.of(path))
    prod = SimplicialComplex.from_simplices(tops)
    return ProductResult(prod, vertex_pairs, pair_ids, K, L)


@dataclass(frozen=True)
class PrismResult:
    """Triangulated prism over a complex whose top copy is the barycentric
    subdivision; the bottom copy is the original complex."""

    complex: SimplicialComplex
    base: SimplicialComplex
    bottom_vertex: Mapping[int, int]          # original vertex -> prism vertex
    top_vertex: Mapping[Simplex, int]         # original simplex -> prism vertex
    subdivision: SubdivisionResult

    @cached_property
    def bottom(self) -> SimplicialComplex:
        m = self.bottom_vertex
        return SimplicialComplex(
            frozenset(
                Simplex.of(m[v] for v in s.vertices)
                for s in self.base.simplices
            )
        )

    @cached_property
    def top(self) -> SimplicialComplex:
        t = self.top_vertex
        return SimplicialComplex(
            frozenset(
                Simplex.of(t[u] for u in self.subdivision.chain_of(s))
                for s in self.subdivision.complex.simplices
            )
        )

    def over(self, A: SimplicialComplex) -> SimplicialComplex:
        """The sub-prism lying over a subcomplex A of the base."""
        if not A.simplices:
            return SimplicialComplex.empty()
        keep = set()
        for s in self.complex.simplices:
            if self.carrier(s) in A.simplices:
                keep.add(s)
        return SimplicialComplex(frozenset(keep))

    def carrier(self, s: Simplex) -> Simplex:
        """Smallest base simplex whose prism contains the given simplex."""
        verts: set[int] = set()
        for v in s.vertices:
            verts.update(self._carrier(v).vertices)
        return Simplex.of(verts)

    def _carrier(self, prism_vertex: int) -> Simplex:
        s = self._carrier_chart.get(prism_vertex)
        if s is None:
            raise NotFoundError(f"vertex {prism_vertex} is not a prism vertex")
        return s

    @cached_property
    def _carrier_chart(self) -> dict[int, Simplex]:
        chart = {pv: Simplex((v,)) for v, pv in self.bottom_vertex.items()}
        chart.update({pv: s for s, pv in self.top_vertex.items()})
        return chart


def subdivision_prism(K: SimplicialComplex) -> PrismResult:
    """Triangulate |K| x [0,1] with K at the bottom and sd(K) at the top.

    Built simplex by simplex: the prism over a simplex is the cone from its
    top barycenter over (bottom copy + prisms over proper faces).
    """
    sd = barycentric_subdivision(K)
    n_bottom = len(K.vertices)
    bottom_vertex = {v: i for i, v in enumerate(K.vertices)}
    top_vertex = {s: n_bottom + sd.vertex_for[s] for s in K.sorted_simplices}

    tops_of: dict[Simplex, list[Simplex]] = {}
    all_simplices: set[Simplex] = set()
    for s in sorted(K.simplices, key=lambda t: t.sort_key):
        apex = top_vertex[s]
        base_tops: list[Simplex] = [Simplex.of(bottom_vertex[v] for v in s.vertices)]
        for f in s.facets():
            base_tops.extend(tops_of[f])
        cone = [Simplex.of(set(b.vertices) | {apex}) for b in base_tops]
        tops_of[s] = cone
        all_simplices.update(cone)
    prism = SimplicialComplex.from_simplices(all_simplices)
    return PrismResult(prism, K, bottom_vertex, top_vertex, sd)


def relabel(K: SimplicialComplex, mapping: Mapping[int, int]) -> SimplicialComplex:
    """Rename vertices through an injective mapping."""
    vals = list(mapping.values())
    if len(set(vals)) != len(vals):
        raise MalformedInputError("relabeling must be injective")
    return SimplicialComplex(
        frozenset(Simplex.of(mapping[v] for v in s.vertices) for s in K.simplices)
    )


def offset_labels(K: SimplicialComplex, offset: int) -> tuple[SimplicialComplex, dict[int, int]]:
    mapping = {v: v + offset for v in K.vertices}
    return relabel(K, mapping), mapping


def complex_isomorphism(K: SimplicialComplex, L: SimplicialComplex) -> dict[int, int] | None:
    """A vertex bijection inducing a simplex bijection, or None.

    Backtracking search; intended for the small fixtures used in tests.
    """
    if len(K.simplices) != len(L.simplices) or K.dim != L.dim:
        return None

    def profile(C: SimplicialComplex, v: int) -> tuple:
        counts = [0] * (C.dim + 1)
        for s in C.simplices:
            if v in s.vertices:
                counts[s.dim] += 1
        return tuple(counts)

    kv = list(K.vertices)
    lv = list(L.vertices)
    if len(kv) != len(lv):
        return None
    k_prof = {v: profile(K, v) for v in kv}
    l_prof = {v: profile(L, v) for v in lv}
    if sorted(k_prof.values()) != sorted(l_prof.values()):
        return None
    kv.sort(key=lambda v: (k_prof[v], v))

    assignment: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        for s in K.simplices:
            if v not in s.vertices:
                continue
            if all(u in assignment or u == v for u in s.vertices):
                img = Simplex.of(assignment.get(u, w) for u in s.vertices)
                if img not in L.simplices:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(kv):
            mapped = {
                Simplex.of(assignment[u] for u in s.vertices) for s in K.simplices
            }
            return mapped == set(L.simplices)
        v = kv[i]
        for w in lv:
            if w in used or l_prof[w] != k_prof[v]:
                continue
            assignment[v] = w
            used.add(w)
            if consistent(v, w) and search(i + 1):
                return True
            del assignment[v]
            used.discard(w)
        return False

    if search(0):
        return dict(assignment)
    return None
