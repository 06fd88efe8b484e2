"""Circuits (pseudomanifolds), their singular sets, and bordism constructions.

A relative k-circuit is a compact polyhedron that is a PL k-manifold away
from a singular subcomplex of dimension at most k-2, whose boundary is again
a circuit with the induced singular set.  This module verifies those axioms
at the level of a chosen triangulation, constructs the three codimension-two
singular sets whose complements are manifolds, and provides gluing, cylinder
and subdivision-prism constructions for bordism arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .complexes import (
    OpenSimplexSet,
    PrismResult,
    ProductResult,
    Simplex,
    SimplicialComplex,
    build_complex,
    product_complex,
    relabel,
    skeleton,
    subdivision_prism,
)
from .errors import ContractError, InternalInvariantError, MapError, StructureError
from .recognition import (
    PointClass,
    RegionVerdict,
    non_manifold_set,
    region_is_pl_manifold,
)


@dataclass(frozen=True)
class RelativeCircuitData:
    """A candidate relative circuit: complex, boundary subcomplex, dimension,
    and singular-set candidate."""

    L: SimplicialComplex
    K: SimplicialComplex
    k: int
    S: SimplicialComplex

    def __post_init__(self) -> None:
        if not self.K.is_subcomplex_of(self.L):
            raise StructureError("boundary is not a subcomplex of the circuit complex")
        if not self.S.is_subcomplex_of(self.L):
            raise StructureError("singular candidate is not a subcomplex of the circuit complex")

    @classmethod
    def closed(cls, L: SimplicialComplex, k: int, S: SimplicialComplex | None = None) -> "RelativeCircuitData":
        return cls(L, SimplicialComplex.empty(), k, S or SimplicialComplex.empty())

    @property
    def is_closed_circuit(self) -> bool:
        return not self.K.simplices

    def manifold_part(self) -> OpenSimplexSet:
        return OpenSimplexSet(self.L, self.L.simplices - self.S.simplices)


@dataclass(frozen=True)
class BordismData:
    """A candidate nullbordism: ambient complex N, its boundary M, the
    designated sub-circuit (L, K) inside M, dimension k of the sub-circuit,
    and the bordism's own singular candidate."""

    N: SimplicialComplex
    M: SimplicialComplex
    L: SimplicialComplex
    K: SimplicialComplex
    k: int
    S: SimplicialComplex

    def __post_init__(self) -> None:
        if not self.M.is_subcomplex_of(self.N):
            raise StructureError("M is not a subcomplex of N")
        if not self.L.is_subcomplex_of(self.M):
            raise StructureError("the designated circuit complex is not inside M")
        if not self.K.is_subcomplex_of(self.L):
            raise StructureError("the designated boundary is not inside the circuit complex")
        if not self.S.is_subcomplex_of(self.N):
            raise StructureError("singular candidate is not a subcomplex of N")

    def designated_circuit(self) -> RelativeCircuitData:
        return RelativeCircuitData(self.L, self.K, self.k, self.S.intersection(self.L))

    def as_circuit(self) -> RelativeCircuitData:
        return RelativeCircuitData(self.N, self.M, self.k + 1, self.S)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witnesses: tuple[Simplex, ...] = ()
    detail: str = ""
    unknown: bool = False


@dataclass(frozen=True)
class CircuitVerdict:
    checks: tuple[CheckResult, ...]

    @cached_property
    def unknown(self) -> bool:
        return any(c.unknown for c in self.checks)

    @cached_property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks) and not self.unknown

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed or c.unknown)

    def witnesses(self) -> tuple[Simplex, ...]:
        out: list[Simplex] = []
        for c in self.failures():
            out.extend(c.witnesses)
        return tuple(out)


def default_singular_set(L: SimplicialComplex, K: SimplicialComplex, k: int) -> SimplicialComplex:
    """Smallest closed set containing every recognition obstruction: the
    non-manifold locus plus boundary anomalies relative to K."""
    report = non_manifold_set(L)
    bad = set(report.non_manifold_subcomplex.simplices)
    for s, c in report.classification.items():
        if c is PointClass.BOUNDARY_MANIFOLD and s not in K.simplices:
            bad.add(s)
        elif c is PointClass.INTERIOR_MANIFOLD and s in K.simplices:
            bad.add(s)
    if not bad:
        return SimplicialComplex.empty()
    return SimplicialComplex.from_simplices(bad)


def _sorted_witnesses(simplices) -> tuple[Simplex, ...]:
    return tuple(sorted(simplices, key=lambda s: s.sort_key))


def _verify_circuit_checks(data: RelativeCircuitData, prefix: str = "") -> list[CheckResult]:
    L, K, k, S = data.L, data.K, data.k, data.S
    checks: list[CheckResult] = []
    if not L.simplices:
        checks.append(CheckResult(prefix + "empty", True, detail="empty circuit is vacuously valid"))
        return checks

    if L.dim != k:
        checks.append(
            CheckResult(
                prefix + "dimension",
                False,
                _sorted_witnesses(L.maximal_simplices),
                f"complex has dimension {L.dim}, circuit dimension is {k}",
            )
        )
        return checks

    s_bad = [s for s in S.simplices if s.dim > k - 2]
    checks.append(
        CheckResult(
            prefix + "singular-dimension",
            not s_bad,
            _sorted_witnesses(s_bad),
            f"singular set must have dimension <= {k - 2}",
        )
    )

    impure = [s for s in L.maximal_simplices if s.dim != k]
    checks.append(
        CheckResult(
            prefix + "purity",
            not impure,
            _sorted_witnesses(impure),
            "every simplex must be a face of a top-dimensional simplex",
        )
    )

    if s_bad or impure:
        return checks

    region = region_is_pl_manifold(data.manifold_part(), k)
    checks.append(
        CheckResult(
            prefix + "manifold-complement",
            region.verdict is not RegionVerdict.NO,
            (region.witness,) if region.witness is not None else (),
            "complement of the singular set must be a PL manifold",
            unknown=region.verdict is RegionVerdict.UNKNOWN,
        )
    )
    expected_boundary = K.simplices - S.simplices
    mismatch = region.boundary ^ expected_boundary
    checks.append(
        CheckResult(
            prefix + "boundary-match",
            not mismatch,
            _sorted_witnesses(mismatch),
            "manifold boundary must be exactly the designated boundary minus the singular set",
        )
    )

    sub = RelativeCircuitData(K, SimplicialComplex.empty(), k - 1, S.intersection(K))
    sub_checks = _verify_circuit_checks(sub, prefix=prefix + "boundary/")
    checks.extend(sub_checks)
    return checks


def verify_circuit(data: RelativeCircuitData) -> CircuitVerdict:
    """Check the circuit axioms for the given triangulated candidate."""
    if data.L.simplices and data.L.dim != data.k:
        raise StructureError(
            f"dimension mismatch: complex has dimension {data.L.dim}, expected {data.k}"
        )
    return CircuitVerdict(tuple(_verify_circuit_checks(data)))


def boundary_circuit(data: RelativeCircuitData) -> RelativeCircuitData:
    """The boundary as an absolute circuit with the induced singular set."""
    verdict = verify_circuit(data)
    if not verdict.valid:
        raise ContractError(
            f"boundary_circuit called on an invalid circuit: {[c.name for c in verdict.failures()]}"
        )
    return RelativeCircuitData(
        data.K, SimplicialComplex.empty(), data.k - 1, data.S.intersection(data.K)
    )


def verify_nullbordism(R: BordismData, Q: RelativeCircuitData) -> CircuitVerdict:
    """Check that R is a nullbordism of its designated sub-circuit Q."""
    checks: list[CheckResult] = []
    designation_ok = (
        R.L.simplices == Q.L.simplices
        and R.K.simplices == Q.K.simplices
        and R.k == Q.k
    )
    witnesses = _sorted_witnesses(R.L.simplices ^ Q.L.simplices) if not designation_ok else ()
    checks.append(
        CheckResult(
            "designation",
            designation_ok,
            witnesses,
            "the circuit must be the designated subcomplex of the bordism",
        )
    )
    if not designation_ok:
        return CircuitVerdict(tuple(checks))

    checks.append(
        CheckResult(
            "circuit-in-boundary",
            Q.L.is_subcomplex_of(R.M),
            _sorted_witnesses(Q.L.simplices - R.M.simplices),
            "the designated circuit must lie in the bordism boundary",
        )
    )

    if R.N.simplices and R.N.dim != R.k + 1:
        checks.append(
            CheckResult(
                "bordism-dimension",
                False,
                _sorted_witnesses(R.N.maximal_simplices),
                f"bordism complex has dimension {R.N.dim}, expected {R.k + 1}",
            )
        )
        return CircuitVerdict(tuple(checks))

    checks.extend(_verify_circuit_checks(R.as_circuit(), prefix="bordism/"))
    checks.extend(_verify_circuit_checks(Q, prefix="circuit/"))

    s_on_q = R.S.simplices & Q.L.simplices
    mism = s_on_q ^ Q.S.simplices
    checks.append(
        CheckResult(
            "singular-compatibility",
            not mism,
            _sorted_witnesses(mism),
            "the bordism singular set must meet the circuit exactly in its singular set",
        )
    )
    s_on_k = R.S.simplices & Q.K.simplices
    mism_k = s_on_k ^ (Q.S.simplices & Q.K.simplices)
    checks.append(
        CheckResult(
            "singular-boundary-compatibility",
            not mism_k,
            _sorted_witnesses(mism_k),
            "induced identity on the circuit boundary",
        )
    )
    return CircuitVerdict(tuple(checks))


@dataclass(frozen=True)
class SingularSet:
    """One of the three explicit codimension-two singular sets."""

    case: str                       # "a", "b" or "c"
    complex: SimplicialComplex
    ambient_dim: int

    def __post_init__(self) -> None:
        if self.case not in ("a", "b", "c"):
            raise StructureError(f"unknown singular-set case {self.case!r}")
        # Face-closedness is enforced by SimplicialComplex; the codimension
        # bound is a theorem that must be confirmed, not assumed.
        if self.complex.dim > self.ambient_dim - 2:
            raise InternalInvariantError(
                f"singular set has dimension {self.complex.dim}, ambient is {self.ambient_dim}"
            )

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def codim(self) -> int:
        if self.complex.dim < 0:
            return self.ambient_dim + 1
        return self.ambient_dim - self.complex.dim

    def members(self) -> frozenset[Simplex]:
        return self.complex.simplices


def singular_set(case: str, data: RelativeCircuitData | BordismData) -> SingularSet:
    """The case-specific singular set whose complement is a PL manifold.

    Case a: skeleton two below the top of an absolute circuit.
    Case b: low skeleton of a relative circuit minus the boundary's
            codimension-two simplices.
    Case c: low skeleton of a bordism minus boundary codimension-two
            simplices and the star of the circuit-boundary skeleton.
    """
    if case == "a":
        if not isinstance(data, RelativeCircuitData):
            raise StructureError("case a expects an absolute circuit")
        if data.K.simplices:
            raise StructureError("case a expects an absolute circuit (empty boundary)")
        sigma = skeleton(data.L, data.k - 2)
        return SingularSet("a", sigma, data.k)
    if case == "b":
        if not isinstance(data, RelativeCircuitData):
            raise StructureError("case b expects a relative circuit")
        members = {
            s
            for s in data.L.simplices
            if s.dim <= data.k - 2 and not (s.dim == data.k - 2 and s in data.K.simplices)
        }
        return SingularSet("b", SimplicialComplex(frozenset(members)), data.k)
    if case == "c":
        if not isinstance(data, BordismData):
            raise StructureError("case c expects bordism data")
        k = data.k
        boundary_skel = {s for s in data.K.simplices if s.dim == k - 2}
        starred = {
            s
            for s in data.N.simplices
            if s in boundary_skel or any(f in boundary_skel for f in s.faces(include_self=False))
        }
        members = {
            s
            for s in data.N.simplices
            if s.dim <= k - 1
            and not (s.dim == k - 1 and s in data.M.simplices)
            and s not in starred
        }
        return SingularSet("c", SimplicialComplex(frozenset(members)), k + 1)
    raise StructureError(f"unknown case {case!r}")


@dataclass(frozen=True)
class ManifoldComplementVerdict:
    checks: tuple[CheckResult, ...]

    @cached_property
    def unknown(self) -> bool:
        return any(c.unknown for c in self.checks)

    @cached_property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks) and not self.unknown


def _region_checks(
    name: str,
    host: SimplicialComplex,
    sigma_members: frozenset[Simplex],
    dim: int,
    expected_boundary: frozenset[Simplex],
) -> list[CheckResult]:
    U = OpenSimplexSet(host, host.simplices - sigma_members)
    region = region_is_pl_manifold(U, dim)
    out = [
        CheckResult(
            name,
            region.verdict is not RegionVerdict.NO,
            (region.witness,) if region.witness is not None else (),
            f"complement must be a PL {dim}-manifold",
            unknown=region.verdict is RegionVerdict.UNKNOWN,
        )
    ]
    mismatch = region.boundary ^ expected_boundary
    out.append(
        CheckResult(
            name + "-boundary",
            not mismatch,
            _sorted_witnesses(mismatch),
            "manifold boundary must match",
        )
    )
    return out


def verify_manifold_complement(
    case: str, data: RelativeCircuitData | BordismData, sigma: SingularSet
) -> ManifoldComplementVerdict:
    """Confirm that the complement of the singular set is a manifold with the
    predicted boundary, entirely through link analysis."""
    if sigma.case != case:
        raise StructureError("singular set was built for a different case")
    checks: list[CheckResult] = []
    members = sigma.members()
    if case == "a":
        assert isinstance(data, RelativeCircuitData)
        checks.extend(_region_checks("complement", data.L, members, data.k, frozenset()))
    elif case == "b":
        assert isinstance(data, RelativeCircuitData)
        expected = data.K.simplices - members
        checks.extend(_region_checks("complement", data.L, members, data.k, expected))
    elif case == "c":
        assert isinstance(data, BordismData)
        expected = data.M.simplices - members
        checks.extend(_region_checks("complement", data.N, members, data.k + 1, expected))
        inner = members & data.L.simplices
        expected_q = data.K.simplices - members
        checks.extend(
            _region_checks("designated-circuit", data.L, frozenset(inner), data.k, expected_q)
        )
        checks.append(
            CheckResult(
                "properly-embedded",
                data.L.is_subcomplex_of(data.M),
                _sorted_witnesses(data.L.simplices - data.M.simplices),
                "the designated circuit must sit inside the bordism boundary",
            )
        )
    else:
        raise StructureError(f"unknown case {case!r}")
    return ManifoldComplementVerdict(tuple(checks))


def skeleton_complement_inclusions(
    case: str, data: RelativeCircuitData | BordismData, sigma: SingularSet
) -> bool:
    """The manifold part lies in the complement of a low skeleton: every
    simplex of dimension at most (ambient - 3) belongs to the singular set."""
    if case == "a":
        assert isinstance(data, RelativeCircuitData)
        host, cutoff = data.L, data.k - 2
    elif case == "b":
        assert isinstance(data, RelativeCircuitData)
        host, cutoff = data.L, data.k - 3
    else:
        assert isinstance(data, BordismData)
        host, cutoff = data.N, data.k - 3
    members = sigma.members()
    return all(s in members for s in host.simplices if s.dim <= cutoff)


@dataclass(frozen=True)
class GlueResult:
    data: RelativeCircuitData
    verdict: CircuitVerdict
    left_vertex_map: dict[int, int]
    right_vertex_map: dict[int, int]
    reversed_right: bool

    def image_of_left(self) -> SimplicialComplex:
        return relabel_into(self.data.L, self.left_vertex_map)

    def image_of_right(self) -> SimplicialComplex:
        return relabel_into(self.data.L, self.right_vertex_map)


def relabel_into(host: SimplicialComplex, mapping: Mapping[int, int]) -> SimplicialComplex:
    """Subcomplex of host spanned by the image of a vertex mapping."""
    keep = set()
    image = set(mapping.values())
    for s in host.simplices:
        if set(s.vertices) <= image:
            keep.add(s)
    return SimplicialComplex(frozenset(keep))


def glue(
    A: RelativeCircuitData,
    B: RelativeCircuitData,
    interface_a: SimplicialComplex,
    interface_b: SimplicialComplex,
    iso: Mapping[int, int],
    reverse_orientation: bool = True,
) -> GlueResult:
    """Identify two circuits along isomorphic boundary subcomplexes.

    ``iso`` maps interface_a vertices to interface_b vertices and must induce
    a simplicial isomorphism.  The result's boundary is the closure of the
    unidentified boundary parts, its singular set is the image of both
    singular sets, and its circuit validity is re-verified, never assumed.
    The orientation flag records whether the right side enters with reversed
    orientation (the usual convention when composing bordisms); the
    underlying unoriented complex is unaffected.
    """
    if A.k != B.k:
        raise StructureError(f"cannot glue circuits of different dimensions {A.k} and {B.k}")
    if not interface_a.is_subcomplex_of(A.K):
        raise StructureError("left interface must be a subcomplex of the left boundary")
    if not interface_b.is_subcomplex_of(B.K):
        raise StructureError("right interface must be a subcomplex of the right boundary")
    iso = dict(iso)
    if sorted(iso.keys()) != list(interface_a.vertices):
        raise MapError("iso must be defined exactly on the left interface vertices")
    if sorted(iso.values()) != list(interface_b.vertices):
        raise MapError("iso must hit exactly the right interface vertices")
    mapped = {Simplex.of(iso[v] for v in s.vertices) for s in interface_a.simplices}
    if mapped != set(interface_b.simplices):
        raise MapError("iso is not a simplicial isomorphism of the interfaces")

    left_map = {v: v for v in A.L.vertices}
    inverse = {w: v for v, w in iso.items()}
    fresh = max([*A.L.vertices, -1]) + 1
    right_map: dict[int, int] = {}
    for v in B.L.vertices:
        if v in inverse:
            right_map[v] = inverse[v]
        else:
            right_map[v] = fresh
            fresh += 1

    right_L = relabel(B.L, right_map)
    right_K = relabel(B.K, right_map)
    right_S = relabel(B.S, right_map)
    overlap = (A.L.simplices & right_L.simplices) - interface_a.simplices
    if overlap:
        raise StructureError(
            "identification collapses distinct simplices onto "
            f"{sorted(overlap)[0]}; subdivide the inputs first"
        )
    L_new = A.L.union(right_L)

    interface = interface_a.simplices
    boundary_members = (A.K.simplices - interface) | (right_K.simplices - interface)
    K_new = (
        SimplicialComplex.from_simplices(boundary_members)
        if boundary_members
        else SimplicialComplex.empty()
    )
    S_new = A.S.union(right_S)
    if not S_new.is_subcomplex_of(L_new):
        raise InternalInvariantError("identified singular set left the glued complex")

    data = RelativeCircuitData(L_new, K_new, A.k, S_new)
    verdict = verify_circuit(data)
    return GlueResult(data, verdict, left_map, right_map, reverse_orientation)


def disjoint_union_circuits(A: RelativeCircuitData, B: RelativeCircuitData) -> GlueResult:
    return glue(
        A,
        B,
        SimplicialComplex.empty(),
        SimplicialComplex.empty(),
        {},
        reverse_orientation=False,
    )


@dataclass(frozen=True)
class SelfGlueResult:
    data: RelativeCircuitData
    verdict: CircuitVerdict
    vertex_map: dict[int, int]


def self_glue(
    A: RelativeCircuitData,
    interface_a: SimplicialComplex,
    interface_b: SimplicialComplex,
    iso: Mapping[int, int],
) -> SelfGlueResult:
    """Identify two disjoint boundary subcomplexes of one circuit.

    ``iso`` maps interface_a vertices to interface_b vertices; the second
    interface is folded onto the first.  Identifications that would collapse
    a simplex or merge simplices outside the interfaces are rejected.
    """
    if not interface_a.is_subcomplex_of(A.K) or not interface_b.is_subcomplex_of(A.K):
        raise StructureError("interfaces must be subcomplexes of the boundary")
    if interface_a.simplices & interface_b.simplices:
        raise StructureError("interfaces must be disjoint")
    iso = dict(iso)
    if sorted(iso.keys()) != list(interface_a.vertices):
        raise MapError("iso must be defined exactly on the first interface vertices")
    if sorted(iso.values()) != list(interface_b.vertices):
        raise MapError("iso must hit exactly the second interface vertices")
    mapped = {Simplex.of(iso[v] for v in s.vertices) for s in interface_a.simplices}
    if mapped != set(interface_b.simplices):
        raise MapError("iso is not a simplicial isomorphism of the interfaces")

    fold = {w: v for v, w in iso.items()}
    q = {v: fold.get(v, v) for v in A.L.vertices}

    identified = interface_a.simplices | interface_b.simplices
    images: dict[Simplex, list[Simplex]] = {}
    for s in A.L.simplices:
        img_vs = {q[v] for v in s.vertices}
        if len(img_vs) != len(s.vertices):
            raise StructureError(f"identification collapses the simplex {s}; subdivide first")
        images.setdefault(Simplex.of(img_vs), []).append(s)
    for img, pre in images.items():
        if len(pre) > 1 and any(p not in identified for p in pre):
            raise StructureError(
                f"identification merges simplices outside the interfaces onto {img}; subdivide first"
            )

    L_new = SimplicialComplex(frozenset(images.keys()))
    boundary_members = {
        Simplex.of(q[v] for v in s.vertices)
        for s in A.K.simplices
        if s not in identified
    }
    K_new = (
        SimplicialComplex.from_simplices(boundary_members)
        if boundary_members
        else SimplicialComplex.empty()
    )
    S_new = SimplicialComplex(
        frozenset(Simplex.of(q[v] for v in s.vertices) for s in A.S.simplices)
    )
    data = RelativeCircuitData(L_new, K_new, A.k, S_new)
    return SelfGlueResult(data, verify_circuit(data), q)


@dataclass(frozen=True)
class CylinderResult:
    bordism: BordismData
    product: ProductResult
    bottom_vertex_map: dict[int, int]
    top_vertex_map: dict[int, int]
    bottom: SimplicialComplex
    top: SimplicialComplex


def cylinder(Q: RelativeCircuitData) -> CylinderResult:
    """The product bordism from a circuit to itself.

    The designated sub-circuit is the disjoint union of the two ends; the
    cylinder's singular set is the prism over the circuit's singular set.
    """
    verdict = verify_circuit(Q)
    if not verdict.valid:
        raise ContractError("cylinder requires a verified circuit")
    edge = build_complex([[0, 1]])
    prod = product_complex(Q.L, edge)
    zero, one = Simplex((0,)), Simplex((1,))

    def level(s: Simplex) -> Simplex:
        return prod.project_right(s)

    end0 = SimplicialComplex(frozenset(s for s in prod.complex.simplices if level(s) == zero))
    end1 = SimplicialComplex(frozenset(s for s in prod.complex.simplices if level(s) == one))
    side = SimplicialComplex(
        frozenset(s for s in prod.complex.simplices if prod.project_left(s) in Q.K.simplices)
    )
    M = end0.union(end1).union(side)
    ends = end0.union(end1)
    ends_K = SimplicialComplex(
        frozenset(
            s
            for s in ends.simplices
            if prod.project_left(s) in Q.K.simplices
        )
    )
    S_cyl = SimplicialComplex(
        frozenset(s for s in prod.complex.simplices if prod.project_left(s) in Q.S.simplices)
    )
    bordism = BordismData(prod.complex, M, ends, ends_K, Q.k, S_cyl)
    bottom = {v: prod.lift(v, 0) for v in Q.L.vertices}
    top = {v: prod.lift(v, 1) for v in Q.L.vertices}
    return CylinderResult(bordism, prod, bottom, top, end0, end1)


@dataclass(frozen=True)
class SubdivisionBordismResult:
    bordism: BordismData
    prism: PrismResult
    bottom_circuit: RelativeCircuitData
    top_circuit: RelativeCircuitData
    bottom_vertex_map: dict[int, int]           # original vertex -> prism vertex
    top_carrier: dict[int, Simplex]             # prism top vertex -> original simplex


def subdivision_bordism(Q: RelativeCircuitData) -> SubdivisionBordismResult:
    """Prism bordism between a circuit and its barycentric subdivision."""
    verdict = verify_circuit(Q)
    if not verdict.valid:
        raise ContractError("subdivision bordism requires a verified circuit")
    prism = subdivision_prism(Q.L)
    bottom, top = prism.bottom, prism.top
    side = prism.over(Q.K)
    M = bottom.union(top).union(side)
    ends = bottom.union(top)
    bottom_K = SimplicialComplex(frozenset(side.simplices & bottom.simplices))
    top_K = SimplicialComplex(frozenset(side.simplices & top.simplices))
    S = prism.over(Q.S)
    ends_K = bottom_K.union(top_K)
    bordism = BordismData(prism.complex, M, ends, ends_K, Q.k, S)
    bottom_circuit = RelativeCircuitData(
        bottom, bottom_K, Q.k, SimplicialComplex(frozenset(S.simplices & bottom.simplices))
    )
    top_circuit = RelativeCircuitData(
        top, top_K, Q.k, SimplicialComplex(frozenset(S.simplices & top.simplices))
    )
    top_carrier = {pv: s for s, pv in prism.top_vertex.items()}
    return SubdivisionBordismResult(
        bordism, prism, bottom_circuit, top_circuit, dict(prism.bottom_vertex), top_carrier
    )
