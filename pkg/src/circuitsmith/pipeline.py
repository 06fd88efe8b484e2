"""End-to-end certificate pipelines.

``psi`` turns a verified singular relative circuit into a certified
pseudocycle: the singular set is constructed, its complement certified as a
manifold, the circuit oriented, its fundamental class evaluated in homology,
limit carriers computed from the compactified restriction of the map, the
dimension bounds checked, and the smoothing obstructions reported.  Every
stage emits witnesses and a failed stage aborts the run; no later stage
executes after a failure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import (
    BordismData,
    CircuitVerdict,
    ManifoldComplementVerdict,
    RelativeCircuitData,
    SingularSet,
    singular_set,
    verify_circuit,
    verify_manifold_complement,
    verify_nullbordism,
)
from .complexes import OpenSimplexSet, SimplicialComplex, SimplicialMap
from .errors import InternalInvariantError, MapError, OrientationError, PipelineError
from .homology import (
    Coordinates,
    IntChain,
    OrientationAssignment,
    evaluate,
    fundamental_class,
    orient_circuit,
)
from .limits import CompactifiedMap, PuncturedComplex, limit_set
from .obstructions import GammaGroupTable, ObstructionReport, cw_dimension_bound


@dataclass(frozen=True)
class TargetPair:
    """A target complex with a closed subcomplex."""

    X: SimplicialComplex
    A: SimplicialComplex

    def __post_init__(self) -> None:
        if not self.A.is_subcomplex_of(self.X):
            raise PipelineError("target", "subpair is not a subcomplex of the target")

    @classmethod
    def absolute(cls, X: SimplicialComplex) -> "TargetPair":
        return cls(X, SimplicialComplex.empty())


@dataclass(frozen=True)
class DimensionBound:
    name: str
    limit_dimension: int
    max_allowed: int

    @property
    def ok(self) -> bool:
        return self.limit_dimension <= self.max_allowed


@dataclass(frozen=True)
class PseudocycleCertificate:
    circuit: RelativeCircuitData
    target: TargetPair
    map: SimplicialMap
    k: int
    circuit_verdict: CircuitVerdict
    sigma: SingularSet
    complement_verdict: ManifoldComplementVerdict
    orientation: OrientationAssignment
    fundamental: IntChain
    homology_coordinates: Coordinates
    limit_carrier: OpenSimplexSet
    boundary_limit_carrier: OpenSimplexSet
    bound_main: DimensionBound
    bound_boundary: DimensionBound
    obstruction: ObstructionReport

    @property
    def valid(self) -> bool:
        return (
            self.circuit_verdict.valid
            and self.complement_verdict.valid
            and self.bound_main.ok
            and self.bound_boundary.ok
            and self.obstruction.all_vanish
        )


def _fail(stage: str, message: str, witnesses=(), unknown: bool = False) -> PipelineError:
    return PipelineError(stage, message, witnesses, unknown)


def _carrier_of_image(
    a: SimplicialMap, domain: SimplicialComplex, punctures: SimplicialComplex
) -> OpenSimplexSet:
    """Limit carrier of the map restricted to the complement of ``punctures``,
    computed through the compactified presentation."""
    dom = PuncturedComplex(domain, punctures)
    target = PuncturedComplex.compact(a.target)
    restricted = SimplicialMap.from_dict(
        domain, a.target, {v: a.apply_vertex(v) for v in domain.vertices}
    )
    cmap = CompactifiedMap(dom, target, restricted)
    return limit_set(cmap).carrier


def psi(
    circuit: RelativeCircuitData,
    a: SimplicialMap,
    target: TargetPair,
    orientation: OrientationAssignment | None = None,
    gamma_table: GammaGroupTable | None = None,
) -> PseudocycleCertificate:
    """Certify a singular relative circuit as a pseudocycle.

    Stages run in order: circuit axioms, singular set, manifold complement,
    orientation, fundamental class, homology evaluation, limit carriers,
    dimension bounds, obstruction report.  The first failing stage raises
    ``PipelineError`` with its witnesses.
    """
    k = circuit.k
    if a.source.simplices != circuit.L.simplices:
        raise _fail("input", "map source must be the circuit complex")
    if a.target.simplices != target.X.simplices:
        raise _fail("input", "map target must be the target complex")

    verdict = verify_circuit(circuit)
    if not verdict.valid:
        raise _fail(
            "verify-circuit",
            "circuit axioms failed",
            verdict.witnesses(),
            unknown=verdict.unknown,
        )

    sigma = singular_set("b", circuit)
    if k <= 1 and sigma.complex.simplices:
        raise InternalInvariantError("low-dimensional circuits must have empty singular sets")

    complement = verify_manifold_complement("b", circuit, sigma)
    if not complement.valid:
        witnesses = tuple(w for c in complement.checks for w in c.witnesses)
        raise _fail(
            "manifold-complement",
            "complement of the singular set failed manifold checks",
            witnesses,
            unknown=complement.unknown,
        )

    if orientation is None:
        orientation = orient_circuit(circuit)
    if not orientation.orientable:
        raise _fail("orientation", "circuit is not orientable", orientation.witness_cycle)

    try:
        z = fundamental_class(circuit, orientation)
    except (OrientationError, InternalInvariantError) as exc:
        raise _fail("fundamental-class", str(exc))

    try:
        coords = evaluate(a, z, target.A, circuit.K)
    except MapError as exc:
        raise _fail("evaluate", str(exc))

    limit_carrier = _carrier_of_image(a, circuit.L, sigma.complex)
    expected = frozenset(a.apply(s) for s in sigma.complex.simplices)
    if limit_carrier.members != expected:
        raise InternalInvariantError("limit carrier differs from the image of the singular set")
    sigma_boundary = sigma.complex.intersection(circuit.K)
    if circuit.K.simplices:
        boundary_map = a.restrict(circuit.K)
        boundary_carrier = _carrier_of_image(boundary_map, circuit.K, sigma_boundary)
    else:
        boundary_carrier = OpenSimplexSet(a.target, frozenset())

    bound_main = DimensionBound("main", limit_carrier.dim, max(-1, k - 2))
    bound_boundary = DimensionBound("boundary", boundary_carrier.dim, max(-1, k - 3))
    if not bound_main.ok or not bound_boundary.ok:
        raise _fail(
            "dimension-bounds",
            f"limit carriers have dimensions {limit_carrier.dim}, {boundary_carrier.dim}",
            tuple(limit_carrier.sorted_members),
        )

    obstruction = cw_dimension_bound("b", circuit, gamma_table)
    if not obstruction.all_vanish:
        raise _fail(
            "obstruction",
            f"smoothing obstructions do not vanish: {obstruction.gamma_groups}",
        )

    return PseudocycleCertificate(
        circuit=circuit,
        target=target,
        map=a,
        k=k,
        circuit_verdict=verdict,
        sigma=sigma,
        complement_verdict=complement,
        orientation=orientation,
        fundamental=z,
        homology_coordinates=coords,
        limit_carrier=limit_carrier,
        boundary_limit_carrier=boundary_carrier,
        bound_main=bound_main,
        bound_boundary=bound_boundary,
        obstruction=obstruction,
    )


@dataclass(frozen=True)
class BordismCertificate:
    bordism: BordismData
    target: TargetPair
    map: SimplicialMap
    k: int
    nullbordism_verdict: CircuitVerdict
    sigma: SingularSet
    complement_verdict: ManifoldComplementVerdict
    limit_carrier: OpenSimplexSet
    side_limit_carrier: OpenSimplexSet
    bound_main: DimensionBound
    bound_side: DimensionBound
    obstruction: ObstructionReport

    @property
    def valid(self) -> bool:
        return (
            self.nullbordism_verdict.valid
            and self.complement_verdict.valid
            and self.bound_main.ok
            and self.bound_side.ok
            and self.obstruction.all_vanish
        )


def verify_bordism_certificate(
    R: BordismData,
    d_map: SimplicialMap,
    target: TargetPair,
    circuit: RelativeCircuitData | None = None,
    gamma_table: GammaGroupTable | None = None,
) -> BordismCertificate:
    """Certify a nullbordism of its designated sub-circuit.

    Gate order: nullbordism axioms first (a singular set incompatible with
    the designated circuit is rejected before any singular-set
    construction), then the case-c singular set, manifold checks, limit
    carriers and bounds, and the obstruction report.  When ``circuit`` is
    omitted the designated circuit inherits the bordism's singular set.
    """
    k = R.k
    if d_map.source.simplices != R.N.simplices:
        raise _fail("input", "map source must be the bordism complex")
    if d_map.target.simplices != target.X.simplices:
        raise _fail("input", "map target must be the target complex")

    verdict = verify_nullbordism(R, circuit or R.designated_circuit())
    if not verdict.valid:
        raise _fail(
            "verify-nullbordism",
            "nullbordism axioms failed",
            verdict.witnesses(),
            unknown=verdict.unknown,
        )

    sigma = singular_set("c", R)
    complement = verify_manifold_complement("c", R, sigma)
    if not complement.valid:
        witnesses = tuple(w for c in complement.checks for w in c.witnesses)
        raise _fail(
            "manifold-complement",
            "complement of the singular set failed manifold checks",
            witnesses,
            unknown=complement.unknown,
        )

    limit_carrier = _carrier_of_image(d_map, R.N, sigma.complex)
    side = SimplicialComplex.from_simplices(R.M.simplices - R.L.simplices) if (
        R.M.simplices - R.L.simplices
    ) else SimplicialComplex.empty()
    sigma_side = sigma.complex.intersection(side)
    if side.simplices:
        side_map = d_map.restrict(side)
        side_carrier = _carrier_of_image(side_map, side, sigma_side)
    else:
        side_carrier = OpenSimplexSet(d_map.target, frozenset())

    bound_main = DimensionBound("main", limit_carrier.dim, max(-1, k - 1))
    bound_side = DimensionBound("side-boundary", side_carrier.dim, max(-1, k - 2))
    if not bound_main.ok or not bound_side.ok:
        raise _fail(
            "dimension-bounds",
            f"carriers have dimensions {limit_carrier.dim}, {side_carrier.dim}",
        )

    obstruction = cw_dimension_bound("c", R, gamma_table)
    if not obstruction.all_vanish:
        raise _fail("obstruction", "smoothing obstructions do not vanish")

    return BordismCertificate(
        bordism=R,
        target=target,
        map=d_map,
        k=k,
        nullbordism_verdict=verdict,
        sigma=sigma,
        complement_verdict=complement,
        limit_carrier=limit_carrier,
        side_limit_carrier=side_carrier,
        bound_main=bound_main,
        bound_side=bound_side,
        obstruction=obstruction,
    )


@dataclass(frozen=True)
class InvarianceVerdict:
    coordinates_equal: bool
    targets_match: bool
    ends_embedded: bool
    maps_commute: bool
    bordism_valid: bool

    @property
    def verdict(self) -> bool:
        return (
            self.coordinates_equal
            and self.targets_match
            and self.ends_embedded
            and self.maps_commute
            and self.bordism_valid
        )


def bordism_invariance_check(
    cert1: PseudocycleCertificate,
    cert2: PseudocycleCertificate,
    bordism_cert: BordismCertificate,
    end1: SimplicialMap,
    end2: SimplicialMap,
) -> InvarianceVerdict:
    """Evaluation coordinates must agree across a bordism whose designated
    circuit contains both certified ends compatibly."""
    targets_match = (
        cert1.target.X.simplices == cert2.target.X.simplices
        and cert1.target.A.simplices == cert2.target.A.simplices
        and bordism_cert.target.X.simplices == cert1.target.X.simplices
    )
    coords_equal = (
        cert1.homology_coordinates == cert2.homology_coordinates
        if targets_match
        else False
    )

    def embeds(end: SimplicialMap, cert: PseudocycleCertificate) -> bool:
        if end.source.simplices != cert.circuit.L.simplices:
            return False
        if not end.is_vertex_injective():
            return False
        designated = bordism_cert.bordism.L.simplices
        return all(end.apply(s) in designated for s in cert.circuit.L.maximal_simplices)

    ends_embedded = embeds(end1, cert1) and embeds(end2, cert2)

    def commutes(end: SimplicialMap, cert: PseudocycleCertificate) -> bool:
        return all(
            bordism_cert.map.apply_vertex(end.apply_vertex(v)) == cert.map.apply_vertex(v)
            for v in cert.circuit.L.vertices
        )

    maps_commute = ends_embedded and commutes(end1, cert1) and commutes(end2, cert2)
    return InvarianceVerdict(
        coordinates_equal=coords_equal,
        targets_match=targets_match,
        ends_embedded=ends_embedded,
        maps_commute=maps_commute,
        bordism_valid=bordism_cert.valid,
    )
