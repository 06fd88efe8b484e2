"""Dual complexes, CW dimension bounds, and smoothing-obstruction reports.

The complement of a skeleton deformation-retracts onto a low-dimensional
dual subcomplex of the barycentric subdivision; the dimension of that dual
complex bounds the CW dimension of the complement.  Smoothings of the
manifold complements exist and are unique up to concordance whenever the
relevant groups of sphere diffeomorphisms vanish, which the bounds reduce
to table lookups in低 dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .circuits import BordismData, RelativeCircuitData
from .complexes import (
    SimplicialComplex,
    SubdivisionResult,
    barycentric_subdivision,
    join_decompose,
)
from .errors import InternalInvariantError, MalformedInputError, StructureError


@dataclass(frozen=True)
class DualComplexResult:
    complex: SimplicialComplex
    subdivision: SubdivisionResult
    r: int
    ambient_dim: int

    @property
    def dim(self) -> int:
        return self.complex.dim


def dual_complex(K: SimplicialComplex, r: int) -> DualComplexResult:
    """Subcomplex of the barycentric subdivision spanned by chains starting
    strictly above dimension r.

    Its dimension is at most dim K - r - 1, and every subdivision simplex
    splits uniquely into a low chain and a member chain; both facts are
    verified, not assumed.
    """
    if r < 0 or r > K.dim:
        raise MalformedInputError(f"need 0 <= r <= {K.dim}, got {r}")
    sd = barycentric_subdivision(K)
    members = set()
    for s in sd.complex.simplices:
        chain = sd.chain_of(s)
        low, high = join_decompose(chain, r)
        # Totality and uniqueness of the split for every subdivision simplex.
        if low + high != chain:
            raise InternalInvariantError("join decomposition failed to reconstitute a chain")
        if any(t.dim > r for t in low) or any(t.dim <= r for t in high):
            raise InternalInvariantError("join decomposition mixed dimensions")
        if not low:
            members.add(s)
    dual = SimplicialComplex(frozenset(members))
    if dual.dim > K.dim - r - 1:
        raise InternalInvariantError(
            f"dual complex has dimension {dual.dim}, bound is {K.dim - r - 1}"
        )
    return DualComplexResult(dual, sd, r, K.dim)


@dataclass(frozen=True)
class GammaGroupTable:
    """Groups of sphere diffeomorphisms modulo those extending over the disk,
    indexed by dimension; trivial through dimension six."""

    entries: Mapping[int, str]

    @classmethod
    def standard(cls) -> "GammaGroupTable":
        table = {n: "0" for n in range(0, 7)}
        table[7] = "Z/28"
        return cls(table)

    def __post_init__(self) -> None:
        for n in range(0, 7):
            if self.entries.get(n) != "0":
                raise StructureError(f"group table must be trivial in dimension {n}")

    def describe(self, n: int) -> str:
        return self.entries.get(n, "unknown")

    def is_trivial(self, n: int) -> bool:
        return self.entries.get(n) == "0"


@dataclass(frozen=True)
class ObstructionReport:
    """Existence and uniqueness obstructions for smoothing a manifold
    complement, certified by a CW dimension bound."""

    case: str
    cw_dimension_bound: int
    required_gamma: tuple[int, ...]
    all_vanish: bool
    dual_complex_dim: int
    gamma_groups: tuple[str, ...] = ()


_CASE_BOUNDS = {"a": 1, "b": 2, "c": 3}


def cw_dimension_bound(
    case: str,
    data: RelativeCircuitData | BordismData,
    table: GammaGroupTable | None = None,
) -> ObstructionReport:
    """CW dimension bound for the complement of the case singular set, plus
    the consulted obstruction groups.

    Existence obstructions live one dimension below the cohomology degree
    and uniqueness obstructions at the degree, so a bound of b consults the
    groups in dimensions 0..b; vanishing is derived from the table.
    """
    table = table or GammaGroupTable.standard()
    if case not in _CASE_BOUNDS:
        raise StructureError(f"unknown case {case!r}")
    bound = _CASE_BOUNDS[case]
    if case in ("a", "b"):
        if not isinstance(data, RelativeCircuitData):
            raise StructureError(f"case {case} expects circuit data")
        host = data.L
        r = data.k - 2 if case == "a" else data.k - 3
    else:
        if not isinstance(data, BordismData):
            raise StructureError("case c expects bordism data")
        host = data.N
        r = data.k - 3
    if host.simplices and 0 <= r <= host.dim:
        witness_dim = dual_complex(host, r).dim
    else:
        # Low-dimensional circuits: the complex itself is the witness.
        witness_dim = host.dim
    if witness_dim > bound:
        raise InternalInvariantError(
            f"case {case} witness dimension {witness_dim} exceeds the bound {bound}"
        )
    required = tuple(range(0, bound + 1))
    groups = tuple(table.describe(n) for n in required)
    all_vanish = all(table.is_trivial(n) for n in required)
    return ObstructionReport(case, bound, required, all_vanish, witness_dim, groups)
