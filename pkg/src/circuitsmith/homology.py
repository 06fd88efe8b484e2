"""Integer simplicial homology of complex pairs, circuit orientations,
fundamental classes, and evaluation of singular circuits in homology.

All arithmetic is exact (Python ints).  Bases are the canonically sorted
simplices, and the Smith-form transforms are deterministic, so homology
coordinates are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .circuits import RelativeCircuitData
from .complexes import Simplex, SimplicialComplex, SimplicialMap
from .errors import (
    ContractError,
    InternalInvariantError,
    MapError,
    OrientationError,
    StructureError,
)
from .snf import Matrix, mat_vec, smith_normal_form, zeros


@dataclass
class IntChain:
    """A finite integer combination of same-dimension simplices."""

    degree: int
    coefficients: dict[Simplex, int]

    def __post_init__(self) -> None:
        self.coefficients = {s: c for s, c in self.coefficients.items() if c}
        for s in self.coefficients:
            if s.dim != self.degree:
                raise StructureError(f"{s} has dimension {s.dim}, chain degree is {self.degree}")

    @classmethod
    def zero(cls, degree: int) -> "IntChain":
        return cls(degree, {})

    def __add__(self, other: "IntChain") -> "IntChain":
        if self.degree != other.degree:
            raise StructureError("cannot add chains of different degrees")
        out = dict(self.coefficients)
        for s, c in other.coefficients.items():
            out[s] = out.get(s, 0) + c
        return IntChain(self.degree, out)

    def __neg__(self) -> "IntChain":
        return IntChain(self.degree, {s: -c for s, c in self.coefficients.items()})

    def __sub__(self, other: "IntChain") -> "IntChain":
        return self + (-other)

    def scale(self, c: int) -> "IntChain":
        return IntChain(self.degree, {s: c * v for s, v in self.coefficients.items()})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntChain)
            and self.degree == other.degree
            and self.coefficients == other.coefficients
        )

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    @property
    def support(self) -> frozenset[Simplex]:
        return frozenset(self.coefficients)

    def items(self) -> list[tuple[Simplex, int]]:
        return sorted(self.coefficients.items(), key=lambda sc: sc[0].sort_key)


def chain_boundary(z: IntChain) -> IntChain:
    """Alternating-sign simplicial boundary."""
    out: dict[Simplex, int] = {}
    for s, c in z.coefficients.items():
        for i, f in enumerate(s.facets()):
            # facets() lists the face opposite vertex i at position i
            sign = (-1) ** i
            out[f] = out.get(f, 0) + sign * c
    return IntChain(z.degree - 1, out)


def incidence_sign(top: Simplex, facet: Simplex) -> int:
    """Coefficient of facet in the boundary of top."""
    for i, f in enumerate(top.facets()):
        if f == facet:
            return (-1) ** i
    raise StructureError(f"{facet} is not a facet of {top}")


def boundary_operator(K: SimplicialComplex, k: int) -> Matrix:
    """Matrix of the degree-k boundary over the canonical simplex order."""
    rows = K.simplices_of_dim(k - 1)
    cols = K.simplices_of_dim(k)
    index = {s: i for i, s in enumerate(rows)}
    mat = zeros(len(rows), len(cols))
    for j, s in enumerate(cols):
        for i, f in enumerate(s.facets()):
            mat[index[f]][j] = (-1) ** i
    return mat


@dataclass(frozen=True)
class Coordinates:
    """Coordinates of a homology class: free part plus torsion residues."""

    degree: int
    free: tuple[int, ...]
    torsion: tuple[int, ...]
    torsion_orders: tuple[int, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.free) and all(c == 0 for c in self.torsion)


@dataclass
class _DegreeData:
    degree: int
    basis: tuple[Simplex, ...]
    rank_boundary_in: int          # rank of the incoming boundary (degree+1)
    rank_boundary_out: int         # rank of the outgoing boundary (degree)
    diagonal: tuple[int, ...]      # invariant factors of the incoming boundary
    betti: int
    torsion: tuple[int, ...]
    q: Matrix                      # column transform of the outgoing boundary
    qinv: Matrix
    p2: Matrix                     # row transform of the kernel-coordinate matrix
    p2inv: Matrix


class HomologyResult:
    """Integer homology of a pair with torsion, generators and coordinates."""

    def __init__(self, K: SimplicialComplex, A: SimplicialComplex | None = None):
        A = A or SimplicialComplex.empty()
        if not A.is_subcomplex_of(K):
            raise StructureError("relative subcomplex must sit inside the complex")
        self.K = K
        self.A = A
        self._degrees: dict[int, _DegreeData] = {}
        self._bases: dict[int, tuple[Simplex, ...]] = {}
        for d in range(0, K.dim + 1):
            self._bases[d] = tuple(
                s for s in K.simplices_of_dim(d) if s not in A.simplices
            )
        for d in range(0, K.dim + 1):
            self._degrees[d] = self._compute_degree(d)

    def _relative_boundary(self, k: int) -> Matrix:
        rows = self._bases.get(k - 1, ())
        cols = self._bases.get(k, ())
        index = {s: i for i, s in enumerate(rows)}
        mat = zeros(len(rows), len(cols))
        for j, s in enumerate(cols):
            for i, f in enumerate(s.facets()):
                r = index.get(f)
                if r is not None:
                    mat[r][j] = (-1) ** i
        return mat

    def _compute_degree(self, k: int) -> _DegreeData:
        basis = self._bases[k]
        n = len(basis)
        d_out = self._relative_boundary(k)
        snf_out = smith_normal_form(d_out, cols=n)
        r_out = snf_out.rank
        kernel_dim = n - r_out

        d_in = self._relative_boundary(k + 1)
        n_in = len(self._bases.get(k + 1, ()))
        # Kernel coordinates of the incoming boundary image; the first r_out
        # rows vanish because boundaries are cycles.
        u = [mat_vec(snf_out.Qinv, [d_in[i][j] for i in range(n)]) for j in range(n_in)]
        for col in u:
            for i in range(r_out):
                if col[i] != 0:
                    raise InternalInvariantError("boundary of a boundary is nonzero")
        m = [[u[j][i] for j in range(n_in)] for i in range(r_out, n)]
        snf_in = smith_normal_form(m, cols=n_in)
        s = snf_in.rank
        diagonal = tuple(d for d in snf_in.diagonal if d)
        torsion = tuple(d for d in diagonal if d > 1)
        betti = kernel_dim - s
        return _DegreeData(
            degree=k,
            basis=basis,
            rank_boundary_in=s,
            rank_boundary_out=r_out,
            diagonal=diagonal,
            betti=betti,
            torsion=torsion,
            q=snf_out.Q,
            qinv=snf_out.Qinv,
            p2=snf_in.P,
            p2inv=snf_in.Pinv,
        )

    def betti(self, k: int) -> int:
        d = self._degrees.get(k)
        return d.betti if d else 0

    def torsion(self, k: int) -> tuple[int, ...]:
        d = self._degrees.get(k)
        return d.torsion if d else ()

    def betti_numbers(self) -> tuple[int, ...]:
        return tuple(self.betti(k) for k in range(0, max(self.K.dim, 0) + 1))

    def _chain_vector(self, z: IntChain) -> list[int]:
        data = self._degrees.get(z.degree)
        if data is None:
            if z:
                raise StructureError(f"no chains in degree {z.degree}")
            return []
        index = {s: i for i, s in enumerate(data.basis)}
        vec = [0] * len(data.basis)
        for s, c in z.coefficients.items():
            i = index.get(s)
            if i is None:
                if s in self.A.simplices:
                    continue  # relative chain: A-simplices are quotiented away
                raise StructureError(f"{s} is not a simplex of the complex")
            vec[i] = c
        return vec

    def coordinates(self, z: IntChain) -> Coordinates:
        """Homology coordinates of a relative cycle."""
        k = z.degree
        data = self._degrees.get(k)
        if data is None:
            return Coordinates(k, (), (), ())
        vec = self._chain_vector(z)
        u = mat_vec(data.qinv, vec)
        for i in range(data.rank_boundary_out):
            if u[i] != 0:
                raise ContractError("chain is not a relative cycle")
        kappa = u[data.rank_boundary_out :]
        w = mat_vec(data.p2, kappa)
        s = data.rank_boundary_in
        torsion_orders = data.torsion
        torsion_coords = []
        for i, d in enumerate(data.diagonal):
            if d > 1:
                torsion_coords.append(w[i] % d)
        free = tuple(w[s:])
        return Coordinates(k, free, tuple(torsion_coords), torsion_orders)

    def _kernel_chain(self, k: int, kappa_index: int) -> IntChain:
        data = self._degrees[k]
        r = data.rank_boundary_out
        n = len(data.basis)
        column = [data.p2inv[i][kappa_index] for i in range(n - r)]
        coeffs: dict[Simplex, int] = {}
        for i in range(n):
            val = sum(data.q[i][r + j] * column[j] for j in range(n - r))
            if val:
                coeffs[data.basis[i]] = val
        return IntChain(k, coeffs)

    def free_generators(self, k: int) -> list[IntChain]:
        data = self._degrees.get(k)
        if data is None:
            return []
        s = data.rank_boundary_in
        kernel_dim = len(data.basis) - data.rank_boundary_out
        return [self._kernel_chain(k, j) for j in range(s, kernel_dim)]

    def torsion_generators(self, k: int) -> list[IntChain]:
        data = self._degrees.get(k)
        if data is None:
            return []
        return [
            self._kernel_chain(k, i)
            for i, d in enumerate(data.diagonal)
            if d > 1
        ]


def homology(K: SimplicialComplex, A: SimplicialComplex | None = None) -> HomologyResult:
    return HomologyResult(K, A)


@dataclass(frozen=True)
class OrientationAssignment:
    """Signs on the top simplices of a circuit's manifold part."""

    signs: Mapping[Simplex, int]
    orientable: bool
    witness_cycle: tuple[Simplex, ...] = ()

    def sign(self, s: Simplex) -> int:
        return self.signs[s]


def orient_circuit(Q: RelativeCircuitData) -> OrientationAssignment:
    """Propagate compatible orientations across shared facets outside the
    singular set, component by component."""
    tops = list(Q.L.simplices_of_dim(Q.k))
    facet_cofaces: dict[Simplex, list[tuple[Simplex, int]]] = {}
    for t in tops:
        for i, f in enumerate(t.facets()):
            if f in Q.S.simplices:
                continue
            facet_cofaces.setdefault(f, []).append((t, (-1) ** i))

    signs: dict[Simplex, int] = {}
    parent: dict[Simplex, Simplex | None] = {}
    for root in tops:
        if root in signs:
            continue
        signs[root] = 1
        parent[root] = None
        stack = [root]
        while stack:
            t = stack.pop()
            for i, f in enumerate(t.facets()):
                pairs = facet_cofaces.get(f)
                if not pairs or len(pairs) != 2:
                    continue
                inc_t = (-1) ** i
                for u, inc_u in pairs:
                    if u == t:
                        continue
                    needed = -signs[t] * inc_t * inc_u
                    if u not in signs:
                        signs[u] = needed
                        parent[u] = t
                        stack.append(u)
                    elif signs[u] != needed:
                        cycle = _conflict_cycle(parent, t, u)
                        return OrientationAssignment({}, False, cycle)
    return OrientationAssignment(signs, True)


def _conflict_cycle(
    parent: Mapping[Simplex, Simplex | None], a: Simplex, b: Simplex
) -> tuple[Simplex, ...]:
    def path(t: Simplex) -> list[Simplex]:
        out = [t]
        while parent[t] is not None:
            t = parent[t]  # type: ignore[assignment]
            out.append(t)
        return out

    pa, pb = path(a), path(b)
    common = set(pa) & set(pb)
    cut_a = next(i for i, t in enumerate(pa) if t in common)
    cut_b = next(i for i, t in enumerate(pb) if t in common)
    return tuple(pa[: cut_a + 1] + pb[:cut_b][::-1])


def fundamental_class(Q: RelativeCircuitData, o: OrientationAssignment) -> IntChain:
    """Signed sum of the top simplices; a cycle rel the boundary subcomplex."""
    if not o.orientable:
        raise OrientationError("circuit is not orientable", witness=o.witness_cycle)
    tops = Q.L.simplices_of_dim(Q.k)
    missing = [t for t in tops if t not in o.signs]
    if missing:
        raise ContractError(f"orientation does not cover {missing[0]}")
    z = IntChain(Q.k, {t: o.signs[t] for t in tops})
    bz = chain_boundary(z)
    stray = [s for s in bz.support if s not in Q.K.simplices]
    if stray:
        raise InternalInvariantError(
            f"fundamental chain boundary leaks outside the designated boundary at {stray[0]}"
        )
    return z


def induced_boundary_orientation(
    Q: RelativeCircuitData, o: OrientationAssignment
) -> OrientationAssignment:
    """Orientation the boundary circuit inherits from the fundamental chain."""
    z = fundamental_class(Q, o)
    bz = chain_boundary(z)
    signs: dict[Simplex, int] = {}
    for s, c in bz.coefficients.items():
        if c not in (1, -1):
            raise InternalInvariantError(f"boundary coefficient {c} at {s} is not a unit")
        signs[s] = c
    return OrientationAssignment(signs, True)


def pushforward(a: SimplicialMap, z: IntChain) -> IntChain:
    """Chain-level image; degenerate simplex images contribute zero."""
    out: dict[Simplex, int] = {}
    for s, c in z.coefficients.items():
        image = [a.apply_vertex(v) for v in s.vertices]
        if len(set(image)) != len(image):
            continue
        order = sorted(range(len(image)), key=lambda i: image[i])
        sign = _permutation_sign(order)
        t = Simplex(tuple(image[i] for i in order))
        out[t] = out.get(t, 0) + sign * c
    return IntChain(z.degree, out)


def _permutation_sign(perm: list[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def evaluate(
    a: SimplicialMap,
    z: IntChain,
    A: SimplicialComplex | None = None,
    domain_boundary: SimplicialComplex | None = None,
    target_homology: HomologyResult | None = None,
) -> Coordinates:
    """Coordinates of the pushed-forward relative cycle in the target pair.

    ``domain_boundary`` must map into ``A`` for the pushforward to be a map
    of pairs; violations raise.
    """
    A = A or SimplicialComplex.empty()
    boundary = domain_boundary or SimplicialComplex.empty()
    for s in boundary.maximal_simplices:
        if a.apply(s) not in A.simplices:
            raise MapError(f"not a map of pairs: {s} lands on {a.apply(s)} outside the subpair")
    pushed = pushforward(a, z)
    relative = IntChain(
        pushed.degree,
        {s: c for s, c in pushed.coefficients.items() if s not in A.simplices},
    )
    H = target_homology or homology(a.target, A)
    return H.coordinates(relative)


def connecting_coordinates(
    H_pair: HomologyResult, H_sub: HomologyResult, z: IntChain
) -> Coordinates:
    """Image of a relative cycle under the connecting map: coordinates of its
    boundary inside the subcomplex."""
    bz = chain_boundary(z)
    stray = [s for s in bz.support if s not in H_pair.A.simplices]
    if stray:
        raise ContractError("chain boundary is not carried by the subcomplex")
    return H_sub.coordinates(bz)
