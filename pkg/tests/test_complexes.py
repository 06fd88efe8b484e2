from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circuitsmith import (
    OpenSimplexSet,
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    build_complex,
    complex_isomorphism,
    join_decompose,
    link,
    product_complex,
    skeleton,
    star,
    subdivision_prism,
)
from circuitsmith.errors import MalformedInputError, NotFoundError

from .conftest import simplex_boundary_complex
from .generators import random_complex


def euler(K):
    return K.euler_characteristic


class TestBuildComplex:
    def test_face_closure_of_triangle(self):
        K = build_complex([[0, 1, 2]])
        assert len(K) == 7
        assert len(K.simplices_of_dim(1)) == 3
        assert len(K.simplices_of_dim(0)) == 3

    def test_triangle_boundary(self):
        K = build_complex([[0, 1], [1, 2], [0, 2]])
        assert len(K) == 6
        assert K.dim == 1

    def test_empty(self):
        K = build_complex([])
        assert K.dim == -1
        assert len(K) == 0

    def test_duplicate_vertex_rejected(self):
        with pytest.raises(MalformedInputError):
            build_complex([[0, 1, 1]])

    def test_unsorted_input_canonicalized(self):
        K = build_complex([[2, 0, 1]])
        assert Simplex((0, 1, 2)) in K


class TestSkeleton:
    def test_vertices_of_tetra_boundary(self, tetra_boundary):
        assert len(skeleton(tetra_boundary, 0)) == 4

    def test_one_skeleton_is_k4(self, tetra_boundary):
        sk = skeleton(tetra_boundary, 1)
        assert len(sk.simplices_of_dim(0)) == 4
        assert len(sk.simplices_of_dim(1)) == 6

    def test_full_skeleton_is_identity(self, tetra_boundary):
        assert skeleton(tetra_boundary, tetra_boundary.dim).simplices == tetra_boundary.simplices


class TestStar:
    def test_star_of_vertex_in_circle(self, triangle_boundary):
        S = OpenSimplexSet.of(triangle_boundary, [Simplex((0,))])
        st_ = star(S, triangle_boundary)
        assert st_.members == frozenset(
            {Simplex((0,)), Simplex((0, 1)), Simplex((0, 2))}
        )

    def test_star_of_empty(self, tetra_boundary):
        S = OpenSimplexSet.of(tetra_boundary, [])
        assert not star(S, tetra_boundary).members

    def test_star_of_all_vertices_is_everything(self, tetra_boundary):
        verts = [s for s in tetra_boundary.simplices if s.dim == 0]
        S = OpenSimplexSet.of(tetra_boundary, verts)
        assert star(S, tetra_boundary).members == tetra_boundary.simplices

    def test_star_complement_is_face_closed(self, wedge_spheres):
        rng = random.Random(3)
        simplices = list(wedge_spheres.sorted_simplices)
        for _ in range(10):
            sub = [s for s in simplices if rng.random() < 0.3]
            if not sub:
                continue
            closed = SimplicialComplex.from_simplices(sub)
            S = OpenSimplexSet.of(wedge_spheres, closed.simplices)
            assert star(S, wedge_spheres).complement().is_closed


class TestLink:
    def test_link_of_vertex_in_tetra_boundary(self, tetra_boundary):
        lk = link(Simplex((0,)), tetra_boundary)
        assert lk.dim == 1
        assert len(lk.simplices_of_dim(1)) == 3
        assert euler(lk) == 0

    def test_link_of_edge_is_two_points(self, tetra_boundary):
        lk = link(Simplex((0, 1)), tetra_boundary)
        assert lk.dim == 0 and len(lk) == 2

    def test_link_of_top_simplex_is_empty(self, tetra_boundary):
        lk = link(Simplex((0, 1, 2)), tetra_boundary)
        assert not lk.simplices

    def test_link_of_absent_simplex_raises(self, tetra_boundary):
        with pytest.raises(NotFoundError):
            link(Simplex((0, 9)), tetra_boundary)

    def test_links_are_face_closed_random(self):
        rng = random.Random(11)
        for _ in range(15):
            K = random_complex(rng)
            for s in K.sorted_simplices:
                link(s, K)  # SimplicialComplex construction asserts closure


class TestBarycentricSubdivision:
    def test_edge_becomes_path(self):
        sd = barycentric_subdivision(build_complex([[0, 1]]))
        assert len(sd.complex.vertices) == 3
        assert len(sd.complex.simplices_of_dim(1)) == 2

    def test_triangle_boundary_becomes_hexagon(self, triangle_boundary):
        sd = barycentric_subdivision(triangle_boundary)
        assert len(sd.complex.vertices) == 6
        assert len(sd.complex.simplices_of_dim(1)) == 6

    def test_vertices_biject_with_simplices(self, tetra_boundary):
        sd = barycentric_subdivision(tetra_boundary)
        assert len(sd.complex.vertices) == len(tetra_boundary)

    @pytest.mark.parametrize("n", [2, 3])
    def test_preserves_euler_and_dimension(self, n):
        K = simplex_boundary_complex(n)
        sd = barycentric_subdivision(K)
        assert euler(sd.complex) == euler(K)
        assert sd.complex.dim == K.dim

    def test_random_preserves_euler(self):
        rng = random.Random(5)
        for _ in range(8):
            K = random_complex(rng, n_vertices=7, n_generators=5, max_dim=2)
            sd = barycentric_subdivision(K)
            assert euler(sd.complex) == euler(K)
            assert sd.complex.dim == K.dim


class TestJoinDecompose:
    def test_vertex_edge_triangle_chain_split_at_zero(self, triangle):
        chain = (Simplex((0,)), Simplex((0, 1)), Simplex((0, 1, 2)))
        low, high = join_decompose(chain, 0)
        assert low == (Simplex((0,)),)
        assert high == (Simplex((0, 1)), Simplex((0, 1, 2)))

    def test_all_above(self):
        chain = (Simplex((0, 1)), Simplex((0, 1, 2)))
        low, high = join_decompose(chain, 0)
        assert low == ()
        assert high == chain

    def test_all_below(self):
        chain = (Simplex((0,)), Simplex((0, 1)))
        low, high = join_decompose(chain, 1)
        assert high == ()
        assert low == chain

    @pytest.mark.parametrize("n", [2, 3])
    def test_bijection_over_subdivision(self, n):
        K = simplex_boundary_complex(n)
        sd = barycentric_subdivision(K)
        for r in range(0, K.dim + 1):
            seen = {}
            for s in sd.complex.sorted_simplices:
                chain = sd.chain_of(s)
                low, high = join_decompose(chain, r)
                assert low + high == chain
                assert all(t.dim <= r for t in low)
                assert all(t.dim > r for t in high)
                assert (low, high) not in seen
                seen[(low, high)] = s
            # every split pair comes from exactly one subdivision simplex
            assert len(seen) == len(sd.complex)


class TestProduct:
    def test_vertex_times_complex_is_isomorphic(self, triangle_boundary):
        pt = build_complex([[99]])
        pr = product_complex(pt, triangle_boundary)
        assert complex_isomorphism(pr.complex, triangle_boundary) is not None

    def test_square_splits_into_two_triangles(self):
        e = build_complex([[0, 1]])
        pr = product_complex(e, e)
        assert len(pr.complex.simplices_of_dim(2)) == 2
        assert euler(pr.complex) == 1

    def test_euler_multiplicativity(self, triangle_boundary):
        e = build_complex([[0, 1]])
        pr = product_complex(triangle_boundary, e)
        assert euler(pr.complex) == euler(triangle_boundary) * euler(e)

    def test_projections_are_simplicial(self, triangle_boundary):
        e = build_complex([[0, 1]])
        pr = product_complex(triangle_boundary, e)
        assert isinstance(pr.projection_left, SimplicialMap)
        assert isinstance(pr.projection_right, SimplicialMap)
        for s in pr.complex.sorted_simplices:
            assert pr.project_left(s) in triangle_boundary.simplices
            assert pr.project_right(s) in e.simplices


class TestSubdivisionPrism:
    def test_prism_over_edge(self):
        prm = subdivision_prism(build_complex([[0, 1]]))
        assert len(prm.complex.simplices_of_dim(2)) == 3
        assert euler(prm.complex) == 1

    def test_bottom_is_base_and_top_is_subdivision(self, triangle_boundary):
        prm = subdivision_prism(triangle_boundary)
        assert complex_isomorphism(prm.bottom, triangle_boundary) is not None
        assert complex_isomorphism(prm.top, barycentric_subdivision(triangle_boundary).complex) is not None

    def test_prism_euler_matches_base(self, triangle_boundary):
        prm = subdivision_prism(triangle_boundary)
        assert euler(prm.complex) == euler(triangle_boundary)


@st.composite
def complexes(draw):
    n_gens = draw(st.integers(min_value=1, max_value=6))
    gens = []
    for _ in range(n_gens):
        size = draw(st.integers(min_value=1, max_value=4))
        verts = draw(
            st.lists(
                st.integers(min_value=0, max_value=9),
                min_size=size,
                max_size=size,
                unique=True,
            )
        )
        gens.append(verts)
    return build_complex(gens)


class TestInvariants:
    @settings(max_examples=40, deadline=None)
    @given(complexes())
    def test_every_construction_is_face_closed(self, K):
        for s in K.simplices:
            for f in s.facets():
                assert f in K.simplices

    @settings(max_examples=30, deadline=None)
    @given(complexes())
    def test_links_face_closed(self, K):
        for s in sorted(K.simplices, key=lambda t: t.sort_key)[:20]:
            link(s, K)

    @settings(max_examples=20, deadline=None)
    @given(complexes())
    def test_subdivision_preserves_invariants(self, K):
        sd = barycentric_subdivision(K)
        assert euler(sd.complex) == euler(K)
        assert sd.complex.dim == K.dim
