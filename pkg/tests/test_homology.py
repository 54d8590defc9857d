import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from concurrence_join.homology import (
    BettiVector,
    ContainmentError,
    FiltrationError,
    FiltrationOrder,
    GF2Matrix,
    Interval,
    betti,
    boundary_matrix,
    gf2_rank,
    inclusion_rank,
    intervals_to_json,
    persistence,
)
from concurrence_join.simplicial import (
    SimplicialComplex,
    euler_characteristic,
    full_simplex,
    join,
    tag,
)

from conftest import corpus_pairs, dense_betti, dense_rank_gf2, named_complexes


def bit_matrices(max_rows=8, max_cols=8):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def boundary_of_boundary_is_zero(X):
    for d in range(2, X.dim + 1):
        assert (boundary_matrix(X, d - 1) @ boundary_matrix(X, d)).is_zero()


class TestMatrices:
    def test_identity_rank(self):
        assert gf2_rank(GF2Matrix.identity(3)) == 3

    def test_zero_rank(self):
        assert gf2_rank(GF2Matrix.from_dense([[0, 0], [0, 0]])) == 0

    def test_hollow_triangle_d1(self, hollow_triangle):
        B = boundary_matrix(hollow_triangle, 1)
        assert B.shape == (3, 3)
        assert all(len(c) == 2 for c in B.columns)
        # rows a,b,c ; columns ab,ac,bc -- eliminating leaves two pivots
        assert B.to_dense() == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
        assert gf2_rank(B) == 2

    def test_full_triangle_d2(self):
        B = boundary_matrix(full_simplex("abc"), 2)
        assert B.columns == ((0, 1, 2),)

    def test_dimension_zero(self, hollow_triangle):
        assert boundary_matrix(hollow_triangle, 0).shape == (0, 3)

    def test_rejects_unsorted_column(self):
        with pytest.raises(ValueError):
            GF2Matrix(((2, 1),), 3)
        with pytest.raises(ValueError):
            GF2Matrix(((3,),), 3)

    @given(bit_matrices())
    def test_rank_matches_dense(self, rows):
        assert gf2_rank(GF2Matrix.from_dense(rows)) == dense_rank_gf2(np.array(rows))

    @given(bit_matrices(6, 6), bit_matrices(6, 6))
    def test_matmul_matches_numpy(self, a, b):
        A, B = np.array(a), np.array(b)
        if A.shape[1] != B.shape[0]:
            return
        got = (GF2Matrix.from_dense(a) @ GF2Matrix.from_dense(b)).to_dense()
        assert np.array_equal(np.array(got), (A @ B) % 2)

    def test_dd_zero_on_corpus(self):
        for K, L in corpus_pairs(40):
            boundary_of_boundary_is_zero(join(K, L))
        for X in named_complexes().values():
            boundary_of_boundary_is_zero(X)


class TestBetti:
    def test_hollow_triangle(self, hollow_triangle):
        assert betti(hollow_triangle) == (1, 1)
        assert betti(hollow_triangle, reduced=True) == BettiVector((0, 1), reduced=True)

    def test_s3(self, s3_join):
        assert betti(s3_join) == (1, 0, 0, 1)

    def test_empty_reduced_is_error(self):
        with pytest.raises(ValueError):
            betti(SimplicialComplex(), reduced=True)
        assert betti(SimplicialComplex()) == ()

    @pytest.mark.parametrize(
        "name,expected",
        [
            ("point", (1,)),
            ("two_points", (2,)),
            ("edge", (1, 0)),
            ("full_triangle", (1, 0, 0)),
            ("hollow_tetrahedron", (1, 0, 1)),
            ("figure_eight", (1, 2)),
            ("bowtie", (1, 0, 0)),
        ],
    )
    def test_named(self, name, expected):
        X = named_complexes()[name]
        assert betti(X) == expected
        assert dense_betti(X) == expected

    def test_trailing_zero_equality(self):
        assert BettiVector((1, 0, 0)) == BettiVector((1,))
        assert BettiVector((1,)) != BettiVector((1,), reduced=True)
        assert BettiVector((1, 2))[5] == 0

    def test_matches_dense_and_euler_on_corpus(self):
        for K, L in corpus_pairs(60):
            for X in (K, L, join(K, L)):
                if len(X) > 500:
                    continue
                b = betti(X)
                assert b == dense_betti(X)
                assert b.euler() == euler_characteristic(X)


class TestPersistence:
    def test_cone_fill(self, hollow_triangle):
        levels = {s: 1 for s in hollow_triangle.simplices}
        levels[("a", "b", "c")] = 2
        ivs = persistence(FiltrationOrder.from_levels(levels))
        assert ivs == [Interval(0, 1, math.inf), Interval(1, 1, 2)]

    def test_zero_length_on_request(self, hollow_triangle):
        ivs = persistence(FiltrationOrder.single_level(hollow_triangle), include_zero_length=True)
        assert sorted((iv.dim, iv.death) for iv in ivs) == [(0, 1), (0, 1), (0, math.inf), (1, math.inf)]

    @pytest.mark.parametrize("name", list(named_complexes()))
    def test_single_level_reproduces_betti(self, name):
        X = named_complexes()[name]
        ivs = persistence(FiltrationOrder.single_level(X))
        counts = [0] * (X.dim + 1)
        for iv in ivs:
            assert iv.birth == 1 and iv.essential
            counts[iv.dim] += 1
        assert BettiVector(tuple(counts)) == betti(X)

    def test_s3_missing_tetrahedron(self, s3_join):
        # 8 of 9 tetrahedra at level 1: the 3-sphere minus a facet has no H_3
        last = max(s3_join.facets)
        levels = {s: 1 for s in s3_join.simplices}
        levels[last] = 2
        ivs = persistence(FiltrationOrder.from_levels(levels))
        dim3 = [iv for iv in ivs if iv.dim == 3]
        assert dim3 == [Interval(3, 2, math.inf)]
        assert not [iv for iv in ivs if iv.dim >= 1 and iv.birth == 1]

    def test_invalid_order_names_pair(self):
        with pytest.raises(FiltrationError, match=r"face \('b', 'c'\) of \('a', 'b', 'c'\) is missing"):
            FiltrationOrder([(("a",), 1), (("b",), 1), (("a", "b"), 1), (("a", "b", "c"), 1)])
        with pytest.raises(FiltrationError, match="enters after"):
            FiltrationOrder([(("a",), 2), (("b",), 1), (("a", "b"), 1)])

    def test_representatives_are_cycles(self, s3_join):
        levels = {s: (2 if len(s) == 4 else 1) for s in s3_join.simplices}
        ivs = persistence(FiltrationOrder.from_levels(levels), representatives=True)
        for iv in ivs:
            if iv.dim == 0:
                continue
            counts = {}
            for s in iv.representative:
                assert len(s) == iv.dim + 1
                for i in range(len(s)):
                    f = s[:i] + s[i + 1:]
                    counts[f] = counts.get(f, 0) + 1
            assert all(c % 2 == 0 for c in counts.values())
            assert all(levels[s] <= iv.birth for s in iv.representative)

    def test_interval_json(self):
        iv = Interval(1, 1, math.inf, ((("a", 0), ("b", 1)),))
        assert intervals_to_json([iv]) == [{"dim": 1, "birth": 1, "death": "inf", "representative": [["(a,0)", "(b,1)"]]}]
        assert intervals_to_json([Interval(0, 1, 2)]) == [{"dim": 0, "birth": 1, "death": 2}]


class TestInclusionRank:
    def test_identity(self):
        e = full_simplex("ab")
        assert inclusion_rank(e, e).ranks == (1, 0)

    def test_cone_kills_circle(self, hollow_triangle):
        K = tag(hollow_triangle, "a")
        W = join(K, full_simplex([("b", 0)]))
        r = inclusion_rank(K, W)
        assert r[0] == 1 and r[1] == 0

    def test_s3_identity(self, s3_join):
        r = inclusion_rank(s3_join, s3_join)
        assert r.ranks == (1, 0, 0, 1)

    def test_containment_error(self, hollow_triangle):
        with pytest.raises(ContainmentError, match="'a', 'b', 'c'"):
            inclusion_rank(full_simplex("abc"), hollow_triangle)

    def test_bounded_by_betti(self):
        for K, L in corpus_pairs(60, seed=7):
            W = join(K, L)
            bk, bw = betti(K), betti(W)
            r = inclusion_rank(K, W)
            for d in range(W.dim + 1):
                assert r[d] <= min(bk[d], bw[d])
