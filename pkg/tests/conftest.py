import itertools
import random
from pathlib import Path

import numpy as np
import pytest

from concurrence_join.oracles import random_pair
from concurrence_join.simplicial import SimplicialComplex, boundary_of_simplex, full_simplex, tag

DATA = Path(__file__).parent / "data"


# -- dense reference implementation, kept deliberately naive --------------------
def dense_rank_gf2(A: np.ndarray) -> int:
    """Row-echelon rank over Z/2 of a dense 0/1 array."""
    A = (np.array(A, dtype=np.uint8) % 2).copy()
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if A[i, c]), None)
        if pivot is None:
            continue
        A[[r, pivot]] = A[[pivot, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
        if r == rows:
            break
    return r


def brute_simplices(facets):
    """Every non-empty subset of every facet, by dimension."""
    out = {}
    for f in facets:
        for k in range(1, len(f) + 1):
            for s in itertools.combinations(sorted(f), k):
                out.setdefault(k - 1, set()).add(s)
    return {d: sorted(v) for d, v in out.items()}


def dense_betti(X: SimplicialComplex) -> tuple:
    by_dim = brute_simplices(X.facets)
    if not by_dim:
        return ()
    top = max(by_dim)
    ranks = [0] * (top + 2)
    for d in range(1, top + 1):
        rows, cols = by_dim[d - 1], by_dim[d]
        idx = {s: i for i, s in enumerate(rows)}
        A = np.zeros((len(rows), len(cols)), dtype=np.uint8)
        for j, s in enumerate(cols):
            for i in range(len(s)):
                A[idx[s[:i] + s[i + 1:]], j] = 1
        ranks[d] = dense_rank_gf2(A)
    return tuple(len(by_dim[d]) - ranks[d] - ranks[d + 1] for d in range(top + 1))


# -- complexes -------------------------------------------------------------------
@pytest.fixture
def hollow_triangle():
    return boundary_of_simplex("abc")


@pytest.fixture
def s3_join():
    h = boundary_of_simplex("abc")
    from concurrence_join.simplicial import join

    return join(tag(h, "a"), tag(h, "b"))


def corpus_pairs(n=200, max_vertices=6, seed=12345):
    rng = random.Random(seed)
    return [random_pair(rng, max_vertices, 4) for _ in range(n)]


def named_complexes():
    """Small hand-picked complexes with known homology."""
    return {
        "point": full_simplex(["a"]),
        "two_points": SimplicialComplex([["a"], ["b"]]),
        "edge": full_simplex("ab"),
        "hollow_triangle": boundary_of_simplex("abc"),
        "full_triangle": full_simplex("abc"),
        "hollow_tetrahedron": boundary_of_simplex("abcd"),
        "figure_eight": SimplicialComplex(["ab", "bc", "ca", "cd", "de", "ec"]),
        "bowtie": SimplicialComplex(["abc", "cde"]),
    }
