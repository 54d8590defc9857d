"""Homological identities for joins and products, checked on random complexes.

For non-empty ``K`` and ``L`` over Z/2:

* join formula: ``b~_{D+1}(K * L) = sum_{p+q=D} b~_p(K) b~_q(L)``
* field Kunneth: ``b_D(K x L) = sum_{p+q=D} b_p(K) b_q(L)``
* split sequence: ``b~_{p+1}(K * L) = b~_p(K x L) - b~_p(K) - b~_p(L)``
* injectivity: ``b_{p+1}(K * L) <= b_p(K x L)``
* cone vanishing: ``H(K) -> H(K * L)`` has rank 1 in dimension 0 and 0 above.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .homology import ContainmentError, betti, inclusion_rank
from .pipeline import kunneth_join_prediction, kunneth_product_prediction
from .simplicial import SimplicialComplex, join, product_complex


def random_complex(rng: random.Random, n_vertices: int, namespace: str, max_facet_size: int = 3) -> SimplicialComplex:
    """Random complex on ``(namespace, 0..n_vertices-1)``.

    One of three shapes, chosen uniformly: a random graph, a random subset
    of the codimension-one faces of the full simplex (often a sphere), or
    the closure of random simplices with sizes up to ``max_facet_size``.
    All vertices are present.
    """
    n = n_vertices
    verts = [[v] for v in range(n)]
    mode = rng.randrange(3)
    if mode == 0:
        facets = [list(e) for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
    elif mode == 1 and 3 <= n <= max_facet_size + 1:
        facets = [list(f) for f in itertools.combinations(range(n), n - 1) if rng.random() < 0.8]
    else:
        sizes = [k for k in (1, 2, 2, 2, 3, 3, 4) if k <= min(max_facet_size, n)]
        facets = [rng.sample(range(n), rng.choice(sizes)) for _ in range(rng.randint(1, 2 * n))]
    return SimplicialComplex([(namespace, v) for v in f] for f in facets + verts)


def random_pair(rng: random.Random, max_vertices: int, max_facet_size: int = 3):
    K = random_complex(rng, rng.randint(1, max_vertices), "a", max_facet_size)
    L = random_complex(rng, rng.randint(1, max_vertices), "b", max_facet_size)
    return K, L


def drop_one_facet(X: SimplicialComplex) -> SimplicialComplex:
    """Negative control: remove the lexicographically first facet."""
    victim = min(X.facets)
    return SimplicialComplex(f for f in X.facets if f != victim)


def check_pair(K: SimplicialComplex, L: SimplicialComplex, *, mutate: bool = False) -> list[str]:
    """Return a description of every identity that fails for ``(K, L)``."""
    W = join(K, L)
    if mutate:
        W = drop_one_facet(W)
    if W.is_empty:
        return ["join is empty"]
    P = product_complex(K, L)
    bK, bL, bW, bP = betti(K), betti(L), betti(W), betti(P)
    rK, rL, rW, rP = (b.as_reduced() for b in (bK, bL, bW, bP))
    bad = []

    pred = kunneth_join_prediction(bK, bL)
    if rW != pred:
        bad.append(f"join formula: reduced betti(join)={rW.trimmed()} predicted {pred.trimmed()}")
    ppred = kunneth_product_prediction(bK, bL)
    if bP != ppred:
        bad.append(f"kunneth: betti(product)={bP.trimmed()} predicted {ppred.trimmed()}")

    top = max(len(bW), len(bP)) + 1
    for p in range(top):
        lhs = rW[p + 1]
        rhs = rP[p] - rK[p] - rL[p]
        if lhs != rhs:
            bad.append(f"split sequence at p={p}: b~(join)_{p + 1}={lhs} but b~(prod)-b~(K)-b~(L)={rhs}")
        if bW[p + 1] > bP[p]:
            bad.append(f"injectivity at p={p}: b(join)_{p + 1}={bW[p + 1]} > b(prod)_{p}={bP[p]}")

    for name, X in (("K", K), ("L", L)):
        try:
            ranks = inclusion_rank(X, W).ranks
        except ContainmentError as exc:
            bad.append(f"cone vanishing for {name}: {exc}")
            continue
        if (ranks[:1] != (1,)) or any(ranks[1:]):
            bad.append(f"cone vanishing for {name}: inclusion ranks {ranks}")
    return bad


@dataclass
class OracleFailure:
    trial: int
    K: SimplicialComplex
    L: SimplicialComplex
    problems: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {"trial": self.trial, "K": self.K.to_json_dict(), "L": self.L.to_json_dict(), "problems": self.problems},
            sort_keys=True,
        )


def run_oracle(
    trials: int, max_vertices: int, seed: int = 0, *, mutate: bool = False, max_facet_size: int = 3
) -> list[OracleFailure]:
    """Check every identity on ``trials`` random pairs; return the failures."""
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        K, L = random_pair(rng, max_vertices, max_facet_size)
        problems = check_pair(K, L, mutate=mutate)
        if problems:
            failures.append(OracleFailure(t, K, L, problems))
    return failures
