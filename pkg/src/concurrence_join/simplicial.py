"""Abstract finite simplicial complexes.

A simplex is a strictly sorted tuple of vertices. Vertices may be any
hashable, mutually comparable values: variable names (``str``) in the data
pipeline, ``(namespace, id)`` tuples when two abstract complexes must be
joined, and ``(u, v)`` pairs for product triangulations.

Complexes are immutable. They are stored by their facets; the full
downward closure is enumerated on demand and cached, guarded by a simplex
budget since joins and products grow multiplicatively.
"""
from __future__ import annotations

import itertools
import json
from collections.abc import Hashable, Iterable, Sequence
from functools import cached_property
from math import comb

DEFAULT_SIMPLEX_BUDGET = 2**20

Vertex = Hashable
Simplex = tuple


class MalformedSimplexError(ValueError):
    pass


class DisjointnessError(ValueError):
    pass


class SimplexBudgetError(RuntimeError):
    pass


def make_simplex(vertices: Iterable[Vertex]) -> Simplex:
    """Sort ``vertices`` into a simplex, rejecting repeats and emptiness."""
    vs = list(vertices)
    try:
        s = tuple(sorted(vs))
    except TypeError:
        raise MalformedSimplexError(f"vertices of {vs!r} are not mutually comparable; tag complexes before joining") from None
    if len(set(s)) != len(vs):
        raise MalformedSimplexError(f"repeated vertex in simplex {vs!r}")
    if not s:
        raise MalformedSimplexError("the empty simplex cannot be stored in a complex")
    return s


def dimension(simplex: Simplex) -> int:
    return len(simplex) - 1


def faces(simplex: Simplex) -> list[Simplex]:
    """Codimension-one faces, in the order of the omitted vertex."""
    if len(simplex) == 1:
        return []
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))]


def _maximal(simplices: Iterable[Simplex]) -> frozenset[Simplex]:
    # longest first, so a candidate only needs checking against kept ones
    cands = sorted(set(simplices), key=len, reverse=True)
    kept: list[frozenset] = []
    out = []
    for s in cands:
        fs = frozenset(s)
        if any(fs <= k for k in kept if len(k) > len(fs)):
            continue
        kept.append(fs)
        out.append(s)
    return frozenset(out)


class SimplicialComplex:
    """Immutable abstract simplicial complex given by its facets.

    ``simplices`` is the full downward closure (cached). Raises
    :class:`SimplexBudgetError` if that closure would exceed ``budget``.
    """

    def __init__(self, facets: Iterable[Iterable[Vertex]] = (), *, budget: int = DEFAULT_SIMPLEX_BUDGET):
        self.facets = _maximal(make_simplex(f) for f in facets)
        self.budget = budget

    # -- basic views ---------------------------------------------------
    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @property
    def is_empty(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        """Top dimension; -1 for the empty complex."""
        return max((len(f) for f in self.facets), default=0) - 1

    @cached_property
    def simplices(self) -> frozenset[Simplex]:
        bound = sum(2 ** len(f) - 1 for f in self.facets)
        out: set[Simplex] = set()
        for f in sorted(self.facets):
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
            if bound > self.budget and len(out) > self.budget:
                raise SimplexBudgetError(
                    f"complex has more than {self.budget} simplices; raise the budget to enumerate it"
                )
        return frozenset(out)

    @cached_property
    def _by_dim(self) -> dict[int, list[Simplex]]:
        out: dict[int, list[Simplex]] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        for v in out.values():
            v.sort()
        return out

    def simplices_of_dim(self, d: int) -> list[Simplex]:
        """Sorted (lexicographic) list of ``d``-simplices."""
        return list(self._by_dim.get(d, ()))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self._by_dim.get(d, ())) for d in range(self.dim + 1))

    def __contains__(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        fs = set(s)
        return bool(s) and any(fs.issubset(f) for f in self.facets)

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(sorted(self.simplices, key=lambda s: (len(s), s)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        fs = sorted(self.facets, key=lambda s: (-len(s), s))
        return f"SimplicialComplex({[list(f) for f in fs]!r})"

    def issubcomplex(self, other: "SimplicialComplex") -> bool:
        return all(f in other for f in self.facets)

    def relabel(self, mapping) -> "SimplicialComplex":
        """Apply an injective vertex map (callable or dict)."""
        fn = mapping if callable(mapping) else mapping.__getitem__
        return SimplicialComplex(([fn(v) for v in f] for f in self.facets), budget=self.budget)

    # -- interchange -----------------------------------------------------
    def to_json_dict(self) -> dict:
        return {
            "vertices": [vertex_label(v) for v in self.vertices],
            "facets": sorted(sorted(vertex_label(v) for v in f) for f in self.facets),
        }


def vertex_label(v: Vertex) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "(" + ",".join(vertex_label(x) for x in v) + ")"
    return str(v)


def complex_from_json(obj: dict | str) -> tuple[SimplicialComplex, list[str]]:
    """Parse the ``{"vertices": [...], "facets": [[...]]}`` interchange format.

    Returns the complex and a list of notes about normalisation applied
    (non-maximal facets dropped, vertices that only appear in the
    vertex list added as isolated points).
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "facets" not in obj:
        raise MalformedSimplexError("complex JSON needs a 'facets' list")
    raw = obj["facets"]
    if not isinstance(raw, list) or not all(isinstance(f, list) for f in raw):
        raise MalformedSimplexError("'facets' must be a list of lists of vertex names")
    for f in raw:
        if not all(isinstance(v, str) for v in f):
            raise MalformedSimplexError(f"vertex names must be strings: {f!r}")
    gens = [make_simplex(f) for f in raw]
    listed = obj.get("vertices", [])
    covered = {v for f in gens for v in f}
    extra = [v for v in listed if v not in covered]
    gens += [(v,) for v in extra]
    K = SimplicialComplex(gens)
    notes = []
    dropped = len(set(gens)) - len(K.facets)
    if dropped:
        notes.append(f"auto-closed: {dropped} listed simplices are faces of other facets")
    if extra:
        notes.append(f"added {len(extra)} isolated vertices from the vertex list")
    return K, notes


# -- constructions -----------------------------------------------------------
def closure(facets: Iterable[Iterable[Vertex]], *, budget: int = DEFAULT_SIMPLEX_BUDGET) -> SimplicialComplex:
    """Smallest downward-closed complex containing every given simplex."""
    return SimplicialComplex(facets, budget=budget)


def full_simplex(vertices: Iterable[Vertex]) -> SimplicialComplex:
    return SimplicialComplex([list(vertices)])


def boundary_of_simplex(vertices: Iterable[Vertex]) -> SimplicialComplex:
    """The boundary sphere of the simplex on ``vertices`` (needs >= 2)."""
    s = make_simplex(vertices)
    if len(s) < 2:
        raise MalformedSimplexError("a point has no boundary complex")
    return SimplicialComplex(faces(s))


def tag(K: SimplicialComplex, namespace) -> SimplicialComplex:
    """Relabel every vertex ``v`` as ``(namespace, v)``."""
    return K.relabel(lambda v: (namespace, v))


def project(X: SimplicialComplex, S: Iterable[Vertex]) -> SimplicialComplex:
    """Restrict every simplex of ``X`` to the vertex subset ``S``.

    The result may be empty when ``S`` misses every vertex.
    """
    keep = set(S)
    return SimplicialComplex(
        (tuple(v for v in f if v in keep) for f in X.facets if keep.intersection(f)),
        budget=X.budget,
    )


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """All unions of a simplex of ``K`` with a simplex of ``L``, either possibly empty.

    Vertex sets must be disjoint. An empty factor leaves the other factor
    unchanged.
    """
    shared = set(K.vertices) & set(L.vertices)
    if shared:
        raise DisjointnessError(f"join needs disjoint vertex sets; shared: {sorted(shared, key=repr)[:5]!r}")
    budget = max(K.budget, L.budget)
    if K.is_empty or L.is_empty:
        return SimplicialComplex(K.facets | L.facets, budget=budget)
    return SimplicialComplex((s + t for s in K.facets for t in L.facets), budget=budget)


def staircase(sigma: Sequence[Vertex], tau: Sequence[Vertex]) -> list[Simplex]:
    """Top simplices of the staircase triangulation of ``sigma x tau``.

    ``sigma`` and ``tau`` are given in the chosen vertex order; each top
    simplex is a monotone lattice path from ``(sigma[0], tau[0])`` to
    ``(sigma[-1], tau[-1])``.
    """
    a, b = len(sigma) - 1, len(tau) - 1
    out = []
    for right in itertools.combinations(range(a + b), a):
        i = j = 0
        path = [(sigma[0], tau[0])]
        rs = set(right)
        for step in range(a + b):
            if step in rs:
                i += 1
            else:
                j += 1
            path.append((sigma[i], tau[j]))
        out.append(tuple(sorted(path)))
    assert len(out) == comb(a + b, a)
    return out


def product_complex(
    K: SimplicialComplex,
    L: SimplicialComplex,
    order_k: Sequence[Vertex] | None = None,
    order_l: Sequence[Vertex] | None = None,
) -> SimplicialComplex:
    """Staircase triangulation of ``|K| x |L|`` with vertices ``(u, v)``.

    ``order_k``/``order_l`` are total orders on the vertex sets (default:
    ascending). The triangulation depends on them; its homology does not.
    """
    rank_k = _rank_map(K, order_k)
    rank_l = _rank_map(L, order_l)
    budget = max(K.budget, L.budget)
    tops = []
    for s in K.facets:
        ss = sorted(s, key=rank_k.__getitem__)
        for t in L.facets:
            tops.extend(staircase(ss, sorted(t, key=rank_l.__getitem__)))
    return SimplicialComplex(tops, budget=budget)


def _rank_map(K: SimplicialComplex, order) -> dict:
    if order is None:
        return {v: i for i, v in enumerate(K.vertices)}
    rank = {v: i for i, v in enumerate(order)}
    missing = set(K.vertices) - rank.keys()
    if missing or len(rank) != len(order):
        raise ValueError(f"vertex order must be a total order on the vertex set; missing {sorted(missing, key=repr)!r}")
    return rank


def euler_characteristic(X: SimplicialComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(X.f_vector()))
