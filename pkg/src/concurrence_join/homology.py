"""Homology with Z/2 coefficients: boundary matrices, Betti numbers,
persistence of filtered complexes and ranks of inclusion-induced maps.

Columns are reduced as Python ints used as bitsets (bit ``i`` set means
row ``i`` has a one), so column addition is a single XOR and the lowest
one is ``bit_length() - 1``.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .simplicial import Simplex, SimplicialComplex, faces, vertex_label


class FiltrationError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


# -- matrices -----------------------------------------------------------------
@dataclass(frozen=True)
class GF2Matrix:
    """Sparse matrix over Z/2; each column is a strictly increasing list of row indices."""

    columns: tuple[tuple[int, ...], ...]
    n_rows: int

    def __post_init__(self):
        for j, col in enumerate(self.columns):
            if any(b <= a for a, b in zip(col, col[1:])):
                raise ValueError(f"column {j} is not strictly increasing")
            if col and (col[0] < 0 or col[-1] >= self.n_rows):
                raise ValueError(f"column {j} has a row index out of range")

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "GF2Matrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        cols = tuple(tuple(i for i in range(n_rows) if rows[i][j] % 2) for j in range(n_cols))
        return cls(cols, n_rows)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(tuple((i,) for i in range(n)), n)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for i in col:
                out[i][j] = 1
        return out

    def bit_columns(self) -> list[int]:
        return [_bits(col) for col in self.columns]

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        mine = self.bit_columns()
        cols = []
        for col in other.columns:
            acc = 0
            for k in col:
                acc ^= mine[k]
            cols.append(_indices(acc))
        return GF2Matrix(tuple(cols), self.n_rows)

    def is_zero(self) -> bool:
        return not any(self.columns)


def _bits(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def _indices(x: int) -> tuple[int, ...]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return tuple(out)


def _rank_of_bit_columns(cols: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for c in cols:
        while c:
            top = c.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = c
                rank += 1
                break
            c ^= p
    return rank


def gf2_rank(matrix: GF2Matrix) -> int:
    """Rank over Z/2 by column elimination on the lowest one."""
    return _rank_of_bit_columns(matrix.bit_columns())


def boundary_matrix(X: SimplicialComplex, d: int) -> GF2Matrix:
    """Matrix of the boundary map from ``d``-simplices to ``(d-1)``-simplices.

    Rows and columns follow the lexicographic order of
    :meth:`SimplicialComplex.simplices_of_dim`.
    """
    if d < 0:
        raise ValueError("dimension must be non-negative")
    cols = X.simplices_of_dim(d)
    if d == 0:
        return GF2Matrix(tuple(() for _ in cols), 0)
    rows = X.simplices_of_dim(d - 1)
    index = {s: i for i, s in enumerate(rows)}
    return GF2Matrix(tuple(tuple(sorted(index[f] for f in faces(s))) for s in cols), len(rows))


# -- Betti numbers --------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class BettiVector:
    """Betti numbers indexed by dimension.

    Comparison ignores trailing zeros, so ``(1, 0, 0)`` equals ``(1,)``.
    ``reduced`` records whether entry 0 is the reduced rank.
    """

    values: tuple[int, ...]
    reduced: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __getitem__(self, d: int) -> int:
        if d < 0:
            raise IndexError("negative dimension")
        return self.values[d] if d < len(self.values) else 0

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def trimmed(self) -> tuple[int, ...]:
        v = list(self.values)
        while v and v[-1] == 0:
            v.pop()
        return tuple(v)

    def __eq__(self, other) -> bool:
        if isinstance(other, BettiVector):
            return self.reduced == other.reduced and self.trimmed() == other.trimmed()
        if isinstance(other, (tuple, list)):
            return self.trimmed() == BettiVector(tuple(other)).trimmed()
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.trimmed(), self.reduced))

    def as_reduced(self) -> "BettiVector":
        if self.reduced:
            return self
        if not self.values or self.values[0] < 1:
            raise ValueError("reduced Betti numbers need a non-empty complex")
        return BettiVector((self.values[0] - 1,) + self.values[1:], reduced=True)

    def as_ordinary(self) -> "BettiVector":
        """Inverse of :meth:`as_reduced`; assumes a non-empty complex."""
        if not self.reduced:
            return self
        vals = self.values or (0,)
        return BettiVector((vals[0] + 1,) + vals[1:], reduced=False)

    def euler(self) -> int:
        return sum((-1) ** d * b for d, b in enumerate(self.as_ordinary().values))

    def __repr__(self) -> str:
        tag = ", reduced" if self.reduced else ""
        return f"BettiVector({self.values}{tag})"


def boundary_ranks(X: SimplicialComplex) -> list[int]:
    """``ranks[d]`` is the rank of the boundary map out of dimension ``d``."""
    return [0] + [gf2_rank(boundary_matrix(X, d)) for d in range(1, X.dim + 1)]


def betti(X: SimplicialComplex, reduced: bool = False) -> BettiVector:
    if X.is_empty:
        if reduced:
            raise ValueError("reduced homology of the empty complex is not defined here")
        return BettiVector(())
    ranks = boundary_ranks(X) + [0]
    counts = X.f_vector()
    vals = tuple(counts[d] - ranks[d] - ranks[d + 1] for d in range(len(counts)))
    out = BettiVector(vals)
    return out.as_reduced() if reduced else out


# -- persistence ------------------------------------------------------------------
def _order_key(item):
    s, level = item
    return (level, len(s), s)


class FiltrationOrder:
    """Simplices with levels, sorted by ``(level, dimension, vertices)``.

    Construction checks that every face is present and comes first.
    """

    def __init__(self, entries: Iterable[tuple[Simplex, float]]):
        items = [(tuple(s), lv) for s, lv in entries]
        items.sort(key=_order_key)
        self.simplices: list[Simplex] = [s for s, _ in items]
        self.levels: list = [lv for _, lv in items]
        self.index: dict[Simplex, int] = {}
        for i, s in enumerate(self.simplices):
            if s in self.index:
                raise FiltrationError(f"simplex {s!r} listed twice")
            self.index[s] = i
        for i, s in enumerate(self.simplices):
            for f in faces(s):
                j = self.index.get(f)
                if j is None:
                    raise FiltrationError(f"face {f!r} of {s!r} is missing from the filtration")
                if j > i:
                    raise FiltrationError(
                        f"face {f!r} (level {self.levels[j]}) enters after {s!r} (level {self.levels[i]})"
                    )

    def __len__(self) -> int:
        return len(self.simplices)

    @classmethod
    def from_levels(cls, levels: Mapping[Simplex, float]) -> "FiltrationOrder":
        return cls(levels.items())

    @classmethod
    def single_level(cls, X: SimplicialComplex, level=1) -> "FiltrationOrder":
        return cls((s, level) for s in X.simplices)

    @classmethod
    def two_level(cls, M: SimplicialComplex, W: SimplicialComplex) -> "FiltrationOrder":
        """``M`` at level 1, the simplices of ``W`` not in ``M`` at level 2."""
        check_containment(M, W)
        inner = M.simplices
        return cls((s, 1 if s in inner else 2) for s in W.simplices)


@dataclass(frozen=True)
class Interval:
    dim: int
    birth: float
    death: float
    representative: tuple[Simplex, ...] | None = field(default=None, compare=False)

    @property
    def essential(self) -> bool:
        return math.isinf(self.death)

    def to_json_dict(self, with_representative: bool = True) -> dict:
        out = {
            "dim": self.dim,
            "birth": self.birth,
            "death": "inf" if self.essential else self.death,
        }
        if with_representative and self.representative is not None:
            out["representative"] = [[vertex_label(v) for v in s] for s in self.representative]
        return out


def intervals_to_json(intervals: Iterable[Interval], with_representatives: bool = True) -> list[dict]:
    return [iv.to_json_dict(with_representatives) for iv in intervals]


def persistence(
    order: FiltrationOrder,
    *,
    representatives: bool = False,
    include_zero_length: bool = False,
) -> list[Interval]:
    """Standard column reduction of the filtered boundary matrix.

    Returns one interval per birth-death pairing (zero-length ones only on
    request) plus the essential classes, which die at ``inf``. With
    ``representatives`` each interval carries a Z/2 cycle present at its
    birth: the reduced column for finite intervals, the accumulated column
    operations for essential ones.
    """
    sims, levels, index = order.simplices, order.levels, order.index
    n = len(sims)
    R = [_bits(index[f] for f in faces(s)) for s in sims]
    V = [1 << j for j in range(n)] if representatives else None
    low_owner: dict[int, int] = {}
    for j in range(n):
        c = R[j]
        while c:
            low = c.bit_length() - 1
            k = low_owner.get(low)
            if k is None:
                break
            c ^= R[k]
            if V is not None:
                V[j] ^= V[k]
        R[j] = c
        if c:
            low_owner[c.bit_length() - 1] = j

    def rep(bits: int):
        if not representatives:
            return None
        return tuple(sims[i] for i in _indices(bits))

    out = []
    for i in range(n):
        if R[i]:
            continue  # i kills a class
        j = low_owner.get(i)
        if j is None:
            out.append(Interval(len(sims[i]) - 1, levels[i], math.inf, rep(V[i]) if V else None))
        elif include_zero_length or levels[j] != levels[i]:
            out.append(Interval(len(sims[i]) - 1, levels[i], levels[j], rep(R[j])))
    out.sort(key=lambda iv: (iv.dim, iv.birth, iv.death))
    return out


# -- inclusion maps ------------------------------------------------------------
def check_containment(M: SimplicialComplex, W: SimplicialComplex) -> None:
    for f in sorted(M.facets):
        if f not in W:
            raise ContainmentError(f"simplex {f!r} of the subcomplex is not in the ambient complex")


@dataclass(frozen=True)
class InclusionRanks:
    """Per-dimension rank of ``H_d(M) -> H_d(W)`` and the intervals realising it."""

    ranks: tuple[int, ...]
    intervals: tuple[Interval, ...]

    def __getitem__(self, d: int) -> int:
        return self.ranks[d] if 0 <= d < len(self.ranks) else 0


def inclusion_rank(M: SimplicialComplex, W: SimplicialComplex, *, representatives: bool = False) -> InclusionRanks:
    """Rank of the map on homology induced by ``M`` inside ``W``.

    Counted as the intervals of the two-level filtration (``M`` at 1,
    the rest of ``W`` at 2) that are born at 1 and never die.
    """
    order = FiltrationOrder.two_level(M, W)
    survivors = tuple(
        iv for iv in persistence(order, representatives=representatives) if iv.birth == 1 and iv.essential
    )
    ranks = [0] * (W.dim + 1)
    for iv in survivors:
        ranks[iv.dim] += 1
    return InclusionRanks(tuple(ranks), survivors)
