"""Binary observations and their frequency-filtered concurrence complexes.

A set of variables spans a simplex of frame ``f`` when at least ``f``
observations have all of them equal to 1. Frames descend: frame ``f + 1``
is a subcomplex of frame ``f``. All-zero observations support no simplex
and are only tallied.
"""
from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .simplicial import Simplex, SimplicialComplex

DEFAULT_CANDIDATE_CAP = 500_000


class DatasetParseError(ValueError):
    pass


class CandidateCapError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class BinaryDataset:
    """``T x n`` 0/1 observations with named columns."""

    names: tuple[str, ...]
    rows: np.ndarray

    def __post_init__(self):
        names = tuple(self.names)
        rows = np.asarray(self.rows)
        if rows.ndim != 2 or rows.shape[1] != len(names):
            raise ValueError(f"rows must be a T x {len(names)} array, got shape {rows.shape}")
        if rows.shape[0] < 1:
            raise ValueError("T >= 1 required")
        if len(set(names)) != len(names):
            dup = sorted(n for n, c in Counter(names).items() if c > 1)
            raise ValueError(f"duplicate variable names: {dup}")
        if not np.isin(rows, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
        rows = rows.astype(np.uint8)
        rows.setflags(write=False)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "rows", rows)

    @property
    def T(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryDataset):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.rows, other.rows)

    def column_sums(self) -> dict[str, int]:
        return dict(zip(self.names, (int(x) for x in self.rows.sum(axis=0))))

    def restrict(self, names: Sequence[str]) -> "BinaryDataset":
        """Keep only the columns ``names``, in that order."""
        pos = {n: i for i, n in enumerate(self.names)}
        missing = [n for n in names if n not in pos]
        if missing:
            raise KeyError(f"unknown variables: {missing}")
        return BinaryDataset(tuple(names), self.rows[:, [pos[n] for n in names]])

    def to_csv(self) -> str:
        lines = [",".join(self.names)]
        lines += [",".join("1" if x else "0" for x in row) for row in self.rows.tolist()]
        return "\n".join(lines) + "\n"


def restrict(D: BinaryDataset, names: Sequence[str]) -> BinaryDataset:
    return D.restrict(names)


def ingest_csv(source) -> BinaryDataset:
    """Read a header of variable names followed by rows of 0/1 cells.

    ``source`` may be a path, ``bytes``, ``str`` contents, or an open file
    (text or binary).
    """
    if isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    elif isinstance(source, os.PathLike):
        with open(source, encoding="utf-8", newline="") as fh:
            text = fh.read()
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    text = text.lstrip("\ufeff")
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetParseError("empty input: header row of variable names required") from None
    names = [h.strip() for h in header]
    if not names or any(not h for h in names):
        raise DatasetParseError("line 1: blank variable name in header")
    seen: dict[str, int] = {}
    for j, h in enumerate(names, start=1):
        if h in seen:
            raise DatasetParseError(f"line 1, column {j}: duplicate variable name {h!r} (first at column {seen[h]})")
        seen[h] = j
    rows = []
    for line_no, raw in enumerate(reader, start=2):
        if not raw or all(not c.strip() for c in raw):
            continue
        if len(raw) != len(names):
            raise DatasetParseError(f"line {line_no}: expected {len(names)} cells, found {len(raw)}")
        row = []
        for j, cell in enumerate(raw, start=1):
            c = cell.strip()
            if c not in ("0", "1"):
                raise DatasetParseError(
                    f"line {line_no}, column {j} ({names[j - 1]}): non-binary cell {cell!r}"
                )
            row.append(c == "1")
        rows.append(row)
    if not rows:
        raise DatasetParseError("no observations: T >= 1 required")
    return BinaryDataset(tuple(names), np.array(rows, dtype=np.uint8))


def support(row: Sequence[int], names: Sequence[str]) -> Simplex | None:
    """Variables equal to 1 in ``row``; ``None`` for an all-zero row."""
    if len(row) != len(names):
        raise ValueError("row length does not match the number of names")
    s = tuple(sorted(n for n, x in zip(names, row) if x))
    return s or None


def pattern_string(simplex: Iterable[str]) -> str:
    return "|".join(sorted(simplex))


@dataclass(frozen=True)
class PatternTable:
    """Observed non-empty supports with multiplicities, plus the all-zero row tally."""

    entries: dict[Simplex, int]
    zero_rows: int

    @property
    def T(self) -> int:
        return sum(self.entries.values()) + self.zero_rows

    def to_json_dict(self) -> dict[str, int]:
        out = {pattern_string(p): c for p, c in sorted(self.entries.items())}
        out[""] = self.zero_rows
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, obj: dict[str, int]) -> "PatternTable":
        zero = int(obj.get("", 0))
        entries = {tuple(sorted(k.split("|"))): int(v) for k, v in obj.items() if k}
        return cls(entries, zero)


def pattern_table(D: BinaryDataset) -> PatternTable:
    counts: Counter = Counter()
    zero = 0
    for row in D.rows.tolist():
        s = support(row, D.names)
        if s is None:
            zero += 1
        else:
            counts[s] += 1
    return PatternTable(dict(counts), zero)


class FilteredConcurrence:
    """The descending frame filtration of a dataset.

    Simplex counts are computed from the pattern table. Frame facets come
    from the intersection closure of the observed patterns: every maximal
    simplex of a frame is the intersection of the patterns containing it.
    ``candidate_cap`` bounds the size of that closure.
    """

    def __init__(self, D: BinaryDataset, *, candidate_cap: int = DEFAULT_CANDIDATE_CAP):
        self.dataset = D
        self.table = pattern_table(D)
        self.candidate_cap = candidate_cap
        self._bit = {name: 1 << i for i, name in enumerate(D.names)}
        self._patterns = [(self._mask(p), c) for p, c in sorted(self.table.entries.items())]

    def _mask(self, simplex: Iterable[str]) -> int:
        m = 0
        for v in simplex:
            m |= self._bit[v]
        return m

    def _simplex(self, mask: int) -> Simplex:
        return tuple(sorted(n for n, b in self._bit.items() if mask & b))

    @property
    def max_frame(self) -> int:
        sums = self.dataset.column_sums().values()
        return max(sums, default=0)

    def count(self, simplex: Iterable[str]) -> int:
        """Number of observations whose support contains ``simplex``."""
        m = self._mask(simplex)
        return sum(c for p, c in self._patterns if p & m == m)

    @cached_property
    def candidates(self) -> dict[int, int]:
        """Intersection closure of the observed patterns, mapped to counts."""
        base = [p for p, _ in self._patterns]
        seen = set(base)
        frontier = list(base)
        while frontier:
            nxt = []
            for x in frontier:
                for p in base:
                    y = x & p
                    if y and y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if len(seen) > self.candidate_cap:
                raise CandidateCapError(
                    f"more than {self.candidate_cap} candidate simplices; raise candidate_cap"
                )
            frontier = nxt
        return {m: sum(c for p, c in self._patterns if p & m == m) for m in seen}

    def frame(self, f: int) -> SimplicialComplex:
        """Complex of simplices contained in at least ``f`` observations.

        Empty when ``f`` exceeds :attr:`max_frame`.
        """
        if f < 1:
            raise ValueError(f"frame must be a positive integer, got {f}")
        masks = [m for m, c in self.candidates.items() if c >= f]
        return SimplicialComplex(self._simplex(m) for m in masks)

    def frames(self) -> dict[int, SimplicialComplex]:
        return {f: self.frame(f) for f in range(1, self.max_frame + 1)}


def concurrence_frame(D: BinaryDataset, f: int) -> SimplicialComplex:
    return FilteredConcurrence(D).frame(f)


def max_frame(D: BinaryDataset) -> int:
    return FilteredConcurrence(D).max_frame
