"""Seeded generators of binary datasets for two groups of variables.

Rows are i.i.d. Each draw takes one ``random.Random(seed).random()``
value and maps it through the cumulative distribution of the patterns
(inverse-CDF, patterns in the order given). Python guarantees
``random()`` sequences for a given integer seed across platforms and
versions, so datasets are reproducible byte for byte.
"""
from __future__ import annotations

import bisect
import itertools
import json
import random
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .concurrence import BinaryDataset

PROB_TOL = 1e-9


class SpecError(ValueError):
    pass


def _bits(pattern) -> tuple[int, ...]:
    if isinstance(pattern, str):
        if set(pattern) - {"0", "1"}:
            raise SpecError(f"pattern {pattern!r} is not a 0/1 string")
        return tuple(int(c) for c in pattern)
    out = tuple(int(x) for x in pattern)
    if set(out) - {0, 1}:
        raise SpecError(f"pattern {pattern!r} has non-binary entries")
    return out


def bits_string(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in bits)


class _Sampler:
    def __init__(self, probs: Sequence[float]):
        self.cdf = list(itertools.accumulate(probs))

    def draw(self, rng: random.Random) -> int:
        u = rng.random() * self.cdf[-1]
        return min(bisect.bisect_right(self.cdf, u), len(self.cdf) - 1)


@dataclass(frozen=True)
class GroupSpec:
    """A distribution over support patterns of one group of variables."""

    names: tuple[str, ...]
    patterns: tuple[tuple[tuple[int, ...], float], ...]

    def __post_init__(self):
        names = tuple(self.names)
        if not names or len(set(names)) != len(names):
            raise SpecError("group names must be non-empty and distinct")
        pats = tuple((_bits(b), float(p)) for b, p in self.patterns)
        if not pats:
            raise SpecError("a group needs at least one pattern")
        for b, p in pats:
            if len(b) != len(names):
                raise SpecError(f"pattern {bits_string(b)} has length {len(b)}, expected {len(names)}")
            if not p > 0:
                raise SpecError(f"pattern {bits_string(b)} has non-positive probability {p}")
        if len({b for b, _ in pats}) != len(pats):
            raise SpecError("patterns must be distinct")
        total = sum(p for _, p in pats)
        if abs(total - 1.0) > PROB_TOL:
            raise SpecError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "patterns", pats)

    def probability(self, bits) -> float:
        b = _bits(bits)
        return next((p for q, p in self.patterns if q == b), 0.0)

    def to_json_dict(self) -> dict:
        return {
            "names": list(self.names),
            "patterns": [{"bits": bits_string(b), "p": p} for b, p in self.patterns],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "GroupSpec":
        try:
            return cls(tuple(obj["names"]), tuple((e["bits"], e["p"]) for e in obj["patterns"]))
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed group spec: {exc!r}") from exc


@dataclass(frozen=True)
class JointSpec:
    """Two groups plus, optionally, an explicit joint law over pattern pairs.

    Without ``joint`` the groups are independent.
    """

    group_a: GroupSpec
    group_b: GroupSpec
    joint: tuple[tuple[tuple[int, ...], tuple[int, ...], float], ...] | None = None

    def __post_init__(self):
        shared = set(self.group_a.names) & set(self.group_b.names)
        if shared:
            raise SpecError(f"groups share variables {sorted(shared)}")
        if self.joint is None:
            return
        joint = tuple((_bits(a), _bits(b), float(p)) for a, b, p in self.joint)
        if not joint:
            raise SpecError("explicit joint distribution is empty")
        if len({(a, b) for a, b, _ in joint}) != len(joint):
            raise SpecError("joint lists a pattern pair twice")
        for a, b, p in joint:
            if not p > 0:
                raise SpecError(f"joint pair ({bits_string(a)}, {bits_string(b)}) has non-positive probability")
        for side, spec, idx in (("A", self.group_a, 0), ("B", self.group_b, 1)):
            marg: dict[tuple[int, ...], float] = {}
            for entry in joint:
                marg[entry[idx]] = marg.get(entry[idx], 0.0) + entry[2]
            want = dict(spec.patterns)
            for bits in sorted(set(marg) | set(want)):
                if abs(marg.get(bits, 0.0) - want.get(bits, 0.0)) > PROB_TOL:
                    raise SpecError(
                        f"joint marginal mismatch for group {side} pattern {bits_string(bits)}: "
                        f"joint gives {marg.get(bits, 0.0):.12g}, group spec gives {want.get(bits, 0.0):.12g}"
                    )
        object.__setattr__(self, "joint", joint)

    @property
    def names(self) -> tuple[str, ...]:
        return self.group_a.names + self.group_b.names

    def to_json_dict(self) -> dict:
        out = {"groupA": self.group_a.to_json_dict(), "groupB": self.group_b.to_json_dict()}
        if self.joint is not None:
            out["joint"] = [{"a": bits_string(a), "b": bits_string(b), "p": p} for a, b, p in self.joint]
        return out

    @classmethod
    def from_json_dict(cls, obj: dict) -> "JointSpec":
        if not isinstance(obj, dict) or "groupA" not in obj or "groupB" not in obj:
            raise SpecError("spec needs 'groupA' and 'groupB'")
        joint = None
        if obj.get("joint") is not None:
            try:
                joint = tuple((e["a"], e["b"], e["p"]) for e in obj["joint"])
            except (KeyError, TypeError) as exc:
                raise SpecError(f"malformed joint entry: {exc!r}") from exc
        return cls(GroupSpec.from_json_dict(obj["groupA"]), GroupSpec.from_json_dict(obj["groupB"]), joint)


def load_spec(text: str) -> JointSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec is not valid JSON: {exc}") from exc
    return JointSpec.from_json_dict(obj)


def cycle_pattern_spec(k: int, names: Sequence[str]) -> GroupSpec:
    """Uniform law on the ``k`` patterns that omit exactly one variable.

    Sampled exhaustively these give the boundary of a ``(k-1)``-simplex,
    a ``(k-2)``-sphere.
    """
    if k < 3:
        raise SpecError("k >= 3 required: below that there is no cycle")
    if len(names) != k:
        raise SpecError(f"need {k} names, got {len(names)}")
    # omitted variable walks from last to first: k=3 gives 110, 101, 011
    pats = [tuple(0 if i == j else 1 for i in range(k)) for j in reversed(range(k))]
    return GroupSpec(tuple(names), tuple((p, 1.0 / k) for p in pats))


def perfectly_coupled(a: GroupSpec, b: GroupSpec) -> JointSpec:
    """Pair the ``i``-th pattern of ``a`` with the ``i``-th of ``b``."""
    if [p for _, p in a.patterns] != [p for _, p in b.patterns]:
        raise SpecError("perfect coupling needs identical pattern probabilities")
    joint = tuple((pa, pb, p) for (pa, p), (pb, _) in zip(a.patterns, b.patterns))
    return JointSpec(a, b, joint)


def independent_joint(a: GroupSpec, b: GroupSpec) -> JointSpec:
    """The product law written out as an explicit joint."""
    return JointSpec(a, b, tuple((pa, pb, x * y) for pa, x in a.patterns for pb, y in b.patterns))


def _dataset(names, rows) -> BinaryDataset:
    return BinaryDataset(tuple(names), np.array(rows, dtype=np.uint8).reshape(len(rows), len(names)))


def sample_independent(A: GroupSpec, B: GroupSpec, T: int, seed: int) -> BinaryDataset:
    """``T`` rows, each an A-pattern drawn then a B-pattern drawn from one stream."""
    if T < 1:
        raise SpecError("T >= 1 required")
    JointSpec(A, B)  # name-disjointness check
    rng = random.Random(seed)
    sa, sb = _Sampler([p for _, p in A.patterns]), _Sampler([p for _, p in B.patterns])
    rows = []
    for _ in range(T):
        a = A.patterns[sa.draw(rng)][0]
        b = B.patterns[sb.draw(rng)][0]
        rows.append(a + b)
    return _dataset(A.names + B.names, rows)


def sample_coupled(J: JointSpec, T: int, seed: int) -> BinaryDataset:
    """``T`` rows drawn from the explicit joint law of ``J``."""
    if J.joint is None:
        raise SpecError("sample_coupled needs an explicit joint distribution")
    if T < 1:
        raise SpecError("T >= 1 required")
    rng = random.Random(seed)
    s = _Sampler([p for _, _, p in J.joint])
    rows = []
    for _ in range(T):
        a, b, _ = J.joint[s.draw(rng)]
        rows.append(a + b)
    return _dataset(J.names, rows)


def sample(J: JointSpec, T: int, seed: int) -> BinaryDataset:
    if J.joint is None:
        return sample_independent(J.group_a, J.group_b, T, seed)
    return sample_coupled(J, T, seed)


def exhaustive_dataset(A: GroupSpec, B: GroupSpec, joint: Sequence[tuple] | None = None) -> BinaryDataset:
    """One row per pattern pair (all pairs, or those listed in ``joint``)."""
    if joint is None:
        rows = [a + b for a, _ in A.patterns for b, _ in B.patterns]
    else:
        rows = [_bits(e[0]) + _bits(e[1]) for e in joint]
    return _dataset(A.names + B.names, rows)
