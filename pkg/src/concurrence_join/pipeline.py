"""Independence analysis for two groups of binary variables.

For each frame ``f`` the concurrence complex ``M`` of the grouped
variables is projected onto each group (``K`` and ``L``), the join
``W = K * L`` is formed, and the rank of ``H(M) -> H(W)`` is computed
from the two-level filtration ``M`` (level 1) inside ``W`` (level 2).
Classes alive at both levels are the signature of independence-like
behaviour; by the join formula they can only sit in dimension
``p + q + 1`` for classes of ``K`` in dimension ``p`` and of ``L`` in ``q``.
"""
from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .concurrence import BinaryDataset, FilteredConcurrence
from .homology import BettiVector, Interval, betti, inclusion_rank, intervals_to_json
from .simplicial import join, project


@dataclass(frozen=True)
class Grouping:
    group_a: tuple[str, ...]
    group_b: tuple[str, ...]

    def __post_init__(self):
        a, b = tuple(self.group_a), tuple(self.group_b)
        if not a or not b:
            raise ValueError("both groups must be non-empty")
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            raise ValueError("a group lists a variable twice")
        shared = sorted(set(a) & set(b))
        if shared:
            raise ValueError(f"groups must be disjoint; shared variables: {shared}")
        object.__setattr__(self, "group_a", a)
        object.__setattr__(self, "group_b", b)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.group_a + self.group_b

    def to_json_dict(self) -> dict:
        return {"group_a": list(self.group_a), "group_b": list(self.group_b)}


# -- Kunneth-type predictions ---------------------------------------------------
def kunneth_join_prediction(bK: BettiVector, bL: BettiVector) -> BettiVector:
    """Reduced Betti numbers of ``K * L`` over Z/2 from those of the factors.

    ``b~_{D+1}(K * L) = sum_{p+q=D} b~_p(K) b~_q(L)``; ``b~_0`` is 0 since
    a join of non-empty complexes is connected. Inputs may be ordinary or
    reduced.
    """
    rk, rl = bK.as_reduced().values, bL.as_reduced().values
    out = [0] * (len(rk) + len(rl))
    for p, x in enumerate(rk):
        if x:
            for q, y in enumerate(rl):
                out[p + q + 1] += x * y
    return BettiVector(tuple(out), reduced=True)


def kunneth_product_prediction(bK: BettiVector, bL: BettiVector) -> BettiVector:
    """Ordinary Betti numbers of ``|K| x |L|`` over a field: the convolution."""
    ok, ol = bK.as_ordinary().values, bL.as_ordinary().values
    if not ok or not ol:
        return BettiVector(())
    out = [0] * (len(ok) + len(ol) - 1)
    for p, x in enumerate(ok):
        for q, y in enumerate(ol):
            out[p + q] += x * y
    return BettiVector(tuple(out))


# -- reports -----------------------------------------------------------------------
def _betti_json(b: BettiVector | None):
    return None if b is None else list(b.values)


@dataclass
class FrameReport:
    frame: int
    betti_m: BettiVector | None = None
    betti_k: BettiVector | None = None
    betti_l: BettiVector | None = None
    betti_join: BettiVector | None = None
    inclusion_ranks: tuple[int, ...] = ()
    lifespan2_classes: tuple[Interval, ...] = ()
    kunneth_prediction: BettiVector | None = None
    containment: bool | None = None
    facet_counts: dict[str, int] = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def rank(self, d: int) -> int:
        return self.inclusion_ranks[d] if 0 <= d < len(self.inclusion_ranks) else 0

    @property
    def facet_ratio(self) -> float | None:
        """``|facets(M)| / |facets(K * L)|``, a rough measure of how join-like ``M`` is."""
        w = self.facet_counts.get("join")
        return self.facet_counts["M"] / w if w else None

    def to_json_dict(self, representatives: bool = False) -> dict:
        return {
            "frame": self.frame,
            "flags": list(self.flags),
            "betti_M": _betti_json(self.betti_m),
            "betti_K": _betti_json(self.betti_k),
            "betti_L": _betti_json(self.betti_l),
            "betti_join": _betti_json(self.betti_join),
            "kunneth_prediction_reduced": _betti_json(self.kunneth_prediction),
            "inclusion_ranks": list(self.inclusion_ranks),
            "lifespan2_classes": intervals_to_json(self.lifespan2_classes, representatives),
            "containment_K_L_in_M": self.containment,
            "facet_counts": dict(self.facet_counts),
            "facet_ratio": self.facet_ratio,
        }


@dataclass
class IndependenceReport:
    grouping: Grouping
    frames: list[FrameReport]
    frequency_lifespans: dict[int, list[tuple[int, int]]]
    summary: dict

    def frame(self, f: int) -> FrameReport:
        for r in self.frames:
            if r.frame == f:
                return r
        raise KeyError(f)

    def to_json_dict(self, representatives: bool = False) -> dict:
        return {
            "grouping": self.grouping.to_json_dict(),
            "frames": [r.to_json_dict(representatives) for r in self.frames],
            "frequency_lifespans": {
                str(d): [list(run) for run in runs] for d, runs in sorted(self.frequency_lifespans.items())
            },
            "summary": dict(self.summary),
        }

    def to_json(self, representatives: bool = False) -> str:
        return json.dumps(self.to_json_dict(representatives), indent=2, sort_keys=False) + "\n"

    def summary_lines(self) -> list[str]:
        """``frame f dim d: rank r`` for every analysed frame and dimension."""
        lines = []
        for r in self.frames:
            if not r.inclusion_ranks:
                lines.append(f"frame {r.frame}: skipped ({', '.join(r.flags)})")
                continue
            for d, k in enumerate(r.inclusion_ranks):
                lines.append(f"frame {r.frame} dim {d}: rank {k}")
        return lines


# -- analysis ------------------------------------------------------------------------
def _frame_report(fc: FilteredConcurrence, G: Grouping, f: int, representatives: bool) -> FrameReport:
    if f < 1:
        raise ValueError(f"frame must be a positive integer, got {f}")
    M = fc.frame(f)
    rep = FrameReport(frame=f)
    if M.is_empty:
        rep.flags = ("empty-frame",)
        return rep
    K = project(M, G.group_a)
    L = project(M, G.group_b)
    rep.betti_m = betti(M)
    rep.facet_counts = {"M": len(M.facets), "K": len(K.facets), "L": len(L.facets)}
    flags = []
    if K.is_empty:
        flags.append("empty-K")
    else:
        rep.betti_k = betti(K)
    if L.is_empty:
        flags.append("empty-L")
    else:
        rep.betti_l = betti(L)
    rep.containment = K.issubcomplex(M) and L.issubcomplex(M)
    if flags:
        rep.flags = tuple(flags)
        return rep
    W = join(K, L)
    rep.facet_counts["join"] = len(W.facets)
    rep.betti_join = betti(W)
    rep.kunneth_prediction = kunneth_join_prediction(rep.betti_k, rep.betti_l)
    inc = inclusion_rank(M, W, representatives=representatives)
    rep.inclusion_ranks = inc.ranks
    rep.lifespan2_classes = inc.intervals
    return rep


def analyze_frame(
    D: BinaryDataset, G: Grouping, f: int, *, representatives: bool = False
) -> FrameReport:
    """Analyse a single frame. Variables outside ``G`` are dropped first."""
    fc = FilteredConcurrence(D.restrict(G.variables))
    return _frame_report(fc, G, f, representatives)


def _frame_task(args):
    D, G, f, reps = args
    return analyze_frame(D, G, f, representatives=reps)


def frequency_lifespans(reports: Iterable[FrameReport]) -> dict[int, list[tuple[int, int]]]:
    """Maximal runs of consecutive frames with positive inclusion rank, per dimension."""
    by_frame = {r.frame: r for r in reports}
    dims = max((len(r.inclusion_ranks) for r in by_frame.values()), default=0)
    out: dict[int, list[tuple[int, int]]] = {}
    for d in range(dims):
        runs: list[tuple[int, int]] = []
        for f in sorted(by_frame):
            if by_frame[f].rank(d) > 0:
                if runs and runs[-1][1] == f - 1:
                    runs[-1] = (runs[-1][0], f)
                else:
                    runs.append((f, f))
        out[d] = runs
    return out


def _frame_list(frames, top: int) -> list[int]:
    if frames is None or frames == "all":
        return list(range(1, top + 1))
    if isinstance(frames, int):
        return [frames]
    return sorted(set(int(f) for f in frames))


def analyze(
    D: BinaryDataset,
    G: Grouping,
    frames: Sequence[int] | range | str = "all",
    *,
    representatives: bool = False,
    max_workers: int | None = None,
) -> IndependenceReport:
    """Run the per-frame analysis over ``frames`` (default: every non-empty frame).

    Frames are reported in descending order. With ``max_workers`` > 1 the
    frames are analysed in worker processes; the result does not depend on it.
    """
    scoped = D.restrict(G.variables)
    fc = FilteredConcurrence(scoped)
    wanted = _frame_list(frames, fc.max_frame)
    if max_workers and max_workers > 1 and len(wanted) > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as ex:
            reports = list(ex.map(_frame_task, [(scoped, G, f, representatives) for f in wanted]))
    else:
        reports = [_frame_report(fc, G, f, representatives) for f in wanted]
    reports.sort(key=lambda r: -r.frame)
    summary = {
        "T": D.T,
        "n": D.n,
        "n_analysed": scoped.n,
        "zero_rows": int((D.rows.sum(axis=1) == 0).sum()),
        "zero_rows_in_scope": fc.table.zero_rows,
        "max_frame": fc.max_frame,
        "frames_requested": len(wanted),
    }
    return IndependenceReport(G, reports, frequency_lifespans(reports), summary)
