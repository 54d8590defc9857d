import io
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from concurrence_join.concurrence import (
    BinaryDataset,
    DatasetParseError,
    FilteredConcurrence,
    PatternTable,
    concurrence_frame,
    ingest_csv,
    max_frame,
    pattern_table,
    support,
)
from concurrence_join.homology import betti
from concurrence_join.simplicial import SimplicialComplex, full_simplex, project

NAMES3 = ("V1", "V2", "V3")


def ds(rows, names=None):
    rows = [[int(c) for c in r] if isinstance(r, str) else r for r in rows]
    names = names or tuple(f"V{i + 1}" for i in range(len(rows[0])))
    return BinaryDataset(tuple(names), np.array(rows))


def brute_count(D, simplex):
    cols = [D.names.index(v) for v in simplex]
    return int(sum(all(row[c] for c in cols) for row in D.rows.tolist()))


def brute_frame(D, f):
    """All variable subsets contained in >= f rows, by exhaustive enumeration."""
    keep = []
    for k in range(1, D.n + 1):
        for s in itertools.combinations(sorted(D.names), k):
            if brute_count(D, s) >= f:
                keep.append(s)
    return SimplicialComplex(keep)


datasets = st.integers(1, 7).flatmap(
    lambda n: arrays(np.uint8, st.tuples(st.integers(1, 25), st.just(n)), elements=st.integers(0, 1))
).map(lambda a: BinaryDataset(tuple(f"v{i}" for i in range(a.shape[1])), a))


class TestIngest:
    def test_basic(self):
        D = ingest_csv("A,B\n1,0\n0,1")
        assert D.names == ("A", "B") and D.T == 2 and D.n == 2

    @pytest.mark.parametrize("src", [b"A,B\n1,0\n", io.BytesIO(b"A,B\n1,0\n"), io.StringIO("A,B\n1,0\n")])
    def test_sources(self, src):
        assert ingest_csv(src).rows.tolist() == [[1, 0]]

    def test_path(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("x,y,z\n1,1,0\r\n0,0,0\r\n")
        D = ingest_csv(p)
        assert D.rows.tolist() == [[1, 1, 0], [0, 0, 0]]

    def test_non_binary(self):
        with pytest.raises(DatasetParseError, match=r"line 3, column 2 \(B\): non-binary cell '2'"):
            ingest_csv("A,B\n1,0\n0,2\n")

    def test_ragged(self):
        with pytest.raises(DatasetParseError, match="line 2: expected 2 cells, found 3"):
            ingest_csv("A,B\n1,0,1\n")

    def test_duplicate_name(self):
        with pytest.raises(DatasetParseError, match="duplicate variable name 'A'"):
            ingest_csv("A,B,A\n1,0,1\n")

    def test_empty_body(self):
        with pytest.raises(DatasetParseError, match="T >= 1 required"):
            ingest_csv("A,B\n")

    def test_csv_roundtrip(self):
        D = ds(["110", "011", "000"])
        assert ingest_csv(D.to_csv()) == D


class TestSupport:
    def test_values(self):
        assert support((1, 0, 1), NAMES3) == ("V1", "V3")
        assert support((0, 0, 0), NAMES3) is None
        assert support((1, 1, 1), NAMES3) == NAMES3


class TestPatternTable:
    def test_counts(self):
        t = pattern_table(ds(["110", "110", "011"]))
        assert t.entries == {("V1", "V2"): 2, ("V2", "V3"): 1}
        assert t.zero_rows == 0

    def test_all_zero(self):
        t = pattern_table(ds(["000", "000"]))
        assert t.entries == {} and t.zero_rows == 2

    def test_nine_pairs(self):
        trip = ["110", "011", "101"]
        D = ds([a + b for a in trip for b in trip])
        t = pattern_table(D)
        assert len(t.entries) == 9 and set(t.entries.values()) == {1}

    def test_json(self):
        t = pattern_table(ds(["110", "110", "000"]))
        assert t.to_json_dict() == {"V1|V2": 2, "": 1}
        assert PatternTable.from_json_dict(t.to_json_dict()) == t

    @given(datasets)
    def test_total(self, D):
        t = pattern_table(D)
        assert sum(t.entries.values()) + t.zero_rows == D.T


class TestFrames:
    D = ds(["110", "110", "011"])

    def test_frame1(self):
        assert concurrence_frame(self.D, 1) == SimplicialComplex([("V1", "V2"), ("V2", "V3")])

    def test_frame2(self):
        fc = FilteredConcurrence(self.D)
        assert (fc.count(["V2"]), fc.count(["V1"]), fc.count(["V1", "V2"])) == (3, 2, 2)
        assert concurrence_frame(self.D, 2) == full_simplex(("V1", "V2"))

    def test_frame3(self):
        assert concurrence_frame(self.D, 3) == full_simplex(["V2"])

    def test_beyond_max_is_empty(self):
        assert concurrence_frame(self.D, 4).is_empty

    def test_bad_frame(self):
        with pytest.raises(ValueError):
            concurrence_frame(self.D, 0)

    def test_max_frame(self):
        assert max_frame(self.D) == 3
        assert max_frame(ds(["111"])) == 1
        assert max_frame(ds(["000", "000"])) == 0

    @given(datasets)
    @settings(max_examples=60, deadline=None)
    def test_frames_match_brute_force(self, D):
        fc = FilteredConcurrence(D)
        for f in range(1, fc.max_frame + 2):
            assert fc.frame(f) == brute_frame(D, f)

    @given(datasets)
    @settings(max_examples=60, deadline=None)
    def test_descending(self, D):
        fc = FilteredConcurrence(D)
        frames = [fc.frame(f) for f in range(1, fc.max_frame + 2)]
        for hi, lo in zip(frames[1:], frames):
            assert hi.issubcomplex(lo)

    @given(datasets)
    @settings(max_examples=60, deadline=None)
    def test_frame1_facets_are_maximal_patterns(self, D):
        pats = set(pattern_table(D).entries)
        maximal = {p for p in pats if not any(set(p) < set(q) for q in pats)}
        assert FilteredConcurrence(D).frame(1).facets == maximal

    @given(datasets)
    @settings(max_examples=40, deadline=None)
    def test_count_matches_row_scan(self, D):
        fc = FilteredConcurrence(D)
        for k in range(1, min(4, D.n) + 1):
            for s in itertools.combinations(D.names, k):
                assert fc.count(s) == brute_count(D, s)

    @given(datasets, st.data())
    @settings(max_examples=60, deadline=None)
    def test_restriction_commutes_with_projection(self, D, data):
        S = data.draw(st.lists(st.sampled_from(D.names), min_size=1, unique=True))
        fc, fr = FilteredConcurrence(D), FilteredConcurrence(D.restrict(S))
        for f in range(1, fc.max_frame + 1):
            assert fr.frame(f) == project(fc.frame(f), S)

    @given(datasets, st.randoms())
    @settings(max_examples=40, deadline=None)
    def test_column_permutation_relabels_only(self, D, rnd):
        perm = list(range(D.n))
        rnd.shuffle(perm)
        P = BinaryDataset(tuple(D.names[i] for i in perm), D.rows[:, perm])
        a, b = FilteredConcurrence(D), FilteredConcurrence(P)
        for f in range(1, a.max_frame + 1):
            assert a.frame(f) == b.frame(f)
        # renaming the permuted columns changes labels but no Betti numbers
        Q = BinaryDataset(D.names, D.rows[:, perm])
        q = FilteredConcurrence(Q)
        for f in range(1, a.max_frame + 1):
            assert betti(q.frame(f)) == betti(a.frame(f))

    def test_candidate_cap(self):
        from concurrence_join.concurrence import CandidateCapError

        rows = [[1 if j != i else 0 for j in range(10)] for i in range(10)]
        with pytest.raises(CandidateCapError):
            FilteredConcurrence(ds(rows), candidate_cap=50).frame(1)
