"""
Frequency-filtered concurrence complexes
========================================

Turn a small table of 0/1 observations into its descending sequence of
frames, and watch simplices drop out as the frequency threshold rises.
"""

from concurrence_join import FilteredConcurrence, betti, ingest_csv, pattern_table

csv_text = """V1,V2,V3,V4
1,1,0,0
1,1,0,0
0,1,1,0
1,0,1,0
0,0,0,0
1,1,1,0
0,0,0,1
"""
D = ingest_csv(csv_text)
print(f"T = {D.T} observations of n = {D.n} variables")

# %%
# Observations collapse to a table of support patterns. The all-zero row
# supports no simplex and is only counted.
table = pattern_table(D)
print(table.to_json())

# %%
# Frame f keeps every set of variables that are jointly 1 in at least f rows.
fc = FilteredConcurrence(D)
for f in range(1, fc.max_frame + 1):
    M = fc.frame(f)
    facets = sorted(M.facets, key=lambda s: (-len(s), s))
    print(f"frame {f}: facets {facets}  betti {betti(M).values}")

# %%
# Counts are monotone: a face is always at least as frequent as its cofaces.
print("count(V1,V2) =", fc.count(["V1", "V2"]), " count(V1,V2,V3) =", fc.count(["V1", "V2", "V3"]))
