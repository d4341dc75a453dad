"""
Line-count reuse measures and cyclomatic complexity
===================================================

The older reuse ratios work on line and component counts rather than on
token volumes.  Cyclomatic complexity is computed from a control graph or
from decision keywords.
"""

from libinvest import (
    CPP_THESIS,
    ControlCounts,
    cc_from_decisions,
    cc_from_graph,
    reuse_density,
    reuse_frequency,
    reuse_level,
    reuse_percent,
    threshold_flag,
    tokenize,
)

# 190 reused lines next to 265 new ones
print("reuse percent:", round(reuse_percent(190, 265), 4))

# 2 internal and 3 external components reused out of 8
print("reuse level (internal, external, total):", reuse_level(2, 3, 8))
print("reuse frequency:", reuse_frequency(3, 3, 8))
print("reuse density per line:", tuple(round(x, 4) for x in reuse_density(2, 3, 455)))

# a graph with 15 edges over 8 nodes in one piece
edges = [("A", "B"), ("A", "F"), ("B", "C"), ("B", "D"), ("B", "E"), ("C", "E"),
         ("C", "H"), ("D", "E"), ("D", "G"), ("E", "F"), ("E", "G"), ("F", "H"),
         ("F", "E"), ("G", "H"), ("G", "G")]
counts = ControlCounts.from_edges(edges)
print(counts, "-> CC =", cc_from_graph(counts))

code = """
int classify(int v) {
    if (v < 0) return -1;
    for (int i = 0; i < v; i++) {
        while (v % 2 == 0) v /= 2;
    }
    switch (v) { case 1: return 1; case 3: return 3; }
    return 0;
}
"""
cc = cc_from_decisions(tokenize(code, CPP_THESIS), CPP_THESIS)
print("decision-based CC:", cc, "- below threshold:", threshold_flag(cc))
