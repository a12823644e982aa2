"""
From a machine to a tree automaton
==================================

Compile a machine and an input into a tree automaton whose language is
exactly the machine's set of valid outputs, then count that language two
ways and compare with direct simulation.
"""
from spantl import corpus
from spantl.comp_dag import build_dag, dag_stats
from spantl.computation import span_exact
from spantl.nfta import count_exact, enumerate_accepted, serialize_nfta
from spantl.reduction import build_nfta, size_bound
from spantl.trees import serialize_tree

m = corpus.load("nested_universal")
w = "ab"

# The DAG merges configurations that several computations share.
g = build_dag(m, w)
print("DAG:", dag_stats(g))

a = build_nfta(m, w)
print(serialize_nfta(a))

n = size_bound(m)
print("accepted trees:")
for t in enumerate_accepted(a, n):
    print("  ", serialize_tree(t))

# Siblings in the automaton's trees follow a fixed configuration order, so
# its count matches the ordered span.  The unordered span can be smaller:
# two computations may produce the same children in a different order.
print("count of L(A) up to size bound:", count_exact(a, n, cumulative=True))
print("ordered span:  ", span_exact(m, w, mode="ordered"))
print("unordered span:", span_exact(m, w, mode="unordered"))
