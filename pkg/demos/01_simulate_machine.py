"""
Simulating an alternating machine with output
=============================================

Load a bundled machine, step it by hand, enumerate its computations and
look at the output tree each one produces.
"""
from spantl import corpus
from spantl.ato_core import classify, initial_configuration, successors
from spantl.computation import (enumerate_computations, extract_output,
                                is_accepting_computation, span_exact)
from spantl.trees import serialize_tree

# A universal split with one rejecting branch: choosing it spoils the whole
# computation, so only the other existential choice yields a valid output.
m = corpus.load("rejecting_branch")
print(corpus.source("rejecting_branch"))

c = initial_configuration(m, "")
print("initial:", c, classify(m, c))
for d in successors(m, "", c):
    print("  ->", d, classify(m, d))

# Every computation, with its verdict and its output tree (ordered siblings).
for i, t in enumerate(enumerate_computations(m, ""), start=1):
    verdict = "accepting" if is_accepting_computation(t) else "rejecting"
    print(f"computation {i}: {t.size} nodes, {verdict}, output {serialize_tree(extract_output(t, 'ordered'))}")

print("span:", span_exact(m, ""))

# The input reader's span depends on the input: each a or b may be written
# either way, so the count doubles per such symbol.
reader = corpus.load("input_reader")
for w in ["", "x", "ab", "abx", "abab"]:
    print(f"span(input_reader, {w!r}) = {span_exact(reader, w)}")
