"""
Ordered and unordered output equality
=====================================

Output trees have no sibling order of their own.  This script shows where
the choice of equality changes the count, and how canonical codes decide it.
"""
from collections import defaultdict

from spantl import corpus
from spantl.computation import enumerate_computations, extract_output, is_accepting_computation
from spantl.trees import canonical_code, parse_tree, serialize_tree

t1, t2 = parse_tree('""(a,c)'), parse_tree('""(c,a)')
for mode in ("ordered", "unordered"):
    print(mode, canonical_code(t1, mode) == canonical_code(t2, mode))

# Group the valid outputs of nested_universal by their unordered code.
m = corpus.load("nested_universal")
groups = defaultdict(set)
for t in enumerate_computations(m, ""):
    if is_accepting_computation(t):
        out = extract_output(t, "ordered")
        groups[canonical_code(out, "unordered")].add(serialize_tree(out))

for members in groups.values():
    marker = "  <- same tree, two sibling orders" if len(members) > 1 else ""
    print(sorted(members), marker)
print(f"{sum(map(len, groups.values()))} ordered outputs, {len(groups)} unordered outputs")
