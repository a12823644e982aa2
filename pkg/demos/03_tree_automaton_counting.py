"""
Counting trees accepted by an automaton
=======================================

Build automata directly, test membership, determinize, and count accepted
trees per size with exact integers.
"""
from spantl.nfta import (accepts, count_by_enumeration, count_exact, determinize,
                         enumerate_accepted, parse_nfta)
from spantl.trees import parse_tree, serialize_tree

# One state, one label, zero to two children: ordered trees with node
# arity at most two.
motzkin = parse_nfta("""
states: q
alphabet: "a"
init: q
delta:
(q, "a") -> ()
(q, "a") -> (q)
(q, "a") -> (q, q)
""")
print([count_exact(motzkin, n) for n in range(1, 11)])
print("size 200:", count_exact(motzkin, 200))

# Even-depth leaves only: two states alternating down every branch.
even = parse_nfta("""
states: even odd
alphabet: "f" "x"
init: even
delta:
(even, "x") -> ()
(even, "f") -> (odd, odd)
(odd, "f") -> (even, even)
(odd, "f") -> (even)
""")
for text in ["x", "f(x,x)", "f(f(x,x),f(x))", "f(f(x),f(x))"]:
    print(f"{text:16} accepted={accepts(even, parse_tree(text))}")

det = determinize(even)
print("determinized states:", [sorted(s) for s in det.states])
print("per size (dp):  ", [count_exact(even, n) for n in range(1, 9)])
print("per size (enum):", [count_by_enumeration(even, n) for n in range(1, 9)])
for t in enumerate_accepted(even, 5):
    print("  ", serialize_tree(t))
