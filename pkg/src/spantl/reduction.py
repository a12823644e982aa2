"""Compile an ATO and an input into an NFTA accepting exactly its valid outputs.

The computation DAG is processed top-down from its root.  Every
configuration returns a set of tuples of NFTA states: a labeling
configuration returns the single tuple ``(its state,)`` after installing one
transition per tuple collected below it; a non-labeling one hands the
collected tuples up, taking the union over existential successors and the
tuple product over universal ones.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._util import recursion_headroom
from .ato_core import AtoMachine, Configuration, ResourceBounds
from .comp_dag import ComputationDag, build_dag
from .nfta import Nfta

TupleSet = frozenset  # frozenset of tuples of NFTA state names


def tuple_product(parts) -> TupleSet:
    """Cartesian product of tuple sets, each combination flattened into one tuple.

    >>> sorted(tuple_product([{(), ("s1",)}, {("s2",)}]))
    [('s1', 's2'), ('s2',)]

    Any empty part makes the result empty; no parts at all gives ``{()}``.
    """
    parts = [frozenset(p) for p in parts]
    if any(not p for p in parts):
        return frozenset()
    return frozenset(tuple(itertools.chain.from_iterable(combo))
                     for combo in itertools.product(*parts))


def state_name(c: Configuration) -> str:
    return c.encode()


@dataclass
class NftaBuilder:
    """States, labels and transitions collected so far, plus the memo of
    processed configurations."""

    dag: ComputationDag
    memoize: bool = True
    states: set = field(default_factory=set)
    alphabet: set = field(default_factory=set)
    transitions: set = field(default_factory=set)
    memo: dict = field(default_factory=dict)
    calls: int = 0

    def process(self, c: Configuration) -> TupleSet:
        self.calls += 1
        if self.memoize and c in self.memo:
            return self.memo[c]
        m = self.dag.machine
        labeling = c.state in m.labeling
        accepting = c.state == m.accept
        if self.dag.is_leaf(c):
            if labeling:
                s = state_name(c)
                self.states.add(s)
                self.alphabet.add(c.label)
                if accepting:
                    self.transitions.add((s, c.label, ()))
                result = frozenset({(s,)})
            elif accepting:
                result = frozenset({()})
            else:
                result = frozenset()
        else:
            parts = [self.process(d) for d in self.dag.children(c)]
            if c.state in m.existential:
                collected = frozenset().union(*parts)
            else:
                collected = tuple_product(parts)
            if labeling:
                s = state_name(c)
                self.states.add(s)
                self.alphabet.add(c.label)
                for kids in collected:
                    self.transitions.add((s, c.label, kids))
                result = frozenset({(s,)})
            else:
                result = collected
        self.memo[c] = result
        return result

    def nfta(self, initial: str) -> Nfta:
        return Nfta(frozenset(self.states), frozenset(self.alphabet), initial,
                    frozenset(self.transitions))


def build_nfta(m: AtoMachine, w: str, bounds: ResourceBounds | None = None,
               memoize: bool = True) -> Nfta:
    """Build the computation DAG of ``m`` on ``w`` and process it from the root.

    The number of distinct trees the result accepts equals the number of
    distinct valid outputs (siblings in canonical configuration order).
    """
    dag = build_dag(m, w, bounds)
    return nfta_from_dag(dag, memoize)


def nfta_from_dag(dag: ComputationDag, memoize: bool = True) -> Nfta:
    builder = NftaBuilder(dag, memoize)
    with recursion_headroom(len(dag.nodes)):
        top = builder.process(dag.root)
    if len(top) != 1 or len(next(iter(top))) != 1:
        raise AssertionError(f"root of the DAG processed to {set(top)}, expected one state")
    (initial,), = top
    return builder.nfta(initial)


def size_bound(m: AtoMachine, bounds: ResourceBounds | None = None) -> int:
    """Size above which the compiled automaton accepts nothing: ``max_nodes``."""
    return (bounds or m.bounds).max_nodes
