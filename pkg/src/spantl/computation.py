"""Computations of an ATO, their outputs, and the exact span.

A computation is a finite tree of configurations rooted at the initial
configuration: existential nodes keep one successor, universal nodes keep
all of them, and leaves are halting.  Its output keeps only the labeling
configurations, linking ``u`` to ``v`` when every configuration strictly
between them is non-labeling.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .ato_core import AtoMachine, Configuration, ResourceBounds, initial_configuration, successors
from ._util import recursion_headroom
from .errors import BoundViolation
from .trees import Mode, Tree, canonical_code, canonical_form


@dataclass(frozen=True, eq=False)
class CompNode:
    config: Configuration
    children: tuple[CompNode, ...] = ()


@dataclass(frozen=True, eq=False)
class ComputationTree:
    machine: AtoMachine
    input: str
    root: CompNode
    size: int

    def nodes(self) -> Iterator[CompNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def configurations(self) -> set[Configuration]:
        return {n.config for n in self.nodes()}

    def leaves(self) -> Iterator[CompNode]:
        return (n for n in self.nodes() if not n.children)


def check_tapes(c: Configuration, bounds: ResourceBounds) -> None:
    if len(c.work) > bounds.tape_cap:
        raise BoundViolation("tape_cap", f"working tape length {len(c.work)} > {bounds.tape_cap}", c)
    if len(c.label) > bounds.tape_cap:
        raise BoundViolation("tape_cap", f"labeling tape length {len(c.label)} > {bounds.tape_cap}", c)


class _Enumerator:
    """Memoized expansion of configurations into complete sub-computations.

    ``expand(c)`` is the list of ``(subtree, size)`` pairs rooted at ``c``.
    A configuration that is still being expanded when met again lies on a
    cycle; the depth cap turns that into a ``max_nodes`` error.
    """

    def __init__(self, m, w, bounds):
        self.m, self.w, self.bounds = m, w, bounds
        self.memo: dict[Configuration, list[tuple[CompNode, int]]] = {}

    def expand(self, c, depth=1):
        cached = self.memo.get(c)
        if cached is not None:
            return cached
        cap = self.bounds.max_nodes
        if depth > cap:
            raise BoundViolation("max_nodes", f"a computation path is longer than {cap}", c)
        check_tapes(c, self.bounds)
        m = self.m
        if m.is_halting(c.state):
            result = [(CompNode(c), 1)]
        else:
            succ = successors(m, self.w, c)
            if not succ:
                result = []  # dead end: belongs to no computation
            elif c.state in m.universal:
                parts = [self.expand(s, depth + 1) for s in succ]
                result = []
                for combo in itertools.product(*parts):
                    size = 1 + sum(sz for _, sz in combo)
                    if size > cap:
                        raise BoundViolation("max_nodes", f"a computation has {size} > {cap} nodes", c)
                    result.append((CompNode(c, tuple(t for t, _ in combo)), size))
            else:
                result = [(CompNode(c, (t,)), sz + 1)
                          for s in succ for t, sz in self.expand(s, depth + 1)]
                for _, size in result:
                    if size > cap:
                        raise BoundViolation("max_nodes", f"a computation has {size} > {cap} nodes", c)
        self.memo[c] = result
        return result


def enumerate_computations(m: AtoMachine, w: str,
                           bounds: ResourceBounds | None = None) -> Iterator[ComputationTree]:
    """Yield every computation of ``m`` on ``w`` exactly once.

    Order is depth-first over existential choices in canonical configuration
    order.  Branches through dead ends (non-halting configurations without
    successors) are pruned.  Raises :class:`BoundViolation` when a computation
    would exceed ``max_nodes`` or a tape exceeds ``tape_cap``.
    """
    bounds = bounds or m.bounds
    root = initial_configuration(m, w)
    with recursion_headroom(bounds.max_nodes):
        trees = _Enumerator(m, w, bounds).expand(root)
    for tree, size in trees:
        yield ComputationTree(m, w, tree, size)


def is_accepting_computation(t: ComputationTree) -> bool:
    return all(n.config.state == t.machine.accept for n in t.leaves())


def _is_labeling(t: ComputationTree, node: CompNode) -> bool:
    return node.config.state in t.machine.labeling


def extract_output(t: ComputationTree, mode: Mode = "unordered") -> Tree:
    """The output tree of ``t``.

    Siblings follow their depth-first position in ``t`` for ``mode="ordered"``;
    ``mode="unordered"`` returns the canonical unordered representative.
    """
    labeling = t.machine.labeling

    def build(node):
        # labeling descendants reachable through non-labeling nodes only
        kids = []
        stack = list(reversed(node.children))
        while stack:
            n = stack.pop()
            if n.config.state in labeling:
                kids.append(build(n))
            else:
                stack.extend(reversed(n.children))
        return Tree(node.config.label, tuple(kids))

    if t.root.config.state not in labeling:
        raise ValueError("the root of a computation must be a labeling configuration")
    with recursion_headroom(t.size):
        out = build(t.root)
    if mode == "unordered":
        return canonical_form(out)
    if mode != "ordered":
        raise ValueError(f"unknown mode {mode!r}")
    return out


def valid_outputs(m: AtoMachine, w: str, bounds: ResourceBounds | None = None,
                  mode: Mode = "unordered") -> dict:
    """Map canonical code -> one representative output, over accepting computations."""
    out = {}
    for t in enumerate_computations(m, w, bounds):
        if is_accepting_computation(t):
            tree = extract_output(t, mode)
            out.setdefault(canonical_code(tree, mode), tree)
    return out


def span_exact(m: AtoMachine, w: str, bounds: ResourceBounds | None = None,
               mode: Mode = "unordered") -> int:
    """Number of distinct valid outputs of ``m`` on ``w`` under ``mode`` equality."""
    return len(valid_outputs(m, w, bounds, mode))


@dataclass(frozen=True)
class Violation:
    kind: str  # "max_nodes", "tape_cap" or "universal_k"
    message: str
    path: tuple[Configuration, ...] = ()

    def __str__(self):
        return f"{self.kind}: {self.message}"


def labeled_free_paths(t: ComputationTree) -> list[tuple[CompNode, ...]]:
    """Maximal downward paths made only of non-labeling configurations."""
    paths = []

    def walk(node, path):
        if _is_labeling(t, node):
            for child in node.children:
                walk(child, [])
            return
        path = path + [node]
        if all(_is_labeling(t, c) for c in node.children):
            paths.append(tuple(path))
        for child in node.children:
            walk(child, path)

    with recursion_headroom(t.size):
        walk(t.root, [])
    return paths


def check_well_behaved(t: ComputationTree, bounds: ResourceBounds | None = None) -> list[Violation]:
    """Report the resource promises that ``t`` breaks under ``bounds``."""
    bounds = bounds or t.machine.bounds
    out = []
    if t.size > bounds.max_nodes:
        out.append(Violation("max_nodes", f"computation has {t.size} > {bounds.max_nodes} nodes"))
    for c in sorted(t.configurations()):
        if len(c.work) > bounds.tape_cap or len(c.label) > bounds.tape_cap:
            out.append(Violation("tape_cap", f"{c} uses more than {bounds.tape_cap} cells", (c,)))
    for path in labeled_free_paths(t):
        universal = sum(1 for n in path if n.config.state in t.machine.universal)
        if universal > bounds.k:
            configs = tuple(n.config for n in path)
            out.append(Violation(
                "universal_k",
                f"labeled-free path {' -> '.join(map(str, configs))} has "
                f"{universal} > {bounds.k} universal configurations",
                configs,
            ))
    return out
