"""The computation DAG: every configuration reachable from the initial one,
deduplicated, with edges to its successors in canonical order."""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .ato_core import (AtoMachine, Configuration, ResourceBounds, classify,
                       initial_configuration, input_tape, successors)
from .computation import check_tapes
from .errors import BoundViolation, CycleError


@dataclass(frozen=True, eq=False)
class ComputationDag:
    machine: AtoMachine
    input: str
    root: Configuration
    nodes: tuple[Configuration, ...]  # breadth-first discovery order
    edges: Mapping[Configuration, tuple[Configuration, ...]]

    def __contains__(self, c):
        return c in self.edges

    def children(self, c):
        return self.edges[c]

    def is_leaf(self, c):
        return not self.edges[c]

    def is_dead_end(self, c):
        return not self.edges[c] and not self.machine.is_halting(c.state)

    def edge_list(self):
        return [(c, d) for c in self.nodes for d in self.edges[c]]


def build_dag(m: AtoMachine, w: str, bounds: ResourceBounds | None = None) -> ComputationDag:
    """Breadth-first closure of the initial configuration under ``successors``.

    Raises :class:`BoundViolation` if a tape exceeds ``tape_cap`` or some
    configuration lies deeper than ``max_nodes`` (no computation through it
    could respect the node bound), and :class:`CycleError` if the closure
    contains a cycle.
    """
    bounds = bounds or m.bounds
    root = initial_configuration(m, w)
    edges: dict[Configuration, tuple[Configuration, ...]] = {}
    depth = {root: 1}
    order = [root]
    queue = deque([root])
    while queue:
        c = queue.popleft()
        check_tapes(c, bounds)
        succ = () if m.is_halting(c.state) else tuple(successors(m, w, c))
        edges[c] = succ
        for d in succ:
            if d not in depth:
                if depth[c] + 1 > bounds.max_nodes:
                    raise BoundViolation(
                        "max_nodes", f"configuration at depth {depth[c] + 1} > {bounds.max_nodes}", d)
                depth[d] = depth[c] + 1
                order.append(d)
                queue.append(d)
    _check_acyclic(root, edges)
    return ComputationDag(m, w, root, tuple(order), MappingProxyType(edges))


def _check_acyclic(root, edges):
    # iterative DFS with three colours; a grey successor is a back edge
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(edges, WHITE)
    colour[root] = GREY
    stack = [(root, iter(edges[root]))]
    while stack:
        c, it = stack[-1]
        for d in it:
            if colour[d] == GREY:
                raise CycleError(f"back edge {c} -> {d}; the machine does not terminate", d)
            if colour[d] == WHITE:
                colour[d] = GREY
                stack.append((d, iter(edges[d])))
                break
        else:
            colour[c] = BLACK
            stack.pop()


def topological_order(g: ComputationDag) -> list[Configuration]:
    """Children before parents."""
    out, seen = [], set()
    stack = [(g.root, iter(g.edges[g.root]))]
    seen.add(g.root)
    while stack:
        c, it = stack[-1]
        for d in it:
            if d not in seen:
                seen.add(d)
                stack.append((d, iter(g.edges[d])))
                break
        else:
            out.append(c)
            stack.pop()
    return out


def dag_stats(g: ComputationDag) -> dict:
    """Node/edge counts, depth (edges on the longest root path) and per-class counts."""
    longest = {}
    for c in topological_order(g):
        kids = g.edges[c]
        longest[c] = 1 + max(longest[d] for d in kids) if kids else 0
    per_class = Counter()
    for c in g.nodes:
        kind, lab = classify(g.machine, c)
        per_class[kind] += 1
        if lab == "labeling":
            per_class["labeling"] += 1
        if g.is_dead_end(c):
            per_class["dead_end"] += 1
    for key in ("accepting", "rejecting", "existential", "universal", "labeling", "dead_end"):
        per_class.setdefault(key, 0)
    return {
        "nodes": len(g.nodes),
        "edges": sum(len(v) for v in g.edges.values()),
        "depth": longest[g.root],
        "classes": dict(sorted(per_class.items())),
    }


def configuration_bound(m: AtoMachine, w: str, bounds: ResourceBounds) -> int:
    """Upper bound on the number of distinct configurations a DAG can hold.

    Counts (state, work tape, labeling tape, heads) tuples with tapes within ``tape_cap``; the
    input head moves at most one cell per step, so it stays within
    the marked input's length plus ``max_nodes``.
    """
    sigma = len(m.alphabet)
    cap = bounds.tape_cap
    strings = sum(sigma ** i for i in range(cap + 1))
    work = sum(sigma ** i for i in range(cap))  # y starts with the marker
    return (len(m.states) * work * strings
            * (len(input_tape(w)) + bounds.max_nodes) * (cap + 1))


def export_edges(g: ComputationDag) -> str:
    """Line-based dump: ``node <encoding>`` lines, then ``<parent> -> <child>`` lines."""
    lines = [f"root {g.root.encode()}"]
    lines += [f"node {c.encode()}" for c in g.nodes]
    lines += [f"{c.encode()} -> {d.encode()}" for c, d in g.edge_list()]
    return "\n".join(lines) + "\n"
