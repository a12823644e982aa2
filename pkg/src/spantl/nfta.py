"""Top-down nondeterministic finite tree automata over ordered trees.

Provides membership, bounded enumeration of the accepted language,
bottom-up subset construction, and exact counting of accepted trees of a
given size (or of every size up to it) by dynamic programming over the
deterministic automaton.

NFTA text format::

    states: q0 q1
    alphabet: "" "a"
    init: q0
    delta:
    (q0, "") -> (q1, q1)
    (q1, "a") -> ()
"""
from __future__ import annotations

import itertools
import json
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator

from ._lexer import TokenStream, quote, tokenize
from .errors import CapExceeded, NftaSyntaxError
from .trees import Tree, canonical_code

DEFAULT_SIZE_CAP = 512
DEFAULT_STATE_CAP = 20_000

_HEADER = re.compile(r"^\s*(states|alphabet|init|delta)\s*:(.*)$")


@dataclass(frozen=True, eq=False)
class Nfta:
    states: frozenset
    alphabet: frozenset
    initial: str
    transitions: frozenset  # of (state, label, tuple of states)

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "transitions",
                           frozenset((q, a, tuple(kids)) for q, a, kids in self.transitions))
        problems = check_nfta(self)
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def max_arity(self) -> int:
        return max((len(kids) for _, _, kids in self.transitions), default=0)

    def __eq__(self, other):
        if not isinstance(other, Nfta):
            return NotImplemented
        return (self.states, self.alphabet, self.initial, self.transitions) == (
            other.states, other.alphabet, other.initial, other.transitions)

    def __hash__(self):
        return hash((self.states, self.alphabet, self.initial, self.transitions))

    def by_label_arity(self):
        """``(label, arity) -> [(state, child states)]``."""
        index = defaultdict(list)
        for q, a, kids in sorted(self.transitions):
            index[a, len(kids)].append((q, kids))
        return index


def check_nfta(a: Nfta) -> list[str]:
    out = []
    if a.initial not in a.states:
        out.append(f"initial state {a.initial!r} is not declared")
    for q, label, kids in sorted(a.transitions):
        for s in (q,) + kids:
            if s not in a.states:
                out.append(f"transition ({q}, {label!r}, {kids}) uses undeclared state {s!r}")
        if label not in a.alphabet:
            out.append(f"transition ({q}, {label!r}, {kids}) uses undeclared label {label!r}")
    return out


# -- text format -------------------------------------------------------------

def parse_nfta(text: str) -> Nfta:
    seen = {}
    transitions = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _HEADER.match(raw)
        if m:
            section, rest = m.group(1), m.group(2)
            if section in seen:
                raise NftaSyntaxError(f"duplicate section {section!r}", lineno, 1)
            seen[section] = [t.value for t in tokenize(rest, punct=",", error=NftaSyntaxError, line=lineno)
                             if t.kind in ("word", "string")]
            if section == "delta":
                if rest.strip():
                    transitions.append(_parse_transition(rest, lineno))
                seen[section] = True
            continue
        if section != "delta":
            raise NftaSyntaxError(f"unexpected line {stripped!r}", lineno, 1)
        transitions.append(_parse_transition(raw, lineno))
    for required in ("states", "alphabet", "init"):
        if required not in seen:
            raise NftaSyntaxError(f"missing section {required!r}")
    if len(seen["init"]) != 1:
        raise NftaSyntaxError("section 'init' needs exactly one state")
    try:
        return Nfta(frozenset(seen["states"]), frozenset(seen["alphabet"]),
                    seen["init"][0], frozenset(transitions))
    except ValueError as exc:
        raise NftaSyntaxError(str(exc)) from None


def _parse_transition(line, lineno):
    ts = TokenStream(tokenize(line, punct="(),", error=NftaSyntaxError, line=lineno),
                     error=NftaSyntaxError)
    ts.expect("(")
    q = ts.text("state")
    ts.expect(",")
    label = ts.text("label")
    ts.expect(")")
    arrow = ts.next()
    if arrow.value != "->":
        raise NftaSyntaxError("expected '->'", arrow.line, arrow.column)
    ts.expect("(")
    kids = []
    if not ts.at(")"):
        kids.append(ts.text("state"))
        while ts.at(","):
            ts.next()
            kids.append(ts.text("state"))
    ts.expect(")")
    end = ts.peek()
    if end.kind != "eof":
        raise NftaSyntaxError(f"trailing input {end.value!r}", end.line, end.column)
    return q, label, tuple(kids)


def serialize_nfta(a: Nfta) -> str:
    lines = [
        "states: " + " ".join(quote(q) for q in sorted(a.states)),
        "alphabet: " + " ".join(json.dumps(x, ensure_ascii=False) for x in sorted(a.alphabet)),
        "init: " + quote(a.initial),
        "delta:",
    ]
    for q, label, kids in sorted(a.transitions):
        lines.append(f"({quote(q)}, {json.dumps(label, ensure_ascii=False)}) -> "
                     f"({', '.join(quote(k) for k in kids)})")
    return "\n".join(lines) + "\n"


# -- membership ----------------------------------------------------------------

def run_states(a: Nfta, t: Tree, index=None) -> frozenset:
    """States ``q`` such that some run on ``t`` assigns ``q`` to the root."""
    index = index if index is not None else a.by_label_arity()
    results: list[frozenset] = []
    stack = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in reversed(node.children))
            continue
        n = len(node.children)
        kids = results[len(results) - n:] if n else []
        if n:
            del results[len(results) - n:]
        here = frozenset(
            q for q, qs in index.get((node.label, n), ())
            if all(qi in ki for qi, ki in zip(qs, kids))
        )
        results.append(here)
    return results[0]


def accepts(a: Nfta, t: Tree) -> bool:
    """Whether some run of ``a`` on ``t`` maps the root to the initial state.

    Evaluated bottom-up; labels outside the alphabet simply fail to match.
    """
    return a.initial in run_states(a, t)


# -- enumeration ---------------------------------------------------------------

def _compositions(total, parts, feasible):
    """Tuples of positive sizes summing to ``total``; ``feasible[i]`` lists
    allowed sizes for part ``i`` (ascending)."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for s in feasible[0]:
        if s > total - (parts - 1):
            break
        for rest in _compositions(total - s, parts - 1, feasible[1:]):
            yield (s,) + rest


def trees_by_state(a: Nfta, max_size: int) -> dict:
    """``table[q][s]`` is the set of trees of size ``s`` with a run from ``q``."""
    table = {q: defaultdict(set) for q in a.states}
    by_state = defaultdict(list)
    for q, label, kids in sorted(a.transitions):
        by_state[q].append((label, kids))
    for size in range(1, max_size + 1):
        for q in sorted(a.states):
            bucket = table[q][size]
            for label, kids in by_state[q]:
                if not kids:
                    if size == 1:
                        bucket.add(Tree(label))
                    continue
                feasible = [sorted(s for s, ts in table[k].items() if ts and s < size) for k in kids]
                for sizes in _compositions(size - 1, len(kids), feasible):
                    combos = [()]
                    for k, s in zip(kids, sizes):
                        combos = [c + (t,) for c in combos for t in table[k][s]]
                    bucket.update(Tree(label, c) for c in combos)
    return table


def enumerate_accepted(a: Nfta, max_size: int, size_cap: int = DEFAULT_SIZE_CAP) -> Iterator[Tree]:
    """Yield each accepted tree of size ``<= max_size`` once, ordered by
    (size, ordered canonical code)."""
    if max_size > size_cap:
        raise CapExceeded("size_cap", f"enumeration up to size {max_size} > cap {size_cap}")
    if max_size < 1:
        return
    table = trees_by_state(a, max_size)
    for size in range(1, max_size + 1):
        yield from sorted(table[a.initial][size], key=lambda t: canonical_code(t).code)


# -- determinization -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DetBottomUpTa:
    """Deterministic bottom-up automaton over subsets of NFTA states.

    Trees reaching no transition (or the empty subset) fall into an implicit
    sink that is never materialized.
    """

    states: tuple[frozenset, ...]
    transitions: dict  # (label, tuple of state indices) -> state index
    accepting: frozenset  # of state indices
    alphabet: frozenset

    def evaluate(self, t: Tree):
        """Index of the state ``t`` evaluates to, or ``None`` for the sink."""
        results: list = []
        stack = [(t, False)]
        while stack:
            node, expanded = stack.pop()
            if not expanded:
                stack.append((node, True))
                stack.extend((c, False) for c in reversed(node.children))
                continue
            n = len(node.children)
            kids = tuple(results[len(results) - n:]) if n else ()
            if n:
                del results[len(results) - n:]
            if None in kids:
                results.append(None)
            else:
                results.append(self.transitions.get((node.label, kids)))
        return results[0]

    def accepts(self, t: Tree) -> bool:
        return self.evaluate(t) in self.accepting


def determinize(a: Nfta, state_cap: int = DEFAULT_STATE_CAP) -> DetBottomUpTa:
    """Subset construction on the bottom-up reading of ``a``.

    Only reachable non-empty subsets are built.  Raises :class:`CapExceeded`
    when more than ``state_cap`` subsets appear.
    """
    index = a.by_label_arity()
    states: list[frozenset] = []
    ids: dict[frozenset, int] = {}
    containing = defaultdict(list)  # NFTA state -> ids of subsets holding it
    trans: dict = {}

    def intern(subset):
        if subset not in ids:
            if len(states) >= state_cap:
                raise CapExceeded("state_cap", f"determinization needs more than {state_cap} subsets")
            ids[subset] = len(states)
            for q in subset:
                containing[q].append(len(states))
            states.append(subset)
        return ids[subset]

    def target(kid_ids, rules):
        return frozenset(q for q, qs in rules
                         if all(qi in states[k] for qi, k in zip(qs, kid_ids)))

    for (label, arity), rules in sorted(index.items()):
        if arity == 0:
            trans[label, ()] = intern(frozenset(q for q, _ in rules))

    # Each round only looks at child tuples that use a subset created in the
    # previous round, so no tuple is examined twice.
    done = 0
    while done < len(states):
        fresh, done = done, len(states)
        for (label, arity), rules in sorted(index.items()):
            if arity == 0:
                continue
            for _, qs in rules:
                for kid_ids in _fresh_tuples([containing[q] for q in qs], fresh, done):
                    key = (label, kid_ids)
                    if key not in trans:
                        trans[key] = intern(target(kid_ids, rules))
    accepting = frozenset(i for i, s in enumerate(states) if a.initial in s)
    return DetBottomUpTa(tuple(states), trans, accepting, a.alphabet)


def _fresh_tuples(candidates, fresh, limit):
    """Products of ``candidates`` (ids below ``limit``) with at least one id
    ``>= fresh``; each tuple is produced once, keyed by its first fresh slot."""
    old = [[d for d in cs if d < fresh] for cs in candidates]
    new = [[d for d in cs if fresh <= d < limit] for cs in candidates]
    both = [[d for d in cs if d < limit] for cs in candidates]
    for p in range(len(candidates)):
        if not new[p]:
            continue
        yield from itertools.product(*old[:p], new[p], *both[p + 1:])


# -- counting ----------------------------------------------------------------------

def count_by_size(det: DetBottomUpTa, n: int) -> list[int]:
    """``out[s]`` = number of accepted trees of size ``s`` for ``s = 0..n``.

    ``c[d][s]`` counts trees of size ``s`` evaluating to det-state ``d``.  Each
    transition keeps prefix convolutions of its children's count vectors,
    extended by one entry per size step.
    """
    nstates = len(det.states)
    c = [[0] * (n + 1) for _ in range(nstates)]
    rules = sorted(det.transitions.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    # prefix[j][t]: ways to fill the first j children with total size t
    prefixes = [[[1] + [0] * n] + [[0] * (n + 1) for _ in kids] for (_, kids), _ in rules]
    for size in range(1, n + 1):
        t = size - 1
        for (key, target), pre in zip(rules, prefixes):
            kids = key[1]
            for j, d in enumerate(kids, start=1):
                cd, prev = c[d], pre[j - 1]
                pre[j][t] = sum(cd[u] * prev[t - u] for u in range(1, t + 1) if cd[u] and prev[t - u])
            c[target][size] += pre[len(kids)][t]
    return [sum(c[d][s] for d in det.accepting) for s in range(n + 1)]


def count_exact(a: Nfta, n: int, cumulative: bool = False,
                state_cap: int = DEFAULT_STATE_CAP) -> int:
    """Number of trees of size ``n`` accepted by ``a``, or of size at most
    ``n`` when ``cumulative``.

    Trees are non-empty, so size 0 always counts 0.  Counts are exact
    Python integers.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    per_size = count_by_size(determinize(a, state_cap), n)
    return sum(per_size) if cumulative else per_size[n]


def count_by_enumeration(a: Nfta, n: int, cumulative: bool = False,
                         size_cap: int = DEFAULT_SIZE_CAP) -> int:
    """Same quantity as :func:`count_exact`, by listing the trees."""
    if n < 1:
        return 0
    trees = enumerate_accepted(a, n, size_cap)
    if cumulative:
        return sum(1 for _ in trees)
    return sum(1 for t in trees if sum(1 for _ in t.nodes()) == n)
