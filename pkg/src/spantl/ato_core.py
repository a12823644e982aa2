"""Alternating Turing machines with output (ATOs).

A machine has a read-only input tape, a read-write working tape and a
write-only labeling tape.  Each configuration in a labeling state becomes
a node of the output tree, labeled with what the labeling tape holds; the
next step then starts the tape afresh.

Symbols are single characters.  The blank and the left marker are spelled
``_`` and ``>`` (the parser also accepts ``⊥`` and ``▷``).

Machine text format::

    # comment
    states: q0 qa qr
    alphabet: _ > a b
    init: q0
    accept: qa
    reject: qr
    existential: q0
    universal:
    labeling: q0
    bounds: max_nodes=16 tape_cap=4 k=1
    delta:
    (q0, >, >) -> (qa, 0, 0, >, "")
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from ._lexer import TokenStream, quote, tokenize
from .errors import IllegalInput, MachineSyntaxError, MachineValidationError, SpanTLError

BLANK = "_"
MARKER = ">"
_ALIASES = {"⊥": BLANK, "▷": MARKER}

SECTIONS = (
    "states", "alphabet", "init", "accept", "reject",
    "existential", "universal", "labeling", "bounds", "delta",
)
_HEADER = re.compile(r"^\s*(" + "|".join(SECTIONS) + r")\s*:(.*)$")


@dataclass(frozen=True)
class ResourceBounds:
    """Concrete per-run stand-ins for the well-behavedness promises.

    ``max_nodes`` caps computation size, ``tape_cap`` caps ``|y|`` and ``|z|``
    and ``k`` caps universal configurations on a labeled-free path.
    """

    max_nodes: int = 256
    tape_cap: int = 16
    k: int = 2

    def __post_init__(self):
        if self.max_nodes < 1 or self.tape_cap < 1 or self.k < 0:
            raise ValueError(f"invalid bounds {self}")

    @classmethod
    def parse(cls, text, base=None):
        """Read ``max_nodes=.. tape_cap=.. k=..`` (commas or spaces), over ``base``."""
        values = dict(vars(base)) if base is not None else {}
        for item in re.split(r"[,\s]+", text.strip()):
            if not item:
                continue
            key, sep, val = item.partition("=")
            key = key.strip()
            if not sep or key not in ("max_nodes", "tape_cap", "k"):
                raise ValueError(f"bad bounds entry {item!r}")
            try:
                values[key] = int(val)
            except ValueError:
                raise ValueError(f"bounds entry {item!r} is not an integer") from None
        return cls(**values)

    def __str__(self):
        return f"max_nodes={self.max_nodes} tape_cap={self.tape_cap} k={self.k}"


@dataclass(frozen=True, order=True)
class TransitionRule:
    next_state: str
    input_move: int
    work_move: int
    work_write: str
    label_emit: str

    def __str__(self):
        return (f"({quote(self.next_state)}, {self.input_move}, {self.work_move}, "
                f"{quote(self.work_write)}, {json.dumps(self.label_emit, ensure_ascii=False)})")


@dataclass(frozen=True, eq=False)
class AtoMachine:
    """States, alphabet, initial/accept/reject states, the existential,
    universal and labeling state sets, and the transition table.

    ``delta`` maps ``(state, input symbol, work symbol)`` to a tuple of rules
    in canonical (sorted, duplicate-free) order.
    """

    states: frozenset
    alphabet: frozenset
    init: str
    accept: str
    reject: str
    existential: frozenset
    universal: frozenset
    labeling: frozenset
    delta: Mapping[tuple[str, str, str], tuple[TransitionRule, ...]]
    bounds: ResourceBounds = field(default_factory=ResourceBounds)
    name: str = ""

    def __post_init__(self):
        for attr in ("states", "alphabet", "existential", "universal", "labeling"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        delta = {key: tuple(sorted(set(rules))) for key, rules in self.delta.items()}
        object.__setattr__(self, "delta", MappingProxyType(delta))

    def rules(self, state, in_sym, work_sym):
        return self.delta.get((state, in_sym, work_sym), ())

    def is_halting(self, state):
        return state == self.accept or state == self.reject

    def with_bounds(self, bounds):
        return AtoMachine(self.states, self.alphabet, self.init, self.accept, self.reject,
                          self.existential, self.universal, self.labeling, dict(self.delta),
                          bounds, self.name)


# -- text format -------------------------------------------------------------

def _symbol(text):
    return _ALIASES.get(text, text)


def parse_machine(text: str, validate: bool = True, name: str = "") -> AtoMachine:
    """Parse the machine text format.

    Syntax problems raise :class:`MachineSyntaxError`.  With ``validate`` the
    result is also checked by :func:`validate_machine` and a non-empty report
    raises :class:`MachineValidationError`.
    """
    seen = {}
    delta = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _HEADER.match(raw)
        if m:
            section, rest = m.group(1), m.group(2)
            if section in seen:
                raise MachineSyntaxError(f"duplicate section {section!r}", lineno, 1)
            col = m.start(2) + 1
            if section == "delta":
                seen[section] = True
                if rest.strip():
                    _parse_rule(rest, lineno, col, delta)
            elif section == "bounds":
                try:
                    seen[section] = ResourceBounds.parse(rest)
                except ValueError as exc:
                    raise MachineSyntaxError(str(exc), lineno, col) from None
            else:
                seen[section] = _parse_names(rest, lineno, col)
            continue
        if section == "delta":
            _parse_rule(raw, lineno, 1, delta)
        else:
            raise MachineSyntaxError(f"unexpected line {stripped!r}", lineno, 1)

    for required in ("states", "alphabet", "init", "accept", "reject"):
        if required not in seen:
            raise MachineSyntaxError(f"missing section {required!r}")
    singles = {}
    for key in ("init", "accept", "reject"):
        if len(seen[key]) != 1:
            raise MachineSyntaxError(f"section {key!r} needs exactly one state")
        singles[key] = seen[key][0]
    alphabet = [_symbol(s) for s in seen["alphabet"]]
    for sym in alphabet:
        if len(sym) != 1:
            raise MachineSyntaxError(f"alphabet symbol {sym!r} is not a single character")

    machine = AtoMachine(
        states=frozenset(seen["states"]),
        alphabet=frozenset(alphabet),
        init=singles["init"],
        accept=singles["accept"],
        reject=singles["reject"],
        existential=frozenset(seen.get("existential", ())),
        universal=frozenset(seen.get("universal", ())),
        labeling=frozenset(seen.get("labeling", ())),
        delta=delta,
        bounds=seen.get("bounds") or ResourceBounds(),
        name=name,
    )
    if validate:
        report = validate_machine(machine)
        if report:
            raise MachineValidationError(report)
    return machine


def _parse_names(rest, lineno, col):
    tokens = tokenize(rest, punct=",", error=MachineSyntaxError, line=lineno)
    names = []
    for tok in tokens:
        if tok.kind in ("word", "string"):
            names.append(tok.value)
    return names


def _parse_rule(line, lineno, col, delta):
    tokens = tokenize(line, punct="(),", error=MachineSyntaxError, line=lineno)
    ts = TokenStream(tokens, error=MachineSyntaxError)
    ts.expect("(")
    state = ts.text("state")
    ts.expect(",")
    in_sym = _symbol(ts.text("input symbol"))
    ts.expect(",")
    work_sym = _symbol(ts.text("work symbol"))
    ts.expect(")")
    arrow = ts.next()
    if arrow.value != "->":
        raise MachineSyntaxError("expected '->'", arrow.line, arrow.column)
    ts.expect("(")
    nxt = ts.text("state")
    moves = []
    for what in ("input move", "work move"):
        ts.expect(",")
        tok = ts.next()
        try:
            moves.append(int(tok.value))
        except ValueError:
            raise MachineSyntaxError(f"{what} must be an integer", tok.line, tok.column) from None
    ts.expect(",")
    write = _symbol(ts.text("write symbol"))
    ts.expect(",")
    tok = ts.next()
    if tok.kind != "string":
        raise MachineSyntaxError("label emit must be a quoted string", tok.line, tok.column)
    emit = "".join(_ALIASES.get(ch, ch) for ch in tok.value)
    ts.expect(")")
    end = ts.peek()
    if end.kind != "eof":
        raise MachineSyntaxError(f"trailing input {end.value!r}", end.line, end.column)
    for sym in (in_sym, work_sym, write):
        if len(sym) != 1:
            raise MachineSyntaxError(f"symbol {sym!r} is not a single character", lineno, col)
    delta.setdefault((state, in_sym, work_sym), []).append(
        TransitionRule(nxt, moves[0], moves[1], write, emit))


def serialize_machine(m: AtoMachine) -> str:
    def names(items):
        return " ".join(quote(s) for s in sorted(items))

    lines = [
        f"states: {names(m.states)}",
        f"alphabet: {names(m.alphabet)}",
        f"init: {quote(m.init)}",
        f"accept: {quote(m.accept)}",
        f"reject: {quote(m.reject)}",
        f"existential: {names(m.existential)}",
        f"universal: {names(m.universal)}",
        f"labeling: {names(m.labeling)}",
        f"bounds: {m.bounds}",
        "delta:",
    ]
    for (s, a, b), rules in sorted(m.delta.items()):
        for r in rules:
            lines.append(f"({quote(s)}, {quote(a)}, {quote(b)}) -> {r}")
    return "\n".join(lines) + "\n"


# -- validation ----------------------------------------------------------------

def validate_machine(m: AtoMachine) -> list[str]:
    """Return violations of the model's invariants; empty means valid.

    Each entry starts with a short kebab-case code, e.g. ``marker-underflow``.
    """
    out = []
    S = m.states
    for key in ("init", "accept", "reject"):
        if getattr(m, key) not in S:
            out.append(f"unknown-state: {key} state {getattr(m, key)!r} is not declared")
    if m.accept == m.reject:
        out.append(f"accept-is-reject: {m.accept!r}")
    for sym, code in ((BLANK, "missing-blank"), (MARKER, "missing-marker")):
        if sym not in m.alphabet:
            out.append(f"{code}: alphabet lacks {sym!r}")
    for attr in ("existential", "universal", "labeling"):
        extra = getattr(m, attr) - S
        if extra:
            out.append(f"unknown-state: {attr} lists undeclared {sorted(extra)}")
    both = m.existential & m.universal
    if both:
        out.append(f"partition-overlap: {sorted(both)} are both existential and universal")
    halting = {m.accept, m.reject}
    if (m.existential | m.universal) & halting:
        out.append(f"partition-halting: {sorted((m.existential | m.universal) & halting)} "
                   "must be neither existential nor universal")
    missing = S - halting - m.existential - m.universal
    if missing:
        out.append(f"partition-incomplete: {sorted(missing)} are neither existential nor universal")
    if m.init not in m.labeling:
        out.append(f"init-not-labeling: initial state {m.init!r} must be a labeling state")

    for (s, a, b), rules in sorted(m.delta.items()):
        where = f"delta({s}, {a}, {b})"
        if s not in S:
            out.append(f"unknown-state: {where} uses undeclared state {s!r}")
        if s in halting:
            out.append(f"delta-on-halting: {where} is defined on a halting state")
        for sym in (a, b):
            if sym not in m.alphabet:
                out.append(f"unknown-symbol: {where} reads {sym!r}")
        for r in rules:
            rw = f"{where} -> {r}"
            if r.next_state not in S:
                out.append(f"unknown-state: {rw} targets undeclared {r.next_state!r}")
            if r.input_move not in (-1, 0, 1) or r.work_move not in (-1, 0, 1):
                out.append(f"bad-move: {rw} moves must be -1, 0 or +1")
            if r.work_write not in m.alphabet:
                out.append(f"unknown-symbol: {rw} writes {r.work_write!r}")
            if BLANK in r.label_emit:
                out.append(f"emit-contains-blank: {rw}")
            if MARKER in r.label_emit:
                out.append(f"emit-contains-marker: {rw}")
            stray = set(r.label_emit) - m.alphabet
            if stray:
                out.append(f"unknown-symbol: {rw} emits {sorted(stray)}")
            if b == MARKER and r.work_write != MARKER:
                out.append(f"marker-overwrite: {rw} overwrites the left marker")
            if b != MARKER and r.work_write == MARKER:
                out.append(f"marker-write: {rw} writes the left marker")
            if b == MARKER and r.work_move == -1:
                out.append(f"marker-underflow: {rw} moves the work head left of the marker")
            if a == MARKER and r.input_move == -1:
                out.append(f"marker-underflow: {rw} moves the input head left of the marker")
    return out


# -- configurations --------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Configuration:
    """State, work tape, labeling tape and the two head positions (1-based).

    The marked input is not stored: it is shared by the whole run.

    Field order is the canonical configuration order: comparisons are
    lexicographic over (state, work tape, labeling tape, heads), and Python
    string comparison coincides with bytewise UTF-8 order.
    """

    state: str
    work: str
    label: str
    in_head: int
    work_head: int

    def encode(self) -> str:
        return f"{self.state}[{self.work}|{self.label}|{self.in_head}|{self.work_head}]"

    def __str__(self):
        return self.encode()


def check_input(m: AtoMachine, w: str) -> None:
    for i, ch in enumerate(w):
        if ch in (BLANK, MARKER, "⊥", "▷"):
            raise IllegalInput(f"input symbol {ch!r} at position {i} is reserved")
        if ch not in m.alphabet:
            raise IllegalInput(f"input symbol {ch!r} at position {i} is not in the alphabet")


def initial_configuration(m: AtoMachine, w: str) -> Configuration:
    check_input(m, w)
    return Configuration(m.init, MARKER, "", 1, 1)


def input_tape(w: str) -> str:
    return MARKER + w


def _cell(tape: str, head: int) -> str:
    return tape[head - 1] if head <= len(tape) else BLANK


def successors(m: AtoMachine, w: str, c: Configuration) -> list[Configuration]:
    """One step of ``→_M`` from ``c``, in canonical configuration order.

    The work cell under the head is overwritten (extending the written
    prefix with blanks when the head is past it).  The labeling tape becomes
    the emitted string when ``c`` is labeling, and grows by it otherwise.
    """
    if m.is_halting(c.state):
        raise SpanTLError(f"successors of halting configuration {c}")
    x = input_tape(w)
    alpha = _cell(x, c.in_head)
    beta = _cell(c.work, c.work_head)
    labeling = c.state in m.labeling
    out = set()
    for r in m.rules(c.state, alpha, beta):
        y = c.work
        if c.work_head > len(y):
            y = y + BLANK * (c.work_head - len(y))
        y = y[:c.work_head - 1] + r.work_write + y[c.work_head:]
        hx = c.in_head + r.input_move
        hy = c.work_head + r.work_move
        if hx < 1 or hy < 1:
            raise SpanTLError(f"head moves left of position 1 from {c} via {r}")
        z = r.label_emit if labeling else c.label + r.label_emit
        out.add(Configuration(r.next_state, y, z, hx, hy))
    return sorted(out)


def classify(m: AtoMachine, c: Configuration) -> tuple[str, str]:
    """Return (``accepting``|``rejecting``|``existential``|``universal``,
    ``labeling``|``non-labeling``) for ``c``'s state."""
    s = c.state if isinstance(c, Configuration) else c
    if s not in m.states:
        raise SpanTLError(f"unknown state {s!r}")
    if s == m.accept:
        kind = "accepting"
    elif s == m.reject:
        kind = "rejecting"
    elif s in m.existential:
        kind = "existential"
    elif s in m.universal:
        kind = "universal"
    else:
        raise SpanTLError(f"state {s!r} is in no class")
    return kind, "labeling" if s in m.labeling else "non-labeling"
