"""Labeled rooted trees: text format, size, k-tree check and canonical codes.

Text grammar::

    tree  := label | label "(" tree ("," tree)* ")"
    label := bare-word | "quoted string"

Labels are arbitrary strings; the empty label is written ``""``.  Whitespace
and newlines between tokens are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from ._lexer import TokenStream, quote, tokenize
from .errors import TreeSyntaxError

Mode = Literal["ordered", "unordered"]
MODES = ("ordered", "unordered")


@dataclass(frozen=True)
class Tree:
    """An immutable node: a string label plus an ordered tuple of children."""

    label: str
    children: tuple[Tree, ...] = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    def __str__(self):
        return serialize_tree(self)

    def nodes(self) -> Iterator[Tree]:
        """Preorder traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


def leaf(label: str) -> Tree:
    return Tree(label, ())


# -- text format -------------------------------------------------------------

def parse_tree(text: str) -> Tree:
    """Parse the tree text format.  Raises :class:`TreeSyntaxError`."""
    tokens = tokenize(text, punct="(),", error=TreeSyntaxError)
    stream = TokenStream(tokens, error=TreeSyntaxError)
    if stream.peek().kind == "eof":
        raise TreeSyntaxError("empty input", 1, 1)
    tree = _parse_node(stream)
    tok = stream.peek()
    if tok.kind != "eof":
        if tok.value == ")":
            raise TreeSyntaxError("unbalanced parentheses: unexpected ')'", tok.line, tok.column)
        raise TreeSyntaxError(f"trailing input {tok.value!r}", tok.line, tok.column)
    return tree


def _parse_node(stream: TokenStream) -> Tree:
    # Iterative so that deep chains do not hit the recursion limit.
    root_label = stream.text("label")
    if not stream.at("("):
        return Tree(root_label)
    # Each frame: (label, collected children, token of the opening paren).
    frames = [(root_label, [], stream.next())]
    while True:
        label = stream.text("label")
        if stream.at("("):
            frames.append((label, [], stream.next()))
            continue
        node = Tree(label)
        while True:
            frames[-1][1].append(node)
            tok = stream.next()
            if tok.kind == "punct" and tok.value == ",":
                break
            if tok.kind == "punct" and tok.value == ")":
                done_label, kids, _ = frames.pop()
                node = Tree(done_label, tuple(kids))
                if not frames:
                    return node
                continue
            if tok.kind == "eof":
                opener = frames[-1][2]
                raise TreeSyntaxError(
                    "unbalanced parentheses: '(' is never closed", opener.line, opener.column
                )
            raise TreeSyntaxError(f"expected ',' or ')', found {tok.value!r}", tok.line, tok.column)


def serialize_tree(t: Tree) -> str:
    parts: list[str] = []
    stack: list[object] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        parts.append(quote(item.label))
        if item.children:
            parts.append("(")
            stack.append(")")
            for i, child in enumerate(reversed(item.children)):
                stack.append(child)
                if i < len(item.children) - 1:
                    stack.append(",")
    return "".join(parts)


# -- measures ----------------------------------------------------------------

def tree_size(t: Tree) -> int:
    return sum(1 for _ in t.nodes())


def tree_depth(t: Tree) -> int:
    """Number of edges on the longest root-to-leaf path."""
    best = 0
    stack = [(t, 0)]
    while stack:
        node, d = stack.pop()
        best = max(best, d)
        stack.extend((c, d + 1) for c in node.children)
    return best


def max_arity(t: Tree) -> int:
    return max(len(n.children) for n in t.nodes())


def validate_k_tree(t: Tree, k: int) -> bool:
    """True iff every node has at most ``k`` children.

    Ordered child sequences are prefix- and left-sibling-closed by
    construction, so the arity bound is the only thing left to check.
    """
    if k < 1:
        raise ValueError("k must be positive")
    return max_arity(t) <= k


def positions(t: Tree) -> dict[tuple[int, ...], str]:
    """The tree as a map from Dewey positions in [k]* (1-based) to labels."""
    out = {}
    stack = [((), t)]
    while stack:
        pos, node = stack.pop()
        out[pos] = node.label
        for i, child in enumerate(node.children, start=1):
            stack.append((pos + (i,), child))
    return out


# -- canonical codes ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Byte encoding of a tree; equal codes mean equal (or isomorphic) trees."""

    code: bytes
    mode: str

    def __str__(self):
        return self.code.decode("utf-8", errors="backslashreplace")


def _label_bytes(label: str) -> bytes:
    raw = label.encode("utf-8")
    return str(len(raw)).encode("ascii") + b":" + raw


def _postorder(t: Tree, combine):
    """Fold ``combine(node, child_results)`` bottom-up without recursion.

    Shared subtree objects are fine: results live on a stack, not in a map.
    """
    results: list = []
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
        results.append(combine(node, kids))
    return results[0]


def _encode(t: Tree, sort_children: bool) -> bytes:
    # Each node is "(" <len>:<label> <child codes> ")", which is self-delimiting.
    def combine(node, kids):
        if sort_children:
            kids = sorted(kids)
        return b"(" + _label_bytes(node.label) + b"".join(kids) + b")"

    return _postorder(t, combine)


def canonical_code(t: Tree, mode: Mode = "ordered") -> CanonicalCode:
    """Injective encoding of ``t``.

    With ``mode="unordered"`` child codes are sorted bytewise before
    concatenation, so trees that differ only in sibling order share a code.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    return CanonicalCode(_encode(t, mode == "unordered"), mode)


def canonical_form(t: Tree) -> Tree:
    """Representative of the unordered class of ``t``: siblings sorted by code."""
    def combine(node, kids):
        kids = sorted(kids, key=lambda p: p[1])
        code = b"(" + _label_bytes(node.label) + b"".join(k[1] for k in kids) + b")"
        return Tree(node.label, tuple(k[0] for k in kids)), code

    return _postorder(t, combine)[0]
