"""Tokenizer shared by the tree, machine and NFTA text formats.

Words are maximal runs of characters that are neither whitespace, a
punctuation character nor a double quote.  Quoted strings use JSON escapes.
"""
import json
import re
from dataclasses import dataclass

from .errors import ParseError

_BARE = re.compile(r'[^\s(),"]+')


@dataclass(frozen=True)
class Token:
    kind: str  # "word", "string", "punct", "eof"
    value: str
    line: int
    column: int


def tokenize(text, punct="(),", error=ParseError, line=1):
    """Split ``text`` into tokens; ``line`` is the number of its first line."""
    tokens = []
    i, col = 0, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in punct:
            tokens.append(Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise error("newline in quoted string", line, col)
                j += 2 if text[j] == "\\" else 1
            if j >= n:
                raise error("unterminated quoted string", line, col)
            raw = text[i:j + 1]
            try:
                value = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise error(f"bad escape in quoted string: {exc.msg}", line, col) from None
            tokens.append(Token("string", value, line, col))
            col += j + 1 - i
            i = j + 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in punct and text[j] != '"':
            j += 1
        tokens.append(Token("word", text[i:j], line, col))
        col += j - i
        i = j
    tokens.append(Token("eof", "", line, col))
    return tokens


def quote(text):
    """Render ``text`` bare when that is unambiguous, quoted otherwise."""
    if _BARE.fullmatch(text):
        return text
    return json.dumps(text, ensure_ascii=False)


class TokenStream:
    """Cursor over a token list with small expectation helpers."""

    def __init__(self, tokens, error=ParseError):
        self.tokens = tokens
        self.pos = 0
        self.error = error

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, value):
        tok = self.peek()
        return tok.kind == "punct" and tok.value == value

    def expect(self, value):
        tok = self.next()
        if tok.kind != "punct" or tok.value != value:
            found = "end of input" if tok.kind == "eof" else repr(tok.value)
            raise self.error(f"expected {value!r}, found {found}", tok.line, tok.column)
        return tok

    def text(self, what="name"):
        tok = self.next()
        if tok.kind not in ("word", "string"):
            found = "end of input" if tok.kind == "eof" else repr(tok.value)
            raise self.error(f"expected {what}, found {found}", tok.line, tok.column)
        return tok.value
