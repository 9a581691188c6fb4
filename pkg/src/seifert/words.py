"""Free words over presentation generators and equation variables."""
from __future__ import annotations

import re
from typing import Iterable, NamedTuple

from .errors import UnknownSymbol, WordSyntaxError

GENERATOR_RE = re.compile(r"(?:[uvq][1-9][0-9]*|h)\Z")
VARIABLE_RE = re.compile(r"[A-Z][A-Za-z0-9]*\Z")


class Letter(NamedTuple):
    symbol: str
    exponent: int


def is_variable(symbol: str) -> bool:
    return symbol[:1].isupper()


class Word:
    """An immutable sequence of letters, not necessarily reduced."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable = ()):
        object.__setattr__(self, "letters", tuple(Letter(s, int(e)) for s, e in letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __reduce__(self):
        return (Word, (self.letters,))

    @classmethod
    def gen(cls, symbol: str, exponent: int = 1) -> "Word":
        return cls(((symbol, exponent),)) if exponent else cls()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def inverse(self) -> "Word":
        return Word((s, -e) for s, e in reversed(self.letters))

    def reduced(self) -> "Word":
        return free_reduce(self)

    def symbols(self) -> list[str]:
        seen: dict[str, None] = {}
        for s, _ in self.letters:
            seen.setdefault(s, None)
        return list(seen)

    def variables(self) -> list[str]:
        return [s for s in self.symbols() if is_variable(s)]

    def substitute(self, mapping: dict) -> "Word":
        """Replace symbols by words (symbols not in ``mapping`` are kept)."""
        out: list = []
        for s, e in self.letters:
            if s in mapping:
                out.extend((mapping[s] ** e).letters)
            else:
                out.append((s, e))
        return Word(out)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


def free_reduce(w: Word) -> Word:
    stack: list[list] = []
    for s, e in w.letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == s:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([s, e])
    return Word(stack)


def expsum(w: Word, symbol: str) -> int:
    return sum(e for s, e in w.letters if s == symbol)


def h_action(p, w: Word) -> int:
    """Sign of w h w^-1 relative to h, via the parity of h-inverting letters."""
    sign = 1
    for s, e in w.letters:
        if is_variable(s):
            raise UnknownSymbol(f"variable {s} has no action on h")
        if p.epsilon(s) == -1 and e % 2:
            sign = -sign
    return sign


def conjugate_h(p, w: Word, k: int = 1) -> int:
    """Exponent m with w h^k w^-1 = h^m, pushing h through w one letter at a time."""
    for s, e in reversed(w.letters):
        eps = p.epsilon(s)
        for _ in range(abs(e)):
            k *= eps
    return k


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<open>\()|(?P<close>\))"
                       r"|(?P<star>\*)|(?P<caret>\^)|(?P<int>[+-]?\d+))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise WordSyntaxError("unexpected character", text, len(text) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _WordParser:
    def __init__(self, text, generators, allow_zero):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.generators = generators
        self.allow_zero = allow_zero

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise WordSyntaxError(msg, self.text, tok[2])

    def word(self, depth=0) -> list:
        letters: list = []
        expect_item = True
        after_star = False
        while True:
            kind, val, pos = self.peek()
            if kind == "end" or kind == "close":
                if depth == 0 and kind == "close":
                    self.fail("unbalanced ')'")
                if depth > 0 and kind == "end":
                    self.fail("missing ')'")
                if after_star:
                    self.fail("dangling '*'")
                return letters
            if kind == "star":
                if expect_item:
                    self.fail("misplaced '*'")
                self.take()
                expect_item = after_star = True
                continue
            letters.extend(self.item(depth))
            expect_item = after_star = False

    def exponent(self):
        if self.peek()[0] != "caret":
            return 1
        self.take()
        kind, val, pos = self.take()
        if kind != "int":
            self.fail("expected integer exponent", (kind, val, pos))
        n = int(val)
        if n == 0 and not self.allow_zero:
            self.fail("zero exponent", (kind, val, pos))
        return n

    def item(self, depth) -> list:
        kind, val, pos = self.take()
        if kind == "open":
            inner = self.word(depth + 1)
            self.take()  # ')'
            n = self.exponent()
            return list((Word(inner) ** n).letters)
        if kind == "int" and val == "1":
            self.exponent()
            return []
        if kind != "name":
            self.fail("expected a generator or variable", (kind, val, pos))
        if VARIABLE_RE.match(val):
            pass
        elif GENERATOR_RE.match(val):
            if self.generators is not None and val not in self.generators:
                raise UnknownSymbol(f"unknown generator {val!r} at position {pos}")
        else:
            self.fail(f"bad symbol {val!r}", (kind, val, pos))
        n = self.exponent()
        return [(val, n)] if n else []


def parse_word(text: str, generators=None, allow_zero: bool = False) -> Word:
    """Parse a word such as ``"u1 v1^-2 h^3"`` or ``"(q3*q1)^2 q1"``.

    ``generators`` (optional) restricts the accepted generator names; the
    literal ``1`` denotes the empty word. With ``allow_zero`` a zero
    exponent is accepted and drops the factor, so canonical normal-form
    prints can be read back.
    """
    return Word(_WordParser(text, generators, allow_zero).word())
