"""Seifert presentation data: validation, parsing, Euler characteristic and relators."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import UnknownSymbol, ValidationError, WordSyntaxError
from .words import Word, commutator


class SeifertType(str, Enum):
    O1 = "o1"
    O2 = "o2"
    N1 = "n1"
    N2 = "n2"
    N3 = "n3"
    N4 = "n4"

    @property
    def orientable(self) -> bool:
        return self.value[0] == "o"

    def epsilons(self, g: int) -> tuple[int, ...]:
        """Signs e_1..e_g with which u_i, v_i (or v_i) act on h."""
        if self is SeifertType.O1 or self is SeifertType.N1:
            return (1,) * g
        if self is SeifertType.O2 or self is SeifertType.N2:
            return (-1,) * g
        plus = 1 if self is SeifertType.N3 else 2
        return tuple(1 if i < plus else -1 for i in range(g))


class Family(str, Enum):
    O1_1 = "O1_1"
    O2_1 = "O2_1"
    O1_2222 = "O1_2222"
    O1_333 = "O1_333"
    O1_244 = "O1_244"
    O1_236 = "O1_236"
    N_2 = "N_2"
    N_122 = "N_122"
    NONE = "NONE"


@dataclass(frozen=True)
class Violation:
    kind: str  # NotCoprime, BetaOutOfRange, BOutOfRange, GenusTooSmall, AlphaOutOfRange
    field: str
    rule: str

    def __str__(self):
        return f"{self.kind} ({self.field}): {self.rule}"


@dataclass(frozen=True)
class SeifertPresentation:
    stype: SeifertType
    g: int
    fibers: tuple[tuple[int, int], ...]
    b: int

    def __post_init__(self):
        object.__setattr__(self, "stype", SeifertType(self.stype))
        object.__setattr__(self, "fibers", tuple((int(a), int(c)) for a, c in self.fibers))

    @property
    def r(self) -> int:
        return len(self.fibers)

    @property
    def alphas(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.fibers)

    @property
    def betas(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.fibers)

    def generators(self) -> list[str]:
        gens = []
        if self.stype.orientable:
            gens += [f"u{i}" for i in range(1, self.g + 1)]
        gens += [f"v{i}" for i in range(1, self.g + 1)]
        gens += [f"q{j}" for j in range(1, self.r + 1)]
        return gens + ["h"]

    def epsilon(self, symbol: str) -> int:
        """Action of a generator on h: symbol h symbol^-1 = h^epsilon."""
        if symbol == "h" or (symbol[0] == "q" and 1 <= int(symbol[1:]) <= self.r):
            return 1
        if symbol[0] in "uv" and symbol[1:].isdigit():
            i = int(symbol[1:])
            if 1 <= i <= self.g and (symbol[0] == "v" or self.stype.orientable):
                return self.stype.epsilons(self.g)[i - 1]
        raise UnknownSymbol(f"{symbol!r} is not a generator of this presentation")

    def __str__(self):
        return format_presentation(self)


def validate(p: SeifertPresentation) -> list[Violation]:
    """Return the list of violated presentation rules (empty when valid)."""
    out: list[Violation] = []
    t = p.stype
    if p.g < 0:
        out.append(Violation("GenusTooSmall", "g", "genus must be non-negative"))
    if t is SeifertType.O2 and p.g < 1:
        out.append(Violation("GenusTooSmall", "g", "type o2 requires g > 0"))
    if not t.orientable:
        need = {SeifertType.N3: 2, SeifertType.N4: 3}.get(t, 1)
        if p.g < need:
            out.append(Violation("GenusTooSmall", "g", f"type {t.value} requires g >= {need}"))
    full_range = t in (SeifertType.O1, SeifertType.N2)
    for j, (a, c) in enumerate(p.fibers, 1):
        if a < 1:
            out.append(Violation("AlphaOutOfRange", f"alpha{j}", "alpha must be >= 1"))
            continue
        if full_range:
            if not 0 < c < a:
                out.append(Violation("BetaOutOfRange", f"beta{j}", f"need 0 < beta < alpha for type {t.value}"))
        elif not (0 < c and 2 * c <= a):
            out.append(Violation("BetaOutOfRange", f"beta{j}", f"need 0 < beta <= alpha/2 for type {t.value}"))
        if gcd(a, c) != 1:
            out.append(Violation("NotCoprime", f"fiber{j}", f"gcd(alpha, beta) = {gcd(a, c)} != 1"))
    if not full_range:
        if p.b not in (0, 1):
            out.append(Violation("BOutOfRange", "b", f"b must be 0 or 1 for type {t.value}"))
        elif p.b == 1 and 2 in p.alphas:
            out.append(Violation("BOutOfRange", "b", "b must be 0 when some alpha equals 2"))
    return out


def check(p: SeifertPresentation) -> SeifertPresentation:
    errs = validate(p)
    if errs:
        raise ValidationError(errs)
    return p


def chi(p: SeifertPresentation) -> Fraction:
    """Orbifold Euler characteristic of the base."""
    cone = sum((1 - Fraction(1, a) for a in p.alphas), Fraction(0))
    genus_term = 2 * p.g if p.stype.orientable else p.g
    return 2 - (genus_term + cone)


def family_id(p: SeifertPresentation) -> Family:
    if chi(p) != 0:
        return Family.NONE
    t, alphas = p.stype, tuple(sorted(p.alphas))
    if t is SeifertType.O1 and p.g == 0:
        return {
            (2, 2, 2, 2): Family.O1_2222,
            (3, 3, 3): Family.O1_333,
            (2, 4, 4): Family.O1_244,
            (2, 3, 6): Family.O1_236,
        }.get(alphas, Family.NONE)
    if p.g == 1 and not alphas:
        return {SeifertType.O1: Family.O1_1, SeifertType.O2: Family.O2_1}.get(t, Family.NONE)
    if t in (SeifertType.N1, SeifertType.N2, SeifertType.N3) and p.g == 2 and not alphas:
        return Family.N_2
    if t in (SeifertType.N1, SeifertType.N2) and p.g == 1 and alphas == (2, 2):
        return Family.N_122
    return Family.NONE


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __str__(self):
        return "< " + ", ".join(self.generators) + " | " + ", ".join(str(r) for r in self.relators) + " >"


def full_presentation(p: SeifertPresentation) -> FinitePresentation:
    h = Word.gen("h")
    rels: list[Word] = []
    eps = p.stype.epsilons(p.g)
    handles = ("u", "v") if p.stype.orientable else ("v",)
    for i in range(1, p.g + 1):
        for x in handles:
            g = Word.gen(f"{x}{i}")
            rels.append(g * h * g.inverse() * Word.gen("h", -eps[i - 1]))
    qs = [Word.gen(f"q{j}") for j in range(1, p.r + 1)]
    for q in qs:
        rels.append(commutator(q, h))
    for j, (a, c) in enumerate(p.fibers, 1):
        rels.append(Word.gen(f"q{j}", a) * Word.gen("h", c))
    surface = Word()
    for q in qs:
        surface = surface * q
    for i in range(1, p.g + 1):
        v = Word.gen(f"v{i}")
        if p.stype.orientable:
            surface = surface * commutator(Word.gen(f"u{i}"), v)
        else:
            surface = surface * v * v
    rels.append((surface * Word.gen("h", -p.b)).reduced())
    return FinitePresentation(tuple(p.generators()), tuple(rels))


_FIELD_RE = re.compile(r"\s*(type|g|b|fibers)\s*=\s*")
_FIBER_RE = re.compile(r"\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*")


def parse_presentation(text: str) -> SeifertPresentation:
    """Read the one-line text form, or its JSON mirror."""
    text = text.strip()
    if text.startswith("{"):
        try:
            d = json.loads(text)
            return SeifertPresentation(SeifertType(d["type"]), int(d["g"]),
                                       tuple(tuple(f) for f in d["fibers"]), int(d["b"]))
        except (ValueError, KeyError, TypeError) as exc:
            raise WordSyntaxError(f"bad JSON presentation ({exc})", text, 0) from None
    fields: dict[str, object] = {}
    pos = 0
    while pos < len(text):
        m = _FIELD_RE.match(text, pos)
        if not m:
            raise WordSyntaxError("expected type=, g=, b= or fibers=", text, pos)
        key, pos = m.group(1), m.end()
        if key in fields:
            raise WordSyntaxError(f"duplicate field {key}", text, m.start(1))
        if key == "fibers":
            if not text.startswith("[", pos):
                raise WordSyntaxError("expected '['", text, pos)
            end = text.find("]", pos)
            if end < 0:
                raise WordSyntaxError("missing ']'", text, pos)
            body, fibers, at = text[pos + 1:end], [], 0
            while body[at:].strip():
                fm = _FIBER_RE.match(body, at)
                if not fm:
                    raise WordSyntaxError("expected (alpha,beta)", text, pos + 1 + at)
                fibers.append((int(fm.group(1)), int(fm.group(2))))
                at = fm.end()
                if body[at:].strip():
                    if body[at] != ",":
                        raise WordSyntaxError("expected ','", text, pos + 1 + at)
                    at += 1
            fields[key] = tuple(fibers)
            pos = end + 1
        else:
            vm = re.compile(r"(o1|o2|n1|n2|n3|n4)\b" if key == "type" else r"-?\d+").match(text, pos)
            if not vm:
                raise WordSyntaxError(f"bad value for {key}", text, pos)
            fields[key] = vm.group(0)
            pos = vm.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    missing = [k for k in ("type", "g", "b", "fibers") if k not in fields]
    if missing:
        raise WordSyntaxError(f"missing field(s) {', '.join(missing)}", text, len(text))
    return SeifertPresentation(SeifertType(fields["type"]), int(fields["g"]), fields["fibers"], int(fields["b"]))


def format_presentation(p: SeifertPresentation) -> str:
    fibers = ",".join(f"({a},{c})" for a, c in p.fibers)
    return f"type={p.stype.value} g={p.g} b={p.b} fibers=[{fibers}]"


def presentation_json(p: SeifertPresentation) -> dict:
    return {"type": p.stype.value, "g": p.g, "b": p.b, "fibers": [list(f) for f in p.fibers]}
