"""Compile integer polynomial systems into equation systems over a chi = 0 group.

Integers are carried by powers of h. Addition is multiplication of carriers;
a product U*V = W is enforced through the commutator law
[x^u, y^v] = h^(c u v) of the witness pair.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .classify import DiophWitness
from .equations import (Assignment, Equation, EquationSystem, SquaresOf, bounded_solve,
                        evaluate)
from .errors import CarrierNotInH, NotASolution, WordSyntaxError, ZeroC
from .words import Word, commutator

Monomial = tuple  # sorted tuple of (variable, exponent)


# ---------------------------------------------------------------- polynomials
class Poly:
    """Multivariate integer polynomial as a map monomial -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, n: int) -> "Poly":
        return cls({(): n})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                exps = dict(m1)
                for v, e in m2:
                    exps[v] = exps.get(v, 0) + e
                m = tuple(sorted(exps.items()))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    def __pow__(self, n: int):
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, sigma: dict) -> int:
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= sigma[v] ** e
            total += t
        return total

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def ordered_terms(self, order: list) -> list:
        """Non-constant terms by decreasing degree, then lexicographically by exponent vector."""
        rank = {v: n for n, v in enumerate(order)}

        def key(item):
            m, _ = item
            vec = [0] * len(order)
            for v, e in m:
                vec[rank[v]] = e
            return (-sum(vec), [-x for x in vec])

        return sorted(((m, c) for m, c in self.terms.items() if m), key=key)

    def format(self, order: Optional[list] = None) -> str:
        order = order or sorted(self.variables())
        parts = []
        for m, c in self.ordered_terms(order) + ([((), self.terms[()])] if () in self.terms else []):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r})"


@dataclass
class PolySystem:
    polynomials: list
    variables: list

    def solves(self, sigma: dict) -> bool:
        return all(p.evaluate(sigma) == 0 for p in self.polynomials)

    def __str__(self):
        return "; ".join(f"{p.format(self.variables)} = 0" for p in self.polynomials)


_POLY_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Z][A-Za-z0-9]*)|(?P<op>[-+*^()=]))")


class _PolyParser:
    def __init__(self, text: str, offset: int, full: str, order: list):
        self.toks = []
        pos = 0
        while True:
            m = _POLY_TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise WordSyntaxError("unexpected character in polynomial", full, offset + pos)
                break
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), offset + m.start(kind)))
            pos = m.end()
        self.toks.append(("end", "", offset + len(text)))
        self.i = 0
        self.full = full
        self.order = order

    def peek(self):
        return self.toks[self.i]

    def take(self):
        self.i += 1
        return self.toks[self.i - 1]

    def fail(self, msg):
        raise WordSyntaxError(msg, self.full, self.peek()[2])

    def equation(self) -> Poly:
        left = self.expr()
        if self.peek()[1] != "=":
            self.fail("expected '='")
        self.take()
        right = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return left - right

    def expr(self) -> Poly:
        out = self.signed_term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def signed_term(self) -> Poly:
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            return -t if op == "-" else t
        return self.term()

    def term(self) -> Poly:
        out = self.power()
        while self.peek()[1] == "*":
            self.take()
            out = out * self.power()
        return out

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "num":
                self.fail("expected a non-negative integer exponent")
            self.take()
            base = base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            return Poly.const(int(val))
        if kind == "var":
            self.take()
            if val not in self.order:
                self.order.append(val)
            return Poly.var(val)
        if val == "(":
            self.take()
            inner = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        if val == "-":
            self.take()
            return -self.power()
        self.fail("expected a number, variable or '('")


def parse_poly(text: str) -> PolySystem:
    """Parse ``poly = poly`` equations separated by newlines or ``;``."""
    polys, order = [], []
    offset = 0
    for chunk in re.split(r"(;|\n)", text):
        if chunk in (";", "\n"):
            offset += 1
            continue
        if chunk.strip() and not chunk.strip().startswith("#"):
            polys.append(_PolyParser(chunk, offset, text, order).equation())
        offset += len(chunk)
    return PolySystem(polys, order)


# ---------------------------------------------------------------- flattening
@dataclass(frozen=True)
class Constraint:
    kind: str  # ADD, MUL or CONST
    args: tuple

    def holds(self, s: dict) -> bool:
        if self.kind == "ADD":
            u, v, w = self.args
            return s[u] + s[v] == s[w]
        if self.kind == "MUL":
            u, v, w = self.args
            return s[u] * s[v] == s[w]
        u, n = self.args
        return s[u] == n

    def __str__(self):
        return f"{self.kind}({', '.join(str(a) for a in self.args)})"


@dataclass
class AtomicSystem:
    constraints: list
    vars: list  # original variables first, then auxiliaries
    original: list

    def extend(self, sigma: dict) -> Optional[dict]:
        """Values of the auxiliaries forced by sigma, or None when a constraint fails."""
        s = {v: sigma[v] for v in self.original}
        for con in self.constraints:
            out = con.args[-1] if con.kind != "CONST" else con.args[0]
            if con.kind == "CONST":
                if out not in s:
                    s[out] = con.args[1]
            elif out not in s:
                u, v, _ = con.args
                s[out] = s[u] + s[v] if con.kind == "ADD" else s[u] * s[v]
            if not con.holds(s):
                return None
        return s

    def solves(self, s: dict) -> bool:
        return all(con.holds(s) for con in self.constraints)

    def __str__(self):
        return "{" + ", ".join(str(c) for c in self.constraints) + "}"


def flatten(ps: PolySystem) -> AtomicSystem:
    """Tseitin-style flattening into ADD, MUL and CONST constraints.

    Each monomial becomes a chain of MULs (shared between polynomials), a
    coefficient other than 1 becomes CONST plus MUL, the terms are summed by
    an ADD chain, and the sum is pinned to minus the constant term.
    """
    cons: list[Constraint] = []
    aux: list[str] = []
    mono_cache: dict = {}

    def fresh():
        name = f"t{len(aux) + 1}"
        aux.append(name)
        return name

    def monomial(m) -> str:
        if m in mono_cache:
            return mono_cache[m]
        factors = [v for v, e in m for _ in range(e)]
        cur = factors[0]
        for n, f in enumerate(factors[1:], 2):
            prefix = _prefix_monomial(factors[:n])
            if prefix in mono_cache:
                cur = mono_cache[prefix]
                continue
            t = fresh()
            cons.append(Constraint("MUL", (cur, f, t)))
            mono_cache[prefix] = t
            cur = t
        mono_cache[m] = cur
        return cur

    for p in ps.polynomials:
        if not p:
            continue
        const = p.terms.get((), 0)
        terms = p.ordered_terms(ps.variables)
        if not terms:
            t = fresh()
            cons.append(Constraint("CONST", (t, 0)))
            cons.append(Constraint("CONST", (t, const)))
            continue
        total = None
        for m, coef in terms:
            cur = monomial(m)
            if coef != 1:
                k = fresh()
                cons.append(Constraint("CONST", (k, coef)))
                t = fresh()
                cons.append(Constraint("MUL", (k, cur, t)))
                cur = t
            if total is None:
                total = cur
            else:
                t = fresh()
                cons.append(Constraint("ADD", (total, cur, t)))
                total = t
        cons.append(Constraint("CONST", (total, -const)))
    return AtomicSystem(cons, list(ps.variables) + aux, list(ps.variables))


def _prefix_monomial(factors) -> tuple:
    exps: dict = {}
    for f in factors:
        exps[f] = exps.get(f, 0) + 1
    return tuple(sorted(exps.items()))


# ---------------------------------------------------------------- compiling
@dataclass
class Gadget:
    u: str
    v: str
    w: str
    x_var: str
    y_var: str


@dataclass
class CompiledSystem:
    system: EquationSystem
    var_map: dict  # integer variable -> carrier
    aux_vars: list
    atomic: AtomicSystem
    witness: DiophWitness
    x: Word  # post-squaring pair and constant
    y: Word
    c: int
    Sx: object = None
    Sy: object = None
    gadgets: list = field(default_factory=list)

    def __str__(self):
        return str(self.system)


def carrier(name: str) -> str:
    return "C" + name


def _effective(w: DiophWitness):
    if w.needs_squaring:
        return ((w.x * w.x).reduced(), (w.y * w.y).reduced(), 4 * w.c,
                SquaresOf(w.Sx_membership, w.x), SquaresOf(w.Sy_membership, w.y))
    return w.x, w.y, w.c, w.Sx_membership, w.Sy_membership


def compile_system(atomic: AtomicSystem, w: DiophWitness) -> CompiledSystem:
    """Group equations whose solutions carry exactly the integer solutions of ``atomic``."""
    if w.c == 0:
        raise ZeroC("the witness constant c is 0; products cannot be encoded")
    x, y, c, Sx, Sy = _effective(w)
    cmap = {v: carrier(v) for v in atomic.vars}
    eqs: list[Equation] = []
    for v in atomic.vars:
        eqs.extend(w.h_membership.equations(cmap[v]))
    gadgets: list[Gadget] = []
    aux_order: list[str] = []
    for con in atomic.constraints:
        if con.kind == "CONST":
            u, n = con.args
            eqs.append(Equation(Word.gen(cmap[u]), Word.gen("h", n)))
        elif con.kind == "ADD":
            u, v, t = con.args
            eqs.append(Equation(Word.gen(cmap[u]) * Word.gen(cmap[v]), Word.gen(cmap[t])))
        else:
            u, v, t = con.args
            k = len(gadgets) + 1
            xp, yp = f"Xp{k}", f"Yp{k}"
            X, Y = Word.gen(xp), Word.gen(yp)
            eqs.extend(Sx.equations(xp))
            eqs.extend(Sy.equations(yp))
            eqs.append(Equation(commutator(X, y), Word.gen(cmap[u], c)))
            eqs.append(Equation(commutator(Y, x.inverse()), Word.gen(cmap[v], c)))
            eqs.append(Equation(commutator(X, Y), Word.gen(cmap[t], c)))
            gadgets.append(Gadget(u, v, t, xp, yp))
            aux_order += Sx.variables(xp) + Sy.variables(yp)
    pinned = [v for v in atomic.vars if any(con.kind == "CONST" and con.args[0] == v for con in atomic.constraints)]
    order = [cmap[v] for v in pinned] + [cmap[v] for v in atomic.vars if v not in pinned] + aux_order
    comments = ["carriers: " + ", ".join(f"{v} -> {cmap[v]}" for v in atomic.vars),
                f"pair x = {x}, y = {y}, c = {c}"] if atomic.vars else []
    system = EquationSystem(eqs, order, comments)
    return CompiledSystem(system, cmap, aux_order, atomic, w, x, y, c, Sx, Sy, gadgets)


def lift_solution(atomic: AtomicSystem, w: DiophWitness, sigma: dict) -> Assignment:
    """The group assignment that encodes an integer solution."""
    full = atomic.extend(sigma)
    if full is None:
        raise NotASolution(f"{sigma} does not solve the system")
    e = w.engine()
    x, y, c, Sx, Sy = _effective(w)
    xe, ye = e.eval_word(x), e.eval_word(y)
    vals = {carrier(v): (full[v], 0, 0, e._zero_d) for v in atomic.vars}
    k = 0
    for con in atomic.constraints:
        if con.kind != "MUL":
            continue
        k += 1
        u, v, _ = con.args
        vals[f"Xp{k}"] = e._pow(xe, full[u])
        vals.update(Sx.lift(e, f"Xp{k}", xe, full[u]))
        vals[f"Yp{k}"] = e._pow(ye, full[v])
        vals.update(Sy.lift(e, f"Yp{k}", ye, full[v]))
    return {name: e.to_coords(val) for name, val in vals.items()}


def extract_solution(cs: CompiledSystem, a: Assignment, include_aux: bool = False) -> dict:
    e = cs.witness.engine()
    out = {}
    names = cs.atomic.vars if include_aux else cs.atomic.original
    for v in names:
        k = e.h_exponent(a[cs.var_map[v]])
        if k is None:
            raise CarrierNotInH(f"carrier {cs.var_map[v]} = {a[cs.var_map[v]]} is not a power of h")
        out[v] = k
    return out


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ReductionReport:
    checks: list
    solutions: Optional[list] = None  # integer solutions recovered by bounded search

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
                "solutions": self.solutions}

    def __str__(self):
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in self.checks]
        lines.append("all checks pass" if self.passed else "some checks failed")
        return "\n".join(lines)


def verify_reduction(ps: PolySystem, engine, w: DiophWitness, sigma: dict,
                     box: Optional[int] = None, jobs: int = 1) -> ReductionReport:
    checks = []
    missing = [v for v in ps.variables if v not in sigma]
    ok = not missing and ps.solves(sigma)
    checks.append(CheckResult("integer solution", ok,
                              f"missing {missing}" if missing else
                              ", ".join(f"{p.format(ps.variables)} -> {p.evaluate(sigma)}" for p in ps.polynomials)))
    atomic = flatten(ps)
    cs = compile_system(atomic, w)
    if ok:
        lifted = lift_solution(atomic, w, sigma)
        good = evaluate(engine, cs.system, lifted)
        checks.append(CheckResult("lift satisfies compiled system", good,
                                  f"{len(cs.system)} equations, {len(cs.system.variables)} variables"))
    else:
        checks.append(CheckResult("lift satisfies compiled system", False, "skipped: not an integer solution"))
    sols = None
    if box is not None:
        found = bounded_solve(engine, cs.system, box, jobs=jobs)
        sols = sorted({tuple(sorted(extract_solution(cs, a).items())) for a in found})
        sols = [dict(s) for s in sols]
        target = {v: sigma.get(v) for v in ps.variables}
        checks.append(CheckResult(f"bounded search at box {box} recovers the solution", target in sols,
                                  f"{len(found)} group solutions, integer solutions {sols}"))
    return ReductionReport(checks, sols)
