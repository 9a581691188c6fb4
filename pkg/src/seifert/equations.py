"""Equation systems over a chi = 0 group and an exhaustive bounded-box solver."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import MissingVariable, WordSyntaxError
from .words import Word, commutator, parse_word

Assignment = dict  # variable name -> normal-form coordinate tuple


@dataclass(frozen=True)
class Equation:
    lhs: Word
    rhs: Word = field(default_factory=Word)

    def variables(self) -> list[str]:
        return (self.lhs * self.rhs).variables()

    def rename(self, mapping: dict) -> "Equation":
        sub = {k: Word.gen(v) for k, v in mapping.items()}
        return Equation(self.lhs.substitute(sub), self.rhs.substitute(sub))

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


class EquationSystem:
    """A finite list of equations plus the ordered set of their variables.

    The variable order is the solver's enumeration order; by default it is
    the order of first occurrence.
    """

    def __init__(self, equations: Iterable[Equation], variables: Optional[Sequence[str]] = None,
                 comments: Sequence[str] = ()):
        self.equations = tuple(equations)
        seen: dict[str, None] = {}
        for eq in self.equations:
            for v in eq.variables():
                seen.setdefault(v, None)
        if variables is None:
            self.variables = tuple(seen)
        else:
            if sorted(variables) != sorted(seen) or len(set(variables)) != len(variables):
                raise ValueError("variable order must list exactly the variables that occur")
            self.variables = tuple(variables)
        self.comments = tuple(comments)

    def __len__(self):
        return len(self.equations)

    def __str__(self):
        lines = [f"# {c}" for c in self.comments]
        lines += [str(eq) for eq in self.equations]
        return "\n".join(lines) + ("\n" if lines else "")


def parse_system(text: str, generators=None) -> EquationSystem:
    """One equation per line (``word = word`` or ``word = 1``); ``#`` starts a comment."""
    eqs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if line.count("=") != 1:
            raise WordSyntaxError(f"line {lineno}: expected exactly one '='", raw, max(line.find("="), 0))
        left, right = line.split("=")
        eqs.append(Equation(parse_word(left, generators), parse_word(right, generators)))
    return EquationSystem(eqs)


# ------------------------------------------------------------ templates
@dataclass(frozen=True)
class Centralizes:
    """V commutes with every listed element."""

    elements: tuple[Word, ...]

    def variables(self, var: str) -> list[str]:
        return [var]

    def equations(self, var: str) -> list[Equation]:
        V = Word.gen(var)
        return [Equation(commutator(V, g)) for g in self.elements]

    def lift(self, engine, var: str, base, n: int) -> dict:
        return {}

    def describe(self) -> str:
        return "C(" + ", ".join(str(g) for g in self.elements) + ")"


@dataclass(frozen=True)
class SquaresOf:
    """V = W^2 for some W in the inner set; ``root`` squares to the generator of interest."""

    inner: object
    root: Word

    def variables(self, var: str) -> list[str]:
        return self.inner.variables(var + "r") + [var]

    def equations(self, var: str) -> list[Equation]:
        W = Word.gen(var + "r")
        return self.inner.equations(var + "r") + [Equation(Word.gen(var), W * W)]

    def lift(self, engine, var: str, base, n: int) -> dict:
        """Values of the auxiliaries when V = base^n and root^2 = base."""
        r = engine.eval_word(self.root)
        out = {var + "r": engine._pow(r, n)}
        out.update(self.inner.lift(engine, var + "r", r, n))
        return out

    def describe(self) -> str:
        return f"squares of {self.inner.describe()}"


def template_system(template, var: str = "V") -> EquationSystem:
    return EquationSystem(template.equations(var), template.variables(var))


# ---------------------------------------------------------- evaluation
def _check_total(sys: EquationSystem, a: Assignment):
    missing = [v for v in sys.variables if v not in a]
    if missing:
        raise MissingVariable(f"no value for {', '.join(missing)}")


def evaluate(engine, sys: EquationSystem, a: Assignment) -> bool:
    _check_total(sys, a)
    vals = {v: engine.to_internal(a[v]) for v in sys.variables}
    return all(engine.eval_word(eq.lhs, vals) == engine.eval_word(eq.rhs, vals) for eq in sys.equations)


class _Plan:
    """Per-variable search steps for the bounded solver."""

    def __init__(self, engine, sys: EquationSystem, B: int):
        self.engine = engine
        self.B = B
        self.order = list(sys.variables)
        pos = {v: n for n, v in enumerate(self.order)}
        self.checks: list[list[Word]] = [[] for _ in self.order]
        self.unary: list[list[Word]] = [[] for _ in self.order]
        self.define: list[Optional[Word]] = [None] * len(self.order)
        self.impossible = False
        for eq in sys.equations:
            vs = eq.variables()
            if not vs:
                if engine.eval_word(eq.lhs) != engine.eval_word(eq.rhs):
                    self.impossible = True
                continue
            last = max(pos[v] for v in vs)
            var = self.order[last]
            if len(vs) == 1:
                self.unary[last].append(eq.lhs * eq.rhs.inverse())
                continue
            definition = _definition(eq, var)
            if definition is not None and self.define[last] is None:
                self.define[last] = definition
            else:
                self.checks[last].append(eq.lhs * eq.rhs.inverse())
        self._box = None
        self._domains: dict = {}

    def box(self):
        if self._box is None:
            e = self.engine
            self._box = [e.to_internal(x) for x in e.enumerate_box(self.B)]
        return self._box

    def domain(self, n: int):
        """Box elements satisfying the single-variable equations of variable n."""
        words = self.unary[n]
        if not words:
            return self.box()
        var = self.order[n]
        key = tuple(w.substitute({var: Word.gen("V")}) for w in words)
        if key not in self._domains:
            e = self.engine
            ident = (0, 0, 0, e._zero_d)
            self._domains[key] = [x for x in self.box()
                                  if all(e.eval_word(w, {var: x}) == ident for w in words)]
        return self._domains[key]

    def in_box(self, x) -> bool:
        B = self.B
        return abs(x[0]) <= B and abs(x[1]) <= B and abs(x[2]) <= B

    def search(self, n: int, vals: dict, out: list, first_domain=None):
        if n == len(self.order):
            out.append(dict(vals))
            return
        e = self.engine
        ident = (0, 0, 0, e._zero_d)
        var = self.order[n]
        if self.define[n] is not None:
            x = e.eval_word(self.define[n], vals)
            if not self.in_box(x):
                return
            vals[var] = x
            if all(e.eval_word(w, vals) == ident for w in self.unary[n]) and \
                    all(e.eval_word(w, vals) == ident for w in self.checks[n]):
                self.search(n + 1, vals, out)
            del vals[var]
            return
        domain = first_domain if first_domain is not None else self.domain(n)
        checks = self.checks[n]
        for x in domain:
            vals[var] = x
            if all(e.eval_word(w, vals) == ident for w in checks):
                self.search(n + 1, vals, out)
        vals.pop(var, None)


def _definition(eq: Equation, var: str) -> Optional[Word]:
    """If the equation reads var = w (or w = var) with var absent from w, return w."""
    for one, other in ((eq.lhs, eq.rhs), (eq.rhs, eq.lhs)):
        if one.letters == ((var, 1),) and var not in other.symbols():
            return other
    return None


def _solve_chunk(args):
    engine, sys, B, chunk = args
    plan = _Plan(engine, sys, B)
    out: list = []
    plan.search(0, {}, out, first_domain=chunk)
    return out


def bounded_solve(engine, sys: EquationSystem, B: int, jobs: int = 1) -> list[Assignment]:
    """Every assignment from the box of radius B satisfying all equations.

    Variables are enumerated in declaration order and each equation is
    checked as soon as its variables are all assigned. The cost is
    exponential in the number of free variables. Results are ordered
    lexicographically by the coordinates of the variables in order.
    """
    if B < 0:
        raise ValueError("box radius must be non-negative")
    plan = _Plan(engine, sys, B)
    if plan.impossible:
        return []
    out: list = []
    if not plan.order:
        out = [{}]
    elif jobs > 1 and plan.define[0] is None:
        domain = plan.domain(0)
        size = -(-len(domain) // (jobs * 4)) or 1
        chunks = [domain[i:i + size] for i in range(0, len(domain), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_solve_chunk, [(engine, sys, B, c) for c in chunks]):
                out.extend(part)
    else:
        plan.search(0, {}, out)
    return [{v: engine.to_coords(a[v]) for v in plan.order} for a in out]
