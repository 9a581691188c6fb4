"""Exact normal forms for the eight families of Seifert groups with chi = 0.

Every engine uses the same collector. A group element is stored internally as
``(k, i, j, d)``, meaning ``h^k X^i Y^j T(d)``, where

* ``<h, X, Y>`` is a normal subgroup N with ``X h = h X``,
  ``Y h Y^-1 = h^eps_Y`` and ``X Y X^-1 = h^gamma Y``;
* ``T(d) = s_1^d_1 ... s_m^d_m`` runs over a transversal of N, with
  ``0 <= d_l < r_l`` (m <= 2).

A family is specified by how each top generator ``s_l`` conjugates h, X and Y,
its power ``s_l^r_l`` in N, and, when m = 2, the N-element ``n`` with
``s_2 s_1 = n s_1 s_2``. Public operations speak the family's display
coordinates (see ``FamilyEngine.coord_names``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import NotChiZero, UnknownSymbol
from .presentation import (Family, SeifertPresentation, SeifertType, check, chi, family_id,
                           full_presentation)
from .words import Word, is_variable, parse_word


@dataclass(frozen=True)
class TopGen:
    order: int
    power: tuple  # s^order as an element of N
    eps: int  # s h s^-1 = h^eps
    conj_x: tuple  # s X s^-1 in N
    conj_y: tuple  # s Y s^-1 in N


@dataclass(frozen=True)
class Factor:
    coord: str  # display name of the coordinate
    slot: str  # "k", "i", "j" or "d0"/"d1"
    base: Word  # in canonical generator names


@dataclass
class _Structure:
    gamma: int
    eps_y: int
    tops: list
    swap: dict = field(default_factory=dict)  # (l2, l1) -> n with s_l2 s_l1 = n s_l1 s_l2


def _w(text: str) -> Word:
    return parse_word(text)


class FamilyEngine:
    """Multiplication, inversion and normal forms for one chi = 0 group."""

    def __init__(self, p: SeifertPresentation):
        check(p)
        fam = family_id(p)
        if fam is Family.NONE:
            raise NotChiZero(f"no normal-form engine: chi = {chi(p)} is not 0 "
                             "(engines exist only for the seven chi = 0 families)")
        self.p = p
        self.family = fam
        self.generators = tuple(p.generators())
        self._to_canon, self._to_user, fibers = _canonical_order(p)
        self.fibers = fibers
        builder = _BUILDERS[fam]
        data = builder(p, fibers)
        st: _Structure = data["structure"]
        self._gamma = st.gamma
        self._eps_y = st.eps_y
        self._tops = tuple(st.tops)
        self._swap = dict(st.swap)
        self._zero_d = (0,) * len(self._tops)
        self._conj_maps = {}
        for d in itertools.product(*(range(t.order) for t in self._tops)):
            eps = self._conj_T_slow(d, (1, 0, 0))[0]
            self._conj_maps[d] = (eps, self._conj_T_slow(d, (0, 1, 0)), self._conj_T_slow(d, (0, 0, 1)))
        self._t_inv = {d: self._inv_slow((0, 0, 0, d)) for d in self._conj_maps}
        self.c: int = data["c"]
        self.params: dict = data["params"]
        self.factors: tuple[Factor, ...] = tuple(data["factors"])
        self.coord_names = tuple(f.coord for f in self.factors)
        self._slots = tuple(f.slot for f in self.factors)
        self.pair: tuple[Word, Word] = data["pair"]  # distinguished (x, y), canonical names
        self.transversal_orders = tuple(t.order for t in self._tops)
        # canonical generator images, then every user generator through the reordering
        canon = {"h": (1, 0, 0, self._zero_d)}
        canon.update(data["images"])
        xy = {"X": (0, 1, 0, self._zero_d), "Y": (0, 0, 1, self._zero_d)}
        for name, text in data.get("derived", {}).items():
            w = parse_word(text.replace("h^b", f"h^{p.b}"), allow_zero=True)
            canon[name] = self._eval_internal(w, canon, xy)
        self._canon_images = canon
        self._images = {"h": canon["h"]}
        for g in self.generators:
            if g != "h":
                self._images[g] = self._eval_internal(self._to_canon.get(g, Word.gen(g)), canon)
        self._x = self._eval_internal(self.pair[0], canon)
        self._y = self._eval_internal(self.pair[1], canon)

    # ------------------------------------------------------------------ N
    def _nmul(self, a, b):
        k1, i1, j1 = a
        k2, i2, j2 = b
        if self._eps_y == 1:
            return (k1 + k2 - i2 * self._gamma * j1, i1 + i2, j1 + j2)
        odd = j1 & 1
        return (k1 + (-k2 if odd else k2) - i2 * self._gamma * odd, i1 + i2, j1 + j2)

    def _ninv(self, a):
        k, i, j = a
        return self._nmul(self._nmul((0, 0, -j), (0, -i, 0)), (-k, 0, 0))

    def _npow(self, a, n):
        if self._eps_y == 1:
            k, i, j = a
            return (n * k - self._gamma * i * j * (n * (n - 1) // 2), n * i, n * j)
        if n < 0:
            a, n = self._ninv(a), -n
        out = (0, 0, 0)
        while n:
            if n & 1:
                out = self._nmul(out, a)
            a = self._nmul(a, a)
            n >>= 1
        return out

    def _conj_top(self, l, a):
        """s_l a s_l^-1 for a in N."""
        t = self._tops[l]
        k, i, j = a
        out = (t.eps * k, 0, 0)
        if i:
            out = self._nmul(out, self._npow(t.conj_x, i))
        if j:
            out = self._nmul(out, self._npow(t.conj_y, j))
        return out

    def _conj_T_slow(self, d, a):
        for l in range(len(d) - 1, -1, -1):
            for _ in range(d[l]):
                a = self._conj_top(l, a)
        return a

    def _conj_T(self, d, a):
        """T(d) a T(d)^-1 for a in N."""
        eps, cx, cy = self._conj_maps[d]
        k, i, j = a
        return self._nmul(self._nmul((eps * k, 0, 0), self._npow(cx, i)), self._npow(cy, j))

    # --------------------------------------------------------------- G
    def _rmul_top(self, n, d, l):
        """(n T(d)) s_l, collected."""
        higher = [m for m in range(l + 1, len(d)) if d[m]]
        if not higher:
            d = list(d)
            d[l] += 1
            if d[l] == self._tops[l].order:
                d[l] = 0
                n = self._nmul(n, self._conj_T(tuple(d[:l]) + (0,) * (len(d) - l), self._tops[l].power))
            return n, tuple(d)
        m = higher[-1]
        d1 = list(d)
        d1[m] -= 1
        d1 = tuple(d1)
        n = self._nmul(n, self._conj_T(d1, self._swap[(m, l)]))
        n, d2 = self._rmul_top(n, d1, l)
        return self._rmul_top(n, d2, m)

    def _mul(self, a, b):
        ka, ia, ja, da = a
        kb, ib, jb, db = b
        n = self._nmul((ka, ia, ja), self._conj_T(da, (kb, ib, jb)) if da != self._zero_d else (kb, ib, jb))
        if len(db) == 1:
            d = da[0] + db[0]
            top = self._tops[0]
            if d >= top.order:
                n = self._nmul(n, top.power)
                d -= top.order
            return (n[0], n[1], n[2], (d,))
        d = da
        for l, e in enumerate(db):
            for _ in range(e):
                n, d = self._rmul_top(n, d, l)
        return (n[0], n[1], n[2], d)

    def _mul_collect(self, a, b):
        """Reference product: push b's letters one at a time through a (no shortcuts)."""
        ka, ia, ja, da = a
        kb, ib, jb, db = b
        n = self._nmul((ka, ia, ja), self._conj_T_slow(da, (kb, ib, jb)))
        d = da
        for l, e in enumerate(db):
            for _ in range(e):
                n, d = self._rmul_top(n, d, l)
        return (n[0], n[1], n[2], d)

    def _inv_slow(self, a):
        k, i, j, d = a
        out = (*self._ninv((k, i, j)), self._zero_d)
        for l, e in enumerate(d):
            if not e:
                continue
            t = self._tops[l]
            unit = tuple(1 if m == l else 0 for m in range(len(d)))
            s = (0, 0, 0, unit)
            s_inv = (*self._ninv(t.power), self._zero_d)
            for _ in range(t.order - 1):
                s_inv = self._mul(s_inv, s)
            for _ in range(e):
                out = self._mul(s_inv, out)
        return out

    def _inv(self, a):
        k, i, j, d = a
        if d == self._zero_d:
            return (*self._ninv((k, i, j)), d)
        return self._mul(self._t_inv[d], (*self._ninv((k, i, j)), self._zero_d))

    def _pow(self, a, n):
        if n < 0:
            a, n = self._inv(a), -n
        out = (0, 0, 0, self._zero_d)
        while n:
            if n & 1:
                out = self._mul(out, a)
            n >>= 1
            if n:
                a = self._mul(a, a)
        return out

    def _eval_internal(self, w: Word, images: dict, values: Optional[dict] = None):
        out = (0, 0, 0, self._zero_d)
        for s, e in w.letters:
            if values is not None and s in values:
                g = values[s]
            else:
                g = images.get(s)
                if g is None:
                    raise UnknownSymbol(f"unknown symbol {s!r} for family {self.family.value}")
            out = self._mul(out, g if e == 1 else self._pow(g, e))
        return out

    def eval_word(self, w: Word, values: Optional[dict] = None):
        """Internal element of ``w``; ``values`` maps variable names to internal elements."""
        return self._eval_internal(w, self._images, values)

    # ---------------------------------------------------- coordinates
    def to_internal(self, coords) -> tuple:
        if len(coords) != len(self._slots):
            raise ValueError(f"{self.family.value} normal forms have {len(self._slots)} coordinates")
        vals = dict(zip(self._slots, coords))
        d = tuple(int(vals[f"d{l}"]) for l in range(len(self._tops)))
        for l, v in enumerate(d):
            if not 0 <= v < self._tops[l].order:
                raise ValueError(f"transversal index out of range: {v}")
        return (int(vals["k"]), int(vals["i"]), int(vals["j"]), d)

    def to_coords(self, x) -> tuple:
        k, i, j, d = x
        vals = {"k": k, "i": i, "j": j}
        for l, v in enumerate(d):
            vals[f"d{l}"] = v
        return tuple(vals[s] for s in self._slots)

    @property
    def identity(self) -> tuple:
        return self.to_coords((0, 0, 0, self._zero_d))

    # ------------------------------------------------------ public API
    def nf(self, w) -> tuple:
        if isinstance(w, str):
            w = parse_word(w, allow_zero=True)
        for s in w.symbols():
            if is_variable(s) or s not in self._images:
                raise UnknownSymbol(f"{s!r} is not a generator of {self.p}")
        return self.to_coords(self.eval_word(w))

    def mul(self, a, b) -> tuple:
        return self.to_coords(self._mul(self.to_internal(a), self.to_internal(b)))

    def inv(self, a) -> tuple:
        return self.to_coords(self._inv(self.to_internal(a)))

    def pow(self, a, n: int) -> tuple:
        return self.to_coords(self._pow(self.to_internal(a), n))

    def h_power(self, n: int) -> tuple:
        return self.to_coords((n, 0, 0, self._zero_d))

    def h_exponent(self, a) -> Optional[int]:
        """k when ``a`` equals h^k, otherwise None."""
        k, i, j, d = self.to_internal(a)
        return k if (i, j) == (0, 0) and not any(d) else None

    def commutator_power(self, i: int, j: int) -> int:
        x, y = self._pow(self._x, i), self._pow(self._y, j)
        k, a, b, d = self._mul(self._mul(x, y), self._inv(self._mul(y, x)))
        if (a, b) != (0, 0) or any(d):
            raise ArithmeticError(f"[X^{i}, Y^{j}] is not a power of h")
        return k

    def relator_check(self) -> list[tuple[Word, tuple]]:
        """Relators of the full presentation whose normal form is not the identity."""
        ident = self.identity
        bad = []
        for r in full_presentation(self.p).relators:
            v = self.nf(r)
            if v != ident:
                bad.append((r, v))
        return bad

    def box_size(self, B: int) -> int:
        n = (2 * B + 1) ** 3
        for t in self._tops:
            n *= t.order
        return n

    def enumerate_box(self, B: int) -> Iterator[tuple]:
        """All normal forms with integer coordinates in [-B, B], in lexicographic order."""
        ranges = []
        for s in self._slots:
            if s[0] == "d":
                ranges.append(range(self._tops[int(s[1:])].order))
            else:
                ranges.append(range(-B, B + 1))
        return itertools.product(*ranges)

    def centralizer_box(self, g, B: int) -> set:
        gi = self.to_internal(g)
        out = set()
        for x in self.enumerate_box(B):
            xi = self.to_internal(x)
            if self._mul(xi, gi) == self._mul(gi, xi):
                out.add(x)
        return out

    # ------------------------------------------------------- printing
    def user_word(self, w: Word) -> Word:
        """Rewrite a word in canonical generator names into the presentation's names."""
        return w.substitute(self._to_user).reduced() if self._to_user else w

    def format(self, a) -> str:
        parts = []
        for f, v in zip(self.factors, a):
            base = self.user_word(f.base)
            if len(base) == 1 and base.letters[0][1] == 1:
                parts.append(f"{base.letters[0][0]}^{v}")
            else:
                inner = "*".join(s if e == 1 else f"{s}^{e}" for s, e in base.letters)
                parts.append(f"({inner})^{v}")
        return " ".join(parts)

    def parse(self, text: str) -> tuple:
        """Normal form of a raw word or of a canonical print."""
        return self.nf(parse_word(text, generators=self._images, allow_zero=True))

    def __repr__(self):
        return f"FamilyEngine({self.family.value}, {self.p}, c={self.c})"


def make_engine(p: SeifertPresentation) -> FamilyEngine:
    return FamilyEngine(p)


def _canonical_order(p: SeifertPresentation):
    """Sort the fibers of an o1 genus-0 presentation by alpha using braid moves.

    Swapping adjacent q_a, q_{a+1} in q_1...q_r = h^b replaces them by
    q_{a+1}, q_{a+1}^-1 q_a q_{a+1}, which has the same fiber invariants.
    Returns (user -> canonical words, canonical -> user words, sorted fibers).
    """
    fibers = list(p.fibers)
    if p.stype is not SeifertType.O1 or p.g != 0 or fibers == sorted(fibers, key=lambda f: f[0]):
        return {}, {}, tuple(fibers)
    r = len(fibers)
    cur = [Word.gen(f"q{j}") for j in range(1, r + 1)]  # current generators, in user names
    expr = {f"q{j}": Word.gen(f"q{j}") for j in range(1, r + 1)}  # user gens in slot names
    changed = True
    while changed:
        changed = False
        for a in range(r - 1):
            if fibers[a][0] > fibers[a + 1][0]:
                sa, sb = f"q{a + 1}", f"q{a + 2}"
                A, Bw = Word.gen(sa), Word.gen(sb)
                sub = {sa: A * Bw * A.inverse(), sb: A}
                expr = {g: w.substitute(sub).reduced() for g, w in expr.items()}
                cur[a], cur[a + 1] = cur[a + 1], (cur[a + 1].inverse() * cur[a] * cur[a + 1]).reduced()
                fibers[a], fibers[a + 1] = fibers[a + 1], fibers[a]
                changed = True
    to_user = {f"q{j}": cur[j - 1] for j in range(1, r + 1)}
    return expr, to_user, tuple(fibers)


# ---------------------------------------------------------------- families
def _factors(*items):
    return [Factor(c, s, _w(b)) for c, s, b in items]


def _o1_1(p, fibers):
    b = p.b
    return dict(
        structure=_Structure(gamma=b, eps_y=1, tops=[]),
        images={"u1": (0, 1, 0, ()), "v1": (0, 0, 1, ())},
        c=b, params={"b": b},
        factors=_factors(("i", "i", "u1"), ("j", "j", "v1"), ("k", "k", "h")),
        pair=(_w("u1"), _w("v1")),
    )


def _o2_1(p, fibers):
    b = p.b
    s = TopGen(order=2, power=(0, 1, 0), eps=-1, conj_x=(0, 1, 0), conj_y=(-b, 0, 1))
    return dict(
        structure=_Structure(gamma=0, eps_y=1, tops=[s]),
        images={"u1": (0, 0, 0, (1,)), "v1": (-b, -1, 1, (1,))},
        c=0, params={"b": b},
        factors=_factors(("a", "i", "u1^2"), ("m", "j", "u1*v1"), ("k", "k", "h"), ("delta", "d0", "u1")),
        pair=(_w("u1^2"), _w("u1 v1")),
    )


def _o1_2222(p, fibers):
    b = p.b
    # q4 = (q1 q2 q3)^-1 h^b and q4^2 h = 1 give (q1 q2 q3)^2 = h^(2b+1)
    gamma = 2 * (b + 2)
    s = TopGen(order=2, power=(-1, 0, 0), eps=1, conj_x=(-2, -1, 0), conj_y=(2 * b + 2, 0, -1))
    return dict(
        structure=_Structure(gamma=gamma, eps_y=1, tops=[s]),
        images={"q1": (0, 0, 0, (1,)), "q3": (1, 1, 0, (1,))},
        c=gamma, params={"b": b},
        factors=_factors(("k", "k", "h"), ("i", "i", "q3*q1"), ("j", "j", "q2*q3"), ("delta", "d0", "q1")),
        pair=(_w("q3 q1"), _w("q2 q3")),
        derived={"q2": "Y q3^-1", "q4": "q3^-1 q2^-1 q1^-1 h^b"},
    )


def _o1_333(p, fibers):
    b = p.b
    b1, b2, b3 = (c for _, c in fibers)
    gamma = b1 + b2 + b3 + 3 * b
    s = TopGen(order=3, power=(-b1, 0, 0), eps=1, conj_x=(-b1 - b2, 0, -1), conj_y=(-b2, 1, -1))
    return dict(
        structure=_Structure(gamma=gamma, eps_y=1, tops=[s]),
        images={"q1": (0, 0, 0, (1,)), "q2": (-b2, 0, -1, (1,))},
        c=gamma, params={"b": b, "betas": (b1, b2, b3)},
        factors=_factors(("i", "i", "q1^2*q2"), ("j", "j", "q1*q2^2"), ("delta", "d0", "q1"), ("k", "k", "h")),
        pair=(_w("q1^2 q2"), _w("q1 q2^2")),
        derived={"q3": "q2^-1 q1^-1 h^b"},
    )


def _o1_244(p, fibers):
    b = p.b
    _, b2, b3 = (c for _, c in fibers)
    gamma = 2 + b2 + b3 + 4 * b
    s = TopGen(order=4, power=(-b2, 0, 0), eps=1, conj_x=(-b2 - b3, 0, -1), conj_y=(-b3 - 1 - 2 * b, 1, 0))
    return dict(
        structure=_Structure(gamma=gamma, eps_y=1, tops=[s]),
        images={"q2": (0, 0, 0, (1,)), "q3": (-b3, 0, -1, (1,))},
        c=gamma, params={"b": b, "betas": (1, b2, b3)},
        factors=_factors(("k", "k", "h"), ("i", "i", "q2^3*q3"), ("j", "j", "q2*q3^3"), ("delta", "d0", "q2")),
        pair=(_w("q2^3 q3"), _w("q2 q3^3")),
        derived={"q1": "h^b q3^-1 q2^-1"},
    )


def _o1_236(p, fibers):
    b = p.b
    _, b2, b3 = (c for _, c in fibers)
    gamma = 2 * b2 + b3 + 6 * b + 3
    s = TopGen(order=6, power=(6 * b + b3, 0, 0), eps=1, conj_x=(b2 + 1, 1, 1), conj_y=(-2 * b2 - 2, -1, 0))
    return dict(
        structure=_Structure(gamma=gamma, eps_y=1, tops=[s]),
        images={"q1": (-b2 - 1 - gamma, -1, -1, (3,)), "q2": (-b2 - gamma, -1, -1, (4,))},
        c=gamma, params={"b": b, "betas": (1, b2, b3)},
        factors=_factors(("i", "i", "q1*q2*q1*q2^2"), ("j", "j", "q2^2*q1*q2*q1"),
                         ("delta", "d0", "q1*q2"), ("k", "k", "h")),
        pair=(_w("q1 q2 q1 q2^2"), _w("q2^2 q1 q2 q1")),
        derived={"q3": "q2^-1 q1^-1 h^b"},
    )


def _n_2(p, fibers):
    b = p.b
    e1, e2 = p.stype.epsilons(2)
    eps_y = e1 * e2
    gamma = e1 * b * (1 - e2)
    s = TopGen(order=2, power=(0, 1, 0), eps=e1, conj_x=(0, 1, 0), conj_y=(b, 0, -1))
    c = -2 * b if (e1, e2) == (-1, -1) else 0
    # for (1, -1) the pair (v1^2, v1 v2) is not bilinear; its square is
    pair_y = "v1 v2 v1 v2" if (e1, e2) == (1, -1) else "v1 v2"
    return dict(
        structure=_Structure(gamma=gamma, eps_y=eps_y, tops=[s]),
        images={"v1": (0, 0, 0, (1,))},
        c=c, params={"b": b, "eps": (e1, e2)},
        factors=_factors(("k", "k", "h"), ("i", "i", "v1^2"), ("j", "j", "v1*v2"), ("delta", "d0", "v1")),
        pair=(_w("v1^2"), _w(pair_y)),
        derived={"v2": "v1^-1 Y"},
    )


def _n_122(p, fibers):
    b = p.b
    e = p.stype.epsilons(1)[0]
    gamma = (e - 1) * (2 * b + 1 - e)
    s1 = TopGen(order=2, power=(0, 1, 0), eps=e, conj_x=(0, 1, 0), conj_y=(2 * b + 1 - e, 0, -1))
    s2 = TopGen(order=2, power=(-1, 0, 0), eps=1, conj_x=(2 * b + 2, -1, 0), conj_y=(e * (2 * b + 1) - 1, 0, -1))
    c = -4 * (b + 1) if e == -1 else 0
    return dict(
        structure=_Structure(gamma=gamma, eps_y=1, tops=[s1, s2], swap={(1, 0): (2 * b + 1, -1, -1)}),
        images={"v1": (0, 0, 0, (1, 0)), "q1": (0, 0, 0, (0, 1))},
        c=c, params={"b": b, "eps": e},
        factors=_factors(("k", "k", "h"), ("i", "i", "v1^2"), ("j", "j", "v1*q1*v1*q1"),
                         ("delta1", "d0", "v1"), ("delta2", "d1", "q1")),
        pair=(_w("v1^2"), _w("v1 q1 v1 q1")),
        derived={"q2": "q1^-1 h^b v1^-2"},
    )


_BUILDERS = {
    Family.O1_1: _o1_1,
    Family.O2_1: _o2_1,
    Family.O1_2222: _o1_2222,
    Family.O1_333: _o1_333,
    Family.O1_244: _o1_244,
    Family.O1_236: _o1_236,
    Family.N_2: _n_2,
    Family.N_122: _n_122,
}
