import itertools
import random
import sys
from math import gcd

import pytest

from seifert import SeifertPresentation, SeifertType, Word

B_RANGE = range(-3, 4)


def betas_for(alpha: int, full: bool = True) -> list[int]:
    top = alpha - 1 if full else alpha // 2
    return [c for c in range(1, top + 1) if gcd(alpha, c) == 1]


def _fiber_tuples(alphas):
    return itertools.product(*[[(a, c) for c in betas_for(a)] for a in alphas])


def chi_zero_grid() -> list[SeifertPresentation]:
    """Every chi = 0 presentation with b in [-3, 3] and each admissible beta tuple."""
    out = []
    for alphas in [(2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6)]:
        for fibers in _fiber_tuples(alphas):
            out += [SeifertPresentation(SeifertType.O1, 0, fibers, b) for b in B_RANGE]
    out += [SeifertPresentation(SeifertType.O1, 1, (), b) for b in B_RANGE]
    out += [SeifertPresentation(SeifertType.O2, 1, (), b) for b in (0, 1)]
    out += [SeifertPresentation(SeifertType.N1, 2, (), b) for b in (0, 1)]
    out += [SeifertPresentation(SeifertType.N2, 2, (), b) for b in B_RANGE]
    out += [SeifertPresentation(SeifertType.N3, 2, (), b) for b in (0, 1)]
    out += [SeifertPresentation(SeifertType.N1, 1, ((2, 1), (2, 1)), 0)]
    out += [SeifertPresentation(SeifertType.N2, 1, ((2, 1), (2, 1)), b) for b in B_RANGE]
    return out


def permuted_grid() -> list[SeifertPresentation]:
    """o1 genus-0 presentations whose fibers are not sorted by alpha."""
    out = []
    for alphas in [(4, 2, 4), (4, 4, 2), (6, 3, 2), (3, 6, 2), (2, 6, 3)]:
        for fibers in _fiber_tuples(alphas):
            out += [SeifertPresentation(SeifertType.O1, 0, fibers, b) for b in (-2, 0, 1)]
    return out


def random_word(rng: random.Random, gens, max_len: int = 8, max_exp: int = 3) -> Word:
    w = Word()
    for _ in range(rng.randint(0, max_len)):
        e = rng.choice([x for x in range(-max_exp, max_exp + 1) if x])
        w = w * Word.gen(rng.choice(list(gens)), e)
    return w


def random_element(rng: random.Random, engine, bound: int = 4) -> tuple:
    out = []
    for f in engine.factors:
        if f.slot[0] == "d":
            out.append(rng.randrange(engine.transversal_orders[int(f.slot[1:])]))
        else:
            out.append(rng.randint(-bound, bound))
    return tuple(out)


def family_representatives() -> dict:
    """One presentation per family with c != 0, at small parameters."""
    P = SeifertPresentation
    return {
        "O1_1": P(SeifertType.O1, 1, (), 1),
        "O1_2222": P(SeifertType.O1, 0, ((2, 1),) * 4, 0),
        "O1_333": P(SeifertType.O1, 0, ((3, 1),) * 3, 0),
        "O1_244": P(SeifertType.O1, 0, ((2, 1), (4, 1), (4, 1)), 0),
        "O1_236": P(SeifertType.O1, 0, ((2, 1), (3, 1), (6, 1)), 0),
        "N_2": P(SeifertType.N2, 2, (), 1),
        "N_122": P(SeifertType.N2, 1, ((2, 1), (2, 1)), 0),
    }


@pytest.fixture
def rng():
    return random.Random(20240517)


def in_box(engine, x, B: int) -> bool:
    return all(abs(v) <= B for f, v in zip(engine.factors, x) if f.slot[0] != "d")


def powers_times_h(engine, g, B: int, exps, h_step: int = 1) -> set:
    """Box elements g^a h^k for a in exps and k a multiple of h_step."""
    out = set()
    hk = engine.coord_names.index("k")
    for a in exps:
        base = engine.pow(g, a)
        for t in range(-B - abs(base[hk]), B + abs(base[hk]) + 1):
            if t % h_step:
                continue
            x = engine.mul(base, engine.h_power(t))
            if in_box(engine, x, B):
                out.add(x)
    return out


def cyclic_by_h(engine, g, B: int, R: int = 12) -> set:
    """<g, h> inside the box, for g normalizing <h>."""
    return powers_times_h(engine, g, B, range(-R, R + 1))


def squares_of_cyclic_by_h(engine, root, B: int, R: int = 12) -> set:
    """Squares of <root, h> inside the box, for root inverting h."""
    return (powers_times_h(engine, root, B, range(-4 * R, 4 * R + 1, 4), h_step=2)
            | powers_times_h(engine, root, B, range(-4 * R + 2, 4 * R + 1, 4), h_step=10 ** 9))


def random_poly_system(rng: random.Random):
    """Up to 3 variables, degree up to 3, coefficients in [-5, 5]."""
    from seifert.h10reduce import Poly, PolySystem
    names = ["X", "Y", "Z"][:rng.randint(1, 3)]
    polys = []
    for _ in range(rng.randint(1, 2)):
        p = Poly.const(rng.randint(-5, 5))
        for _ in range(rng.randint(1, 4)):
            mono = Poly.const(rng.randint(-5, 5))
            for _ in range(rng.randint(0, 3)):
                mono = mono * Poly.var(rng.choice(names))
            p = p + mono
        polys.append(p)
    return PolySystem(polys, names)


def abelian_witness_check(p, B: int = 2) -> list[str]:
    """Problems with the abelian witness of p; empty when it checks out on enumerate_box(B)."""
    from seifert import abelian_witness, make_engine
    e = make_engine(p)
    w = abelian_witness(p)
    problems = []
    gens = [e.nf(g) for g in w.subgroup_generators]
    for a, b in itertools.combinations(gens, 2):
        if e.mul(a, b) != e.mul(b, a):
            problems.append(f"generators {a} and {b} do not commute")
    trans = [e.nf(t) for t in w.transversal]
    if len(trans) != w.index:
        problems.append("index differs from transversal size")
    h = e.nf("h")
    if h not in gens:
        problems.append("h is not a generator")
    others = [g for g in gens if g != h]
    R = 3 * B + 4 if len(others) <= 2 else B + 3
    k = e.coord_names.index("k")

    def drop_k(x):
        return x[:k] + x[k + 1:]

    # h is central in the subgroup and sits leftmost internally, so A mod <h> is keyed by drop_k
    span = set()
    for exps in itertools.product(range(-R, R + 1), repeat=len(others)):
        g = e.identity
        for base, n in zip(others, exps):
            g = e.mul(g, e.pow(base, n))
        span.add(drop_k(g))
    for s, t in itertools.combinations(trans, 2):
        if drop_k(e.mul(s, e.inv(t))) in span:
            problems.append(f"transversal elements {s} and {t} share a coset")
    inv_trans = [e.inv(t) for t in trans]
    for x in e.enumerate_box(B):
        if not any(drop_k(e.mul(x, ti)) in span for ti in inv_trans):
            problems.append(f"{x} is not covered")
    return problems


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
