"""Decidability classification of Seifert presentations, with checkable witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .engines import FamilyEngine, make_engine
from .equations import Centralizes, SquaresOf
from .errors import HCentral, IsVirtuallyAbelian, NotChiZero, NotVirtuallyAbelian
from .presentation import Family, SeifertPresentation, SeifertType, check, chi, family_id
from .words import Word, parse_word

VA_DECIDABLE_FO_EDT0L = "VA_DECIDABLE_FO_EDT0L"
UNDECIDABLE_H10 = "UNDECIDABLE_H10"
CENTRAL_HYP_DECIDABLE_DP = "CENTRAL_HYP_DECIDABLE_DP"
INDEX2_DECIDABLE_DP = "INDEX2_DECIDABLE_DP"


@dataclass(frozen=True)
class AbelianWitness:
    subgroup_generators: tuple[Word, ...]
    transversal: tuple[Word, ...]
    index: int

    def to_json(self) -> dict:
        return {"kind": "abelian",
                "subgroup_generators": [str(w) for w in self.subgroup_generators],
                "transversal": [str(w) for w in self.transversal],
                "index": self.index}


@dataclass(frozen=True)
class DiophWitness:
    presentation: SeifertPresentation
    x: Word
    y: Word
    c: int
    needs_squaring: bool
    Sx_membership: object
    Sy_membership: object
    h_membership: object

    def engine(self) -> FamilyEngine:
        return make_engine(self.presentation)

    def to_json(self) -> dict:
        def eqs(t):
            return [str(e) for e in t.equations("V")]
        return {"kind": "diophantine", "x": str(self.x), "y": str(self.y), "c": self.c,
                "needs_squaring": self.needs_squaring,
                "Sx_membership": eqs(self.Sx_membership),
                "Sy_membership": eqs(self.Sy_membership),
                "h_membership": eqs(self.h_membership)}


@dataclass(frozen=True)
class Index2Witness:
    delta: tuple[str, ...]
    parity_rule: str = "words of even total Delta-exponent-sum"

    def parity(self, w: Word) -> int:
        """+1 on the index-2 subgroup, -1 off it."""
        m = sum(e for s, e in w.letters if s in self.delta)
        return -1 if m % 2 else 1

    def to_json(self) -> dict:
        return {"kind": "index2", "delta": list(self.delta), "parity_rule": self.parity_rule}


Witness = Union[AbelianWitness, DiophWitness, Index2Witness]


@dataclass
class Classification:
    chi: Fraction
    family: Family
    c: Optional[int]
    dp_status: str
    fo_status: str
    single_eq_status: str
    witness: Optional[Witness] = None
    citations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "chi": str(self.chi),
            "family": None if self.family is Family.NONE else self.family.value,
            "c": self.c,
            "dp_status": self.dp_status,
            "fo_status": self.fo_status,
            "single_eq_status": self.single_eq_status,
            "witness": None if self.witness is None else self.witness.to_json(),
            "citations": list(self.citations),
            "notes": list(self.notes),
        }


def c_constant(p: SeifertPresentation) -> int:
    return make_engine(p).c


def va_condition(p: SeifertPresentation) -> str:
    """The family's virtually-abelian condition in words."""
    fam = family_id(p)
    if fam is Family.NONE:
        raise NotChiZero(f"chi = {chi(p)} is not 0")
    eps = make_engine(p).params.get("eps")
    if fam is Family.N_2:
        return "b = 0" if eps == (-1, -1) else "always"
    if fam is Family.N_122:
        return "b = -1" if eps == -1 else "always"
    return {
        Family.O1_1: "b = 0",
        Family.O2_1: "always",
        Family.O1_2222: "b = -2",
        Family.O1_333: "beta1 + beta2 + beta3 + 3b = 0",
        Family.O1_244: "2 + beta2 + beta3 + 4b = 0",
        Family.O1_236: "2 beta2 + beta3 + 6b + 3 = 0",
    }[fam]


def _words(e: FamilyEngine, *texts) -> tuple[Word, ...]:
    return tuple(e.user_word(parse_word(t)) for t in texts)


def abelian_witness(p: SeifertPresentation) -> AbelianWitness:
    e = make_engine(p)
    if e.c != 0:
        raise NotVirtuallyAbelian(f"c = {e.c} != 0 for {p}")
    fam = e.family
    if fam is Family.O1_1:
        gens, trans = ("u1", "v1", "h"), ("1",)
    elif fam is Family.O2_1:
        gens, trans = ("h", "u1^2", "u1 v1", "v1^2"), ("1", "u1")
    elif fam is Family.O1_2222:
        gens, trans = ("q3 q1", "q2 q3", "h"), ("1", "q1")
    elif fam is Family.O1_333:
        gens, trans = ("q1^2 q2", "q1 q2^2", "h"), ("1", "q1", "q1^2")
    elif fam is Family.O1_244:
        gens, trans = ("q2^3 q3", "q2 q3^3", "h"), ("1", "q2", "q2^2", "q2^3")
    elif fam is Family.O1_236:
        gens = ("q1 q2 q1 q2^2", "q2^2 q1 q2 q1", "h")
        trans = tuple("1" if d == 0 else f"(q1 q2)^{d}" for d in range(6))
    elif fam is Family.N_2 and p.stype is SeifertType.N3:
        gens, trans = ("v1^2", "v1 v2 v1 v2", "h"), ("1", "v1", "v1 v2", "v1 v2 v1")
    elif fam is Family.N_2:
        gens, trans = ("v1^2", "v1 v2", "h"), ("1", "v1")
    else:
        gens, trans = ("v1^2", "v1 q1 v1 q1", "h"), ("1", "v1", "q1", "v1 q1")
    trans_words = _words(e, *trans)
    return AbelianWitness(_words(e, *gens), trans_words, len(trans_words))


def dioph_witness(p: SeifertPresentation) -> DiophWitness:
    e = make_engine(p)
    if e.c == 0:
        raise IsVirtuallyAbelian(f"c = 0 for {p}: the group is virtually abelian")
    x, y = (e.user_word(w) for w in e.pair)
    fam = e.family
    h_central = fam in (Family.O1_1, Family.O1_2222, Family.O1_333, Family.O1_244, Family.O1_236)
    if h_central:
        Sx, Sy = Centralizes((x,)), Centralizes((y,))
    elif fam is Family.N_2:
        # C(v1^2) = <v1, h>; its squares are the set S_x
        Sx = SquaresOf(Centralizes((x,)), parse_word("v1"))
        Sy = Centralizes((y,))
    else:
        Sx = SquaresOf(Centralizes((x,)), parse_word("v1"))
        Sy = SquaresOf(Centralizes((y,)), parse_word("v1 q1"))
    return DiophWitness(p, x, y, e.c, not h_central, Sx, Sy, Centralizes((x, y)))


def index2_witness(p: SeifertPresentation) -> Index2Witness:
    check(p)
    if p.stype in (SeifertType.O1, SeifertType.N1):
        raise HCentral(f"h is central for type {p.stype.value}; no index-2 witness is needed")
    delta = tuple(g for g in p.generators() if g[0] in "uv" and p.epsilon(g) == -1)
    return Index2Witness(delta)


def classify(p: SeifertPresentation) -> Classification:
    check(p)
    x = chi(p)
    fam = family_id(p)
    if x > 0:
        return Classification(
            x, fam, None, VA_DECIDABLE_FO_EDT0L, "DECIDABLE_EDT0L", "DECIDABLE",
            citations=[{"field": "dp_status", "basis": "chi > 0: finite-by-abelian via quasi-isometry, "
                                                        "virtually abelian"},
                       {"field": "single_eq_status", "basis": "chi >= 0: single equations decidable"}],
            notes=["no witness object is attached for chi > 0"])
    if x == 0:
        e = make_engine(p)
        cond = va_condition(p)
        cites = [{"field": "family", "basis": "chi = 0 census of Seifert presentations"},
                 {"field": "c", "basis": f"{fam.value}: [x^i, y^j] = h^(c i j) with c = {e.c}"},
                 {"field": "dp_status", "basis": f"{fam.value}: virtually abelian iff {cond}"},
                 {"field": "single_eq_status", "basis": "chi >= 0: single equations decidable"}]
        if e.c == 0:
            w = abelian_witness(p)
            notes = ["G is isomorphic to Z^3"] if w.index == 1 else \
                [f"abelian subgroup of index {w.index}"]
            return Classification(x, fam, 0, VA_DECIDABLE_FO_EDT0L, "DECIDABLE_EDT0L", "DECIDABLE",
                                  w, cites, notes)
        cites.append({"field": "fo_status", "basis": "the first-order theory contains the Diophantine problem"})
        return Classification(x, fam, e.c, UNDECIDABLE_H10, "UNDECIDABLE", "DECIDABLE",
                              dioph_witness(p), cites,
                              ["Hilbert's tenth problem reduces to equations in G"])
    cites = [{"field": "fo_status", "basis": "chi < 0: no first-order claim"}]
    if p.stype in (SeifertType.O1, SeifertType.N1):
        cites.insert(0, {"field": "dp_status",
                         "basis": "chi < 0, h central: central extension of a hyperbolic group"})
        cites.append({"field": "single_eq_status",
                      "basis": "central extension of a hyperbolic group: systems (hence single equations) decidable"})
        return Classification(x, fam, None, CENTRAL_HYP_DECIDABLE_DP, "UNKNOWN", "DECIDABLE",
                              citations=cites)
    cites.insert(0, {"field": "dp_status",
                     "basis": "chi < 0, h not central: index-2 parity subgroup is a central extension "
                              "of a hyperbolic group"})
    cites.append({"field": "single_eq_status", "basis": "decided in the index-2 parity subgroup"})
    return Classification(x, fam, None, INDEX2_DECIDABLE_DP, "UNKNOWN", "DECIDABLE_OR_INDEX2",
                          index2_witness(p), cites)
