"""Exact arithmetic, decidability classification and Hilbert's-tenth reductions
for Seifert fibered 3-manifold groups."""

from .classify import (AbelianWitness, Classification, DiophWitness, Index2Witness,
                       abelian_witness, c_constant, classify, dioph_witness, index2_witness)
from .engines import FamilyEngine, make_engine
from .equations import Equation, EquationSystem, bounded_solve, evaluate, parse_system
from .errors import (CarrierNotInH, HCentral, IsVirtuallyAbelian, MissingVariable, NotASolution,
                     NotChiZero, NotVirtuallyAbelian, SeifertError, UnknownSymbol, ValidationError,
                     WordSyntaxError, ZeroC)
from .h10reduce import (AtomicSystem, CompiledSystem, PolySystem, compile_system, extract_solution,
                        flatten, lift_solution, parse_poly, verify_reduction)
from .presentation import (Family, FinitePresentation, SeifertPresentation, SeifertType, chi,
                           family_id, full_presentation, parse_presentation, validate)
from .words import Word, expsum, free_reduce, h_action, parse_word

__version__ = "0.1.0"
