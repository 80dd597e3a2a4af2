"""Exact computations for ascending HNN extensions of free groups and SL(2) trace polynomials."""

from .words import Endomorphism, FreeWord, commutator, parse_endomorphism, parse_word
from .polyring import Polynomial, parse_poly
from .trace import Mat2, TraceContext, eval_word, kappa, trace_poly
from .variety import build_system, check_component, solve_triangular, solvable_pair_probe
from .subgroups import build_folded, is_injective
from .hnn import HnnPresentation, equal, magnus_rewrite, normal_form
from .quotients import affine_witness, perm_witness

__version__ = "0.1.0"
