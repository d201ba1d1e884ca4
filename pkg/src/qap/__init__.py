"""Quotient algebra partitions of su(N) and recursive Cartan factorizations."""
from .spinor import BitString, Spinor, spinor_mul, parity, commutator, to_matrix
from .lambdas import LambdaGen, LGen, SubscriptTable
from .linear import Gen, Span
from .partition import (QuotientAlgebra, Subspace, build_qap, intrinsic_center, remove_process,
                        verify_closure, conjugate_qap, diagonalizer, binary_label)
from .cartan import (CartanSubalgebra, enumerate_cartans, extend_neighbors, resolve_selection,
                     enumerate_selections, make_split, verify_split)
from .kak import kak_ai, recursive_factor, canonical_sequence, tau_order, emit_gates

__all__ = [
    "BitString", "Spinor", "spinor_mul", "parity", "commutator", "to_matrix",
    "LambdaGen", "LGen", "SubscriptTable", "Gen", "Span",
    "QuotientAlgebra", "Subspace", "build_qap", "intrinsic_center", "remove_process",
    "verify_closure", "conjugate_qap", "diagonalizer", "binary_label",
    "CartanSubalgebra", "enumerate_cartans", "extend_neighbors", "resolve_selection",
    "enumerate_selections", "make_split", "verify_split",
    "kak_ai", "recursive_factor", "canonical_sequence", "tau_order", "emit_gates",
]
