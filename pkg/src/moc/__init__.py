"""Exact workbench for modular character computations.

Subpackages cover exact integer/rational primitives, cyclotomic orbit-sum
bases, character tables in coefficient form, class-function operations,
integer linear algebra (q-adic solving, proper bases, all-integer ILP),
basic-set bookkeeping, decomposition-matrix improvement steps, and the
persistent command-line workspace.
"""

__all__ = [
    "exactnum",
    "numfield",
    "chartable",
    "charops",
    "intlin",
    "ilp",
    "basis",
    "improve",
    "session",
]
