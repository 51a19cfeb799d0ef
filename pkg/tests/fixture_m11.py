"""Mod-2 principal-block data for the smallest Mathieu group.

Three tensor products of defect-zero characters with ordinaries give a
projective basic set; T holds the products of the eight ordinary
characters with its members.  The three degree-10 characters contain one
real one; the parity argument pins the projective cover of the trivial
character uniquely and yields a containment between basic-set members.
"""

# products <chi_i, PS_j>; rows follow DEGREES
T_ROWS = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 1, 0],
    [0, 1, 0],
    [1, 1, 0],
    [1, 1, 1],
    [2, 1, 1],
    [2, 2, 1],
]

DEGREES = [1, 10, 10, 10, 11, 44, 45, 55]

# the two complex degree-10 characters sit at rows 2 and 3
REAL_ROWS = [0, 1, 4, 5, 6, 7]

UNIQUE_SOLUTION = [1, 0, -1]
CONTAINMENT = (2, 0)  # PS_3 is a summand of PS_1
