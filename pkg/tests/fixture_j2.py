"""Mod-3 Brauer character table for the second Janko group.

Fourteen irreducible Brauer characters on the fourteen 3-regular classes.
The order-5 and order-10 classes come in Galois pairs whose values live in
the conductor-5 field, so those families are two columns wide.  Tensoring
the first degree-13 character with itself and solving over the full table
is the worked multiplication example for this group.
"""

from moc.chartable import ClassInfo, Family, MocTable, validate

_CLASSES = [
    ("1a", 1, 604800), ("2a", 2, 1920), ("2b", 2, 240), ("4a", 4, 96),
    ("5a", 5, 300), ("5b", 5, 300), ("5c", 5, 50), ("5d", 5, 50),
    ("7a", 7, 7), ("8a", 8, 8),
    ("10a", 10, 20), ("10b", 10, 20), ("10c", 10, 10), ("10d", 10, 10),
]

LABELS = ["1", "13a", "13b", "21a", "21b", "70a", "70b", "133",
          "36", "90", "63", "225", "189a", "189b"]

ROWS = [
    [1, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 0, 1, 0],
    [13, -3, 1, 1, 2, 3, 1, 1, -1, -1, -1, 1, 0, 1],
    [13, -3, 1, 1, -1, -3, 0, -1, -1, -1, -2, -1, -1, -1],
    [21, 5, -3, 1, 4, 1, 2, 2, 0, -1, -1, -1, 0, 0],
    [21, 5, -3, 1, 3, -1, 0, -2, 0, -1, 0, 1, 0, 0],
    [70, -10, -2, 2, 5, 5, 0, 0, 0, 0, 0, -1, 0, 0],
    [70, -10, -2, 2, 0, -5, 0, 0, 0, 0, 1, 1, 0, 0],
    [133, 5, 1, -3, -7, 0, -2, 0, 0, 1, 1, 0, 0, 0],
    [36, 4, 0, 4, -4, 0, 1, 0, 1, 0, 0, 0, -1, 0],
    [90, 10, 6, -2, 5, 0, 0, 0, -1, 0, 1, 0, 0, 0],
    [63, 15, -1, 3, 3, 0, -2, 0, 0, 1, -1, 0, 0, 0],
    [225, -15, 5, -3, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0],
    [189, -3, -3, -3, 3, 3, 2, 1, 0, 1, 0, 1, -1, -1],
    [189, -3, -3, -3, 0, -3, 1, -1, 0, 1, -1, -1, 0, 1],
]


def j2_table():
    classes = [ClassInfo(n, o, c, {}) for n, o, c in _CLASSES]
    families = []
    pair_starts = {4, 6, 10, 12}
    ci = 0
    while ci < len(classes):
        if ci in pair_starts:
            families.append(Family(5, (4,), [0, 1], [ci, ci + 1], [1, 2]))
            ci += 2
        else:
            families.append(Family(1, (), [0], [ci], [1]))
            ci += 1
    t = MocTable("J2", 604800, 3, classes, families, list(LABELS),
                 [list(r) for r in ROWS])
    validate(t)
    return t


# 13a tensored with itself, and its expression over the table rows
TENSOR_SQUARE_13A = [169, 9, 1, 1, 13, 3, 2, 1, 1, 1, 2, -3, 1, -1]
TENSOR_SQUARE_COEFFS = [1, -1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0]
