"""Mod-5 principal-block data for the second Conway group.

Sixteen projectives (PS) against sixteen restricted ordinaries (BS); the
pairing matrix U holds <BS_i, PS_j>.  Five further restricted ordinaries
are recorded over BS, three projectives over PS.  The expectations at the
bottom (which columns the part search certifies, the subtraction value,
the pruning outcome) are the published ones for this block.
"""

PS_NAMES = [
    "psi37", "psi51", "psi46", "psi39", "psi43", "psi42", "psi38", "psi34",
    "psi49", "phi6", "psi11", "psi32", "psi31", "psi20", "psi8", "psi4",
]

BS_DEGREES = [
    1, 23, 253, 1771, 2024, 2277, 7084, 10395, 31878, 37422,
    129536, 184437, 212520, 239085, 368874, 1291059,
]

# <BS_i, PS_j> as (1-indexed column, value) pairs per row
_U_ENTRIES = [
    [(16, 1)],
    [(15, 1)],
    [(14, 1)],
    [(13, 1)],
    [(12, 1), (16, 1)],
    [(11, 1), (15, 1)],
    [(10, 1), (13, 1)],
    [(9, 1)],
    [(8, 1), (11, 1)],
    [(7, 1), (14, 1)],
    [(6, 1), (10, 1), (13, 1), (14, 1)],
    [(5, 1), (10, 1), (12, 1), (16, 1)],
    [(4, 1), (8, 1), (11, 2)],
    [(3, 1)],
    [(2, 1), (6, 1), (9, 1), (14, 1), (15, 1)],
    [(1, 1), (2, 1), (5, 1), (7, 1), (8, 1), (11, 1), (15, 1), (16, 1)],
]


def u_matrix():
    u = [[0] * 16 for _ in range(16)]
    for i, entries in enumerate(_U_ENTRIES):
        for col, val in entries:
            u[i][col - 1] = val
    return u


# further restricted ordinary characters, written over BS
B_RELATIONS = {
    245916: [-1, 1, -1, 1, 0, -1, -1, 0, 1, 1, 0, 1, 0, 0, 0, 0],
    312984: [0, 1, -1, -1, 0, -1, 1, 0, -1, 0, 1, 0, 1, 0, 0, 0],
    637560: [0, 0, 0, 1, -1, -1, 0, 0, 1, 0, -1, 2, 0, 0, 1, 0],
    1835008: [0, -1, 0, -1, 0, 0, 1, 0, -1, -1, 0, 0, 0, 1, 1, 1],
    2072576: [0, 0, 0, -3, 1, 0, 3, -1, -2, -1, 0, -1, 1, 2, 1, 1],
}


def b_rows():
    return [B_RELATIONS[d] for d in sorted(B_RELATIONS)]


# further projectives, written over PS
P_RELATIONS = {
    "phi4": [-1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 1],
    "phi5": [-1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    "phi7": [-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0],
}


def p_rows():
    return [list(P_RELATIONS[k]) for k in ("phi4", "phi5", "phi7")]


# projective produced by tensoring a defect-zero character up: -psi37 + psi51
EXTRA_PROJECTIVE = [-1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]

# columns the part search settles (0-based PS indices)
ATOM_COLUMNS = {0: 15, 2: 13, 3: 12}
PROVABLE_COLUMNS = [4, 5, 6, 7, 8, 9, 10, 11, 12, 13]
UNSETTLED_COLUMNS = [1, 14, 15]

# subtraction scenario: at the stage where only these columns were certified
SUBTRACT_PIMS = {0, 4, 6, 7, 10}
SUBTRACT_COLUMN = 0           # psi37
SUBTRACT_TARGETS = [1, 14, 15]  # psi51, psi8, psi4: one copy comes off each
SUBTRACT_Z = 1
