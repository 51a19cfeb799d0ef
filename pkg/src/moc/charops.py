"""Operations on class functions held as coefficient rows of a table.

Everything works on the integer coefficient rows of a MocTable: exact inner
products, tensor products (family-by-family multiplication in the orbit-sum
ring), power-map symmetrizations of degree 2 and 3, restriction to p-regular
classes, induction/restriction along a class fusion, and projection onto a
block.  All results are exact; operations that would leave the integral
coefficient lattice raise DomainError instead of rounding.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exactnum import DomainError
from . import numfield
from .chartable import (
    family_basis,
    family_coords,
    family_offsets,
    from_usual,
    p_regular_table,
    regular_families,
    value_at,
)
from .intlin import dec_solve, vec_mat
from .numfield import cadd, cmul, conj, cscale, embed


# ---------------------------------------------------------------------------
# inner products

def inner_product(table, row_a, row_b):
    """<a, b> = (1/|G|) sum over G of a(g) * conj(b(g)), as a Fraction.

    On a p-regular table the sum runs over the table's classes, which is the
    pairing used between projectives and Brauer rows.
    """
    big = 1
    for fam in table.families:
        big = lcm(big, fam.conductor)
    total = {}
    for ci in range(len(table.classes)):
        f, va = value_at(table, row_a, ci)
        _, vb = value_at(table, row_b, ci)
        term = cmul(f, va, conj(f, vb))
        term = cscale(Fraction(1, table.classes[ci].centralizer), term)
        total = cadd(total, embed(f, term, big))
    r = numfield.as_rational(big, total)
    if r is None:
        raise AssertionError("inner product did not come out rational")
    return r


def inner_matrix(table, rows_a, rows_b):
    """Matrix of pairwise inner products; entries must be integers."""
    out = []
    for a in rows_a:
        line = []
        for b in rows_b:
            v = inner_product(table, a, b)
            if v.denominator != 1:
                raise DomainError("inner product is not an integer")
            line.append(int(v))
        out.append(line)
    return out


# ---------------------------------------------------------------------------
# tensor products

def _family_mult(table, fi):
    key = ("mult", fi)
    if key not in table._cache:
        fam = table.families[fi]
        table._cache[key] = numfield.mult_table(fam.conductor,
                                                family_basis(table, fi))
    return table._cache[key]


def tensor_rows(table, row_a, row_b):
    """Coefficient row of the pointwise product of two rows."""
    out = []
    for fi, fam in enumerate(table.families):
        ca = family_coords(table, row_a, fi)
        cb = family_coords(table, row_b, fi)
        mt = _family_mult(table, fi)
        w = len(fam.reps)
        acc = [0] * w
        for i in range(w):
            if not ca[i]:
                continue
            for j in range(w):
                if not cb[j]:
                    continue
                f = ca[i] * cb[j]
                for k in range(w):
                    acc[k] += f * mt[i][j][k]
        out.extend(acc)
    return out


# ---------------------------------------------------------------------------
# p-regular restriction ("hat")

def hat_restrict(table, p, rows, labels=None):
    """Rows cut down to the p-regular classes: (subtable, column map)."""
    return p_regular_table(table, p, rows=rows, labels=labels)


def vanishes_on_singular(table, p, row):
    """True when the row's coefficients vanish on every p-singular family."""
    reg = set(regular_families(table, p))
    offs = family_offsets(table)
    for fi, fam in enumerate(table.families):
        if fi in reg:
            continue
        if any(row[offs[fi]:offs[fi] + len(fam.reps)]):
            return False
    return True


# ---------------------------------------------------------------------------
# symmetrizations

_S2 = {
    "partitions": [(1, 1), (2,)],
    "csize": [2, 2],
    "chars": {(1, 1): [1, -1], (2,): [1, 1]},
}
_S3 = {
    "partitions": [(1, 1, 1), (2, 1), (3,)],
    "csize": [6, 2, 3],
    "chars": {(1, 1, 1): [1, -1, 1], (2, 1): [2, 0, -1], (3,): [1, 1, 1]},
    # rows of the p = 3 substitute for the character table, same labels
    "mod3": {(1, 1, 1): [1, -1, 1], (2, 1): [1, 1, -2], (3,): [0, 0, 3]},
}


def class_power(table, ci, m):
    """Class index of g**m for g in class ci, via the stored power maps."""
    if m == 1:
        return ci
    d = 2
    while d * d <= m:
        while m % d == 0:
            cl = table.classes[ci]
            if d not in cl.power_maps:
                raise DomainError("class %d has no %d-th power map" % (ci, d))
            ci = cl.power_maps[d]
            m //= d
        d += 1
    if m > 1:
        cl = table.classes[ci]
        if m not in cl.power_maps:
            raise DomainError("class %d has no %d-th power map" % (ci, m))
        ci = cl.power_maps[m]
    return ci


def symmetrize(table, row, lam, p=0):
    """Symmetrization of a row by a partition of 2 or 3.

    For p = 0 (or p larger than the degree) this is the ordinary
    symmetrization; for p = 3 and degree 3 the modular substitute rows are
    used.  Other modular degrees are not available.
    """
    lam = tuple(sorted(lam, reverse=True))
    r = sum(lam)
    if r == 2:
        data, weights = _S2, _S2["chars"]
    elif r == 3:
        data, weights = _S3, _S3["chars"]
    else:
        raise DomainError("symmetrizations are available for degrees 2 and 3")
    if lam not in weights:
        raise DomainError("unknown partition %r" % (lam,))
    if p and p <= r:
        if r == 3 and p == 3:
            weights = _S3["mod3"]
        else:
            raise DomainError("no modular symmetrization for degree %d at "
                              "p = %d" % (r, p))
    coeff = [Fraction(weights[lam][i], data["csize"][i])
             for i in range(len(data["partitions"]))]
    parts_needed = sorted({m for rho in data["partitions"] for m in rho})
    values = []
    for ci in range(len(table.classes)):
        powers = {}
        big = 1
        for m in parts_needed:
            f, v = value_at(table, row, class_power(table, ci, m))
            powers[m] = (f, v)
            big = lcm(big, f)
        cache = {m: embed(f, v, big) for m, (f, v) in powers.items()}
        total = {}
        for w, rho in zip(coeff, data["partitions"]):
            if not w:
                continue
            term = numfield.from_rational(big, 1)
            for part in rho:
                term = cmul(big, term, cache[part])
            total = cadd(total, cscale(w, term))
        values.append((big, total))
    return from_usual(table, values)


def sym_square_plus(table, row):
    return symmetrize(table, row, (2,))


def sym_square_minus(table, row):
    return symmetrize(table, row, (1, 1))


# ---------------------------------------------------------------------------
# induction and restriction

@dataclass
class Fusion:
    sub: object          # subgroup table
    sup: object          # overgroup table
    class_map: list      # sub class index -> sup class index

    def validate(self):
        if len(self.class_map) != len(self.sub.classes):
            raise DomainError("fusion map has wrong length")
        if self.sup.order % self.sub.order:
            raise DomainError("subgroup order does not divide the group order")
        for hi, gi in enumerate(self.class_map):
            h = self.sub.classes[hi]
            g = self.sup.classes[gi]
            if h.order != g.order:
                raise DomainError("fusion does not preserve element orders "
                                  "(class %d)" % hi)
            if g.centralizer % 1 or h.centralizer == 0:
                raise DomainError("bad centralizer data")
        return self


def restrict_row(fusion, row):
    """Restriction along the fusion: a coefficient row of the subgroup table."""
    values = []
    for hi, gi in enumerate(fusion.class_map):
        values.append(value_at(fusion.sup, row, gi))
    return from_usual(fusion.sub, values)


def induce_row(fusion, row):
    """Induction along the fusion: a coefficient row of the overgroup table."""
    sup, sub = fusion.sup, fusion.sub
    buckets = {}
    for hi, gi in enumerate(fusion.class_map):
        buckets.setdefault(gi, []).append(hi)
    values = []
    for gi in range(len(sup.classes)):
        cg = sup.classes[gi].centralizer
        f_acc, acc = 1, {}
        for hi in buckets.get(gi, ()):
            ch = sub.classes[hi].centralizer
            if cg % ch:
                raise DomainError("centralizer orders are incompatible at "
                                  "class %d" % hi)
            f, v = value_at(sub, row, hi)
            big = lcm(f_acc, f)
            acc = cadd(embed(f_acc, acc, big),
                       cscale(cg // ch, embed(f, v, big)))
            f_acc = big
        values.append((f_acc, acc))
    return from_usual(sup, values)


# ---------------------------------------------------------------------------
# block projection

def block_project(table, row, block_data, bi):
    """Component of a row in the bi-th block.

    The row must be an integral combination of the table's rows; its
    coefficients outside the block are zeroed and the rest recombined.
    """
    res = dec_solve(row, table.rows)
    if res.status != "coefficients":
        raise DomainError("row is not an integral combination of the table")
    keep = set(block_data.blocks[bi])
    coeffs = [c if i in keep else 0 for i, c in enumerate(res.coeffs)]
    return vec_mat(coeffs, table.rows), coeffs
