"""Character tables stored in coefficient form.

A table keeps one integer coefficient column per orbit-sum basis element of
each algebraic conjugacy family, instead of one value column per class.  A
family bundles the classes whose values are Galois conjugates: it records the
conductor f, generators of the subgroup H of (Z/f)* fixing the values, the
orbit-sum exponents of its basis, the member classes, and the Galois exponent
attached to each member.  The value of a row at member l of a family is
sigma_{k_l} applied to (coefficients . basis), so the whole table is exact
integers and the usual complex-valued table is a derived object.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .exactnum import DomainError, FormatError, legacy_decode_stream, \
    legacy_encode_stream
from . import numfield
from .numfield import (
    cadd,
    cmul,
    cscale,
    coords_elem,
    elem_coords,
    embed,
    galois_apply,
    orbit_sum_elem,
    subgroup,
)
from .intlin import solve_rational


@dataclass
class ClassInfo:
    name: str
    order: int
    centralizer: int
    power_maps: dict = field(default_factory=dict)   # prime -> class index


@dataclass
class Family:
    conductor: int
    gens: tuple
    reps: list          # orbit-sum exponents of the basis elements
    members: list       # class indices; members[0] is the representative
    galois: list        # Galois exponent per member; galois[0] == 1


@dataclass
class MocTable:
    name: str
    order: int
    prime: int                    # 0: ordinary table; p: p-regular table
    classes: list
    families: list
    labels: list
    rows: list
    _cache: dict = field(default_factory=dict, compare=False, repr=False)


def n_columns(table):
    return sum(len(f.reps) for f in table.families)


def family_offsets(table):
    offs = []
    pos = 0
    for f in table.families:
        offs.append(pos)
        pos += len(f.reps)
    return offs


def family_of_class(table):
    if "fmap" not in table._cache:
        out = [None] * len(table.classes)
        for fi, fam in enumerate(table.families):
            for ci in fam.members:
                out[ci] = fi
        table._cache["fmap"] = out
    return table._cache["fmap"]


def validate(table):
    """Structural validation; raises DomainError on violations."""
    s = len(table.classes)
    if s == 0:
        raise DomainError("table has no classes")
    if table.classes[0].order != 1:
        raise DomainError("class 0 must be the identity class")
    if table.classes[0].centralizer != table.order:
        raise DomainError("identity centralizer must equal the group order")
    for ci, cl in enumerate(table.classes):
        if cl.order < 1 or cl.centralizer < 1:
            raise DomainError("bad order data on class %d" % ci)
        if table.order % cl.centralizer:
            raise DomainError("centralizer of class %d does not divide "
                              "the group order" % ci)
        for q, img in cl.power_maps.items():
            if not (0 <= img < s):
                raise DomainError("power map %d of class %d out of range"
                                  % (q, ci))
            target = cl.order // gcd(cl.order, q)
            if table.classes[img].order != target:
                raise DomainError("power map %d of class %d hits a class of "
                                  "wrong order" % (q, ci))
    if table.prime == 0:
        if sum(table.order // cl.centralizer for cl in table.classes) \
                != table.order:
            raise DomainError("class sizes do not add up to the group order")
    else:
        for cl in table.classes:
            if cl.order % table.prime == 0:
                raise DomainError("p-singular class in a mod-%d table"
                                  % table.prime)
    seen = set()
    for fi, fam in enumerate(table.families):
        if len(fam.reps) != len(fam.members) or \
                len(fam.galois) != len(fam.members):
            raise DomainError("family %d has mismatched widths" % fi)
        if not fam.members:
            raise DomainError("family %d is empty" % fi)
        if fam.galois[0] % fam.conductor != 1 % fam.conductor:
            raise DomainError("family %d must list its representative first"
                              % fi)
        orders = {table.classes[ci].order for ci in fam.members}
        if len(orders) != 1:
            raise DomainError("family %d mixes element orders" % fi)
        if orders.pop() % fam.conductor:
            raise DomainError("family %d conductor does not divide the "
                              "element order" % fi)
        sizes = {table.classes[ci].centralizer for ci in fam.members}
        if len(sizes) != 1:
            raise DomainError("family %d mixes centralizer orders" % fi)
        if fam.conductor > 1:
            ks = {k % fam.conductor for k in fam.galois}
            if len(ks) != len(fam.members):
                raise DomainError("family %d repeats a Galois exponent" % fi)
        for ci in fam.members:
            if ci in seen or not (0 <= ci < s):
                raise DomainError("family %d has bad member %d" % (fi, ci))
            seen.add(ci)
    if len(seen) != s:
        raise DomainError("families do not cover every class")
    width = n_columns(table)
    if width != s:
        raise DomainError("coefficient width %d != class count %d"
                          % (width, s))
    if len(table.labels) != len(table.rows):
        raise DomainError("label/row count mismatch")
    for ri, row in enumerate(table.rows):
        if len(row) != width:
            raise DomainError("row %d has length %d, expected %d"
                              % (ri, len(row), width))
    return table


# ---------------------------------------------------------------------------
# values

def family_basis(table, fi):
    fam = table.families[fi]
    key = ("basis", fi)
    if key not in table._cache:
        grp = subgroup(fam.conductor, fam.gens)
        table._cache[key] = [orbit_sum_elem(fam.conductor, grp, e)
                             for e in fam.reps]
    return table._cache[key]


def member_basis(table, fi, l):
    """Family basis pushed through the member's Galois exponent."""
    key = ("member", fi, l)
    if key not in table._cache:
        fam = table.families[fi]
        k = fam.galois[l]
        table._cache[key] = [galois_apply(fam.conductor, b, k)
                             for b in family_basis(table, fi)]
    return table._cache[key]


def family_coords(table, row, fi):
    off = family_offsets(table)[fi]
    fam = table.families[fi]
    return row[off:off + len(fam.reps)]


def value_at(table, row, ci):
    """Value of a coefficient row at class ci: (conductor, element)."""
    fi = family_of_class(table)[ci]
    fam = table.families[fi]
    l = fam.members.index(ci)
    basis = member_basis(table, fi, l)
    out = {}
    for c, b in zip(family_coords(table, row, fi), basis):
        if c:
            out = cadd(out, cscale(c, b))
    return fam.conductor, out


def row_degree(table, row):
    f, v = value_at(table, row, 0)
    r = numfield.as_rational(f, v)
    if r is None or r.denominator != 1:
        raise DomainError("degree is not a rational integer")
    return int(r)


def to_usual(table):
    """All rows as per-class (conductor, element) values."""
    return [[value_at(table, row, ci) for ci in range(len(table.classes))]
            for row in table.rows]


def from_usual(table, values):
    """Coefficient row from per-class (conductor, element) values.

    The row is solved family by family from the representative class and the
    remaining members are checked to be the matching Galois conjugates;
    non-integral coefficient solutions are rejected.
    """
    out = []
    for fi, fam in enumerate(table.families):
        f = fam.conductor
        rep_ci = fam.members[0]
        vf, val = values[rep_ci]
        big = lcm(f, vf)
        target = embed(vf, val, big)
        basis = [embed(f, b, big) for b in family_basis(table, fi)]
        rows = [numfield.elem_coords(big, b) for b in basis]
        x = solve_rational(rows, numfield.elem_coords(big, target))
        if x is None:
            raise DomainError("value at class %d is outside its family field"
                              % rep_ci)
        if any(c.denominator != 1 for c in x):
            raise DomainError("value at class %d is not an algebraic integer "
                              "over the family basis" % rep_ci)
        coeffs = [int(c) for c in x]
        for l, ci in enumerate(fam.members):
            vf2, val2 = values[ci]
            want = {}
            for c, b in zip(coeffs, member_basis(table, fi, l)):
                want = cadd(want, cscale(c, b))
            if embed(vf2, val2, lcm(f, vf2)) != embed(f, want, lcm(f, vf2)):
                raise DomainError("values at family %d are not Galois "
                                  "conjugate" % fi)
        out.extend(coeffs)
    return out


# ---------------------------------------------------------------------------
# p-regular restriction

def regular_classes(table, p):
    return [ci for ci, cl in enumerate(table.classes) if cl.order % p]


def regular_families(table, p):
    return [fi for fi, fam in enumerate(table.families)
            if table.classes[fam.members[0]].order % p]


def p_regular_table(table, p, rows=None, labels=None):
    """Sub-table on the p-regular classes (coefficient columns restricted)."""
    if table.prime:
        raise DomainError("table is already a modular table")
    keep = regular_classes(table, p)
    cmap = {ci: i for i, ci in enumerate(keep)}
    classes = []
    for ci in keep:
        cl = table.classes[ci]
        pm = {q: cmap[img] for q, img in cl.power_maps.items()
              if img in cmap}
        classes.append(ClassInfo(cl.name, cl.order, cl.centralizer, pm))
    fams = []
    cols = []
    offs = family_offsets(table)
    for fi in regular_families(table, p):
        fam = table.families[fi]
        fams.append(Family(fam.conductor, fam.gens, list(fam.reps),
                           [cmap[ci] for ci in fam.members],
                           list(fam.galois)))
        cols.extend(range(offs[fi], offs[fi] + len(fam.reps)))
    if rows is None:
        rows = table.rows
        labels = list(table.labels)
    elif labels is None:
        labels = ["r%d" % i for i in range(len(rows))]
    new_rows = [[row[j] for j in cols] for row in rows]
    sub = MocTable(name=table.name, order=table.order, prime=p,
                   classes=classes, families=fams,
                   labels=list(labels), rows=new_rows)
    return validate(sub), cols


# ---------------------------------------------------------------------------
# central characters and blocks

def central_character(table, ri):
    """Per-family integer coefficient vectors of the central character."""
    row = table.rows[ri]
    deg = row_degree(table, row)
    if deg <= 0:
        raise DomainError("row %d does not have a positive degree" % ri)
    out = []
    for fi, fam in enumerate(table.families):
        cz = table.classes[fam.members[0]].centralizer
        scale = Fraction(table.order, cz * deg)
        coords = []
        for c in family_coords(table, row, fi):
            v = scale * c
            if v.denominator != 1:
                raise DomainError("central character of row %d is not "
                                  "integral on family %d" % (ri, fi))
            coords.append(int(v))
        out.append(coords)
    return out


@dataclass
class BlockData:
    prime: int
    blocks: list        # lists of row indices
    defects: list       # one defect per block
    block_of: list      # row index -> block index


def block_distribution(table, p):
    """Partition of the rows into p-blocks.

    Rows land in the same block exactly when their central characters agree
    modulo p on every p-regular family.
    """
    if table.prime:
        raise DomainError("blocks are computed from the ordinary table")
    reg = regular_families(table, p)
    keys = {}
    order_v = _valuation(table.order, p)
    for ri in range(len(table.rows)):
        omega = central_character(table, ri)
        key = tuple(tuple(x % p for x in omega[fi]) for fi in reg)
        keys.setdefault(key, []).append(ri)
    blocks = sorted(keys.values(), key=lambda b: b[0])
    block_of = [None] * len(table.rows)
    defects = []
    for bi, rows in enumerate(blocks):
        for ri in rows:
            block_of[ri] = bi
        d = order_v - min(_valuation(row_degree(table, table.rows[ri]), p)
                          for ri in rows)
        defects.append(d)
    return BlockData(prime=p, blocks=blocks, defects=defects,
                     block_of=block_of)


def defect_zero(table, ri, p):
    deg = row_degree(table, table.rows[ri])
    return _valuation(table.order, p) == _valuation(deg, p)


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# text format

def write_table(table, legacy=False):
    lines = ["table %s" % table.name,
             "order %d" % table.order,
             "prime %d" % table.prime,
             "classes %d" % len(table.classes)]
    for cl in table.classes:
        lines.append("%s %d %d" % (cl.name, cl.order, cl.centralizer))
    primes = sorted({q for cl in table.classes for q in cl.power_maps})
    lines.append("powermaps %d" % len(primes))
    for q in primes:
        entries = [str(cl.power_maps[q] + 1) if q in cl.power_maps else "0"
                   for cl in table.classes]
        lines.append("%d %s" % (q, " ".join(entries)))
    lines.append("families %d" % len(table.families))
    for fam in table.families:
        parts = [str(fam.conductor), str(len(fam.gens))]
        parts += [str(g) for g in fam.gens]
        parts.append(str(len(fam.members)))
        parts += [str(ci + 1) for ci in fam.members]
        parts += [str(k) for k in fam.galois]
        parts += [str(e) for e in fam.reps]
        lines.append(" ".join(parts))
    lines.append("rows %d" % len(table.rows))
    for label, row in zip(table.labels, table.rows):
        if legacy:
            coords = " ".join(str(w) for w in legacy_encode_stream(row))
        else:
            coords = " ".join(str(x) for x in row)
        lines.append("%s %s" % (label, coords))
    return "\n".join(lines) + "\n"


def _expect(line, word):
    parts = line.split()
    if len(parts) < 2 or parts[0] != word:
        raise FormatError("expected '%s <value>', found %r" % (word, line))
    return parts[1:]


def read_table(text, legacy=False):
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if len(lines) < 4:
        raise FormatError("table text too short")
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(lines):
            raise FormatError("unexpected end of table text")
        ln = lines[pos]
        pos += 1
        return ln

    name = _expect(take(), "table")[0]
    order = int(_expect(take(), "order")[0])
    prime = int(_expect(take(), "prime")[0])
    s = int(_expect(take(), "classes")[0])
    classes = []
    for _ in range(s):
        parts = take().split()
        if len(parts) != 3:
            raise FormatError("class line needs 'name order centralizer'")
        classes.append(ClassInfo(parts[0], int(parts[1]), int(parts[2])))
    npm = int(_expect(take(), "powermaps")[0])
    for _ in range(npm):
        parts = [int(t) for t in take().split()]
        if len(parts) != s + 1:
            raise FormatError("power map line has wrong width")
        q = parts[0]
        for ci, img in enumerate(parts[1:]):
            if img:
                classes[ci].power_maps[q] = img - 1
    nf = int(_expect(take(), "families")[0])
    families = []
    for _ in range(nf):
        parts = [int(t) for t in take().split()]
        it = iter(parts)
        f = next(it)
        ng = next(it)
        gens = tuple(next(it) for _ in range(ng))
        w = next(it)
        members = [next(it) - 1 for _ in range(w)]
        galois = [next(it) for _ in range(w)]
        reps = [next(it) for _ in range(w)]
        if next(it, None) is not None:
            raise FormatError("trailing data on family line")
        families.append(Family(f, gens, reps, members, galois))
    m = int(_expect(take(), "rows")[0])
    labels = []
    rows = []
    for _ in range(m):
        parts = take().split()
        labels.append(parts[0])
        try:
            nums = [int(t) for t in parts[1:]]
        except ValueError:
            raise FormatError("non-integer row coefficient") from None
        if legacy:
            nums = legacy_decode_stream(nums)
        if len(nums) != s:
            raise FormatError("row %r has %d coefficients, expected %d"
                              % (parts[0], len(nums), s))
        rows.append(nums)
    if pos != len(lines):
        raise FormatError("trailing lines after the rows section")
    table = MocTable(name=name, order=order, prime=prime, classes=classes,
                     families=families, labels=labels, rows=rows)
    return validate(table)
