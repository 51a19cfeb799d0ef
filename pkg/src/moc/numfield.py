"""Cyclotomic integers and orbit-sum bases of abelian number fields.

Elements of Q(zeta_f) are dicts {exponent: coefficient} over a canonical
integral basis of Z[zeta_f].  The basis is assembled prime power by prime
power: for p^k dividing f exactly, an exponent t = m + p^(k-1)*i is a basis
exponent when (m >= 1 and i <= p-2) or (m == 0 and i >= 1); the remaining
roots expand with a single minus sign.  General conductors combine the local
choices through the Chinese remainder theorem, so reducing any root of unity
costs one table lookup.

On top of that sit the orbit-sum bases: for a subgroup H of (Z/f)* the
distinct-root sums over H-orbits, organized by root order, give an integral
basis of the fixed ring Z[zeta_f]^H -- with one twist when H meets the
kernel of reduction to the radical of f (possible only for 8 | f), where
orbits pair up or drop out.  ``fixed_lattice_basis`` computes the same ring
directly as an integer kernel and serves as the certification oracle.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exactnum import DomainError
from .intlin import (
    hnf,
    kernel_basis,
    solve_rational,
    unimodular_transition,
)


# ---------------------------------------------------------------------------
# integer utilities

@lru_cache(maxsize=None)
def factorize(n):
    """Sorted tuple of (prime, prime**k) pairs for n >= 1."""
    if n < 1:
        raise DomainError("factorize expects a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                n //= d
                q *= d
            out.append((d, q))
        d += 1
    if n > 1:
        out.append((n, n))
    return tuple(out)


def radical(n):
    return 1 if n == 1 else _prod(p for p, _ in factorize(n))


def euler_phi(n):
    return 1 if n == 1 else _prod(q - q // p for p, q in factorize(n))


def _prod(it):
    r = 1
    for x in it:
        r *= x
    return r


@lru_cache(maxsize=None)
def unit_group(f):
    """Sorted tuple of residues coprime to f (with unit_group(1) == (0,))."""
    if f == 1:
        return (0,)
    return tuple(a for a in range(f) if gcd(a, f) == 1)


def subgroup(f, gens):
    """Closure of ``gens`` in (Z/f)*, as a sorted tuple."""
    if f == 1:
        return (0,)
    start = []
    for g in gens:
        g %= f
        if gcd(g, f) != 1:
            raise DomainError("generator %d is not a unit mod %d" % (g, f))
        start.append(g)
    group = {1}
    frontier = [1]
    while frontier:
        h = frontier.pop()
        for g in start:
            x = (h * g) % f
            if x not in group:
                group.add(x)
                frontier.append(x)
    return tuple(sorted(group))


# ---------------------------------------------------------------------------
# canonical basis of Z[zeta_f]

@lru_cache(maxsize=None)
def _crt_data(f):
    parts = factorize(f)
    mults = []
    for _, q in parts:
        rest = f // q
        mults.append(rest * pow(rest, -1, q) % f)
    return parts, tuple(mults)


def _local_expansion(p, q, t):
    """Expansion of zeta_q^t over the local basis: list of (exponent, sign)."""
    pk1 = q // p
    m = t % pk1
    i = t // pk1
    if (m >= 1 and i <= p - 2) or (m == 0 and i >= 1):
        return ((t, 1),)
    if m >= 1:
        return tuple((m + j * pk1, -1) for j in range(p - 1))
    return tuple((j * pk1, -1) for j in range(1, p))


@lru_cache(maxsize=None)
def root_expansion(f, e):
    """Canonical expansion of zeta_f^e: tuple of (basis exponent, sign)."""
    if f == 1:
        return ((0, 1),)
    e %= f
    parts, mults = _crt_data(f)
    terms = [(0, 1)]
    for (p, q), mult in zip(parts, mults):
        local = _local_expansion(p, q, e % q)
        terms = [((acc + t * mult) % f, s0 * s1)
                 for acc, s0 in terms for t, s1 in local]
    return tuple(terms)


@lru_cache(maxsize=None)
def zeta_basis(f):
    """Sorted canonical basis exponents (length phi(f))."""
    if f == 1:
        return (0,)
    parts, mults = _crt_data(f)
    exps = [0]
    for (p, q), mult in zip(parts, mults):
        pk1 = q // p
        local = [t for t in range(q)
                 if ((t % pk1 >= 1 and t // pk1 <= p - 2)
                     or (t % pk1 == 0 and t // pk1 >= 1))]
        exps = [(acc + t * mult) % f for acc in exps for t in local]
    exps.sort()
    assert len(exps) == euler_phi(f)
    return tuple(exps)


# elements: dict {basis exponent: nonzero coefficient}

def czero():
    return {}


def make_elem(f, pairs):
    """Canonical element from (root exponent, coefficient) pairs."""
    out = {}
    for e, c in pairs:
        if not c:
            continue
        for b, s in root_expansion(f, e):
            v = out.get(b, 0) + s * c
            if v:
                out[b] = v
            else:
                out.pop(b, None)
    return out


def cadd(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def cneg(a):
    return {e: -c for e, c in a.items()}


def cscale(c, a):
    if not c:
        return {}
    return {e: c * x for e, x in a.items()}


def cmul(f, a, b):
    pairs = []
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            pairs.append(((e1 + e2) % f, c1 * c2))
    return make_elem(f, pairs)


def galois_apply(f, a, k):
    """Image under zeta -> zeta^k (k a unit mod f)."""
    if f == 1:
        return dict(a)
    k %= f
    if gcd(k, f) != 1:
        raise DomainError("galois exponent %d is not a unit mod %d" % (k, f))
    return make_elem(f, (((e * k) % f, c) for e, c in a.items()))


def conj(f, a):
    return galois_apply(f, a, f - 1) if f > 2 else dict(a)


def from_rational(f, r):
    return make_elem(f, ((0, r),))


def as_rational(f, a):
    """The element as a Fraction when it lies in Q, else None."""
    if not a:
        return Fraction(0)
    one = dict(root_expansion(f, 0))
    e0, s0 = next(iter(one.items()))
    if e0 not in a:
        return None
    r = Fraction(a[e0], s0)
    if all(a.get(e, 0) == s * r for e, s in one.items()) and len(a) == len(one):
        return r
    return None


def elem_coords(f, a):
    """Coordinates over zeta_basis(f) order."""
    basis = zeta_basis(f)
    return [a.get(e, 0) for e in basis]


def coords_elem(f, coords):
    basis = zeta_basis(f)
    return {e: c for e, c in zip(basis, coords) if c}


def embed(f, a, big_f):
    """Reinterpret an element of Q(zeta_f) inside Q(zeta_{big_f})."""
    if big_f % f:
        raise DomainError("%d does not divide %d" % (f, big_f))
    step = big_f // f
    return make_elem(big_f, ((e * step, c) for e, c in a.items()))


# ---------------------------------------------------------------------------
# orbit sums and the basis construction

def orbit_exponents(f, group, e):
    """Sorted distinct exponents {h*e mod f : h in group}."""
    if f == 1:
        return (0,)
    return tuple(sorted({(h * e) % f for h in group}))


def orbit_sum_elem(f, group, e):
    return make_elem(f, ((x, 1) for x in orbit_exponents(f, group, e)))


@dataclass
class OrbitSumBasis:
    f: int
    gens: tuple
    group: tuple
    sums: list          # per element: tuple of summed root exponents
    elements: list      # canonical expansions
    coords: list        # rows over zeta_basis(f)


def _conductor_defect(f, group):
    """A prime p | f whose kernel to level f/p sits inside the group, if any."""
    for p, _ in factorize(f):
        fp = f // p
        kernel = [a for a in unit_group(f)
                  if (a % fp == 1 % fp)]
        if all(a in set(group) for a in kernel):
            return p
    return None


def lenstra_basis(f, gens, on_nonminimal="reject"):
    """Orbit-sum integral basis of the fixed ring Z[zeta_f]^H, H = <gens>.

    ``on_nonminimal`` controls what happens when f is not the conductor of
    the fixed field: "reject" raises, "reduce" recurses on f/p.
    """
    group = subgroup(f, gens)
    if f == 1:
        return OrbitSumBasis(f=1, gens=tuple(gens), group=group,
                             sums=[(0,)], elements=[{0: 1}], coords=[[1]])
    p = _conductor_defect(f, group)
    if p is not None:
        if on_nonminimal == "reduce":
            fp = f // p
            return lenstra_basis(fp, sorted({a % fp for a in group}),
                                 on_nonminimal)
        raise DomainError("%d is not the conductor of the fixed field" % f)

    f0 = radical(f)
    in_s = [e for e in range(f)
            if (f // gcd(e, f)) % f0 == 0]
    # group the admissible roots into power-coherent classes
    def class_key(e):
        order = f // gcd(e, f)
        d = _prod(p for p, q in factorize(order) if order % (p * p) == 0) \
            if order > 1 else 1
        return (d, (e * d) % f)

    classes = {}
    for e in in_s:
        classes.setdefault(class_key(e), []).append(e)
    class_of = {}
    for key, members in classes.items():
        members.sort()
        for e in members:
            class_of[e] = key

    gset = set(group)
    kernel0 = [a for a in unit_group(f) if a % f0 == 1 % f0]
    h0 = sorted(gset.intersection(kernel0))
    exceptional = len(h0) > 1

    sums = []
    if not exceptional:
        unprocessed = set(classes)
        while unprocessed:
            key = min(unprocessed, key=lambda k: classes[k][0])
            eta = classes[key][0]
            unprocessed -= {class_of[(h * eta) % f] for h in group}
            d = key[0]
            step = f // d
            for i in range(euler_phi(d)):
                sums.append(orbit_exponents(f, group, (eta + i * step) % f))
    else:
        if len(h0) != 2 or f % 8:
            raise DomainError("unexpected fixed-kernel subgroup structure")
        sigma0 = h0[1]
        h1 = tuple(a for a in group if a % 4 == 1)
        if len(h1) * 2 != len(group) or sigma0 % 4 == 1:
            raise DomainError("group does not split over the exceptional part")
        unprocessed = set(classes)
        while unprocessed:
            key = min(unprocessed, key=lambda k: classes[k][0])
            eta = classes[key][0]
            orbit1 = {class_of[(h * eta) % f] for h in h1}
            partner = {class_of[(sigma0 * classes[k][0]) % f] for k in orbit1}
            unprocessed -= orbit1
            d = key[0]
            step = f // d
            if partner != orbit1:
                # sigma0 pairs this stack with a disjoint one: a single run
                # of full-group orbit sums covers both
                unprocessed -= partner
                for i in range(euler_phi(d)):
                    sums.append(orbit_exponents(f, group, (eta + i * step) % f))
            elif (f // gcd(eta, f)) % 4:
                # sigma0 fixes the stack pointwise: the smaller group's
                # orbit sums survive unchanged
                for i in range(euler_phi(d)):
                    sums.append(orbit_exponents(f, h1, (eta + i * step) % f))
            # else 4 | root order: the fixed part of this stack vanishes

    elements = [make_elem(f, ((e, 1) for e in s)) for s in sums]
    coords = [elem_coords(f, el) for el in elements]
    expected = euler_phi(f) // len(group)
    if len(elements) != expected:
        raise AssertionError("basis construction produced %d of %d elements"
                             % (len(elements), expected))
    for el in elements:
        for g in gens:
            if galois_apply(f, el, g) != el:
                raise AssertionError("constructed element is not fixed")
    return OrbitSumBasis(f=f, gens=tuple(gens), group=group, sums=sums,
                         elements=elements, coords=coords)


def fixed_lattice_basis(f, gens):
    """Oracle: HNF basis (coordinate rows) of the H-fixed sublattice of
    Z[zeta_f], computed from the Galois action alone."""
    group = subgroup(f, gens)
    basis = zeta_basis(f)
    n = len(basis)
    stacked = []
    mats = []
    for g in group:
        if g in (1, 0):
            continue
        rows = []
        for e in basis:
            img = dict(root_expansion(f, (e * g) % f))
            rows.append([img.get(b, 0) for b in basis])
        mats.append(rows)
    if not mats:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        row = []
        for mat in mats:
            for j in range(n):
                row.append(mat[i][j] - (1 if i == j else 0))
        stacked.append(row)
    return hnf(kernel_basis(stacked))


def certify_spanning(f, gens, elems):
    """Unimodular transition from the oracle basis to ``elems``, or None."""
    oracle = fixed_lattice_basis(f, gens)
    cand = [elem_coords(f, el) for el in elems]
    return unimodular_transition(oracle, cand)


# ---------------------------------------------------------------------------
# derived structure: traces, Gram matrices, multiplication tables

def coset_reps(f, group):
    gset = set(group)
    reps = []
    covered = set()
    for a in unit_group(f):
        if a in covered:
            continue
        reps.append(a)
        covered.update((a * h) % f for h in gset)
    return reps


def trace_fixed(f, group, a):
    """Trace from the fixed field down to Q, as an exact Fraction."""
    total = {}
    for k in coset_reps(f, group):
        total = cadd(total, galois_apply(f, a, k) if f > 1 else a)
    r = as_rational(f, total)
    if r is None:
        raise AssertionError("trace did not come out rational")
    return r


def gram_matrix(f, group, elems):
    """Trace-form Gram matrix of the elements (exact integers)."""
    out = []
    for x in elems:
        row = []
        for y in elems:
            t = trace_fixed(f, group, cmul(f, x, y))
            if t.denominator != 1:
                raise AssertionError("trace form is not integral")
            row.append(int(t))
        out.append(row)
    return out


def solve_over(f, elems, target):
    """Rational coordinates of ``target`` over ``elems``, or None."""
    rows = [elem_coords(f, el) for el in elems]
    return solve_rational(rows, elem_coords(f, target))


def mult_table(f, elems):
    """Structure constants c[i][j] (list over the basis) with integrality
    checked; requires ``elems`` to span a ring containing all products."""
    table = []
    for x in elems:
        row = []
        for y in elems:
            coords = solve_over(f, elems, cmul(f, x, y))
            if coords is None or any(c.denominator != 1 for c in coords):
                raise DomainError("basis is not multiplicatively closed")
            row.append([int(c) for c in coords])
        table.append(row)
    return table


def galois_matrix(f, elems, k):
    """Integer matrix of zeta -> zeta^k on the span of ``elems``."""
    out = []
    for x in elems:
        coords = solve_over(f, elems, galois_apply(f, x, k))
        if coords is None or any(c.denominator != 1 for c in coords):
            raise DomainError("span is not stable under the Galois action")
        out.append([int(c) for c in coords])
    return out


# ---------------------------------------------------------------------------
# registry

class FieldRegistry:
    """Cache of orbit-sum bases keyed by (conductor, subgroup)."""

    def __init__(self):
        self._cache = {}
        self._declared = []

    def get(self, f, gens):
        group = subgroup(f, gens)
        key = (f, group)
        if key not in self._cache:
            self._cache[key] = lenstra_basis(f, gens)
            self._declared.append((f, tuple(sorted(set(g % f for g in gens)))))
        return self._cache[key]

    def dump(self):
        lines = ["%d %s" % (f, " ".join(str(g) for g in gens))
                 for f, gens in self._declared]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def load(cls, text):
        reg = cls()
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [int(t) for t in line.split()]
            reg.get(parts[0], tuple(parts[1:]))
        return reg


DEFAULT_REGISTRY = FieldRegistry()
