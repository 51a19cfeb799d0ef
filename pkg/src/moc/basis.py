"""Basic sets and their certificates.

A basic set of Brauer characters (BS) and a basic set of projective
characters (PS) for a block pair into a square integer matrix
u[i][j] = <phi_i, Psi_j>.  Everything here manipulates that matrix and
the coordinate systems it connects: Brauer atoms (BA), projective atoms
(PA), the special basic set (BS0) and plain character rows.

The heavy lifting lives in `enumerate_fp1`, which searches for all ways
of factoring u = u1 * u2 into nonnegative unimodular parts subject to
sign conditions coming from known Brauer characters (rows over BS) and
known projective characters (rows over PS).
"""

from dataclasses import dataclass, field
from math import gcd

from . import intlin
from .exactnum import DomainError


@dataclass
class CertifyResult:
    status: str                  # "basic" | "not_basic" | "inconclusive"
    relations: list | None = None
    witness: dict | None = None


def certify_brauer_basic(candidate, rows, q=intlin.DEFAULT_PRIME):
    """Check that `candidate` rows form a basic set for the span of `rows`.

    candidate: k x n integer matrix (restricted characters on regular classes)
    rows: m x n integer matrix that must be expressible over the candidate.
    Returns CertifyResult; on success `relations` is the m x k matrix R with
    rows = R * candidate.
    """
    if not candidate:
        raise DomainError("empty candidate set")
    if intlin.row_rank(candidate) < len(candidate):
        kern = intlin.kernel_basis(candidate)
        return CertifyResult("not_basic",
                             witness={"reason": "dependent", "kernel": kern})
    relations = []
    for i, row in enumerate(rows):
        res = intlin.dec_solve(row, candidate, q=q)
        if res.status == "coefficients":
            relations.append(res.coeffs)
        elif res.status == "not_in_rational_span":
            return CertifyResult("not_basic",
                                 witness={"reason": "outside_span", "row": i})
        elif res.status == "undecided":
            if res.rational is not None:
                return CertifyResult("not_basic",
                                     witness={"reason": "not_integral",
                                              "row": i,
                                              "rational": res.rational})
            return CertifyResult("inconclusive", witness={"row": i})
        else:
            return CertifyResult("inconclusive", witness={"row": i})
    return CertifyResult("basic", relations=relations)


def ibr_count(rows):
    """Number of irreducible Brauer characters = Z-rank of the restricted rows."""
    return intlin.row_rank(rows)


def certify_pair(u):
    """A pair of basic sets is certified iff det <BS, PS> = +-1."""
    n = len(u)
    if any(len(r) != n for r in u):
        raise DomainError("pairing matrix must be square")
    det = intlin.bareiss_det(u)
    return (abs(det) == 1, det)


def detect_atom_pims(u):
    """Columns of u that are standard unit vectors: those PS members are PIMs.

    Returns a list of (column index, atom row index).
    """
    s = len(u)
    found = []
    for j in range(s):
        col = [u[i][j] for i in range(s)]
        ones = [i for i, x in enumerate(col) if x == 1]
        if len(ones) == 1 and all(x == 0 for i, x in enumerate(col) if i != ones[0]):
            found.append((j, ones[0]))
    return found


def detect_atom_brauers(u):
    """Rows of u that are standard unit vectors: those BS members are irreducible."""
    return [(i, j) for j, i in detect_atom_pims(intlin.transpose(u))]


def bs_to_ba(v, u):
    """Rows over BS -> rows over Brauer atoms (BS itself has BA-coords u)."""
    return intlin.mat_mul(v, u)


def ps_to_pa(w, u):
    """Rows over PS -> rows over projective atoms (PS has PA-coords u columns)."""
    return intlin.mat_mul(w, intlin.transpose(u))


def pair_products(w_rows, v_rows):
    """<P_k, B_l> = W * V^t.

    Valid when one operand is over a basic set and the other over the atoms
    dual to it: W over PS with V over Brauer atoms, or W over projective
    atoms with V over BS.
    """
    return intlin.mat_mul(w_rows, intlin.transpose(v_rows))


def expand_by_special(m0, s):
    """Products with BS0 -> products with all of Irr(B), via the relations S."""
    return intlin.mat_mul(m0, intlin.transpose(s))


def special_to_atoms(x0):
    """BS0 has BA-coordinates given by the transpose of X0 = <PS, BS0>."""
    return intlin.transpose(x0)


def atoms_to_special(w, x0):
    """Rows over BA -> rows over BS0 (X0 must be unimodular)."""
    x0t = intlin.transpose(x0)
    return intlin.mat_mul(w, intlin.invert_unimodular(x0t))


def change_basis(mode, rows, matrix):
    """Coordinate conversions between the bases attached to a certified pair.

    mode: one of "bs_to_ba", "ps_to_pa", "pair", "special", "to_special".
    """
    if mode == "bs_to_ba":
        return bs_to_ba(rows, matrix)
    if mode == "ps_to_pa":
        return ps_to_pa(rows, matrix)
    if mode == "pair":
        return intlin.mat_mul(rows, intlin.transpose(matrix))
    if mode == "special":
        return expand_by_special(rows, matrix)
    if mode == "to_special":
        return atoms_to_special(rows, matrix)
    raise DomainError("unknown conversion %r" % (mode,))


@dataclass
class BasicSetState:
    """Everything known about one block's basic sets.

    bs0: indices into Irr(B) forming the special basic set
    s: relations matrix, Irr(B) rows over BS0
    x0: <PS, BS0> pairing
    bs: current Brauer basic set in Brauer-atom coordinates
    pims: certified-PIM column indices, irreducibles: certified BS rows
    """
    block: int
    bs0: list
    s: list
    x0: list
    bs: list
    pims: set = field(default_factory=set)
    irreducibles: set = field(default_factory=set)


@dataclass
class DecompositionState:
    """Candidate or proved decomposition matrix for one block."""
    d: list
    status: list  # per-column: "proved" | "candidate"


@dataclass
class Fp1Result:
    solutions: list   # list of (u1, u2) pairs, canonically ordered
    complete: bool
    nodes: int


def _gen_vectors(bounds, force, filters):
    """Nonneg integer vectors x with x <= bounds, x[force] >= 1 (skipped if
    force < 0), gcd(x) = 1, and row . x >= lo for every (row, lo) filter.

    Positions are scanned in decreasing-bound order; for each filter we keep
    the best still-achievable tail so hopeless prefixes die early.
    """
    n = len(bounds)
    positions = sorted(range(n), key=lambda p: -bounds[p])
    positions.sort(key=lambda p: p != force)  # decide the forced slot first
    # suffix[t][k] = max achievable contribution of positions[k:] to filter t
    suffix = []
    for row, _lo in filters:
        acc = [0] * (len(positions) + 1)
        for k in range(len(positions) - 1, -1, -1):
            p = positions[k]
            acc[k] = acc[k + 1] + max(0, row[p] * bounds[p])
        suffix.append(acc)
    out = []
    vec = [0] * n
    dots = [0] * len(filters)

    def rec(k):
        if k == len(positions):
            if any(d < lo for d, (_row, lo) in zip(dots, filters)):
                return
            g = 0
            for x in vec:
                g = gcd(g, x)
            if g == 1:
                out.append(tuple(vec))
            return
        p = positions[k]
        lo = 1 if p == force else 0
        for val in range(lo, bounds[p] + 1):
            ok = True
            for t, (row, flo) in enumerate(filters):
                if dots[t] + row[p] * val + suffix[t][k + 1] < flo:
                    ok = False
                    break
            if not ok:
                continue
            vec[p] = val
            for t, (row, _flo) in enumerate(filters):
                dots[t] += row[p] * val
            rec(k + 1)
            for t, (row, _flo) in enumerate(filters):
                dots[t] -= row[p] * val
            vec[p] = 0

    rec(0)
    return out


def _box_size(bounds, cap=1 << 62):
    prod = 1
    for b in bounds:
        prod *= b + 1
        if prod > cap:
            return cap
    return prod


def enumerate_fp1(u, v_rows=None, w_rows=None, node_budget=10 ** 8):
    """All factorizations u = u1 * u2 with u1, u2 nonnegative unimodular,
    v_rows * u1 >= 0 and w_rows * transpose(u2) >= 0, up to column order
    of u1 (row order of u2 follows).

    Searches exact covers of u by rank-one products column(u1) x row(u2):
    at each node the uncovered cell with the smallest candidate box is
    chosen and all covering products are branched.  Because every column
    of u1 stays nonnegative against v_rows and every row of u2 against
    w_rows, the running residual R must keep V.R >= 0 and R.W^t >= 0
    entrywise; both are maintained incrementally and turned into hard
    bounds during candidate generation.  Returns Fp1Result; `complete`
    is False if the node budget ran out.
    """
    s = len(u)
    if any(len(r) != s for r in u):
        raise DomainError("pairing matrix must be square")
    if any(x < 0 for row in u for x in row):
        raise DomainError("pairing matrix must be nonnegative")
    if abs(intlin.bareiss_det(u)) != 1:
        raise DomainError("pairing matrix must be unimodular")
    v_rows = [list(r) for r in (v_rows or [])]
    w_rows = [list(r) for r in (w_rows or [])]
    nv, nw = len(v_rows), len(w_rows)

    r_mat = [list(row) for row in u]
    # vr[t][j] = v_t . (column j of R); rw[i][t] = (row i of R) . w_t
    vr = [[sum(v[i] * u[i][j] for i in range(s)) for j in range(s)]
          for v in v_rows]
    rw = [[sum(u[i][j] * w[j] for j in range(s)) for w in w_rows]
          for i in range(s)]
    if any(x < 0 for row in vr for x in row) or \
       any(x < 0 for row in rw for x in row):
        return Fp1Result(solutions=[], complete=True, nodes=0)

    chosen = []          # (column of u1, row of u2) pairs
    used_c = set()
    used_r = set()
    solutions = []
    seen = set()
    state = {"nodes": 0, "complete": True}

    def best_cell():
        best = None
        best_score = None
        for i in range(s):
            row_i = r_mat[i]
            rprod = None
            for j in range(s):
                if row_i[j] == 0:
                    continue
                if rprod is None:
                    rprod = _box_size(row_i)
                cprod = _box_size([r_mat[k][j] for k in range(s)])
                score = cprod * rprod // (row_i[j] + 1)
                if best_score is None or score < best_score:
                    best, best_score = (i, j, cprod, rprod), score
        return best

    def emit():
        u1_cols, u2_rows = zip(*chosen)
        order = sorted(range(len(chosen)),
                       key=lambda k: (u1_cols[k], u2_rows[k]), reverse=True)
        u1 = [[u1_cols[k][i] for k in order] for i in range(s)]
        u2 = [list(u2_rows[k]) for k in order]
        key = tuple(tuple(u1_cols[k]) for k in order)
        if key in seen:
            return
        seen.add(key)
        if abs(intlin.bareiss_det(u1)) != 1:
            return
        solutions.append((u1, u2))

    def attempt(c, r):
        if c in used_c or r in used_r:
            return
        sup_c = [(i, c[i]) for i in range(s) if c[i]]
        sup_r = [(j, r[j]) for j in range(s) if r[j]]
        for j, rj in sup_r:
            for i, ci in sup_c:
                r_mat[i][j] -= ci * rj
        vc = [sum(v[i] * ci for i, ci in sup_c) for v in v_rows]
        wr = [sum(w[j] * rj for j, rj in sup_r) for w in w_rows]
        for t in range(nv):
            if vc[t]:
                for j, rj in sup_r:
                    vr[t][j] -= vc[t] * rj
        for i, ci in sup_c:
            for t in range(nw):
                if wr[t]:
                    rw[i][t] -= ci * wr[t]
        chosen.append((c, r))
        used_c.add(c)
        used_r.add(r)
        rec()
        used_r.discard(r)
        used_c.discard(c)
        chosen.pop()
        for t in range(nv):
            if vc[t]:
                for j, rj in sup_r:
                    vr[t][j] += vc[t] * rj
        for i, ci in sup_c:
            for t in range(nw):
                if wr[t]:
                    rw[i][t] += ci * wr[t]
        for j, rj in sup_r:
            for i, ci in sup_c:
                r_mat[i][j] += ci * rj

    def rec():
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            state["complete"] = False
            return
        cell = best_cell()
        if cell is None:
            if len(chosen) == s:
                emit()
            return
        if len(chosen) >= s:
            return
        i0, j0, cprod, rprod = cell
        if cprod <= rprod:
            # enumerate the u1-column first; r_{j0} >= 1 caps v.c by vr[:,j0]
            c_bounds = [r_mat[k][j0] for k in range(s)]
            c_filters = [(v, 0) for v in v_rows]
            c_filters += [([-x for x in v], -vr[t][j0])
                          for t, v in enumerate(v_rows)]
            for c in _gen_vectors(c_bounds, i0, c_filters):
                sup = [i for i in range(s) if c[i]]
                vc = [sum(v[i] * c[i] for i in sup) for v in v_rows]
                r_bounds = []
                for j in range(s):
                    lim = min(r_mat[i][j] // c[i] for i in sup)
                    for t in range(nv):
                        if vc[t]:
                            lim = min(lim, vr[t][j] // vc[t])
                    r_bounds.append(lim)
                if r_bounds[j0] < 1:
                    continue
                r_filters = [(w, 0) for w in w_rows]
                r_filters += [([-x for x in w],
                               -min(rw[i][t] // c[i] for i in sup))
                              for t, w in enumerate(w_rows)]
                for r in _gen_vectors(r_bounds, j0, r_filters):
                    attempt(c, r)
        else:
            # enumerate the u2-row first; c_{i0} >= 1 caps w.r by rw[i0]
            r_bounds = list(r_mat[i0])
            r_filters = [(w, 0) for w in w_rows]
            r_filters += [([-x for x in w], -rw[i0][t])
                          for t, w in enumerate(w_rows)]
            for r in _gen_vectors(r_bounds, j0, r_filters):
                sup = [j for j in range(s) if r[j]]
                wr = [sum(w[j] * r[j] for j in sup) for w in w_rows]
                c_bounds = []
                for i in range(s):
                    lim = min(r_mat[i][j] // r[j] for j in sup)
                    for t in range(nw):
                        if wr[t]:
                            lim = min(lim, rw[i][t] // wr[t])
                    c_bounds.append(lim)
                if c_bounds[i0] < 1:
                    continue
                c_filters = [(v, 0) for v in v_rows]
                c_filters += [([-x for x in v],
                               -min(vr[t][j] // r[j] for j in sup))
                              for t, v in enumerate(v_rows)]
                for c in _gen_vectors(c_bounds, i0, c_filters):
                    attempt(c, r)

    rec()
    return Fp1Result(solutions=solutions, complete=state["complete"],
                     nodes=state["nodes"])
