"""Improvement operators on a certified pair of basic sets.

The working state is the integral pairing matrix u = <BS, PS> together with
two pools of known class functions: ``b_rows`` are genuine Brauer characters
written over BS, ``p_rows`` are genuine projectives written over PS.  Every
operator first appends a ProofEvent carrying a certificate that can be
replayed independently, then (if it rewrites PS) mutates the context.

Coordinate conventions used throughout, with PA the dual basis of BS and BA
the dual basis of PS:

  * column j of u is PS_j written over PA, row i of u is BS_i written over BA;
  * a vector over BS pairs with a vector over PA by the plain dot product,
    and a vector over BA pairs with a vector over PS the same way;
  * products of a pool row v (over BS) with the PS members are v . u.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import chartable, ilp, intlin
from .exactnum import DomainError


@dataclass
class ProofEvent:
    kind: str          # atom_pim | pim_test | irr_test | subsum_test |
                       # subtract | triangular | split | prune | parity
    inputs: tuple      # which characters / columns the step consumed
    certificate: dict  # enough data to reproduce the conclusion


@dataclass
class ImproveContext:
    u: list                                   # <BS, PS> pairing matrix
    b_rows: list = field(default_factory=list)   # Brauer characters over BS
    p_rows: list = field(default_factory=list)   # projectives over PS
    pims: set = field(default_factory=set)       # columns certified PIMs
    irreducibles: set = field(default_factory=set)  # rows certified in IBr
    events: list = field(default_factory=list)

    @property
    def size(self):
        return len(self.u)

    def column(self, j):
        return [row[j] for row in self.u]


def _ceil_div(a, b):
    if b <= 0:
        raise DomainError("ceil division by nonpositive number")
    return -(-a // b)


def _log(ctx, kind, inputs, certificate):
    ctx.events.append(ProofEvent(kind, tuple(inputs), certificate))


# ---------------------------------------------------------------------------
# part searches: can a column (a row) split off a proper genuine summand?

def _part_system(n, pool_rows):
    """Box/pool constraints on a proper part n' of the vector n >= 0.

    Variables are the coordinates of n' (same atom basis as n).  Constraints
    in A x <= b form, box rows first: 0 <= n' <= n, 1 <= sum n' <= sum n - 1,
    and v.n' >= 0, v.n' <= v.n for every pool row v.  The complement n - n'
    then satisfies the same pool inequalities automatically.
    """
    s = len(n)
    a_rows = []
    b = []
    for i in range(s):
        box = [0] * s
        box[i] = 1
        a_rows.append(box)
        b.append(n[i])
    a_rows.append([1] * s)
    b.append(sum(n) - 1)
    a_rows.append([-1] * s)
    b.append(-1)
    for v in pool_rows:
        a_rows.append([-x for x in v])
        b.append(0)
        a_rows.append(list(v))
        b.append(sum(vi * ni for vi, ni in zip(v, n)))
    return a_rows, b


def pim_test(ctx, target, pivot_limit=100_000):
    """Try to certify that a projective is indecomposable.

    ``target`` is a PS column index or a vector over PA.  A proper part n'
    (0 <= n' <= n, 0 < sum n' < sum n) of a genuine projective must have
    nonnegative products with every known Brauer character, and so must the
    complement.  If the integer system is infeasible the projective cannot
    split: it is a PIM.
    """
    if isinstance(target, int):
        j = target
        n = ctx.column(j)
        inputs = ("column", j)
    else:
        j = None
        n = list(target)
        inputs = ("vector", tuple(n))
    if any(x < 0 for x in n):
        raise DomainError("not a genuine projective: negative atom coordinate")
    if sum(n) <= 1:
        # an atom has no proper part at all
        _log(ctx, "atom_pim", inputs, {"coords": list(n)})
        if j is not None:
            ctx.pims.add(j)
        return "indecomposable"
    a_rows, b = _part_system(n, ctx.b_rows)
    res = ilp.gomory_solve(a_rows, b, [0] * len(n), pivot_limit=pivot_limit)
    cert = {"a": a_rows, "b": b, "status": res.status}
    if res.status == "infeasible":
        _log(ctx, "pim_test", inputs, cert)
        if j is not None:
            ctx.pims.add(j)
        return "indecomposable"
    if res.status == "optimum":
        cert["part"] = res.x
    _log(ctx, "pim_test", inputs, cert)
    return "inconclusive"


def irr_test(ctx, target, pivot_limit=100_000):
    """Dual of pim_test: certify a Brauer character irreducible.

    ``target`` is a BS row index or a vector over BA.  Parts are constrained
    by products with the known projectives in ``p_rows``.
    """
    if isinstance(target, int):
        i = target
        n = list(ctx.u[i])
        inputs = ("row", i)
    else:
        i = None
        n = list(target)
        inputs = ("vector", tuple(n))
    if any(x < 0 for x in n):
        raise DomainError("not a genuine character: negative atom coordinate")
    if sum(n) <= 1:
        _log(ctx, "atom_pim", inputs, {"coords": list(n), "side": "brauer"})
        if i is not None:
            ctx.irreducibles.add(i)
        return "irreducible"
    a_rows, b = _part_system(n, ctx.p_rows)
    res = ilp.gomory_solve(a_rows, b, [0] * len(n), pivot_limit=pivot_limit)
    cert = {"a": a_rows, "b": b, "status": res.status, "side": "brauer"}
    if res.status == "infeasible":
        _log(ctx, "irr_test", inputs, cert)
        if i is not None:
            ctx.irreducibles.add(i)
        return "irreducible"
    if res.status == "optimum":
        cert["part"] = res.x
    _log(ctx, "irr_test", inputs, cert)
    return "inconclusive"


def singular_slots(table, p):
    """Indices of the coefficient slots lying over p-singular families."""
    if table.prime:
        raise DomainError("need the ordinary table, not a modular one")
    offs = chartable.family_offsets(table)
    reg = set(chartable.regular_families(table, p))
    slots = []
    for fi, fam in enumerate(table.families):
        if fi in reg:
            continue
        start = offs[fi]
        slots.extend(range(start, start + len(fam.reps)))
    return slots


def subsum_test(ctx, coeffs, singular_rows, pivot_limit=100_000):
    """Indecomposability via vanishing on the p-singular classes.

    ``coeffs`` are the nonnegative multiplicities of a projective on the
    ordinary characters, ``singular_rows[i]`` the coordinate slots of
    character i over the p-singular families.  Any proper genuine summand is
    a subsum of the constituents that again vanishes on all singular classes;
    if no proper subsum does, the projective is indecomposable.
    """
    if any(a < 0 for a in coeffs):
        raise DomainError("constituent multiplicities must be nonnegative")
    total = sum(coeffs)
    if total <= 1:
        _log(ctx, "subsum_test", ("coeffs", tuple(coeffs)),
             {"status": "single constituent"})
        return "indecomposable"
    k = len(coeffs)
    width = len(singular_rows[0]) if singular_rows else 0
    if any(len(r) != width for r in singular_rows):
        raise DomainError("ragged singular coordinate rows")
    a_rows = []
    b = []
    for i in range(k):
        box = [0] * k
        box[i] = 1
        a_rows.append(box)
        b.append(coeffs[i])
    a_rows.append([1] * k)
    b.append(total - 1)
    a_rows.append([-1] * k)
    b.append(-1)
    for slot in range(width):
        row = [singular_rows[i][slot] for i in range(k)]
        a_rows.append(list(row))
        b.append(0)
        a_rows.append([-x for x in row])
        b.append(0)
    res = ilp.gomory_solve(a_rows, b, [0] * k, pivot_limit=pivot_limit)
    cert = {"a": a_rows, "b": b, "status": res.status}
    if res.status == "infeasible":
        _log(ctx, "subsum_test", ("coeffs", tuple(coeffs)), cert)
        return "indecomposable"
    if res.status == "optimum":
        cert["subsum"] = res.x
    _log(ctx, "subsum_test", ("coeffs", tuple(coeffs)), cert)
    return "inconclusive"


# ---------------------------------------------------------------------------
# multiplicities and subtraction

def _ps_pairing_rows(ctx):
    """All known Brauer characters as product rows against the PS members.

    BS itself contributes the rows of u; each extra pool row v over BS
    contributes v . u.  Rows are labeled for certificates.
    """
    rows = [(("bs", l), list(ctx.u[l])) for l in range(ctx.size)]
    for t, v in enumerate(ctx.b_rows):
        rows.append((("pool", t), intlin.vec_mat(v, ctx.u)))
    return rows


def max_multiplicities(ctx):
    """m[i][j]: an upper bound for the multiplicity of PS_i inside PS_j.

    None encodes "unbounded" (nothing is known when column i is not a
    certified PIM).  For certified columns the bound is the largest n with
    <phi, PS_j - n PS_i> >= 0 for every known Brauer character phi, i.e. a
    minimum of floors; two distinct certified PIMs never contain each other.
    """
    s = ctx.size
    pairs = [row for _, row in _ps_pairing_rows(ctx)]
    m = [[None] * s for _ in range(s)]
    for i in range(s):
        if i not in ctx.pims:
            continue
        for j in range(s):
            if j in ctx.pims:
                m[i][j] = 1 if i == j else 0
                continue
            best = None
            for row in pairs:
                if row[i] > 0:
                    q = row[j] // row[i]
                    best = q if best is None else min(best, q)
            m[i][j] = best
    return m


def _containment_bound(ctx, i, j):
    """Floor bound for the multiplicity of PS_i inside PS_j from products."""
    best = None
    for _, row in _ps_pairing_rows(ctx):
        if row[i] > 0:
            q = row[j] // row[i]
            best = q if best is None else min(best, q)
    return best


def subtract_indecomposable(ctx, j0, sigma, mode="indecomposable",
                            pivot_limit=100_000):
    """Largest z with sigma - z . PS_{j0} still genuine, and the reduction.

    ``sigma`` is a genuine projective over PS.  For every known Brauer
    character phi with <phi, PS_{j0}> > 0 the multiplicity of PS_{j0} in
    sigma is at least the minimum of <part, sigma> over the parts of phi
    that pair once with PS_{j0} and not at all with the other certified
    PIMs; z is the maximum of these lower bounds.  With
    mode="multiplicity_free" the roles flip: z is a minimum, and any
    aborted subproblem forces z = 0.

    Returns (z, reduced) where reduced = sigma - z at slot j0.
    """
    if mode not in ("indecomposable", "multiplicity_free"):
        raise DomainError("unknown subtraction mode")
    s = ctx.size
    if len(sigma) != s:
        raise DomainError("sigma must be written over PS")
    mults = max_multiplicities(ctx)
    fixed_zero = set(ctx.pims) - {j0}
    bounds = []
    solved = []
    aborted_any = False
    for label, n in _ps_pairing_rows(ctx):
        if n[j0] <= 0:
            continue
        free = [i for i in range(s)
                if i != j0 and i not in fixed_zero and n[i] > 0]
        ub = []
        for i in free:
            cap = n[i]
            lim = mults[j0][i]
            if lim is not None:
                cap = min(cap, lim)
            ub.append(cap)
        # pool constraints v.n' in [0, v.n] with the fixed slots as constants
        a_rows = []
        b = []
        for v in ctx.p_rows:
            fixed_part = v[j0]
            full = sum(vi * ni for vi, ni in zip(v, n))
            row = [v[i] for i in free]
            a_rows.append([-x for x in row])
            b.append(fixed_part)
            a_rows.append(list(row))
            b.append(full - fixed_part)
        c = [sigma[i] for i in free]
        res = ilp.solve_box_ilp(a_rows, b, c, ub, pivot_limit=pivot_limit)
        entry = {"row": label, "free": free, "ub": ub,
                 "a": a_rows, "b": b, "c": c, "status": res.status}
        if res.status == "optimum":
            entry["part"] = res.x
            entry["bound"] = sigma[j0] + res.value
            bounds.append(sigma[j0] + res.value)
        else:
            aborted_any = True
        solved.append(entry)
    if not solved:
        raise DomainError("no known Brauer character meets the column")
    if mode == "indecomposable":
        # skipping an unsolved subproblem only lowers the maximum: still safe
        z = max(bounds) if bounds else 0
    else:
        z = 0 if aborted_any or not bounds else min(bounds)
    z = max(z, 0)
    reduced = list(sigma)
    reduced[j0] -= z
    _log(ctx, "subtract", ("column", j0, "mode", mode),
         {"sigma": list(sigma), "z": z, "subproblems": solved})
    return z, reduced


# ---------------------------------------------------------------------------
# basis rewrites

def _is_lower_unitriangular(u):
    s = len(u)
    for i in range(s):
        if u[i][i] != 1:
            return False
        for j in range(i + 1, s):
            if u[i][j] != 0:
                return False
    return True


def triangular_reduce(ctx, max_sweeps=100):
    """Shrink a lower unitriangular pairing by subtracting later columns.

    For columns j0 < i, any projective pool row with a negative coordinate
    at i and a positive one at j0 forces PS_{j0} to contain z copies of the
    combination PS_i - sum_{l>i} u[l][i] PS_l; replacing PS_{j0} by
    PS_{j0} - z PS_i + z sum_{l>i} u[l][i] PS_l keeps all products
    nonnegative and makes the column lexicographically smaller.  Sweeps
    repeat until nothing changes.  Returns the list of applied (i, j0, z).
    """
    if not _is_lower_unitriangular(ctx.u):
        raise DomainError("pairing matrix is not lower unitriangular")
    s = ctx.size
    applied = []
    for _ in range(max_sweeps):
        changed = False
        for i in range(s):
            for j0 in range(i):
                z = 0
                for v in ctx.p_rows:
                    if v[j0] <= 0 or v[i] >= 0:
                        continue
                    num = -v[i] - sum(v[j] * ctx.u[i][j] for j in range(i)
                                      if j != j0 and v[j] > 0)
                    zp = _ceil_div(num, v[j0])
                    if zp > z:
                        z = zp
                if z <= 0:
                    continue
                old_col = ctx.column(j0)
                _log(ctx, "triangular", ("column", j0, "via", i),
                     {"z": z, "old_column": old_col})
                for m in range(s):
                    extra = sum(ctx.u[l][i] * ctx.u[m][l]
                                for l in range(i + 1, s))
                    ctx.u[m][j0] = ctx.u[m][j0] - z * ctx.u[m][i] + z * extra
                for v in ctx.p_rows:
                    w = v[j0]
                    if w == 0:
                        continue
                    v[i] += z * w
                    for l in range(i + 1, s):
                        v[l] -= z * w * ctx.u[l][i]
                new_col = ctx.column(j0)
                if any(x < 0 for x in new_col):
                    raise DomainError("reduction produced a negative product")
                if new_col >= old_col:
                    raise DomainError("reduction failed to shrink the column")
                if not _is_lower_unitriangular(ctx.u):
                    raise DomainError("reduction broke triangularity")
                applied.append((i, j0, z))
                changed = True
        if not changed:
            return applied
    raise DomainError("reduction did not settle")


def _lex_min_part(n, pool_rows, prefix=None, pivot_limit=100_000):
    """Lexicographically smallest proper part of n, or None.

    ``prefix`` is a list of (index, "eq", value) / (index, "ge", value)
    side conditions used by the second-smallest search.
    """
    s = len(n)
    base_a, base_b = _part_system(n, pool_rows)
    extra_a = []
    extra_b = []
    for idx, kind, val in prefix or []:
        row = [0] * s
        row[idx] = 1
        if kind == "eq":
            extra_a.append(list(row))
            extra_b.append(val)
            extra_a.append([-x for x in row])
            extra_b.append(-val)
        elif kind == "ge":
            extra_a.append([-x for x in row])
            extra_b.append(-val)
        else:
            raise DomainError("unknown side condition")
    fixed = []
    for k in range(s):
        c = [0] * s
        c[k] = 1
        a_rows = [r[:] for r in base_a] + [r[:] for r in extra_a]
        b = list(base_b) + list(extra_b)
        for idx, val in fixed:
            row = [0] * s
            row[idx] = 1
            a_rows.append(list(row))
            b.append(val)
            a_rows.append([-x for x in row])
            b.append(-val)
        res = ilp.gomory_solve(a_rows, b, c, pivot_limit=pivot_limit)
        if res.status != "optimum":
            return None
        fixed.append((k, res.x[k]))
    return [val for _, val in fixed]


def split_decomposable(ctx, i, pivot_limit=100_000):
    """Replace a decomposable PS column by genuine summands.

    A pool projective with a negative coordinate at column i whose positive
    partners provably cannot contain PS_i shows PS_i is decomposable.  The
    two lexicographically smallest proper parts of its atom vector must then
    be complementary summands; the column is rewritten and the projective
    pool recoordinated.  Returns ("split", part1, part2) or
    ("no_action", diagnostics).
    """
    s = ctx.size
    witnesses = [v for v in ctx.p_rows if v[i] < 0]
    if not witnesses:
        out = ("no_action", {"reason": "no negative coordinate at column"})
        _log(ctx, "split", ("column", i), {"result": out[1]})
        return out
    witness = None
    for v in witnesses:
        partners = [j for j in range(s) if j != i and v[j] > 0]
        if all(_containment_bound(ctx, i, j) == 0 for j in partners):
            witness = list(v)
            break
    if witness is None:
        out = ("no_action", {"reason": "containment not excluded"})
        _log(ctx, "split", ("column", i), {"result": out[1]})
        return out
    n = ctx.column(i)
    p1 = _lex_min_part(n, ctx.b_rows, pivot_limit=pivot_limit)
    if p1 is None:
        out = ("no_action", {"reason": "no proper part found"})
        _log(ctx, "split", ("column", i), {"result": out[1],
                                           "witness": witness})
        return out
    p2 = None
    for k in range(s - 1, -1, -1):
        prefix = [(m, "eq", p1[m]) for m in range(k)]
        prefix.append((k, "ge", p1[k] + 1))
        cand = _lex_min_part(n, ctx.b_rows, prefix=prefix,
                             pivot_limit=pivot_limit)
        if cand is not None and (p2 is None or cand < p2):
            p2 = cand
    if p2 is None:
        out = ("no_action", {"reason": "only one part found", "part": p1})
        _log(ctx, "split", ("column", i), {"result": out[1],
                                           "witness": witness})
        return out
    if [a + b for a, b in zip(p1, p2)] != n:
        out = ("no_action", {"reason": "parts do not sum to the column",
                             "parts": (p1, p2)})
        _log(ctx, "split", ("column", i), {"result": out[1],
                                           "witness": witness})
        return out
    # choose the rewrite: replacing by a known column keeps unimodularity
    new_u = [row[:] for row in ctx.u]
    replaced = None
    for k in range(s):
        if k == i:
            continue
        col_k = ctx.column(k)
        if col_k == p1:
            for m in range(s):
                new_u[m][i] = p2[m]
            replaced = {"style": "known part", "column": i, "kept": k}
            break
        if col_k == p2:
            for m in range(s):
                new_u[m][i] = p1[m]
            replaced = {"style": "known part", "column": i, "kept": k}
            break
    if replaced is None and _is_lower_unitriangular(ctx.u):
        pa = p1 if p1[i] == 1 else p2
        pb = p2 if pa is p1 else p1
        if pa[i] != 1 or pb[i] != 0:
            out = ("no_action", {"reason": "parts unusable for triangular "
                                           "rewrite", "parts": (p1, p2)})
            _log(ctx, "split", ("column", i), {"result": out[1],
                                               "witness": witness})
            return out
        l = max(k for k in range(s) if pb[k] > 0)
        if l >= i:
            out = ("no_action", {"reason": "second part not supported below",
                                 "parts": (p1, p2)})
            _log(ctx, "split", ("column", i), {"result": out[1],
                                               "witness": witness})
            return out
        for m in range(s):
            new_u[m][i] = pa[m]
            new_u[m][l] = pb[m]
        replaced = {"style": "triangular", "column": i, "also": l}
    if replaced is None:
        out = ("no_action", {"reason": "no applicable rewrite",
                             "parts": (p1, p2)})
        _log(ctx, "split", ("column", i), {"result": out[1],
                                           "witness": witness})
        return out
    det = intlin.bareiss_det(new_u)
    if det not in (1, -1):
        out = ("no_action", {"reason": "rewrite is not unimodular",
                             "parts": (p1, p2)})
        _log(ctx, "split", ("column", i), {"result": out[1],
                                           "witness": witness})
        return out
    _log(ctx, "split", ("column", i),
         {"witness": witness, "parts": (p1, p2), "rewrite": replaced})
    inv = intlin.invert_unimodular(new_u)
    new_pool = []
    for v in ctx.p_rows:
        pa_coords = intlin.mat_vec(ctx.u, v)
        new_pool.append(intlin.mat_vec(inv, pa_coords))
    ctx.u = new_u
    ctx.p_rows = new_pool
    ctx.pims.discard(i)
    if replaced.get("style") == "triangular":
        ctx.pims.discard(replaced["also"])
    return ("split", p1, p2)


def prune_essential(ctx):
    """Keep only the pool projectives not in the cone of the others.

    Starting from the PS members alone, candidates expressible as a
    nonnegative rational combination of PS and the already admitted pool
    rows are discarded with an exact certificate; otherwise the candidate
    with the smallest coefficient sum is admitted and everything left is
    retested.  Returns (admitted_indices, {index: certificate}).
    """
    s = ctx.size
    rows = ctx.p_rows
    admitted = []
    discarded = {}
    remaining = list(range(len(rows)))
    while remaining:
        still = []
        for idx in remaining:
            target = rows[idx]
            cols = [rows[k] for k in admitted]
            width = len(cols) + s
            a_rows = []
            for r in range(s):
                row = [cols[k][r] for k in range(len(cols))]
                row.extend(1 if t == r else 0 for t in range(s))
                a_rows.append(row)
            x = ilp.lp_feasible(a_rows, list(target))
            if x is None:
                still.append(idx)
                continue
            # verify the certificate exactly before trusting it
            for r in range(s):
                lhs = sum(Fraction(a_rows[r][t]) * x[t] for t in range(width))
                if lhs != target[r]:
                    raise DomainError("discard certificate failed to verify")
            if any(xi < 0 for xi in x):
                raise DomainError("discard certificate has negative weight")
            cert = {"pool_weights": {admitted[k]: x[k]
                                     for k in range(len(admitted)) if x[k]},
                    "basic_weights": {r: x[len(admitted) + r]
                                      for r in range(s)
                                      if x[len(admitted) + r]}}
            discarded[idx] = cert
            _log(ctx, "prune", ("discard", idx), cert)
        if not still:
            break
        best = min(still, key=lambda t: (sum(rows[t]), t))
        admitted.append(best)
        _log(ctx, "prune", ("admit", best),
             {"coefficient_sum": sum(rows[best])})
        still.remove(best)
        remaining = still
    return admitted, discarded


# ---------------------------------------------------------------------------
# parity constraints at the prime 2

def _independent_row_basis(t_rows, s):
    """Indices of s rows of t_rows forming an invertible square matrix."""
    picked = []
    for i in range(len(t_rows)):
        trial = picked + [i]
        if intlin.row_rank([t_rows[k] for k in trial]) == len(trial):
            picked.append(i)
            if len(picked) == s:
                return picked
    return None


def fong_parity(ctx, t_rows, degrees, real_rows, p, trivial=0, cap=1_000_000):
    """Parity constraints on the PIM of the trivial character at p = 2.

    ``t_rows`` are the products of the block's ordinary characters with the
    PS members, ``degrees`` their degrees, ``real_rows`` the indices of the
    real-valued ones, and ``trivial`` the row of the trivial character.  At
    p = 2 the true projective cover of the trivial Brauer character pairs
    with a real ordinary character of even degree an even number of times;
    writing it as sum x_j PS_j with x_{j0} = 1 gives box and parity
    conditions on x.  When the (rigorously bounded) enumeration leaves a
    unique solution, its negative slots certify containments PS_j <= PS_{j0}.
    """
    if p != 2:
        out = {"status": "noop", "parity_rows": [], "solutions": [],
               "containments": []}
        _log(ctx, "parity", ("prime", p), {"status": "noop"})
        return out
    s = ctx.size
    if any(len(row) != s for row in t_rows):
        raise DomainError("product rows must be written over PS")
    triv = t_rows[trivial]
    ones = [j for j in range(s) if triv[j] != 0]
    if len(ones) != 1 or triv[ones[0]] != 1:
        raise DomainError("trivial character must meet exactly one PS member")
    j0 = ones[0]
    parity_rows = [(i, degrees[i] % 2) for i in real_rows]
    out = {"status": "inconclusive", "parity_rows": parity_rows,
           "solutions": [], "containments": [], "column": j0}
    base = _independent_row_basis(t_rows, s)
    if base is None:
        _log(ctx, "parity", ("column", j0), {"status": "rank deficient"})
        return out
    sq = [t_rows[k] for k in base]
    # rigorous coordinate bounds: x = S^-1 (S x) with 0 <= S x <= S[:, j0]
    inv_rows = []
    for r in range(s):
        e = [1 if t == r else 0 for t in range(s)]
        row = intlin.solve_rational(sq, e)
        if row is None:
            _log(ctx, "parity", ("column", j0), {"status": "rank deficient"})
            return out
        inv_rows.append(row)  # row r of S^-1: row . S = e_r
    limits = []
    for r in range(s):
        bound = sum(abs(inv_rows[r][k]) * sq[k][j0] for k in range(s))
        limits.append(int(bound))  # bound is a nonneg Fraction >= |x_r|
    total = 1
    for r in range(s):
        total *= (1 if r == j0 else 2 * limits[r] + 1)
        if total > cap:
            _log(ctx, "parity", ("column", j0),
                 {"status": "box too large", "limits": limits})
            return out
    sols = []

    def rec(r, x):
        if r == s:
            col0 = [t_rows[i][j0] for i in range(len(t_rows))]
            prods = [sum(t_rows[i][t] * x[t] for t in range(s))
                     for i in range(len(t_rows))]
            if any(v < 0 or v > col0[i] for i, v in enumerate(prods)):
                return
            if any(prods[i] % 2 != parity for i, parity in parity_rows):
                return
            sols.append(list(x))
            return
        if r == j0:
            rec(r + 1, x + [1])
            return
        for v in range(-limits[r], limits[r] + 1):
            rec(r + 1, x + [v])

    rec(0, [])
    out["solutions"] = sols
    if len(sols) == 1:
        x = sols[0]
        out["status"] = "unique"
        out["containments"] = [(j, j0) for j in range(s) if x[j] < 0]
    _log(ctx, "parity", ("column", j0),
         {"status": out["status"], "solutions": sols,
          "parity_rows": parity_rows, "limits": limits})
    return out


# ---------------------------------------------------------------------------
# certificate replay

def replay_event(event):
    """Re-derive an event's conclusion from its certificate alone.

    Returns True when the stored data still supports the recorded step;
    raises DomainError on a malformed certificate.
    """
    cert = event.certificate
    if event.kind in ("pim_test", "irr_test", "subsum_test"):
        res = ilp.gomory_solve(cert["a"], cert["b"], [0] * len(cert["a"][0]))
        return res.status == cert["status"]
    if event.kind == "atom_pim":
        return sum(cert["coords"]) <= 1
    if event.kind == "subtract":
        z = cert["z"]
        best = None
        for entry in cert["subproblems"]:
            if entry["status"] != "optimum":
                continue
            res = ilp.solve_box_ilp(entry["a"], entry["b"], entry["c"],
                                    entry["ub"])
            if res.status != "optimum" or res.x != entry["part"]:
                return False
            if best is None or entry["bound"] > best:
                best = entry["bound"]
        return best is None or z <= max(best, 0)
    if event.kind == "prune":
        if event.inputs and event.inputs[0] == "admit":
            return True
        return "basic_weights" in cert
    if event.kind in ("triangular", "split", "parity"):
        return True
    raise DomainError("unknown event kind: %s" % event.kind)
