"""Integer and rational linear programming kept entirely in exact arithmetic.

``gomory_solve`` minimizes c.x over {x >= 0 integer : A x <= b} with an
all-integer cutting-plane tableau: every entry stays an integer after every
pivot, pivot elements are always -1, and dual feasibility (all columns
lexicographically positive) is preserved by the step-length choice.  The
starting tableau must already be dual feasible; callers arrange that by
leading with box rows.

``lp_feasible`` is a rational phase-1 simplex (Bland's rule) deciding
{x >= 0 : A x = b} and returning an exact feasible point when one exists.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import DomainError


@dataclass
class IlpResult:
    status: str               # optimum | infeasible | aborted
    x: list | None = None
    value: int | None = None
    pivots: int = 0
    reason: str | None = None


def _lex_positive(vec):
    for v in vec:
        if v:
            return v > 0
    return False


def _first_nonzero(vec):
    for i, v in enumerate(vec):
        if v:
            return i
    return None


def gomory_solve(a_rows, b, c, pivot_limit=100_000, check_invariants=False):
    """All-integer minimization of c.x subject to A x <= b, x >= 0, x integer.

    Raises DomainError unless every variable column of the initial tableau is
    lexicographically positive (objective row first).  Feasible problems must
    be bounded -- in practice every caller includes explicit box rows.
    """
    m = len(a_rows)
    n = len(c)
    if any(len(r) != n for r in a_rows) or len(b) != m:
        raise DomainError("inconsistent ILP dimensions")
    # tableau: row 0 = objective, column 0 = constants
    t = [[0] + [int(x) for x in c]]
    for i in range(m):
        t.append([int(b[i])] + [int(x) for x in a_rows[i]])
    for j in range(1, n + 1):
        if not _lex_positive([t[i][j] for i in range(m + 1)]):
            raise DomainError("tableau is not dual feasible (column %d)" % j)
    row_label = [None] + [("slack", i) for i in range(m)]
    col_label = [None] + [("var", j) for j in range(n)]
    pivots = 0
    cuts = 0
    last_obj = t[0][0]

    while True:
        rsrc = next((i for i in range(1, len(t)) if t[i][0] < 0), None)
        if rsrc is None:
            break
        row = t[rsrc]
        J = [j for j in range(1, n + 1) if row[j] < 0]
        if not J:
            return IlpResult(status="infeasible", pivots=pivots)
        if pivots >= pivot_limit:
            return IlpResult(status="aborted", pivots=pivots,
                             reason="pivot_limit")
        cols = {j: [t[i][j] for i in range(len(t))] for j in J}
        s = min(J, key=lambda j: (cols[j], j))
        lam = Fraction(-row[s])
        col_s = cols[s]
        fnz_s = _first_nonzero(col_s)
        for j in J:
            if j == s:
                continue
            col_j = cols[j]
            if _first_nonzero(col_j) < fnz_s:
                continue  # stays lex positive for every cut coefficient
            mu = _smallest_lex_coeff(col_j, col_s)
            lam = max(lam, Fraction(row[j], mu))
        if lam == 1:
            big = max(abs(x) for x in row)
            lam = 1 + Fraction(1, 1 + big)
        # cut row: floor of the source row scaled by 1/lambda
        num, den = lam.numerator, lam.denominator
        cut = [(row[j] * den) // num for j in range(n + 1)]
        assert cut[s] == -1 and cut[0] < 0
        t.append(cut)
        row_label.append(("cut", cuts))
        cuts += 1
        r = len(t) - 1
        # pivot on (r, s): exchange labels, then integer row updates
        row_label[r], col_label[s] = col_label[s], row_label[r]
        pr = t[r]
        for i in range(len(t)):
            if i == r:
                continue
            f = t[i][s]
            if f:
                ti = t[i]
                for j in range(n + 1):
                    if j != s:
                        ti[j] += f * pr[j]
        for j in range(n + 1):
            if j != s:
                pr[j] = -pr[j]
        pivots += 1
        if check_invariants:
            assert all(isinstance(x, int) for rw in t for x in rw)
            assert t[0][0] <= last_obj
            for j in range(1, n + 1):
                assert _lex_positive([t[i][j] for i in range(len(t))])
        last_obj = t[0][0]

    x = [0] * n
    for i in range(1, len(t)):
        lab = row_label[i]
        if lab and lab[0] == "var":
            x[lab[1]] = t[i][0]
    value = -t[0][0]
    assert all(v >= 0 for v in x)
    assert sum(ci * xi for ci, xi in zip(c, x)) == value
    for i in range(m):
        assert sum(aij * xj for aij, xj in zip(a_rows[i], x)) <= b[i]
    return IlpResult(status="optimum", x=x, value=value, pivots=pivots)


def _smallest_lex_coeff(col_j, col_s):
    """Smallest integer mu with (col_j + mu*col_s, -mu) lex positive.

    Requires col_s lex positive and col_j not strictly lex earlier; then the
    predicate is monotone in mu and the answer is <= -1 whenever col_s is the
    lex minimum of its group (mu = -1 always works there).
    """
    def good(mu):
        vec = [x + mu * y for x, y in zip(col_j, col_s)]
        vec.append(-mu)
        return _lex_positive(vec)

    hi = -1
    if not good(hi):
        raise AssertionError("pivot column was not the lex minimum")
    lo = -2
    while good(lo):
        hi = lo
        lo *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if good(mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------------------
# rational phase-1 feasibility

def lp_feasible(a_rows, b):
    """Exact feasible point of {x >= 0 : A x = b}, or None.

    Phase-1 simplex with Bland's rule over Fractions; the returned vector is
    substituted back into every equation before it is handed out.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    if len(b) != m:
        raise DomainError("inconsistent system dimensions")
    if m == 0:
        return []
    rows = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            rows.append([Fraction(-x) for x in a_rows[i]])
            rhs.append(Fraction(-b[i]))
        else:
            rows.append([Fraction(x) for x in a_rows[i]])
            rhs.append(Fraction(b[i]))
    # columns: n structural + m artificial
    total = n + m
    tab = [rows[i] + [Fraction(int(k == i)) for k in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    # objective: minimize sum of artificials; reduced costs start as
    # -(sum of constraint rows) on structural columns
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            obj[j] -= tab[i][j]
    for i in range(m):
        obj[n + i] += 1  # artificial columns cost 1, currently basic
    guard = 0
    while True:
        guard += 1
        if guard > 100_000:
            raise RuntimeError("phase-1 simplex did not terminate")
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][total] / tab[i][enter]
                if best is None or ratio < best or \
                        (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise RuntimeError("phase-1 objective unbounded")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter]:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[leave] + [])]
        basis[leave] = enter
    if -obj[total] != 0:
        return None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][total]
        elif tab[i][total] != 0:
            return None  # basic artificial stuck at nonzero level
    for i in range(m):
        lhs = sum(f * xi for f, xi in zip(rows[i], x))
        if lhs != rhs[i]:
            raise AssertionError("phase-1 produced an invalid point")
    if any(xi < 0 for xi in x):
        raise AssertionError("phase-1 produced a negative coordinate")
    return x


def solve_box_ilp(a_rows, b, c, ub, pivot_limit=100_000):
    """Minimize c.x over {x integer : 0 <= x <= ub, A x <= b}.

    Wraps ``gomory_solve``: box rows lead the tableau, and every variable
    whose objective coefficient is negative is replaced by ub_i - x_i first,
    so the start is dual feasible for arbitrary c.  The result is reported
    in the original coordinates.
    """
    n = len(c)
    if len(ub) != n:
        raise DomainError("objective and box have different lengths")
    if any(u < 0 for u in ub):
        raise DomainError("negative box bound")
    if any(len(row) != n for row in a_rows):
        raise DomainError("constraint width does not match variable count")
    flip = [cj < 0 for cj in c]
    rows2 = []
    rhs2 = []
    for i in range(n):
        box = [0] * n
        box[i] = 1
        rows2.append(box)
        rhs2.append(ub[i])
    for row, bi in zip(a_rows, b):
        r2 = []
        shift = bi
        for j in range(n):
            if flip[j]:
                shift -= row[j] * ub[j]
                r2.append(-row[j])
            else:
                r2.append(row[j])
        rows2.append(r2)
        rhs2.append(shift)
    c2 = [-cj if fj else cj for cj, fj in zip(c, flip)]
    const = sum(c[j] * ub[j] for j in range(n) if flip[j])
    res = gomory_solve(rows2, rhs2, c2, pivot_limit=pivot_limit)
    if res.status != "optimum":
        return res
    x = [ub[j] - res.x[j] if flip[j] else res.x[j] for j in range(n)]
    return IlpResult("optimum", x=x, value=res.value + const, pivots=res.pivots)
