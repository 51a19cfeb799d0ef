"""Exact integer linear algebra.

Matrices are plain lists of rows of ints (or Fractions where stated).  The
module provides the workhorse pieces the rest of the package builds on:

* Hermite normal form with transformation matrix, integer kernels, lattice
  comparison and unimodular transition matrices;
* fraction-free (Bareiss) determinants and Gram discriminants;
* ``dec_solve`` -- expresses a vector over a list of basis rows by q-adic
  digit lifting, with an exact rational oracle as fallback;
* ``fba`` -- turns a finite list of integer vectors into a proper basis of
  the lattice they generate, replacing vectors when a rational but
  non-integral dependency shows up.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .exactnum import (
    FormatError,
    legacy_decode_stream,
    legacy_encode_stream,
    xgcd,
)


# ---------------------------------------------------------------------------
# basic matrix helpers

def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def mat_mul(a, b):
    if not a:
        return []
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(rows, v):
    """Per-row dot products: rows (m x n) times column vector v (n)."""
    return [sum(x * y for x, y in zip(row, v)) for row in rows]


def vec_mat(v, rows):
    """Linear combination of rows with coefficients v."""
    n = len(rows[0]) if rows else 0
    out = [0] * n
    for c, row in zip(v, rows):
        if c:
            for j, x in enumerate(row):
                out[j] += c * x
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale_rows(c, rows):
    return [[c * x for x in row] for row in rows]


# ---------------------------------------------------------------------------
# determinants, Hermite form, lattices

def bareiss_det(rows):
    """Exact determinant of a square integer matrix (fraction-free)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hnf_with_transform(rows):
    """Row Hermite normal form.

    Returns (h, u) where u is unimodular, u * rows == h, pivots are positive,
    entries above each pivot are reduced into [0, pivot), and zero rows sit at
    the bottom of h.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    h = [list(r) for r in rows]
    u = identity(m)
    top = 0
    for col in range(n):
        while True:
            nz = [i for i in range(top, m) if h[i][col] != 0]
            if not nz:
                pivot = None
                break
            if len(nz) == 1:
                pivot = nz[0]
                break
            i0 = min(nz, key=lambda i: abs(h[i][col]))
            for i in nz:
                if i == i0:
                    continue
                q = h[i][col] // h[i0][col]
                r = h[i][col] - q * h[i0][col]
                if r < 0:  # force Euclidean remainder
                    q += 1 if h[i0][col] < 0 else -1
                for j in range(n):
                    h[i][j] -= q * h[i0][j]
                for j in range(m):
                    u[i][j] -= q * u[i0][j]
        if pivot is None:
            continue
        if pivot != top:
            h[pivot], h[top] = h[top], h[pivot]
            u[pivot], u[top] = u[top], u[pivot]
        if h[top][col] < 0:
            h[top] = [-x for x in h[top]]
            u[top] = [-x for x in u[top]]
        p = h[top][col]
        for i in range(top):
            q = h[i][col] // p
            if q:
                for j in range(n):
                    h[i][j] -= q * h[top][j]
                for j in range(m):
                    u[i][j] -= q * u[top][j]
        top += 1
    return h, u


def hnf(rows):
    """Canonical nonzero Hermite rows of the lattice spanned by ``rows``."""
    h, _ = hnf_with_transform(rows)
    return [r for r in h if any(r)]


def row_rank(rows):
    return len(hnf(rows))


def kernel_basis(rows):
    """Basis of the left integer kernel: vectors k with k * rows = 0."""
    h, u = hnf_with_transform(rows)
    return [u[i] for i in range(len(h)) if not any(h[i])]


def lattice_equal(rows_a, rows_b):
    return hnf(rows_a) == hnf(rows_b)


def unimodular_transition(rows_a, rows_b):
    """Integer t with t * rows_a == rows_b and det(t) = +-1, or None.

    Both inputs must be bases (independent rows) of the same lattice.
    """
    if len(rows_a) != len(rows_b):
        return None
    t = []
    for b in rows_b:
        x = solve_rational(rows_a, b)
        if x is None or any(c.denominator != 1 for c in x):
            return None
        t.append([int(c) for c in x])
    if abs(bareiss_det(t)) != 1:
        return None
    return t


def gram_discriminant(rows):
    """det of the Gram matrix of the rows (squared lattice volume)."""
    g = [[sum(x * y for x, y in zip(r, s)) for s in rows] for r in rows]
    return bareiss_det(g)


def invert_unimodular(rows):
    """Exact inverse of an integer matrix; requires the inverse be integral."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    inv = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix inverse is not integral")
    return [[int(x) for x in row] for row in inv]


def solve_rational(rows, target):
    """Fractions x with sum(x[i] * rows[i]) == target, or None.

    When the rows are dependent and the system is consistent, free
    coefficients are set to zero.
    """
    m = len(rows)
    n = len(target)
    if any(len(r) != n for r in rows):
        raise ValueError("row length mismatch")
    if m == 0:
        return [] if not any(target) else None
    # coordinates as equations: n x (m+1) augmented system
    aug = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(target[j])]
           for j in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][c]
        aug[r] = [x / p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if aug[i][m]:
            return None
    x = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        x[c] = aug[i][m]
    return x


# ---------------------------------------------------------------------------
# q-adic coefficient solver

DEFAULT_PRIME = 101
MAX_ITER = 20
ORACLE_LIMIT = 64
PRIME_ATTEMPTS = 10


def _next_prime(n):
    def is_prime(k):
        if k < 2:
            return False
        d = 2
        while d * d <= k:
            if k % d == 0:
                return False
            d += 1
        return True

    n += 1
    while not is_prime(n):
        n += 1
    return n


class _ModSolver:
    """Echelonized copy of rows mod q for repeated coefficient solving."""

    def __init__(self, rows, q):
        self.q = q
        self.m = len(rows)
        n = len(rows[0]) if rows else 0
        # augmented columns track the expression of each echelon row over the
        # original rows, so solutions come out in input coordinates.
        work = [[rows[i][j] % q for j in range(n)] +
                [1 if k == i else 0 for k in range(self.m)]
                for i in range(self.m)]
        self.pivots = []  # (row, col)
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, self.m) if work[i][c] % q), None)
            if piv is None:
                continue
            work[r], work[piv] = work[piv], work[r]
            inv = pow(work[r][c], -1, q)
            work[r] = [(x * inv) % q for x in work[r]]
            for i in range(self.m):
                if i != r and work[i][c] % q:
                    f = work[i][c]
                    work[i] = [(x - f * y) % q for x, y in zip(work[i], work[r])]
            self.pivots.append((r, c))
            r += 1
        self.rank = r
        self.work = work
        self.n = n

    def solve(self, vec):
        """z (0 <= z < q) with z * rows == vec mod q, or None."""
        q = self.q
        v = [x % q for x in vec]
        coeffs = [0] * self.m
        for r, c in self.pivots:
            f = v[c]
            if f:
                for j in range(self.n):
                    v[j] = (v[j] - f * self.work[r][j]) % q
                for k in range(self.m):
                    coeffs[k] = (coeffs[k] + f * self.work[r][self.n + k]) % q
        if any(v):
            return None
        return coeffs


def _symmetric(z, q):
    return z - q if z > q // 2 else z


@dataclass
class DecResult:
    status: str                      # coefficients | not_in_rational_span | undecided
    coeffs: list | None = None
    reason: str | None = None        # rational_not_integral | max_iterations
    rational: list | None = None
    digits: list = field(default_factory=list)
    prime: int = DEFAULT_PRIME
    stop_iteration: int | None = None


def _pick_prime(rows, q0, attempts):
    """First prime >= q0 (stepping through consecutive primes) where the rows
    stay independent; exact-rank check after the attempt budget."""
    q = q0
    for _ in range(attempts):
        solver = _ModSolver(rows, q)
        if solver.rank == len(rows):
            return q, solver
        q = _next_prime(q)
    if row_rank(rows) < len(rows):
        raise ValueError("basis rows are linearly dependent")
    # full rank over Q: some prime must work, keep going (bounded for safety)
    for _ in range(1000):
        solver = _ModSolver(rows, q)
        if solver.rank == len(rows):
            return q, solver
        q = _next_prime(q)
    raise RuntimeError("no usable prime found")


def dec_solve(target, rows, q=DEFAULT_PRIME, max_iter=MAX_ITER,
              oracle_limit=ORACLE_LIMIT):
    """Express ``target`` as an integer combination of independent ``rows``.

    Digit-lifts a solution modulo q: if some iterate falls outside the span
    mod q the vector is certified outside the rational span; if the digits
    do not terminate within ``max_iter`` rounds an exact rational solve
    settles small systems and anything larger is reported undecided.
    The returned coefficients always satisfy coeffs * rows == target exactly.
    """
    n = len(target)
    if any(len(r) != n for r in rows):
        raise ValueError("row length mismatch")
    if not rows:
        if any(target):
            return DecResult(status="not_in_rational_span", stop_iteration=0)
        return DecResult(status="coefficients", coeffs=[])
    q, solver = _pick_prime(rows, q, PRIME_ATTEMPTS)
    m = len(rows)
    coeffs = [0] * m
    digits = []
    v = list(target)
    for j in range(max_iter):
        if not any(v):
            break
        z = solver.solve(v)
        if z is None:
            return DecResult(status="not_in_rational_span", digits=digits,
                             prime=q, stop_iteration=j)
        zs = [_symmetric(x, q) for x in z]
        digits.append(zs)
        v = [x - y for x, y in zip(v, vec_mat(zs, rows))]
        if any(x % q for x in v):
            raise AssertionError("q-adic residue not divisible by prime")
        v = [x // q for x in v]
        step = q ** j
        for k in range(m):
            coeffs[k] += zs[k] * step
    if not any(v):
        assert vec_mat(coeffs, rows) == list(target)
        return DecResult(status="coefficients", coeffs=coeffs, digits=digits,
                         prime=q)
    # digit budget exhausted: exact oracle for small systems
    if max(m, n) <= oracle_limit:
        x = solve_rational(rows, target)
        if x is None:
            return DecResult(status="not_in_rational_span", digits=digits,
                             prime=q, stop_iteration=max_iter)
        if all(c.denominator == 1 for c in x):
            ints = [int(c) for c in x]
            assert vec_mat(ints, rows) == list(target)
            return DecResult(status="coefficients", coeffs=ints, digits=digits,
                             prime=q)
        return DecResult(status="undecided", reason="rational_not_integral",
                         rational=x, digits=digits, prime=q)
    return DecResult(status="undecided", reason="max_iterations",
                     digits=digits, prime=q)


# ---------------------------------------------------------------------------
# proper basis algorithm

@dataclass
class FbaResult:
    basis: list
    events: list        # (case, detail) in processing order
    prime: int


def _ceil_div(a, b):
    # b > 0
    return -((-a) // b)


def fba(generators, q=DEFAULT_PRIME, max_iter=MAX_ITER):
    """Proper basis of the lattice generated by integer ``generators``.

    Vectors are admitted when independent (mod q, switching primes when a
    vector is new over Q but not mod q), dropped when they are integer
    combinations of the current basis, and when a vector is a rational but
    non-integral combination the basis is repaired: the pivot basis vector is
    replaced by a combination that shrinks the basis discriminant, the old
    vector rejoins the queue, and the offending vector is retried.
    """
    basis = []
    events = []
    pending = [list(v) for v in generators]
    if pending:
        width = len(pending[0])
        if any(len(v) != width for v in pending):
            raise ValueError("generator length mismatch")
    guard = 0
    while pending:
        guard += 1
        if guard > 10_000:
            raise RuntimeError("proper basis construction did not terminate")
        theta = pending.pop(0)
        if not any(theta):
            events.append(("drop_zero", None))
            continue
        if not basis:
            if all(x % q == 0 for x in theta):
                q = _new_prime_for(basis + [theta], q)
                events.append(("new_prime", q))
            basis.append(theta)
            events.append(("append", len(basis) - 1))
            continue
        res = dec_solve(theta, basis, q=q, max_iter=max_iter)
        q = res.prime  # prime may have been escalated for independence
        if res.status == "not_in_rational_span":
            if res.stop_iteration == 0:
                basis.append(theta)
                events.append(("append", len(basis) - 1))
            else:
                # new over Q but dependent mod q: move to a fresh prime
                q = _new_prime_for(basis + [theta], q)
                basis.append(theta)
                events.append(("new_prime", q))
                events.append(("append", len(basis) - 1))
            continue
        if res.status == "coefficients":
            events.append(("drop_integral", res.coeffs))
            continue
        if res.reason == "max_iterations":
            # out of oracle range; fall back to the exact solver regardless
            x = solve_rational(basis, theta)
            if x is None:
                q = _new_prime_for(basis + [theta], q)
                basis.append(theta)
                events.append(("new_prime", q))
                events.append(("append", len(basis) - 1))
                continue
            if all(c.denominator == 1 for c in x):
                events.append(("drop_integral", [int(c) for c in x]))
                continue
        else:
            x = res.rational
        # rational, not integral: repair the basis
        disc_before = gram_discriminant(basis)
        m1 = lcm(*[c.denominator for c in x]) if len(x) > 1 else x[0].denominator
        z = [int(c * m1) for c in x]
        gcds = [gcd(m1, zi) for zi in z]
        m = min(gcds)
        j0 = gcds.index(m)
        g, a, b = xgcd(m1, z[j0])
        assert g == m
        new_row = [b * t for t in theta]
        for i, beta in enumerate(basis):
            if i == j0:
                c = a
            else:
                c = _ceil_div(-b * z[i], m1)
            if c:
                for k in range(len(new_row)):
                    new_row[k] += c * beta[k]
        old = basis[j0]
        basis[j0] = new_row
        disc_after = gram_discriminant(basis)
        assert 0 < disc_after < disc_before
        events.append(("replace", {"index": j0, "m1": m1, "m": m,
                                   "bezout": (a, b), "row": list(new_row)}))
        pending.insert(0, theta)   # retry the same vector
        pending.append(old)        # old basis vector becomes a generator
        if not _independent_mod(basis, q):
            q = _new_prime_for(basis, q)
            events.append(("new_prime", q))
    return FbaResult(basis=basis, events=events, prime=q)


def _independent_mod(rows, q):
    return _ModSolver(rows, q).rank == len(rows)


def _new_prime_for(rows, q):
    nz = [r for r in rows if any(r)]
    p = _next_prime(q)
    for _ in range(1000):
        if _independent_mod(nz, p):
            return p
        p = _next_prime(p)
    raise RuntimeError("no prime keeps the rows independent")


# ---------------------------------------------------------------------------
# matrix text format

def format_matrix(rows, legacy=False):
    m = len(rows)
    n = len(rows[0]) if m else 0
    if any(len(r) != n for r in rows):
        raise ValueError("ragged matrix")
    if legacy:
        words = legacy_encode_stream([m, n])
        lines = [" ".join(str(w) for w in words)]
        for row in rows:
            words = legacy_encode_stream(row)
            lines.append(" ".join(str(w) for w in words))
        return "\n".join(lines) + "\n"
    lines = ["%d %d" % (m, n)]
    for row in rows:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text, legacy=False):
    try:
        tokens = [int(t) for t in text.split()]
    except ValueError as exc:
        raise FormatError("non-integer token in matrix text: %s" % exc) from None
    if legacy:
        tokens = legacy_decode_stream(tokens)
    if len(tokens) < 2:
        raise FormatError("matrix text too short")
    m, n = tokens[0], tokens[1]
    if m < 0 or n < 0:
        raise FormatError("negative matrix dimensions")
    body = tokens[2:]
    if len(body) != m * n:
        raise FormatError("expected %d entries, found %d" % (m * n, len(body)))
    return [body[i * n:(i + 1) * n] for i in range(m)]
