"""Exact integer/rational primitives and the legacy wire codec.

Arbitrary-precision integers are plain Python ints and exact fractions are
``fractions.Fraction``; nothing in the package ever goes through floats.
The only place a fixed radix appears is the legacy serialization: integers
are written as base-10000 digit words, most significant first, where the
*final* word carries an offset (10000 for nonnegative numbers, 20000 for
negative ones).  The offset makes the stream self-delimiting: a word >= 10000
closes the current number, so matrices can be stored as a bare word stream.
"""

from fractions import Fraction

RADIX = 10_000
POS_MARK = 10_000
NEG_MARK = 20_000

Rational = Fraction  # alias: the package's exact rational type


class FormatError(ValueError):
    """Malformed serialized data (codec words, matrix files, records)."""


class DomainError(ValueError):
    """Mathematically invalid input (wrong shape, broken precondition)."""


def legacy_encode(n):
    """Encode an int as a list of legacy words.

    >>> legacy_encode(123456789)
    [1, 2345, 16789]
    >>> legacy_encode(-123456789)
    [1, 2345, 26789]
    >>> legacy_encode(0)
    [10000]
    """
    if not isinstance(n, int):
        raise FormatError("legacy codec encodes integers only, got %r" % (n,))
    mark = POS_MARK if n >= 0 else NEG_MARK
    m = abs(n)
    digits = []
    while True:
        m, d = divmod(m, RADIX)
        digits.append(d)
        if m == 0:
            break
    digits.reverse()
    digits[-1] += mark
    return digits


def legacy_decode(words):
    """Decode one legacy word sequence back to an int (strict validation)."""
    if not words:
        raise FormatError("empty legacy word sequence")
    for w in words[:-1]:
        if not isinstance(w, int) or not (0 <= w < RADIX):
            raise FormatError("bad interior legacy word %r" % (w,))
    last = words[-1]
    if not isinstance(last, int) or not (POS_MARK <= last < NEG_MARK + RADIX):
        raise FormatError("bad final legacy word %r" % (last,))
    if last >= NEG_MARK:
        sign, low = -1, last - NEG_MARK
    else:
        sign, low = 1, last - POS_MARK
    digits = list(words[:-1]) + [low]
    if len(digits) > 1 and digits[0] == 0:
        raise FormatError("leading zero digit in legacy word sequence")
    n = 0
    for d in digits:
        n = n * RADIX + d
    if sign < 0 and n == 0:
        raise FormatError("negative zero is not a legacy value")
    return sign * n


def legacy_encode_stream(values):
    """Flatten many ints into one self-delimiting word stream."""
    out = []
    for v in values:
        out.extend(legacy_encode(v))
    return out


def legacy_decode_stream(words):
    """Split a word stream at its terminator words and decode every number."""
    values = []
    current = []
    for w in words:
        current.append(w)
        if isinstance(w, int) and w >= POS_MARK:
            values.append(legacy_decode(current))
            current = []
    if current:
        raise FormatError("trailing unterminated legacy words: %r" % (current,))
    return values


def divmod_euclid(a, b):
    """Quotient and remainder with 0 <= remainder < |b| (Euclidean)."""
    if b == 0:
        raise ZeroDivisionError("division by zero")
    q, r = divmod(a, b)
    if r < 0:  # only possible for b < 0 with Python's floor division
        q += 1
        r -= b
    return q, r


def xgcd(a, b):
    """Extended gcd: returns (g, x, y) with g = gcd(a,b) >= 0, x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y
