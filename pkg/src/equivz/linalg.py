"""Dense exact linear algebra over an arbitrary coefficient field.

Matrices are lists of lists of domain elements.  Everything here is small
(complexes have a handful of generators), so plain Gaussian elimination
with exact arithmetic is the right tool.
"""

from __future__ import annotations


def zeros(field, rows, cols):
    z = field.zero()
    return [[z for _ in range(cols)] for _ in range(rows)]


def identity(field, n):
    m = zeros(field, n, n)
    one = field.one()
    for i in range(n):
        m[i][i] = one
    return m


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_mul(field, a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = zeros(field, n, m)
    for i in range(n):
        for j in range(m):
            s = field.zero()
            for l in range(k):
                if not field.is_zero(a[i][l]) and not field.is_zero(b[l][j]):
                    s = s + a[i][l] * b[l][j]
            out[i][j] = s
    return out


def mat_eq(field, a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if not field.is_zero(x - y):
                return False
    return True


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def involute_matrix(field, a):
    return [[field.involute(x) for x in row] for row in a]


def rank(field, a):
    """Exact rank by row reduction."""
    if not a or not a[0]:
        return 0
    m = [row[:] for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if not field.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


class NoSolution(ArithmeticError):
    """The linear system is inconsistent."""


def solve(field, a, b):
    """Particular solution x of a x = b, free variables set to zero.

    ``a`` is rows x cols, ``b`` a list of rows entries.  Deterministic:
    reduced row echelon with leftmost pivots, remaining columns zeroed.
    Raises NoSolution when inconsistent.
    """
    rows = len(a)
    cols = len(a[0]) if a else 0
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if not field.is_zero(aug[i][c]):
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = field.inv(aug[r][c])
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and not field.is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if not field.is_zero(aug[i][cols]):
            raise NoSolution("inconsistent linear system")
    x = [field.zero() for _ in range(cols)]
    for i, c in enumerate(pivots):
        x[c] = aug[i][cols]
    return x
