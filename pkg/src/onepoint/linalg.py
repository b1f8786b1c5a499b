"""Exact linear algebra over Z and Q.

Everything here works on plain tuples/lists of ``int`` or ``Fraction``.
Matrices are lists of rows. Nothing is vectorised: the ranks involved are
at most six, and exactness matters more than speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import DimensionError


def dot(u, v):
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} != {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def add(u, v):
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def content(v) -> int:
    """gcd of the entries of an integer vector (0 for the zero vector)."""
    return gcd(*v) if v else 0


def primitive(v) -> tuple[int, ...]:
    g = content(v)
    if g == 0:
        raise ValueError("the zero vector has no primitive multiple")
    return tuple(a // g for a in v)


def clear_denominators(v) -> tuple[int, ...]:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    den = lcm(*(Fraction(a).denominator for a in v)) if v else 1
    ints = tuple(int(Fraction(a) * den) for a in v)
    return primitive(ints) if any(ints) else ints


def rref(rows, ncols=None):
    """Reduced row echelon form over Q.

    Returns ``(matrix, pivots)`` where ``pivots[k]`` is the pivot column of
    row ``k``; zero rows are dropped.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def solve(A, b):
    """One rational solution of ``A x = b`` (free variables set to 0), or None."""
    if len(A) != len(b):
        raise DimensionError("row count of A and length of b differ")
    if not A:
        return None
    n = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    m, pivots = rref(aug, ncols=n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(m, pivots):
        x[c] = row[n]
    return tuple(x)


def nullspace(rows, ncols):
    """Integer basis (primitive vectors) of the rational kernel of ``rows``."""
    m, pivots = rref(rows, ncols=ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(m, pivots):
            v[c] = -row[f]
        basis.append(clear_denominators(v))
    return basis


def det(matrix) -> int:
    """Determinant of a square integer matrix (Bareiss fraction-free)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def orthogonal_complement_vector(rows, n):
    """Generalized cross product of ``n - 1`` integer vectors in Z^n.

    Component k is (-1)^k times the minor with column k deleted. The result
    is orthogonal to every row and is zero iff the rows are dependent.
    """
    if len(rows) != n - 1:
        raise DimensionError(f"need {n - 1} vectors in dimension {n}")
    out = []
    for k in range(n):
        minor = [[row[c] for c in range(n) if c != k] for row in rows]
        out.append((-1) ** k * det(minor))
    return tuple(out)


def hermite_rows(vectors, ncols):
    """Row-style Hermite normal form of the Z-span of ``vectors``.

    Returns the nonzero rows: an echelon basis with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``.
    """
    rows = [list(v) for v in vectors]
    r = 0
    pivot_cols = []
    for c in range(ncols):
        if r == len(rows):
            break
        while True:
            live = [k for k in range(r, len(rows)) if rows[k][c] != 0]
            if not live:
                break
            p = min(live, key=lambda k: abs(rows[k][c]))
            rows[r], rows[p] = rows[p], rows[r]
            clean = True
            for k in range(r + 1, len(rows)):
                if rows[k][c]:
                    q = rows[k][c] // rows[r][c]
                    rows[k] = [a - q * b for a, b in zip(rows[k], rows[r])]
                    if rows[k][c]:
                        clean = False
            if clean:
                break
        if r < len(rows) and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
            for k in range(r):
                q = rows[k][c] // rows[r][c]
                if q:
                    rows[k] = [a - q * b for a, b in zip(rows[k], rows[r])]
            pivot_cols.append(c)
            r += 1
    return [tuple(row) for row in rows[:r]], pivot_cols


# -- Fourier-Motzkin ---------------------------------------------------------

def _normalize(coeffs, rhs):
    """Scale an inequality so that it can be compared for duplicates."""
    nz = [abs(c) for c in coeffs if c != 0]
    if not nz:
        return tuple(coeffs), rhs
    s = max(nz)
    return tuple(c / s for c in coeffs), rhs / s


def fm_feasible(inequalities, nvars) -> bool:
    """Decide rational feasibility of ``{x : a.x <= b for (a, b) in inequalities}``.

    Plain Fourier-Motzkin elimination with duplicate removal.
    """
    system = {
        _normalize(tuple(Fraction(c) for c in a), Fraction(b))
        for a, b in inequalities
    }
    for var in range(nvars):
        pos, neg, rest = [], [], set()
        for a, b in system:
            if a[var] > 0:
                pos.append((a, b))
            elif a[var] < 0:
                neg.append((a, b))
            else:
                rest.add((a, b))
        for ap, bp in pos:
            for an, bn in neg:
                lp, ln = -an[var], ap[var]
                coeffs = tuple(lp * x + ln * y for x, y in zip(ap, an))
                rest.add(_normalize(coeffs, lp * bp + ln * bn))
        system = rest
    return all(b >= 0 for _, b in system)


def nonnegative_combination_exists(generators, target, nontrivial=False) -> bool:
    """Is ``target`` a nonnegative rational combination of ``generators``?

    With ``nontrivial=True`` the coefficients are additionally required to
    sum to 1, which for ``target = 0`` asks for a nontrivial relation.
    Decided by Gaussian elimination on the equalities followed by
    Fourier-Motzkin on the sign constraints.
    """
    n = len(generators)
    dim = len(target)
    eq_rows = [[g[d] for g in generators] for d in range(dim)]
    eq_rhs = list(target)
    if nontrivial:
        eq_rows.append([1] * n)
        eq_rhs.append(1)
    aug = [row + [rhs] for row, rhs in zip(eq_rows, eq_rhs)]
    m, pivots = rref(aug, ncols=n + 1)
    if pivots and pivots[-1] == n:
        return False
    free = [c for c in range(n) if c not in pivots]
    ineqs = []
    # pivot variable x_p = rhs - sum_f m[p][f] x_f must be >= 0
    for row in m:
        ineqs.append(([row[f] for f in free], row[n]))
    for k in range(len(free)):
        coeffs = [0] * len(free)
        coeffs[k] = -1
        ineqs.append((coeffs, 0))
    return fm_feasible(ineqs, len(free))
