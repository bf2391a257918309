"""Exact linear algebra over the integers, the rationals and prime fields.

Matrices are plain lists of rows holding Python ``int`` (or ``Fraction``)
entries, so every computation is arbitrary precision and exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Sequence

IntegerMatrix = List[List[int]]
RationalMatrix = List[List[Fraction]]


class SingularMatrixError(ValueError):
    pass


def _check_rectangular(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for row in m:
        if len(row) != cols:
            raise ValueError("matrix rows have unequal lengths")
    return rows, cols


def _check_square(m: Sequence[Sequence[int]]) -> int:
    rows, cols = _check_rectangular(m)
    if rows != cols:
        raise ValueError(f"expected a square matrix, got {rows}x{cols}")
    return rows


def identity(n: int) -> IntegerMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntegerMatrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def format_matrix(m: Sequence[Sequence]) -> str:
    """Row-per-line text form; rationals print as ``num/den``."""
    return "\n".join(" ".join(str(x) for x in row) for row in m)


# --------------------------------------------------------------------------
# determinants and characteristic polynomials
# --------------------------------------------------------------------------


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def char_poly(m: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of det(xI - m), highest degree first.

    Uses the Faddeev-LeVerrier recurrence; every division by ``k`` is exact
    for integer input, so no rationals appear.
    """
    n = _check_square(m)
    coeffs = [1]
    mk = [list(row) for row in m]  # A * M_1 with M_1 = I
    for k in range(1, n + 1):
        trace = sum(mk[i][i] for i in range(n))
        c = -trace // k
        coeffs.append(c)
        if k == n:
            break
        for i in range(n):
            mk[i][i] += c
        mk = matmul(m, mk)
    return coeffs


# --------------------------------------------------------------------------
# Smith normal form
# --------------------------------------------------------------------------


@dataclass
class SmithDecomposition:
    """``original == U @ diag(d) @ V`` with ``U``, ``V`` unimodular."""

    d: list[int]
    U: IntegerMatrix
    V: IntegerMatrix
    rank: int
    rows: int
    cols: int

    def diagonal(self) -> IntegerMatrix:
        """The full ``rows x cols`` diagonal matrix, zero-padded past the rank."""
        out = zeros(self.rows, self.cols)
        for i, di in enumerate(self.d):
            out[i][i] = di
        return out

    def reconstruct(self) -> IntegerMatrix:
        return matmul(matmul(self.U, self.diagonal()), self.V)


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with unimodular witnesses.

    Pivots on an entry of least absolute value in the remaining block,
    clears its row and column by Euclidean reduction, and repairs
    divisibility by folding an offending row into the pivot row. Row
    operations on the working matrix are mirrored as inverse column
    operations on ``U`` and column operations as inverse row operations
    on ``V``, so ``U @ D @ V`` equals the input at every step.
    """
    rows, cols = _check_rectangular(m)
    a = [list(row) for row in m]
    U = identity(rows)
    V = identity(cols)

    # a <- E a  (row op)  =>  U <- U E^-1
    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for r in U:
            r[i], r[j] = r[j], r[i]

    def row_add(i: int, j: int, c: int) -> None:
        # row i += c * row j
        ri, rj = a[i], a[j]
        for k in range(cols):
            ri[k] += c * rj[k]
        for r in U:
            r[j] -= c * r[i]

    def row_neg(i: int) -> None:
        a[i] = [-x for x in a[i]]
        for r in U:
            r[i] = -r[i]

    # a <- a F  (col op)  =>  V <- F^-1 V
    def col_swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        V[i], V[j] = V[j], V[i]

    def col_add(i: int, j: int, c: int) -> None:
        # col i += c * col j
        for r in a:
            r[i] += c * r[j]
        vi, vj = V[i], V[j]
        for k in range(cols):
            vj[k] -= c * vi[k]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)

        while True:
            done = True
            piv = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // piv
                    row_add(i, t, -q)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // piv
                    col_add(j, t, -q)
                    if a[t][j]:
                        done = False
            if not done:
                # a smaller remainder appeared in the pivot row/column
                best = None
                for i in range(t, rows):
                    x = a[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                for j in range(t, cols):
                    x = a[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                _, pi, pj = best
                if pi != t:
                    row_swap(t, pi)
                if pj != t:
                    col_swap(t, pj)
                continue
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            row_neg(t)
        t += 1

    d = [a[i][i] for i in range(t)]
    return SmithDecomposition(d=d, U=U, V=V, rank=t, rows=rows, cols=cols)


# --------------------------------------------------------------------------
# prime fields
# --------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _rref_mod_p(m: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows, cols = _check_rectangular(m)
    a = [[x % p for x in row] for row in m]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(m: Sequence[Sequence[int]], p: int) -> int:
    _require_prime(p)
    return len(_rref_mod_p(m, p)[1])


def kernel_mod_p(m: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of the right null space of ``m`` over GF(p).

    Each vector is scaled so that its first nonzero coordinate is 1.
    """
    _require_prime(p)
    _, cols = _check_rectangular(m)
    a, pivots = _rref_mod_p(m, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [0] * cols
        v[free] = 1
        for r, c in enumerate(pivots):
            v[c] = -a[r][free] % p
        lead = next(x for x in v if x)
        inv = pow(lead, -1, p)
        basis.append([x * inv % p for x in v])
    return basis


# --------------------------------------------------------------------------
# rationals
# --------------------------------------------------------------------------


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> RationalMatrix:
    """Exact ``X`` with ``a @ X == b`` by Gauss-Jordan over ``Fraction``."""
    n = _check_square(a)
    b_rows, b_cols = _check_rectangular(b)
    if b_rows != n:
        raise ValueError("right-hand side has the wrong number of rows")
    aug = [[Fraction(x) for x in a[i]] + [Fraction(x) for x in b[i]] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def rank_rational(m: Sequence[Sequence[int]]) -> int:
    rows, cols = _check_rectangular(m)
    a = [[Fraction(x) for x in row] for row in m]
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def adjugate(m: Sequence[Sequence[int]]) -> tuple[IntegerMatrix, int]:
    """Return ``(adj(m), det(m))`` with ``m @ adj(m) == det(m) * I``.

    Only meaningful for nonsingular ``m``; raises otherwise.
    """
    n = _check_square(m)
    inv = solve_rational(m, identity(n))
    det = determinant(m)
    adj = []
    for row in inv:
        out = []
        for x in row:
            y = x * det
            assert y.denominator == 1
            out.append(y.numerator)
        adj.append(out)
    return adj, det


# --------------------------------------------------------------------------
# factorization
# --------------------------------------------------------------------------

DEFAULT_FACTOR_BOUND = 10**6


@dataclass
class PrimeFactorization:
    factors: list[tuple[int, int]] = field(default_factory=list)
    remainder: int = 1

    def value(self) -> int:
        out = self.remainder
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def factorize(v: int, bound: int = DEFAULT_FACTOR_BOUND) -> PrimeFactorization:
    """Trial division by every prime up to ``bound``.

    Whatever is left over is returned as ``remainder`` and carries no prime
    factor ``<= bound``. The sign of ``v`` stays with the remainder.
    """
    if v == 0:
        raise ValueError("cannot factorize 0")
    if bound < 2:
        raise ValueError("bound must be at least 2")
    rem = v
    out = PrimeFactorization()

    def strip(t: int) -> None:
        nonlocal rem
        e = 0
        while rem % t == 0:
            rem //= t
            e += 1
        if e:
            out.factors.append((t, e))

    strip(2)
    t = 3
    while t <= bound and t * t <= abs(rem):
        strip(t)
        t += 2
    # loop stopped at sqrt(|rem|) without a divisor, so |rem| is 1 or prime
    if abs(rem) > 1 and abs(rem) <= bound and isqrt(abs(rem)) < t:
        p = abs(rem)
        out.factors.append((p, 1))
        rem //= p
    out.remainder = rem
    return out


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
