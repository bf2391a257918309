"""Walk matrices, generalized skew spectra and the rational orthogonal transfer matrix."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .graph import OrientedGraph, SkewMatrix, skew_adjacency
from .linalg import (
    IntegerMatrix,
    RationalMatrix,
    adjugate,
    char_poly,
    determinant,
    lcm_all,
    matmul,
    transpose,
)


class NotControllableError(ValueError):
    """The walk matrix is singular, so the transfer matrix is not determined by it."""


def walk_matrix(s: SkewMatrix) -> IntegerMatrix:
    """``[e, Se, ..., S^(n-1) e]`` as an n x n integer matrix."""
    n = len(s)
    if n == 0:
        return []
    col = [1] * n
    cols = [col]
    for _ in range(n - 1):
        col = [sum(x * y for x, y in zip(row, col)) for row in s]
        cols.append(col)
    return transpose(cols)


def graph_walk_matrix(g: OrientedGraph) -> IntegerMatrix:
    return walk_matrix(skew_adjacency(g))


@dataclass(frozen=True)
class GeneralizedSkewSpectrum:
    p_S: tuple
    p_JS: tuple

    def to_json(self) -> dict:
        return {"p_S": [str(c) for c in self.p_S], "p_JS": [str(c) for c in self.p_JS]}


def generalized_skew_spectrum(g: OrientedGraph) -> GeneralizedSkewSpectrum:
    s = skew_adjacency(g)
    js = [[1 - x for x in row] for row in s]
    return GeneralizedSkewSpectrum(tuple(char_poly(s)), tuple(char_poly(js)))


def is_generalized_cospectral(g: OrientedGraph, h: OrientedGraph) -> bool:
    if g.n != h.n:
        return False
    return generalized_skew_spectrum(g) == generalized_skew_spectrum(h)


def level_of(q: Sequence[Sequence[Fraction]]) -> int:
    """Least ``k > 0`` with ``k * q`` integral: the lcm of entry denominators."""
    return lcm_all(Fraction(x).denominator for row in q for x in row)


@dataclass
class RationalOrthogonal:
    q: RationalMatrix
    level: int

    def is_permutation(self) -> bool:
        return self.level == 1 and all(
            sorted(row) == [0] * (len(row) - 1) + [1] for row in self.q
        )


class _TransferSolver:
    """Reuses ``adj(W(g).T)`` across many candidate partners ``h``."""

    def __init__(self, g: OrientedGraph):
        self.g = g
        self.s = skew_adjacency(g)
        self.w = walk_matrix(self.s)
        if g.n == 0:
            self.adj_t, self.det = [], 1
            return
        self.det = determinant(self.w)
        if self.det == 0:
            raise NotControllableError("walk matrix of g is singular")
        self.adj_t, _ = adjugate(transpose(self.w))

    def scaled(self, h: OrientedGraph) -> IntegerMatrix:
        """``det(W(g)) * Q`` where ``Q = W(g).T^-1 @ W(h).T``."""
        return matmul(self.adj_t, transpose(graph_walk_matrix(h)))

    def recover(self, h: OrientedGraph) -> Optional[RationalOrthogonal]:
        g = self.g
        if h.n != g.n:
            return None
        n, det = g.n, self.det
        m = self.scaled(h)
        # Q.T Q = I, Q e = e, Q.T S(g) Q = S(h), all scaled by det
        mt = transpose(m)
        d2 = det * det
        if matmul(mt, m) != [[d2 * int(i == j) for j in range(n)] for i in range(n)]:
            return None
        if any(sum(row) != det for row in m):
            return None
        sh = skew_adjacency(h)
        if matmul(matmul(mt, self.s), m) != [[d2 * x for x in row] for row in sh]:
            return None
        q = [[Fraction(x, det) for x in row] for row in m]
        common = 0
        for row in m:
            for x in row:
                common = gcd(common, x)
        level = abs(det) // gcd(common, det)
        return RationalOrthogonal(q=q, level=level)


def recover_Q(g: OrientedGraph, h: OrientedGraph) -> Optional[RationalOrthogonal]:
    """The unique rational orthogonal ``Q`` with ``Q.T S(g) Q = S(h)`` and ``Q e = e``.

    Computed from ``Q.T W(g) = W(h)`` and returned only after all three
    defining identities have been verified; ``None`` if any fails. Raises
    :class:`NotControllableError` if ``W(g)`` is singular.
    """
    return _TransferSolver(g).recover(h)
