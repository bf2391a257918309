"""Oriented graphs, skew adjacency matrices, converses and (anti-)isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO, Tuple, Union

from .linalg import IntegerMatrix, SingularMatrixError, determinant, solve_rational, transpose

Permutation = Tuple[int, ...]
SkewMatrix = IntegerMatrix


class GraphFormatError(ValueError):
    """Raised for text that does not describe a valid oriented graph."""


@dataclass(frozen=True)
class OrientedGraph:
    n: int
    arcs: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        object.__setattr__(self, "arcs", frozenset((int(u), int(v)) for u, v in self.arcs))
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if (v, u) in self.arcs:
                raise ValueError(f"digon between {u} and {v}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> "OrientedGraph":
        return cls(n, frozenset(tuple(a) for a in arcs))

    @classmethod
    def from_matrix(cls, s: Sequence[Sequence[int]]) -> "OrientedGraph":
        n = len(s)
        arcs = set()
        for i in range(n):
            if len(s[i]) != n:
                raise ValueError("matrix is not square")
            for j in range(n):
                x = s[i][j]
                if x not in (-1, 0, 1) or x != -s[j][i]:
                    raise ValueError(f"not a skew {{-1,0,1}} matrix at ({i}, {j})")
                if x == 1:
                    arcs.add((i, j))
        return cls(n, frozenset(arcs))

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def degrees(self) -> list[tuple[int, int]]:
        """``(in_degree, out_degree)`` per vertex."""
        ind = [0] * self.n
        outd = [0] * self.n
        for u, v in self.arcs:
            outd[u] += 1
            ind[v] += 1
        return list(zip(ind, outd))

    def relabel(self, perm: Sequence[int]) -> "OrientedGraph":
        """Image of the graph under ``i -> perm[i]``."""
        return OrientedGraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.arcs))


def parse_oriented_graph(text: Union[str, TextIO]) -> OrientedGraph:
    """Read the arc-list (or ``matrix``) text format.

    ::

        3          # vertex count
        0 1        # arc 0 -> 1
        1 2

    Alternatively a ``matrix`` line followed by the rows of the skew
    adjacency matrix, either after the vertex count or on its own.
    """
    if not isinstance(text, str):
        text = text.read()
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise GraphFormatError("empty input: expected the vertex count")

    n: Optional[int] = None
    pos = 0
    if lines[0][1].lower() != "matrix":
        lineno, first = lines[0]
        try:
            n = int(first)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected vertex count, got {first!r}") from None
        if n < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex count")
        pos = 1

    if pos < len(lines) and lines[pos][1].lower() == "matrix":
        return _parse_matrix_rows(lines[pos + 1:], n)
    assert n is not None

    arcs: set[tuple[int, int]] = set()
    for lineno, line in lines[pos:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: vertex out of range [0, {n})")
        if u == v:
            raise GraphFormatError(f"line {lineno}: loop at vertex {u}")
        if (u, v) in arcs:
            raise GraphFormatError(f"line {lineno}: duplicate arc {u} {v}")
        if (v, u) in arcs:
            raise GraphFormatError(f"line {lineno}: digon between {u} and {v}")
        arcs.add((u, v))
    return OrientedGraph(n, frozenset(arcs))


def _parse_matrix_rows(lines, n: Optional[int]) -> OrientedGraph:
    rows = []
    for lineno, line in lines:
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer matrix entry") from None
    if n is None:
        n = len(rows)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise GraphFormatError(f"expected {n} rows of {n} entries")
    try:
        return OrientedGraph.from_matrix(rows)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_oriented_graph(g: OrientedGraph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.sorted_arcs()]
    return "\n".join(lines) + "\n"


def skew_adjacency(g: OrientedGraph) -> SkewMatrix:
    s = [[0] * g.n for _ in range(g.n)]
    for u, v in g.arcs:
        s[u][v] = 1
        s[v][u] = -1
    return s


def converse(g: OrientedGraph) -> OrientedGraph:
    return OrientedGraph(g.n, frozenset((v, u) for u, v in g.arcs))


def permutation_matrix(perm: Sequence[int]) -> IntegerMatrix:
    """Matrix ``M`` with ``M[i][perm[i]] = 1``, so ``M.T S(g) M = S(g.relabel(perm))``."""
    n = len(perm)
    m = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        m[i][j] = 1
    return m


def conjugate(s: Sequence[Sequence[int]], perm: Sequence[int]) -> IntegerMatrix:
    """``P.T @ s @ P`` for ``P = permutation_matrix(perm)``."""
    n = len(perm)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = s[i][j]
    return out


def _search(g: OrientedGraph, h: OrientedGraph) -> Optional[Permutation]:
    """Least permutation ``pi`` (lexicographically) mapping arcs of g onto arcs of h."""
    if g.n != h.n or len(g.arcs) != len(h.arcs):
        return None
    n = g.n
    dg, dh = g.degrees(), h.degrees()
    if sorted(dg) != sorted(dh):
        return None
    sg, sh = skew_adjacency(g), skew_adjacency(h)
    candidates = [[j for j in range(n) if dh[j] == dg[i]] for i in range(n)]
    images = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        row = sg[i]
        for j in candidates[i]:
            if used[j]:
                continue
            hrow = sh[j]
            if all(row[k] == hrow[images[k]] for k in range(i)):
                images[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        images[i] = -1
        return False

    return tuple(images) if extend(0) else None


def find_isomorphism(g: OrientedGraph, h: OrientedGraph) -> Optional[Permutation]:
    """Lexicographically least ``pi`` with ``Pi.T S(g) Pi == S(h)``, or ``None``."""
    return _search(g, h)


def is_permutation_matrix(m: Sequence[Sequence]) -> Optional[Permutation]:
    n = len(m)
    images = []
    for row in m:
        if any(x not in (0, 1) for x in row) or sum(row) != 1:
            return None
        images.append(list(row).index(1))
    if len(set(images)) != n:
        return None
    return tuple(images)


def anti_automorphism(g: OrientedGraph) -> Optional[Permutation]:
    """A permutation ``P`` with ``P.T S P == -S``, or ``None`` if g is not self-converse.

    For a nonsingular walk matrix ``W`` the only candidate is
    ``W(converse) @ W^-1``; it is accepted only if it is a symmetric
    involutive permutation matrix satisfying the identity. Otherwise an
    exhaustive backtracking search returns the least witness.
    """
    from .spectral import walk_matrix

    s = skew_adjacency(g)
    w = walk_matrix(s)
    if g.n and determinant(w) != 0:
        # P W = W D with D = diag(1, -1, 1, ...), and P is symmetric, so
        # P = P.T solves W.T X = D W.T.
        wt = transpose(w)
        rhs = [[x if k % 2 == 0 else -x for x in row] for k, row in enumerate(wt)]
        try:
            cand = solve_rational(wt, rhs)
        except SingularMatrixError:  # pragma: no cover - det checked above
            return None
        perm = is_permutation_matrix(cand)
        if perm is None:
            return None
        neg = [[-x for x in row] for row in s]
        if conjugate(s, perm) != neg:
            return None
        assert cand == transpose(cand), "anti-automorphism of a controllable graph must be symmetric"
        assert all(perm[perm[i]] == i for i in range(g.n)), "anti-automorphism must be an involution"
        return perm
    return _search(g, converse(g))


def anti_automorphism_exhaustive(g: OrientedGraph) -> Optional[Permutation]:
    """Backtracking-only variant, used to cross-check the fast path."""
    return _search(g, converse(g))


def is_self_converse(g: OrientedGraph) -> bool:
    return anti_automorphism(g) is not None
