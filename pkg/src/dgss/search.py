"""Brute-force oracles: labelled enumeration, cospectral mate search, level laws,
and a seeded generator of self-converse graphs.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .graph import OrientedGraph, Permutation, anti_automorphism, find_isomorphism
from .linalg import char_poly, smith_normal_form
from .spectral import (
    GeneralizedSkewSpectrum,
    NotControllableError,
    RationalOrthogonal,
    _TransferSolver,
    generalized_skew_spectrum,
    graph_walk_matrix,
)

DEFAULT_EXHAUSTIVE_BOUND = 5


class SearchBoundError(ValueError):
    """Requested size exceeds the exhaustive-enumeration bound."""


def _check_bound(n: int, bound: int) -> None:
    if n > bound:
        raise SearchBoundError(f"n = {n} exceeds the exhaustive bound {bound}")


def vertex_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def graph_count(n: int) -> int:
    return 3 ** (n * (n - 1) // 2)


def graph_from_states(n: int, states: Sequence[int]) -> OrientedGraph:
    """State per pair ``(i, j)``, ``i < j``: 0 absent, 1 arc i->j, 2 arc j->i."""
    arcs = []
    for (i, j), st in zip(vertex_pairs(n), states):
        if st == 1:
            arcs.append((i, j))
        elif st == 2:
            arcs.append((j, i))
    return OrientedGraph(n, frozenset(arcs))


def graph_from_index(n: int, index: int) -> OrientedGraph:
    m = n * (n - 1) // 2
    states = [0] * m
    for k in range(m - 1, -1, -1):
        index, states[k] = divmod(index, 3)
    return graph_from_states(n, states)


def graph_index(g: OrientedGraph) -> int:
    """Position of ``g`` in :func:`enumerate_oriented_graphs` order."""
    idx = 0
    for i, j in vertex_pairs(g.n):
        st = 1 if (i, j) in g.arcs else 2 if (j, i) in g.arcs else 0
        idx = idx * 3 + st
    return idx


def enumerate_oriented_graphs(n: int, start: int = 0, stop: Optional[int] = None) -> Iterator[OrientedGraph]:
    """All labelled oriented graphs on ``n`` vertices, in pair-state lexicographic order.

    ``start``/``stop`` select an index range so the stream can be partitioned.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    total = graph_count(n)
    stop = total if stop is None else min(stop, total)
    if start == 0 and stop == total:
        for states in product(range(3), repeat=n * (n - 1) // 2):
            yield graph_from_states(n, states)
        return
    for idx in range(start, stop):
        yield graph_from_index(n, idx)


def enumerate_self_converse(n: int, bound: int = DEFAULT_EXHAUSTIVE_BOUND) -> Iterator[OrientedGraph]:
    _check_bound(n, bound)
    for g in enumerate_oriented_graphs(n):
        if anti_automorphism(g) is not None:
            yield g


# --------------------------------------------------------------------------
# spectrum index
# --------------------------------------------------------------------------


def _spectra_for_range(args: Tuple[int, int, int]) -> list[tuple]:
    n, start, stop = args
    pairs = vertex_pairs(n)
    out = []
    for idx in range(start, stop):
        rest = idx
        s = [[0] * n for _ in range(n)]
        for k in range(len(pairs) - 1, -1, -1):
            rest, st = divmod(rest, 3)
            if st:
                i, j = pairs[k]
                x = 1 if st == 1 else -1
                s[i][j] = x
                s[j][i] = -x
        js = [[1 - x for x in row] for row in s]
        out.append((tuple(char_poly(s)), tuple(char_poly(js))))
    return out


class SpectrumIndex:
    """Generalized skew spectrum of every labelled oriented graph on ``n`` vertices.

    Building it once lets many mate searches share a single full scan.
    """

    def __init__(self, n: int, classes: Dict[GeneralizedSkewSpectrum, List[int]]):
        self.n = n
        self.classes = classes
        self.scanned = graph_count(n)

    @classmethod
    def build(cls, n: int, bound: int = DEFAULT_EXHAUSTIVE_BOUND, workers: int = 1, chunk: int = 4096) -> "SpectrumIndex":
        _check_bound(n, bound)
        total = graph_count(n)
        ranges = [(n, a, min(a + chunk, total)) for a in range(0, total, chunk)]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_spectra_for_range, ranges))
        else:
            parts = [_spectra_for_range(r) for r in ranges]
        classes: Dict[GeneralizedSkewSpectrum, List[int]] = {}
        idx = 0
        for part in parts:
            for p_s, p_js in part:
                classes.setdefault(GeneralizedSkewSpectrum(p_s, p_js), []).append(idx)
                idx += 1
        return cls(n, classes)

    def mates_of(self, g: OrientedGraph) -> list[int]:
        if g.n != self.n:
            raise ValueError("graph size does not match the index")
        return list(self.classes.get(generalized_skew_spectrum(g), []))


# --------------------------------------------------------------------------
# mate search
# --------------------------------------------------------------------------


@dataclass
class MateSearchResult:
    base: OrientedGraph
    candidates_scanned: int
    cospectral_mates: list[OrientedGraph] = field(default_factory=list)
    nonisomorphic_mates: list[OrientedGraph] = field(default_factory=list)
    q_evidence: list[tuple[int, RationalOrthogonal]] = field(default_factory=list)

    def to_json(self) -> dict:
        noniso = {m for m in self.nonisomorphic_mates}
        return {
            "n": self.base.n,
            "scanned": self.candidates_scanned,
            "cospectral": len(self.cospectral_mates),
            "nonisomorphic": len(self.nonisomorphic_mates),
            "mates": [[list(a) for a in m.sorted_arcs()] for m in self.cospectral_mates],
            "levels": [str(q.level) for _, q in self.q_evidence],
            "nonisomorphic_indices": [i for i, m in enumerate(self.cospectral_mates) if m in noniso],
        }


def find_mates(
    g: OrientedGraph,
    max_n_for_exhaustive: int = DEFAULT_EXHAUSTIVE_BOUND,
    index: Optional[SpectrumIndex] = None,
) -> MateSearchResult:
    """Every labelled graph generalized-cospectral with ``g``, classified up to isomorphism.

    For controllable ``g`` each mate also carries its transfer matrix ``Q``
    and level. ``index`` may supply precomputed spectra for the full scan.
    """
    n = g.n
    _check_bound(n, max_n_for_exhaustive)
    if index is not None:
        mates = [graph_from_index(n, i) for i in index.mates_of(g)]
        scanned = index.scanned
    else:
        target = generalized_skew_spectrum(g)
        mates = []
        scanned = 0
        for h in enumerate_oriented_graphs(n):
            scanned += 1
            if generalized_skew_spectrum(h) == target:
                mates.append(h)

    result = MateSearchResult(base=g, candidates_scanned=scanned, cospectral_mates=mates)
    for h in mates:
        if find_isomorphism(g, h) is not None:
            continue
        if all(find_isomorphism(o, h) is None for o in result.nonisomorphic_mates):
            result.nonisomorphic_mates.append(h)

    try:
        solver = _TransferSolver(g)
    except NotControllableError:
        solver = None
    if solver is not None:
        for k, h in enumerate(mates):
            q = solver.recover(h)
            # a cospectral mate of a controllable graph always has a transfer matrix
            assert q is not None, "cospectral mate without a rational orthogonal transfer"
            result.q_evidence.append((k, q))
    return result


@dataclass
class LevelCheck:
    mate_index: int
    level: int
    divides_dn: bool
    odd: Optional[bool] = None
    trivial: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.divides_dn and self.odd is not False and self.trivial is not False


def level_law_checks(mate_index: int, level: int, d_n: int, pattern_matches: bool) -> LevelCheck:
    """Level divides d_n always; under the SNF pattern it must also be odd and equal 1."""
    check = LevelCheck(mate_index, level, d_n % level == 0)
    if pattern_matches:
        check.odd = level % 2 == 1
        check.trivial = level == 1
    return check


def verify_level_laws(g: OrientedGraph, result: MateSearchResult) -> list[LevelCheck]:
    from .criterion import snf_pattern_check

    w = graph_walk_matrix(g)
    snf = smith_normal_form(w)
    if snf.rank < g.n or g.n == 0:
        raise NotControllableError("walk matrix of g is singular")
    d_n = snf.d[-1]
    matches = snf_pattern_check(snf.d, g.n).matches
    return [level_law_checks(k, q.level, d_n, matches) for k, q in result.q_evidence]


# --------------------------------------------------------------------------
# random self-converse graphs
# --------------------------------------------------------------------------


def _involution_counts(n: int) -> list[int]:
    t = [1, 1]
    for m in range(2, n + 1):
        t.append(t[m - 1] + (m - 1) * t[m - 2])
    return t


def random_involution(n: int, rng: random.Random) -> list[int]:
    """Uniform over all involutions of ``range(n)``.

    The smallest unmatched point stays fixed with probability
    ``t(m-1) / t(m)``, ``t`` counting involutions on ``m`` points, and is
    otherwise paired with a uniformly chosen other unmatched point.
    """
    counts = _involution_counts(n)
    perm = list(range(n))
    free = list(range(n))
    while free:
        m = len(free)
        u = free.pop(0)
        if rng.randrange(counts[m]) < counts[m - 1]:
            continue
        v = free.pop(rng.randrange(m - 1))
        perm[u], perm[v] = v, u
    return perm


def _bernoulli(rng: random.Random, prob: Fraction) -> bool:
    return rng.randrange(prob.denominator) < prob.numerator


def random_self_converse_with_witness(
    n: int, arc_probability: Union[Fraction, float, str] = Fraction(1, 2), seed: int = 0
) -> tuple[OrientedGraph, list[int]]:
    """Random graph together with the involution built in as an anti-automorphism."""
    if n < 1:
        raise ValueError("n must be at least 1")
    prob = Fraction(arc_probability)
    if not 0 < prob < 1:
        raise ValueError("arc_probability must lie strictly between 0 and 1")
    rng = random.Random(seed)
    p = random_involution(n, rng)
    arcs = set()
    seen = set()
    for u, v in combinations(range(n), 2):
        if (u, v) in seen:
            continue
        image = tuple(sorted((p[u], p[v])))
        seen.add((u, v))
        seen.add(image)
        if p[u] == u and p[v] == v:
            # (u, v) would map to (v, u): a fixed pair cannot carry an arc
            continue
        if not _bernoulli(rng, prob):
            continue
        a, b = (u, v) if rng.randrange(2) else (v, u)
        arcs.add((a, b))
        # swapped pairs map onto themselves; other pairs get the mirrored arc
        arcs.add((p[b], p[a]))
    return OrientedGraph(n, frozenset(arcs)), p


def random_self_converse(n: int, arc_probability: Union[Fraction, float, str] = Fraction(1, 2), seed: int = 0) -> OrientedGraph:
    return random_self_converse_with_witness(n, arc_probability, seed)[0]


def random_controllable_self_converse(
    count: int,
    max_n: int = 10,
    seed: int = 0,
    arc_probability: Union[Fraction, float, str] = Fraction(1, 2),
    min_n: int = 2,
) -> Iterator[tuple[OrientedGraph, list[int], int]]:
    """Yield ``count`` seeded self-converse graphs with nonsingular walk matrix.

    Each item is ``(graph, involution, sub_seed)``; the sub-seed replays the
    single graph through :func:`random_self_converse`.
    """
    from .linalg import determinant

    rng = random.Random(seed)
    found = 0
    while found < count:
        n = rng.randint(min_n, max_n)
        sub = rng.getrandbits(64)
        g, p = random_self_converse_with_witness(n, arc_probability, sub)
        if determinant(graph_walk_matrix(g)) != 0:
            found += 1
            yield g, p, sub
