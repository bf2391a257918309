"""Arithmetic DGSS criterion for self-converse oriented graphs, plus the anisotropy audit.

A self-converse oriented graph whose walk matrix has Smith normal form
``diag(1, ..., 1, 2, ..., 2, 2d)`` with ``ceil(n/2)`` ones and ``d`` odd is
determined by its generalized skew spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .graph import OrientedGraph, Permutation, anti_automorphism, skew_adjacency
from .linalg import (
    DEFAULT_FACTOR_BOUND,
    determinant,
    factorize,
    is_prime,
    kernel_mod_p,
    matvec,
    rank_mod_p,
    smith_normal_form,
    transpose,
)
from .spectral import walk_matrix


class Verdict(str, Enum):
    CERTIFIED = "Certified"
    NOT_SELF_CONVERSE = "NotSelfConverse"
    SINGULAR_WALK_MATRIX = "SingularWalkMatrix"
    PATTERN_MISMATCH = "PatternMismatch"


class AuditVerdict(str, Enum):
    ANISOTROPIC = "Anisotropic"
    ISOTROPIC = "Isotropic"
    NOT_APPLICABLE = "NotApplicable"


@dataclass
class SnfPatternResult:
    matches: bool
    ones_count: int
    twos_count: int
    d: Optional[int] = None
    failure_reason: Optional[str] = None


def snf_pattern_check(d_list: Sequence[int], n: int) -> SnfPatternResult:
    """Match invariant factors against ``diag(1^ceil(n/2), 2^(floor(n/2)-1), 2d)``, d odd."""
    if len(d_list) != n:
        raise ValueError(f"expected {n} invariant factors, got {len(d_list)}")
    ones = sum(1 for x in d_list if x == 1)
    twos = sum(1 for x in d_list[:-1] if x == 2) if n else 0
    want_ones = (n + 1) // 2

    def fail(reason: str) -> SnfPatternResult:
        return SnfPatternResult(False, ones, twos, None, reason)

    if n == 0:
        return fail("empty graph has no walk matrix")
    if n == 1:
        if list(d_list) == [1]:
            return SnfPatternResult(True, 1, 0, None, None)
        return fail(f"expected diag(1), got diag({d_list[0]})")
    head = list(d_list[:want_ones])
    if head != [1] * want_ones or ones != want_ones:
        return fail(f"expected {want_ones} leading 1's, found {ones}")
    middle = list(d_list[want_ones:n - 1])
    if middle != [2] * len(middle):
        bad = next(x for x in middle if x != 2)
        return fail(f"expected 2 at positions {want_ones + 1}..{n - 1}, found {bad}")
    last = d_list[-1]
    if last == 0:
        return fail("walk matrix is singular (last invariant factor 0)")
    if last % 2 or (last // 2) % 2 == 0:
        return fail(f"last invariant factor {last} is not twice an odd integer")
    return SnfPatternResult(True, want_ones, n // 2 - 1, last // 2, None)


@dataclass
class AnisotropyAudit:
    p: int
    rank_p: int
    kernel_vector: Optional[list[int]]
    self_inner_product: Optional[int]
    lemma7_holds: Optional[bool]
    verdict: AuditVerdict

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "rank_p": self.rank_p,
            "verdict": self.verdict.value,
            "vTv": None if self.self_inner_product is None else str(self.self_inner_product),
            "lemma7": self.lemma7_holds,
        }


def anisotropy_audit(g: OrientedGraph, p: int) -> AnisotropyAudit:
    """Check that ``ker W.T`` over GF(p) is anisotropic when ``rank_p W = n - 1``.

    Also records whether the kernel vector ``v`` satisfies ``S v = 0 (mod p)``.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    s = skew_adjacency(g)
    w = walk_matrix(s)
    if g.n == 0 or determinant(w) == 0:
        raise ValueError("walk matrix is singular")
    n = g.n
    r = rank_mod_p(w, p)
    if r != n - 1:
        return AnisotropyAudit(p, r, None, None, None, AuditVerdict.NOT_APPLICABLE)
    (v,) = kernel_mod_p(transpose(w), p)
    vtv = sum(x * x for x in v) % p
    lemma7 = all(x % p == 0 for x in matvec(s, v))
    verdict = AuditVerdict.ANISOTROPIC if vtv else AuditVerdict.ISOTROPIC
    return AnisotropyAudit(p, r, v, vtv, lemma7, verdict)


def totally_isotropic_check(vectors: Sequence[Sequence[int]], p: int) -> bool:
    """True iff every pairwise inner product (self-products included) vanishes mod p."""
    if not vectors:
        raise ValueError("need at least one vector")
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise ValueError("vectors have different dimensions")
    for i, u in enumerate(vectors):
        for w in vectors[i:]:
            if sum(a * b for a, b in zip(u, w)) % p:
                return False
    return True


@dataclass
class CriterionReport:
    verdict: Verdict
    n: int
    snf: list[int]
    det_w: int
    anti_automorphism: Optional[Permutation]
    pattern: SnfPatternResult
    audits: list[AnisotropyAudit] = field(default_factory=list)
    unaudited_cofactor: int = 1

    @property
    def self_converse(self) -> bool:
        return self.anti_automorphism is not None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "n": self.n,
            "det_w": str(self.det_w),
            "snf": [str(x) for x in self.snf],
            "self_converse": self.self_converse,
            "anti_automorphism": None if self.anti_automorphism is None else list(self.anti_automorphism),
            "pattern": {
                "matches": self.pattern.matches,
                "d": None if self.pattern.d is None else str(self.pattern.d),
                "reason": self.pattern.failure_reason,
            },
            "audits": [a.to_json() for a in self.audits],
            "unaudited_cofactor": str(self.unaudited_cofactor),
        }

    def to_text(self) -> str:
        lines = [
            f"verdict: {self.verdict.value}",
            f"n: {self.n}",
            f"det W: {self.det_w}",
            f"SNF of W: diag({', '.join(str(x) for x in self.snf)})",
        ]
        if self.anti_automorphism is None:
            lines.append("self-converse: no")
        else:
            lines.append(f"self-converse: yes, anti-automorphism {list(self.anti_automorphism)}")
        if self.pattern.matches:
            d = "undefined" if self.pattern.d is None else str(self.pattern.d)
            lines.append(f"SNF pattern: matches, d = {d}")
        else:
            lines.append(f"SNF pattern: no match ({self.pattern.failure_reason})")
        for a in self.audits:
            extra = ""
            if a.self_inner_product is not None:
                extra = f", vTv = {a.self_inner_product}, Sv = 0: {a.lemma7_holds}"
            lines.append(f"audit p={a.p}: rank_p = {a.rank_p}, {a.verdict.value}{extra}")
        if self.unaudited_cofactor not in (1, -1):
            lines.append(f"unaudited cofactor: {self.unaudited_cofactor}")
        return "\n".join(lines)


def dgss_check(
    g: OrientedGraph, audit: bool = False, factor_bound: int = DEFAULT_FACTOR_BOUND
) -> CriterionReport:
    n = g.n
    w = walk_matrix(skew_adjacency(g))
    det_w = determinant(w) if n else 1
    snf = smith_normal_form(w).d if n else []
    if len(snf) == n:
        pattern = snf_pattern_check(snf, n)
    else:
        pattern = SnfPatternResult(
            False, sum(1 for x in snf if x == 1), sum(1 for x in snf if x == 2), None,
            f"walk matrix has rank {len(snf)} < {n}",
        )
    perm = anti_automorphism(g)

    if perm is None:
        verdict = Verdict.NOT_SELF_CONVERSE
    elif det_w == 0:
        verdict = Verdict.SINGULAR_WALK_MATRIX
    elif not pattern.matches:
        verdict = Verdict.PATTERN_MISMATCH
    else:
        verdict = Verdict.CERTIFIED

    report = CriterionReport(verdict, n, snf, det_w, perm, pattern)
    if audit and verdict is Verdict.CERTIFIED and pattern.d is not None:
        fac = factorize(pattern.d, factor_bound)
        report.audits = [anisotropy_audit(g, p) for p in sorted(fac.primes) if p != 2]
        report.unaudited_cofactor = abs(fac.remainder)
    return report
