"""Highest-weight enumeration by multiset inclusion, chain decompositions of
rational functions, the finite-dimensionality criterion, and the polynomials
attached to lowering paths in a fundamental crystal.

Polynomial roots live in (1/2)Z and are stored doubled, so all arithmetic is
exact over the integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import DynkinDiagram, OrbitElement, WeightVec, weight_to_root
from .errors import CosetMismatch, SizeMismatch
from .monomial import (
    FrozenMsets,
    Monomial,
    Multiset,
    MultisetMap,
    ParamSet,
    eps_phi,
    f_tilde,
    freeze_msets,
    mset,
    t_multisets,
    y_var,
)
from .regularity import ConditionElement, condition_elements, enumerate_candidates


@dataclass(frozen=True)
class HalfIntPoly:
    """A monic polynomial with roots in (1/2)Z, stored as doubled integers."""

    roots: Multiset

    @property
    def degree(self) -> int:
        return len(self.roots)

    def divides(self, other: "HalfIntPoly") -> bool:
        return not Counter(self.roots) - Counter(other.roots)

    def __mul__(self, other: "HalfIntPoly") -> "HalfIntPoly":
        return HalfIntPoly(mset(self.roots + other.roots))

    def __str__(self) -> str:
        if not self.roots:
            return "1"
        parts = []
        for root, mult in sorted(Counter(self.roots).items()):
            half = Fraction(root, 2)
            if half == 0:
                factor = "u"
            elif half > 0:
                factor = f"(u - {half})"
            else:
                factor = f"(u + {-half})"
            parts.append(factor + (f"^{mult}" if mult > 1 else ""))
        return "*".join(parts)


@dataclass(frozen=True)
class HwProblem:
    """Data (diagram, R, mu) with m defined by lambda - mu = sum m_i alpha_i."""

    diagram: DynkinDiagram
    r: ParamSet
    mu: WeightVec
    m: tuple[int, ...]
    mu_dominant: bool


def hw_problem(d: DynkinDiagram, r: ParamSet, mu: WeightVec) -> HwProblem:
    lam = r.weight
    m = weight_to_root(d, tuple(a - b for a, b in zip(lam, mu)))
    if any(x < 0 for x in m):
        raise ValueError(f"mu={mu} is not below lambda={lam}")
    return HwProblem(d, r, tuple(mu), m, all(x >= 0 for x in mu))


def hw_condition(ce: ConditionElement, r: ParamSet, s: MultisetMap) -> bool:
    """The multiset inclusion attached to q = y(i,0) * z_U^{-1}:

    union over negative exponents of (S_j - k)^{-b} must embed into the union
    of (R_j - u - 2) over U together with (S_j - k)^{b} over positive b.
    """
    left = Counter()
    right = Counter()
    for (j, k), b in ce.q.items:
        sj = s.get(j, ())
        if not sj:
            continue
        target = left if b < 0 else right
        for value in sj:
            target[value - k] += abs(b)
    if not left:
        return True
    for j, values in ce.U:
        rj = r.get(j)
        for u in values:
            for value in rj:
                right[value - u - 2] += 1
    return not left - right


@lru_cache(maxsize=None)
def _all_conditions_at_zero(d: DynkinDiagram) -> tuple[ConditionElement, ...]:
    out = []
    for i in d.nodes:
        out.extend(condition_elements(d, i, 0))
    return tuple(out)


@lru_cache(maxsize=256)
def _hw_context(d: DynkinDiagram, r: ParamSet):
    """Preprocessed inclusion conditions: only those with a negative exponent
    can fail, and their R-side multisets do not depend on S."""
    conds = []
    for ce in _all_conditions_at_zero(d):
        neg = tuple(((j, k), -b) for (j, k), b in ce.q.items if b < 0)
        if not neg:
            continue
        pos = tuple(((j, k), b) for (j, k), b in ce.q.items if b > 0)
        rpart: Counter = Counter()
        for j, values in ce.U:
            rj = r.get(j)
            for u in values:
                for value in rj:
                    rpart[value - u - 2] += 1
        conds.append((neg, pos, dict(rpart)))
    return tuple(conds)


def _hw_ok(conds, s: MultisetMap) -> bool:
    scount: dict[tuple[int, int], int] = {}
    for j, values in s.items():
        for v in values:
            scount[(j, v)] = scount.get((j, v), 0) + 1
    for neg, pos, rpart in conds:
        left: dict[int, int] = {}
        for (j, k), b in neg:
            sj = s.get(j)
            if sj:
                for v in sj:
                    left[v - k] = left.get(v - k, 0) + b
        for key, cnt in left.items():
            have = rpart.get(key, 0)
            if have < cnt:
                for (j, k), b in pos:
                    have += b * scount.get((j, key + k), 0)
                    if have >= cnt:
                        break
                if have < cnt:
                    return False
    return True


def enumerate_highest_weights(prob: HwProblem) -> set[FrozenMsets]:
    """All S with |S_i| = m_i passing every multiset inclusion condition."""
    d, r = prob.diagram, prob.r
    conds = _hw_context(d, r)
    out = set()
    for s in enumerate_candidates(d, r, prob.m):
        if _hw_ok(conds, s):
            out.add(freeze_msets(s))
    return out


def chain_decompose(a: Multiset, b: Multiset) -> HalfIntPoly | None:
    """P with prod(u - b_k) / prod(u - a_k) = P(u+1) / P(u), or None.

    Inputs are doubled, so the unit shift u -> u+1 moves roots by 2.  P exists
    exactly when sorted-descending a dominates b pointwise; its roots fill the
    chains b_k + 2, b_k + 4, ..., a_k.
    """
    a, b = mset(a), mset(b)
    if len(a) != len(b):
        raise SizeMismatch(f"|{a}| != |{b}|")
    parities = {x % 2 for x in a} | {x % 2 for x in b}
    if len(parities) > 1:
        raise CosetMismatch("values do not lie in a single integer coset")
    roots = []
    for ak, bk in zip(sorted(a, reverse=True), sorted(b, reverse=True)):
        if ak < bk:
            return None
        roots.extend(range(bk + 2, ak + 1, 2))
    return HalfIntPoly(mset(roots))


def _greedy_injection(s: Multiset, t: Multiset) -> list[tuple[int, int]] | None:
    """Pair each s with the largest unused t <= s, scanning s descending;
    succeeds exactly when an injective weakly decreasing map exists."""
    available = sorted(t, reverse=True)
    used = [False] * len(available)
    pairs = []
    for value in sorted(s, reverse=True):
        for idx, tv in enumerate(available):
            if not used[idx] and tv <= value:
                used[idx] = True
                pairs.append((value, tv))
                break
        else:
            return None
    return pairs


def finite_dim_certificate(
    d: DynkinDiagram, r: ParamSet, s: MultisetMap
) -> dict[int, tuple[HalfIntPoly, HalfIntPoly]] | None:
    """Per-node (P_i, Q_i) data when a weakly decreasing injection S_i -> T_i
    exists at every node: Q_i collects the unmatched half-roots of T_i and P_i
    is the chain decomposition of the matched pairs.  None otherwise."""
    t = t_multisets(d, r, s)
    out: dict[int, tuple[HalfIntPoly, HalfIntPoly]] = {}
    for i in d.nodes:
        si, ti = s.get(i, ()), t.get(i, ())
        pairs = _greedy_injection(si, ti)
        if pairs is None:
            return None
        matched = Counter(tv for _, tv in pairs)
        q_roots = []
        for value in ti:
            if matched[value]:
                matched[value] -= 1
            else:
                q_roots.append(value)
        p = chain_decompose(mset(sv for sv, _ in pairs), mset(tv for _, tv in pairs))
        assert p is not None
        out[i] = (p, HalfIntPoly(mset(q_roots)))
    return out


def finite_dim_test(d: DynkinDiagram, r: ParamSet, s: MultisetMap) -> bool:
    """Whether the datum admits the (P_i, Q_i) factorization, equivalently
    whether y_T * y_S^{-1} is a highest-weight element."""
    return finite_dim_certificate(d, r, s) is not None


def g_poly_path(
    prob: HwProblem, i: int, path: tuple[int, ...], s: tuple[int, ...]
) -> HalfIntPoly | None:
    """Walk the lowering operators along path from y(i,0), recording the index
    k_a of each applied factor z(i_a, k_a - 2); the result is the polynomial
    u^{m_i} * prod (u + k_a/2)^{s_a - 1}, or None when the walk dies."""
    if len(path) != len(s):
        raise ValueError("path and exponent sequence differ in length")
    p = y_var(i, 0)
    roots = Counter({0: prob.m[i - 1]})
    for node, s_a in zip(path, s):
        _, phi, _, k_phi = eps_phi(p, node)
        if phi == 0:
            return None
        p = f_tilde(prob.diagram, p, node)
        roots[-k_phi] += s_a - 1
    return HalfIntPoly(mset(roots.elements()))


def g_gamma(prob: HwProblem, g: OrbitElement) -> HalfIntPoly:
    """The path polynomial along the orbit element's minimal word, with
    exponents mu_{i_a} + 1; independent of the chosen minimal word."""
    path = tuple(reversed(g.word))
    s = tuple(prob.mu[a - 1] + 1 for a in path)
    poly = g_poly_path(prob, g.node, path, s)
    if poly is None:
        raise ValueError(f"orbit word {g.word} does not define a crystal path")
    return poly
