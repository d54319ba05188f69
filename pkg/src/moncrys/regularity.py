"""Membership testing for product monomial crystals via the pairing E_q(p).

A monomial datum p = y_R * z_S^{-1} belongs to B(lambda, R) exactly when
E_q(p) >= 0 for every element q of every fundamental crystal B(varpi_i, n)
with n of parity opposite to i.  Only finitely many (i, n, q) can produce a
nonzero pairing, which makes the test effective.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .cartan import DynkinDiagram, WeightVec, weight_to_root
from .crystal import _fundamental_base
from .errors import ContainmentViolation
from .monomial import (
    FrozenMsets,
    Monomial,
    MultisetMap,
    ParamSet,
    decompose_S,
    freeze_msets,
    mset,
    mset_shift,
    mset_subtract,
    param_set,
)


@dataclass(frozen=True)
class ConditionElement:
    """An element q = y(node,n) * z_U^{-1} of the shifted crystal B(varpi_node, n)."""

    node: int
    n: int
    q: Monomial
    U: FrozenMsets


@lru_cache(maxsize=None)
def _base_conditions(d: DynkinDiagram, i: int):
    """Per-node condition table at the base shift c0 = parity(i).

    Each entry is (U items, exponent items, monomial); shifting to another n
    only offsets the k-indices, so the pairing can be evaluated without
    materializing the shifted monomials.
    """
    base = _fundamental_base(d, i)
    c0 = d.parity_of(i)
    r0 = param_set(d, {i: [c0]})
    table = []
    for q in base.elements:
        u = decompose_S(d, r0, q)
        u_items = tuple((j, k) for j, values in sorted(u.items()) for k in values)
        b_items = tuple((j, k, e) for (j, k), e in q.items)
        table.append((u_items, b_items, q))
    return tuple(table)


def condition_elements(d: DynkinDiagram, i: int, n: int) -> list[ConditionElement]:
    """All condition elements of B(varpi_i, n), with their U-decompositions."""
    c0 = d.parity_of(i)
    delta = n - c0
    out = []
    for u_items, _, q in _base_conditions(d, i):
        u: MultisetMap = {}
        for j, k in u_items:
            u.setdefault(j, []).append(k + delta)
        out.append(ConditionElement(i, n, q.shift(delta), freeze_msets({j: mset(v) for j, v in u.items()})))
    return out


def e_pairing(ce: ConditionElement, r: ParamSet, s: MultisetMap) -> int:
    """E_q(p) = sum U_j(k) R_j(k+1) + sum b_{j,k} S_j(k-1)."""
    total = 0
    for j, values in ce.U:
        rj = r.get(j)
        for k in values:
            total += rj.count(k + 1)
    for (j, k), e in ce.q.items:
        sj = s.get(j, ())
        if sj:
            total += e * sj.count(k - 1)
    return total


def _support_bounds(r: ParamSet, s: MultisetMap) -> tuple[int, int] | None:
    values = [c - 1 for _, vals in r.items() for c in vals]
    values += [k + 1 for vals in s.values() for k in vals]
    if not values:
        return None
    return min(values), max(values)


class RegularityContext:
    """Evaluation tables for the pairing against one fixed parameter set.

    The first sum of the pairing depends only on (R, i, n, q) and is cached
    per shift, so scanning many candidates S against the same R only pays for
    the S-dependent half.  Conditions whose exponents are all nonnegative can
    never fail and are skipped.
    """

    def __init__(self, d: DynkinDiagram, r: ParamSet):
        self.d = d
        self.r = r
        self.rcount: dict[tuple[int, int], int] = {}
        for i, values in r.items():
            for c in values:
                self.rcount[(i, c)] = self.rcount.get((i, c), 0) + 1
        self.base = {i: _base_conditions(d, i) for i in d.nodes}
        self.span = {}
        for i in d.nodes:
            kmin = min(k for _, _, q in self.base[i] for (_, k), _ in q.items)
            self.span[i] = d.parity_of(i) - kmin
        self._uparts: dict[tuple[int, int], tuple[int, ...]] = {}

    def _upart(self, i: int, delta: int) -> tuple[int, ...]:
        key = (i, delta)
        cached = self._uparts.get(key)
        if cached is None:
            rcount = self.rcount
            cached = tuple(
                sum(rcount.get((j, k + delta + 1), 0) for j, k in u_items)
                for u_items, _, _ in self.base[i]
            )
            self._uparts[key] = cached
        return cached

    def find_violation(self, s: MultisetMap):
        """First condition with a negative pairing, scanning ascending node,
        ascending shift n, then canonical element order; None when regular.

        Both halves of the pairing vanish once the shifted support of q
        misses (support(R) - 1) and (support(S) + 1), which bounds n.
        """
        bounds = _support_bounds(self.r, s)
        if bounds is None:
            return None
        lo, hi = bounds
        scount: dict[tuple[int, int], int] = {}
        for j, values in s.items():
            for k in values:
                scount[(j, k)] = scount.get((j, k), 0) + 1
        d = self.d
        for i in d.nodes:
            c0 = d.parity_of(i)
            base = self.base[i]
            want = (1 - c0) % 2
            n_start = lo if lo % 2 == want else lo + 1
            for n in range(n_start, hi + self.span[i] + 1, 2):
                delta = n - c0
                uparts = self._upart(i, delta)
                for idx, (u_items, b_items, q) in enumerate(base):
                    total = uparts[idx]
                    for j, k, e in b_items:
                        cnt = scount.get((j, k + delta - 1))
                        if cnt:
                            total += e * cnt
                    if total < 0:
                        return (i, n, q.shift(delta), total)
        return None

    def is_regular(self, s: MultisetMap) -> bool:
        bounds = _support_bounds(self.r, s)
        if bounds is None:
            return True
        lo, hi = bounds
        scount: dict[tuple[int, int], int] = {}
        for j, values in s.items():
            for k in values:
                scount[(j, k)] = scount.get((j, k), 0) + 1
        d = self.d
        for i in d.nodes:
            c0 = d.parity_of(i)
            base = self.base[i]
            want = (1 - c0) % 2
            n_start = lo if lo % 2 == want else lo + 1
            for n in range(n_start, hi + self.span[i] + 1, 2):
                delta = n - c0
                uparts = self._upart(i, delta)
                for idx, (_, b_items, _) in enumerate(base):
                    if not any(e < 0 for _, _, e in b_items):
                        continue
                    total = uparts[idx]
                    for j, k, e in b_items:
                        cnt = scount.get((j, k + delta - 1))
                        if cnt:
                            total += e * cnt
                    if total < 0:
                        return False
        return True


@lru_cache(maxsize=256)
def _context(d: DynkinDiagram, r: ParamSet) -> RegularityContext:
    return RegularityContext(d, r)


def find_violation(d: DynkinDiagram, r: ParamSet, s: MultisetMap):
    """First condition with E_q(p) < 0 in deterministic scan order, or None."""
    return _context(d, r).find_violation(s)


def is_regular(d: DynkinDiagram, r: ParamSet, s: MultisetMap) -> bool:
    return _context(d, r).is_regular(s)


# --- enumeration of candidate multiset tuples ---------------------------------

def candidate_values(d: DynkinDiagram, r: ParamSet, m: tuple[int, ...]) -> dict[int, tuple[int, ...]]:
    """Possible values of each S_i, from iterating the containment condition
    S_i + 2 inside R_i union (S_j + 1) downward from R.

    A value in S_i is supported by a chain of neighbors ending in R, and no
    chain is longer than the total multiplicity, so iterating that many times
    is exhaustive.
    """
    nodes = [i for i in d.nodes if m[i - 1] > 0]
    total = sum(m)
    v: dict[int, set[int]] = {i: {c - 2 for c in r.get(i)} for i in nodes}
    for _ in range(total):
        changed = False
        for i in nodes:
            add = set()
            for j in d.adjacent(i):
                if j in v:
                    add |= {x - 1 for x in v[j]}
            add |= {c - 2 for c in r.get(i)}
            if not add <= v[i]:
                v[i] |= add
                changed = True
        if not changed:
            break
    return {i: tuple(sorted(v[i], reverse=True)) for i in nodes}


def enumerate_candidates(d: DynkinDiagram, r: ParamSet, m: tuple[int, ...]):
    """All parity-valid S with |S_i| = m_i satisfying the containment condition
    at every node.

    The containment reads, per value k, S_i(k) <= R_i(k+2) + sum over
    neighbors j of S_j(k+1), so the search sweeps k downward choosing the
    level multiplicities within that bound; branches die as soon as a node's
    remaining demand cannot be supported below the current level.
    """
    nodes = [i for i in d.nodes if m[i - 1] > 0]
    if not nodes:
        yield {}
        return
    windows = candidate_values(d, r, m)
    if any(len(windows[i]) == 0 for i in nodes):
        return
    kmax = max(w[0] for w in windows.values())
    kbot = {i: windows[i][-1] for i in nodes}
    kmin = min(kbot.values())
    need = {i: m[i - 1] for i in nodes}
    rcount = {i: {} for i in d.nodes}
    for i, values in r.items():
        for c in values:
            rcount[i][c] = rcount[i].get(c, 0) + 1

    mult: dict[tuple[int, int], int] = {}
    used = {i: 0 for i in nodes}

    def rec(k: int):
        if all(used[i] == need[i] for i in nodes):
            s: MultisetMap = {}
            for (i, kk), v in mult.items():
                if v:
                    s.setdefault(i, []).extend([kk] * v)
            yield {i: mset(vals) for i, vals in s.items()}
            return
        if k < kmin:
            return
        if any(used[i] < need[i] and k < kbot[i] for i in nodes):
            return
        choices = []
        for i in nodes:
            cap = rcount[i].get(k + 2, 0)
            cap += sum(mult.get((j, k + 1), 0) for j in d.adjacent(i))
            cap = min(cap, need[i] - used[i])
            choices.append(range(cap + 1))
        for combo in itertools.product(*choices):
            for i, v in zip(nodes, combo):
                if v:
                    mult[(i, k)] = v
                    used[i] += v
            yield from rec(k - 1)
            for i, v in zip(nodes, combo):
                if v:
                    del mult[(i, k)]
                    used[i] -= v

    yield from rec(kmax)


def enumerate_by_regularity(
    d: DynkinDiagram, r: ParamSet, mu: WeightVec
) -> set[FrozenMsets]:
    """All S at weight mu with y_R * z_S^{-1} regular."""
    lam = r.weight
    m = weight_to_root(d, tuple(a - b for a, b in zip(lam, mu)))
    if any(x < 0 for x in m):
        return set()
    ctx = _context(d, r)
    out = set()
    for s in enumerate_candidates(d, r, m):
        if ctx.is_regular(s):
            out.add(freeze_msets(s))
    return out
