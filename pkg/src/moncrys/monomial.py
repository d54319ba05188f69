"""Laurent monomials in the variables y(i,k), multiset algebra, the Kashiwara
operators, and the decomposition p = y_R * z_S^{-1} with its T-multisets.

Multisets of integers are stored as sorted tuples; tuples of multisets are
plain dicts node -> multiset (with empty entries omitted), frozen to a sorted
tuple of pairs when they need to be hashable.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .cartan import DynkinDiagram, WeightVec, weight_to_root
from .errors import (
    ContainmentViolation,
    NotDecomposable,
    NotInRootLattice,
    ParityViolation,
)

Multiset = tuple[int, ...]
MultisetMap = dict[int, Multiset]
FrozenMsets = tuple[tuple[int, Multiset], ...]


def mset(values) -> Multiset:
    return tuple(sorted(values))


def mset_count(s: Multiset, k: int) -> int:
    return s.count(k)


def mset_shift(s: Multiset, delta: int) -> Multiset:
    return tuple(x + delta for x in s)


def mset_union(*parts) -> Multiset:
    out = []
    for p in parts:
        out.extend(p)
    return mset(out)


def mset_contains(big: Multiset, small: Multiset) -> bool:
    return not Counter(small) - Counter(big)


def mset_subtract(big: Multiset, small: Multiset) -> Multiset:
    """Strict multiset difference; raises if small is not contained in big."""
    c = Counter(big)
    c.subtract(Counter(small))
    if any(v < 0 for v in c.values()):
        raise ContainmentViolation(f"{small} is not a multisubset of {big}")
    return mset(c.elements())


def freeze_msets(m: MultisetMap) -> FrozenMsets:
    return tuple(sorted((i, mset(s)) for i, s in m.items() if s))


def thaw_msets(frozen: FrozenMsets) -> MultisetMap:
    return {i: s for i, s in frozen}


def msets_shift(m: MultisetMap, delta: int) -> MultisetMap:
    return {i: mset_shift(s, delta) for i, s in m.items()}


class Monomial:
    """A monomial prod y(i,k)^{a_{i,k}} with a sparse integer exponent map.

    Zero exponents are never stored, so structural equality is semantic
    equality.  Instances are immutable and hashable.
    """

    __slots__ = ("_exps", "_items", "_hash")

    def __init__(self, exps=None):
        d = {}
        if exps:
            pairs = exps.items() if isinstance(exps, dict) else exps
            for (i, k), e in pairs:
                if e:
                    key = (int(i), int(k))
                    d[key] = d.get(key, 0) + int(e)
                    if d[key] == 0:
                        del d[key]
        object.__setattr__(self, "_exps", d)
        object.__setattr__(self, "_items", tuple(sorted(d.items())))
        object.__setattr__(self, "_hash", hash(self._items))

    @property
    def items(self) -> tuple[tuple[tuple[int, int], int], ...]:
        return self._items

    def exp(self, i: int, k: int) -> int:
        return self._exps.get((i, k), 0)

    def is_one(self) -> bool:
        return not self._exps

    def node_support(self, i: int) -> list[int]:
        return sorted(k for (j, k) in self._exps if j == i)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        d = dict(self._exps)
        for key, e in other._exps.items():
            d[key] = d.get(key, 0) + e
            if d[key] == 0:
                del d[key]
        return Monomial(d.items())

    def inverse(self) -> "Monomial":
        return Monomial(((key, -e) for key, e in self._exps.items()))

    def __pow__(self, n: int) -> "Monomial":
        if n == 0:
            return Monomial()
        return Monomial(((key, n * e) for key, e in self._exps.items()))

    def shift(self, delta: int) -> "Monomial":
        """Translate every index: y(i,k) -> y(i,k+delta)."""
        return Monomial((((i, k + delta), e) for (i, k), e in self._exps.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self._items < other._items

    def __str__(self) -> str:
        if not self._items:
            return "1"
        parts = []
        for (i, k), e in self._items:
            parts.append(f"y({i},{k})" + (f"^{e}" if e != 1 else ""))
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def to_json(self) -> list[list[int]]:
        return [[i, k, e] for (i, k), e in self._items]

    @staticmethod
    def from_json(data) -> "Monomial":
        return Monomial((((i, k), e) for i, k, e in data))


ONE = Monomial()


def y_var(i: int, k: int) -> Monomial:
    return Monomial({(i, k): 1})


@dataclass(frozen=True)
class ParamSet:
    """Per-node integer multisets R with the node's parity; weight lambda_i = |R_i|."""

    n: int
    entries: FrozenMsets

    def get(self, i: int) -> Multiset:
        for j, s in self.entries:
            if j == i:
                return s
        return ()

    def items(self) -> FrozenMsets:
        return self.entries

    @property
    def weight(self) -> WeightVec:
        lam = [0] * self.n
        for i, s in self.entries:
            lam[i - 1] = len(s)
        return tuple(lam)

    def total(self) -> int:
        return sum(len(s) for _, s in self.entries)

    def parameters(self) -> list[tuple[int, int]]:
        """All (node, value) pairs with multiplicity."""
        return [(i, c) for i, s in self.entries for c in s]

    def as_map(self) -> MultisetMap:
        return {i: s for i, s in self.entries}

    def __str__(self) -> str:
        return ";".join(f"{i}:{','.join(map(str, s))}" for i, s in self.entries)


def param_set(d: DynkinDiagram, mapping: dict[int, list[int] | Multiset]) -> ParamSet:
    """Validate a node -> values mapping into a ParamSet."""
    entries = []
    for i, values in sorted(mapping.items()):
        i = int(i)
        if not 1 <= i <= d.n:
            raise ValueError(f"node {i} out of range for {d}")
        vals = mset(int(v) for v in values)
        if not vals:
            continue
        for v in vals:
            if v % 2 != d.parity_of(i):
                raise ParityViolation(
                    f"value {v} at node {i} violates the parity class of {d}")
        entries.append((i, vals))
    return ParamSet(d.n, tuple(entries))


def check_parity(d: DynkinDiagram, p: Monomial) -> bool:
    return all(k % 2 == d.parity_of(i) for (i, k), _ in p.items)


def y_param(r: ParamSet) -> Monomial:
    """y_R = prod over parameters of y(i,c)."""
    return Monomial((((i, c), 1) for i, c in r.parameters()))


def z_factor(d: DynkinDiagram, i: int, k: int) -> Monomial:
    """z(i,k) = y(i,k) * y(i,k+2) / prod over neighbors j of y(j,k+1)."""
    if k % 2 != d.parity_of(i):
        raise ParityViolation(f"z({i},{k}) violates the parity class of {d}")
    exps = {(i, k): 1, (i, k + 2): 1}
    for j in d.adjacent(i):
        exps[(j, k + 1)] = -1
    return Monomial(exps)


def _z_factor_any(d: DynkinDiagram, i: int, k: int) -> Monomial:
    # parity-agnostic variant used by translated crystals
    exps = {(i, k): 1, (i, k + 2): 1}
    for j in d.adjacent(i):
        exps[(j, k + 1)] = -1
    return Monomial(exps)


def z_of_msets(d: DynkinDiagram, s: MultisetMap) -> Monomial:
    out = ONE
    for i, values in s.items():
        for k in values:
            out = out * _z_factor_any(d, i, k)
    return out


def weight(d: DynkinDiagram, p: Monomial) -> WeightVec:
    """wt(p): per-node sum of exponents, in fundamental-weight coordinates."""
    w = [0] * d.n
    for (i, _), e in p.items:
        w[i - 1] += e
    return tuple(w)


def eps_phi(p: Monomial, i: int) -> tuple[int, int, int | None, int | None]:
    """(eps_i, phi_i, k_eps, k_phi) for the Kashiwara operators at node i.

    eps_i is the max over k of -(sum of exponents a_{i,l} with l <= k), phi_i
    the max over k of the upper partial sums; both at least 0.  The extrema
    are attained at support indices, so only those are scanned.  k_eps is the
    smallest maximizer (when eps_i > 0), k_phi the largest (when phi_i > 0).
    """
    ks = p.node_support(i)
    if not ks:
        return 0, 0, None, None
    eps = 0
    k_eps = None
    running = 0
    for k in ks:
        running += p.exp(i, k)
        if -running > eps:
            eps = -running
            k_eps = k
    phi = 0
    k_phi = None
    running = 0
    for k in reversed(ks):
        running += p.exp(i, k)
        if running > phi:
            phi = running
            k_phi = k
    return eps, phi, k_eps, k_phi


def e_tilde(d: DynkinDiagram, p: Monomial, i: int) -> Monomial | None:
    """Raising operator: multiply by z(i,k) at the smallest maximizer of eps."""
    eps, _, k_eps, _ = eps_phi(p, i)
    if eps == 0:
        return None
    return _z_factor_any(d, i, k_eps) * p


def f_tilde(d: DynkinDiagram, p: Monomial, i: int) -> Monomial | None:
    """Lowering operator: multiply by z(i,k-2)^{-1} at the largest maximizer of phi."""
    _, phi, _, k_phi = eps_phi(p, i)
    if phi == 0:
        return None
    return _z_factor_any(d, i, k_phi - 2).inverse() * p


def is_highest(d: DynkinDiagram, p: Monomial) -> bool:
    return all(eps_phi(p, i)[0] == 0 for i in d.nodes)


def decompose_S(d: DynkinDiagram, r: ParamSet, p: Monomial) -> MultisetMap:
    """Recover the unique S with p = y_R * z_S^{-1}.

    Writing m = y_R * p^{-1} = z_S with exponents e_{i,k}, the multiplicities
    satisfy S_i(k) = e_{i,k} - S_i(k-2) + sum over neighbors j of S_j(k-1),
    which determines S scanning k upward from the bottom of the support.
    """
    m = y_param(r) * p.inverse()
    if m.is_one():
        return {}
    try:
        mvec = weight_to_root(d, weight(d, m))
    except NotInRootLattice:
        raise NotDecomposable(f"{p} is not an R-monomial datum") from None
    if any(x < 0 for x in mvec):
        raise NotDecomposable(f"{p} is not an R-monomial datum")
    total = sum(mvec)

    kmin = min(k for (_, k), _ in m.items)
    kmax = max(k for (_, k), _ in m.items)
    mult: dict[tuple[int, int], int] = {}
    placed = 0
    k = kmin
    last_nonzero = kmin - 3
    while k <= max(kmax, last_nonzero + 2):
        for i in d.nodes:
            val = m.exp(i, k) - mult.get((i, k - 2), 0)
            val += sum(mult.get((j, k - 1), 0) for j in d.adjacent(i))
            if val < 0:
                raise NotDecomposable(f"negative multiplicity at ({i},{k})")
            if val:
                mult[(i, k)] = val
                placed += val
                last_nonzero = k
                if placed > total:
                    raise NotDecomposable(f"{p} is not an R-monomial datum")
        k += 1

    s: MultisetMap = {}
    for (i, k), v in sorted(mult.items()):
        s.setdefault(i, [])
        s[i].extend([k] * v)
    s = {i: mset(vals) for i, vals in s.items()}
    if [len(s.get(i, ())) for i in d.nodes] != list(mvec) or z_of_msets(d, s) != m:
        raise NotDecomposable(f"{p} is not an R-monomial datum")
    return s


def t_multisets(d: DynkinDiagram, r: ParamSet, s: MultisetMap) -> MultisetMap:
    """T_i = (R_i u union over neighbors j of (S_j + 1)) minus (S_i + 2).

    The difference is strict multiset subtraction; a shortfall raises
    ContainmentViolation rather than being clamped.
    """
    t: MultisetMap = {}
    for i in d.nodes:
        avail = mset_union(r.get(i), *(mset_shift(s.get(j, ()), 1) for j in d.adjacent(i)))
        need = mset_shift(s.get(i, ()), 2)
        diff = mset_subtract(avail, need)
        if diff:
            t[i] = diff
    return t


def is_highest_weight(s: MultisetMap, t: MultisetMap) -> bool:
    """Counting criterion: every lower threshold of S_i is matched inside T_i.

    Equivalent to the existence of an injective weakly decreasing map
    S_i -> T_i for every node.
    """
    for i in set(s) | set(t):
        si = sorted(s.get(i, ()))
        ti = sorted(t.get(i, ()))
        if len(si) > len(ti):
            return False
        if any(tv > sv for sv, tv in zip(si, ti)):
            return False
    return True
