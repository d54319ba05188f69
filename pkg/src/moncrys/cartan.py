"""Simply-laced root data: ADE Dynkin diagrams, weight and root coordinates,
minuscule Weyl orbits with minimal words, and the Weyl dimension formula.

Weights are integer tuples in the fundamental-weight basis, roots are integer
tuples in the simple-root basis.  Nodes are numbered 1..n (Bourbaki):

    A_n   1 - 2 - ... - n
    D_n   1 - 2 - ... - (n-2) < (n-1), n
    E_n   1 - 3 - 4 - 5 - 6 [- 7 [- 8]]   with 2 attached to 4
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotInRootLattice, NotMinuscule, UnknownDiagram

WeightVec = tuple[int, ...]
RootVec = tuple[int, ...]

RANK_LIMITS = {"A": (1, 12), "D": (4, 8), "E": (6, 8)}


@dataclass(frozen=True)
class DynkinDiagram:
    """An ADE diagram with a fixed 2-coloring of its nodes.

    The canonical coloring gives node i the parity of its graph distance from
    node 1; ``flip`` inverts it globally (shifting all monomial indices by 1).
    """

    kind: str
    n: int
    neighbors: tuple[tuple[int, ...], ...]
    parity: tuple[int, ...]
    flip: bool = False

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    def adjacent(self, i: int) -> tuple[int, ...]:
        return self.neighbors[i - 1]

    def parity_of(self, i: int) -> int:
        return self.parity[i - 1]

    def cartan(self, i: int, j: int) -> int:
        if i == j:
            return 2
        return -1 if j in self.neighbors[i - 1] else 0

    def cartan_column(self, j: int) -> WeightVec:
        """The simple root alpha_j written in the fundamental-weight basis."""
        return tuple(self.cartan(i, j) for i in self.nodes)

    def minuscule_nodes(self) -> tuple[int, ...]:
        if self.kind == "A":
            return tuple(self.nodes)
        if self.kind == "D":
            return (1, self.n - 1, self.n)
        if self.kind == "E" and self.n == 6:
            return (1, 6)
        if self.kind == "E" and self.n == 7:
            return (7,)
        return ()

    def __str__(self) -> str:
        return f"{self.kind}{self.n}" + ("!" if self.flip else "")


def _edges(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "A":
        return [(i, i + 1) for i in range(1, n)]
    if kind == "D":
        chain = [(i, i + 1) for i in range(1, n - 2)]
        return chain + [(n - 2, n - 1), (n - 2, n)]
    # E6/E7/E8: chain 1-3-4-...-n plus the branch 2-4
    chain = [(1, 3)] + [(i, i + 1) for i in range(3, n)]
    return chain + [(2, 4)]


def build_diagram(name: str, parity_flip: bool = False) -> DynkinDiagram:
    """Build a diagram from a name like "A3", "D4", "E6"."""
    name = name.strip().upper()
    if len(name) < 2 or name[0] not in RANK_LIMITS:
        raise UnknownDiagram(f"unknown diagram name {name!r}")
    try:
        n = int(name[1:])
    except ValueError:
        raise UnknownDiagram(f"unknown diagram name {name!r}") from None
    lo, hi = RANK_LIMITS[name[0]]
    if not lo <= n <= hi:
        raise UnknownDiagram(f"rank of {name!r} out of supported range [{lo}, {hi}]")

    kind = name[0]
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in _edges(kind, n):
        adj[a - 1].append(b)
        adj[b - 1].append(a)
    neighbors = tuple(tuple(sorted(v)) for v in adj)

    # proper 2-coloring by BFS distance from node 1
    dist = {1: 0}
    queue = deque([1])
    while queue:
        v = queue.popleft()
        for w in neighbors[v - 1]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    parity = tuple((dist[i] + (1 if parity_flip else 0)) % 2 for i in range(1, n + 1))
    return DynkinDiagram(kind, n, neighbors, parity, parity_flip)


def diagram_names() -> list[str]:
    names = [f"A{n}" for n in range(1, 13)]
    names += [f"D{n}" for n in range(4, 9)]
    names += ["E6", "E7", "E8"]
    return names


# --- coordinate conversions -------------------------------------------------

def root_to_weight(d: DynkinDiagram, beta: RootVec) -> WeightVec:
    """Convert simple-root coordinates to fundamental-weight coordinates (C*m)."""
    return tuple(sum(d.cartan(i, j) * beta[j - 1] for j in d.nodes) for i in d.nodes)


def weight_to_root_exact(d: DynkinDiagram, v) -> tuple[Fraction, ...]:
    """Exact rational solution m of C*m = v (Gaussian elimination over Q)."""
    n = d.n
    rows = [[Fraction(d.cartan(i, j)) for j in d.nodes] + [Fraction(v[i - 1])]
            for i in d.nodes]
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return tuple(rows[i][n] for i in range(n))


def weight_to_root(d: DynkinDiagram, v: WeightVec) -> RootVec:
    """Solve C*m = v exactly; raises NotInRootLattice if m is not integral."""
    sol = weight_to_root_exact(d, v)
    if any(x.denominator != 1 for x in sol):
        raise NotInRootLattice(f"{v} is not in the root lattice of {d}")
    return tuple(int(x) for x in sol)


def height(d: DynkinDiagram, beta: RootVec) -> int:
    """Sum of simple-root coefficients."""
    return sum(beta)


def signed_height(d: DynkinDiagram, beta: RootVec) -> int:
    """Height of beta if positive, of -beta if negative."""
    if all(x >= 0 for x in beta):
        return sum(beta)
    if all(x <= 0 for x in beta):
        return -sum(beta)
    raise ValueError(f"{beta} is neither positive nor negative")


def reflect_weight(d: DynkinDiagram, p: int, v: WeightVec) -> WeightVec:
    """s_p acting on fundamental-weight coordinates."""
    c = v[p - 1]
    if c == 0:
        return v
    col = d.cartan_column(p)
    return tuple(x - c * y for x, y in zip(v, col))


def reflect_root(d: DynkinDiagram, p: int, beta: RootVec) -> RootVec:
    """s_p acting on simple-root coordinates."""
    c = sum(d.cartan(p, j) * beta[j - 1] for j in d.nodes)
    if c == 0:
        return beta
    out = list(beta)
    out[p - 1] -= c
    return tuple(out)


def apply_word_weight(d: DynkinDiagram, word: tuple[int, ...], v: WeightVec) -> WeightVec:
    """Apply w = s_{word[0]} ... s_{word[-1]} to v (rightmost factor first)."""
    for p in reversed(word):
        v = reflect_weight(d, p, v)
    return v


def apply_word_inverse_root(d: DynkinDiagram, word: tuple[int, ...], beta: RootVec) -> RootVec:
    """Apply w^{-1} to beta, for w = s_{word[0]} ... s_{word[-1]}."""
    for p in word:
        beta = reflect_root(d, p, beta)
    return beta


def fundamental_weight(d: DynkinDiagram, i: int) -> WeightVec:
    return tuple(1 if j == i else 0 for j in d.nodes)


# --- minuscule orbits ---------------------------------------------------------

@dataclass(frozen=True)
class OrbitElement:
    """A weight gamma = w * varpi_node together with a minimal word for w.

    The word (p_1, ..., p_m) denotes w = s_{p_1} ... s_{p_m}; the rightmost
    reflection acts first.
    """

    node: int
    gamma: WeightVec
    word: tuple[int, ...]


def minuscule_orbit(d: DynkinDiagram, i: int) -> list[OrbitElement]:
    """BFS over W*varpi_i, recording the first (hence minimal) word per weight.

    From gamma, the reflection s_p moves to gamma - alpha_p exactly when the
    p-th coefficient of gamma is 1.  Ties are broken by scanning p ascending,
    so the recorded words are deterministic.
    """
    if i not in d.minuscule_nodes():
        raise NotMinuscule(f"varpi_{i} is not minuscule for {d}")
    start = fundamental_weight(d, i)
    out = [OrbitElement(i, start, ())]
    seen = {start: ()}
    queue = deque(out)
    while queue:
        g = queue.popleft()
        for p in d.nodes:
            if g.gamma[p - 1] == 1:
                nxt = reflect_weight(d, p, g.gamma)
                if nxt not in seen:
                    word = (p,) + g.word
                    seen[nxt] = word
                    el = OrbitElement(i, nxt, word)
                    out.append(el)
                    queue.append(el)
    return out


def chi(d: DynkinDiagram, g: OrbitElement) -> RootVec:
    """w*rho - rho in simple-root coordinates, for the element's minimal word."""
    rho = tuple(1 for _ in d.nodes)
    diff = tuple(a - b for a, b in zip(apply_word_weight(d, g.word, rho), rho))
    return weight_to_root(d, diff)


# --- positive roots and the dimension formula --------------------------------

@lru_cache(maxsize=None)
def positive_roots(d: DynkinDiagram) -> tuple[RootVec, ...]:
    """All positive roots in simple-root coordinates, via reflection closure."""
    simple = [tuple(1 if j == i else 0 for j in d.nodes) for i in d.nodes]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for p in d.nodes:
            img = reflect_root(d, p, beta)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    pos = [b for b in seen if all(x >= 0 for x in b)]
    return tuple(sorted(pos))


def weyl_dim(d: DynkinDiagram, lam: WeightVec) -> int:
    """dim V(lam) by the Weyl dimension formula, exact integer arithmetic."""
    num = Fraction(1)
    for beta in positive_roots(d):
        top = sum(c * (l + 1) for c, l in zip(beta, lam))
        bottom = sum(beta)
        num *= Fraction(top, bottom)
    if num.denominator != 1:
        raise ArithmeticError(f"Weyl dimension of {lam} is not integral")
    return int(num)
