"""Crystal generation: closures under the Kashiwara operators, fundamental
crystals B(varpi_i, c), product monomial crystals B(lambda, R), parameter
classification, and the explicit minuscule monomial formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .cartan import (
    DynkinDiagram,
    OrbitElement,
    RootVec,
    WeightVec,
    apply_word_inverse_root,
    build_diagram,
    chi,
    fundamental_weight,
    signed_height,
    weight_to_root,
    weight_to_root_exact,
)
from .errors import CapExceeded, NotAnElement, ParityViolation
from .monomial import (
    Monomial,
    ParamSet,
    decompose_S,
    e_tilde,
    eps_phi,
    f_tilde,
    weight,
    y_var,
)

DEFAULT_CAP = 2_000_000


class Crystal:
    """A finite set of monomials with i-labeled lowering edges.

    Elements are stored in sorted order; edges are (source index, node label,
    target index) triples recomputed from the operator rules.  Instances are
    immutable by convention.
    """

    def __init__(self, diagram: DynkinDiagram, elements):
        self.diagram = diagram
        self.elements: tuple[Monomial, ...] = tuple(sorted(set(elements)))
        self.index = {p: idx for idx, p in enumerate(self.elements)}
        edges = []
        closed = True
        highest = []
        for idx, p in enumerate(self.elements):
            top = True
            for i in diagram.nodes:
                eps, _, _, _ = eps_phi(p, i)
                if eps:
                    top = False
                    if e_tilde(diagram, p, i) not in self.index:
                        closed = False
                q = f_tilde(diagram, p, i)
                if q is not None:
                    if q in self.index:
                        edges.append((idx, i, self.index[q]))
                    else:
                        closed = False
            if top:
                highest.append(p)
        self.edges: tuple[tuple[int, int, int], ...] = tuple(edges)
        self.highest: tuple[Monomial, ...] = tuple(highest)
        self._closed = closed
        wi: dict[WeightVec, list[Monomial]] = {}
        for p in self.elements:
            wi.setdefault(weight(diagram, p), []).append(p)
        self.weight_index: dict[WeightVec, tuple[Monomial, ...]] = {
            w: tuple(v) for w, v in wi.items()
        }

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Monomial) -> bool:
        return p in self.index

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Crystal)
            and self.diagram == other.diagram
            and self.elements == other.elements
            and self.edges == other.edges
        )

    def is_closed(self) -> bool:
        return self._closed

    def weights(self) -> dict[WeightVec, int]:
        return {w: len(v) for w, v in self.weight_index.items()}

    def weight_space(self, mu: WeightVec) -> tuple[Monomial, ...]:
        return self.weight_index.get(tuple(mu), ())

    def component(self, p: Monomial) -> "Crystal":
        """The e/f-connected component containing p."""
        if p not in self.index:
            raise NotAnElement(f"{p} is not an element of this crystal")
        adj: dict[int, set[int]] = {}
        for a, _, b in self.edges:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        seen = {self.index[p]}
        stack = [self.index[p]]
        while stack:
            v = stack.pop()
            for w in adj.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return Crystal(self.diagram, (self.elements[v] for v in seen))

    def shifted(self, delta: int) -> "Crystal":
        return Crystal(self.diagram, (p.shift(delta) for p in self.elements))

    # --- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "kind": f"{self.diagram.kind}{self.diagram.n}",
            "parity_flip": self.diagram.flip,
            "elements": [p.to_json() for p in self.elements],
            "edges": [list(e) for e in self.edges],
            "weights": {
                ",".join(map(str, w)): [self.index[p] for p in v]
                for w, v in sorted(self.weight_index.items())
            },
        }

    @staticmethod
    def from_json(data: dict) -> "Crystal":
        d = build_diagram(data["kind"], data.get("parity_flip", False))
        crystal = Crystal(d, (Monomial.from_json(e) for e in data["elements"]))
        if sorted(tuple(e) for e in data["edges"]) != sorted(crystal.edges):
            raise ValueError("edge list in file is inconsistent with the elements")
        return crystal

    def to_dot(self) -> str:
        lines = ["digraph crystal {", "  rankdir=TB;"]
        for idx, p in enumerate(self.elements):
            lines.append(f'  n{idx} [label="{p}"];')
        for a, i, b in self.edges:
            lines.append(f'  n{a} -> n{b} [label="f_{i}"];')
        lines.append("}")
        return "\n".join(lines)


def generate_closure(d: DynkinDiagram, seeds, cap: int = DEFAULT_CAP) -> Crystal:
    """BFS closure of the seeds under all lowering and raising operators."""
    seen = set(seeds)
    frontier = sorted(seen)
    if len(seen) > cap:
        raise CapExceeded(f"closure exceeds cap {cap}")
    while frontier:
        new = set()
        for p in frontier:
            for i in d.nodes:
                for q in (f_tilde(d, p, i), e_tilde(d, p, i)):
                    if q is not None and q not in seen and q not in new:
                        new.add(q)
        if len(seen) + len(new) > cap:
            raise CapExceeded(f"closure exceeds cap {cap}")
        seen |= new
        frontier = sorted(new)
    return Crystal(d, seen)


@lru_cache(maxsize=None)
def _fundamental_base(d: DynkinDiagram, i: int) -> Crystal:
    c0 = d.parity_of(i)
    return generate_closure(d, {y_var(i, c0)})


@lru_cache(maxsize=None)
def fundamental(d: DynkinDiagram, i: int, c: int) -> Crystal:
    """B(varpi_i, c), generated once per node and translated to c."""
    if c % 2 != d.parity_of(i):
        raise ParityViolation(f"c={c} violates the parity of node {i} in {d}")
    base = _fundamental_base(d, i)
    c0 = d.parity_of(i)
    return base if c == c0 else base.shifted(c - c0)


@lru_cache(maxsize=None)
def fundamental_shifted(d: DynkinDiagram, i: int, c: int) -> Crystal:
    """B(varpi_i, c) for any integer c, including shifts that leave the
    parity-valid monomial crystal (used by opposite-parity conditions and by
    the single-column embedding)."""
    base = _fundamental_base(d, i)
    c0 = d.parity_of(i)
    return base if c == c0 else base.shifted(c - c0)


def product_crystal(d: DynkinDiagram, r: ParamSet, cap: int = DEFAULT_CAP) -> Crystal:
    """All products of one monomial from each factor B(varpi_i, c), c in R_i."""
    current = {Monomial()}
    for i, c in r.parameters():
        factor = fundamental(d, i, c)
        if len(current) * len(factor) > cap:
            raise CapExceeded(f"product enumeration exceeds cap {cap}")
        current = {p * q for p in current for q in factor.elements}
    return Crystal(d, current)


@dataclass(frozen=True)
class Classification:
    well_spaced: bool
    generic: bool
    maximally_singular: bool
    gap_bound: int
    crystal_size: int
    tensor_size: int
    irreducible_size: int


def variable_span(d: DynkinDiagram, i: int) -> int:
    """Width of the variable-index range used by B(varpi_i, c)."""
    base = _fundamental_base(d, i)
    c0 = d.parity_of(i)
    lo = min(k for p in base.elements for (_, k), _ in p.items)
    return c0 - lo


def well_spaced_bound(d: DynkinDiagram, r: ParamSet) -> int:
    """Gap bound M for the well-spaced test: the stricter of the measured
    variable span and twice the height of varpi_i, over nodes carrying
    parameters."""
    nodes = [i for i, _ in r.items()]
    if not nodes:
        return 0
    spans = max(variable_span(d, i) for i in nodes)
    heights = 0
    for i in nodes:
        coords = weight_to_root_exact(d, fundamental_weight(d, i))
        heights = max(heights, math.ceil(2 * sum(coords)))
    return max(spans, heights)


def classify_params(d: DynkinDiagram, r: ParamSet, cap: int = DEFAULT_CAP) -> Classification:
    """Decide whether R is well-spaced, generic, and/or maximally singular."""
    crystal = product_crystal(d, r, cap)
    tensor = 1
    for i, c in r.parameters():
        tensor *= len(fundamental(d, i, c))
    from .monomial import y_param

    component = crystal.component(y_param(r)) if len(crystal) else crystal
    irreducible = len(component)

    m = well_spaced_bound(d, r)
    values = sorted(c for _, c in r.parameters())
    spaced = all(b - a > m for a, b in zip(values, values[1:]))
    return Classification(
        well_spaced=spaced,
        generic=len(crystal) == tensor,
        maximally_singular=len(crystal) == irreducible,
        gap_bound=m,
        crystal_size=len(crystal),
        tensor_size=tensor,
        irreducible_size=irreducible,
    )


def minuscule_monomial(d: DynkinDiagram, g: OrbitElement, c: int) -> Monomial:
    """The unique weight-gamma monomial of B(varpi_i, c) for minuscule varpi_i.

    y_{gamma,c} = prod over j of y(j, c - h(+-w^{-1}alpha_j) + <gamma,alpha_j>)
    raised to <gamma,alpha_j>, with w the minimal word of the orbit element.
    """
    if c % 2 != d.parity_of(g.node):
        raise ParityViolation(f"c={c} violates the parity of node {g.node} in {d}")
    exps = {}
    for j in d.nodes:
        pairing = g.gamma[j - 1]
        if pairing == 0:
            continue
        alpha_j: RootVec = tuple(1 if a == j else 0 for a in d.nodes)
        beta = apply_word_inverse_root(d, g.word, alpha_j)
        k = c - signed_height(d, beta) + pairing
        exps[(j, k)] = pairing
    return Monomial(exps)


def tau_check(d: DynkinDiagram, g: OrbitElement, c: int) -> bool:
    """Verify 2*tau(gamma) = (c-1)(varpi_i - gamma) + chi(gamma) in root coordinates,
    where tau is read off the S-decomposition of y_{gamma,c}."""
    from .monomial import param_set

    p = minuscule_monomial(d, g, c)
    r = param_set(d, {g.node: [c]})
    s = decompose_S(d, r, p)
    two_tau = [0] * d.n
    for j, values in s.items():
        two_tau[j - 1] += sum(values)

    diff = tuple(a - b for a, b in zip(fundamental_weight(d, g.node), g.gamma))
    diff_root = weight_to_root(d, diff)
    rhs = [(c - 1) * x + y for x, y in zip(diff_root, chi(d, g))]
    return two_tau == rhs
