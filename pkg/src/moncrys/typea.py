"""The type-A flag model: n-step multiset flags in R with signature-rule
operators, the explicit isomorphism with B(N*varpi_1, R), and the embedding
of B(varpi_i, 0) into a product of single-column crystals B(varpi_1, c).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cartan import build_diagram
from .crystal import fundamental_shifted, product_crystal
from .monomial import (
    Monomial,
    Multiset,
    MultisetMap,
    e_tilde,
    f_tilde,
    mset,
    mset_shift,
    mset_subtract,
    param_set,
    y_param,
    y_var,
    z_of_msets,
)


@dataclass(frozen=True)
class Flag:
    """An n-step flag empty = V_0 <= V_1 <= ... <= V_n = R of multisets.

    Stored as a monotone multiplicity table: ``table[j][i]`` is the
    multiplicity of ``values[j]`` in V_i, nondecreasing in i.
    """

    values: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.table[0]) - 1 if self.table else 1

    def multiset(self, i: int) -> Multiset:
        out = []
        for j, c in enumerate(self.values):
            out.extend([c] * self.table[j][i])
        return mset(out)

    def __str__(self) -> str:
        steps = ["{" + ",".join(map(str, self.multiset(i))) + "}" for i in range(self.n + 1)]
        return " <= ".join(steps)


def flag_from_multisets(steps: list[Multiset]) -> Flag:
    values = tuple(sorted(set(steps[-1])))
    table = []
    for c in values:
        row = tuple(step.count(c) for step in steps)
        if any(a > b for a, b in zip(row, row[1:])):
            raise ValueError("steps are not nested")
        table.append(row)
    if steps[0]:
        raise ValueError("V_0 must be empty")
    return Flag(values, tuple(table))


def all_flags(n: int, r: Multiset) -> list[Flag]:
    """Every n-step flag with top multiset r."""
    values = tuple(sorted(set(r)))
    chains_per_value = []
    for c in values:
        t = r.count(c)
        chains = []
        for comp in _compositions(t, n):
            row = [0]
            for x in comp:
                row.append(row[-1] + x)
            chains.append(tuple(row))
        chains_per_value.append(chains)
    out = []
    for rows in itertools.product(*chains_per_value):
        out.append(Flag(values, tuple(rows)))
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _signature(f: Flag, i: int) -> tuple[list[int], list[int]]:
    """Reduced i-signature: blocks of minus then plus signs per value, with
    adjacent plus-minus pairs cancelled.  Returns (kept minus block indices in
    order, surviving plus block indices as a stack)."""
    minus_keep: list[int] = []
    plus_stack: list[int] = []
    for j in range(len(f.values)):
        minuses = f.table[j][i + 1] - f.table[j][i]
        pluses = f.table[j][i] - f.table[j][i - 1]
        for _ in range(minuses):
            if plus_stack:
                plus_stack.pop()
            else:
                minus_keep.append(j)
        plus_stack.extend([j] * pluses)
    return minus_keep, plus_stack


def _bump(f: Flag, i: int, j: int, delta: int) -> Flag:
    table = [list(row) for row in f.table]
    table[j][i] += delta
    return Flag(f.values, tuple(tuple(row) for row in table))


def flag_e(f: Flag, i: int) -> Flag | None:
    """Raising operator: add the value of the rightmost uncancelled minus to V_i."""
    minus_keep, _ = _signature(f, i)
    if not minus_keep:
        return None
    return _bump(f, i, minus_keep[-1], +1)


def flag_f(f: Flag, i: int) -> Flag | None:
    """Lowering operator: remove the value of the leftmost uncancelled plus from V_i."""
    _, plus_stack = _signature(f, i)
    if not plus_stack:
        return None
    return _bump(f, i, plus_stack[0], -1)


def flag_weight(f: Flag) -> tuple[int, ...]:
    """Weight in fundamental-weight coordinates of the rank n-1 diagram."""
    sizes = [len(f.multiset(i)) for i in range(f.n + 1)]
    return tuple(2 * sizes[i] - sizes[i - 1] - sizes[i + 1] for i in range(1, f.n))


def flag_to_monomial(f: Flag) -> Monomial:
    """The element y_R * z_S^{-1} with S_i = (R minus V_i) - (i+1), R at node 1."""
    n = f.n
    d = build_diagram(f"A{n - 1}")
    r_mset = f.multiset(n)
    s: MultisetMap = {}
    for i in range(1, n):
        diff = mset_subtract(r_mset, f.multiset(i))
        if diff:
            s[i] = mset_shift(diff, -(i + 1))
    r = param_set(d, {1: r_mset})
    return y_param(r) * z_of_msets(d, s).inverse()


def verify_flag_isomorphism(n: int, r: Multiset) -> bool:
    """Check that flag_to_monomial is a bijection F_n(R) -> B(N*varpi_1, R)
    intertwining every raising and lowering operator and preserving weights."""
    r = mset(r)
    d = build_diagram(f"A{n - 1}")
    flags = all_flags(n, r)
    crystal = product_crystal(d, param_set(d, {1: r}))
    image = {}
    for f in flags:
        p = flag_to_monomial(f)
        if p in image or p not in crystal:
            return False
        image[p] = f
    if len(image) != len(crystal):
        return False
    from .monomial import weight

    for f in flags:
        p = flag_to_monomial(f)
        if flag_weight(f) != weight(d, p):
            return False
        for i in range(1, n):
            fe = flag_e(f, i)
            pe = e_tilde(d, p, i)
            if (fe is None) != (pe is None):
                return False
            if fe is not None and flag_to_monomial(fe) != pe:
                return False
            ff = flag_f(f, i)
            pf = f_tilde(d, p, i)
            if (ff is None) != (pf is None):
                return False
            if ff is not None and flag_to_monomial(ff) != pf:
                return False
    return True


def column_element(n: int, a: tuple[int, ...]) -> Monomial:
    """The element of B(varpi_i, 0) indexed by 1 <= a_1 < ... < a_i <= n,
    as the explicit product of single-column factors (y_0 = y_n = 1)."""
    i = len(a)
    exps: dict[tuple[int, int], int] = {}
    for rpos, ar in enumerate(a, start=1):
        k = -i - ar + 2 * rpos
        if ar < n:
            exps[(ar, k)] = exps.get((ar, k), 0) + 1
        if ar - 1 >= 1:
            exps[(ar - 1, k - 1)] = exps.get((ar - 1, k - 1), 0) - 1
    return Monomial(exps)


def verify_column_embedding(n: int, i: int) -> bool:
    """Check B(varpi_i, 0) inside B(varpi_1, -i+1) ... B(varpi_1, i-1) and the
    explicit formula for each basis index set a_1 < ... < a_i."""
    d = build_diagram(f"A{n - 1}")
    lhs = set(fundamental_shifted(d, i, 0).elements)

    factors = []
    for rpos in range(1, i + 1):
        c = -i + 2 * rpos - 1
        factors.append(list(fundamental_shifted(d, 1, c).elements))
    products = {Monomial()}
    for factor in factors:
        products = {p * q for p in products for q in factor}
    if not lhs <= products:
        return False

    explicit = set()
    for a in itertools.combinations(range(1, n + 1), i):
        m1 = column_element(n, a)
        m2 = Monomial()
        for rpos, ar in enumerate(a, start=1):
            c = -i + 2 * rpos - 1
            p = y_var(1, c)
            for step in range(1, ar):
                p = f_tilde(d, p, step)
                if p is None:
                    return False
            m2 = m2 * p
        if m1 != m2:
            return False
        explicit.add(m1)
    return explicit == lhs


def render_grid(d, r, s: MultisetMap) -> str:
    """ASCII picture of type-A monomial data: circles o at the R-points and
    bracketed multiplicities for the S-values, on the (node, k) grid."""
    r_map = r.as_map() if hasattr(r, "as_map") else dict(r)
    ks = [k for vals in r_map.values() for k in vals]
    ks += [k for vals in s.values() for k in vals]
    if not ks:
        return "(empty)"
    lo, hi = min(ks), max(ks)
    width = 6
    lines = []
    nodes = sorted(set(r_map) | set(s) | set(range(1, max(list(r_map) + list(s) + [1]) + 1)))
    header = "  k\\i " + "".join(str(i).center(width) for i in nodes)
    lines.append(header)
    for k in range(hi, lo - 1, -1):
        row = [str(k).rjust(5), " "]
        for i in nodes:
            cell = ""
            circles = list(r_map.get(i, ())).count(k)
            label = list(s.get(i, ())).count(k)
            if circles:
                cell += "o" * circles
            if label:
                cell += f"[{label}]"
            row.append(cell.center(width))
        lines.append("".join(row))
    return "\n".join(lines)
