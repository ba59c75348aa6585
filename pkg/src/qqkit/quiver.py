"""Decorated quivers, the deformed Cartan matrix, and the reflection map.

Nodes carry a positive decoration d_i (relative root length); edges carry
an integer exponent c so the edge mass is mu^c.  Mass exponents must be
zero unless the quiver contains a directed cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Mapping

from .coefficient import Coefficient, s_function
from .errors import ValidationError
from .monomial import MU, Monomial, Q1, Q2, qfrak


class QuiverClass(Enum):
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class Quiver:
    nodes: tuple[str, ...]
    d: Mapping[str, int]
    edges: tuple[tuple[str, str, int], ...]
    name: str = ""

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise ValidationError("duplicate node ids")
        for i in self.nodes:
            if self.d.get(i, 0) < 1:
                raise ValidationError(f"decoration d[{i}] must be a positive integer")
        for a, b, _ in self.edges:
            if a not in self.nodes or b not in self.nodes:
                raise ValidationError(f"edge ({a},{b}) uses unknown nodes")
        if any(c != 0 for _, _, c in self.edges) and not self._has_cycle():
            raise ValidationError("mass exponents are only allowed on cyclic quivers")

    def _has_cycle(self) -> bool:
        adj: dict[str, list[str]] = {i: [] for i in self.nodes}
        for a, b, _ in self.edges:
            if a == b:
                return True
            adj[a].append(b)
        state: dict[str, int] = {}

        def visit(v: str) -> bool:
            state[v] = 1
            for w in adj[v]:
                if state.get(w) == 1 or (state.get(w) is None and visit(w)):
                    return True
            state[v] = 2
            return False

        return any(state.get(v) is None and visit(v) for v in self.nodes)

    def dij(self, i: str, j: str) -> int:
        return gcd(self.d[i], self.d[j])

    def loops_at(self, i: str) -> tuple[int, ...]:
        return tuple(c for a, b, c in self.edges if a == i and b == i)

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": i, "d": self.d[i]} for i in self.nodes],
            "edges": [{"from": a, "to": b, "mu": c} for a, b, c in self.edges],
        }

    @staticmethod
    def from_json(data: Mapping) -> "Quiver":
        nodes = tuple(str(n["id"]) for n in data["nodes"])
        d = {str(n["id"]): int(n.get("d", 1)) for n in data["nodes"]}
        edges = tuple(
            (str(e["from"]), str(e["to"]), int(e.get("mu", 0))) for e in data.get("edges", ())
        )
        return Quiver(nodes, d, edges, name=str(data.get("name", "")))


def builtin_quiver(name: str) -> Quiver:
    """Built-ins: A1, A2, BC2, A0hat, Arhat(r)."""
    if name == "A1":
        return Quiver(("1",), {"1": 1}, (), name="A1")
    if name == "A2":
        return Quiver(("1", "2"), {"1": 1, "2": 1}, (("1", "2", 0),), name="A2")
    if name == "BC2":
        return Quiver(("1", "2"), {"1": 2, "2": 1}, (("1", "2", 0),), name="BC2")
    if name == "A0hat":
        return Quiver(("0",), {"0": 1}, (("0", "0", 1),), name="A0hat")
    if name.startswith("Arhat(") and name.endswith(")"):
        r = int(name[6:-1])
        if r < 1:
            raise ValidationError("Arhat(r) needs r >= 1")
        nodes = tuple(str(i) for i in range(r))
        edges = tuple((str(i), str((i + 1) % r), 1) for i in range(r))
        return Quiver(nodes, {i: 1 for i in nodes}, edges, name=name)
    raise ValidationError(f"unknown builtin quiver {name!r}")


def cartan_matrix(Q_: Quiver) -> list[list[Coefficient]]:
    """The q1,q2-deformed Cartan matrix as general-form coefficients.

    Entry [j][i] is (1 + q1^{d_i} q2) delta_ij
    - sum_{e:i->j} sum_{r < d_i/d_ij} mu_e q1^{r d_ij}
    - sum_{e:j->i} sum_{r < d_i/d_ij} mu_e^{-1} q1^{(r+1) d_ij} q2.
    """
    n = len(Q_.nodes)
    idx = {v: k for k, v in enumerate(Q_.nodes)}
    polys = [[{} for _ in range(n)] for _ in range(n)]

    def bump(j: int, i: int, mono: Monomial, c: int):
        p = polys[j][i]
        s = p.get(mono, 0) + c
        if s:
            p[mono] = s
        else:
            p.pop(mono, None)

    for i in Q_.nodes:
        bump(idx[i], idx[i], Monomial.unit(), 1)
        bump(idx[i], idx[i], Q1 ** Q_.d[i] * Q2, 1)
    for a, b, c in Q_.edges:
        for i, j, sgn in ((a, b, +1), (b, a, -1)):
            dij = Q_.dij(i, j)
            for r in range(Q_.d[i] // dij):
                if sgn > 0:
                    bump(idx[j], idx[i], MU**c * Q1 ** (r * dij), -1)
                else:
                    bump(idx[j], idx[i], MU**-c * Q1 ** ((r + 1) * dij) * Q2, -1)
    out = []
    for j in range(n):
        row = []
        for i in range(n):
            p = polys[j][i]
            row.append(Coefficient.general(p, ()) if p else Coefficient.zero())
        out.append(row)
    return out


def classical_cartan(Q_: Quiver) -> list[list[int]]:
    """The Cartan matrix with every multiplicative variable set to 1."""
    mat = cartan_matrix(Q_)
    out = []
    for row in mat:
        r = []
        for c in row:
            if c.is_zero:
                r.append(0)
            else:
                num, den = c._general_parts()
                assert not den
                r.append(sum(num.values()))
        out.append(r)
    return out


def _int_det(m: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant."""
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


_CLASS_CACHE: dict[tuple, tuple[QuiverClass, int]] = {}


def classify(Q_: Quiver) -> tuple[QuiverClass, int]:
    """Classify by the sign of the classical Cartan determinant."""
    key = (Q_.nodes, tuple(sorted(Q_.d.items())), Q_.edges)
    cached = _CLASS_CACHE.get(key)
    if cached is not None:
        return cached
    det = _int_det(classical_cartan(Q_))
    if det > 0:
        out = (QuiverClass.FINITE, det)
    elif det == 0:
        out = (QuiverClass.AFFINE, det)
    else:
        out = (QuiverClass.INDEFINITE, det)
    _CLASS_CACHE[key] = out
    return out


def a_inverse_monomial(Q_: Quiver, i: str, x: Monomial):
    """Replacement for one numerator Y_{i,x} under the reflection at (i, x).

    Returns (entries, scalar): entries is the list of (node, argument,
    exponent) whose product replaces Y_{i,x}; the scalar collects the
    counting parameter (affine quivers) and the loop-edge S-correction.
    """
    entries: list[tuple[str, Monomial, int]] = [(i, x * Q1 ** Q_.d[i] * Q2, -1)]
    for a, b, c in Q_.edges:
        if a == i:
            dij = Q_.dij(i, b)
            for r in range(Q_.d[i] // dij):
                entries.append((b, MU**c * x * Q1 ** (r * dij), +1))
        if b == i:
            dij = Q_.dij(i, a)
            for r in range(Q_.d[i] // dij):
                entries.append((a, MU**-c * x * Q1 ** ((r + 1) * dij) * Q2, +1))
    scalar = Coefficient.one()
    for c in Q_.loops_at(i):
        scalar = scalar * s_function(MU**c)
    if classify(Q_)[0] is QuiverClass.AFFINE:
        scalar = scalar * Coefficient.from_monomial(qfrak(i))
    return entries, scalar
