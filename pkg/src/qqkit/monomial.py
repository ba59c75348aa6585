"""Laurent monomials over named generators.

A monomial is a finite map generator-name -> nonzero integer exponent.
Generators are plain strings: the deformation parameters "q1", "q2", the
mass "mu", per-node counting parameters "qfrak(i)", weight parameters
"x(i,a)", and anything else callers introduce (e.g. "t" for numeric
resonance checks).  The canonical generator order is
q1 < q2 < mu < qfrak(...) < x(...) < other, which fixes hashing, printing
and the orientation of binomial factors.
"""

from __future__ import annotations

from typing import Iterable, Mapping


def _gen_key(name: str):
    if name == "q1":
        return (0, "", 0)
    if name == "q2":
        return (1, "", 0)
    if name == "mu":
        return (2, "", 0)
    if name == "qfrak":
        return (3, "", 0)
    if name.startswith("qfrak(") and name.endswith(")"):
        return (3, name[6:-1], 1)
    if name.startswith("x(") and name.endswith(")"):
        body = name[2:-1]
        node, _, alpha = body.partition(",")
        try:
            a = int(alpha)
        except ValueError:
            a = 0
        return (4, node, a)
    return (5, name, 0)


class Monomial:
    """Immutable Laurent monomial; exponent-zero generators are never stored."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exps: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        merged: dict[str, int] = {}
        for g, e in items:
            if e:
                merged[g] = merged.get(g, 0) + e
                if merged[g] == 0:
                    del merged[g]
        self._exps = tuple(sorted(merged.items(), key=lambda kv: _gen_key(kv[0])))
        self._hash = hash(self._exps)

    @staticmethod
    def unit() -> "Monomial":
        return _UNIT

    @staticmethod
    def gen(name: str, exp: int = 1) -> "Monomial":
        return Monomial(((name, exp),))

    @property
    def exps(self) -> tuple[tuple[str, int], ...]:
        return self._exps

    def exponent(self, name: str) -> int:
        for g, e in self._exps:
            if g == name:
                return e
        return 0

    def gens(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self._exps)

    @property
    def is_unit(self) -> bool:
        return not self._exps

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not self._exps:
            return other
        if not other._exps:
            return self
        return Monomial(self._exps + other._exps)

    def __pow__(self, n: int) -> "Monomial":
        if n == 1:
            return self
        return Monomial(tuple((g, e * n) for g, e in self._exps))

    def inverse(self) -> "Monomial":
        return self ** -1

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def substitute(self, sigma: Mapping[str, "Monomial"]) -> "Monomial":
        """Replace each generator in sigma by its image monomial."""
        if not any(g in sigma for g, _ in self._exps):
            return self
        out: list[tuple[str, int]] = []
        for g, e in self._exps:
            if g in sigma:
                out.extend((h, k * e) for h, k in sigma[g]._exps)
            else:
                out.append((g, e))
        return Monomial(out)

    def without(self, name: str) -> "Monomial":
        """The monomial with one generator set to 1 (exponent dropped)."""
        if self.exponent(name) == 0:
            return self
        return Monomial(tuple((g, e) for g, e in self._exps if g != name))

    def sort_key(self):
        return tuple((_gen_key(g), e) for g, e in self._exps)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        if not self._exps:
            return "1"
        parts = []
        for g, e in self._exps:
            parts.append(g if e == 1 else f"{g}^{e}")
        return "*".join(parts)

    def to_json(self) -> dict:
        return {g: e for g, e in self._exps}

    @staticmethod
    def from_json(data: Mapping[str, int]) -> "Monomial":
        return Monomial({g: int(e) for g, e in data.items()})


_UNIT = Monomial()

Q1 = Monomial.gen("q1")
Q2 = Monomial.gen("q2")
MU = Monomial.gen("mu")
Q = Q1 * Q2
Q3 = MU
Q4 = MU.inverse() * Q


def xparam(node: str, alpha: int) -> Monomial:
    return Monomial.gen(f"x({node},{alpha})")


def qfrak(node: str) -> Monomial:
    return Monomial.gen(f"qfrak({node})")


def parse_monomial(text: str, names: Mapping[str, Monomial] | None = None) -> Monomial:
    """Parse compact strings like ``"x1*q1^-2*q2"``.

    ``q`` expands to q1*q2; ``q3``/``q4`` to the mass aliases; other names
    resolve through ``names`` before falling back to raw generators.
    """
    builtin = {"q": Q, "q1": Q1, "q2": Q2, "q3": Q3, "q4": Q4, "mu": MU}
    out = Monomial.unit()
    text = text.strip()
    if text in ("", "1"):
        return out
    for token in text.split("*"):
        token = token.strip()
        name, _, power = token.partition("^")
        e = int(power) if power else 1
        if names and name in names:
            base = names[name]
        elif name in builtin:
            base = builtin[name]
        else:
            base = Monomial.gen(name)
        out = out * base**e
    return out
