"""Weight-parameter specialization, classical limits, and factorization checks.

Higgsing substitutes geometric sequences into the weight parameters; terms
whose coefficients hit an S-zero drop out, leaving the irreducible
character.  Classical limits send q1 or q2 to 1, merge colliding
monomials, and must produce integer coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .coefficient import Coefficient, s_function
from .engine import Character, WeightConfig, YMonomial
from .errors import ValidationError, YCollision
from .monomial import Monomial, Q1, Q2, xparam
from .quiver import Quiver, builtin_quiver


@dataclass(frozen=True)
class KRSpec:
    """Geometric weight-parameter ladder (x, x s, ..., x s^{k-1}), s = q_m^{d}."""

    node: str
    k: int
    m: int  # 1 or 2: which deformation parameter shifts the ladder
    base: Monomial

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("ladder length must be positive")
        if self.m not in (1, 2):
            raise ValidationError("shift direction must be 1 or 2")


def kr_params(spec: KRSpec, Q_: Quiver) -> list[Monomial]:
    if spec.node not in Q_.nodes:
        raise ValidationError(f"unknown node {spec.node!r}")
    shift = (Q1 if spec.m == 1 else Q2) ** Q_.d[spec.node]
    return [spec.base * shift**t for t in range(spec.k)]


def kr_sigma(Q_: Quiver, node: str, k: int, m: int = 1) -> dict[str, Monomial]:
    """Substitution sending x(node,t) -> x(node,1) q_m^{d (t-1)}."""
    if k < 2:
        return {}
    ladder = kr_params(KRSpec(node, k, m, xparam(node, 1)), Q_)
    return {f"x({node},{t})": ladder[t - 1] for t in range(2, k + 1)}


def higgs(ch: Character, sigma: Mapping[str, Monomial]) -> Character:
    """Specialize weight parameters; S-zero terms drop, collisions are errors."""
    terms: dict[YMonomial, Coefficient] = {}
    dropped: list[YMonomial] = []
    for ym, coeff in ch.terms.items():
        c2 = coeff.specialize(sigma)
        if c2.is_zero:
            dropped.append(ym)
            continue
        ym2 = ym.substitute(sigma)
        if ym2 in terms:
            raise YCollision(f"terms collide at {ym2!r} under {sigma!r}")
        terms[ym2] = c2
    survivors = set(terms)
    edges = []
    for src, dst, (i, x) in ch.edges:
        s2, d2 = src.substitute(sigma), dst.substitute(sigma)
        if s2 in survivors and d2 in survivors:
            edges.append((s2, d2, (i, x.substitute(sigma))))
    meta = dict(ch.meta)
    meta["higgs"] = {g: repr(m) for g, m in sigma.items()}
    meta["dropped"] = tuple(dropped)
    return Character(ch.quiver, ch.wc, terms, tuple(edges), meta)


@dataclass
class ClassicalCharacter:
    """Y-monomial map with integer coefficients after q1 -> 1 or q2 -> 1."""

    terms: dict[YMonomial, int]
    which: str

    def sorted_terms(self) -> list[tuple[YMonomial, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClassicalCharacter)
            and self.which == other.which
            and self.terms == other.terms
        )


def classical_limit(ch: Character, which: str) -> ClassicalCharacter:
    """Send q1 or q2 to 1 in arguments and coefficients, merging collisions."""
    if which not in ("q1", "q2"):
        raise ValidationError("limit generator must be q1 or q2")
    merged: dict[YMonomial, int] = {}
    for ym, coeff in ch.terms.items():
        n = coeff.limit_at_unity(which).as_integer()
        if n == 0:
            continue
        ym2 = YMonomial(tuple((i, a.without(which), e) for i, a, e in ym.entries))
        s = merged.get(ym2, 0) + n
        if s:
            merged[ym2] = s
        else:
            del merged[ym2]
    return ClassicalCharacter(merged, which)


def classical_product(factors: Iterable[ClassicalCharacter]) -> dict[YMonomial, int]:
    out: dict[YMonomial, int] = {YMonomial.unit(): 1}
    for f in factors:
        nxt: dict[YMonomial, int] = {}
        for ym1, c1 in out.items():
            for ym2, c2 in f.terms.items():
                ym = ym1 * ym2
                s = nxt.get(ym, 0) + c1 * c2
                if s:
                    nxt[ym] = s
                else:
                    nxt.pop(ym, None)
        out = nxt
    return out


def factorize_check(cc: ClassicalCharacter, factors: list[ClassicalCharacter]) -> bool:
    """True iff the formal product of the factors equals cc exactly."""
    return classical_product(factors) == cc.terms


def kr_closed_form_A1(w: int, base: Monomial | None = None) -> Character:
    """The w+1 term ladder character with coefficients prod S(q1^{1-i-j})."""
    if w < 0:
        raise ValidationError("weight must be nonnegative")
    x = base if base is not None else xparam("1", 1)
    Q_ = builtin_quiver("A1")
    terms: dict[YMonomial, Coefficient] = {}
    for v in range(w + 1):
        coeff = Coefficient.one()
        for i in range(1, w - v + 1):
            for j in range(1, v + 1):
                coeff = coeff * s_function(Q1 ** (1 - i - j))
        entries = [("1", x * Q1 ** (i - 1), 1) for i in range(1, w - v + 1)]
        entries += [("1", x * Q1**j * Q2, -1) for j in range(w - v + 1, w + 1)]
        terms[YMonomial(tuple(entries))] = coeff
    wc = WeightConfig((("1", 1, x),)) if w else WeightConfig(())
    return Character(Q_, wc, terms, (), meta={"closed_form": "A1-ladder", "w": w})
