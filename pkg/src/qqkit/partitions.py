"""Partition combinatorics and closed-form affine characters.

Boxes are addressed as s = (s1, s2) with s1 the column index (stepping by
q3 = mu) and s2 the row index (stepping by q4 = mu^{-1} q); the box lies
in the diagram when s1 <= lambda_{s2}.  Arm and leg are
a(s) = lambda_{s2} - s1 and l(s) = lambda^T_{s1} - s2, possibly negative
outside the diagram.

The fixed-point weight of a configuration is a product of S-values over
boxes; pairs of partitions contribute mixed arm/leg factors.  The closed
sum is cross-checked against the reflection engine, which forces the
weight of a diagram to be evaluated on its transpose (the boundary map
and the box weights use opposite reading conventions).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .coefficient import Coefficient, s_function
from .engine import Character, WeightConfig, YMonomial
from .errors import InvalidPit, ValidationError
from .monomial import Monomial, Q, Q1, Q3, Q4, qfrak
from .quiver import Quiver, QuiverClass, classify


class Partition:
    """Weakly decreasing tuple of positive parts."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(int(p) for p in parts if p)
        if any(p < 0 for p in ps) or any(ps[k] < ps[k + 1] for k in range(len(ps) - 1)):
            raise ValidationError(f"not a partition: {ps}")
        self.parts = ps

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, k: int) -> int:
        """The k-th part (1-indexed), zero beyond the diagram."""
        return self.parts[k - 1] if 1 <= k <= len(self.parts) else 0

    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def contains(self, row: int, col: int) -> bool:
        """Box membership in the (row, column) reading."""
        return self.part(row) >= col

    def boxes(self) -> Iterator[tuple[int, int]]:
        """All boxes as (s1, s2) = (column, row)."""
        for s2, p in enumerate(self.parts, start=1):
            for s1 in range(1, p + 1):
                yield (s1, s2)

    def addable(self) -> list[tuple[int, int]]:
        """Outer corners (column, row) where a box can be added."""
        out = []
        prev = None
        for k, p in enumerate(self.parts, start=1):
            if prev is None or p < prev:
                out.append((p + 1, k))
            prev = p
        out.append((1, len(self.parts) + 1))
        return out

    def removable(self) -> list[tuple[int, int]]:
        """Inner corners (column, row) where a box can be removed."""
        out = []
        for k, p in enumerate(self.parts, start=1):
            if p > self.part(k + 1):
                out.append((p, k))
        return out

    def with_box(self, s: tuple[int, int]) -> "Partition":
        s1, s2 = s
        rows = list(self.parts) + [0]
        rows[s2 - 1] += 1
        return Partition(rows)


@dataclass(frozen=True)
class BoxStats:
    arm: int
    leg: int

    @property
    def hook(self) -> int:
        return self.arm + self.leg + 1


def box_stats(lam: Partition, s: tuple[int, int]) -> BoxStats:
    s1, s2 = s
    t = lam.transpose()
    return BoxStats(arm=lam.part(s2) - s1, leg=t.part(s1) - s2)


def box_weight(base: Monomial, s: tuple[int, int]) -> Monomial:
    s1, s2 = s
    return base * Q3 ** (s1 - 1) * Q4 ** (s2 - 1)


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    if n == 0:
        return (Partition(),)
    out = []

    def rec(rest: int, maxpart: int, acc: tuple[int, ...]):
        if rest == 0:
            out.append(Partition(acc))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, acc + (p,))

    rec(n, n, ())
    return tuple(out)


def partitions_up_to(n: int) -> list[Partition]:
    out: list[Partition] = []
    for k in range(n + 1):
        out.extend(partitions_of(k))
    return out


# ---------------------------------------------------------------------------
# fixed-point weights
# ---------------------------------------------------------------------------


def _diag_arg(stats: BoxStats, form: int) -> Monomial:
    if form == 1:
        return Q3 ** (stats.leg + 1) * Q4 ** (-stats.arm)
    return Q3 ** (-stats.leg) * Q4 ** (stats.arm + 1)


def z_A0(lam: Partition, form: int = 1) -> Coefficient:
    """Product of S-values over the boxes of one partition."""
    out = Coefficient.one()
    for s in lam.boxes():
        out = out * s_function(_diag_arg(box_stats(lam, s), form))
    return out


def z_Ar(lam: Partition, r: int, form: int = 1) -> Coefficient:
    """Same, keeping only boxes whose hook length is divisible by r."""
    if r < 1:
        raise ValidationError("r must be a positive integer")
    out = Coefficient.one()
    for s in lam.boxes():
        st = box_stats(lam, s)
        if st.hook % r == 0:
            out = out * s_function(_diag_arg(st, form))
    return out


def _pair_factor(
    lam_a: Partition,
    lam_b: Partition,
    ratio: Monomial,
    r: int,
    shift: int,
) -> Coefficient:
    """Mixed-arm/leg contribution of an ordered pair (alpha < beta).

    ratio is x_beta / x_alpha; shift is the node offset i_alpha - i_beta
    entering the colored hook filter.  r = 1 keeps every box.
    """
    out = Coefficient.one()
    ta, tb = lam_a.transpose(), lam_b.transpose()
    for s1, s2 in lam_a.boxes():
        arm = lam_a.part(s2) - s1
        leg = tb.part(s1) - s2
        if (arm + leg + 1 - shift) % r == 0:
            out = out * s_function(ratio * Q3 ** (leg + 1) * Q4 ** (-arm))
    for s1, s2 in lam_b.boxes():
        arm = lam_b.part(s2) - s1
        leg = ta.part(s1) - s2
        if (arm + leg + 1 + shift) % r == 0:
            out = out * s_function(ratio * Q3 ** (-leg) * Q4 ** (arm + 1))
    return out


def z_A0_tuple(lams: Sequence[Partition], xs: Sequence[Monomial]) -> Coefficient:
    return z_Ar_tuple(lams, xs, 1)


def z_Ar_tuple(
    lams: Sequence[Partition],
    xs: Sequence[Monomial],
    r: int,
    nodes: Sequence[int] | None = None,
) -> Coefficient:
    """Weight of a tuple: diagonal factors times all ordered pair factors."""
    if len(lams) != len(xs):
        raise ValidationError("one evaluation parameter per partition")
    ns = list(nodes) if nodes is not None else [0] * len(lams)
    out = Coefficient.one()
    for lam in lams:
        out = out * z_Ar(lam, r)
    for a in range(len(lams)):
        for b in range(a + 1, len(lams)):
            out = out * _pair_factor(lams[a], lams[b], xs[b] / xs[a], r, ns[a] - ns[b])
    return out


# ---------------------------------------------------------------------------
# closed-form affine characters
# ---------------------------------------------------------------------------


def _boundary_ym(
    lam: Partition, base: Monomial, node: int, r: int, node_names: Sequence[str]
) -> YMonomial:
    entries = []
    for s in lam.addable():
        color = (s[0] - s[1]) % r
        entries.append((node_names[(color + node) % r], box_weight(base, s), +1))
    for s in lam.removable():
        color = (s[0] - s[1]) % r
        entries.append((node_names[(color + node) % r], box_weight(base, s) * Q, -1))
    return YMonomial(tuple(entries))


def _colored_counting(lam: Partition, node: int, r: int, node_names: Sequence[str]) -> Monomial:
    out = Monomial.unit()
    for s in lam.boxes():
        out = out * qfrak(node_names[((s[0] - s[1]) % r + node) % r])
    return out


def _tuples_of_total(count: int, total: int) -> Iterator[tuple[Partition, ...]]:
    if count == 0:
        if total == 0:
            yield ()
        return
    for k in range(total + 1):
        for lam in partitions_of(k):
            for rest in _tuples_of_total(count - 1, total - k):
                yield (lam,) + rest


def affine_character(Q_: Quiver, wc: WeightConfig, max_qdeg: int) -> Character:
    """Sum over partition tuples up to the counting-degree cutoff.

    Matches the reflection engine term by term: the Y-monomial of a
    diagram comes from its addable/removable boxes, while its weight and
    colored counting factor are evaluated on the transposed diagram.
    """
    if max_qdeg < 0:
        raise ValidationError("cutoff must be nonnegative")
    if classify(Q_)[0] is not QuiverClass.AFFINE:
        raise ValidationError("closed-form characters exist for affine quivers only")
    r = len(Q_.nodes)
    node_names = list(Q_.nodes)
    comps = [(node_names.index(i), p) for i, _, p in wc.entries]
    terms: dict[YMonomial, Coefficient] = {}
    for total in range(max_qdeg + 1):
        for lams in _tuples_of_total(len(comps), total):
            trans = [lam.transpose() for lam in lams]
            coeff = z_Ar_tuple(
                trans, [p for _, p in comps], r, nodes=[n for n, _ in comps]
            )
            if coeff.is_zero:
                continue
            counting = Monomial.unit()
            ym = YMonomial.unit()
            for (node, base), lam, tr in zip(comps, lams, trans):
                counting = counting * _colored_counting(tr, node, r, node_names)
                ym = ym * _boundary_ym(lam, base, node, r, node_names)
            coeff = coeff * Coefficient.from_monomial(counting)
            if ym in terms:
                raise ValidationError(f"colliding configurations at {ym!r}")
            terms[ym] = coeff
    return Character(Q_, wc, terms, (), meta={"closed_form": "affine", "max_qdeg": max_qdeg})


# ---------------------------------------------------------------------------
# resonance truncations
# ---------------------------------------------------------------------------


def pit_filter(lam: Partition, pit: tuple[int, int], r: int = 1) -> bool:
    """True iff the pit box (row i, column j) is outside the partition."""
    i, j = pit
    if i < 1 or j < 1:
        raise InvalidPit("pit coordinates must be positive")
    if (i + j - 1) % r != 0:
        raise InvalidPit(f"pit {pit} violates the mod-{r} residue condition")
    return not lam.contains(i, j)


def pit_resonance_vanishes(lam: Partition, pit: tuple[int, int], r: int = 1) -> bool:
    """Exact vanishing criterion of the diagonal weight under pit resonance.

    The substituted mass makes the factor of a box with arm j-1 and leg
    i-1 (and hook in rZ) hit an S-zero; no other factor can vanish for
    generic exponents.  Note this is finer than box membership.
    """
    i, j = pit
    if (i + j - 1) % r != 0:
        raise InvalidPit(f"pit {pit} violates the mod-{r} residue condition")
    for s in lam.boxes():
        st = box_stats(lam, s)
        if st.arm == j - 1 and st.leg == i - 1 and st.hook % r == 0:
            return True
    return False


def pit_resonance_sigma(pit: tuple[int, int], seed: tuple[int, int]) -> dict[str, Monomial]:
    """Numeric resonance substitution q3^i q4^{1-j} = q1 with exact exponents.

    Maps q1, q2, mu to powers of a fresh generator t built from the seed
    pair, satisfying mu^{i+j-1} = q1^j q2^{j-1} exactly.
    """
    i, j = pit
    r1, r2 = seed
    t = Monomial.gen("t")
    n1 = (i + j - 1) * r1
    n2 = (i + j - 1) * r2
    m = j * r1 + (j - 1) * r2
    return {"q1": t**n1, "q2": t**n2, "mu": t**m}


def resonance_to_pit(sigma_exponents: tuple[int, int]) -> tuple[int, int]:
    """Pit position for a resonance q3^e3 q4^e4 = q1; requires e4 <= 0."""
    e3, e4 = sigma_exponents
    if e3 < 1 or e4 > 0:
        raise InvalidPit("resonance exponents must satisfy e3 >= 1, e4 <= 0")
    return (e3, 1 - e4)


def burge_filter(lam_a: Partition, lam_b: Partition, i: int, j: int) -> bool:
    """Transpose-column condition lam_b^T_k - lam_a^T_{k+j-1} >= i for all k."""
    if i > 0 or j < 1:
        raise ValidationError("burge condition needs i <= 0 and j >= 1")
    ta, tb = lam_a.transpose(), lam_b.transpose()
    top = max(len(tb.parts), len(ta.parts) + 2)
    return all(tb.part(k) - ta.part(k + j - 1) >= i for k in range(1, top + 1))


def burge_resonance_sigma(i: int, j: int, xa: str, xb: str) -> dict[str, Monomial]:
    """Exact ratio substitution x_b -> x_a q1 q3^{-i} q4^{j-1}."""
    return {xb: Monomial.gen(xa) * Q1 * Q3**-i * Q4 ** (j - 1)}
