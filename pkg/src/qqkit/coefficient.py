"""Exact rational-function coefficients.

A Coefficient is one of

* Zero,
* Factored: integer * monomial * prod (1 - m_k)^{p_k} with canonically
  oriented binomial arguments, or
* General: sparse integer Laurent polynomial over a denominator that is a
  product of binomials with positive powers.

Products of Factored values stay Factored; General only arises through
addition (used for verification-time equality and post-collision merging).
Binomial arguments are oriented with the identity (1 - m) = (-m)(1 - 1/m)
so that equal rational functions always share one factored form; this is
what makes coefficients cancel exactly along distinct reflection paths.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import NonFactoredLimitError, NonIntegerLimit, PoleError, ValidationError
from .monomial import Monomial, Q1, Q2

# ---------------------------------------------------------------------------
# sparse Laurent polynomials: dict Monomial -> int
# ---------------------------------------------------------------------------


def _pol_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _pol_mul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma * mb
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _pol_scale(p: dict, mono: Monomial, c: int) -> dict:
    return {m * mono: k * c for m, k in p.items()}


def _pol_neg(p: dict) -> dict:
    return {m: -c for m, c in p.items()}


def _binomial_poly(arg: Monomial) -> dict:
    return {Monomial.unit(): 1, arg: -1}


def _pol_pow_binomial(arg: Monomial, n: int) -> dict:
    out = {Monomial.unit(): 1}
    for _ in range(n):
        out = _pol_mul(out, _binomial_poly(arg))
    return out


def _pol_divide_binomial(p: dict, arg: Monomial) -> dict | None:
    """Exact quotient p / (1 - arg), or None when not divisible.

    Terms are grouped into classes modulo the lattice Z*exp(arg); each class
    is a one-variable Laurent polynomial in y = arg and is divided by
    (1 - y) via cumulative sums.
    """
    pivot = arg.gens()[0]
    step = arg.exponent(pivot)
    inv = arg.inverse()
    classes: dict[Monomial, dict[int, int]] = {}
    for m, c in p.items():
        k = m.exponent(pivot) // step
        rep = m * inv**k
        classes.setdefault(rep, {})[k] = c
    out: dict = {}
    for rep, coeffs in classes.items():
        if sum(coeffs.values()) != 0:
            return None
        ks = sorted(coeffs)
        acc = 0
        for k in range(ks[0], ks[-1]):
            acc += coeffs.get(k, 0)
            if acc:
                out[rep * arg**k] = acc
    return out


# ---------------------------------------------------------------------------
# canonical binomial orientation
# ---------------------------------------------------------------------------


def _orient(arg: Monomial) -> tuple[Monomial, bool]:
    """Return (canonical argument, flipped?) using (1-m) = (-m)(1-1/m)."""
    inv = arg.inverse()
    if arg.sort_key() >= inv.sort_key():
        return arg, False
    return inv, True


class Coefficient:
    """Exact rational coefficient; immutable."""

    __slots__ = ("kind", "integer", "unit", "factors", "num", "den")

    def __init__(self, kind, integer=0, unit=None, factors=(), num=None, den=()):
        self.kind = kind  # "zero" | "factored" | "general"
        self.integer = integer
        self.unit = unit if unit is not None else Monomial.unit()
        self.factors = factors  # tuple[(Monomial, int)], canonical args
        self.num = num  # dict Monomial -> int (general only)
        self.den = den  # tuple[(Monomial, int)], positive powers

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "Coefficient":
        return _ZERO

    @staticmethod
    def one() -> "Coefficient":
        return _ONE

    @staticmethod
    def from_integer(n: int) -> "Coefficient":
        if n == 0:
            return _ZERO
        return Coefficient("factored", n, Monomial.unit(), ())

    @staticmethod
    def from_monomial(m: Monomial, n: int = 1) -> "Coefficient":
        if n == 0:
            return _ZERO
        return Coefficient("factored", n, m, ())

    @staticmethod
    def factored(integer: int, unit: Monomial, factors) -> "Coefficient":
        """Normalize a factored product; arguments must not be the unit."""
        if integer == 0:
            return _ZERO
        n = integer
        u = unit
        merged: dict[Monomial, int] = {}
        for arg, p in factors:
            if p == 0:
                continue
            if arg.is_unit:
                raise ValidationError("binomial factor with unit argument")
            c, flipped = _orient(arg)
            if flipped:
                # (1 - arg)^p = (-arg)^p (1 - 1/arg)^p
                if p % 2:
                    n = -n
                u = u * arg**p
            merged[c] = merged.get(c, 0) + p
        fac = tuple(sorted(((a, p) for a, p in merged.items() if p), key=lambda t: t[0].sort_key()))
        return Coefficient("factored", n, u, fac)

    @staticmethod
    def general(num: dict, den) -> "Coefficient":
        if not num:
            return _ZERO
        dd: dict[Monomial, int] = {}
        for arg, p in den:
            if p <= 0:
                raise ValidationError("general denominators need positive powers")
            c, flipped = _orient(arg)
            if flipped:
                num = _pol_scale(num, arg.inverse() ** p, (-1) ** p)
            dd[c] = dd.get(c, 0) + p
        return Coefficient._reduce_general(num, dd)

    @staticmethod
    def _reduce_general(num: dict, den: dict) -> "Coefficient":
        for arg in list(den):
            while den.get(arg, 0) > 0:
                q = _pol_divide_binomial(num, arg)
                if q is None:
                    break
                num = q
                den[arg] -= 1
            if den.get(arg) == 0:
                del den[arg]
        if not num:
            return _ZERO
        if len(num) == 1:
            (mono, c), = num.items()
            return Coefficient.factored(c, mono, tuple((a, -p) for a, p in den.items()))
        dd = tuple(sorted(den.items(), key=lambda t: t[0].sort_key()))
        return Coefficient("general", 0, Monomial.unit(), (), num, dd)

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def is_one(self) -> bool:
        return (
            self.kind == "factored"
            and self.integer == 1
            and self.unit.is_unit
            and not self.factors
        )

    def as_integer(self) -> int:
        """The value as a plain integer, or raise NonIntegerLimit."""
        if self.kind == "zero":
            return 0
        if self.kind == "factored" and self.unit.is_unit and not self.factors:
            return self.integer
        raise NonIntegerLimit(f"coefficient is not an integer: {self!r}")

    # -- ring operations -----------------------------------------------------

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        if not isinstance(other, Coefficient):
            return NotImplemented
        if self.kind == "zero" or other.kind == "zero":
            return _ZERO
        if self.kind == "factored" and other.kind == "factored":
            merged: dict[Monomial, int] = dict(self.factors)
            for a, p in other.factors:
                merged[a] = merged.get(a, 0) + p
            fac = tuple(
                sorted(((a, p) for a, p in merged.items() if p), key=lambda t: t[0].sort_key())
            )
            return Coefficient(
                "factored", self.integer * other.integer, self.unit * other.unit, fac
            )
        na, da = self._general_parts()
        nb, db = other._general_parts()
        den: dict[Monomial, int] = dict(da)
        for a, p in db.items():
            den[a] = den.get(a, 0) + p
        return Coefficient._reduce_general(_pol_mul(na, nb), den)

    def inverse(self) -> "Coefficient":
        if self.kind == "zero":
            raise ZeroDivisionError("inverse of zero coefficient")
        if self.kind != "factored" or self.integer not in (1, -1):
            raise ValidationError("inverse requires a factored unit coefficient")
        return Coefficient(
            "factored",
            self.integer,
            self.unit.inverse(),
            tuple(sorted(((a, -p) for a, p in self.factors), key=lambda t: t[0].sort_key())),
        )

    def __truediv__(self, other: "Coefficient") -> "Coefficient":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Coefficient":
        if n == 0:
            return _ONE
        if self.kind == "zero":
            if n < 0:
                raise ZeroDivisionError("negative power of zero coefficient")
            return _ZERO
        if self.kind != "factored":
            raise ValidationError("powers implemented for factored coefficients")
        if n < 0 and self.integer not in (1, -1):
            raise ValidationError("negative power of a non-unit coefficient")
        k = self.integer**n if n > 0 else (self.integer if n % 2 else 1)
        return Coefficient(
            "factored",
            k,
            self.unit**n,
            tuple(sorted(((a, p * n) for a, p in self.factors), key=lambda t: t[0].sort_key())),
        )

    def __neg__(self) -> "Coefficient":
        if self.kind == "zero":
            return _ZERO
        if self.kind == "factored":
            return Coefficient("factored", -self.integer, self.unit, self.factors)
        return Coefficient("general", 0, Monomial.unit(), (), _pol_neg(self.num), self.den)

    def _general_parts(self) -> tuple[dict, dict]:
        """Numerator polynomial and denominator dict of this value."""
        if self.kind == "zero":
            return {}, {}
        if self.kind == "general":
            return dict(self.num), dict(self.den)
        num = {self.unit: self.integer}
        den: dict[Monomial, int] = {}
        for a, p in self.factors:
            if p > 0:
                num = _pol_mul(num, _pol_pow_binomial(a, p))
            else:
                den[a] = den.get(a, 0) - p
        return num, den

    def __add__(self, other: "Coefficient") -> "Coefficient":
        if not isinstance(other, Coefficient):
            return NotImplemented
        if self.kind == "zero":
            return other
        if other.kind == "zero":
            return self
        na, da = self._general_parts()
        nb, db = other._general_parts()
        den: dict[Monomial, int] = dict(da)
        for a, p in db.items():
            den[a] = max(den.get(a, 0), p)
        for a, p in den.items():
            ka = p - da.get(a, 0)
            if ka:
                na = _pol_mul(na, _pol_pow_binomial(a, ka))
            kb = p - db.get(a, 0)
            if kb:
                nb = _pol_mul(nb, _pol_pow_binomial(a, kb))
        return Coefficient._reduce_general(_pol_add(na, nb), den)

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coefficient):
            return NotImplemented
        if self.kind == other.kind == "factored":
            if (
                self.integer == other.integer
                and self.unit == other.unit
                and self.factors == other.factors
            ):
                return True
        if self.kind == "zero" or other.kind == "zero":
            return self.kind == other.kind
        return (self - other).is_zero

    def __hash__(self):
        raise TypeError("coefficients are not hashable")

    def __repr__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "factored":
            parts = []
            if self.integer != 1 or (self.unit.is_unit and not self.factors):
                parts.append(str(self.integer))
            if not self.unit.is_unit:
                parts.append(repr(self.unit))
            for a, p in self.factors:
                s = f"(1-{a!r})"
                parts.append(s if p == 1 else f"{s}^{p}")
            return "*".join(parts) if parts else "1"
        num = " + ".join(f"{c}*{m!r}" for m, c in sorted(self.num.items(), key=lambda t: t[0].sort_key()))
        den = "*".join(f"(1-{a!r})^{p}" for a, p in self.den)
        return f"({num})/({den})" if den else f"({num})"

    # -- substitution and limits ---------------------------------------------

    def specialize(self, sigma: Mapping[str, Monomial]) -> "Coefficient":
        """Exact substitution of generators by monomials.

        A numerator binomial degenerating to (1 - 1) gives Zero; a
        denominator one raises PoleError.
        """
        for g, img in sigma.items():
            if any(h in sigma for h in img.gens()):
                raise ValidationError(f"substitution image of {g} reuses substituted generators")
        if self.kind == "zero":
            return _ZERO
        if self.kind == "factored":
            fac = []
            for a, p in self.factors:
                a2 = a.substitute(sigma)
                if a2.is_unit:
                    if p > 0:
                        return _ZERO
                    raise PoleError(f"denominator factor (1 - {a!r}) vanished under substitution")
                fac.append((a2, p))
            return Coefficient.factored(self.integer, self.unit.substitute(sigma), fac)
        num: dict = {}
        for m, c in self.num.items():
            m2 = m.substitute(sigma)
            s = num.get(m2, 0) + c
            if s:
                num[m2] = s
            else:
                num.pop(m2, None)
        den: dict[Monomial, int] = {}
        for a, p in self.den:
            a2 = a.substitute(sigma)
            if a2.is_unit:
                raise PoleError(f"denominator factor (1 - {a!r}) vanished under substitution")
            c, flipped = _orient(a2)
            if flipped:
                num = _pol_scale(num, a2.inverse() ** p, (-1) ** p)
            den[c] = den.get(c, 0) + p
        return Coefficient._reduce_general(num, den)

    def limit_at_unity(self, which: str) -> "Coefficient":
        """Limit as q1 -> 1 or q2 -> 1 of a factored coefficient.

        A factor (1 - gen^a) vanishes linearly with slope a; the limit is
        the ratio of those slopes times the surviving factors at gen = 1.
        Net vanishing multiplicity > 0 gives Zero, < 0 a PoleError.
        """
        if which not in ("q1", "q2"):
            raise ValidationError("limit generator must be q1 or q2")
        if self.kind == "zero":
            return _ZERO
        if self.kind == "general":
            raise NonFactoredLimitError("limit of a general-form coefficient")
        ratio = Fraction(1)
        multiplicity = 0
        survivors = []
        for a, p in self.factors:
            rest = a.without(which)
            if rest.is_unit:
                order = a.exponent(which)
                multiplicity += p
                ratio *= Fraction(order) ** p
            else:
                survivors.append((rest, p))
        if multiplicity > 0:
            return _ZERO
        if multiplicity < 0:
            raise PoleError(f"limit {which} -> 1 diverges")
        n = self.integer * ratio
        if n.denominator != 1:
            raise NonIntegerLimit(f"limit slope ratio {n} is not an integer")
        return Coefficient.factored(n.numerator, self.unit.without(which), survivors)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "zero":
            return {"int": 0, "unit": {}, "factors": []}
        if self.kind == "factored":
            return {
                "int": self.integer,
                "unit": self.unit.to_json(),
                "factors": [{"arg": a.to_json(), "pow": p} for a, p in self.factors],
            }
        return {
            "num": [[m.to_json(), c] for m, c in sorted(self.num.items(), key=lambda t: t[0].sort_key())],
            "den": [{"arg": a.to_json(), "pow": p} for a, p in self.den],
        }

    @staticmethod
    def from_json(data: Mapping) -> "Coefficient":
        if "num" in data:
            num = {Monomial.from_json(m): int(c) for m, c in data["num"]}
            den = tuple((Monomial.from_json(f["arg"]), int(f["pow"])) for f in data["den"])
            return Coefficient.general(num, den)
        n = int(data.get("int", 0))
        if n == 0:
            return _ZERO
        unit = Monomial.from_json(data.get("unit", {}))
        fac = tuple((Monomial.from_json(f["arg"]), int(f["pow"])) for f in data.get("factors", ()))
        return Coefficient.factored(n, unit, fac)


_ZERO = Coefficient("zero")
_ONE = Coefficient("factored", 1, Monomial.unit(), ())


# ---------------------------------------------------------------------------
# the S-function
# ---------------------------------------------------------------------------


def s_function(z: Monomial) -> Coefficient:
    """(1 - z/q1)(1 - z/q2) / ((1 - z)(1 - z/q)); Zero at z = q1, q2."""
    return s_r(1, z)


def s_r(r: int, z: Monomial) -> Coefficient:
    """Higher-degree variant with zeros at q1^r, q2 and poles at 1, q1^r q2."""
    if r < 1:
        raise ValidationError("degree must be a positive integer")
    q1r = Q1**r
    if z.is_unit or z == q1r * Q2:
        raise PoleError(f"S_{r} has a pole at z = {z!r}")
    if z == q1r or z == Q2:
        return Coefficient.zero()
    return Coefficient.factored(
        1,
        Monomial.unit(),
        ((z / q1r, 1), (z / Q2, 1), (z, -1), (z / (q1r * Q2), -1)),
    )


def s_product(r: int, z: Monomial) -> Coefficient:
    """The same value assembled as prod_{s<r} S(z q1^{-s})."""
    out = Coefficient.one()
    for s in range(r):
        out = out * s_function(z * Q1**-s)
    return out
