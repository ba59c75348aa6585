import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qqkit.coefficient import Coefficient, s_function, s_product, s_r
from qqkit.errors import NonIntegerLimit, PoleError, ValidationError
from qqkit.monomial import Monomial, Q, Q1, Q2, xparam

GENS = ["q1", "q2", "mu", "x(1,1)", "x(1,2)"]


def random_monomial(rng, span=4):
    exps = {g: rng.randint(-span, span) for g in rng.sample(GENS, rng.randint(1, 3))}
    return Monomial(exps)


def small_coefficients():
    args = st.dictionaries(
        st.sampled_from(GENS), st.integers(min_value=-2, max_value=2), min_size=1, max_size=2
    ).map(Monomial).filter(lambda m: not m.is_unit)
    factor = st.tuples(args, st.integers(min_value=-2, max_value=2).filter(bool))
    return st.builds(
        lambda n, u, fs: Coefficient.factored(n, u, fs),
        st.integers(min_value=-3, max_value=3).filter(bool),
        st.dictionaries(st.sampled_from(GENS), st.integers(min_value=-1, max_value=1), max_size=2).map(Monomial),
        st.lists(factor, max_size=2),
    )


# -- S-function basics -------------------------------------------------------


def test_s_zeros_and_poles():
    assert s_function(Q1).is_zero
    assert s_function(Q2).is_zero
    with pytest.raises(PoleError):
        s_function(Monomial.unit())
    with pytest.raises(PoleError):
        s_function(Q)
    assert s_r(2, Q1**2).is_zero
    assert s_r(2, Q2).is_zero
    with pytest.raises(PoleError):
        s_r(2, Q1**2 * Q2)


def test_s_inversion_thousand_random():
    rng = random.Random(20260808)
    checked = 0
    while checked < 1000:
        z = random_monomial(rng)
        if z.is_unit or z == Q:
            continue
        a, b = s_function(z), s_function(Q * z.inverse())
        assert a.kind == b.kind
        if not a.is_zero:
            assert (a.integer, a.unit, a.factors) == (b.integer, b.unit, b.factors)
        assert a == b
        checked += 1


def test_s_r_reflection_and_product():
    rng = random.Random(7)
    for _ in range(60):
        z = random_monomial(rng)
        for r in (1, 2, 3):
            factors_defined = all(
                not (z * Q1**-s).is_unit and z * Q1**-s != Q for s in range(r)
            )
            if not factors_defined:
                continue
            lhs = s_r(r, z)
            assert lhs == s_product(r, z)
            refl = z.inverse() * Q1**r * Q2
            assert lhs == s_r(r, refl)


def test_s_product_merges_to_higher_degree():
    assert s_function(Q1**-1) * s_function(Q1**-2) == s_r(2, Q1**-1)


# -- ring axioms --------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(small_coefficients(), small_coefficients(), small_coefficients())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + Coefficient.zero() == a


def test_add_basics():
    one = Coefficient.one()
    assert (one + one).as_integer() == 2
    s = s_function(Q1**-1)
    assert (s + (-s)).is_zero
    assert (s + Coefficient.zero()) == s
    assert (s / s).is_one


def test_add_refactors_to_factored():
    # (1 - q1^2) = (1 - q1) + q1(1 - q1): the sum cancels its denominator
    a = Coefficient.factored(1, Monomial.unit(), [(Q1, 1), (Q1**2, -1)])
    b = Coefficient.factored(1, Q1, [(Q1, 1), (Q1**2, -1)])
    total = a + b
    assert total.is_one


# -- specialization -----------------------------------------------------------


def test_specialize_examples():
    x1, x2 = xparam("1", 1), xparam("1", 2)
    c = s_function(x2 / x1)
    assert c.specialize({"x(1,2)": x1 * Q1}).is_zero
    assert c.specialize({"x(1,2)": x1 * Q2}).is_zero
    assert s_function(x1 / x2).specialize({"x(1,2)": x1 * Q1}) == s_function(Q1**-1)
    assert c.specialize({}) == c


def test_specialize_pole_and_validation():
    x1, x2 = xparam("1", 1), xparam("1", 2)
    c = s_function(x2 / x1)
    with pytest.raises(PoleError):
        c.specialize({"x(1,2)": x1})
    with pytest.raises(ValidationError):
        c.specialize({"x(1,2)": x2 * Q1})


# -- limits -------------------------------------------------------------------


@pytest.mark.parametrize(
    "value,at_q1,at_q2",
    [
        (lambda: s_function(Q1**-1), 2, 1),
        (lambda: s_function(Q2**-1), 1, 2),
        (lambda: s_r(2, Q1**-1), 3, 1),
        (lambda: s_r(2, Q1), -1, 1),
        (lambda: s_r(2, Q1**-2), 2, 1),
    ],
)
def test_limit_table(value, at_q1, at_q2):
    assert value().limit_at_unity("q1").as_integer() == at_q1
    assert value().limit_at_unity("q2").as_integer() == at_q2


def test_limit_binomials():
    for w in range(7):
        for v in range(w + 1):
            c = Coefficient.one()
            for i in range(1, w - v + 1):
                for j in range(1, v + 1):
                    c = c * s_function(Q1 ** (1 - i - j))
            assert c.limit_at_unity("q1").as_integer() == comb(w, v)
            assert c.limit_at_unity("q2").as_integer() == 1


def test_limit_pole_and_non_integer():
    c = Coefficient.factored(1, Monomial.unit(), [(Q1, -1), (Q1 * Q2, 1)])
    with pytest.raises(PoleError):
        c.limit_at_unity("q1")
    with pytest.raises(NonIntegerLimit):
        s_function(Q1**-2).limit_at_unity("q1")  # slope ratio 3/2


def test_limit_zero_multiplicity():
    c = Coefficient.factored(1, Monomial.unit(), [(Q1, 1), (Q1 * Q2, -1)])
    assert c.limit_at_unity("q1").is_zero


def test_specialize_then_limit_commutes_when_defined():
    x1, x2 = xparam("1", 1), xparam("1", 2)
    cases = [
        (s_function(x2 / x1), {"x(1,2)": x1 * Q1**-2 * Q2**-1}),
        (s_function(x2 / x1), {"x(1,2)": x1 * Q1**-1 * Q2**-2}),
        (s_r(2, x2 / x1), {"x(1,2)": x1 * Q1**-3 * Q2**-2}),
    ]
    for c, sigma in cases:
        for which in ("q1", "q2"):
            path_a = c.specialize(sigma).limit_at_unity(which)
            sig2 = {g: m.without(which) for g, m in sigma.items()}
            path_b = c.limit_at_unity(which).specialize(sig2)
            assert path_a == path_b


# -- serialization ------------------------------------------------------------


def test_json_round_trip():
    vals = [
        Coefficient.zero(),
        Coefficient.from_integer(-7),
        s_function(Q1**-1),
        s_r(2, Q1**-2) * s_function(Q2**-1),
        s_function(Q1**-1) + Coefficient.one(),
    ]
    for c in vals:
        assert Coefficient.from_json(c.to_json()) == c


def test_inverse_requires_unit_integer():
    with pytest.raises(ValidationError):
        Coefficient.from_integer(2).inverse()
    with pytest.raises(ZeroDivisionError):
        Coefficient.zero().inverse()
