from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qmink import scalars as sc


def scalars_strategy():
    base = st.builds(
        lambda n, d, es, em, ek, ei, er: sc.rational(n, d) * sc.s_power(es)
        * sc.M ** em * sc.K ** ek * sc.I ** ei * sc.R ** er,
        st.integers(-6, 6), st.integers(1, 4), st.integers(-4, 4),
        st.integers(0, 2), st.integers(0, 2), st.integers(0, 1),
        st.integers(0, 1))
    return st.lists(base, min_size=1, max_size=3).map(
        lambda xs: sum(xs[1:], xs[0]))


@given(scalars_strategy(), scalars_strategy(), scalars_strategy())
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not a.is_zero():
        assert (a * a.inverse()).is_one()


@given(scalars_strategy())
@settings(max_examples=40, deadline=None)
def test_canonical_form_is_unique(a):
    two = sc.two_q()
    b = (a * two) / two            # same value, different history
    ca, cb = a.canonical(), b.canonical()
    assert ca.num == cb.num and ca.den == cb.den


def test_r_squared_reduces():
    assert sc.R * sc.R == sc.two_q()
    assert (sc.R * sc.s_power(2)) * sc.R == sc.two_q() * sc.q_power(1)


def test_gaussian_unit():
    assert sc.I * sc.I == sc.integer(-1)
    assert (sc.I * sc.I * sc.I * sc.I).is_one()


def test_qnum_examples():
    assert sc.qnum_sym(0).is_zero()
    assert sc.qnum_sym(1).is_one()
    assert sc.qnum_sym(2) == sc.q_power(1) + sc.q_power(-1)
    assert sc.qnum_std(0).is_zero()
    assert sc.qnum_std(1).is_one()
    assert sc.qnum_std(3) == sc.integer(1) + sc.q_power(2) + sc.q_power(4)


def test_qfactorial():
    assert sc.qfactorial_std(3) == \
        sc.qnum_std(1) * sc.qnum_std(2) * sc.qnum_std(3)
    assert sc.qfactorial_std(0).is_one()


@pytest.mark.parametrize("n", range(21))
def test_qnum_relation_and_classical(n):
    # [n] = q^(1-n) [[n]]
    assert sc.qnum_sym(n) == sc.s_power(2 * (1 - n)) * sc.qnum_std(n)
    if n:
        assert sc.subst_classical(sc.qnum_sym(n)).as_fraction() == n
        assert sc.subst_classical(sc.qnum_std(n)).as_fraction() == n


def test_lambda_vanishes_classically():
    assert sc.lambda_().subst_classical().is_zero()


def test_pole_at_classical_limit():
    with pytest.raises(sc.PoleError):
        sc.lambda_().inverse().subst_classical()


def test_removable_singularity_is_fine():
    val = (sc.q_power(2) - sc.integer(1)) / sc.lambda_()
    assert val.subst_classical().as_fraction() == 1


def test_residual_r_is_not_rational():
    with pytest.raises(sc.NotRationalError):
        sc.R.subst_classical()


def test_division_and_powers():
    lam, two = sc.lambda_(), sc.two_q()
    x = lam / two
    assert x * two == lam
    assert x ** 3 == (lam ** 3) / (two ** 3)
    assert x ** 0 == sc.ONE
    assert (x ** -2) * (x ** 2) == sc.ONE


def test_subst_keeps_parameters():
    v = (sc.M ** 2 * sc.q_power(3) + sc.K).subst_classical()
    assert v == sc.M ** 2 + sc.K


# -- differential fuzz against exact point evaluation ---------------------------
#
# Numbers of the form w + x i + y r + z i r over Q, with r^2 = R0 the value
# of s^2 + s^-2 at a fixed rational point, form an exact mirror arithmetic.

_SPT, _MPT, _KPT = Fraction(5, 3), Fraction(2, 7), Fraction(-3, 4)
_R0 = _SPT ** 2 + _SPT ** -2


def _quad_mul(u, v):
    w1, x1, y1, z1 = u
    w2, x2, y2, z2 = v
    return (w1 * w2 - x1 * x2 + _R0 * (y1 * y2 - z1 * z2),
            w1 * x2 + x1 * w2 + _R0 * (y1 * z2 + z1 * y2),
            w1 * y2 + y1 * w2 - (x1 * z2 + z1 * x2),
            w1 * z2 + x1 * y2 + y1 * x2 + z1 * w2)


def _quad_inv(u):
    w, x, y, z = u
    # conjugate in r, then in i
    a = (w, x, -y, -z)
    n1 = _quad_mul(u, a)            # i-only: (p, q, 0, 0)
    p, q = n1[0], n1[1]
    norm = p * p + q * q
    conj = _quad_mul(a, (p, -q, Fraction(0), Fraction(0)))
    return tuple(c / norm for c in conj)


def _eval_scalar(x):
    acc = [Fraction(0)] * 4
    for (es, em, ek, ei, er), c in x.num.items():
        v = Fraction(c) * _SPT ** es * _MPT ** em * _KPT ** ek
        acc[ei + 2 * er] += v
    den = Fraction(0)
    for (es, em, ek), c in x.den.items():
        den += Fraction(c) * _SPT ** es * _MPT ** em * _KPT ** ek
    assert den != 0
    return tuple(a / den for a in acc)


@given(st.lists(st.sampled_from("+-*i"), min_size=1, max_size=12),
       st.integers(0, 2 ** 32))
@settings(max_examples=80, deadline=None)
def test_scalar_arithmetic_matches_point_evaluation(ops, seed):
    import random as _random
    rng = _random.Random(seed)
    # inverse chains over m/k-bearing values build multivariate denominators,
    # which are exact but outside the optimized profile; keep m, k out of
    # atoms when the op sequence inverts (the engine never inverts them)
    with_mk = "i" not in ops

    def atom():
        x = sc.rational(rng.randint(-5, 5), rng.randint(1, 4)) * \
            sc.s_power(rng.randint(-3, 3)) * sc.I ** rng.randint(0, 1) * \
            sc.R ** rng.randint(0, 1)
        if with_mk:
            x = x * sc.M ** rng.randint(0, 1) * sc.K ** rng.randint(0, 1)
        return x if not x.is_zero() else sc.ONE

    cur = atom()
    mirror = _eval_scalar(cur)
    for op in ops:
        if op == "i":
            if all(v == 0 for v in mirror):
                continue
            cur = cur.inverse()
            mirror = _quad_inv(mirror)
            continue
        other = atom()
        om = _eval_scalar(other)
        if op == "+":
            cur, mirror = cur + other, tuple(a + b
                                             for a, b in zip(mirror, om))
        elif op == "-":
            cur, mirror = cur - other, tuple(a - b
                                             for a, b in zip(mirror, om))
        else:
            cur, mirror = cur * other, _quad_mul(mirror, om)
        assert _eval_scalar(cur) == mirror
    # canonical form preserves the value and is idempotent
    can = cur.canonical()
    assert _eval_scalar(can) == mirror
    can2 = can.canonical()
    assert can2.num == can.num and can2.den == can.den
