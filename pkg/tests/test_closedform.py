import random
from fractions import Fraction

import pytest

from leonard.closedform import ClosedFormParams, evaluate, fit, theta_sum, theta_sum_literal
from leonard.errors import TypeFieldMismatch
from leonard.field import QQ, BinaryField, PrimeField
from leonard.generate import random_closed_form
from leonard.parray import TypeTag, validate
from oracles import admissible, cases, ref_check, ref_theta_sum, ref_array

GF4 = BinaryField(2, 0b111)


def test_type1_evaluate_example():
    q = QQ(2)
    cf = ClosedFormParams(TypeTag("I", q + q.inverse(), q),
                          dict(eta=0, mu=1, h=2, eta_s=0, mu_s=1, h_s=3, tau=100))
    p = evaluate(cf, 3)
    # theta_i = 2^i + 2 * 2^(3 - i), term by term
    assert p.theta == tuple(QQ(2**i + 2 * 2 ** (3 - i)) for i in range(4))
    assert p.theta == tuple(map(QQ, (17, 10, 8, 10)))
    assert p.theta_star == tuple(QQ(2**i + 3 * 2 ** (3 - i)) for i in range(4))
    # varphi_1 = (q - 1)(q^3 - 1)(tau - mu mu* - h h* q^2)
    assert p.varphi[0] == QQ(1 * 7 * (100 - 1 - 6 * 4))
    # fit pins mu + h q^d = theta_0 - eta
    p5 = evaluate(ClosedFormParams(cf.tag, {**cf.values, "h": 5}), 3)
    back = fit(p5)
    assert back["mu"] + back["h"] * back.tag.q ** 3 == p5.theta[0] - back["eta"]
    assert evaluate(back, 3) == p5


def test_type4_evaluate_example():
    t = GF4.parse("0x2")
    for r, ok in ((GF4.one, False), (t, True)):
        cf = ClosedFormParams(TypeTag("IV", GF4.zero, GF4.one),
                              dict(theta0=0, theta_star0=0, h=1, s=t, h_s=1, s_s=t, r=r))
        p = evaluate(cf, 3)
        assert p.theta == (GF4.zero, t + 1, GF4.one, t)
        assert bool(validate(p)) is ok
    assert ref_check(evaluate(ClosedFormParams(cf.tag, {**cf.values, "r": 1}), 3)) == ("ii", 1)


def test_type_field_mismatch():
    cf = ClosedFormParams(TypeTag("IV", QQ(2), QQ(1)),
                          dict(theta0=0, theta_star0=0, h=1, s=2, h_s=1, s_s=2, r=1))
    with pytest.raises(TypeFieldMismatch):
        evaluate(cf, 3)
    cf = ClosedFormParams(TypeTag("IV", GF4.zero, GF4.one),
                          dict(theta0=0, theta_star0=0, h=1, s=1, h_s=1, s_s=1, r=1))
    with pytest.raises(TypeFieldMismatch):
        evaluate(cf, 4)
    cf = ClosedFormParams(TypeTag("II", GF4.zero, GF4.one),
                          dict(eta=0, mu=1, h=1, eta_s=0, mu_s=1, h_s=1, tau=1))
    with pytest.raises(TypeFieldMismatch):
        evaluate(cf, 3)


@pytest.mark.parametrize("tag,d,f", cases(), ids=str)
def test_evaluate_fit_identity(tag, d, f, rng):
    for _ in range(10):
        _, p = admissible(tag, d, rng, f)
        cf = fit(p)
        assert cf.tag.tag == tag
        assert evaluate(cf, d) == p


def test_type3m_d5_fit(rng):
    for _ in range(20):
        cf, p = admissible("III-", 5, rng, QQ)
        back = fit(p)
        assert evaluate(back, 5) == evaluate(cf, 5) == p


def _with_theta0(p, x):
    # carry a scalar through the reference reader
    return type(p)(p.field, p.d, (x,) + p.theta[1:], p.theta_star, p.varphi, p.phi)


@pytest.mark.parametrize("tag,d,f", cases(), ids=str)
def test_theta_sum_matches_literal(tag, d, f, rng):
    for _ in range(10):
        _, p = admissible(tag, d, rng, f)
        _, (th, *_rest) = ref_array(p)
        for i in range(1, d + 1):
            s = theta_sum(p, i)
            assert s == theta_sum_literal(p, i)
            assert str(s) == str(theta_sum_literal(p, i))
            assert ref_theta_sum(th, d, i) == ref_array(_with_theta0(p, s))[1][0][0]


def test_theta_sum_examples(rng):
    for tag, d, f in cases():
        _, p = admissible(tag, d, rng, f)
        assert theta_sum(p, 1) == 1
    _, p = admissible("II", 4, rng, QQ)
    assert theta_sum(p, 2) == QQ(Fraction(3, 2))
    for d in (3, 5, 7):
        _, p = admissible("III-", d, rng, QQ)
        assert all(theta_sum(p, i).is_zero() for i in range(2, d + 1, 2))
    with pytest.raises(ValueError):
        theta_sum(p, 0)


def test_type2_window_is_three(rng):
    for d in range(4, 9):
        _, p = admissible("II", d, rng, PrimeField(101))
        for seq in (p.theta, p.theta_star):
            for i in range(2, d):
                assert (seq[i - 2] - seq[i + 1]) / (seq[i - 1] - seq[i]) == 3


def test_type2_over_gf3_violates_ii():
    # In characteristic 3 the type II closed form forces theta_0 = theta_3,
    # so validate stops at (i); the (ii) violation is still always present.
    rng = random.Random(5)
    F = PrimeField(3)
    for _ in range(200):
        p = evaluate(random_closed_form("II", F, 4, rng), 4)
        assert p.theta[0] == p.theta[3]
        r = validate(p)
        assert (r.condition, r.index) == ref_check(p) and r.condition == "i"
        # varphi_3 and phi_3 carry the factor 3(4 - 3 + 1) = 6 = 0
        assert p.varphi[2].is_zero() and p.phi[2].is_zero()
