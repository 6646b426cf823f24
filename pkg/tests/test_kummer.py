import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from llab.errors import DegenerateLines, KummerHypothesisFails, NotALine, NotDeepEnough, NotDivisible
from llab.kummer import (
    UnramifiedExtension,
    base_change_break,
    break_oracle,
    census_rows,
    classify_line,
    compositum_is_unramified,
    count_by_break,
    delta,
    galois_filtration_M,
    iter_lines,
    kummer_pairing,
    level_cap,
    mass_contribution,
    mass_from_rows,
    pairing_oracle,
    unramified_line_generator,
    verify_report,
)
from llab.presets import preset
from llab.unit_filtration import unit_level


def test_classify_examples():
    Q2 = preset("q2")
    r = classify_line(Q2, 2, Q2(5))
    assert (r.m, r.is_unramified, r.t, r.v_disc) == (2, True, -1, 0)
    r = classify_line(Q2, 2, Q2(-1))
    assert (r.m, r.is_unramified, r.t, r.v_disc) == (1, False, 1, 2)
    r = classify_line(Q2, 2, Q2(2))
    assert (r.m, r.is_unramified, r.t, r.v_disc) == (0, False, 2, 3)
    assert r.convention == "K^x"


def test_classify_tame():
    Q5 = preset("q5")
    r = classify_line(Q5, 2, Q5(5))
    assert (r.is_unramified, r.t, r.v_disc) == (False, 0, 1)
    r = classify_line(Q5, 2, Q5(10))
    assert (r.is_unramified, r.v_disc) == (False, 1)
    # 2 is a non-square unit: the line is unramified
    r = classify_line(Q5, 2, Q5(2))
    assert (r.is_unramified, r.v_disc) == (True, 0)


def test_classify_errors():
    Q2 = preset("q2")
    with pytest.raises(NotALine):
        classify_line(Q2, 2, Q2(17))
    Q5 = preset("q5")
    with pytest.raises(KummerHypothesisFails):
        classify_line(Q5, 5, Q5(2))
    with pytest.raises(KummerHypothesisFails):
        classify_line(Q5, 3, Q5(2))


def test_classify_invariant_under_rescaling():
    K = preset("q2sqrt3")
    rng = random.Random(4)
    for _, mu in iter_lines(K, 2):
        base = classify_line(K, 2, mu)
        for _ in range(5):
            w = K.random_unit(rng) * K.pi_power(rng.randrange(3))
            r = classify_line(K, 2, mu * w * w)
            assert (r.m, r.t, r.v_disc, r.is_unramified) == (base.m, base.t, base.v_disc, base.is_unramified)


@pytest.mark.parametrize("name", ["q2", "q2sqrt3", "q3zeta3", "q2cbrt2", "q9sqrt3"])
def test_reports_verify(name):
    K = preset(name)
    for _, mu in iter_lines(K, K.p):
        assert verify_report(K, K.p, classify_line(K, K.p, mu))


def test_unramified_generator_examples():
    Q2 = preset("q2")
    eta = unramified_line_generator(Q2, 2)
    assert eta == Q2(-3)
    assert unit_level(Q2, 2, eta) == 2
    K = preset("q3zeta3")
    assert unramified_line_generator(K, 3) == 1 - 3 * (1 - K.zeta)
    Q5 = preset("q5")
    assert unramified_line_generator(Q5, 2) == Q5.teichmuller(Q5.residue(2))


def test_minus_three_and_five_same_class():
    Q2 = preset("q2")
    with pytest.raises(NotALine):
        classify_line(Q2, 2, Q2(-3) * Q2(5))


@pytest.mark.parametrize("name", ["q2", "q2sqrt3", "q3zeta3", "q2sqrt5", "q9sqrt3"])
def test_unramified_generator_level(name):
    K = preset(name)
    eta = unramified_line_generator(K, K.p)
    assert unit_level(K, K.p, eta) == K.pe1
    assert classify_line(K, K.p, eta).is_unramified


def test_pairing_examples():
    Q2 = preset("q2")
    v = kummer_pairing(Q2, Q2(5), 1)
    assert v.exponent == 1 and v.value == Q2(-1)
    assert kummer_pairing(Q2, Q2(5), 0).exponent == 0
    K = preset("q3zeta3")
    eta = unramified_line_generator(K, 3)
    v = kummer_pairing(K, eta, 1)
    assert v.exponent == 1 and v.value == K.zeta
    assert kummer_pairing(K, eta, 0).value == K.one


def test_pairing_oracle_examples():
    Q2 = preset("q2")
    assert pairing_oracle(Q2, Q2(5)).value == Q2(-1)
    assert pairing_oracle(Q2, Q2(1)).exponent == 0


def test_pairing_needs_deep_unit():
    Q2 = preset("q2")
    with pytest.raises(NotDeepEnough):
        kummer_pairing(Q2, Q2(3), 1)


def _deep_units(K, rng, count):
    for _ in range(count):
        yield 1 + K.random_element(rng) * K.pi_power(K.pe1)


@pytest.mark.parametrize("name", ["q3zeta3", "q9sqrt3"])
def test_oracle_sign_for_odd_p(name):
    # the Galois action gives zeta^(-S(c)), the inverse of the closed formula
    K = preset(name)
    ext = UnramifiedExtension(K, K.p)
    rng = random.Random(8)
    for eta in _deep_units(K, rng, 10):
        formula = kummer_pairing(K, eta, 1).exponent
        assert pairing_oracle(K, eta, ext).exponent == (-formula) % K.p


@pytest.mark.parametrize("name", ["q2", "q2sqrt3", "q3zeta3", "q9sqrt3"])
def test_pairing_bilinear(name):
    K = preset(name)
    rng = random.Random(9)
    p = K.p
    units = list(_deep_units(K, rng, 8))
    for a_ in units:
        for b_ in units[:3]:
            lhs = kummer_pairing(K, a_ * b_, 1).exponent
            assert lhs == (kummer_pairing(K, a_, 1).exponent + kummer_pairing(K, b_, 1).exponent) % p
        for a in range(p):
            for b in range(p):
                combined = kummer_pairing(K, a_, (a + b) % p).value
                assert combined == kummer_pairing(K, a_, a).value * kummer_pairing(K, a_, b).value


def test_frobenius_is_a_ring_map():
    K = preset("q3zeta3")
    ext = UnramifiedExtension(K, 3)
    L = ext.L
    rng = random.Random(1)
    for _ in range(10):
        x, y = L.random_element(rng), L.random_element(rng)
        assert ext.frobenius(x * y) == ext.frobenius(x) * ext.frobenius(y)
        assert ext.frobenius(x + y) == ext.frobenius(x) + ext.frobenius(y)
        assert ext.frobenius(x).residue() == x.residue() ** K.q
    z = ext.embed(K.zeta)
    assert ext.frobenius(z) == z


@pytest.mark.parametrize("name", ["q2", "q2sqrt3", "q3zeta3", "q2sqrt5"])
def test_norm_from_unramified_quadratic(name):
    K = preset(name)
    ext = UnramifiedExtension(K, 2)
    L = ext.L
    eta = unramified_line_generator(L, L.p)
    norm = eta * ext.frobenius(eta)
    # the norm lies in the image of K; pull it back through the embedding
    back = _pull_back(K, ext, norm)
    assert ext.embed(back) == norm
    assert unit_level(K, K.p, back) == K.pe1


def _pull_back(K, ext, z):
    """Find x in K with embed(x) == z by solving coordinate by coordinate."""
    x = K.zero.with_prec(z.prec)
    rem = z
    for j in range(z.prec):
        if rem.with_prec(j + 1).is_zero():
            continue
        digit = rem.digit(j)
        match = next(r for r in K.residue.elements() if ext.embed(K.lift(r)).residue() == digit)
        term = K.lift(match, z.prec) * K.pi_power(j)
        x = x + term
        rem = z - ext.embed(x)
    return x.with_prec(z.prec)


def test_break_oracle_examples():
    Q2 = preset("q2")
    assert break_oracle(Q2, 2, Q2(2)) == 2
    assert break_oracle(Q2, 2, Q2(-1)) == 1
    K = preset("q3zeta3")
    assert break_oracle(K, 3, K.pi) == 3
    with pytest.raises(ValueError):
        break_oracle(Q2, 2, Q2(5))


def test_census_examples():
    assert count_by_break(preset("q3zeta3"), 3).rows == [(1, 3), (2, 9), (3, 27)]
    assert count_by_break(preset("q2"), 2).rows == [(1, 2), (2, 4)]
    c = count_by_break(preset("q2sqrt3"), 2)
    assert c.rows == [(1, 2), (3, 4), (4, 8)] and c.exhaustive and c.total == 15
    c = count_by_break(preset("q5"), 2)
    assert c.rows == [(0, 2)] and c.unramified == 1


@pytest.mark.parametrize("name", ["q2cbrt2", "q2i", "q2zeta8", "q9sqrt3", "q2sqrt5"])
def test_census_exhaustive(name):
    K = preset(name)
    c = count_by_break(K, K.p, exhaustive=True)
    assert c.exhaustive
    assert sum(n for _, n in c.rows) + 1 == delta(K.p, 1 + K.d)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.integers(1, 4))
def test_census_rows_sum(l, e1, f):
    e = e1 * (l - 1)
    rows = census_rows(l, e, f)
    assert sum(n for _, n in rows) + 1 == delta(l, 1 + e * f)
    assert all(n > 0 and 1 <= t <= l * e1 for t, n in rows)


def test_mass_examples():
    assert mass_contribution(preset("q2"), 2) == 2
    assert mass_contribution(preset("q2cbrt2"), 2) == 2
    assert mass_contribution(preset("q3zeta3"), 3) == Fraction(13, 27)
    assert mass_from_rows(3, 1, [(1, 3), (2, 9), (3, 27)]) == Fraction(3, 9) + Fraction(9, 81) + Fraction(27, 729)


def test_base_change_break():
    assert base_change_break(4, 2) == 2
    assert base_change_break(3, 1) == 3
    assert base_change_break(2, 2) == 1
    with pytest.raises(NotDivisible):
        base_change_break(3, 2)


def test_compositum_examples():
    Q2 = preset("q2")
    assert compositum_is_unramified(Q2, 2, Q2(-1), Q2(-5))
    assert not compositum_is_unramified(Q2, 2, Q2(2), Q2(-2))
    assert compositum_is_unramified(Q2, 2, Q2(2), Q2(10))
    with pytest.raises(DegenerateLines):
        compositum_is_unramified(Q2, 2, Q2(2), Q2(8))
    with pytest.raises(DegenerateLines):
        compositum_is_unramified(Q2, 2, Q2(5), Q2(2))


def test_galois_filtration_q2():
    g = galois_filtration_M(preset("q2"))
    assert g.upper == [(1, 2), (2, 1), (3, 0)]
    assert g.v_disc_M == 16


def test_level_cap():
    assert level_cap(preset("q2"), 2) == 2
    assert level_cap(preset("q3zeta3"), 3) == 3
    assert level_cap(preset("q5"), 2) == 0
