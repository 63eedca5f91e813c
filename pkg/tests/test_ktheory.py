from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from flatclasses import (Coefficients, KClassRational, KOClassRational, RingError,
                         StiefelWhitneyData, TotalChernData, complexify, conj_action, get_space,
                         realify_invariant, realize_single_class, smash_with_sphere,
                         so_spin_reducible, su_reducible)
from flatclasses.charclass import sw_multiple
from flatclasses.ktheory import ReductionReport, is_invariant

from helpers import rand_class, rand_homogeneous, rand_sw


def ko_ring():
    # even degrees up to 8 with several classes in degrees 4 and 8
    return get_space("CP2xCP2").ring()


def rand_ko(ring, rng):
    return KOClassRational(rand_class(ring, rng, range(0, ring.top_degree + 1, 4)))


def rand_k(ring, rng):
    return KClassRational(rand_class(ring, rng, range(0, ring.top_degree + 1, 2)))


def test_complexify_zero_and_single_component():
    R = ko_ring()
    assert complexify(KOClassRational(R.zero())).value.is_zero()
    x = R.basis_class(4, 0)
    y = complexify(KOClassRational(x))
    assert y.components == {2: x}


@given(seed=st.integers(0, 10**6))
def test_complexify_injective(seed):
    rng = random.Random(seed)
    R = ko_ring()
    a, b = rand_ko(R, rng), rand_ko(R, rng)
    assert (a == b) == (complexify(a) == complexify(b))


def test_conjugation_displayed_action():
    R = ko_ring()
    a, b = R.basis_class(2, 0), R.basis_class(4, 1)
    assert conj_action(KClassRational(a + b)) == KClassRational(-a + b)


@given(seed=st.integers(0, 10**6))
def test_conjugation_involution_and_fixed_part(seed):
    rng = random.Random(seed)
    y = rand_k(ko_ring(), rng)
    assert conj_action(conj_action(y)) == y
    fixed = conj_action(y) == y
    assert fixed == all(d % 4 == 0 for d in y.value.degrees())
    assert fixed == is_invariant(y)


@given(seed=st.integers(0, 10**6))
def test_two_divisibility_identities(seed):
    rng = random.Random(seed)
    R = ko_ring()
    kappa = rand_ko(R, rng)
    assert realify_invariant(complexify(kappa)) == 2 * kappa
    y = complexify(rand_ko(R, rng))
    assert complexify(realify_invariant(y)) == 2 * y


def test_realify_rejects_non_invariant():
    R = ko_ring()
    with pytest.raises(RingError):
        realify_invariant(KClassRational(R.basis_class(2, 0)))


def test_unrestricted_realification_is_y_plus_conjugate():
    R = ko_ring()
    y = KClassRational(R.basis_class(2, 0) + R.basis_class(4, 0))
    r = realify_invariant(y, require_invariant=False)
    assert complexify(r) == y + conj_action(y)


def test_zero_round_trip():
    R = ko_ring()
    z = KOClassRational(R.zero())
    assert realify_invariant(complexify(z)) == z


def test_ko_degrees_enforced():
    R = ko_ring()
    with pytest.raises(RingError):
        KOClassRational(R.basis_class(2, 0))


def test_su_reduction():
    R = get_space("CP2").ring()
    t = R.gen("t")
    ok = su_reducible(TotalChernData(R, 2, {2: t * t}))
    assert ok.verdict and ok.witness.is_zero()
    bad = su_reducible(TotalChernData(R, 2, {1: t}))
    assert not bad.verdict and bad.witness == t


def test_su_reduction_of_realized_classes():
    S = smash_with_sphere(get_space("CP3").ring(), 2)
    for d in (4, 6, 8):
        for x in S.basis_classes(d):
            phi, _ = realize_single_class(x, "SU")
            assert su_reducible(phi).verdict


def test_so_spin_reduction():
    R = get_space("RP5").ring(Coefficients.F2)
    a = R.gen("a")
    so, spin = so_spin_reducible(StiefelWhitneyData(R, R.zero(), a * a))
    assert so.verdict and not spin.verdict
    so, spin = so_spin_reducible(StiefelWhitneyData(R, a, R.zero()))
    assert not so.verdict and not spin.verdict
    so, spin = so_spin_reducible(StiefelWhitneyData.zero(R))
    assert so.verdict and spin.verdict


@given(seed=st.integers(0, 10**6))
def test_four_copies_reduce_to_spin(seed):
    R = get_space("T4").ring(Coefficients.F2)
    so, spin = so_spin_reducible(sw_multiple(rand_sw(R, random.Random(seed)), 4))
    assert so.verdict and spin.verdict


def test_report_invariant_enforced():
    R = get_space("RP2").ring(Coefficients.F2)
    with pytest.raises(ValueError):
        ReductionReport("SO", True, R.gen("a"))
    assert ReductionReport("SO", False, R.gen("a")).to_json()["verdict"] is False


def test_random_helper_stays_in_degree():
    R = ko_ring()
    assert rand_homogeneous(R, 4, random.Random(0)).degrees() in ([], [4])
