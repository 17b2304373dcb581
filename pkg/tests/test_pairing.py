"""Pairing properties and the dense-oracle cross-check.

The optimized path (sparse line products, prepared schedules, decomposed
final exponentiation) is checked for exact equality against pair_naive, which
redoes the map with dense multiplications and one big-integer power.
"""

import random

import pytest

from stealthpair import get_suite

SUITES = ("bn254", "bls12-381", "bls12-377")


@pytest.mark.parametrize("name", SUITES)
def test_matches_dense_oracle(name):
    s = get_suite(name)
    rng = random.Random(101)
    assert s.pair(s.g1, s.g2) == s.engine.pair_naive(s.g1, s.g2)
    for _ in range(3):
        P = s.g1curve.random_point(rng)
        Q = s.g2curve.random_point(rng)
        assert s.pair(P, Q, check=False) == s.engine.pair_naive(P, Q)


@pytest.mark.parametrize("name", SUITES)
def test_nondegenerate(name):
    s = get_suite(name)
    e = s.pair(s.g1, s.g2)
    assert e != s.gt_one
    assert s.gt_exp(e, int(s.r)) == s.gt_one


@pytest.mark.parametrize("name", ("bn254", "bls12-381"))
def test_bilinearity_both_slots(name):
    s = get_suite(name)
    rng = random.Random(7)
    for _ in range(10):
        R = s.g1curve.random_point(rng)
        S = s.g1curve.random_point(rng)
        T = s.g2curve.random_point(rng)
        assert s.pair(s.g1curve.add(R, S), T, check=False) == \
            s.gt_mul(s.pair(R, T, check=False), s.pair(S, T, check=False))
        U = s.g2curve.random_point(rng)
        assert s.pair(R, s.g2curve.add(T, U), check=False) == \
            s.gt_mul(s.pair(R, T, check=False), s.pair(R, U, check=False))


@pytest.mark.parametrize("name", ("bn254", "bls12-381"))
def test_inversion_property(name):
    s = get_suite(name)
    rng = random.Random(13)
    for _ in range(5):
        S = s.g1curve.random_point(rng)
        T = s.g2curve.random_point(rng)
        e = s.pair(S, T, check=False)
        assert s.pair(S, s.g2curve.neg(T), check=False) == s.gt_inv(e)
        assert s.pair(s.g1curve.neg(S), T, check=False) == s.gt_inv(e)


@pytest.mark.parametrize("name", ("bn254", "bls12-381"))
def test_exponent_shuffle(name):
    s = get_suite(name)
    rng = random.Random(17)
    base = s.pair(s.g1, s.g2)
    n = int(s.r)
    for _ in range(10):
        a = rng.randrange(1, n)
        b = rng.randrange(1, n)
        lhs = s.pair(s.g1curve.mul_gen(a), s.g2curve.mul(b, s.g2), check=False)
        assert lhs == s.pair(s.g1curve.mul_gen(b), s.g2curve.mul(a, s.g2), check=False)
        assert lhs == s.gt_exp(base, a * b % n)


def test_small_scalar_identities():
    s = get_suite("bn254")
    e = s.pair(s.g1, s.g2)
    assert s.pair(s.g1curve.mul_gen(2), s.g2, check=False) == s.gt_mul(e, e)


def test_identity_inputs():
    s = get_suite("bn254")
    assert s.pair(None, s.g2) == s.gt_one
    assert s.pair(s.g1, None) == s.gt_one


def test_rejects_off_subgroup_inputs():
    from stealthpair.suites import _find_twist_point

    s = get_suite("bn254")
    bad_q = _find_twist_point(s.tower, s.g2curve.b2)
    assert s.g2curve.mul_raw(int(s.r), bad_q) is not None
    with pytest.raises(ValueError):
        s.pair(s.g1, bad_q)
    with pytest.raises(ValueError):
        s.pair((1, 1), s.g2)  # not on the curve


def test_prepared_equals_direct():
    s = get_suite("bn254")
    rng = random.Random(19)
    Q = s.g2curve.random_point(rng)
    lines = s.prepare_g2(Q)
    for _ in range(5):
        P = s.g1curve.random_point(rng)
        assert s.pair_prepared(lines, P) == s.pair(P, Q, check=False)


def test_gt_serialization_round_trip():
    s = get_suite("bn254")
    rng = random.Random(23)
    for _ in range(5):
        e = s.pair(s.g1curve.random_point(rng), s.g2curve.random_point(rng), check=False)
        data = s.gt_serialize(e)
        assert len(data) == 12 * s.g1curve.fel_bytes
        assert s.gt_deserialize(data) == e
    with pytest.raises(ValueError):
        s.gt_deserialize(b"\x00" * (12 * s.g1curve.fel_bytes - 1))
    # an arbitrary Fp12 vector is almost surely outside the order-r subgroup
    bad = bytearray(s.gt_serialize(s.pair_base()))
    bad[-1] ^= 1
    with pytest.raises(ValueError):
        s.gt_deserialize(bytes(bad))


def test_gs_squaring_agrees_with_plain_on_cyclotomic():
    s = get_suite("bn254")
    tw = s.tower
    rng = random.Random(29)
    f = tw.rand12(rng)
    m = tw.m12(tw.conj12(f), tw.i12(f))
    m = tw.m12(tw.frob12(m, 2), m)
    for _ in range(5):
        assert tw.gs_sqr(m) == tw.s12(m)
        m = tw.gs_sqr(m)


def test_frobenius_is_p_power():
    for name in SUITES:
        s = get_suite(name)
        tw = s.tower
        f = tw.rand12(random.Random(31))
        assert tw.frob12(f, 1) == tw.pow12(f, int(tw.p))


def test_sparse_line_products_match_dense():
    from gmpy2 import mpz

    rng = random.Random(37)
    for name, kind in (("bn254", "D"), ("bls12-381", "M"), ("bls12-377", "D")):
        s = get_suite(name)
        tw = s.tower
        p = int(tw.p)
        f = tw.rand12(rng)
        z2 = (mpz(0), mpz(0))
        c1 = (mpz(rng.randrange(p)), mpz(rng.randrange(p)))
        c2 = (mpz(rng.randrange(p)), mpz(rng.randrange(p)))
        if kind == "D":
            yP = mpz(rng.randrange(p))
            dense = (((yP, mpz(0)), z2, z2), (c1, c2, z2))
            assert tw.mul_line_d(f, yP, c1, c2) == tw.m12(f, dense)
        else:
            l0 = (mpz(rng.randrange(p)), mpz(rng.randrange(p)))
            dense = ((l0, z2, z2), (z2, c1, c2))
            assert tw.mul_line_m(f, l0, c1, c2) == tw.m12(f, dense)


def test_gt_exp_base_matches_generic():
    s = get_suite("bn254")
    rng = random.Random(41)
    base = s.pair_base()
    for _ in range(5):
        e = rng.randrange(int(s.r))
        assert s.gt_exp_base(e) == s.gt_exp(base, e)
    assert s.gt_exp_base(0) == s.gt_one
