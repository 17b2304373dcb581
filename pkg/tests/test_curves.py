"""Group-law, scalar-multiplication, and serialization tests for every group."""

import random

import pytest

from stealthpair import SECP, get_suite
from stealthpair.ec import DecodeError

# frozen canonical encodings; serialization must stay byte-identical across runs
FROZEN_GENERATORS = {
    "bn254": "8000000000000000000000000000000000000000000000000000000000000001",
    "bls12-381": "97f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac58"
                 "6c55e83ff97a1aeffb3af00adb22c6bb",
    "bls12-377": "c08848defe740a67c8fc6225bf87ff5485951e2caa9d41bb188282c8bd37cb5c"
                 "d5481512ffcd394eeab9b16eb21be9ef",
    "secp256k1": "0279be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798",
}


def naive_mul(curve, k, P):
    """Binary double-and-add oracle, independent of the wNAF/GLV path."""
    R = None
    k = int(k) % int(curve.n)
    while k:
        if k & 1:
            R = curve.add(R, P)
        P = curve.add(P, P)
        k >>= 1
    return R


def all_g1_curves():
    return [SECP] + [get_suite(n).g1curve for n in ("bn254", "bls12-381", "bls12-377")]


@pytest.mark.parametrize("curve", all_g1_curves(), ids=lambda c: c.name)
def test_scalar_mul_matches_naive_oracle(curve):
    rng = random.Random(11)
    for _ in range(8):
        k = rng.randrange(int(curve.n))
        P = curve.mul_gen(rng.randrange(1, int(curve.n)))
        assert curve.mul(k, P) == naive_mul(curve, k, P)


@pytest.mark.parametrize("curve", all_g1_curves(), ids=lambda c: c.name)
def test_identity_and_order(curve):
    g = curve.g
    assert curve.mul(0, g) is None
    assert curve.mul(1, g) == g
    assert curve.mul(int(curve.n), g) is None
    # (n-1)*g + g is the identity
    assert curve.add(curve.mul(int(curve.n) - 1, g), g) is None
    assert curve.add(g, None) == g
    assert curve.add(None, None) is None


@pytest.mark.parametrize("curve", all_g1_curves(), ids=lambda c: c.name)
def test_glv_decomposition(curve):
    assert curve._glv is not None, "all built-in base-field curves admit the endomorphism"
    rng = random.Random(5)
    lam = curve._glv[1]
    n = int(curve.n)
    for _ in range(200):
        s = rng.randrange(n)
        k1, k2 = curve.glv_decompose(s)
        assert (k1 + k2 * lam) % n == s
        assert abs(k1).bit_length() <= n.bit_length() // 2 + 2
        assert abs(k2).bit_length() <= n.bit_length() // 2 + 2


@pytest.mark.parametrize("curve", all_g1_curves(), ids=lambda c: c.name)
def test_mul_gen_and_window_tables(curve):
    rng = random.Random(17)
    for _ in range(5):
        k = rng.randrange(1, int(curve.n))
        assert curve.mul_gen(k) == curve.mul(k, curve.g)
    P = curve.mul_gen(rng.randrange(1, int(curve.n)))
    table = curve.build_window_table(P)
    for _ in range(5):
        k = rng.randrange(1, int(curve.n))
        assert curve.mul_window(table, k) == curve.mul(k, P)


@pytest.mark.parametrize("curve", all_g1_curves(), ids=lambda c: c.name)
def test_recode_reuse(curve):
    rng = random.Random(23)
    k = rng.randrange(1, int(curve.n))
    rec = curve.recode(k)
    for _ in range(4):
        P = curve.mul_gen(rng.randrange(1, int(curve.n)))
        assert curve.mul_recoded(rec, P) == curve.mul(k, P)


@pytest.mark.parametrize("curve", all_g1_curves(), ids=lambda c: c.name)
def test_serialize_round_trip(curve):
    rng = random.Random(31)
    for _ in range(100):
        P = curve.random_point(rng)
        data = curve.serialize(P)
        assert len(data) == curve.point_bytes
        assert curve.deserialize(data) == P
    assert curve.deserialize(curve.serialize(None)) is None


@pytest.mark.parametrize("curve", all_g1_curves(), ids=lambda c: c.name)
def test_deserialize_rejects_corruption(curve):
    rng = random.Random(37)
    rejected = 0
    for _ in range(60):
        P = curve.random_point(rng)
        data = bytearray(curve.serialize(P))
        pos = rng.randrange(len(data))
        old = data[pos]
        data[pos] ^= 1 << rng.randrange(8)
        try:
            Q = curve.deserialize(bytes(data))
        except DecodeError:
            rejected += 1
            continue
        # a flip that still decodes must not silently return the original point
        assert Q != P or data[pos] == old
    assert rejected > 0
    with pytest.raises(DecodeError):
        curve.deserialize(b"\x01" * curve.point_bytes)
    with pytest.raises(DecodeError):
        curve.deserialize(b"")


def test_frozen_generator_encodings():
    for name in ("bn254", "bls12-381", "bls12-377"):
        suite = get_suite(name)
        assert suite.g1curve.serialize(suite.g1).hex() == FROZEN_GENERATORS[name]
    assert SECP.serialize(SECP.g).hex() == FROZEN_GENERATORS["secp256k1"]


def test_g2_group_and_serialization():
    for name in ("bn254", "bls12-381", "bls12-377"):
        suite = get_suite(name)
        g2c = suite.g2curve
        rng = random.Random(41)
        assert g2c.mul(int(suite.r), suite.g2) is None
        for _ in range(20):
            Q = g2c.random_point(rng)
            data = g2c.serialize(Q)
            assert len(data) == g2c.point_bytes
            assert g2c.deserialize(data) == Q
        assert g2c.deserialize(g2c.serialize(None)) is None
        with pytest.raises(DecodeError):
            g2c.deserialize(b"\x00" * g2c.point_bytes)


def test_g2_subgroup_check_rejects_cofactor_points():
    # a twist-curve point before cofactor clearing is not in the order-r subgroup
    from stealthpair.suites import _find_twist_point

    for name in ("bn254", "bls12-381"):
        suite = get_suite(name)
        g2c = suite.g2curve
        P = _find_twist_point(suite.tower, g2c.b2)
        assert g2c.on_curve(P)
        if g2c.mul_raw(int(suite.r), P) is not None:  # overwhelmingly the case
            assert not g2c.in_subgroup(P)
            with pytest.raises(DecodeError):
                g2c.deserialize(g2c.serialize(P))
