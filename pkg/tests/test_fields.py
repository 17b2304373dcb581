"""Field helper properties."""

import random

from gmpy2 import mpz
from hypothesis import given, settings
from hypothesis import strategies as st

from stealthpair.fields import batch_inverse, div_round_nearest, naf, sqrt_mod_prime, wnaf

P_3MOD4 = 21888242871839275222246405745257275088696311157297823662689037894645226208583
# BLS12-377 base field, 1 mod 4 with 2-adicity 46
P_1MOD4 = int("0x1ae3a4617c510eac63b05c06ca1493b1a22d9f300f5138f1ef3622fba094800170b5d443"
              "00000008508c00000000001", 16)


def test_sqrt_both_residue_classes():
    for p in (P_3MOD4, P_1MOD4, 23, 41):
        rng = random.Random(p % 9973)
        for _ in range(25):
            a = rng.randrange(1, p)
            sq = a * a % p
            root = sqrt_mod_prime(sq, mpz(p))
            assert root is not None and root * root % p == sq
    assert sqrt_mod_prime(0, mpz(23)) == 0


def test_sqrt_rejects_nonresidues():
    p = P_3MOD4
    rng = random.Random(7)
    seen = 0
    for _ in range(50):
        a = rng.randrange(2, p)
        if pow(a, (p - 1) // 2, p) == p - 1:
            assert sqrt_mod_prime(a, mpz(p)) is None
            seen += 1
    assert seen > 0


def test_batch_inverse_matches_singles():
    p = mpz(P_3MOD4)
    rng = random.Random(3)
    vals = [mpz(rng.randrange(1, int(p))) for _ in range(37)]
    out = batch_inverse(vals, p)
    for v, iv in zip(vals, out):
        assert v * iv % p == 1
    assert batch_inverse([], p) == []


@given(st.integers(-10**30, 10**30), st.integers(-10**15, 10**15).filter(lambda b: b != 0))
@settings(max_examples=300, deadline=None)
def test_div_round_nearest_is_nearest(a, b):
    q = div_round_nearest(a, b)
    assert abs(a - q * b) * 2 <= abs(b)


@given(st.integers(0, 2**130))
@settings(max_examples=200, deadline=None)
def test_naf_reconstructs(k):
    digits = naf(k)
    assert sum(d << i for i, d in enumerate(digits)) == k
    assert all(d in (-1, 0, 1) for d in digits)
    # non-adjacency
    for i in range(len(digits) - 1):
        assert not (digits[i] and digits[i + 1])


@given(st.integers(0, 2**130), st.integers(2, 6))
@settings(max_examples=200, deadline=None)
def test_wnaf_reconstructs(k, w):
    digits = wnaf(k, w)
    assert sum(d << i for i, d in enumerate(digits)) == k
    half = 1 << (w - 1)
    for d in digits:
        assert d == 0 or (d % 2 == 1 and -half < d < half)
