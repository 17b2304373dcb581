"""Keccak-256 known-answer and property tests.

The empty-input digest is the well-known constant of the original-padding
Keccak as used by Ethereum; it distinguishes this function from SHA3-256.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stealthpair.keccak import HAS_COMPILED_KECCAK, keccak256, keccak256_py

EMPTY_DIGEST = "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470"
FOX_DIGEST = "4d741b6f1eb29cb2a9b9911c82f56fa8d73b04959d3d9d222895df6c0b28aa15"


def test_known_vectors():
    assert keccak256(b"").hex() == EMPTY_DIGEST
    assert keccak256(b"The quick brown fox jumps over the lazy dog").hex() == FOX_DIGEST
    assert keccak256_py(b"").hex() == EMPTY_DIGEST
    assert keccak256_py(b"The quick brown fox jumps over the lazy dog").hex() == FOX_DIGEST


def test_deterministic():
    data = b"stealth"
    assert keccak256(data) == keccak256(data)
    assert len(keccak256(data)) == 32


def test_bit_flips_never_collide():
    rng = random.Random(1234)
    for _ in range(1000):
        n = rng.randrange(1, 200)
        msg = bytearray(rng.getrandbits(8) for _ in range(n))
        bit = rng.randrange(8 * n)
        flipped = bytearray(msg)
        flipped[bit // 8] ^= 1 << (bit % 8)
        assert keccak256(bytes(msg)) != keccak256(bytes(flipped))


def test_multi_block_messages():
    # crosses the 136-byte rate boundary
    for n in (135, 136, 137, 272, 500):
        data = bytes(range(256))[:n] if n <= 256 else b"x" * n
        data = (b"abc" * 200)[:n]
        assert keccak256(data) == keccak256_py(data)


@pytest.mark.skipif(not HAS_COMPILED_KECCAK, reason="compiled keccak unavailable")
@settings(max_examples=200, deadline=None)
@given(st.binary(min_size=0, max_size=600))
def test_compiled_matches_reference(data):
    assert keccak256(data) == keccak256_py(data)
