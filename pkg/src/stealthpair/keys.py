"""Key generation and stealth meta-address encoding for the five protocols.

Protocols:
  p1     pairing dual-key; stealth private key is the same for every payment
  p2     pairing dual-key; per-payment private keys, GT-valued public keys
  p3     pairing dual-key; per-payment private keys on secp256k1
  sk     pairing single-key; spending and viewing material from one scalar
  dksap  Diffie-Hellman dual-key baseline on secp256k1

Key material per protocol (g1/g2 are the pairing-suite generators, ge is the
secp256k1 generator):
  p1, p2: K = k*g2, V = v*g1
  p3:     K = k*ge, V = v*g1
  sk:     K = k*g1, V = k*g2 (V is the viewing key, derived from k)
  dksap:  K = k*ge, V = v*ge
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .ec import DecodeError
from .suites import SECP, CurveSuite, get_suite, sample_secp


class ProtocolId(str, Enum):
    P1 = "p1"
    P2 = "p2"
    P3 = "p3"
    SK = "sk"
    DKSAP = "dksap"


PAIRING_PROTOCOLS = (ProtocolId.P1, ProtocolId.P2, ProtocolId.P3, ProtocolId.SK)


class ProtocolMismatchError(ValueError):
    """Operation invoked with key material tagged for a different protocol."""


def _require(proto, other, what):
    if proto != other:
        raise ProtocolMismatchError(f"{what}: expected {proto.value}, got {other.value}")


@dataclass(frozen=True)
class SpendingKey:
    protocol: ProtocolId
    value: int  # scalar mod r (p1, p2, sk) or mod the secp order (p3, dksap)


@dataclass(frozen=True)
class ViewingKey:
    protocol: ProtocolId
    scalar: int | None  # v for p1-p3 and dksap
    point: tuple | None  # V = k*g2 for sk (G2 point)


@dataclass(frozen=True)
class MetaAddress:
    protocol: ProtocolId
    curve: str  # pairing-suite name, or "secp256k1" for dksap
    K: tuple  # G2 (p1, p2) | secp (p3, dksap) | G1 (sk)
    V: tuple | None  # G1 (p1-p3) | secp (dksap) | None (sk)


def gen_keys(protocol: ProtocolId, rng: random.Random, suite: CurveSuite | None = None):
    """Fresh (SpendingKey, ViewingKey, MetaAddress) for a protocol.

    The PRNG is caller-supplied so benchmark runs can be seeded; anything with
    `getrandbits` works.
    """
    protocol = ProtocolId(protocol)
    if protocol is ProtocolId.DKSAP:
        k = sample_secp(rng)
        v = sample_secp(rng)
        meta = MetaAddress(protocol, "secp256k1", SECP.mul_gen(k), SECP.mul_gen(v))
        return SpendingKey(protocol, k), ViewingKey(protocol, v, None), meta
    if suite is None:
        suite = get_suite("bn254")
    if protocol is ProtocolId.SK:
        k = suite.sample_fr(rng)
        K = suite.g1curve.mul_gen(k)
        V = suite.g2curve.mul(k, suite.g2)
        meta = MetaAddress(protocol, suite.name, K, None)
        return SpendingKey(protocol, k), ViewingKey(protocol, None, V), meta
    v = suite.sample_fr(rng)
    V = suite.g1curve.mul_gen(v)
    if protocol is ProtocolId.P3:
        k = sample_secp(rng)
        K = SECP.mul_gen(k)
    else:
        k = suite.sample_fr(rng)
        K = suite.g2curve.mul(k, suite.g2)
    meta = MetaAddress(protocol, suite.name, K, V)
    return SpendingKey(protocol, k), ViewingKey(protocol, v, None), meta


# ----------------------------------------------------------------------
# Meta-address string format: sma:<proto>:<curve>:<hexK>[:<hexV>]
# ----------------------------------------------------------------------
def _hex(b: bytes) -> str:
    return "0x" + b.hex()


def _unhex(s: str) -> bytes:
    if not s.startswith("0x"):
        raise DecodeError("hex field missing 0x prefix")
    try:
        return bytes.fromhex(s[2:])
    except ValueError as e:
        raise DecodeError(f"bad hex: {e}") from None


def _groups_for(protocol: ProtocolId, curve: str):
    """(K group, V group or None) for a protocol; validates the curve tag."""
    if protocol is ProtocolId.DKSAP:
        if curve != "secp256k1":
            raise DecodeError(f"dksap meta must use secp256k1, got {curve}")
        return SECP, SECP
    suite = get_suite(curve)
    if protocol in (ProtocolId.P1, ProtocolId.P2):
        return suite.g2curve, suite.g1curve
    if protocol is ProtocolId.P3:
        return SECP, suite.g1curve
    return suite.g1curve, None  # sk


def encode_meta(meta: MetaAddress) -> str:
    gK, gV = _groups_for(meta.protocol, meta.curve)
    parts = ["sma", meta.protocol.value, meta.curve, _hex(gK.serialize(meta.K))]
    if gV is not None:
        if meta.V is None:
            raise ValueError(f"{meta.protocol.value} meta-address requires V")
        parts.append(_hex(gV.serialize(meta.V)))
    return ":".join(parts)


def decode_meta(text: str) -> MetaAddress:
    parts = text.strip().split(":")
    if len(parts) < 4 or parts[0] != "sma":
        raise DecodeError("meta-address must look like sma:<proto>:<curve>:<K>[:<V>]")
    try:
        proto = ProtocolId(parts[1])
    except ValueError:
        raise DecodeError(f"unknown protocol tag {parts[1]!r}") from None
    curve = parts[2]
    gK, gV = _groups_for(proto, curve)
    expected = 4 if gV is None else 5
    if len(parts) != expected:
        raise DecodeError(f"{proto.value} meta-address takes {expected - 3} point field(s)")
    K = gK.deserialize(_unhex(parts[3]))
    if K is None:
        raise DecodeError("meta-address K must not be the identity")
    V = None
    if gV is not None:
        V = gV.deserialize(_unhex(parts[4]))
        if V is None:
            raise DecodeError("meta-address V must not be the identity")
    return MetaAddress(proto, curve, K, V)
