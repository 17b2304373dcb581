"""Sender, viewer, and recipient derivations for the five stealth protocols.

The shared secret is the Diffie-Hellman point r*V = v*R for the dual-key
protocols (on the pairing curve's G1 for p1-p3, on secp256k1 for dksap) and
the pairing value S = e(K, g2)^r = e(R, V) for the single-key protocol.

View tags come in two variants: leading bits of the shared point's
x-coordinate, or leading bits of the Keccak-256 hash of the shared secret's
canonical serialization. Tag widths are counted in bits (multiples of 4), so
the 5.5-byte configuration used for DKSAP comparisons is expressible exactly.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from enum import Enum

from gmpy2 import mpz

from .keccak import keccak256
from .keys import (
    MetaAddress,
    ProtocolId,
    ProtocolMismatchError,
    SpendingKey,
    ViewingKey,
    _require,
)
from .suites import SECP, CurveSuite, hash_to_secp_scalar, sample_secp

ADDRESS_BYTES = 20
_BASE_SECURITY_BITS = 128


class TagVariant(str, Enum):
    XCOORD = "xcoord"
    HASH = "hash"


class UnsupportedTagVariantError(ValueError):
    """Tag variant cannot be computed for this protocol's shared secret."""


class EphemeralRejectedError(ValueError):
    """Degenerate ephemeral key (zero-derived scalar); caller must resample."""


class TagPolicyWarning(UserWarning):
    def __init__(self, protocol, cfg, effective_bits):
        self.protocol = protocol
        self.cfg = cfg
        self.effective_bits = effective_bits
        super().__init__(
            f"{protocol.value} with a {cfg.bits}-bit {cfg.variant.value} view tag "
            f"reduces effective security to {effective_bits} bits"
        )


@dataclass(frozen=True)
class ViewTagConfig:
    variant: TagVariant = TagVariant.HASH
    bits: int = 8

    def __post_init__(self):
        if self.bits % 4 or not 0 <= self.bits <= 64:
            raise ValueError("tag width must be a multiple of 4 in [0, 64]")


@dataclass(frozen=True)
class ViewTag:
    bits: int
    value: str  # bits/4 hex nibbles, no prefix

    def render(self) -> str:
        return "0x" + self.value


@dataclass(frozen=True)
class PolicyResult:
    ok: bool
    effective_bits: int


@dataclass(frozen=True)
class EphemeralKey:
    protocol: ProtocolId
    r: int
    R: tuple  # r*g1 on the suite (p1-p3, sk) or r*ge (dksap)


@dataclass
class Announcement:
    """One ephemeral public key registry entry."""

    index: int | None
    protocol: ProtocolId
    curve: str
    R: str  # 0x hex of the compressed ephemeral public key
    tag: ViewTag

    def to_record(self) -> dict:
        return {
            "idx": self.index,
            "proto": self.protocol.value,
            "curve": self.curve,
            "R": self.R,
            "tag": self.tag.render(),
            "tagbits": self.tag.bits,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Announcement":
        tag_hex = rec["tag"]
        if not isinstance(tag_hex, str) or not tag_hex.startswith("0x"):
            raise ValueError("announcement tag must be 0x-prefixed hex")
        bits = int(rec["tagbits"])
        value = tag_hex[2:]
        if len(value) != bits // 4 or bits % 4:
            raise ValueError("announcement tag length does not match tagbits")
        return cls(
            index=int(rec["idx"]),
            protocol=ProtocolId(rec["proto"]),
            curve=rec["curve"],
            R=rec["R"],
            tag=ViewTag(bits, value),
        )


def gen_ephemeral(protocol: ProtocolId, rng: random.Random, suite: CurveSuite | None = None) -> EphemeralKey:
    protocol = ProtocolId(protocol)
    if protocol is ProtocolId.DKSAP:
        r = sample_secp(rng)
        return EphemeralKey(protocol, r, SECP.mul_gen(r))
    r = suite.sample_fr(rng)
    return EphemeralKey(protocol, r, suite.g1curve.mul_gen(r))


# ----------------------------------------------------------------------
# Tag helpers
# ----------------------------------------------------------------------
def tag_from_digest(digest: bytes, bits: int) -> ViewTag:
    return ViewTag(bits, digest.hex()[: bits // 4])


def tag_from_x(x: int, fel_bytes: int, bits: int) -> ViewTag:
    return ViewTag(bits, int(x).to_bytes(fel_bytes, "big").hex()[: bits // 4])


def shared_secret_bytes(suite: CurveSuite | None, protocol: ProtocolId, shared) -> bytes:
    """Canonical serialization of a shared secret, the hash-variant preimage."""
    if protocol is ProtocolId.SK:
        return suite.gt_serialize(shared)
    if protocol is ProtocolId.DKSAP:
        return SECP.serialize(shared)
    return suite.g1curve.serialize(shared)


def compute_view_tag(suite: CurveSuite | None, protocol: ProtocolId, shared, cfg: ViewTagConfig) -> ViewTag:
    """View tag of a shared secret under either variant.

    XCOORD needs a point-valued secret, so the single-key protocol (whose
    secret lives in GT) supports only the hash variant.
    """
    protocol = ProtocolId(protocol)
    if cfg.variant is TagVariant.XCOORD:
        if protocol is ProtocolId.SK:
            raise UnsupportedTagVariantError("sk shared secret has no x-coordinate; use the hash variant")
        fel = SECP.fel_bytes if protocol is ProtocolId.DKSAP else suite.g1curve.fel_bytes
        return tag_from_x(shared[0], fel, cfg.bits)
    return tag_from_digest(keccak256(shared_secret_bytes(suite, protocol, shared)), cfg.bits)


def tag_policy_check(protocol: ProtocolId, cfg: ViewTagConfig) -> PolicyResult:
    """Security-policy verdict for a tag configuration.

    Hash-variant tags on p1 and p3 disclose nothing the stealth public key
    depends on, so any width is fine there. Everything else gives up 4 bits
    of the 128-bit baseline per disclosed byte. Never a hard error.
    """
    protocol = ProtocolId(protocol)
    if cfg.variant is TagVariant.HASH and protocol in (ProtocolId.P1, ProtocolId.P3):
        return PolicyResult(True, _BASE_SECURITY_BITS)
    effective = _BASE_SECURITY_BITS - 4 * ((cfg.bits + 7) // 8)
    return PolicyResult(False, effective)


# ----------------------------------------------------------------------
# Addresses
# ----------------------------------------------------------------------
def stealth_address(suite: CurveSuite | None, protocol: ProtocolId, pub) -> bytes:
    """Last 20 bytes of the Keccak-256 of the canonical public-key encoding.

    secp256k1 keys hash the 64-byte uncompressed form (the Ethereum rule);
    GT and G1 keys hash their canonical serializations.
    """
    protocol = ProtocolId(protocol)
    if protocol in (ProtocolId.P3, ProtocolId.DKSAP):
        x, y = pub
        enc = int(x).to_bytes(32, "big") + int(y).to_bytes(32, "big")
    elif protocol is ProtocolId.SK:
        enc = suite.g1curve.serialize(pub)
    else:
        enc = suite.gt_serialize(pub)
    return keccak256(enc)[-ADDRESS_BYTES:]


def render_address(addr: bytes) -> str:
    return "0x" + addr.hex()


# ----------------------------------------------------------------------
# Core derivations
# ----------------------------------------------------------------------
def _p3_scalar_from_gt(suite: CurveSuite, gt) -> int:
    b = suite.gt_first_coeff(gt) % int(SECP.n)
    if b == 0:
        raise EphemeralRejectedError("derived scalar is zero; resample the ephemeral key")
    return b


def _parse_R(suite: CurveSuite | None, ann: Announcement):
    data = bytes.fromhex(ann.R[2:]) if ann.R.startswith("0x") else bytes.fromhex(ann.R)
    if ann.protocol is ProtocolId.DKSAP:
        return SECP.deserialize(data)
    return suite.g1curve.deserialize(data)


def sender_derive(suite: CurveSuite | None, meta: MetaAddress, eph: EphemeralKey,
                  cfg: ViewTagConfig):
    """Sender side: announcement (unindexed), stealth public key, address.

    Emits a TagPolicyWarning when the tag configuration costs security; the
    caller decides whether to escalate it.
    """
    proto = meta.protocol
    _require(proto, eph.protocol, "sender_derive")
    policy = tag_policy_check(proto, cfg)
    if not policy.ok:
        warnings.warn(TagPolicyWarning(proto, cfg, policy.effective_bits), stacklevel=2)

    if proto is ProtocolId.DKSAP:
        shared = SECP.mul(eph.r, meta.V)
        h = hash_to_secp_scalar(SECP.serialize(shared))
        pub = SECP.add(meta.K, SECP.mul_gen(h))
        R_hex = "0x" + SECP.serialize(eph.R).hex()
    elif proto is ProtocolId.SK:
        shared = suite.pair_prepared(suite.g2_lines(), suite.g1curve.mul(eph.r, meta.K))  # e(K,g2)^r
        h = suite.hash_to_fr(suite.gt_serialize(shared))
        pub = suite.g1curve.add(meta.K, suite.g1curve.mul_gen(h))
        R_hex = "0x" + suite.g1curve.serialize(eph.R).hex()
    else:
        shared = suite.g1curve.mul(eph.r, meta.V)
        R_hex = "0x" + suite.g1curve.serialize(eph.R).hex()
        if proto is ProtocolId.P1:
            pub = suite.pair(shared, meta.K, check=False)
        elif proto is ProtocolId.P2:
            h = suite.hash_to_fr(suite.g1curve.serialize(shared))
            pub = suite.pair(suite.g1curve.mul_gen(h), meta.K, check=False)
        else:  # p3
            b = _p3_scalar_from_gt(suite, suite.pair_prepared(suite.g2_lines(), shared))
            pub = SECP.mul(b, meta.K)

    tag = compute_view_tag(suite, proto, shared, cfg)
    ann = Announcement(None, proto, meta.curve, R_hex, tag)
    return ann, pub, stealth_address(suite, proto, pub)


def viewer_derive_pub(suite: CurveSuite | None, viewing: ViewingKey, meta: MetaAddress,
                      ann: Announcement):
    """Viewer side: stealth public key and address from the viewing key alone."""
    proto = meta.protocol
    _require(proto, viewing.protocol, "viewer_derive_pub")
    _require(proto, ann.protocol, "viewer_derive_pub")
    if ann.curve != meta.curve:
        raise ProtocolMismatchError(f"announcement curve {ann.curve} != meta curve {meta.curve}")
    R = _parse_R(suite, ann)

    if proto is ProtocolId.DKSAP:
        shared = SECP.mul(viewing.scalar, R)
        h = hash_to_secp_scalar(SECP.serialize(shared))
        pub = SECP.add(meta.K, SECP.mul_gen(h))
    elif proto is ProtocolId.SK:
        S = suite.pair(R, viewing.point, check=False)
        h = suite.hash_to_fr(suite.gt_serialize(S))
        pub = suite.g1curve.add(meta.K, suite.g1curve.mul_gen(h))
    else:
        shared = suite.g1curve.mul(viewing.scalar, R)
        if proto is ProtocolId.P1:
            pub = suite.pair(shared, meta.K, check=False)
        elif proto is ProtocolId.P2:
            h = suite.hash_to_fr(suite.g1curve.serialize(shared))
            pub = suite.pair(suite.g1curve.mul_gen(h), meta.K, check=False)
        else:
            b = _p3_scalar_from_gt(suite, suite.pair_prepared(suite.g2_lines(), shared))
            pub = SECP.mul(b, meta.K)
    return pub, stealth_address(suite, proto, pub)


def recipient_derive_priv(suite: CurveSuite | None, spending: SpendingKey, viewing: ViewingKey,
                          ann: Announcement) -> int:
    """Recipient side: the stealth address private key.

    This is the only operation that consumes the spending key; holders of the
    viewing key alone stop at viewer_derive_pub.
    """
    proto = spending.protocol
    _require(proto, viewing.protocol, "recipient_derive_priv")
    _require(proto, ann.protocol, "recipient_derive_priv")
    k = spending.value

    if proto is ProtocolId.P1:
        return int(mpz(k) * viewing.scalar % suite.r)
    R = _parse_R(suite, ann)
    if proto is ProtocolId.P2:
        shared = suite.g1curve.mul(viewing.scalar, R)
        h = suite.hash_to_fr(suite.g1curve.serialize(shared))
        return int(mpz(k) * h % suite.r)
    if proto is ProtocolId.P3:
        shared = suite.g1curve.mul(viewing.scalar, R)
        b = _p3_scalar_from_gt(suite, suite.pair_prepared(suite.g2_lines(), shared))
        return int(mpz(k) * b % SECP.n)
    if proto is ProtocolId.SK:
        S = suite.pair(R, viewing.point, check=False)
        h = suite.hash_to_fr(suite.gt_serialize(S))
        return int((mpz(k) + h) % suite.r)
    # dksap
    shared = SECP.mul(viewing.scalar, R)
    h = hash_to_secp_scalar(SECP.serialize(shared))
    return int((mpz(k) + h) % SECP.n)


def priv_to_pub(suite: CurveSuite | None, protocol: ProtocolId, priv: int,
                ann: Announcement | None = None):
    """Public key implied by a stealth private key.

    p1 needs the announcement (its public key is e(R, g2)^priv); the other
    protocols are announcement-independent.
    """
    protocol = ProtocolId(protocol)
    if protocol is ProtocolId.P1:
        if ann is None:
            raise ValueError("p1 priv_to_pub requires the announcement")
        R = _parse_R(suite, ann)
        return suite.gt_exp(suite.pair_prepared(suite.g2_lines(), R), priv)
    if protocol is ProtocolId.P2:
        return suite.gt_exp(suite.pair_base(), priv)
    if protocol is ProtocolId.SK:
        return suite.g1curve.mul_gen(priv)
    return SECP.mul_gen(priv)  # p3, dksap


# ----------------------------------------------------------------------
# Vulnerability demonstrations for the two prior pairing-based designs
# ----------------------------------------------------------------------
def demo_attack_ref3(suite: CurveSuite, k: int, v: int, r: int):
    """Symmetric-pairing design flaw: a colluding sender and viewing-key
    holder recover the stealth private key without the spending key.

    Modeled on G1 with g = g1. Returns the recipient's derivation (k*v)*R and
    the collusion derivation (r*v)*K; the flaw is that they are equal.
    """
    g1 = suite.g1curve
    K = g1.mul_gen(k)
    R = g1.mul_gen(r)
    recipient = g1.mul(mpz(k) * v % suite.r, R)
    collusion = g1.mul(mpz(r) * v % suite.r, K)
    return recipient, collusion


def demo_attack_ref4(suite: CurveSuite, k: int, r: int):
    """Single-key design flaw: the sender can compute the stealth private key
    on their own.

    With K = k*g1 and R = r*g1, the recipient's value e(R, k*g2) equals the
    sender's e(r*K, g2). Returns both GT elements; they must be equal.
    """
    g1 = suite.g1curve
    K = g1.mul_gen(k)
    R = g1.mul_gen(r)
    recipient = suite.pair(R, suite.g2curve.mul(k, suite.g2), check=False)
    sender = suite.pair(g1.mul(r, K), suite.g2, check=False)
    return recipient, sender
