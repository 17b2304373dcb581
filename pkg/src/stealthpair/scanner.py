"""The recipient's registry scan: view-tag filter plus on-match completion.

The per-announcement work is one fixed-scalar multiplication v*R (and one
hash for hash-variant tags); the single-key protocol instead pays a pairing
per announcement since its tag derives from the pairing value. Only matching
announcements run the remaining derivations.

Precomputation follows the recipient/per-announcement split: the scalar v is
window-recoded once, the constant pairing argument (the meta key K for p1/p2,
the suite generator for p3, the viewing point V for sk) has its Miller-loop
line schedule prepared once, and p3 additionally holds a window table for its
meta key K, whose on-match multiplication is not part of the protocol's
per-match operation budget. A context built with precompute=False performs
every step with the plain single-shot operations; results are identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpz

from .ec import DecodeError
from .keccak import keccak256
from .keys import MetaAddress, ProtocolId, SpendingKey, ViewingKey, _require
from .protocols import (
    ADDRESS_BYTES,
    Announcement,
    TagVariant,
    UnsupportedTagVariantError,
    ViewTagConfig,
    stealth_address,
)
from .suites import SECP, CurveSuite


@dataclass
class ScanResult:
    index: int
    pub: object
    address: bytes
    priv: int | None
    tag_matches_total: int = 0  # final tag-match count of the scan, fixed up at the end


@dataclass
class ScanStats:
    examined: int = 0
    skipped_other: int = 0
    tag_matches: int = 0
    results: int = 0


@dataclass
class ScanContext:
    """Read-only recipient state for scanning one registry."""

    suite: CurveSuite | None
    protocol: ProtocolId
    cfg: ViewTagConfig
    viewing: ViewingKey
    meta: MetaAddress
    spending: SpendingKey | None = None
    precomputed: bool = True
    # precomputation products
    _v_recoding: object = field(default=None, repr=False)
    _lines: object = field(default=None, repr=False)
    _k_table: object = field(default=None, repr=False)


def precompute(suite: CurveSuite | None, protocol: ProtocolId, viewing: ViewingKey,
               meta: MetaAddress, cfg: ViewTagConfig, spending: SpendingKey | None = None,
               use_precompute: bool = True) -> ScanContext:
    """Build a scan context; with use_precompute=False every per-announcement
    operation falls back to its single-shot form (for equivalence checks and
    the precomputation benchmarks)."""
    protocol = ProtocolId(protocol)
    _require(protocol, viewing.protocol, "precompute")
    _require(protocol, meta.protocol, "precompute")
    if spending is not None:
        _require(protocol, spending.protocol, "precompute")
    if protocol is ProtocolId.SK and cfg.variant is TagVariant.XCOORD:
        raise UnsupportedTagVariantError("sk scanning requires the hash tag variant")
    ctx = ScanContext(suite, protocol, cfg, viewing, meta, spending, use_precompute)
    if not use_precompute:
        return ctx
    if protocol is ProtocolId.DKSAP:
        ctx._v_recoding = SECP.recode(viewing.scalar)
        return ctx
    if protocol is ProtocolId.SK:
        ctx._lines = suite.prepare_g2(viewing.point)
        return ctx
    ctx._v_recoding = suite.g1curve.recode(viewing.scalar)
    if protocol in (ProtocolId.P1, ProtocolId.P2):
        ctx._lines = suite.prepare_g2(meta.K)
    else:  # p3
        ctx._lines = suite.g2_lines()
        ctx._k_table = SECP.build_window_table(meta.K)
    return ctx


def _tag_value_hex(digest_hex: str, x_hex: str | None, variant: TagVariant, bits: int) -> str:
    nib = bits // 4
    if variant is TagVariant.HASH:
        return digest_hex[:nib]
    return x_hex[:nib]


def scan_with_stats(ctx: ScanContext, registry, from_index: int = 0):
    """Scan announcements from `from_index`; returns (results, stats).

    Announcements for a different protocol or curve are skipped and tallied.
    Tag comparison happens at each announcement's own declared width, so one
    context finds its payments regardless of the widths senders chose.
    """
    suite = ctx.suite
    proto = ctx.protocol
    variant = ctx.cfg.variant
    spending = ctx.spending
    results: list[ScanResult] = []
    stats = ScanStats()

    if proto is ProtocolId.DKSAP:
        curve_name = "secp256k1"
        g1c = SECP
    else:
        curve_name = suite.name
        g1c = suite.g1curve

    k = spending.value if spending is not None else None
    v = ctx.viewing.scalar
    fel = g1c.fel_bytes

    for ann in registry.iterate(from_index):
        if ann.protocol is not proto or ann.curve != curve_name:
            stats.skipped_other += 1
            continue
        stats.examined += 1
        try:
            R = g1c.deserialize(bytes.fromhex(ann.R[2:]))
        except (DecodeError, ValueError) as e:
            raise DecodeError(f"announcement {ann.index}: {e}") from None

        # ---- per-announcement stage ----
        digest = None
        if proto is ProtocolId.SK:
            if ctx.precomputed:
                S = suite.pair_prepared(ctx._lines, R)
            else:
                S = suite.pair(R, ctx.viewing.point, check=False)
            digest = keccak256(suite.gt_serialize(S))
            cand = digest.hex()[: ann.tag.bits // 4]
        else:
            if ctx.precomputed:
                shared = g1c.mul_recoded(ctx._v_recoding, R)
            else:
                shared = g1c.mul(v, R)
            if variant is TagVariant.HASH:
                digest = keccak256(g1c.serialize(shared))
                cand = digest.hex()[: ann.tag.bits // 4]
            else:
                cand = int(shared[0]).to_bytes(fel, "big").hex()[: ann.tag.bits // 4]
        if cand != ann.tag.value:
            continue
        stats.tag_matches += 1

        # ---- on-match stage ----
        priv = None
        if proto is ProtocolId.P1:
            pub = suite.pair_prepared(ctx._lines, shared) if ctx.precomputed \
                else suite.pair(shared, ctx.meta.K, check=False)
            addr = keccak256(suite.gt_serialize(pub))[-ADDRESS_BYTES:]
            if k is not None:
                priv = int(mpz(k) * v % suite.r)
        elif proto is ProtocolId.P2:
            if digest is None:  # xcoord tags still need the hash for the key derivation
                digest = keccak256(g1c.serialize(shared))
            h = int.from_bytes(digest, "big") % int(suite.r)
            hP = g1c.mul(h, suite.g1)
            pub = suite.pair_prepared(ctx._lines, hP) if ctx.precomputed \
                else suite.pair(hP, ctx.meta.K, check=False)
            addr = keccak256(suite.gt_serialize(pub))[-ADDRESS_BYTES:]
            if k is not None:
                priv = int(mpz(k) * h % suite.r)
        elif proto is ProtocolId.P3:
            gt = suite.pair_prepared(ctx._lines, shared) if ctx.precomputed \
                else suite.pair(shared, suite.g2, check=False)
            b = suite.gt_first_coeff(gt) % int(SECP.n)
            if b == 0:
                continue  # degenerate ephemeral; cannot be a real payment
            pub = SECP.mul_window(ctx._k_table, b) if ctx.precomputed else SECP.mul(b, ctx.meta.K)
            addr = keccak256(int(pub[0]).to_bytes(32, "big") + int(pub[1]).to_bytes(32, "big"))[-ADDRESS_BYTES:]
            if k is not None:
                priv = int(mpz(k) * b % SECP.n)
        elif proto is ProtocolId.SK:
            h = int.from_bytes(digest, "big") % int(suite.r)
            pub = g1c.add(ctx.meta.K, g1c.mul(h, suite.g1))
            addr = keccak256(g1c.serialize(pub))[-ADDRESS_BYTES:]
            if k is not None:
                priv = int((mpz(k) + h) % suite.r)
        else:  # dksap
            if digest is None:
                digest = keccak256(SECP.serialize(shared))
            h = int.from_bytes(digest, "big") % int(SECP.n)
            pub = SECP.add(ctx.meta.K, SECP.mul(h, SECP.g))
            addr = keccak256(int(pub[0]).to_bytes(32, "big") + int(pub[1]).to_bytes(32, "big"))[-ADDRESS_BYTES:]
            if k is not None:
                priv = int((mpz(k) + h) % SECP.n)

        results.append(ScanResult(ann.index, pub, addr, priv))

    stats.results = len(results)
    for res in results:
        res.tag_matches_total = stats.tag_matches
    return results, stats


def scan(ctx: ScanContext, registry, from_index: int = 0):
    """Matching announcements with completed derivations, in index order."""
    results, _ = scan_with_stats(ctx, registry, from_index)
    return results
