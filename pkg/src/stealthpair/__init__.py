"""Pairing-based stealth address protocols with view-tag registry scanning."""

from .keccak import keccak256, keccak256_py
from .keys import (
    MetaAddress,
    ProtocolId,
    ProtocolMismatchError,
    SpendingKey,
    ViewingKey,
    decode_meta,
    encode_meta,
    gen_keys,
)
from .protocols import (
    Announcement,
    EphemeralKey,
    TagPolicyWarning,
    TagVariant,
    ViewTag,
    ViewTagConfig,
    compute_view_tag,
    demo_attack_ref3,
    demo_attack_ref4,
    gen_ephemeral,
    priv_to_pub,
    recipient_derive_priv,
    render_address,
    sender_derive,
    stealth_address,
    tag_policy_check,
    viewer_derive_pub,
)
from .registry import AnnouncementRegistry, MetaRegistry, RegistryFormatError
from .scanner import ScanContext, ScanResult, precompute, scan, scan_with_stats
from .suites import (
    COMPILED_SUITES,
    DEFAULT_SUITE,
    SECP,
    CurveSuite,
    SuiteId,
    UnsupportedSuiteError,
    get_suite,
    hash_to_secp_scalar,
    sample_secp,
)

__version__ = "0.1.0"

__all__ = [
    "Announcement",
    "AnnouncementRegistry",
    "COMPILED_SUITES",
    "CurveSuite",
    "DEFAULT_SUITE",
    "EphemeralKey",
    "MetaAddress",
    "MetaRegistry",
    "ProtocolId",
    "ProtocolMismatchError",
    "RegistryFormatError",
    "SECP",
    "ScanContext",
    "ScanResult",
    "SpendingKey",
    "SuiteId",
    "TagPolicyWarning",
    "TagVariant",
    "UnsupportedSuiteError",
    "ViewTag",
    "ViewTagConfig",
    "ViewingKey",
    "compute_view_tag",
    "decode_meta",
    "demo_attack_ref3",
    "demo_attack_ref4",
    "encode_meta",
    "gen_ephemeral",
    "gen_keys",
    "get_suite",
    "hash_to_secp_scalar",
    "keccak256",
    "keccak256_py",
    "precompute",
    "priv_to_pub",
    "recipient_derive_priv",
    "render_address",
    "sample_secp",
    "scan",
    "scan_with_stats",
    "sender_derive",
    "stealth_address",
    "tag_policy_check",
    "viewer_derive_pub",
    "__version__",
]
