"""Command-line front end: key management, registry operations, scanning,
benchmarks, and the vulnerability demos."""

from __future__ import annotations

import argparse
import json
import random
import secrets
import sys
import warnings
from pathlib import Path

from .bench import BenchConfig, bench_ops, bench_scan
from .keys import MetaAddress, ProtocolId, SpendingKey, ViewingKey, decode_meta, gen_keys
from .protocols import (
    TagPolicyWarning,
    TagVariant,
    ViewTagConfig,
    demo_attack_ref3,
    demo_attack_ref4,
    gen_ephemeral,
    render_address,
    sender_derive,
)
from .registry import AnnouncementRegistry, MetaRegistry
from .scanner import precompute, scan_with_stats
from .suites import SECP, get_suite

META_FILE = "metas.json"
ANN_FILE = "announcements.jsonl"


class CliError(Exception):
    pass


def _rng(seed):
    return random.Random(seed) if seed is not None else random.Random(secrets.randbits(128))


def _suite_for(proto: ProtocolId, curve: str):
    return None if proto is ProtocolId.DKSAP else get_suite(curve)


def _registry_paths(directory):
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    return d / META_FILE, d / ANN_FILE


# ----------------------------------------------------------------------
# keygen
# ----------------------------------------------------------------------
def _cmd_keygen(args):
    proto = ProtocolId(args.proto)
    suite = _suite_for(proto, args.curve)
    spend, view, meta = gen_keys(proto, _rng(args.seed), suite)
    from .keys import encode_meta

    record = {"proto": proto.value, "curve": meta.curve, "spend": hex(spend.value)}
    if view.scalar is not None:
        record["view"] = hex(view.scalar)
    record["meta"] = encode_meta(meta)
    if args.out:
        Path(args.out).write_text(json.dumps(record, indent=2) + "\n")
    print(record["meta"])
    return 0


def _load_keys(path):
    rec = json.loads(Path(path).read_text())
    proto = ProtocolId(rec["proto"])
    suite = _suite_for(proto, rec["curve"])
    meta = decode_meta(rec["meta"])
    spend = SpendingKey(proto, int(rec["spend"], 16)) if "spend" in rec else None
    if proto is ProtocolId.SK:
        if spend is None:
            raise CliError("sk key file must contain the spending key")
        view = ViewingKey(proto, None, suite.g2curve.mul(spend.value, suite.g2))
    else:
        if "view" not in rec:
            raise CliError("key file missing the viewing key")
        view = ViewingKey(proto, int(rec["view"], 16), None)
    return proto, suite, spend, view, meta


# ----------------------------------------------------------------------
# register / send / scan
# ----------------------------------------------------------------------
def _cmd_register(args):
    meta = decode_meta(args.meta)
    meta_path, _ = _registry_paths(args.registry)
    MetaRegistry(meta_path).register(args.name, meta)
    print(f"registered {meta.protocol.value}/{meta.curve} meta-address for {args.name}")
    return 0


def _cmd_send(args):
    proto = ProtocolId(args.proto)
    meta_path, ann_path = _registry_paths(args.registry)
    metas = MetaRegistry(meta_path).lookup(args.name)
    matching = [m for m in metas if m.protocol is proto]
    if args.curve:
        matching = [m for m in matching if m.curve == args.curve]
    if not matching:
        raise CliError(f"{args.name} has no {proto.value} meta-address registered")
    meta = matching[-1]
    suite = _suite_for(proto, meta.curve)
    cfg = ViewTagConfig(TagVariant(args.tag_variant), args.tag_bits)
    eph = gen_ephemeral(proto, _rng(args.seed), suite)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TagPolicyWarning)
        ann, _pub, addr = sender_derive(suite, meta, eph, cfg)
    for w in caught:
        if issubclass(w.category, TagPolicyWarning):
            print(f"warning: effective security {w.message.effective_bits} bits "
                  f"({w.message})", file=sys.stderr)
    with AnnouncementRegistry(ann_path) as reg:
        idx = reg.append(ann)
    print(json.dumps({"idx": idx, "address": render_address(addr)}))
    return 0


def _cmd_scan(args):
    proto, suite, spend, view, meta = _load_keys(args.keys)
    _, ann_path = _registry_paths(args.registry)
    cfg = ViewTagConfig(TagVariant(args.tag_variant), args.tag_bits)
    ctx = precompute(suite, proto, view, meta, cfg, spending=spend,
                     use_precompute=not args.no_precompute)
    with AnnouncementRegistry(ann_path) as reg:
        results, stats = scan_with_stats(ctx, reg, args.from_index)
    for res in results:
        rec = {"idx": res.index, "address": render_address(res.address),
               "tag_matches_total": res.tag_matches_total}
        if res.priv is not None:
            rec["priv"] = hex(res.priv)
        print(json.dumps(rec))
    print(f"scanned {stats.examined} announcements "
          f"({stats.skipped_other} skipped, {stats.tag_matches} tag matches, "
          f"{stats.results} results)", file=sys.stderr)
    return 0


# ----------------------------------------------------------------------
# bench / demo
# ----------------------------------------------------------------------
def _cmd_bench(args):
    cfg = BenchConfig() if not args.config else BenchConfig.from_json(json.loads(Path(args.config).read_text()))
    if args.which == "scan":
        report = bench_scan(cfg)
        text = report.scan_csv()
    else:
        report = bench_ops(cfg)
        text = report.ops_csv()
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_demo(args):
    suite = get_suite(args.curve)
    rng = _rng(args.seed)
    r_ord = int(suite.r)
    k, v, r = (rng.randrange(1, r_ord) for _ in range(3))
    lhs, rhs = demo_attack_ref3(suite, k, v, r)
    print("[symmetric-pairing design] recipient (k*v)*R vs sender+viewer (r*v)*K:")
    print(f"  recipient: 0x{suite.g1curve.serialize(lhs).hex()}")
    print(f"  collusion: 0x{suite.g1curve.serialize(rhs).hex()}")
    print(f"  equal: {lhs == rhs}")
    lhs4, rhs4 = demo_attack_ref4(suite, k, r)
    h1 = suite.gt_serialize(lhs4).hex()
    h2 = suite.gt_serialize(rhs4).hex()
    print("[single-key design] recipient e(R, k*g2) vs sender e(r*K, g2):")
    print(f"  recipient: 0x{h1[:32]}..{h1[-8:]}")
    print(f"  sender:    0x{h2[:32]}..{h2[-8:]}")
    print(f"  equal: {lhs4 == rhs4}")
    return 0 if (lhs == rhs and lhs4 == rhs4) else 1


# ----------------------------------------------------------------------
def build_parser():
    ap = argparse.ArgumentParser(prog="stealthpair",
                                 description="stealth address protocols over pairing-friendly curves")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("keygen", help="generate keys and a stealth meta-address")
    p.add_argument("--proto", required=True, choices=[x.value for x in ProtocolId])
    p.add_argument("--curve", default="bn254")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="write the private key file here")
    p.set_defaults(fn=_cmd_keygen)

    p = sub.add_parser("register", help="register a meta-address under a name")
    p.add_argument("--name", required=True)
    p.add_argument("--meta", required=True, help="sma:<proto>:<curve>:<K>[:<V>]")
    p.add_argument("--registry", required=True)
    p.set_defaults(fn=_cmd_register)

    p = sub.add_parser("send", help="derive a stealth address and publish the announcement")
    p.add_argument("--name", required=True)
    p.add_argument("--proto", required=True, choices=[x.value for x in ProtocolId])
    p.add_argument("--curve", default=None)
    p.add_argument("--tag-variant", default="hash", choices=[x.value for x in TagVariant])
    p.add_argument("--tag-bits", type=int, default=8)
    p.add_argument("--registry", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=_cmd_send)

    p = sub.add_parser("scan", help="scan the announcement registry with your keys")
    p.add_argument("--keys", required=True)
    p.add_argument("--registry", required=True)
    p.add_argument("--from", dest="from_index", type=int, default=0)
    p.add_argument("--tag-variant", default="hash", choices=[x.value for x in TagVariant])
    p.add_argument("--tag-bits", type=int, default=8)
    p.add_argument("--no-precompute", action="store_true")
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("bench", help="run benchmarks, emit CSV")
    p.add_argument("which", choices=["scan", "ops"])
    p.add_argument("--config", default=None, help="JSON benchmark configuration")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("demo", help="demonstrations")
    p.add_argument("which", choices=["attacks"])
    p.add_argument("--curve", default="bn254")
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(fn=_cmd_demo)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, KeyError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
