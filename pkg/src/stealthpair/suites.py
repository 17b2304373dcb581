"""Curve suite registry: pairing groups, GT helpers, hashing to scalars.

A suite bundles the G1/G2/GT groups of one pairing-friendly curve together
with the secp256k1 group shared by all suites. BN254 is the default; the two
BLS12 curves are compiled in as well. The remaining ids (BLS24-315, BW6-633,
BW6-761) are recognized but not compiled into this build.
"""

from __future__ import annotations

import random
from enum import Enum

from gmpy2 import isqrt, mpz

from .ec import PrimeCurve
from .keccak import keccak256
from .pairing import PairingEngine, TwistCurve
from .tower import Fp12Tower


class SuiteId(str, Enum):
    BN254 = "bn254"
    BLS12_377 = "bls12-377"
    BLS12_381 = "bls12-381"
    BLS24_315 = "bls24-315"
    BW6_633 = "bw6-633"
    BW6_761 = "bw6-761"


class UnsupportedSuiteError(ValueError):
    """Suite id is recognized but not compiled into this build."""


COMPILED_SUITES = (SuiteId.BN254, SuiteId.BLS12_377, SuiteId.BLS12_381)

# ----------------------------------------------------------------------
# secp256k1 (shared by Protocol 3 and the DKSAP baseline)
# ----------------------------------------------------------------------
SECP = PrimeCurve(
    "secp256k1",
    p=2**256 - 2**32 - 977,
    b=7,
    n=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141,
    gx=0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798,
    gy=0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8,
    cofactor=1,
    sec1=True,
)


class CurveSuite:
    """One pairing-friendly curve with its tower, pairing engine, and GT helpers."""

    def __init__(self, suite_id: SuiteId, g1: PrimeCurve, g2: TwistCurve,
                 tower: Fp12Tower, engine: PairingEngine):
        self.id = suite_id
        self.name = suite_id.value
        self.g1curve = g1
        self.g2curve = g2
        self.tower = tower
        self.engine = engine
        self.p = g1.p
        self.r = g1.n  # shared prime order of G1/G2/GT
        self.g1 = g1.g
        self.g2 = g2.g
        self.secp = SECP
        self._gt_base = None
        self._g2_lines = None
        self._gt_base_table = None

    # -------------------- pairing --------------------
    def pair(self, P, Q, check=True):
        return self.engine.pair(P, Q, check=check)

    def prepare_g2(self, Q):
        return self.engine.prepare(Q)

    def pair_prepared(self, lines, P):
        return self.engine.pair_prepared(lines, P)

    def pair_base(self):
        """Cached e(g1, g2)."""
        if self._gt_base is None:
            self._gt_base = self.engine.pair(self.g1, self.g2, check=False)
        return self._gt_base

    def g2_lines(self):
        """Cached prepared Miller-loop schedule for the generator g2."""
        if self._g2_lines is None:
            self._g2_lines = self.engine.prepare(self.g2)
        return self._g2_lines

    # -------------------- GT --------------------
    @property
    def gt_one(self):
        return self.tower.one12

    def gt_mul(self, a, b):
        return self.tower.m12(a, b)

    def gt_exp(self, a, e):
        """a^e for a in GT (unitary); e is reduced mod r."""
        return self.tower.pow_cyc(a, int(mpz(e) % self.r))

    def gt_inv(self, a):
        # GT elements are unitary, so inversion is conjugation
        return self.tower.conj12(a)

    def gt_exp_base(self, e):
        """e(g1, g2)^e via a lazily built fixed-base window table."""
        e = int(mpz(e) % self.r)
        if e == 0:
            return self.gt_one
        if self._gt_base_table is None:
            w, blocks = 8, (int(self.r).bit_length() + 7) // 8
            table = []
            base = self.pair_base()
            m12 = self.tower.m12
            for _ in range(blocks):
                row = [base]
                for _ in range((1 << w) - 2):
                    row.append(m12(row[-1], base))
                table.append(row)
                base = m12(row[-1], base)
            self._gt_base_table = table
        acc = None
        i = 0
        m12 = self.tower.m12
        while e:
            d = e & 0xFF
            if d:
                t = self._gt_base_table[i][d - 1]
                acc = t if acc is None else m12(acc, t)
            e >>= 8
            i += 1
        return acc

    def gt_serialize(self, a) -> bytes:
        fb = self.g1curve.fel_bytes
        return b"".join(v.to_bytes(fb, "big") for v in self.tower.fp12_to_ints(a))

    def gt_deserialize(self, data: bytes):
        fb = self.g1curve.fel_bytes
        if len(data) != 12 * fb:
            raise ValueError(f"bad GT length {len(data)}")
        vals = [int.from_bytes(data[i * fb:(i + 1) * fb], "big") for i in range(12)]
        el = self.tower.fp12_from_ints(vals)
        # plain power: cyclotomic shortcuts are not yet justified for unvalidated input
        if self.tower.pow12(el, int(self.r)) != self.tower.one12:
            raise ValueError("GT element not in the order-r subgroup")
        return el

    def gt_first_coeff(self, a) -> int:
        """First base-field coefficient of the canonical GT serialization."""
        return int(a[0][0][0])

    # -------------------- scalars --------------------
    def sample_fr(self, rng: random.Random) -> int:
        """Nonzero scalar mod r from a seeded PRNG (oversampled to kill bias)."""
        while True:
            v = rng.getrandbits(2 * int(self.r).bit_length()) % int(self.r)
            if v:
                return v

    def hash_to_fr(self, data: bytes) -> int:
        return int.from_bytes(keccak256(data), "big") % int(self.r)

    def __repr__(self):
        return f"CurveSuite({self.name})"


def sample_secp(rng: random.Random) -> int:
    while True:
        v = rng.getrandbits(512) % int(SECP.n)
        if v:
            return v


def hash_to_secp_scalar(data: bytes) -> int:
    return int.from_bytes(keccak256(data), "big") % int(SECP.n)


# ----------------------------------------------------------------------
# Suite construction
# ----------------------------------------------------------------------
def _twist_cofactor(p, t, r, g2probe):
    """Order of the correct sextic twist divided by r, verified on a probe point.

    The six twists of a j=0 curve over Fp2 have orders p^2 + 1 - tau for tau in
    a CM-derived candidate set; the right one is divisible by r and kills the
    probe point.
    """
    t2 = t * t - 2 * p
    f2sq = (4 * p * p - t2 * t2) // 3
    f = isqrt(f2sq)
    assert f * f == f2sq, "CM discriminant not a square"
    mul_raw, is_none = g2probe
    for tau in (t2, -t2, (t2 + 3 * f) // 2, (t2 - 3 * f) // 2, (-t2 + 3 * f) // 2, (-t2 - 3 * f) // 2):
        n2 = p * p + 1 - tau
        if n2 % r:
            continue
        if is_none(mul_raw(int(n2))):
            return n2 // r
    raise AssertionError("no matching sextic twist order")


def _find_twist_point(tower, b2):
    """Deterministic point on the twist curve: smallest x of the form (k, 1)."""
    k = 0
    while True:
        k += 1
        x = (mpz(k), mpz(1))
        rhs = tower.a2(tower.m2(tower.s2(x), x), b2)
        y = tower.sqrt2(rhs)
        if y is not None:
            return (x, y)


def _build_bn254() -> CurveSuite:
    x = 4965661367192848881
    p = 36 * x**4 + 36 * x**3 + 24 * x**2 + 6 * x + 1
    r = 36 * x**4 + 36 * x**3 + 18 * x**2 + 6 * x + 1
    t = 6 * x**2 + 1
    g1 = PrimeCurve("bn254.g1", p=p, b=3, n=r, gx=1, gy=2, cofactor=1)
    tower = Fp12Tower(p, -1, (9, 1))
    b2 = tower.m2(tower.fp2(3), tower.i2(tower.fp2(9, 1)))  # D-twist: 3/(9+u)
    g2 = TwistCurve("bn254.g2", tower, b2, r, 1)
    # standard generator of the order-r subgroup of the twist
    gen = (
        (mpz(10857046999023057135944570762232829481370756359578518086990519993285655852781),
         mpz(11559732032986387107991004021392285783925812861821192530917403151452391805634)),
        (mpz(8495653923123431417604973247489272438418190587263600148770280649306958101930),
         mpz(4082367875863433681332203403145435568316851327593401208105741076214120093531)),
    )
    if not g2.on_curve(gen) or g2.mul_raw(int(r), gen) is not None:
        raise AssertionError("bn254: bad G2 generator")
    g2.g = gen
    g2.cofactor = int(_twist_cofactor(int(p), int(t), int(r),
                                      (lambda n2: g2.mul_raw(n2, _find_twist_point(tower, b2)), lambda v: v is None)))
    engine = PairingEngine("bn", tower, g1, g2, x)
    return CurveSuite(SuiteId.BN254, g1, g2, tower, engine)


def _build_bls12(suite_id: SuiteId, u: int, qnr: int, xi, b: int) -> CurveSuite:
    r = u**4 - u**2 + 1
    p = ((u - 1) ** 2 * r) // 3 + u
    t = u + 1
    h1 = (p + 1 - t) // r
    tower = Fp12Tower(p, qnr, xi)
    # twist type: M multiplies b by xi, D divides; pick whichever yields order-r points
    name = suite_id.value
    for kind, b2 in (("M", tower.mx(tower.fp2(b))), ("D", tower.m2(tower.fp2(b), tower.i2(tower.fp2(*xi))))):
        g2 = TwistCurve(f"{name}.g2", tower, b2, r, 1)
        probe = _find_twist_point(tower, b2)
        try:
            h2 = _twist_cofactor(int(p), int(t), int(r),
                                 (lambda n2: g2.mul_raw(n2, probe), lambda v: v is None))
        except AssertionError:
            continue
        gen2 = g2.mul_raw(int(h2), probe)
        if gen2 is None or g2.mul_raw(int(r), gen2) is not None:
            continue
        g2.g = gen2
        g2.cofactor = int(h2)
        expected = "M" if tower.xi == (mpz(1), mpz(1)) else "D"
        assert kind == expected, f"{name}: twist kind does not match engine convention"
        break
    else:
        raise AssertionError(f"{name}: no valid twist")
    # deterministic G1 generator: smallest x with a point, cofactor cleared
    from .fields import sqrt_mod_prime

    x0 = 0
    g1 = None
    while g1 is None:
        x0 += 1
        rhs = (x0**3 + b) % p
        y = sqrt_mod_prime(rhs, mpz(p))
        if y is None:
            continue
        g1 = _raw_mul((mpz(x0), min(y, p - y)), int(h1), mpz(p))
    curve = PrimeCurve(f"{name}.g1", p=p, b=b, n=r, gx=int(g1[0]), gy=int(g1[1]), cofactor=int(h1))
    engine = PairingEngine("bls", tower, curve, g2, u)
    return CurveSuite(suite_id, curve, g2, tower, engine)


def _raw_mul(P, k, p):
    """Affine double-and-add on y^2 = x^3 + b, independent of PrimeCurve (bootstrap)."""
    from gmpy2 import invert

    def dbl(P):
        if P is None:
            return None
        x, y = P
        if y == 0:
            return None
        m = 3 * x * x % p * invert(2 * y, p) % p
        x3 = (m * m - 2 * x) % p
        return (x3, (m * (x - x3) - y) % p)

    def add(P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        if P[0] == Q[0]:
            if P[1] == Q[1]:
                return dbl(P)
            return None
        m = (Q[1] - P[1]) * invert(Q[0] - P[0], p) % p
        x3 = (m * m - P[0] - Q[0]) % p
        return (x3, (m * (P[0] - x3) - P[1]) % p)

    R = None
    while k:
        if k & 1:
            R = add(R, P)
        P = dbl(P)
        k >>= 1
    return R


_SUITE_CACHE: dict = {}


def get_suite(suite_id) -> CurveSuite:
    """Suite by id or name string; raises UnsupportedSuiteError for uncompiled ids."""
    if isinstance(suite_id, str):
        suite_id = SuiteId(suite_id.lower())
    if suite_id not in COMPILED_SUITES:
        raise UnsupportedSuiteError(f"suite {suite_id.value} is not compiled into this build")
    if suite_id not in _SUITE_CACHE:
        if suite_id is SuiteId.BN254:
            _SUITE_CACHE[suite_id] = _build_bn254()
        elif suite_id is SuiteId.BLS12_381:
            _SUITE_CACHE[suite_id] = _build_bls12(suite_id, -0xD201000000010000, -1, (1, 1), 4)
        elif suite_id is SuiteId.BLS12_377:
            _SUITE_CACHE[suite_id] = _build_bls12(suite_id, 0x8508C00000000001, -5, (0, 1), 1)
    return _SUITE_CACHE[suite_id]


DEFAULT_SUITE = SuiteId.BN254
