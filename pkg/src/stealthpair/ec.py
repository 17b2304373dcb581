"""Short-Weierstrass groups y^2 = x^3 + b over prime fields (a = 0 throughout).

One implementation covers every base-field group in the artifact: the G1
groups of the pairing suites and secp256k1. Points are affine (x, y) tuples
of mpz at the API boundary, None for the identity; Jacobian coordinates are
used internally. Scalar multiplication uses wNAF, accelerated by the GLV
endomorphism (x, y) -> (beta*x, y) which every j-invariant-0 curve here
admits; the endomorphism constants are derived and checked at construction.
"""

from __future__ import annotations

from gmpy2 import invert, legendre, mpz

from .fields import batch_inverse, div_round_nearest, sqrt_mod_prime, wnaf

_INF = (mpz(1), mpz(1), mpz(0))

_WINDOW = 5  # wNAF width for variable-point multiplication
_GEN_WINDOW = 8  # fixed-base comb window for the generator


class DecodeError(ValueError):
    """Raised for bytes that do not decode to a valid group element."""


def _lagrange_gauss(r, lam):
    """Shortest basis of the 2D lattice {(x, y): x + y*lam = 0 mod r}."""
    v1 = (r, 0)
    v2 = (-lam, 1)

    def norm(v):
        return v[0] * v[0] + v[1] * v[1]

    while True:
        if norm(v2) < norm(v1):
            v1, v2 = v2, v1
        m = div_round_nearest(v1[0] * v2[0] + v1[1] * v2[1], norm(v1))
        if m == 0:
            return v1, v2
        v2 = (v2[0] - m * v1[0], v2[1] - m * v1[1])


class ScalarRecoding:
    """Precomputed wNAF digit streams for one scalar (reusable across points)."""

    __slots__ = ("window", "digits1", "digits2")

    def __init__(self, window, digits1, digits2):
        self.window = window
        self.digits1 = digits1
        self.digits2 = digits2  # None when GLV is not in play


class PrimeCurve:
    def __init__(self, name, p, b, n, gx, gy, cofactor=1, sec1=False):
        self.name = name
        self.p = mpz(p)
        self.b = mpz(b)
        self.n = mpz(n)  # prime subgroup order
        self.cofactor = int(cofactor)
        self.g = (mpz(gx), mpz(gy))
        self.sec1 = sec1
        self.fel_bytes = (p.bit_length() + 7) // 8
        self.point_bytes = self.fel_bytes + 1 if sec1 else self.fel_bytes
        if not sec1 and p.bit_length() > 8 * self.fel_bytes - 2:
            raise ValueError("field too wide for flag-bit point encoding")
        if not self.on_curve(self.g):
            raise ValueError(f"{name}: generator not on curve")
        self._gen_table = None
        self._glv = None
        self._setup_glv()
        if self.mul(self.n, self.g) is not None:
            raise ValueError(f"{name}: generator order mismatch")

    # ------------------------------------------------------------------
    # Jacobian core (EFD add-2007-bl / dbl-2009-l)
    # ------------------------------------------------------------------
    def jdbl(self, P):
        p = self.p
        X, Y, Z = P
        if not Z:
            return P
        A = X * X % p
        B = Y * Y % p
        C = B * B % p
        t = X + B
        D = 2 * (t * t % p - A - C) % p
        E = 3 * A % p
        F = E * E % p
        X3 = (F - 2 * D) % p
        Y3 = (E * (D - X3) - 8 * C) % p
        Z3 = 2 * Y * Z % p
        return (X3, Y3, Z3)

    def jadd(self, P, Q):
        p = self.p
        X1, Y1, Z1 = P
        X2, Y2, Z2 = Q
        if not Z1:
            return Q
        if not Z2:
            return P
        Z1Z1 = Z1 * Z1 % p
        Z2Z2 = Z2 * Z2 % p
        U1 = X1 * Z2Z2 % p
        U2 = X2 * Z1Z1 % p
        S1 = Y1 * Z2 % p * Z2Z2 % p
        S2 = Y2 * Z1 % p * Z1Z1 % p
        if U1 == U2:
            if S1 != S2:
                return _INF
            return self.jdbl(P)
        H = (U2 - U1) % p
        I = 4 * H * H % p
        J = H * I % p
        rr = 2 * (S2 - S1) % p
        V = U1 * I % p
        X3 = (rr * rr - J - 2 * V) % p
        Y3 = (rr * (V - X3) - 2 * S1 * J) % p
        t = Z1 + Z2
        Z3 = (t * t % p - Z1Z1 - Z2Z2) * H % p
        return (X3, Y3, Z3)

    def jadd_affine(self, P, Q):
        """Mixed addition with affine Q (EFD madd-2007-bl)."""
        p = self.p
        X1, Y1, Z1 = P
        if not Z1:
            return (Q[0], Q[1], mpz(1))
        X2, Y2 = Q
        Z1Z1 = Z1 * Z1 % p
        U2 = X2 * Z1Z1 % p
        S2 = Y2 * Z1 % p * Z1Z1 % p
        if U2 == X1:
            if S2 != Y1:
                return _INF
            return self.jdbl(P)
        H = (U2 - X1) % p
        HH = H * H % p
        I = 4 * HH % p
        J = H * I % p
        rr = 2 * (S2 - Y1) % p
        V = X1 * I % p
        X3 = (rr * rr - J - 2 * V) % p
        Y3 = (rr * (V - X3) - 2 * Y1 * J) % p
        t = Z1 + H
        Z3 = (t * t % p - Z1Z1 - HH) % p
        return (X3, Y3, Z3)

    def to_affine(self, P):
        X, Y, Z = P
        if not Z:
            return None
        p = self.p
        zi = invert(Z, p)
        zi2 = zi * zi % p
        return (X * zi2 % p, Y * zi2 % p * zi % p)

    def batch_to_affine(self, points):
        """Affine forms of nonzero Jacobian points via one shared inversion."""
        p = self.p
        zs = [P[2] for P in points]
        zis = batch_inverse(zs, p)
        out = []
        for (X, Y, _), zi in zip(points, zis):
            zi2 = zi * zi % p
            out.append((X * zi2 % p, Y * zi2 % p * zi % p))
        return out

    # ------------------------------------------------------------------
    # Public affine group API
    # ------------------------------------------------------------------
    def on_curve(self, P):
        if P is None:
            return True
        x, y = P
        p = self.p
        return (y * y - (x * x % p * x + self.b)) % p == 0

    def neg(self, P):
        if P is None:
            return None
        return (P[0], (-P[1]) % self.p)

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        R = self.jadd_affine((P[0], P[1], mpz(1)), Q)
        return self.to_affine(R)

    def eq(self, P, Q):
        return P == Q

    def in_subgroup(self, P):
        if P is None:
            return True
        if not self.on_curve(P):
            return False
        if self.cofactor == 1:
            return True
        return self.mul(self.n, P) is None

    # ------------------------------------------------------------------
    # Scalar multiplication
    # ------------------------------------------------------------------
    def _setup_glv(self):
        p, n = self.p, self.n
        if p % 3 != 1 or n % 3 != 1:
            return
        sp = sqrt_mod_prime(-3, p)
        sn = sqrt_mod_prime(-3, n)
        if sp is None or sn is None:
            return
        inv2p = invert(2, p)
        inv2n = invert(2, n)
        betas = [(-1 + sp) * inv2p % p, (-1 - sp) * inv2p % p]
        lams = [(-1 + sn) * inv2n % n, (-1 - sn) * inv2n % n]
        gx, gy = self.g
        for beta in betas:
            endo = (gx * beta % p, gy)
            for lam in lams:
                if self._mul_wnaf(lam, self.g) == endo:
                    v1, v2 = _lagrange_gauss(int(n), int(lam))
                    det = v1[0] * v2[1] - v1[1] * v2[0]
                    self._glv = (beta, lam, v1, v2, det)
                    return

    def glv_decompose(self, k):
        """Split k mod n into (k1, k2) with k = k1 + k2*lam and |ki| ~ sqrt(n)."""
        _, _, v1, v2, det = self._glv
        c1 = div_round_nearest(k * v2[1], det)
        c2 = div_round_nearest(-k * v1[1], det)
        k1 = k - c1 * v1[0] - c2 * v2[0]
        k2 = -c1 * v1[1] - c2 * v2[1]
        return k1, k2

    def recode(self, k):
        """Window-recode a scalar once so repeated multiplications skip it."""
        k = mpz(k) % self.n
        if self._glv is not None:
            k1, k2 = self.glv_decompose(k)
            d1 = wnaf(abs(k1), _WINDOW)
            d2 = wnaf(abs(k2), _WINDOW)
            if k1 < 0:
                d1 = [-d for d in d1]
            if k2 < 0:
                d2 = [-d for d in d2]
            return ScalarRecoding(_WINDOW, d1, d2)
        return ScalarRecoding(_WINDOW, wnaf(int(k), _WINDOW), None)

    def _odd_multiples(self, P):
        """Affine table [P, 3P, 5P, ..., (2^(w-1)-1)P]."""
        count = 1 << (_WINDOW - 2)
        P2 = self.jdbl((P[0], P[1], mpz(1)))
        tab = [(P[0], P[1], mpz(1))]
        for _ in range(count - 1):
            tab.append(self.jadd(tab[-1], P2))
        return self.batch_to_affine(tab)

    def mul_recoded(self, rec, P):
        if P is None:
            return None
        p = self.p
        tab1 = self._odd_multiples(P)
        if rec.digits2 is not None:
            beta = self._glv[0]
            tab2 = [(x * beta % p, y) for x, y in tab1]
            streams = (rec.digits1, rec.digits2)
            tables = (tab1, tab2)
        else:
            streams = (rec.digits1,)
            tables = (tab1,)
        L = max((len(s) for s in streams), default=0)
        R = _INF
        for i in range(L - 1, -1, -1):
            R = self.jdbl(R)
            for s, tab in zip(streams, tables):
                if i < len(s) and s[i]:
                    d = s[i]
                    if d > 0:
                        R = self.jadd_affine(R, tab[(d - 1) >> 1])
                    else:
                        Q = tab[(-d - 1) >> 1]
                        R = self.jadd_affine(R, (Q[0], (-Q[1]) % p))
        return self.to_affine(R)

    def _mul_wnaf(self, k, P):
        """Plain wNAF ladder, no endomorphism (used before GLV is validated)."""
        digits = wnaf(int(k), _WINDOW)
        tab = self._odd_multiples(P)
        p = self.p
        R = _INF
        for i in range(len(digits) - 1, -1, -1):
            R = self.jdbl(R)
            d = digits[i]
            if d > 0:
                R = self.jadd_affine(R, tab[(d - 1) >> 1])
            elif d < 0:
                Q = tab[(-d - 1) >> 1]
                R = self.jadd_affine(R, (Q[0], (-Q[1]) % p))
        return self.to_affine(R)

    def mul(self, k, P):
        """k*P for affine P (None for identity); k is reduced mod the group order."""
        if P is None:
            return None
        k = mpz(k) % self.n
        if k == 0:
            return None
        return self.mul_recoded(self.recode(k), P)

    # ------------------------------------------------------------------
    # Fixed-base multiplication for the generator
    # ------------------------------------------------------------------
    def build_window_table(self, P):
        """Fixed-base window table for P: table[j][d-1] = d * 2^(w*j) * P."""
        blocks = (int(self.n).bit_length() + _GEN_WINDOW - 1) // _GEN_WINDOW
        table = []
        base = (P[0], P[1], mpz(1))  # 2^(w*j) * P for block j
        for _ in range(blocks):
            base_aff = self.to_affine(base)
            row = [base]
            for _ in range((1 << _GEN_WINDOW) - 2):
                row.append(self.jadd_affine(row[-1], base_aff))
            table.append(self.batch_to_affine(row))
            base = self.jadd_affine(row[-1], base_aff)
        return table

    def mul_window(self, table, k):
        """k*P for a point with a prebuilt window table."""
        k = mpz(k) % self.n
        if k == 0:
            return None
        mask = (1 << _GEN_WINDOW) - 1
        R = _INF
        i = 0
        kk = int(k)
        while kk:
            d = kk & mask
            if d:
                R = self.jadd_affine(R, table[i][d - 1])
            kk >>= _GEN_WINDOW
            i += 1
        return self.to_affine(R)

    def mul_gen(self, k):
        """k*G using a lazily built fixed-base window table."""
        if self._gen_table is None:
            self._gen_table = self.build_window_table(self.g)
        return self.mul_window(self._gen_table, k)

    # ------------------------------------------------------------------
    # Serialization (compressed)
    # ------------------------------------------------------------------
    def serialize(self, P) -> bytes:
        fb = self.fel_bytes
        if self.sec1:
            if P is None:
                return b"\x00" * (fb + 1)
            x, y = P
            return bytes([0x02 | int(y & 1)]) + int(x).to_bytes(fb, "big")
        if P is None:
            return bytes([0x40]) + b"\x00" * (fb - 1)
        x, y = P
        buf = bytearray(int(x).to_bytes(fb, "big"))
        buf[0] |= 0x80
        if 2 * y > self.p:
            buf[0] |= 0x40
        return bytes(buf)

    def deserialize(self, data: bytes):
        fb = self.fel_bytes
        if self.sec1:
            if len(data) != fb + 1:
                raise DecodeError(f"{self.name}: bad point length {len(data)}")
            if data == b"\x00" * (fb + 1):
                return None
            prefix = data[0]
            if prefix not in (0x02, 0x03):
                raise DecodeError(f"{self.name}: bad SEC1 prefix {prefix:#x}")
            x = mpz(int.from_bytes(data[1:], "big"))
            if x >= self.p:
                raise DecodeError(f"{self.name}: x out of range")
            y = self._lift_x(x)
            if int(y & 1) != (prefix & 1):
                y = self.p - y
            P = (x, y)
        else:
            if len(data) != fb:
                raise DecodeError(f"{self.name}: bad point length {len(data)}")
            flags = data[0] & 0xC0
            if flags == 0x40:
                if any(data[1:]) or (data[0] & 0x3F):
                    raise DecodeError(f"{self.name}: malformed infinity encoding")
                return None
            if not flags & 0x80:
                raise DecodeError(f"{self.name}: compression flag missing")
            buf = bytearray(data)
            buf[0] &= 0x3F
            x = mpz(int.from_bytes(bytes(buf), "big"))
            if x >= self.p:
                raise DecodeError(f"{self.name}: x out of range")
            y = self._lift_x(x)
            if bool(flags & 0x40) != (2 * y > self.p):
                y = self.p - y
            P = (x, y)
        if not self.in_subgroup(P):
            raise DecodeError(f"{self.name}: point not in prime-order subgroup")
        return P

    def _lift_x(self, x):
        p = self.p
        rhs = (x * x % p * x + self.b) % p
        y = sqrt_mod_prime(rhs, p)
        if y is None:
            raise DecodeError(f"{self.name}: x not on curve")
        return y

    def random_point(self, rng):
        """rng-driven point of prime order (for tests)."""
        return self.mul_gen(rng.randrange(1, int(self.n)))

    def __repr__(self):
        return f"PrimeCurve({self.name})"
