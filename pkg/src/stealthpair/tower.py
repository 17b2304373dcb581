"""Fp2/Fp6/Fp12 tower arithmetic for the pairing suites.

Tower shape: Fp2 = Fp[u]/(u^2 - qnr), Fp6 = Fp2[v]/(v^3 - xi),
Fp12 = Fp6[w]/(w^2 - v). Elements are nested tuples of mpz; an Fp12 value is
((a0, a1, a2), (b0, b1, b2)) with Fp2 lanes ordered (1, v, v^2, w, v*w, v^2*w).

Everything is built by `Fp12Tower.__init__` as closures over the field
constants so the inner loops run on locals only.
"""

from __future__ import annotations

from gmpy2 import invert, mpz

from .fields import naf, sqrt_mod_prime, wnaf


class Fp12Tower:
    def __init__(self, p, qnr, xi):
        p = mpz(p)
        qnr = int(qnr)  # small negative integer, u^2 = qnr
        xi0, xi1 = int(xi[0]), int(xi[1])  # small integers, v^3 = xi0 + xi1*u
        self.p = p
        self.qnr = qnr
        self.xi = (mpz(xi0), mpz(xi1))

        zero2 = (mpz(0), mpz(0))
        one2 = (mpz(1), mpz(0))
        self.zero2, self.one2 = zero2, one2

        # ---------------- Fp2 ----------------
        def m2(a, b):
            a0, a1 = a
            b0, b1 = b
            m0 = a0 * b0 % p
            m1 = a1 * b1 % p
            return ((m0 + qnr * m1) % p, ((a0 + a1) * (b0 + b1) - m0 - m1) % p)

        def s2(a):
            a0, a1 = a
            m = a0 * a1 % p
            return (((a0 + a1) * (a0 + qnr * a1) - m - qnr * m) % p, 2 * m % p)

        def a2(a, b):
            return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

        def sub2(a, b):
            return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

        def n2(a):
            return ((-a[0]) % p, (-a[1]) % p)

        def c2(a):
            return (a[0], (-a[1]) % p)

        def i2(a):
            a0, a1 = a
            ni = invert((a0 * a0 - qnr * a1 * a1) % p, p)
            return (a0 * ni % p, (-a1) * ni % p)

        def mx(a):
            """multiply by xi."""
            a0, a1 = a
            return ((xi0 * a0 + qnr * xi1 * a1) % p, (xi0 * a1 + xi1 * a0) % p)

        def m2_scalar(a, s):
            return (a[0] * s % p, a[1] * s % p)

        def pow2(a, e):
            r = one2
            for bit in bin(e)[2:]:
                r = s2(r)
                if bit == "1":
                    r = m2(r, a)
            return r

        # ---------------- Fp6 ----------------
        # Karatsuba over three Fp2 lanes with all Fp2 arithmetic unrolled;
        # this kernel carries most of the pairing cost.
        def m6(A, B):
            (a0a, a0b), (a1a, a1b), (a2a, a2b) = A
            (b0a, b0b), (b1a, b1b), (b2a, b2b) = B
            # t_i = a_i * b_i
            m = a0a * b0b + a0b * b0a
            t0a = (a0a * b0a + qnr * (a0b * b0b)) % p
            t0b = m % p
            m = a1a * b1b + a1b * b1a
            t1a = (a1a * b1a + qnr * (a1b * b1b)) % p
            t1b = m % p
            m = a2a * b2b + a2b * b2a
            t2a = (a2a * b2a + qnr * (a2b * b2b)) % p
            t2b = m % p
            # (a1+a2)(b1+b2) - t1 - t2
            sa, sb = a1a + a2a, a1b + a2b
            ta, tb = b1a + b2a, b1b + b2b
            u0a = (sa * ta + qnr * (sb * tb) - t1a - t2a) % p
            u0b = (sa * tb + sb * ta - t1b - t2b) % p
            # (a0+a1)(b0+b1) - t0 - t1
            sa, sb = a0a + a1a, a0b + a1b
            ta, tb = b0a + b1a, b0b + b1b
            u1a = (sa * ta + qnr * (sb * tb) - t0a - t1a) % p
            u1b = (sa * tb + sb * ta - t0b - t1b) % p
            # (a0+a2)(b0+b2) - t0 - t2
            sa, sb = a0a + a2a, a0b + a2b
            ta, tb = b0a + b2a, b0b + b2b
            u2a = (sa * ta + qnr * (sb * tb) - t0a - t2a) % p
            u2b = (sa * tb + sb * ta - t0b - t2b) % p
            c0 = ((t0a + xi0 * u0a + qnr * xi1 * u0b) % p, (t0b + xi0 * u0b + xi1 * u0a) % p)
            c1 = ((u1a + xi0 * t2a + qnr * xi1 * t2b) % p, (u1b + xi0 * t2b + xi1 * t2a) % p)
            c2_ = ((u2a + t1a) % p, (u2b + t1b) % p)
            return (c0, c1, c2_)

        def a6(A, B):
            return (a2(A[0], B[0]), a2(A[1], B[1]), a2(A[2], B[2]))

        def sub6(A, B):
            return (sub2(A[0], B[0]), sub2(A[1], B[1]), sub2(A[2], B[2]))

        def n6(A):
            return (n2(A[0]), n2(A[1]), n2(A[2]))

        def mv6(A):
            return (mx(A[2]), A[0], A[1])

        def i6(A):
            a0, a1, a2_ = A
            t0 = sub2(s2(a0), mx(m2(a1, a2_)))
            t1 = sub2(mx(s2(a2_)), m2(a0, a1))
            t2 = sub2(s2(a1), m2(a0, a2_))
            d = a2(m2(a0, t0), mx(a2(m2(a2_, t1), m2(a1, t2))))
            di = i2(d)
            return (m2(t0, di), m2(t1, di), m2(t2, di))

        # ---------------- Fp12 ----------------
        def m12(A, B):
            A0, A1 = A
            B0, B1 = B
            t0 = m6(A0, B0)
            t1 = m6(A1, B1)
            return (a6(t0, mv6(t1)), sub6(sub6(m6(a6(A0, A1), a6(B0, B1)), t0), t1))

        def s12(A):
            A0, A1 = A
            t = m6(A0, A1)
            c0 = sub6(sub6(m6(a6(A0, A1), a6(A0, mv6(A1))), t), mv6(t))
            return (c0, a6(t, t))

        one12 = ((one2, zero2, zero2), (zero2, zero2, zero2))

        def conj12(A):
            return (A[0], n6(A[1]))

        def i12(A):
            A0, A1 = A
            ti = i6(sub6(m6(A0, A0), mv6(m6(A1, A1))))
            return (m6(A0, ti), n6(m6(A1, ti)))

        def pow12(A, e):
            """Plain square-and-multiply; reference path for oracles."""
            if e < 0:
                A = i12(A)
                e = -e
            r = one12
            for bit in bin(e)[2:]:
                r = s12(r)
                if bit == "1":
                    r = m12(r, A)
            return r

        # Granger-Scott squaring, valid in the cyclotomic subgroup only.
        # Written against raw coefficients: it runs a few hundred times per
        # pairing, so the Fp2 helper-call overhead matters.
        def gs_sqr(A):
            (x0a, x0b), (x1a, x1b), (x2a, x2b) = A[0]
            (x3a, x3b), (x4a, x4b), (x5a, x5b) = A[1]

            # t = x^2 pieces (Fp2 squarings, karatsuba form)
            m = x4a * x4b % p
            t0a = ((x4a + x4b) * (x4a + qnr * x4b) - m - qnr * m) % p
            t0b = 2 * m % p
            m = x0a * x0b % p
            t1a = ((x0a + x0b) * (x0a + qnr * x0b) - m - qnr * m) % p
            t1b = 2 * m % p
            sa, sb = x4a + x0a, x4b + x0b
            m = sa * sb % p
            t6a = ((sa + sb) * (sa + qnr * sb) - m - qnr * m - t0a - t1a) % p
            t6b = (2 * m - t0b - t1b) % p
            m = x2a * x2b % p
            t2a = ((x2a + x2b) * (x2a + qnr * x2b) - m - qnr * m) % p
            t2b = 2 * m % p
            m = x3a * x3b % p
            t3a = ((x3a + x3b) * (x3a + qnr * x3b) - m - qnr * m) % p
            t3b = 2 * m % p
            sa, sb = x2a + x3a, x2b + x3b
            m = sa * sb % p
            t7a = ((sa + sb) * (sa + qnr * sb) - m - qnr * m - t2a - t3a) % p
            t7b = (2 * m - t2b - t3b) % p
            m = x5a * x5b % p
            t4a = ((x5a + x5b) * (x5a + qnr * x5b) - m - qnr * m) % p
            t4b = 2 * m % p
            m = x1a * x1b % p
            t5a = ((x1a + x1b) * (x1a + qnr * x1b) - m - qnr * m) % p
            t5b = 2 * m % p
            sa, sb = x5a + x1a, x5b + x1b
            m = sa * sb % p
            u8a = ((sa + sb) * (sa + qnr * sb) - m - qnr * m - t4a - t5a) % p
            u8b = (2 * m - t4b - t5b) % p
            t8a = (xi0 * u8a + qnr * xi1 * u8b) % p
            t8b = (xi0 * u8b + xi1 * u8a) % p

            t0a, t0b = (xi0 * t0a + qnr * xi1 * t0b + t1a) % p, (xi0 * t0b + xi1 * t0a + t1b) % p
            t2a, t2b = (xi0 * t2a + qnr * xi1 * t2b + t3a) % p, (xi0 * t2b + xi1 * t2a + t3b) % p
            t4a, t4b = (xi0 * t4a + qnr * xi1 * t4b + t5a) % p, (xi0 * t4b + xi1 * t4a + t5b) % p

            return (
                ((3 * t0a - 2 * x0a) % p, (3 * t0b - 2 * x0b) % p),
                ((3 * t2a - 2 * x1a) % p, (3 * t2b - 2 * x1b) % p),
                ((3 * t4a - 2 * x2a) % p, (3 * t4b - 2 * x2b) % p),
            ), (
                ((3 * t8a + 2 * x3a) % p, (3 * t8b + 2 * x3b) % p),
                ((3 * t6a + 2 * x4a) % p, (3 * t6b + 2 * x4b) % p),
                ((3 * t7a + 2 * x5a) % p, (3 * t7b + 2 * x5b) % p),
            )

        def pow_cyc(A, e):
            """Unitary exponentiation: wNAF digits, inverse via conjugation."""
            if e == 0:
                return one12
            if e < 0:
                A = conj12(A)
                e = -e
            digits = wnaf(int(e), 4)
            # odd powers of A, built only as far as the digits require
            need = (max(abs(d) for d in digits) + 1) >> 1
            tab = [A]
            if need > 1:
                sq = gs_sqr(A)
                for _ in range(need - 1):
                    tab.append(m12(tab[-1], sq))
            r = one12
            started = False
            for i in range(len(digits) - 1, -1, -1):
                if started:
                    r = gs_sqr(r)
                d = digits[i]
                if d:
                    t = tab[(d - 1) >> 1] if d > 0 else conj12(tab[(-d - 1) >> 1])
                    r = m12(r, t) if started else t
                    started = True
            return r

        # Frobenius x -> x^p: conjugate each lane, scale lane j by xi^(e_j (p-1)/6)
        lane_exps = (0, 2, 4, 1, 3, 5)
        frob_consts = tuple(pow2(self.xi, int((p - 1) * e // 6)) for e in lane_exps)

        def frob12(A, k=1):
            for _ in range(k):
                (x0, x1, x2), (x3, x4, x5) = A
                A = (
                    (c2(x0), m2(c2(x1), frob_consts[1]), m2(c2(x2), frob_consts[2])),
                    (m2(c2(x3), frob_consts[3]), m2(c2(x4), frob_consts[4]), m2(c2(x5), frob_consts[5])),
                )
            return A

        # Sparse products against Miller-loop line values, fully unrolled.
        # D-twist line: yP + (-m xP) w + (m xT - yT) v w  -> lanes (0, 3, 4)
        def mul_line_d(F, yP, L3, L4):
            (a0a, a0b), (a1a, a1b), (a2a, a2b) = F[0]
            (b0a, b0b), (b1a, b1b), (b2a, b2b) = F[1]
            c3a, c3b = L3
            c4a, c4b = L4
            # A*C, C = (yP, 0, 0) with yP in Fp
            ac0a, ac0b = a0a * yP % p, a0b * yP % p
            ac1a, ac1b = a1a * yP % p, a1b * yP % p
            ac2a, ac2b = a2a * yP % p, a2b * yP % p
            # B*D, D = (L3, L4, 0)
            m0a = (b0a * c3a + qnr * (b0b * c3b)) % p
            m0b = (b0a * c3b + b0b * c3a) % p
            m1a = (b1a * c4a + qnr * (b1b * c4b)) % p
            m1b = (b1a * c4b + b1b * c4a) % p
            sa, sb = b0a + b1a, b0b + b1b
            ta, tb = c3a + c4a, c3b + c4b
            bd1a = (sa * ta + qnr * (sb * tb) - m0a - m1a) % p
            bd1b = (sa * tb + sb * ta - m0b - m1b) % p
            u2a = (b2a * c4a + qnr * (b2b * c4b)) % p
            u2b = (b2a * c4b + b2b * c4a) % p
            bd0a = (m0a + xi0 * u2a + qnr * xi1 * u2b) % p
            bd0b = (m0b + xi0 * u2b + xi1 * u2a) % p
            bd2a = (m1a + b2a * c3a + qnr * (b2b * c3b)) % p
            bd2b = (m1b + b2a * c3b + b2b * c3a) % p
            # (A+B)*(C+D), C+D = (yP + L3, L4, 0)
            s0a, s0b = a0a + b0a, a0b + b0b
            s1a, s1b = a1a + b1a, a1b + b1b
            s2a, s2b = a2a + b2a, a2b + b2b
            t0a, t0b = c3a + yP, c3b
            m0a = (s0a * t0a + qnr * (s0b * t0b)) % p
            m0b = (s0a * t0b + s0b * t0a) % p
            m1a = (s1a * c4a + qnr * (s1b * c4b)) % p
            m1b = (s1a * c4b + s1b * c4a) % p
            sa, sb = s0a + s1a, s0b + s1b
            ta, tb = t0a + c4a, t0b + c4b
            sm1a = (sa * ta + qnr * (sb * tb) - m0a - m1a) % p
            sm1b = (sa * tb + sb * ta - m0b - m1b) % p
            u2a = (s2a * c4a + qnr * (s2b * c4b)) % p
            u2b = (s2a * c4b + s2b * c4a) % p
            sm0a = (m0a + xi0 * u2a + qnr * xi1 * u2b) % p
            sm0b = (m0b + xi0 * u2b + xi1 * u2a) % p
            sm2a = (m1a + s2a * t0a + qnr * (s2b * t0b)) % p
            sm2b = (m1b + s2a * t0b + s2b * t0a) % p
            # C0 = AC + v*BD ; C1 = SM - AC - BD
            return (
                ((ac0a + xi0 * bd2a + qnr * xi1 * bd2b) % p, (ac0b + xi0 * bd2b + xi1 * bd2a) % p),
                ((ac1a + bd0a) % p, (ac1b + bd0b) % p),
                ((ac2a + bd1a) % p, (ac2b + bd1b) % p),
            ), (
                ((sm0a - ac0a - bd0a) % p, (sm0b - ac0b - bd0b) % p),
                ((sm1a - ac1a - bd1a) % p, (sm1b - ac1b - bd1b) % p),
                ((sm2a - ac2a - bd2a) % p, (sm2b - ac2b - bd2b) % p),
            )

        # M-twist line: xi*yP + (m xT - yT) v w + (-m xP) v^2 w -> lanes (0, 4, 5)
        def mul_line_m(F, L0, L4, L5):
            A, B = F
            b0, b1, b2 = B
            AC = (m2(A[0], L0), m2(A[1], L0), m2(A[2], L0))
            # B*D with D = (0, L4, L5)
            mb1 = m2(b1, L4)
            mb2 = m2(b2, L5)
            crs = sub2(sub2(m2(a2(b1, b2), a2(L4, L5)), mb1), mb2)
            BD = (mx(crs), a2(m2(b0, L4), mx(mb2)), a2(m2(b0, L5), mb1))
            # (A+B)*(C+D) with C+D = (L0, L4, L5) full
            SM = m6(a6(A, B), (L0, L4, L5))
            C0 = a6(AC, mv6(BD))
            C1 = sub6(sub6(SM, AC), BD)
            return (C0, C1)

        # Fp2 square root (complex method over the norm); None if non-residue.
        def sqrt2(a):
            a0, a1 = a
            if a1 == 0:
                s = sqrt_mod_prime(a0, p)
                if s is not None:
                    return (s, mpz(0))
                s = sqrt_mod_prime(a0 * invert(mpz(qnr % p), p) % p, p)
                if s is None:
                    return None
                return (mpz(0), s)
            nrm = (a0 * a0 - qnr * a1 * a1) % p
            s = sqrt_mod_prime(nrm, p)
            if s is None:
                return None
            inv2 = invert(mpz(2), p)
            for sg in (s, (-s) % p):
                ch = sqrt_mod_prime((a0 + sg) * inv2 % p, p)
                if ch is None:
                    continue
                d = a1 * invert(2 * ch % p, p) % p
                if ((ch * ch + qnr * d * d) % p, 2 * ch * d % p) == (a0, a1):
                    return (ch, d)
            return None

        # export closures
        self.m2, self.s2, self.a2, self.sub2 = m2, s2, a2, sub2
        self.n2, self.c2, self.i2, self.mx = n2, c2, i2, mx
        self.m2_scalar, self.pow2, self.sqrt2 = m2_scalar, pow2, sqrt2
        self.m6, self.a6, self.sub6, self.n6, self.mv6, self.i6 = m6, a6, sub6, n6, mv6, i6
        self.m12, self.s12, self.conj12, self.i12 = m12, s12, conj12, i12
        self.pow12, self.gs_sqr, self.pow_cyc, self.frob12 = pow12, gs_sqr, pow_cyc, frob12
        self.mul_line_d, self.mul_line_m = mul_line_d, mul_line_m
        self.one12 = one12

    # ---------------- conversions ----------------
    def fp2(self, c0, c1=0):
        return (mpz(c0) % self.p, mpz(c1) % self.p)

    def lanes(self, A):
        """Flat tuple of the six Fp2 lanes."""
        return (*A[0], *A[1])

    def fp12_to_ints(self, A):
        out = []
        for lane in self.lanes(A):
            out.append(int(lane[0]))
            out.append(int(lane[1]))
        return out

    def fp12_from_ints(self, vals):
        if len(vals) != 12 or any(not (0 <= v < self.p) for v in vals):
            raise ValueError("bad Fp12 coefficient vector")
        ls = [(mpz(vals[2 * i]), mpz(vals[2 * i + 1])) for i in range(6)]
        return ((ls[0], ls[1], ls[2]), (ls[3], ls[4], ls[5]))

    def rand12(self, rng):
        """Uniform Fp12 element (tests only)."""
        p = int(self.p)
        ls = [(mpz(rng.randrange(p)), mpz(rng.randrange(p))) for _ in range(6)]
        return ((ls[0], ls[1], ls[2]), (ls[3], ls[4], ls[5]))


def naf_digits(k):
    """Exposed for pairing loop setup."""
    return naf(k)
