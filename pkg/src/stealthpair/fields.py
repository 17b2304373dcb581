"""Prime-field helpers shared across the curve and tower code."""

from __future__ import annotations

from gmpy2 import invert, legendre, mpz, powmod


def sqrt_mod_prime(a, p):
    """Square root of a mod prime p, or None if a is a non-residue.

    Uses the p % 4 == 3 exponent shortcut when possible, Tonelli-Shanks
    otherwise (needed for fields with large 2-adicity such as BLS12-377).
    """
    a = mpz(a) % p
    if a == 0:
        return mpz(0)
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return powmod(a, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q >>= 1
        s += 1
    z = mpz(2)
    while legendre(z, p) != -1:
        z += 1
    m = s
    c = powmod(z, q, p)
    t = powmod(a, q, p)
    res = powmod(a, (q + 1) // 2, p)
    while t != 1:
        i = 0
        tt = t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = powmod(c, mpz(1) << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        res = res * b % p
    return res


def batch_inverse(values, p):
    """Montgomery batch inversion: one field inversion for the whole list.

    All values must be nonzero.
    """
    n = len(values)
    if n == 0:
        return []
    prefix = [mpz(0)] * n
    acc = mpz(1)
    for i, v in enumerate(values):
        acc = acc * v % p
        prefix[i] = acc
    inv_acc = invert(acc, p)
    out = [mpz(0)] * n
    for i in range(n - 1, 0, -1):
        out[i] = prefix[i - 1] * inv_acc % p
        inv_acc = inv_acc * values[i] % p
    out[0] = inv_acc
    return out


def div_round_nearest(a, b):
    """round(a / b) for integers, b may be negative; half rounds away from zero."""
    if b < 0:
        a, b = -a, -b
    if a >= 0:
        return (2 * a + b) // (2 * b)
    return -((-2 * a + b) // (2 * b))


def naf(k):
    """Non-adjacent form digits of k >= 0, least significant first."""
    out = []
    while k:
        if k & 1:
            d = 2 - (k & 3)
            out.append(d)
            k -= d
        else:
            out.append(0)
        k >>= 1
    return out


def wnaf(k, w):
    """Width-w NAF digits of k >= 0 (odd digits in (-2^(w-1), 2^(w-1))), LSB first."""
    out = []
    full = 1 << w
    half = 1 << (w - 1)
    while k:
        if k & 1:
            d = k % full
            if d >= half:
                d -= full
            out.append(d)
            k -= d
        else:
            out.append(0)
        k >>= 1
    return out
