"""Keccak-256 with the original multi-rate padding (the Ethereum variant, not SHA3-256).

Two interchangeable implementations live here: a plain-Python sponge and a
numba-compiled one. The compiled path is used automatically when numba is
importable; `keccak256_py` stays available as an independent reference for
cross-checking.
"""

from __future__ import annotations

_RATE = 136  # bytes; capacity 512 bits

_RC = (
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A, 0x8000000080008000,
    0x000000000000808B, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008A, 0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800A, 0x800000008000000A,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
)

# rotation offset for lane x + 5*y
_ROT = (0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43, 25, 39, 41, 45, 15, 21, 8, 18, 2, 61, 56, 14)

_M64 = 0xFFFFFFFFFFFFFFFF


def _keccak_f(s: list) -> None:
    for rc in _RC:
        c0 = s[0] ^ s[5] ^ s[10] ^ s[15] ^ s[20]
        c1 = s[1] ^ s[6] ^ s[11] ^ s[16] ^ s[21]
        c2 = s[2] ^ s[7] ^ s[12] ^ s[17] ^ s[22]
        c3 = s[3] ^ s[8] ^ s[13] ^ s[18] ^ s[23]
        c4 = s[4] ^ s[9] ^ s[14] ^ s[19] ^ s[24]
        c = (c0, c1, c2, c3, c4)
        for x in range(5):
            d = c[(x - 1) % 5] ^ (((c[(x + 1) % 5] << 1) | (c[(x + 1) % 5] >> 63)) & _M64)
            for y in range(0, 25, 5):
                s[x + y] ^= d
        b = [0] * 25
        for x in range(5):
            for y in range(5):
                t = s[x + 5 * y]
                off = _ROT[x + 5 * y]
                b[y + 5 * ((2 * x + 3 * y) % 5)] = ((t << off) | (t >> (64 - off))) & _M64 if off else t
        for y in range(0, 25, 5):
            t0, t1, t2, t3, t4 = b[y:y + 5]
            s[y] = t0 ^ (~t1 & t2 & _M64)
            s[y + 1] = t1 ^ (~t2 & t3 & _M64)
            s[y + 2] = t2 ^ (~t3 & t4 & _M64)
            s[y + 3] = t3 ^ (~t4 & t0 & _M64)
            s[y + 4] = t4 ^ (~t0 & t1 & _M64)
        s[0] ^= rc


def keccak256_py(data: bytes) -> bytes:
    """Reference sponge; pad10*1 with the 0x01 domain byte."""
    padded = bytearray(data)
    padded.append(0x01)
    padded.extend(b"\x00" * (-len(padded) % _RATE))
    padded[-1] |= 0x80
    s = [0] * 25
    for off in range(0, len(padded), _RATE):
        for i in range(_RATE // 8):
            s[i] ^= int.from_bytes(padded[off + 8 * i:off + 8 * i + 8], "little")
        _keccak_f(s)
    return b"".join(s[i].to_bytes(8, "little") for i in range(4))


def _build_numba_impl():
    import numpy as np
    from numba import njit, uint64, uint8

    rc = np.array(_RC, dtype=np.uint64)
    rot = np.array(_ROT, dtype=np.uint64)

    @njit(cache=True)
    def core(data):
        n = data.shape[0]
        pl = ((n // 136) + 1) * 136
        buf = np.zeros(pl, dtype=np.uint8)
        buf[:n] = data
        buf[n] = 0x01
        buf[pl - 1] |= 0x80
        s = np.zeros(25, dtype=np.uint64)
        b = np.zeros(25, dtype=np.uint64)
        c = np.zeros(5, dtype=np.uint64)
        for off in range(0, pl, 136):
            for i in range(17):
                lane = uint64(0)
                base = off + 8 * i
                for j in range(8):
                    lane |= uint64(buf[base + j]) << uint64(8 * j)
                s[i] ^= lane
            for rnd in range(24):
                for x in range(5):
                    c[x] = s[x] ^ s[x + 5] ^ s[x + 10] ^ s[x + 15] ^ s[x + 20]
                for x in range(5):
                    d = c[(x + 4) % 5] ^ ((c[(x + 1) % 5] << uint64(1)) | (c[(x + 1) % 5] >> uint64(63)))
                    for y in range(0, 25, 5):
                        s[x + y] ^= d
                for x in range(5):
                    for y in range(5):
                        t = s[x + 5 * y]
                        o = rot[x + 5 * y]
                        b[y + 5 * ((2 * x + 3 * y) % 5)] = (t << o) | (t >> (uint64(64) - o)) if o else t
                for y in range(0, 25, 5):
                    t0, t1, t2, t3, t4 = b[y], b[y + 1], b[y + 2], b[y + 3], b[y + 4]
                    s[y] = t0 ^ (~t1 & t2)
                    s[y + 1] = t1 ^ (~t2 & t3)
                    s[y + 2] = t2 ^ (~t3 & t4)
                    s[y + 3] = t3 ^ (~t4 & t0)
                    s[y + 4] = t4 ^ (~t0 & t1)
                s[0] ^= rc[rnd]
        out = np.empty(32, dtype=np.uint8)
        for i in range(4):
            lane = s[i]
            for j in range(8):
                out[8 * i + j] = uint8((lane >> uint64(8 * j)) & uint64(0xFF))
        return out

    def keccak256_nb(data: bytes) -> bytes:
        return core(np.frombuffer(data, dtype=np.uint8)).tobytes()

    # refuse a miscompiled kernel outright
    if keccak256_nb(b"") != bytes.fromhex(
        "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470"
    ):
        raise RuntimeError("compiled keccak self-check failed")
    return keccak256_nb


try:
    keccak256 = _build_numba_impl()
    HAS_COMPILED_KECCAK = True
except Exception:  # numba unavailable or compilation failed
    keccak256 = keccak256_py
    HAS_COMPILED_KECCAK = False
