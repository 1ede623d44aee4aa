"""Hot loops: 2-bit window packing, capped LCP along a suffix order, batch
integer orbits.  Each kernel has a numba version and a pure numpy version;
set ``TRIP_DISABLE_NUMBA=1`` to force the numpy path.
"""
from __future__ import annotations

import os

import numpy as np

CHARS_PER_WORD = 32

try:  # pragma: no cover - exercised through USING_NUMBA
    if os.environ.get("TRIP_DISABLE_NUMBA", "") not in ("", "0"):
        raise ImportError("disabled by TRIP_DISABLE_NUMBA")
    from numba import njit

    USING_NUMBA = True
except ImportError:  # pragma: no cover
    njit = None
    USING_NUMBA = False


# ----------------------------------------------------------------- numpy path

def pack_windows_np(codes: np.ndarray) -> np.ndarray:
    """P[i] = codes[i:i+32] as 2-bit digits, first char most significant."""
    n = codes.shape[0]
    padded = np.zeros(n + CHARS_PER_WORD, dtype=np.uint64)
    padded[:n] = codes
    out = np.zeros(n, dtype=np.uint64)
    for j in range(CHARS_PER_WORD):
        out |= padded[j : j + n] << np.uint64(62 - 2 * j)
    return out


def _leading_chars_np(x: np.ndarray) -> np.ndarray:
    """Number of leading zero 2-bit digits of nonzero uint64 values."""
    hi = (x >> np.uint64(32)).astype(np.float64)
    lo = (x & np.uint64(0xFFFFFFFF)).astype(np.float64)
    _, ehi = np.frexp(hi)
    _, elo = np.frexp(lo)
    bitlen = np.where(hi > 0, ehi + 32, elo)
    return (64 - bitlen) // 2


def capped_lcp_np(packed: np.ndarray, order: np.ndarray, cap: int) -> np.ndarray:
    """lcp[r] = common prefix of suffixes order[r-1], order[r], capped; lcp[0] = 0."""
    n = order.shape[0]
    words = -(-cap // CHARS_PER_WORD)
    ext = np.zeros(packed.shape[0] + words * CHARS_PER_WORD, dtype=np.uint64)
    ext[: packed.shape[0]] = packed
    a, b = order[:-1].astype(np.int64), order[1:].astype(np.int64)
    lcp = np.zeros(max(n - 1, 0), dtype=np.int64)
    active = np.arange(n - 1)
    for w in range(words):
        if active.size == 0:
            break
        x = ext[a[active] + w * CHARS_PER_WORD] ^ ext[b[active] + w * CHARS_PER_WORD]
        diff = x != 0
        lcp[active[diff]] = w * CHARS_PER_WORD + _leading_chars_np(x[diff])
        lcp[active[~diff]] = (w + 1) * CHARS_PER_WORD
        active = active[~diff]
    out = np.zeros(n, dtype=np.int64)
    out[1:] = np.minimum(lcp, cap)
    return out


def hidden_r2_batch_np(x, y, z, max_steps: int):
    """Outcome codes 0 = y>z reached, 1 = zero hit, 2 = exhausted; plus steps."""
    x, y, z = (np.array(v, dtype=np.int64) for v in (x, y, z))
    n = x.shape[0]
    outcome = np.full(n, 2, dtype=np.int8)
    steps = np.full(n, max_steps, dtype=np.int64)
    active = np.arange(n)
    for s in range(max_steps + 1):
        xa, ya, za = x[active], y[active], z[active]
        reached = ya > za
        zero = ~reached & ((xa == 0) | (ya == 0) | (za == 0))
        done = reached | zero
        outcome[active[reached]] = 0
        outcome[active[zero]] = 1
        steps[active[done]] = s
        active = active[~done]
        if active.size == 0 or s == max_steps:
            break
        xa, ya, za = x[active], y[active], z[active]
        k = xa // za
        x[active], y[active], z[active] = xa - k * za, (k + 1) * za - xa, ya
    return outcome, steps


# ----------------------------------------------------------------- numba path

if USING_NUMBA:

    @njit(cache=True)
    def _pack_windows_nb(codes):
        n = codes.shape[0]
        out = np.zeros(n, dtype=np.uint64)
        acc = np.uint64(0)
        mask = np.uint64(0xFFFFFFFFFFFFFFFF)
        # feed characters from the right so each window is finished at position i
        for i in range(n + CHARS_PER_WORD - 1, -1, -1):
            c = np.uint64(codes[i]) if i < n else np.uint64(0)
            acc = ((acc >> np.uint64(2)) | (c << np.uint64(62))) & mask
            if i < n:
                out[i] = acc
        return out

    @njit(cache=True)
    def _capped_lcp_nb(packed, order, cap):
        n = order.shape[0]
        m = packed.shape[0]
        out = np.zeros(n, dtype=np.int64)
        for r in range(1, n):
            a = order[r - 1]
            b = order[r]
            l = 0
            while l < cap:
                wa = packed[a + l] if a + l < m else np.uint64(0)
                wb = packed[b + l] if b + l < m else np.uint64(0)
                x = wa ^ wb
                if x == 0:
                    l += CHARS_PER_WORD
                    continue
                lz = 0
                while (x >> np.uint64(62 - 2 * lz)) & np.uint64(3) == 0:
                    lz += 1
                l += lz
                break
            out[r] = min(l, cap)
        return out

    @njit(cache=True)
    def _hidden_r2_batch_nb(x, y, z, max_steps):
        n = x.shape[0]
        outcome = np.full(n, 2, dtype=np.int8)
        steps = np.full(n, max_steps, dtype=np.int64)
        for i in range(n):
            a, b, c = x[i], y[i], z[i]
            for s in range(max_steps + 1):
                if b > c:
                    outcome[i] = 0
                    steps[i] = s
                    break
                if a == 0 or b == 0 or c == 0:
                    outcome[i] = 1
                    steps[i] = s
                    break
                if s == max_steps:
                    break
                k = a // c
                a, b, c = a - k * c, (k + 1) * c - a, b
        return outcome, steps


def pack_windows(codes: np.ndarray) -> np.ndarray:
    codes = np.ascontiguousarray(codes, dtype=np.uint8)
    if USING_NUMBA:
        return _pack_windows_nb(codes)
    return pack_windows_np(codes)


def capped_lcp(packed: np.ndarray, order: np.ndarray, cap: int) -> np.ndarray:
    if USING_NUMBA:
        return _capped_lcp_nb(packed, np.ascontiguousarray(order, dtype=np.int64), int(cap))
    return capped_lcp_np(packed, order, int(cap))


def hidden_r2_batch(x, y, z, max_steps: int):
    if USING_NUMBA:
        return _hidden_r2_batch_nb(
            np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64),
            np.asarray(z, dtype=np.int64), int(max_steps),
        )
    return hidden_r2_batch_np(x, y, z, int(max_steps))
