"""Time the numba kernels against their numpy fallbacks and check they agree.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat R]

The numba column is empty when numba is missing or TRIP_DISABLE_NUMBA=1.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from trip import kernels


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(size: int, rng: np.random.Generator):
    codes = rng.integers(1, 4, size=size, dtype=np.uint8)
    packed_np = kernels.pack_windows_np(codes)
    order = np.lexsort((np.arange(size), packed_np))
    pts = rng.integers(1, 2**29, size=(size // 10, 3), dtype=np.int64)
    cases = {
        "pack_windows": (lambda: kernels.pack_windows_np(codes),
                         (lambda: kernels._pack_windows_nb(codes)) if kernels.USING_NUMBA else None),
        "capped_lcp": (lambda: kernels.capped_lcp_np(packed_np, order, 64),
                       (lambda: kernels._capped_lcp_nb(packed_np, order, 64)) if kernels.USING_NUMBA else None),
        "hidden_r2_batch": (lambda: kernels.hidden_r2_batch_np(pts[:, 0], pts[:, 1], pts[:, 2], 10_000),
                            (lambda: kernels._hidden_r2_batch_nb(pts[:, 0].copy(), pts[:, 1].copy(),
                                                                 pts[:, 2].copy(), 10_000))
                            if kernels.USING_NUMBA else None),
    }
    return cases


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"numba active: {kernels.USING_NUMBA}  size: {args.size}")
    print(f"{'kernel':<18}{'numpy s':>12}{'numba s':>12}{'speedup':>10}  agree")
    for name, (np_fn, nb_fn) in _cases(args.size, np.random.default_rng(args.seed)).items():
        t_np = _best(np_fn, args.repeat)
        if nb_fn is None:
            print(f"{name:<18}{t_np:>12.4f}{'-':>12}{'-':>10}  -")
            continue
        nb_fn()  # compile
        t_nb = _best(nb_fn, args.repeat)
        print(f"{name:<18}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}  {_same(np_fn(), nb_fn())}")


if __name__ == "__main__":
    main()
