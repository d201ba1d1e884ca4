"""Residuals and timings of kak_ai and recursive_factor on Haar-random unitaries."""
import argparse
import statistics
import time

import numpy as np
from scipy.stats import unitary_group

from qap import kak
from qap.cartan import enumerate_selections, make_split
from qap.partition import build_qap, intrinsic_center


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print("kak_ai")
    for n in (2, 4, 6, 8, 16):
        q = build_qap(intrinsic_center(n, "lambda" if n & (n - 1) else "spinor"), verify=False)
        splits = [make_split(s) for s in enumerate_selections(q)]
        res, times = [], []
        for k in range(args.samples):
            U = unitary_group.rvs(n, random_state=rng)
            t0 = time.perf_counter()
            res.append(kak.kak_ai(U, splits[k % len(splits)]).residual)
            times.append(time.perf_counter() - t0)
        print(f"  N={n:2d}: max residual {max(res):.2e}, median {1e3 * statistics.median(times):.2f} ms")

    print("recursive_factor")
    for n in (4, 6, 8, 16):
        q = build_qap(intrinsic_center(1 << (n - 1).bit_length()), verify=False)
        seq = kak.canonical_sequence(q)
        res, times = [], []
        for _ in range(max(1, args.samples // 10)):
            U = unitary_group.rvs(n, random_state=rng)
            t0 = time.perf_counter()
            tree = kak.recursive_factor(U, seq)
            times.append(time.perf_counter() - t0)
            res.append(tree.reconstruction_error)
        print(f"  N={n:2d}: factors {len(tree.factors)}, max residual {max(res):.2e}, "
              f"median {1e3 * statistics.median(times):.1f} ms")


if __name__ == "__main__":
    main()
