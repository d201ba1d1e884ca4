"""Shell counts of spinor Cartan subalgebras for p = 1..4 against the closed form."""
import argparse
import time

from qap.cartan import cartan_count, enumerate_cartans


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-p", type=int, default=4)
    ap.add_argument("--method", choices=("symplectic", "qap"), default="symplectic")
    args = ap.parse_args()
    for p in range(1, args.max_p + 1):
        t0 = time.perf_counter()
        e = enumerate_cartans(p, args.method)
        dt = time.perf_counter() - t0
        flag = "ok" if e.total == cartan_count(p) else "MISMATCH"
        print(f"p={p}: shells {e.counts} total {e.total} closed form {cartan_count(p)} [{flag}] {dt:.2f}s")


if __name__ == "__main__":
    main()
