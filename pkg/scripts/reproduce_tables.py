"""Print the intrinsic su(8), non-diagonal su(8), su(6) and su(4) partitions as text tables."""
import argparse

import numpy as np

from qap import partition as pt


def hadamard3():
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    return np.kron(np.kron(h, h), h)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--which", choices=("su8", "su8-x", "su6", "su4", "all"), default="all")
    args = ap.parse_args()
    su8 = pt.build_qap(pt.intrinsic_center(8))
    tables = {
        "su8": ("intrinsic su(8)", lambda: su8),
        "su8-x": ("su(8), center conjugated by H x H x H", lambda: pt.conjugate_qap(su8, hadamard3())),
        "su6": ("su(6) by removal from su(8)", lambda: pt.remove_process(su8, 6)),
        "su4": ("su(4) in lambda form", lambda: pt.build_qap(pt.intrinsic_center(4, "lambda"))),
    }
    for key, (title, make) in tables.items():
        if args.which not in (key, "all"):
            continue
        q = make()
        ok = pt.verify_closure(q).ok
        print(f"== {title}  (closure {'ok' if ok else 'FAILED'})")
        print(pt.format_table(q))
        print()


if __name__ == "__main__":
    main()
