"""Chevalley-Eilenberg cohomology dimensions H^k with coefficients in the algebra."""

import argparse
import time
import warnings

from liediff.algebra import builtin
from liediff.cohomology import cohomology_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=["sl2", "o3", "sl3", "gl2", "abelian:2", "ccr:1"])
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()
    warnings.simplefilter("ignore")
    for name in args.names:
        start = time.perf_counter()
        rep = cohomology_report(builtin(name), args.max_degree)
        hs = " ".join(f"H^{h['k']}={h['dim']}" for h in rep["H"])
        flag = " (full multilinear complex)" if rep.get("flags") else ""
        print(f"{name:>10}: G={rep['G']:<3} {hs}  dd=0: {rep['dd_zero_verified']}{flag}"
              f"  [{time.perf_counter() - start:.2f}s]")


if __name__ == "__main__":
    main()
