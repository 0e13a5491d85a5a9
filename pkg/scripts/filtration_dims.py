"""Dimensions of Diff_0 ⊆ Diff_1 ⊆ ... and the bracket-order check [Diff_k, Diff_m] ⊆ Diff_m."""

import argparse

from liediff.algebra import builtin
from liediff.diffops import Filtration, composition_order_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=["sl2", "o3", "gl2", "ccr:1", "car:1", "abelian:2", "sl3"])
    ap.add_argument("--order", type=int, default=4)
    ap.add_argument("--brackets", action="store_true", help="also tabulate bracket failures for k+m <= order")
    args = ap.parse_args()
    for name in args.names:
        f = Filtration(builtin(name))
        dims = [f.level(k).dim for k in range(args.order + 1)]
        stable = next((k for k in range(args.order + 1) if f.level(k).stabilized), None)
        # level k is flagged once Diff_k == Diff_(k-1), so the filtration is constant from k - 1 on
        print(f"{name:>10}: dims {dims}" + (f", constant from k={stable - 1}" if stable is not None else ""))
        if args.brackets:
            for k in range(1, args.order + 1):
                for m in range(0, min(k, args.order - k) + 1):
                    r = composition_order_report(builtin(name), k, m, f)
                    print(f"{'':>12}[Diff_{k}, Diff_{m}]: {len(r['bracket_failures'])}/{r['pairs']} basis pairs "
                          f"leave Diff_{m}")


if __name__ == "__main__":
    main()
