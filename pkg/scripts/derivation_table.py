"""Print derivation, inner, outer and center dimensions for every builtin algebra."""

import argparse
import json

from liediff.algebra import builtin, center
from liediff.derivations import derivation_algebra, inner_derivations

NAMES = ("sl2", "sl3", "o3", "o4", "gl2", "gl3", "abelian:2", "abelian:3",
         "ccr:1", "ccr:2", "car:1", "car:2", "osp1|2")


def rows(names):
    for name in names:
        t = builtin(name)
        da = derivation_algebra(t)
        inner = inner_derivations(t).dim
        yield {"algebra": name, "dim": t.dim, "der": da.dim, "even": da.even.dim, "odd": da.odd.dim,
               "inner": inner, "outer": da.dim - inner, "center": center(t).dim}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("names", nargs="*", default=NAMES)
    args = ap.parse_args()
    data = list(rows(args.names))
    if args.json:
        print(json.dumps(data, indent=1))
        return
    cols = ["algebra", "dim", "der", "even", "odd", "inner", "outer", "center"]
    print("  ".join(f"{c:>9}" for c in cols))
    for r in data:
        print("  ".join(f"{r[c]:>9}" for c in cols))


if __name__ == "__main__":
    main()
