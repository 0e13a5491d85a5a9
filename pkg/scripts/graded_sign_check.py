"""Compare δ^1∘δ^0 with and without the twisted first-term sign on graded test tables."""

from liediff.acceptance import mixed_parity_table
from liediff.algebra import builtin
from liediff.cohomology import graded_delta0, graded_delta1


def main():
    for name, t in (("mixed-parity (h,e|x,y)", mixed_parity_table()), ("osp(1|2)", builtin("osp1|2")),
                    ("sl2", builtin("sl2"))):
        d0, flags = graded_delta0(t)
        plain = (graded_delta1(t)[0] @ d0).is_zero()
        twisted = (graded_delta1(t, twisted_first_term=True)[0] @ d0).is_zero()
        print(f"{name:>24}: dd=0 plain {plain}, twisted {twisted}, all derivations inner {flags['all_inner']}")


if __name__ == "__main__":
    main()
