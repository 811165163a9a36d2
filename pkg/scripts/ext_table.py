"""Print Ext dimensions for the bundled catalogue of bialgebroids and coefficients."""

import argparse

from ydext.catalog import (cyclic_group_bialgebroid, dual_numbers_enveloping, graded_group_coefficients,
                           ground_bialgebroid, split_quadratic, truncated_polynomial)
from ydext.bialgebroid import enveloping
from ydext.cohomology import ext
from ydext.config import WIDE
from ydext.yd import check_commuting_pair, unit_coefficients


def cases():
    yield "k", unit_coefficients(ground_bialgebroid())
    yield "k[x]/(x^2) enveloping", unit_coefficients(dual_numbers_enveloping())
    yield "k[x]/(x^3) enveloping", unit_coefficients(enveloping(truncated_polynomial(3)))
    yield "k x k enveloping", unit_coefficients(enveloping(split_quadratic()))
    yield "k[C2]", unit_coefficients(cyclic_group_bialgebroid(2))
    yield "k[C2], graded Z", check_commuting_pair(*graded_group_coefficients(False))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()
    for name, pair in cases():
        dims = ext(pair, args.max_degree, WIDE).dims()
        print("%-24s %s" % (name, " ".join(str(d) for d in dims)))


if __name__ == "__main__":
    main()
