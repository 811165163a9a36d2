"""Show where the sigma|tau comparison breaks for a pair that does not commute."""

import argparse

from ydext.extensions import negative_control


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for p, q in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        rep = negative_control(p, q, seed=args.seed)
        notes = dict(rep.notes)
        print("%s  witness %s  failing squares %s" % (rep.summary(), notes["pair witness"],
                                                     notes["sigma|tau failing squares"]))


if __name__ == "__main__":
    main()
