#!/usr/bin/env python3
"""Tabulate the summable-like witness values phi_alpha(A_i) and phi_alpha(union) over alpha and N.

    python3 scripts/witness_tables.py --alphas 2,3,w,w+1 --N-max 4 --out results/witnesses.csv
"""
import argparse
import csv
import sys

from combinach import format_ordinal, ord_parse, summable_like_witness


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alphas", default="2,3,w,w+1,w*2")
    ap.add_argument("--N-max", type=int, default=4)
    ap.add_argument("--out", help="CSV path (stdout when omitted)")
    args = ap.parse_args(argv)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["alpha", "N", "pieces", "max_piece", "expected_piece", "union", "largest_point"])
    for a in args.alphas.split(","):
        alpha = ord_parse(a)
        for N in range(1, args.N_max + 1):
            wit = summable_like_witness(alpha, N)
            w.writerow([format_ordinal(alpha), N, len(wit.sets), max(wit.piece_values),
                        f"1/{2 ** N}", wit.union_value, max(max(s) for s in wit.sets)])
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
