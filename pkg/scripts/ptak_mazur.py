#!/usr/bin/env python3
"""Run the filling and convex-combination searches over families, weights and epsilons.

Prints one JSON record per run, so the output can be diffed between versions.

    python3 scripts/ptak_mazur.py --horizon 1024 --eps 1/2,1/4
"""
import argparse
import json
from fractions import Fraction

from combinach import family_from_json, mazur_combination_search, ptak_fill_search, verify_certificate
from combinach.submeasures import weights_from_json

FAMILIES = {
    "S1": {"kind": "schreier", "alpha": "1"},
    "singletons": {"kind": "singletons"},
    "blocks": {"kind": "partition-blocks"},
}
WEIGHTS = ("lambda", "harmonic", "one")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--horizon", type=int, default=1024)
    ap.add_argument("--eps", default="1/2,1/4")
    args = ap.parse_args(argv)

    for fname, fobj in FAMILIES.items():
        f = family_from_json(fobj)
        for wname in WEIGHTS:
            mu = weights_from_json({"kind": wname})
            for e in args.eps.split(","):
                eps = Fraction(e)
                for search in (ptak_fill_search, mazur_combination_search):
                    cert = (search(f, mu, eps, args.horizon) if search is ptak_fill_search
                            else search(f, None, mu, eps, args.horizon))
                    rec = {"family": fname, "weights": wname, "epsilon": str(eps),
                           "kind": cert.kind, "holds": cert.holds,
                           "verified": verify_certificate(cert),
                           "payload": cert.payload}
                    print(json.dumps(rec, sort_keys=True, default=str))


if __name__ == "__main__":
    main()
