#!/usr/bin/env python3
"""Write tail-profile CSVs, one per (family, set) pair, for a small catalog.

    python3 scripts/tail_profiles.py --horizon 128 --outdir results/tails
"""
import argparse
import pathlib

from combinach import LAMBDA, SubmeasureSpec, family_from_json, generator_from_json, tail_profile
from combinach.submeasures import profile_csv

FAMILIES = {
    "S1": {"kind": "schreier", "alpha": "1"},
    "S2": {"kind": "schreier", "alpha": "2"},
    "Sw": {"kind": "schreier", "alpha": "w"},
    "blocks": {"kind": "partition-blocks"},
    "farah": {"kind": "block-capped-joined", "cap": {"kind": "farah"}},
}
SETS = {
    "all": {"kind": "all"},
    "one-per-block": {"kind": "block-prefix", "rule": "one"},
    "halved-by-log": {"kind": "block-prefix", "rule": "halvedByLog"},
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--horizon", type=int, default=128)
    ap.add_argument("--outdir", default="results/tails")
    args = ap.parse_args(argv)

    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    cutoffs = [c for c in (1, 2, 4, 8, 16, 32, 64, 128, 256) if c <= args.horizon]
    for fname, fobj in FAMILIES.items():
        spec = SubmeasureSpec(family_from_json(fobj), LAMBDA)
        for sname, gobj in SETS.items():
            pts = tail_profile(spec, generator_from_json(gobj), cutoffs, args.horizon)
            path = out / f"{fname}__{sname}.csv"
            path.write_text(profile_csv(pts))
            print(f"{path}: " + " ".join(str(p.value) for p in pts))


if __name__ == "__main__":
    main()
