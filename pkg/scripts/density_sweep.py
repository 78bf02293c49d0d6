"""Densities on a grid of (m, c) values; writes one CSV per pair plus a summary JSON."""

import argparse
import json
import os
import time
from fractions import Fraction

from marginal_resolvent.elimination import reference_sextic
from marginal_resolvent.resolvent import density, density_grid, support_endpoints


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", nargs="+", default=["1", "2", "4"])
    ap.add_argument("--c", nargs="+", default=["1/2", "1", "2"])
    ap.add_argument("--points", type=int, default=1500)
    ap.add_argument("--outdir", default="density_sweep")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    curve = reference_sextic()
    summary = []
    for ms in args.m:
        for cs in args.c:
            m, c = Fraction(ms), Fraction(cs)
            y = 1 / m
            t0 = time.perf_counter()
            sup = support_endpoints(curve, y, c)
            d = density(curve, y, c, density_grid(1.02 * sup.hi, args.points, lower=min(0.0, sup.lo)),
                        support=(sup.lo, sup.hi))
            name = f"m{ms.replace('/', '_')}_c{cs.replace('/', '_')}"
            d.to_csv(os.path.join(args.outdir, name + ".csv"))
            row = {"m": ms, "c": cs, "support": [sup.lo, sup.hi], "mass": d.mass(),
                   "moment1": d.moment(1), "exact_moment1": float(c * c + c * y * y),
                   "seconds": time.perf_counter() - t0}
            summary.append(row)
            print(f"m={ms:>4} c={cs:>4}  support [{sup.lo:.4f}, {sup.hi:.4f}]  mass {row['mass']:.5f}"
                  f"  M1 {row['moment1']:.5f} ({row['exact_moment1']:.5f})", flush=True)
    with open(os.path.join(args.outdir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=1)


if __name__ == "__main__":
    main()
