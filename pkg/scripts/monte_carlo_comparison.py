"""Empirical spectra of the marginal product against the density from the curve."""

import argparse
import time
from fractions import Fraction

import numpy as np

from marginal_resolvent.elimination import reference_sextic
from marginal_resolvent.montecarlo import empirical_moments, empirical_spectrum, histogram_l1, marginals, sample_tensor
from marginal_resolvent.resolvent import density, density_grid, moments_from_curve, support_endpoints


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--N-A", type=int, default=300)
    ap.add_argument("--N-D", type=int, default=300)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--bins", type=int, default=40)
    args = ap.parse_args()
    y, c = Fraction(1, args.m), Fraction(args.N_D, args.N_A)
    t0 = time.perf_counter()
    eigs, moms = [], []
    for s in range(args.seeds):
        pair = marginals(sample_tensor(args.N_A, args.m, args.m, args.N_D, s))
        moms.append(empirical_moments(pair, 3))
        eigs.append(empirical_spectrum(pair, seed=s).eigenvalues)
    eigs = np.concatenate(eigs)
    print(f"sampled {args.seeds} tensors in {time.perf_counter() - t0:.1f}s")
    curve = reference_sextic()
    exact = moments_from_curve(curve, 3, y, c).evaluate()
    for n, (e, x) in enumerate(zip(np.mean(moms, axis=0), exact[1:]), start=1):
        print(f"M_{n}: empirical {e:.5f}  exact {float(x):.5f}  rel dev {abs(e / float(x) - 1):.2%}")
    sup = support_endpoints(curve, y, c)
    d = density(curve, y, c, density_grid(1.05 * sup.hi, 1200, lower=min(0.0, sup.lo)))
    print(f"histogram L1 ({args.bins} bins): {histogram_l1(eigs, d, bins=args.bins):.4f}")


if __name__ == "__main__":
    main()
