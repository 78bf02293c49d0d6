"""Command-line entry point: ``python3 -m marginal_resolvent <command> [flags]``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import balanced, checks, elimination, maps, montecarlo, petals, resolvent
from .config import COMMANDS, InvalidConfig, RunConfig, envelope, parse_rational
from .errors import MarginalResolventError

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _exact(v):
    """Exact rationals are serialised as decimal strings (``"p/q"`` when needed)."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    return str(v)


def _write_json(path, config, payload):
    with open(path, "w") as fh:
        json.dump(envelope(config, payload), fh, indent=1)


def build_parser():
    p = argparse.ArgumentParser(prog="marginal_resolvent", description=__doc__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--c", default="1", help="aspect ratio c > 0 (rational, e.g. 1/2)")
    p.add_argument("--m", default="2", help="inner dimension m > 0; y = 1/m")
    p.add_argument("--n", type=int, default=3, help="highest moment order")
    p.add_argument("--k", type=int, default=3, help="half edge count for enumeration")
    p.add_argument("--grid-min", type=float, default=None)
    p.add_argument("--grid-max", type=float, default=None)
    p.add_argument("--grid-points", type=int, default=1500)
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20, help="number of seeds")
    p.add_argument("--size", type=int, default=300, help="N_A for simulate")
    p.add_argument("--regime", default="unbalanced", choices=("unbalanced", "balanced"))
    p.add_argument("--out", default=None)
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--only", nargs="*", default=[], help="crosscheck subset, e.g. C1 C3")
    return p


def config_from_args(argv=None) -> RunConfig:
    a = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=a.command, c=parse_rational(a.c), m=parse_rational(a.m), n=a.n, k=a.k,
        grid_min=a.grid_min, grid_max=a.grid_max, grid_points=a.grid_points, epsilon=a.epsilon,
        seed=a.seed, samples=a.samples, size=a.size, regime=a.regime, out=a.out,
        symbolic=a.symbolic, only=a.only,
    )
    return cfg.validate()


# ---------------------------------------------------------------- commands


def cmd_moments(cfg):
    state = petals.solve_petal_system(max(2, 2 * cfg.n))
    table = petals.extract_moments(state, cfg.n)
    if cfg.symbolic:
        entries = [str(e) for e in table]
    else:
        entries = [_exact(v) for v in table.evaluate(cfg.y, cfg.c)]
    for i, e in enumerate(entries):
        print(f"M_{i} = {e}")
    if cfg.out:
        _write_json(cfg.out, cfg, {"moments": entries})
    return EXIT_OK


def cmd_enumerate(cfg):
    got = maps.enumerate_moment(cfg.k)
    series = petals.solve_petal_system(2 * cfg.k).S01[2 * cfg.k]
    same = got == series
    print(f"oracle   M_{cfg.k} = {got}")
    print(f"series   M_{cfg.k} = {series}")
    print("EQUAL" if same else "DIFFERENT")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            n = maps.dump_planar_maps(cfg.k, fh)
        print(f"wrote {n} planar maps to {cfg.out}")
    return EXIT_OK if same else EXIT_FAIL


def _grid(cfg, hi):
    lo = cfg.grid_min if cfg.grid_min is not None else 0.0
    top = cfg.grid_max if cfg.grid_max is not None else hi * 1.02
    return resolvent.density_grid(top, cfg.grid_points, lower=lo)


def _report_density(cfg, d, m1):
    print(f"support   [{d.support_estimate[0]:.6g}, {d.support_estimate[1]:.6g}]")
    print(f"mass      {d.mass():.6f}")
    print(f"moment 1  {d.moment(1):.6f}  (exact {float(m1):.6f})")
    if cfg.out:
        if cfg.out.endswith(".csv"):
            d.to_csv(cfg.out)
        else:
            _write_json(cfg.out, cfg, d.to_dict())


def cmd_density(cfg):
    curve = elimination.reference_sextic()
    sup = resolvent.support_endpoints(curve, cfg.y, cfg.c)
    if sup.multi_interval:
        print(f"warning: several candidate intervals, endpoints {sup.endpoints}")
    d = resolvent.density(curve, cfg.y, cfg.c, _grid(cfg, sup.hi), cfg.epsilon, support=(sup.lo, sup.hi))
    _report_density(cfg, d, cfg.c ** 2 + cfg.c * cfg.y ** 2)
    return EXIT_OK


def cmd_simulate(cfg):
    N_A = cfg.size
    N_D = max(1, round(cfg.c * N_A))
    inner = int(cfg.m) if cfg.regime == "unbalanced" else cfg.size
    if cfg.regime == "unbalanced" and cfg.m != int(cfg.m):
        raise InvalidConfig("simulation needs an integer m")
    records, moms = [], []
    for s in range(cfg.seed, cfg.seed + cfg.samples):
        pair = montecarlo.marginals(montecarlo.sample_tensor(N_A, inner, inner, N_D, s))
        mom = montecarlo.empirical_moments(pair, max(cfg.n, 1), cfg.regime)
        eig = montecarlo.empirical_spectrum(pair, cfg.regime, s).eigenvalues
        moms.append(mom)
        records.append(montecarlo.run_record(s, pair.dims, cfg.regime, mom, eig))
    mean = np.mean(moms, axis=0)
    if cfg.regime == "unbalanced":
        theory = resolvent.moments_from_curve(elimination.reference_sextic(), max(cfg.n, 1), cfg.y, Fraction(N_D, N_A))
    else:
        theory = balanced.balanced_moments(max(cfg.n, 1), Fraction(N_D, N_A))
    for i, v in enumerate(mean, start=1):
        print(f"n={i}  empirical {v:.6f}  theory {float(theory.evaluate()[i]):.6f}")
    if cfg.out:
        _write_json(cfg.out, cfg, {"rng": montecarlo.RNG_ALGORITHM, "runs": records,
                                   "mean_moments": mean.tolist()})
    return EXIT_OK


def cmd_eliminate(cfg):
    res = elimination.eliminate_to_eta()
    curve = elimination.eta_to_sextic(res.eta)
    print(f"Q(W, z) = {curve.poly}")
    diff = elimination.curve_diff(curve)
    if diff:
        print("MISMATCH published sextic")
        print("\n".join(diff))
    else:
        print("MATCH published sextic")
    if cfg.out:
        _write_json(cfg.out, cfg, {"eta": str(res.eta), "sextic": str(curve.poly), "diff": diff})
    return EXIT_FAIL if diff else EXIT_OK


def cmd_balanced(cfg):
    table = balanced.balanced_moments(cfg.n, None if cfg.symbolic else cfg.c)
    entries = [str(e) for e in table] if cfg.symbolic else [_exact(v) for v in table.evaluate()]
    for i, e in enumerate(entries):
        print(f"M_{i} = {e}")
    if cfg.symbolic:
        if cfg.out:
            _write_json(cfg.out, cfg, {"moments": entries})
        return EXIT_OK
    curve = balanced.balanced_curve()
    sup = resolvent.support_endpoints(curve, None, cfg.c)
    d = balanced.balanced_density(cfg.c, _grid(cfg, sup.hi), cfg.epsilon, support=(sup.lo, sup.hi))
    _report_density(cfg, d, cfg.c ** 2)
    return EXIT_OK


def cmd_crosscheck(cfg):
    keys = cfg.only or None
    results = checks.run_all(keys)
    for r in results:
        print(r.line())
    if cfg.out:
        _write_json(cfg.out, cfg, {"results": [r.to_dict() for r in results]})
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMAND_TABLE = {
    "moments": cmd_moments,
    "enumerate": cmd_enumerate,
    "density": cmd_density,
    "simulate": cmd_simulate,
    "eliminate": cmd_eliminate,
    "balanced": cmd_balanced,
    "crosscheck": cmd_crosscheck,
}


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        return COMMAND_TABLE[cfg.command](cfg)
    except InvalidConfig as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MarginalResolventError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main(argv=None):
    try:
        cfg = config_from_args(argv)
    except InvalidConfig as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as exc:  # argparse usage errors
        return EXIT_CONFIG if exc.code else EXIT_OK
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
