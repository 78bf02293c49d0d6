"""
Finite-size simulation of the two marginals of a complex Gaussian tensor
``X`` on ``H_A (x) H_B (x) H_C (x) H_D``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EigensolverFailure

__all__ = [
    "RNG_ALGORITHM",
    "GaussianTensor",
    "MarginalPair",
    "SpectralSample",
    "sample_tensor",
    "marginals",
    "normalization",
    "empirical_moments",
    "trace_power_sums",
    "first_moment_gram",
    "empirical_spectrum",
    "histogram",
    "histogram_l1",
    "FreenessReport",
    "mixed_moment_freeness_probe",
    "run_record",
    "dump_records",
]

RNG_ALGORITHM = "numpy.random.Generator(PCG64)"
HERMITIAN_RTOL = 1e-12
PSD_RTOL = 1e-8


@dataclass(frozen=True)
class GaussianTensor:
    dims: tuple
    entries: np.ndarray
    seed: int = None


@dataclass(frozen=True)
class MarginalPair:
    V_AB: np.ndarray
    V_AC: np.ndarray
    dims: tuple


@dataclass
class SpectralSample:
    eigenvalues: np.ndarray
    seed: int
    dims: tuple
    regime: str


def sample_tensor(N_A, dim_B, dim_C, N_D, seed) -> GaussianTensor:
    """I.i.d. entries ``(g1 + i g2)/sqrt(2)`` so that ``E|X|^2 = 1``."""
    if dim_B != dim_C:
        raise DimensionMismatch(f"dim_B={dim_B} and dim_C={dim_C} must agree to form the product")
    dims = (int(N_A), int(dim_B), int(dim_C), int(N_D))
    if min(dims) < 1:
        raise ValueError(f"dimensions must be positive, got {dims}")
    rng = np.random.Generator(np.random.PCG64(seed))
    g = rng.standard_normal((2,) + dims)
    return GaussianTensor(dims, (g[0] + 1j * g[1]) / np.sqrt(2.0), seed)


def marginals(X: GaussianTensor) -> MarginalPair:
    """
    ``V_AB`` traces out ``C`` and ``D``; ``V_AC`` traces out ``B`` and ``D``.
    Both are Gram matrices of reshaped views of ``X``.
    """
    N_A, nB, nC, N_D = X.dims
    M = X.entries.reshape(N_A * nB, nC * N_D)
    K = X.entries.transpose(0, 2, 1, 3).reshape(N_A * nC, nB * N_D)
    return MarginalPair(M @ M.conj().T, K @ K.conj().T, X.dims)


def normalization(dims, regime, n):
    """``(m N_A)^(2n+1)`` (unbalanced) or ``(N_A N)^(2n+1)`` (balanced)."""
    N_A, nB = dims[0], dims[1]
    if regime not in ("unbalanced", "balanced"):
        raise ValueError(f"unknown regime {regime!r}")
    return float(N_A * nB) ** (2 * n + 1)


def trace_power_sums(pair: MarginalPair, n_max):
    """``Tr((V_AB V_AC)^n)`` for ``n = 1..n_max`` by repeated multiplication."""
    prod = pair.V_AB @ pair.V_AC
    out = []
    P = np.eye(prod.shape[0], dtype=prod.dtype)
    for _ in range(n_max):
        P = P @ prod
        out.append(float(np.trace(P).real))
    return out


def empirical_moments(pair: MarginalPair, n_max, regime="unbalanced"):
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    sums = trace_power_sums(pair, n_max)
    return [s / normalization(pair.dims, regime, n) for n, s in enumerate(sums, start=1)]


def first_moment_gram(X: GaussianTensor, regime="unbalanced"):
    """
    Normalised ``Tr(V_AB V_AC)`` as ``||M^* K||_F^2`` without forming the
    marginals; one large product instead of three.
    """
    N_A, nB, nC, N_D = X.dims
    M = X.entries.reshape(N_A * nB, nC * N_D)
    K = X.entries.transpose(0, 2, 1, 3).reshape(N_A * nC, nB * N_D)
    G = M.conj().T @ K
    return float(np.vdot(G, G).real) / normalization(X.dims, regime, 1)


def _psd_sqrt(V):
    lam, U = np.linalg.eigh(V)
    scale = max(1.0, float(np.abs(lam).max()))
    if lam.min() < -PSD_RTOL * scale:
        raise EigensolverFailure(f"matrix is not PSD: min eigenvalue {lam.min():.3e}")
    lam = np.clip(lam, 0.0, None)
    return (U * np.sqrt(lam)) @ U.conj().T


def empirical_spectrum(pair: MarginalPair, regime="unbalanced", seed=None) -> SpectralSample:
    """Eigenvalues of ``V_AB^(1/2) V_AC V_AB^(1/2)``, scaled by the regime's ``(.)^-2``."""
    R = _psd_sqrt(pair.V_AB)
    P = R @ pair.V_AC @ R
    P = 0.5 * (P + P.conj().T)
    lam, U = np.linalg.eigh(P)
    resid = np.linalg.norm(P @ U - U * lam) / max(1.0, np.linalg.norm(P))
    if resid > 1e-8:
        raise EigensolverFailure(f"eigen-residual {resid:.3e}")
    N_A, nB = pair.dims[0], pair.dims[1]
    lam = np.sort(lam) / float(N_A * nB) ** 2
    return SpectralSample(lam, seed, pair.dims, regime)


def histogram(eigs, edges):
    counts, edges = np.histogram(eigs, bins=edges)
    return counts, edges


def histogram_l1(eigs, density_curve, bins=40, upper=None):
    """
    ``sum_bins |p_emp - p_theory|`` over equal bins on ``[0, upper]``;
    theory bin masses come from the trapezoid CDF of the density curve,
    with everything left of the first edge assigned to the first bin.
    """
    lam, rho = density_curve.lambdas, density_curve.rho
    hi = upper if upper is not None else float(max(np.max(eigs), lam[rho > 1e-6].max()))
    edges = np.linspace(0.0, hi * 1.0001, bins + 1)
    counts, _ = np.histogram(eigs, bins=edges)
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (rho[1:] + rho[:-1]) * np.diff(lam))])
    cdf = np.interp(edges, lam, cum)
    cdf[0] = 0.0
    return float(np.abs(counts / len(eigs) - np.diff(cdf)).sum())


@dataclass
class FreenessReport:
    N: int
    N_A: int
    N_D: int
    seeds: list
    mixed_centered: float
    mixed_stderr: float
    z_score: float
    single_moments: list
    mp_moments: list
    per_seed: list = field(default_factory=list)

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _phi(A, norm):
    return float(np.trace(A).real) / norm


def mixed_moment_freeness_probe(N, c_val, seeds, N_A=2, N_D=None) -> FreenessReport:
    """
    Alternating centred four-point moment ``phi(a0 b0 a0 b0)`` of the
    normalised marginals ``a = V_AB/(N_A N)``, ``b = V_AC/(N_A N)`` with
    ``phi = Tr/(N_A N)``; freeness forces it to vanish as ``N`` grows.
    """
    N_D = N_D if N_D is not None else max(1, int(round(c_val * N_A)))
    vals, singles = [], []
    for s in seeds:
        X = sample_tensor(N_A, N, N, N_D, s)
        pair = marginals(X)
        d = N_A * N
        a = pair.V_AB / d
        b = pair.V_AC / d
        I = np.eye(d)
        a0 = a - _phi(a, d) * I
        b0 = b - _phi(b, d) * I
        ab = a0 @ b0
        vals.append(float(np.sum(ab * ab.T).real) / d)
        singles.append([_phi(np.linalg.matrix_power(a, k), d) for k in (1, 2, 3)])
    vals = np.array(vals)
    mean = float(vals.mean())
    se = float(vals.std(ddof=1) / np.sqrt(len(vals))) if len(vals) > 1 else float("inf")
    c = N_D / N_A
    mp = [c, c * c + c, c ** 3 + 3 * c * c + c]
    sm = np.mean(np.array(singles), axis=0).tolist()
    return FreenessReport(N, N_A, N_D, list(seeds), mean, se, mean / se if se > 0 else float("inf"), sm, mp, vals.tolist())


def run_record(seed, dims, regime, moments, eigenvalues=None, bins=50, config=None):
    """Per-run JSON record."""
    rec = {"seed": seed, "dims": list(dims), "regime": regime, "rng": RNG_ALGORITHM,
           "normalized_moments": [float(m) for m in moments]}
    if eigenvalues is not None:
        counts, edges = np.histogram(eigenvalues, bins=bins)
        rec["eigenvalues_histogram"] = {"edges": edges.tolist(), "counts": counts.tolist()}
    if config is not None:
        rec["config"] = config
    return rec


def dump_records(records, path):
    with open(path, "w") as fh:
        json.dump(records, fh, indent=1)
