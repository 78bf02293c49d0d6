import json

import numpy as np
import pytest

from marginal_resolvent.errors import DimensionMismatch, EigensolverFailure
from marginal_resolvent.montecarlo import (
    RNG_ALGORITHM,
    dump_records,
    empirical_moments,
    empirical_spectrum,
    first_moment_gram,
    histogram_l1,
    marginals,
    mixed_moment_freeness_probe,
    normalization,
    run_record,
    sample_tensor,
    trace_power_sums,
    _psd_sqrt,
)
from marginal_resolvent.resolvent import DensityCurve

from oracles import narayana_mp_moment


def test_determinism():
    a, b = sample_tensor(6, 2, 2, 5, 11), sample_tensor(6, 2, 2, 5, 11)
    assert np.array_equal(a.entries, b.entries)
    pa, pb = marginals(a), marginals(b)
    assert empirical_moments(pa, 3) == empirical_moments(pb, 3)
    ea, eb = empirical_spectrum(pa, seed=11), empirical_spectrum(pb, seed=11)
    assert np.array_equal(ea.eigenvalues, eb.eigenvalues)
    assert not np.array_equal(a.entries, sample_tensor(6, 2, 2, 5, 12).entries)


def test_entry_normalisation():
    X = sample_tensor(100, 10, 10, 100, 0)
    e = X.entries
    assert e.size == 10 ** 6
    assert abs(np.mean(np.abs(e) ** 2) - 1) < 0.01
    assert abs(np.mean(e.real ** 2) - 0.5) < 0.01
    assert abs(np.mean(e.real * e.imag)) < 0.01


def test_scalar_tensor():
    X = sample_tensor(1, 1, 1, 1, 3)
    assert X.entries.shape == (1, 1, 1, 1)
    pair = marginals(X)
    x2 = abs(X.entries.ravel()[0]) ** 2
    assert pair.V_AB.shape == (1, 1)
    assert pair.V_AB[0, 0] == pytest.approx(x2) and pair.V_AC[0, 0] == pytest.approx(x2)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        sample_tensor(3, 2, 3, 3, 0)
    with pytest.raises(ValueError):
        sample_tensor(0, 2, 2, 3, 0)


def test_marginals_against_index_sums():
    X = sample_tensor(2, 3, 3, 2, 5)
    x = X.entries
    V_AB = np.einsum("abcd,ABcd->abAB", x, x.conj()).reshape(6, 6)
    V_AC = np.einsum("abcd,AbCd->acAC", x, x.conj()).reshape(6, 6)
    pair = marginals(X)
    assert np.allclose(pair.V_AB, V_AB) and np.allclose(pair.V_AC, V_AC)


@pytest.mark.parametrize("seed", range(3))
def test_marginal_invariants(seed):
    X = sample_tensor(8, 3, 3, 7, seed)
    pair = marginals(X)
    norm2 = float(np.sum(np.abs(X.entries) ** 2))
    for V in (pair.V_AB, pair.V_AC):
        assert np.trace(V).real == pytest.approx(norm2, rel=1e-12)
        assert np.linalg.norm(V - V.conj().T) < 1e-12 * np.linalg.norm(V)
        assert np.linalg.eigvalsh(V).min() > -1e-10 * np.linalg.norm(V)


def test_expected_trace():
    dims = (10, 3, 3, 12)
    traces = [np.trace(marginals(sample_tensor(*dims, s)).V_AB).real for s in range(40)]
    assert np.mean(traces) == pytest.approx(np.prod(dims), rel=0.01)


@pytest.mark.parametrize("regime", ["unbalanced", "balanced"])
def test_power_sums_match_spectrum(regime):
    pair = marginals(sample_tensor(7, 3, 3, 6, 2))
    sums = trace_power_sums(pair, 4)
    eig = empirical_spectrum(pair, regime).eigenvalues * float(7 * 3) ** 2
    for n, s in enumerate(sums, start=1):
        assert np.sum(eig ** n) == pytest.approx(s, rel=1e-8)
    mom = empirical_moments(pair, 4, regime)
    assert mom[0] == pytest.approx(sums[0] / normalization(pair.dims, regime, 1))


def test_spectrum_is_nonnegative():
    ev = empirical_spectrum(marginals(sample_tensor(20, 2, 2, 5, 1))).eigenvalues
    assert ev.min() > -1e-8
    assert np.all(np.diff(ev) >= 0)


def test_psd_check():
    with pytest.raises(EigensolverFailure):
        _psd_sqrt(np.diag([1.0, -1.0]))
    R = _psd_sqrt(np.diag([4.0, 9.0]))
    assert np.allclose(R, np.diag([2.0, 3.0]))


def test_gram_route_equals_trace():
    X = sample_tensor(9, 4, 4, 5, 8)
    assert first_moment_gram(X) == pytest.approx(empirical_moments(marginals(X), 1)[0], rel=1e-10)


def test_normalisation():
    assert normalization((3, 2, 2, 5), "unbalanced", 1) == 6.0 ** 3
    with pytest.raises(ValueError):
        normalization((3, 2, 2, 5), "other", 1)
    with pytest.raises(ValueError):
        empirical_moments(marginals(sample_tensor(2, 2, 2, 2, 0)), 0)


def test_moments_converge_with_size():
    """M1, M2 at y = 1/2, c = 1 are 1.25 and 5.1875."""
    better = 0
    for s in range(5):
        dev = []
        for N in (10, 150):
            m = empirical_moments(marginals(sample_tensor(N, 2, 2, N, s)), 2)
            dev.append(abs(m[0] - 1.25) / 1.25 + abs(m[1] - 5.1875) / 5.1875)
        better += dev[1] < dev[0]
    assert better >= 4


def test_histogram_l1_against_uniform():
    lam = np.linspace(-0.5, 1.5, 2001)
    rho = ((lam >= 0) & (lam <= 1)).astype(float)
    d = DensityCurve(lam, rho, 1.0, 1.0, 1e-6)
    eigs = np.random.default_rng(0).uniform(0, 1, 20000)
    assert histogram_l1(eigs, d, bins=20, upper=1.0) < 0.05
    assert histogram_l1(eigs ** 2, d, bins=20, upper=1.0) > 0.3


def test_freeness_probe():
    small = mixed_moment_freeness_probe(30, 1, range(6))
    big = mixed_moment_freeness_probe(90, 1, range(6))
    assert abs(big.mixed_centered) <= 3 * big.mixed_stderr + 1e-12
    assert big.mixed_stderr < small.mixed_stderr
    want = [float(narayana_mp_moment(n, 1)) for n in (1, 2, 3)]
    assert big.mp_moments == want
    assert np.allclose(big.single_moments, want, rtol=0.05)
    assert set(big.to_dict()) >= {"N", "mixed_centered", "mixed_stderr", "per_seed"}


def test_run_records(tmp_path):
    pair = marginals(sample_tensor(5, 2, 2, 5, 0))
    rec = run_record(0, pair.dims, "unbalanced", empirical_moments(pair, 2),
                     empirical_spectrum(pair).eigenvalues, bins=5, config={"c": "1"})
    dump_records([rec], tmp_path / "r.json")
    back = json.loads((tmp_path / "r.json").read_text())[0]
    assert back["rng"] == RNG_ALGORITHM
    assert back["dims"] == [5, 2, 2, 5]
    assert sum(back["eigenvalues_histogram"]["counts"]) == 10
