import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from marginal_resolvent.errors import NonPlanarMap, TooLarge
from marginal_resolvent.exactalg import MultiPoly
from marginal_resolvent.maps import (
    EdgeTypedMap,
    Permutation,
    alt_statistic,
    cycle_count,
    dump_planar_maps,
    enumerate_moment,
    enumerate_moments,
    is_planar,
    iter_planar_maps,
    weight,
)
from marginal_resolvent.reference import printed_moments

from oracles import brute_force_moment
from strategies import permutations_of

c, y = MultiPoly.symbols("c y")
FIG = Permutation.from_cycles("(2)(5)(6)(143)", 6)


def _from_counts(counts):
    total = MultiPoly.const(0)
    for (w, a), n in counts.items():
        total = total + MultiPoly.monomial({"c": w, "y": a}, n)
    return total


def test_cycle_count_examples():
    assert cycle_count(Permutation.identity(4)) == 4
    assert cycle_count(Permutation.from_cycles("(1234)")) == 1
    assert cycle_count(FIG) == 4


def test_planarity_examples():
    assert is_planar(EdgeTypedMap(1, Permutation.identity(2)))
    assert is_planar(EdgeTypedMap(1, Permutation.from_cycles("(12)")))
    assert is_planar(EdgeTypedMap(3, FIG))
    # (13)(24) on four edges sits on the torus
    assert not is_planar(EdgeTypedMap(2, Permutation.from_cycles("(13)(24)")))


def test_alt_statistic_examples():
    m = EdgeTypedMap(3, FIG)
    assert alt_statistic(m, (2,)) == 0
    assert alt_statistic(m, (1, 4, 3)) == 2
    assert alt_statistic(m, (4, 3, 1)) == 2
    assert alt_statistic(EdgeTypedMap(1, Permutation.from_cycles("(12)")), (1, 2)) == 2
    with pytest.raises(ValueError):
        alt_statistic(m, (1, 3, 4))


def test_weight_examples():
    assert weight(EdgeTypedMap(3, FIG)) == c ** 4 * y ** 2
    assert weight(EdgeTypedMap(1, Permutation.identity(2))) == c ** 2
    assert weight(EdgeTypedMap(1, Permutation.from_cycles("(12)"))) == c * y ** 2


def test_weight_rejects_non_planar():
    with pytest.raises(NonPlanarMap):
        weight(EdgeTypedMap(2, Permutation.from_cycles("(13)(24)")))


@settings(max_examples=80)
@given(st.integers(1, 4).flatmap(lambda k: st.tuples(st.just(k), permutations_of(2 * k))))
def test_alt_is_even_and_genus_nonnegative(case):
    k, imgs = case
    m = EdgeTypedMap(k, Permutation(imgs))
    excess = cycle_count(m.sigma_circ) - 2 * k + len(m.faces()) - 1
    assert excess <= 0 and excess % 2 == 0
    for v in m.white_vertices():
        assert alt_statistic(m, v) % 2 == 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_enumeration_matches_printed_moments(k):
    assert enumerate_moment(k) == printed_moments()[k]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_enumeration_matches_pure_python_oracle(k):
    assert enumerate_moment(k) == _from_counts(brute_force_moment(k))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_iterator_agrees_with_vectorised_sum(k):
    total = MultiPoly.const(0)
    for m in iter_planar_maps(k):
        total = total + weight(m)
    assert total == enumerate_moment(k)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_type_assignment_does_not_matter(k):
    assert enumerate_moment(k, odd_type=0) == enumerate_moment(k, odd_type=1)


def test_planar_map_count_is_catalan_like():
    # at c = y = 1 the moment counts planar maps: (2k)! restricted to genus 0 is Catalan(2k)
    assert [enumerate_moment(k).evaluate({"c": 1, "y": 1}) for k in (1, 2, 3)] == [2, 14, 132]


def test_too_large():
    with pytest.raises(TooLarge):
        enumerate_moment(6)
    with pytest.raises(TooLarge):
        enumerate_moment(3, max_k=2)


def test_moment_table():
    t = enumerate_moments(2)
    assert len(t) == 3
    assert t.evaluate(y=1, c=1) == [1, 2, 14]
    assert t.to_json()[0] == "1"


def test_dump_planar_maps():
    fh = io.StringIO()
    n = dump_planar_maps(2, fh)
    lines = fh.getvalue().splitlines()
    assert n == len(lines) == 14
    rec = json.loads(lines[0])
    assert set(rec) == {"k", "sigma_circ", "weight"}
    assert Permutation.from_cycles(rec["sigma_circ"], 4).n == 4
