from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncofinal.category import validate
from ncofinal.delta import (
    MonotoneMap,
    RankMismatch,
    codegeneracy,
    coface,
    compose,
    delta_inclusion,
    delta_leq,
    delta_s_leq,
    enumerate_monotone,
    ez_factor,
    morphism_map,
    surjections,
)

from oracles import epi_mono_pairs, monotone_maps


@st.composite
def monotone(draw, max_rank: int = 4):
    m = draw(st.integers(0, max_rank))
    n = draw(st.integers(0, max_rank))
    values = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return MonotoneMap(tuple(values), n)


def test_rejects_non_monotone_and_out_of_range():
    with pytest.raises(ValueError):
        MonotoneMap((1, 0), 1)
    with pytest.raises(ValueError):
        MonotoneMap((0, 2), 1)
    with pytest.raises(ValueError):
        MonotoneMap((), 0)


def test_composition_rank_mismatch():
    with pytest.raises(RankMismatch):
        compose(MonotoneMap((0, 1), 1), MonotoneMap((0, 1, 2), 2))


def test_cosimplicial_identities():
    for n in range(2, 5):
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                # d^j d^i = d^i d^{j-1}
                assert compose(coface(n, j), coface(n - 1, i)) == compose(coface(n, i), coface(n - 1, j - 1))
    for n in range(1, 5):
        for i in range(n):
            assert compose(codegeneracy(n - 1, i), coface(n, i)).is_identity()
            assert compose(codegeneracy(n - 1, i), coface(n, i + 1)).is_identity()


@given(monotone())
def test_ez_factorization_is_unique_and_correct(f):
    s, i = ez_factor(f)
    assert s.is_surjective() and i.is_injective()
    assert compose(i, s) == f
    pairs = epi_mono_pairs(f.values, f.target_rank)
    assert pairs == [(s.values, i.values)]


@given(monotone(), st.data())
def test_composition_associative(f, data):
    g = data.draw(monotone().filter(lambda g: g.source_rank == f.target_rank))
    h = data.draw(monotone().filter(lambda h: h.source_rank == g.target_rank))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@pytest.mark.parametrize("m", range(4))
@pytest.mark.parametrize("n", range(4))
def test_enumeration_matches_oracle(m, n):
    assert [f.values for f in enumerate_monotone(m, n)] == sorted(monotone_maps(m, n))
    assert all(f.is_surjective() for f in surjections(m, n))


@pytest.mark.parametrize("N", range(4))
def test_truncated_categories_are_valid(N):
    for C in (delta_leq(N), delta_s_leq(N)):
        assert validate(C) == []
        assert len(C.objects) == N + 1


def test_morphism_ids_round_trip():
    C = delta_leq(2)
    for m in C.morphisms:
        f = morphism_map(m)
        assert str(f) == m
        assert C.morphisms[m] == (f"[{f.source_rank}]", f"[{f.target_rank}]")


def test_inclusions():
    p = delta_inclusion(delta_s_leq(2), delta_leq(2))
    assert set(p.object_map.values()) == {"[0]", "[1]", "[2]"}
    with pytest.raises(ValueError):
        delta_inclusion(delta_leq(1), delta_s_leq(1))
