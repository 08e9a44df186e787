"""Library results against values frozen from the brute-force oracles."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from ncofinal import sset
from ncofinal.category import diagonal, identity_functor, opposite
from ncofinal.colimits import colim_finset, lim_finset
from ncofinal.category import FinCategory, parallel_pair
from ncofinal.constructions import coslice, coslice_along, multislice, nerve, slice_along
from ncofinal.delta import MonotoneMap, compose, delta_inclusion, delta_leq, delta_s_leq, enumerate_monotone, ez_factor
from ncofinal.diagrams import SetDiagram
from ncofinal.topology import chain_complex, homology, smith_normal_form

FROZEN = json.loads((Path(__file__).parent / "data" / "oracle_values.json").read_text())


def counts(C: FinCategory) -> list[int]:
    return [len(C.objects), len(C.morphisms)]


def test_monotone_composition_and_factorization():
    v = FROZEN["monotone"]
    assert list(compose(MonotoneMap((0, 1, 3), 3), MonotoneMap((1, 2), 2)).values) == v["compose_013_12"]
    s, i = ez_factor(MonotoneMap((0, 0, 2), 2))
    assert [[list(s.values), list(i.values)]] == v["epi_mono_002"]


@pytest.mark.parametrize("a", range(4))
@pytest.mark.parametrize("b", range(4))
def test_hom_set_sizes(a, b):
    maps = enumerate_monotone(a, b)
    assert len(maps) == FROZEN["monotone"]["hom_sizes"][f"{a},{b}"]
    assert sum(f.is_injective() for f in maps) == FROZEN["monotone"]["injective_hom_sizes"][f"{a},{b}"]


@pytest.mark.parametrize("name", sorted(FROZEN["delta"]))
def test_truncated_delta_and_nerve(name):
    N = int(name[-1])
    C = delta_s_leq(N) if name.startswith("delta_s") else delta_leq(N)
    want = FROZEN["delta"][name]
    assert counts(C) == [want["objects"], want["morphisms"]]
    if want["nerve_nondegenerate"][2] <= 400:
        K = nerve(C, 2)
        assert [K.count(k) for k in range(3)] == want["nerve_nondegenerate"]


def test_diagonal_commas_of_delta1():
    v = FROZEN["commas"]
    d = diagonal(delta_leq(1))
    assert len(d.codomain.morphisms) == v["product_delta1_delta1_morphisms"]
    target = d.ob("[1]")
    assert counts(coslice_along(d, target)) == v["diagonal_coslice_along_11"]
    assert counts(slice_along(d, target)) == v["diagonal_slice_along_11"]


def test_coslices_and_pair_comma_of_semisimplicial_op():
    v = FROZEN["commas"]
    C = opposite(delta_s_leq(1))
    for k, want in v["coslice_delta_s1_op"].items():
        assert counts(coslice(C, f"[{k}]")) == want
    M = multislice(C, ("[0]", "[1]"))
    objs, non_id, comps = v["pair_comma_delta_s1_op_01"]
    assert len(M.objects) == objs and len(M.non_identity()) == non_id
    from ncofinal.topology import pi0

    assert pi0(nerve(M, 1))[0] == comps


@pytest.mark.parametrize("N", [1, 2])
def test_inclusion_commas(N):
    p = delta_inclusion(delta_s_leq(N), delta_leq(N))
    want = FROZEN["commas"][f"incl_delta_s{N}_delta{N}"]
    for k, w in want["co"].items():
        assert counts(coslice_along(p, f"[{k}]")) == w
    for k, w in want["sl"].items():
        assert counts(slice_along(p, f"[{k}]")) == w


def test_identity_functor_commas_are_coslices():
    C = opposite(delta_s_leq(1))
    assert coslice_along(identity_functor(C), "[1]") == coslice(C, "[1]")


def test_simplex_counts():
    v = FROZEN["simplicial"]
    assert len(sset.from_ordered_complex([(0, 1)], truncation=2).all_simplices(2)) == v["standard_1_all_2"]
    assert len(sset.boundary(2).all_simplices(2)) == v["boundary_2_all_2"]
    edge = sset.from_ordered_complex([(0, 1)], truncation=2)
    sq = sset.product(edge, edge)
    assert len(sq.all_simplices(1)) == v["square_all_1"]
    assert [sq.count(k) for k in range(3)] == v["square_nondegenerate"]


def test_algebra():
    v = FROZEN["algebra"]
    assert list(smith_normal_form([[2, 4], [6, 8]]).factors) == v["snf_2_4_6_8"]
    cc = chain_complex(sset.boundary(2))
    assert len(smith_normal_form(cc.boundaries[1]).factors) == v["boundary_2_d1_rank"]
    H = homology(sset.boundary(3))[:3]
    assert [h.betti for h in H] == v["boundary_3_betti"]
    assert all(not h.torsion for h in H)
    H = homology(sset.projective_plane())
    assert [h.betti for h in H] == v["rp2_betti_q"]
    # ranks over F_2 and F_3 via universal coefficients
    torsion2 = [sum(1 for t in h.torsion if t % 2 == 0) for h in H]
    f2 = [H[k].betti + torsion2[k] + (torsion2[k - 1] if k else 0) for k in range(3)]
    assert f2 == v["rp2_betti_f2"]
    assert v["rp2_betti_f3"] == v["rp2_betti_q"]
    assert all(t % 3 for h in H for t in h.torsion)


def test_small_colimits_and_limits():
    v = FROZEN["colimits"]
    J = parallel_pair()
    D = SetDiagram.build(J, {"0": (0, 1), "1": ("a", "b")}, {"s": {0: "a", 1: "b"}, "t": {0: "b", 1: "a"}})
    assert colim_finset(D).count == v["parallel_pair_swap_classes"]
    assert len(lim_finset(D)) == v["parallel_pair_swap_limit"]
