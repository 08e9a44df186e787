from __future__ import annotations

import pytest
from hypothesis import given, settings

from ncofinal.category import (
    CategoryError,
    FinCategory,
    check,
    check_functor,
    compose_functors,
    diagonal,
    discrete,
    full_subcategory,
    identity_functor,
    is_connected,
    opposite,
    opposite_functor,
    parallel_pair,
    product,
    product_functor,
    projection,
    terminal,
    validate,
    validate_functor,
    walking_arrow,
)

from strategies import categories, functors


def test_builtin_shapes_are_valid():
    for C in (terminal(), discrete(["x", "y"]), walking_arrow(), parallel_pair(), discrete([])):
        assert validate(C) == []
    assert len(walking_arrow().non_identity()) == 1
    assert len(parallel_pair().non_identity()) == 2


def test_build_fills_identity_composites():
    C = FinCategory.build(["a", "b"], {"1a": ("a", "a"), "1b": ("b", "b"), "f": ("a", "b")}, {"a": "1a", "b": "1b"}, {})
    assert validate(C) == []
    assert C.compose("f", "1a") == "f"


def test_validation_names_the_broken_axiom():
    good = walking_arrow()
    f = good.non_identity()[0]
    broken = FinCategory(good.objects, dict(good.morphisms), dict(good.identities), dict(good.composition))
    del broken.composition[(f, good.identity(good.source(f)))]
    kinds = {v.kind for v in validate(broken)}
    assert kinds == {"missing composite"}
    with pytest.raises(CategoryError):
        check(broken)


def test_associativity_violation_detected():
    # one object, two non-identity endomorphisms e, z with a non-associative table
    morphisms = {"1": ("o", "o"), "e": ("o", "o"), "z": ("o", "o")}
    comp = {("e", "e"): "z", ("e", "z"): "e", ("z", "e"): "z", ("z", "z"): "z"}
    C = FinCategory.build(["o"], morphisms, {"o": "1"}, comp)
    assert "associativity" in {v.kind for v in validate(C)}


def test_functor_validation():
    A = walking_arrow()
    F = identity_functor(A)
    assert validate_functor(F) == []
    f = A.non_identity()[0]
    bad = type(F)(A, A, dict(F.object_map), {**F.morphism_map, f: A.identity(A.source(f))})
    assert validate_functor(bad)
    with pytest.raises(CategoryError):
        check_functor(bad)


@given(categories())
def test_opposite_is_an_involution(C):
    assert validate(opposite(C)) == []
    assert opposite(opposite(C)) == C


@settings(max_examples=30)
@given(categories(max_morphisms=6), categories(max_morphisms=6))
def test_product_and_projections(C, D):
    P = product(C, D)
    assert validate(P) == []
    assert len(P.morphisms) == len(C.morphisms) * len(D.morphisms)
    assert validate_functor(projection(C, D, 0)) == []
    assert validate_functor(projection(C, D, 1)) == []
    assert validate_functor(diagonal(C)) == []


@settings(max_examples=30)
@given(functors(max_morphisms=6), functors(max_morphisms=6))
def test_functor_products_and_composites(p, q):
    assert validate_functor(product_functor(p, q)) == []
    assert validate_functor(opposite_functor(p)) == []
    assert compose_functors(identity_functor(p.codomain), p) == p


@given(categories())
def test_full_subcategories(C):
    keep = C.objects[: max(1, len(C.objects) // 2)]
    S, incl = full_subcategory(C, keep)
    assert validate(S) == [] and validate_functor(incl) == []
    assert all(C.hom(a, b) == S.hom(a, b) for a in keep for b in keep)


def test_connectedness():
    assert is_connected(walking_arrow())
    assert not is_connected(discrete(["x", "y"]))
