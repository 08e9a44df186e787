from __future__ import annotations

import random

from hypothesis import given, settings

from ncofinal.category import validate, validate_functor
from ncofinal.colimits import colim_in_category
from ncofinal.diagrams import validate_diagram, validate_sset_diagram
from ncofinal.fixtures import no_coequalizer, pair_into
from ncofinal.random_gen import (
    enumerate_functors,
    functor_corpus,
    random_category,
    random_set_diagram,
    random_sset_diagram,
    random_sset_sample,
)
from ncofinal.serialize import dumps
from ncofinal.sset import validate_sset

import oracles as o
from strategies import seeds


@given(seeds)
def test_random_categories_respect_bounds(seed):
    C = random_category(random.Random(seed), max_objects=3, max_morphisms=8)
    assert validate(C) == []
    assert 1 <= len(C.objects) <= 3 and len(C.morphisms) <= 8


@settings(max_examples=30)
@given(seeds)
def test_functor_enumeration_is_complete(seed):
    rng = random.Random(seed)
    C = random_category(rng, max_objects=2, max_morphisms=4)
    D = random_category(rng, max_objects=2, max_morphisms=4)
    found = list(enumerate_functors(C, D))
    assert all(validate_functor(F) == [] for F in found)
    assert len(found) == len(o.all_functors(o.table(C), o.table(D)))


@settings(max_examples=40)
@given(seeds)
def test_random_diagrams_are_valid(seed):
    rng = random.Random(seed)
    C = random_category(rng)
    D = random_set_diagram(rng, C, max_size=4)
    assert validate_diagram(D) == []
    assert all(len(v) <= 4 for v in D.values.values())
    F = random_sset_diagram(rng, max_nondeg=8, max_set=4)
    assert validate_sset_diagram(F) == []
    assert sum(F.base.count(k) for k in range(3)) <= 8


def test_generation_is_seeded():
    a = [dumps(F) for F in functor_corpus(11, 20)]
    b = [dumps(F) for F in functor_corpus(11, 20)]
    assert a == b
    assert [dumps(S) for S in random_sset_sample(5, 10)] == [dumps(S) for S in random_sset_sample(5, 10)]
    assert all(validate_sset(S) == [] for S in random_sset_sample(5, 10))


def test_no_coequalizer_fixture():
    C = no_coequalizer()
    assert validate(C) == []
    assert colim_in_category(C, pair_into(C, "s", "t"))[0] == "c"
    assert colim_in_category(C, pair_into(C, "u", "v")) is None
