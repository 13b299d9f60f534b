import pytest

from dblcat.fincat import (Cone, Functor, all_cones, all_functors,
                           all_natural_transformations, comma_category,
                           compose_functors, find_isomorphism,
                           functor_count_oracle, identity_functor,
                           is_connected, limit, make_category,
                           mediating_morphisms, validate_category, NoLimit)
from dblcat import zoo


def test_stock_categories_are_valid():
    for cat in zoo.corpus_categories() + [zoo.empty_category(),
                                          zoo.span_shape(),
                                          zoo.cospan_shape()]:
        assert validate_category(cat) == []


def test_validation_catches_missing_composite():
    broken = make_category("B", ("0", "1", "2"),
                           {"a": ("0", "1"), "b": ("1", "2")})
    problems = validate_category(broken)
    assert any("composite b . a missing" in p for p in problems)


def test_validation_catches_wrong_units():
    cat = zoo.walking_arrow()
    bad_table = dict(cat.table)
    bad_table[("a", "1_0")] = "1_1"
    broken = cat.__class__(cat.name, cat.objects, cat.morphisms, cat.src,
                           cat.tgt, cat.identities, bad_table)
    problems = validate_category(broken)
    assert problems


def test_validation_catches_broken_associativity():
    # two generators with an endo that squares inconsistently
    cat = make_category(
        "E", ("0",), {"s": ("0", "0"), "t": ("0", "0")},
        {("s", "s"): "t", ("s", "t"): "s", ("t", "s"): "t", ("t", "t"): "t"})
    assert any("associativity" in p for p in validate_category(cat))


# frozen by the independent backtracking count
FUNCTOR_COUNTS = {
    ("One", "Two"): 2,
    ("Two", "Two"): 3,
    ("Two", "Three"): 6,
    ("Pair", "Two"): 3,
    ("Three", "Two"): 4,
    ("Pair", "Pair"): 6,
    ("Iso", "Two"): 2,
}


def test_functor_enumeration_matches_oracle():
    cats = {c.name: c for c in zoo.corpus_categories()}
    for (a, m), expected in FUNCTOR_COUNTS.items():
        fs = all_functors(cats[a], cats[m])
        assert len(fs) == expected
        assert functor_count_oracle(cats[a], cats[m]) == expected
        for f in fs:
            assert f.validate() == []


def test_functor_enumeration_is_deterministic():
    two, three = zoo.walking_arrow(), zoo.composable_pair()
    first = [(f.obj, f.mor) for f in all_functors(two, three)]
    second = [(f.obj, f.mor) for f in all_functors(two, three)]
    assert first == second


def test_compose_functors():
    two, three = zoo.walking_arrow(), zoo.composable_pair()
    for f in all_functors(two, three):
        assert compose_functors(identity_functor(three), f) == f
        assert compose_functors(f, identity_functor(two)) == f


def test_natural_transformations_walking_arrow():
    two = zoo.walking_arrow()
    fs = all_functors(two, two)
    # between the identity and itself: only the identity transformation
    ident = identity_functor(two)
    nts = all_natural_transformations(ident, ident)
    assert len(nts) == 1
    for nt in nts:
        assert nt.validate() == []


def test_limit_of_cospan_is_pullback():
    # in the poset 0 -> 1 -> 2 the limit of the cospan 0 -> 2 <- 1 is 0
    shape = zoo.cospan_shape()
    three = zoo.composable_pair()
    d = Functor("D", shape, three,
                {"0": "0", "1": "1", "2": "2"},
                {"1_0": "1_0", "1_1": "1_1", "1_2": "1_2",
                 "l": "ba", "r": "b"})
    assert d.validate() == []
    cone = limit(d)
    assert cone.apex == "0"
    assert cone.legs == {"0": "1_0", "1": "a", "2": "ba"}


def test_limit_failure_raises():
    # the parallel pair has no equalizer of its two arrows inside itself
    pp = zoo.parallel_pair()
    d = identity_functor(pp)
    with pytest.raises(NoLimit):
        limit(d)


def test_limit_terminal_object():
    # the limit of the empty diagram picks the terminal object
    empty = zoo.empty_category()
    three = zoo.composable_pair()
    d = Functor("E", empty, three, {}, {})
    cone = limit(d)
    assert cone.apex == "2"


def test_mediating_morphisms_unique_into_limit():
    shape = zoo.cospan_shape()
    three = zoo.composable_pair()
    d = Functor("D", shape, three,
                {"0": "0", "1": "1", "2": "2"},
                {"1_0": "1_0", "1_1": "1_1", "1_2": "1_2",
                 "l": "ba", "r": "b"})
    term = limit(d)
    for cone in all_cones(d):
        assert len(mediating_morphisms(term, cone)) == 1


def test_comma_category_slice_sizes():
    two = zoo.walking_arrow()
    # the slice 0/Two has two objects (1_0 and a), the slice 1/Two has one
    for obj, expected in [("0", 2), ("1", 1)]:
        comma = comma_category(zoo.pick(two, obj), identity_functor(two))
        assert len(comma.category.objects) == expected
        assert validate_category(comma.category) == []
        assert comma.proj_left.validate() == []
        assert comma.proj_right.validate() == []


def test_comma_category_canonical_square_commutes():
    two, three = zoo.walking_arrow(), zoo.composable_pair()
    f = all_functors(two, three)[2]
    g = all_functors(two, three)[3]
    comma = comma_category(f, g)
    cat, e = comma.category, f.target
    for m in cat.morphisms:
        x, y = cat.src[m], cat.tgt[m]
        left = e.compose(comma.components[y], f.mor[comma.proj_left.mor[m]])
        right = e.compose(g.mor[comma.proj_right.mor[m]], comma.components[x])
        assert left == right


def test_connectivity():
    assert is_connected(zoo.walking_arrow())
    assert is_connected(zoo.parallel_pair())
    assert not is_connected(zoo.discrete(2))
    assert not is_connected(zoo.empty_category())


def test_find_isomorphism():
    two = zoo.walking_arrow()
    relabeled = make_category("R", ("u", "w"), {"k": ("u", "w")})
    iso = find_isomorphism(two, relabeled)
    assert iso is not None
    fwd, bwd = iso
    assert fwd.validate() == [] and bwd.validate() == []
    assert compose_functors(bwd, fwd) == identity_functor(two)
    assert find_isomorphism(two, zoo.parallel_pair()) is None
    assert find_isomorphism(two, zoo.discrete(2)) is None
