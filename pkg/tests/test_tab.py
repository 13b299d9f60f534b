import helpers
from dblcat import kan, tab, zoo
from dblcat.fincat import (all_functors, comma_category, find_isomorphism,
                           identity_functor, validate_category)
from dblcat.prof import companion, unit_prof, validate_cell, validate_profunctor


def test_tabulation_of_walking_arrow_hom():
    t = tab.tabulate(unit_prof(zoo.walking_arrow()))
    # triples: (0, 1_0, 0), (0, a, 1), (1, 1_1, 1)
    assert set(t.category.objects) == {"(0,1_0,0)", "(0,a,1)", "(1,1_1,1)"}
    assert len(t.category.morphisms) == 6
    assert validate_category(t.category) == []
    assert t.proj_left.validate() == []
    assert t.proj_right.validate() == []
    assert validate_cell(t.cell) == []


def test_tabulation_universal_properties():
    two = zoo.walking_arrow()
    for j in [unit_prof(two), companion(zoo.pick(two, "0"))]:
        t = tab.tabulate(j)
        ok, report = tab.verify_tabulation(t)
        assert ok, report
        assert report["one_dimensional"] > 0
        assert report["two_dimensional"] > 0


def test_tabulations_are_opcartesian():
    two, three = zoo.walking_arrow(), zoo.composable_pair()
    for j in [unit_prof(two), unit_prof(three),
              companion(all_functors(two, three)[2])]:
        t = tab.tabulate(j)
        assert tab.is_opcartesian_tabulation(t)


def test_tabulation_over_corpus_is_well_formed():
    for j in helpers.profunctor_corpus():
        t = tab.tabulate(j)
        assert validate_category(t.category) == []
        assert t.proj_left.validate() == []
        assert t.proj_right.validate() == []
        assert validate_cell(t.cell) == []


def test_comma_object_matches_comma_category():
    two, three = zoo.walking_arrow(), zoo.composable_pair()
    configs = [
        (zoo.pick(two, "0"), identity_functor(two)),
        (identity_functor(two), zoo.pick(two, "1")),
        (all_functors(two, three)[1], all_functors(two, three)[2]),
    ]
    for f, g in configs:
        co = tab.comma_object(f, g)
        assert validate_cell(co.cell) == []
        cc = comma_category(f, g)
        iso = find_isomorphism(co.category, cc.category)
        assert iso is not None


def test_comma_object_cell_boundaries():
    two = zoo.walking_arrow()
    f = zoo.pick(two, "0")
    co = tab.comma_object(f, identity_functor(two))
    assert co.cell.vsrc.obj == {o: f.obj[co.proj_left.obj[o]]
                                for o in co.category.objects}


def test_ran_via_tabulation_agrees_with_pointwise():
    two, three = zoo.walking_arrow(), zoo.composable_pair()
    d = identity_functor(three)
    for f in all_functors(two, three):
        cand = kan.pointwise_ran(companion(f), d)
        assert tab.ran_via_tabulation(cand)
        assert tab.ran_via_tabulation(cand) == kan.is_pointwise_ran(cand)


def test_ran_via_tabulation_rejects_non_extensions():
    from dblcat.prof import cells_between
    two, three = zoo.walking_arrow(), zoo.composable_pair()
    d = identity_functor(three)
    j = companion(all_functors(two, three)[2])
    um = unit_prof(three)
    agree = []
    for s in all_functors(two, three):
        for eps in cells_between(j, um, s, d):
            cand = kan.RanCandidate(j, d, s, eps)
            agree.append(
                tab.ran_via_tabulation(cand) == kan.is_pointwise_ran(cand))
    assert agree and all(agree)
