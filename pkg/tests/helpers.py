"""Shared fixtures and independent check constructions for the test suite."""

import itertools

from dblcat.fincat import all_functors, identity_functor
from dblcat.prof import (Cell, cells_between, companion, compose_prof,
                         conjoint, family_id, pair_id, restrict, rhom,
                         unit_prof)
from dblcat import zoo


def profunctor_corpus():
    """Small named profunctors with varied shapes."""
    one, two, three = (zoo.terminal_category(), zoo.walking_arrow(),
                       zoo.composable_pair())
    pp = zoo.parallel_pair()
    out = [unit_prof(two), unit_prof(pp), unit_prof(three)]
    out += [companion(f) for f in all_functors(two, three)]
    out += [conjoint(f) for f in all_functors(one, three)]
    out += [companion(f) for f in all_functors(pp, two)]
    out += [conjoint(f) for f in all_functors(two, two)]
    return out


def composable_pairs(limit=40):
    pairs = []
    corpus = profunctor_corpus()
    for j, h in itertools.product(corpus, repeat=2):
        if j.target == h.source:
            pairs.append((j, h))
        if len(pairs) >= limit:
            break
    return pairs


def restriction_iso_cell(k, f, g):
    """The comparison cell f_* * (K * g^*) -> K(f, g).

    It sends the class of (p : f a -> c, x in K(c, d), q : d -> g b) to
    the two-sided action of p and q on x; the restriction being the
    three-fold composite amounts to this cell being a componentwise
    bijection.
    """
    inner, w_inner = compose_prof(k, conjoint(g))
    triple, w_outer = compose_prof(companion(f), inner)
    r = restrict(k, f, g)
    outer_ids = {key: {pair_id(*rep): rep for rep in set(cls.values())}
                 for key, cls in w_outer.classes.items()}
    inner_ids = {key: {pair_id(*rep): rep for rep in set(cls.values())}
                 for key, cls in w_inner.classes.items()}
    comp = {}
    for a, b, cid in triple.elements():
        c, p, mid = outer_ids[(a, b)][cid]
        d, x, q = inner_ids[(c, b)][mid]
        comp[(a, b, cid)] = k.act(p, c, d, x, q)
    return Cell(f"rcomp_{k.name}", triple, r,
                identity_functor(f.source), identity_functor(g.source), comp)


def rhom_transpose(phi, w_jh, rh_prof, j):
    """Carry a cell J * H -> K across the adjunction to J -> K <| H."""
    h, k = w_jh.right, phi.htgt
    ec = k.target
    comp = {}
    for a, b, x in j.elements():
        fam = {}
        for e in ec.objects:
            fam[e] = {y: phi.comp[(a, e, w_jh.class_id(a, e, b, x, y))]
                      for y in h.fiber(b, e)}
        comp[(a, b, x)] = family_id(ec.objects, fam)
    return Cell(f"tr_{phi.name}", j, rh_prof,
                identity_functor(j.source), identity_functor(j.target), comp)


def rhom_untranspose(psi, w_jh, rh_witness, k):
    """The inverse passage, J -> K <| H back to J * H -> K."""
    jh = w_jh.composite
    ids = {key: {pair_id(*rep): rep for rep in set(cls.values())}
           for key, cls in w_jh.classes.items()}
    comp = {}
    for a, e, cid in jh.elements():
        b, x, y = ids[(a, e)][cid]
        fam = rh_witness.family(a, b, psi.comp[(a, b, x)])
        comp[(a, e, cid)] = fam[e][y]
    return Cell(f"un_{psi.name}", jh, k,
                identity_functor(jh.source), identity_functor(jh.target), comp)


def adjunction_setups():
    """Triples (J, H, K) with J : A -/-> B, H : B -/-> E, K : A -/-> E."""
    one, two, three = (zoo.terminal_category(), zoo.walking_arrow(),
                       zoo.composable_pair())
    p0, p1 = zoo.pick(two, "0"), zoo.pick(two, "1")
    emb = all_functors(two, three)[2]
    return [
        (companion(p0), unit_prof(two), companion(p0)),
        (companion(p0), unit_prof(two), companion(p1)),
        (companion(p1), conjoint(p0), unit_prof(one)),
        (unit_prof(two), companion(emb), companion(emb)),
    ]
