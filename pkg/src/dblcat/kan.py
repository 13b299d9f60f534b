"""Right Kan extensions along profunctors, decided by finite enumeration.

A candidate extension is a cell eps : J -> 1_M over (r, d); it is a right
extension when every competitor cell factors through it by a unique
natural transformation, and pointwise when in addition morphisms
m -> r(a) correspond to natural families J(a, b) -> M(m, d b).  Both
properties are decided exactly on the given finite data; the pointwise
check runs two independent procedures and refuses to answer if they ever
disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (FinCategory, Functor, NatTransf, NoLimit, all_functors,
                     all_natural_transformations, comma_category,
                     compose_functors, identity_functor, is_connected, limit,
                     make_category, mediating_morphisms, Cone)
from .prof import (Cell, Profunctor, cartesian_cell, cells_between,
                   componentwise_bijective, compose_prof, conjoint,
                   family_id, lower_star, pair_id, rhom, unit_prof,
                   validate_cell, vcompose)
from . import zoo


class OracleDisagreement(Exception):
    """Two independent decision procedures returned different verdicts."""


@dataclass(frozen=True, eq=True)
class RanCandidate:
    """Candidate right extension of d : B -> M along J : A -/-> B."""

    j: Profunctor
    d: Functor
    r: Functor
    eps: Cell

    def __hash__(self):
        return hash((self.j, self.r, self.eps))

    def validate(self):
        problems = validate_cell(self.eps)
        if self.eps.vsrc != self.r or self.eps.vtgt != self.d:
            problems.append("cell boundary does not match (r, d)")
        if self.eps.hsrc != self.j or self.eps.htgt != unit_prof(self.d.target):
            problems.append("cell is not J -> 1_M")
        return problems


def elements_category(j, a):
    """The category of elements of J(a, -) with its projection to B.

    Objects are pairs (b, x) with x in J(a, b); a morphism v : b -> b'
    connects (b, x) to (b', v . x).
    """
    bc = j.target
    objs = [(b, x) for b in bc.objects for x in j.fiber(a, b)]
    oid = {o: f"({o[0]},{o[1]})" for o in objs}
    arrows = {}
    data = {}
    for (b, x) in objs:
        for v in bc.morphisms:
            if bc.src[v] != b or bc.is_identity(v):
                continue
            b2 = bc.tgt[v]
            x2 = j.act_right(a, b, x, v)
            mid = f"[{v}]@{oid[(b, x)]}"
            arrows[mid] = (oid[(b, x)], oid[(b2, x2)])
            data[mid] = (v, (b, x), (b2, x2))
    stub = make_category(f"el({j.name},{a})", [oid[o] for o in objs], arrows)
    composites = {}
    for m2, (v2, s2, t2) in data.items():
        for m1, (v1, s1, t1) in data.items():
            if t1 != s2:
                continue
            v = bc.compose(v2, v1)
            if bc.is_identity(v) and s1 == t2:
                composites[(m2, m1)] = stub.identity(oid[s1])
            else:
                composites[(m2, m1)] = f"[{v}]@{oid[s1]}"
    cat = make_category(f"el({j.name},{a})", [oid[o] for o in objs],
                        arrows, composites)
    proj_obj = {oid[o]: o[0] for o in objs}
    proj_mor = {}
    for m in cat.morphisms:
        if cat.is_identity(m):
            proj_mor[m] = bc.identity(proj_obj[cat.src[m]])
        else:
            proj_mor[m] = data[m][0]
    proj = Functor(f"pr_{cat.name}", cat, bc, proj_obj, proj_mor)
    return cat, proj, oid


def pointwise_ran(j, d):
    """Compute the pointwise right extension of d along J objectwise as a
    limit over the category of elements; raises NoLimit naming the object
    at which the target category falls short."""
    ac, bc, mc = j.source, j.target, d.target
    terminal_cones = {}
    keys = {}
    for a in ac.objects:
        cat, proj, oid = elements_category(j, a)
        diagram = compose_functors(d, proj)
        try:
            cone = limit(diagram)
        except NoLimit:
            raise NoLimit(f"no limit at object {a}")
        terminal_cones[a] = cone
        keys[a] = oid
    r_obj = {a: terminal_cones[a].apex for a in ac.objects}
    r_mor = {}
    for u in ac.morphisms:
        a, a2 = ac.src[u], ac.tgt[u]
        # pull the a2-diagram back along u to a cone with apex r(a)
        legs = {}
        for (b, x2), key in keys[a2].items():
            pulled = j.act_left(u, a2, b, x2)
            legs[key] = terminal_cones[a].legs[keys[a][(b, pulled)]]
        cone = Cone(terminal_cones[a2].diagram, r_obj[a], legs)
        med = mediating_morphisms(terminal_cones[a2], cone)
        assert len(med) == 1, f"limit universal property violated at {u}"
        r_mor[u] = med[0]
    r = Functor(f"ran({d.name},{j.name})", ac, mc, r_obj, r_mor)
    comp = {}
    for a, b, x in j.elements():
        comp[(a, b, x)] = terminal_cones[a].legs[keys[a][(b, x)]]
    eps = Cell(f"eps_ran({d.name},{j.name})", j, unit_prof(mc), r, d, comp)
    return RanCandidate(j, d, r, eps)


def is_ran(cand):
    """Exact decision of the right-extension property: every cell
    J -> 1_M over (s, d) must factor through eps by exactly one natural
    transformation s => r."""
    j, d, r, eps = cand.j, cand.d, cand.r, cand.eps
    ac, mc = j.source, d.target
    um = unit_prof(mc)
    for s in all_functors(ac, mc):
        alphas = all_natural_transformations(s, r)
        for phi in cells_between(j, um, s, d):
            hits = 0
            for alpha in alphas:
                if all(phi.comp[(a, b, x)] ==
                       mc.compose(eps.comp[(a, b, x)], alpha.components[a])
                       for a, b, x in j.elements()):
                    hits += 1
            if hits != 1:
                return False
    return True


def _pointwise_by_hom_bijection(cand):
    """Pointwise test, procedure one: m -> r(a) must correspond bijectively
    to natural families J(a, b) -> M(m, d b)."""
    j, d, r, eps = cand.j, cand.d, cand.r, cand.eps
    ac, bc, mc = j.source, j.target, d.target
    rh, wit = rhom(conjoint(d), j)
    for m in mc.objects:
        for a in ac.objects:
            imgs = []
            for p in mc.hom(m, r.obj[a]):
                fam = {}
                for b in bc.objects:
                    fam[b] = {x: mc.compose(eps.comp[(a, b, x)], p)
                              for x in j.fiber(a, b)}
                imgs.append(family_id(bc.objects, fam))
            tgt = rh.fiber(m, a)
            if len(set(imgs)) != len(imgs) or set(imgs) != set(tgt):
                return False
    return True


def _pointwise_by_limits(cand):
    """Pointwise test, procedure two: compare with the objectwise limit
    computation through the mediating morphism."""
    j, d, r, eps = cand.j, cand.d, cand.r, cand.eps
    ac, mc = j.source, d.target
    for a in ac.objects:
        cat, proj, oid = elements_category(j, a)
        diagram = compose_functors(d, proj)
        try:
            term = limit(diagram)
        except NoLimit:
            return False
        legs = {oid[(b, x)]: eps.comp[(a, b, x)]
                for (b, x) in oid}
        cone = Cone(diagram, r.obj[a], legs)
        if cone.validate():
            return False
        med = mediating_morphisms(term, cone)
        if len(med) != 1:
            return False
        t = med[0]
        # t must be invertible in M
        if not any(mc.compose(t, s) == mc.identity(term.apex) and
                   mc.compose(s, t) == mc.identity(r.obj[a])
                   for s in mc.hom(term.apex, r.obj[a])):
            return False
    return True


def is_pointwise_ran(cand):
    """Pointwise right-extension property, decided by two independent
    procedures which must agree."""
    one = _pointwise_by_hom_bijection(cand)
    two = _pointwise_by_limits(cand)
    if one != two:
        raise OracleDisagreement(
            f"pointwise procedures disagree on {cand.eps.name}: "
            f"hom-bijection={one}, limit-comparison={two}")
    return one


def restrict_candidate(cand, f):
    """The candidate obtained by restricting along f : C -> A on the left:
    r . f together with eps pasted onto the cartesian cell of J(f, id)."""
    j, d, r, eps = cand.j, cand.d, cand.r, cand.eps
    kappa = cartesian_cell(j, f, identity_functor(j.target))
    eps_f = vcompose(eps, kappa)
    return RanCandidate(kappa.hsrc, d, compose_functors(r, f), eps_f)


def default_object_probes(ac):
    """Identity plus every object pick One -> A."""
    return [identity_functor(ac)] + [zoo.pick(ac, a) for a in ac.objects]


def check_pointwise_probes(cand, probes=None):
    """For each probe f : C -> A report whether the restricted candidate is
    a pointwise (and an ordinary) right extension."""
    if probes is None:
        probes = default_object_probes(cand.j.source)
    report = {}
    for f in probes:
        sub = restrict_candidate(cand, f)
        report[f.name] = {
            "pointwise": is_pointwise_ran(sub),
            "ordinary": is_ran(sub),
        }
    return report


# ---------------------------------------------------------------------------
# exactness


def composite_candidate(gamma, cand):
    """Paste gamma : J -> 1_M over (s, r) onto cand.eps : H -> 1_M over
    (r, d), yielding a candidate for s along J * H."""
    j, h = gamma.hsrc, cand.j
    mc = cand.d.target
    jh, wit = compose_prof(j, h)
    by_id = {key: {pair_id(*r): r for r in set(cls.values())}
             for key, cls in wit.classes.items()}
    comp = {}
    for a, b, cid in jh.elements():
        mid, x, y = by_id[(a, b)][cid]
        comp[(a, b, cid)] = mc.compose(cand.eps.comp[(mid, b, y)],
                                       gamma.comp[(a, mid, x)])
    eps = Cell(f"({gamma.name};{cand.eps.name})", jh, unit_prof(mc),
               gamma.vsrc, cand.d, comp)
    return RanCandidate(jh, cand.d, gamma.vsrc, eps)


def pasting_check(gamma, cand):
    """Report the four extension verdicts in the pasting situation: gamma
    as a candidate for s along J with target r, and the pasted composite as
    a candidate for s along J * H.  When cand is pointwise, the matching
    verdicts must agree pairwise."""
    if not is_pointwise_ran(cand):
        raise ValueError("pasting_check requires a pointwise base candidate")
    mc = cand.d.target
    gamma_cand = RanCandidate(gamma.hsrc, cand.r, gamma.vsrc, gamma)
    comp_cand = composite_candidate(gamma, cand)
    return {
        "gamma_ordinary": is_ran(gamma_cand),
        "gamma_pointwise": is_pointwise_ran(gamma_cand),
        "composite_ordinary": is_ran(comp_cand),
        "composite_pointwise": is_pointwise_ran(comp_cand),
    }


def beck_chevalley(cell):
    """Base-change condition: the mate J * g_* -> f_* * K of the cell must
    biject in every fiber.  Sufficient for pointwise right exactness."""
    return componentwise_bijective(lower_star(cell))


def comma_square_cell(f, k):
    """The canonical square cell of the comma category of f : A -> C and
    k : D -> C: a cell p^* -> k^* over (f, q) where p, q are the
    projections.  These squares always satisfy beck_chevalley."""
    comma = comma_category(f, k)
    p, q = comma.proj_left, comma.proj_right
    top = conjoint(p)      # A -/-> (f/k)
    bot = conjoint(k)      # C -/-> D
    ac, cc = f.source, f.target
    comp = {}
    for a, w, u in top.elements():
        # u : a -> p(w); paste with the canonical component at w
        comp[(a, w, u)] = cc.compose(comma.components[w], f.mor[u])
    return Cell(f"comma_{f.name}_{k.name}", top, bot, f, q, comp), comma


def is_right_exact(cell, mode="pointwise", probe_cats=None):
    """Decide right exactness of a square cell phi : J -> K over (f, g)
    over a probe set of target categories: whenever eps exhibits a
    (pointwise) right extension of d along K, the pasted composite must
    exhibit r . f as a (pointwise) right extension of d . g along J.

    Quantifying over all targets is impossible, so the verdict is relative
    to the probe set; the default probes every category with at most two
    objects and four morphisms plus the parallel pair.
    """
    if probe_cats is None:
        probe_cats = zoo.probe_categories()
    f, g = cell.vsrc, cell.vtgt
    j, k = cell.hsrc, cell.htgt
    check = is_pointwise_ran if mode == "pointwise" else is_ran
    for mc in probe_cats:
        um = unit_prof(mc)
        for d in all_functors(g.target, mc):
            for r in all_functors(f.target, mc):
                for eps in cells_between(k, um, r, d):
                    cand = RanCandidate(k, d, r, eps)
                    if not check(cand):
                        continue
                    pasted = vcompose(eps, cell)
                    sub = RanCandidate(j, compose_functors(d, g),
                                       compose_functors(r, f), pasted)
                    if not check(sub):
                        return False, {"target": mc.name, "d": d.name,
                                       "r": r.name, "eps": eps.name}
    return True, None


def is_initial_functor(g):
    """g : B -> D is initial when restriction along it preserves limits of
    every diagram.  Decided by comma connectivity, cross-checked against
    invertibility of the terminal-collapse mate."""
    bc, dc = g.source, g.target
    by_commas = all(is_connected(comma_category(g, zoo.pick(dc, x)).category)
                    for x in dc.objects)

    bang_b = zoo.bang(bc)
    bang_d = zoo.bang(dc)
    top = conjoint(bang_b)     # One -/-> B, every fiber a single point
    bot = conjoint(bang_d)     # One -/-> D
    one = bang_b.target
    comp = {("*", b, one.identity("*")): one.identity("*") for b in bc.objects}
    cell = Cell(f"collapse_{g.name}", top, bot, identity_functor(one), g, comp)
    by_mate = componentwise_bijective(lower_star(cell))

    if by_commas != by_mate:
        raise OracleDisagreement(
            f"initiality procedures disagree on {g.name}: "
            f"commas={by_commas}, mate={by_mate}")
    return by_commas


def initial_mediating_iso(g, d):
    """For initial g and a diagram d : D -> M whose restriction along g has
    a limit, return the pair of mediating morphisms comparing the two
    limits; both composites are identities when both limits exist."""
    mc = d.target
    restricted = compose_functors(d, g)
    lim_d = limit(d)
    lim_r = limit(restricted)
    # the d-limit restricts to a cone over d . g
    cone_r = Cone(restricted, lim_d.apex,
                  {b: lim_d.legs[g.obj[b]] for b in g.source.objects})
    fwd = mediating_morphisms(lim_r, cone_r)
    assert len(fwd) == 1
    # initiality: the restricted limit carries a unique cone over d
    legs = {}
    for x in d.source.objects:
        comma = comma_category(g, zoo.pick(g.target, x))
        # any comma object (b, u, *) induces the same leg d(u) . leg_b
        cobj = comma.category.objects[0]
        b = comma.proj_left.obj[cobj]
        u = comma.components[cobj]
        legs[x] = mc.compose(d.mor[u], lim_r.legs[b])
    cone_d = Cone(d, lim_r.apex, legs)
    assert not cone_d.validate()
    bwd = mediating_morphisms(lim_d, cone_d)
    assert len(bwd) == 1
    return fwd[0], bwd[0]
