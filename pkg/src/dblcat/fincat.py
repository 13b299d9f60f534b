"""Finite categories, functors, natural transformations, limits and comma
categories, all represented by explicit tables and decided by exhaustive
enumeration.

Objects and morphisms are interned string identifiers.  The order in which
they are listed is a total order that every enumeration below respects, so
all constructions are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class NoLimit(Exception):
    """The target category lacks the limit of the given diagram."""


@dataclass(frozen=True, eq=True)
class FinCategory:
    """A finite category with a stored total composition table.

    ``src``/``tgt`` assign endpoints to morphisms, ``identities`` maps each
    object to its identity morphism and ``table[(g, f)]`` is the composite
    ``g . f`` (``f`` first), defined exactly when ``tgt[f] == src[g]``.
    """

    name: str = field(compare=False)
    objects: tuple
    morphisms: tuple
    src: dict
    tgt: dict
    identities: dict
    table: dict

    def __hash__(self):
        return hash((self.objects, self.morphisms))

    def identity(self, obj):
        return self.identities[obj]

    def is_identity(self, m):
        return self.identities.get(self.src[m]) == m

    def compose(self, g, f):
        """Composite ``g . f``, with ``f`` applied first."""
        if self.tgt[f] != self.src[g]:
            raise ValueError(f"morphisms not composable: {g} . {f}")
        return self.table[(g, f)]

    def hom(self, a, b):
        """Morphisms a -> b, in the interned order."""
        return tuple(m for m in self.morphisms
                     if self.src[m] == a and self.tgt[m] == b)

    def composable_pairs(self):
        return [(g, f) for g in self.morphisms for f in self.morphisms
                if self.tgt[f] == self.src[g]]


def validate_category(cat):
    """Exhaustively check the category axioms; returns a list of violations
    (empty for a valid category)."""
    problems = []
    for o in cat.objects:
        i = cat.identities.get(o)
        if i is None:
            problems.append(f"object {o} has no identity")
        elif cat.src.get(i) != o or cat.tgt.get(i) != o:
            problems.append(f"identity of {o} is not an endomorphism")
    for m in cat.morphisms:
        if cat.src.get(m) not in cat.objects or cat.tgt.get(m) not in cat.objects:
            problems.append(f"morphism {m} has endpoints outside the category")
    for g in cat.morphisms:
        for f in cat.morphisms:
            defined = (g, f) in cat.table
            composable = cat.tgt.get(f) == cat.src.get(g)
            if composable and not defined:
                problems.append(f"composite {g} . {f} missing")
            elif defined and not composable:
                problems.append(f"composite {g} . {f} defined but not composable")
            elif defined:
                h = cat.table[(g, f)]
                if h not in cat.morphisms:
                    problems.append(f"composite {g} . {f} = {h} unknown")
                elif cat.src[h] != cat.src[f] or cat.tgt[h] != cat.tgt[g]:
                    problems.append(f"composite {g} . {f} = {h} ill-typed")
    for f in cat.morphisms:
        if cat.src.get(f) in cat.identities:
            i = cat.identities[cat.src[f]]
            if cat.table.get((f, i)) != f:
                problems.append(f"right unit law fails for {f}")
        if cat.tgt.get(f) in cat.identities:
            i = cat.identities[cat.tgt[f]]
            if cat.table.get((i, f)) != f:
                problems.append(f"left unit law fails for {f}")
    for h in cat.morphisms:
        for g in cat.morphisms:
            if cat.tgt.get(g) != cat.src.get(h):
                continue
            for f in cat.morphisms:
                if cat.tgt.get(f) != cat.src.get(g):
                    continue
                try:
                    left = cat.table[(cat.table[(h, g)], f)]
                    right = cat.table[(h, cat.table[(g, f)])]
                except KeyError:
                    continue
                if left != right:
                    problems.append(f"associativity fails on ({h}, {g}, {f})")
    return problems


def make_category(name, objects, arrows, composites=None):
    """Build a FinCategory from generators-with-all-composites data.

    ``arrows`` maps a non-identity morphism id to ``(src, tgt)``;
    ``composites`` maps pairs ``(g, f)`` to their composite id (identity
    composites are filled in automatically).
    """
    objects = tuple(objects)
    identities = {o: f"1_{o}" for o in objects}
    src = {}
    tgt = {}
    for o in objects:
        src[identities[o]] = o
        tgt[identities[o]] = o
    for m, (a, b) in arrows.items():
        src[m] = a
        tgt[m] = b
    morphisms = tuple(identities[o] for o in objects) + tuple(arrows)
    table = {}
    for m in morphisms:
        table[(m, identities[src[m]])] = m
        table[(identities[tgt[m]], m)] = m
    if composites:
        table.update(composites)
    return FinCategory(name, objects, morphisms, src, tgt, identities, table)


@dataclass(frozen=True, eq=True)
class Functor:
    name: str = field(compare=False)
    source: FinCategory
    target: FinCategory
    obj: dict
    mor: dict

    def __hash__(self):
        return hash((tuple(sorted(self.obj.items())),
                     tuple(sorted(self.mor.items()))))

    def ob(self, a):
        return self.obj[a]

    def __call__(self, m):
        return self.mor[m]

    def validate(self):
        problems = []
        cat, dst = self.source, self.target
        for a in cat.objects:
            if self.obj.get(a) not in dst.objects:
                problems.append(f"object {a} not mapped into target")
        for m in cat.morphisms:
            fm = self.mor.get(m)
            if fm not in dst.morphisms:
                problems.append(f"morphism {m} not mapped into target")
                continue
            if dst.src[fm] != self.obj[cat.src[m]] or dst.tgt[fm] != self.obj[cat.tgt[m]]:
                problems.append(f"image of {m} has wrong endpoints")
        for o in cat.objects:
            if self.mor.get(cat.identity(o)) != dst.identity(self.obj[o]):
                problems.append(f"identity of {o} not preserved")
        for g, f in cat.composable_pairs():
            if self.mor.get(cat.compose(g, f)) != dst.compose(self.mor[g], self.mor[f]):
                problems.append(f"composition not preserved on ({g}, {f})")
        return problems


def identity_functor(cat):
    return Functor(f"Id_{cat.name}", cat, cat,
                   {o: o for o in cat.objects},
                   {m: m for m in cat.morphisms})


def compose_functors(g, f):
    """Composite functor ``g . f`` (``f`` applied first)."""
    if f.target != g.source:
        raise ValueError("functors not composable")
    return Functor(f"{g.name}.{f.name}", f.source, g.target,
                   {a: g.obj[f.obj[a]] for a in f.source.objects},
                   {m: g.mor[f.mor[m]] for m in f.source.morphisms})


@dataclass(frozen=True, eq=True)
class NatTransf:
    """Natural transformation between parallel functors, as a component table."""

    source: Functor
    target: Functor
    components: dict

    def __hash__(self):
        return hash(tuple(sorted(self.components.items())))

    def __call__(self, a):
        return self.components[a]

    def validate(self):
        problems = []
        f, g = self.source, self.target
        cat, dst = f.source, f.target
        for a in cat.objects:
            c = self.components.get(a)
            if c is None or dst.src.get(c) != f.obj[a] or dst.tgt.get(c) != g.obj[a]:
                problems.append(f"component at {a} ill-typed")
        for m in cat.morphisms:
            a, b = cat.src[m], cat.tgt[m]
            if dst.compose(self.components[b], f.mor[m]) != \
                    dst.compose(g.mor[m], self.components[a]):
                problems.append(f"naturality fails at {m}")
        return problems


@dataclass(frozen=True, eq=True)
class Cone:
    """Cone from an apex to a diagram: one leg per diagram object."""

    diagram: Functor
    apex: str
    legs: dict

    def __hash__(self):
        return hash((self.apex, tuple(sorted(self.legs.items()))))

    def validate(self):
        problems = []
        d = self.diagram
        shape, dst = d.source, d.target
        for i in shape.objects:
            leg = self.legs.get(i)
            if leg is None or dst.src.get(leg) != self.apex or dst.tgt.get(leg) != d.obj[i]:
                problems.append(f"leg at {i} ill-typed")
        for v in shape.morphisms:
            i, j = shape.src[v], shape.tgt[v]
            if dst.compose(d.mor[v], self.legs[i]) != self.legs[j]:
                problems.append(f"cone condition fails at {v}")
        return problems


def all_cones(diagram, apex=None):
    """Every cone over the diagram, in deterministic order."""
    shape, dst = diagram.source, diagram.target
    apexes = dst.objects if apex is None else (apex,)
    cones = []
    for m in apexes:
        choices = [dst.hom(m, diagram.obj[i]) for i in shape.objects]
        for legs in itertools.product(*choices):
            cone = Cone(diagram, m, dict(zip(shape.objects, legs)))
            if not cone.validate():
                cones.append(cone)
    return cones


def mediating_morphisms(terminal, cone):
    """Morphisms apex(cone) -> apex(terminal) commuting with all legs."""
    dst = terminal.diagram.target
    found = []
    for t in dst.hom(cone.apex, terminal.apex):
        if all(dst.compose(terminal.legs[i], t) == cone.legs[i]
               for i in terminal.diagram.source.objects):
            found.append(t)
    return found


def limit(diagram):
    """The terminal cone over the diagram, or raise NoLimit.

    The witness is deterministic: apexes are scanned in the object order of
    the target, legs in lexicographic order, and the first terminal cone
    wins.
    """
    cones = all_cones(diagram)
    for cand in cones:
        if all(len(mediating_morphisms(cand, c)) == 1 for c in cones):
            return cand
    raise NoLimit(f"no limit of {diagram.name}")


def comma_object_name(c, u, d):
    return f"({c},{u},{d})"


@dataclass(frozen=True, eq=True)
class CommaCategory:
    category: FinCategory
    proj_left: Functor
    proj_right: Functor
    # canonical component f(proj_left x) -> g(proj_right x), per object x
    components: dict


def comma_category(f, g):
    """The comma category of ``f : C -> E`` and ``g : D -> E``.

    Objects are triples (c, u, d) with ``u : f c -> g d``; morphisms are the
    pairs (p, q) making the evident square commute.
    """
    if f.target != g.target:
        raise ValueError("comma requires a common target")
    ccat, dcat, ecat = f.source, g.source, f.target
    objects = []
    for c in ccat.objects:
        for d in dcat.objects:
            for u in ecat.hom(f.obj[c], g.obj[d]):
                objects.append((c, u, d))
    obj_ids = tuple(comma_object_name(*o) for o in objects)
    by_id = dict(zip(obj_ids, objects))
    arrows = {}
    pair_of = {}
    for oid in obj_ids:
        c, u, d = by_id[oid]
        for oid2 in obj_ids:
            c2, u2, d2 = by_id[oid2]
            for p in ccat.hom(c, c2):
                for q in dcat.hom(d, d2):
                    if ecat.compose(g.mor[q], u) != ecat.compose(u2, f.mor[p]):
                        continue
                    if ccat.is_identity(p) and dcat.is_identity(q) and oid == oid2:
                        continue  # identities are implicit
                    mid = f"[{p},{q}]:{oid}->{oid2}"
                    arrows[mid] = (oid, oid2)
                    pair_of[mid] = (p, q, oid, oid2)
    composites = {}
    cat_stub = make_category(f"{f.name}/{g.name}", obj_ids, arrows)
    for m2 in arrows:
        for m1 in arrows:
            p1, q1, s1, t1 = pair_of[m1]
            p2, q2, s2, t2 = pair_of[m2]
            if t1 != s2:
                continue
            p = ccat.compose(p2, p1)
            q = dcat.compose(q2, q1)
            if ccat.is_identity(p) and dcat.is_identity(q) and s1 == t2:
                comp = cat_stub.identity(s1)
            else:
                comp = f"[{p},{q}]:{s1}->{t2}"
            composites[(m2, m1)] = comp
    cat = make_category(f"{f.name}/{g.name}", obj_ids, arrows, composites)
    proj_l_obj = {oid: by_id[oid][0] for oid in obj_ids}
    proj_r_obj = {oid: by_id[oid][2] for oid in obj_ids}
    proj_l_mor = {}
    proj_r_mor = {}
    for m in cat.morphisms:
        if cat.is_identity(m):
            oid = cat.src[m]
            proj_l_mor[m] = ccat.identity(proj_l_obj[oid])
            proj_r_mor[m] = dcat.identity(proj_r_obj[oid])
        else:
            p, q, _, _ = pair_of[m]
            proj_l_mor[m] = p
            proj_r_mor[m] = q
    proj_l = Functor(f"pl_{cat.name}", cat, ccat, proj_l_obj, proj_l_mor)
    proj_r = Functor(f"pr_{cat.name}", cat, dcat, proj_r_obj, proj_r_mor)
    components = {oid: by_id[oid][1] for oid in obj_ids}
    return CommaCategory(cat, proj_l, proj_r, components)


def is_connected(cat):
    """Nonempty, and one component in the undirected object graph."""
    if not cat.objects:
        return False
    seen = {cat.objects[0]}
    frontier = [cat.objects[0]]
    while frontier:
        o = frontier.pop()
        for m in cat.morphisms:
            for a, b in ((cat.src[m], cat.tgt[m]), (cat.tgt[m], cat.src[m])):
                if a == o and b not in seen:
                    seen.add(b)
                    frontier.append(b)
    return len(seen) == len(cat.objects)


def all_functors(a, m):
    """Every functor a -> m, duplicate-free and deterministically ordered."""
    nonids = [x for x in a.morphisms if not a.is_identity(x)]
    out = []
    for objs in itertools.product(m.objects, repeat=len(a.objects)):
        obj_map = dict(zip(a.objects, objs))
        choices = [m.hom(obj_map[a.src[x]], obj_map[a.tgt[x]]) for x in nonids]
        for mors in itertools.product(*choices):
            mor_map = {a.identity(o): m.identity(obj_map[o]) for o in a.objects}
            mor_map.update(dict(zip(nonids, mors)))
            cand = Functor(f"F{len(out)}", a, m, obj_map, mor_map)
            if not cand.validate():
                out.append(cand)
    return out


def functor_count_oracle(a, m):
    """Independent backtracking count of functors a -> m."""
    nonids = [x for x in a.morphisms if not a.is_identity(x)]

    def extend_arrows(obj_map, picked, k):
        if k == len(nonids):
            mor_map = {a.identity(o): m.identity(obj_map[o]) for o in a.objects}
            mor_map.update(picked)
            for g, f in a.composable_pairs():
                if mor_map[a.table[(g, f)]] != m.table[(mor_map[g], mor_map[f])]:
                    return 0
            return 1
        x = nonids[k]
        total = 0
        for img in m.hom(obj_map[a.src[x]], obj_map[a.tgt[x]]):
            picked[x] = img
            total += extend_arrows(obj_map, picked, k + 1)
            del picked[x]
        return total

    total = 0
    for objs in itertools.product(m.objects, repeat=len(a.objects)):
        total += extend_arrows(dict(zip(a.objects, objs)), {}, 0)
    return total


def all_natural_transformations(f, g):
    """Every natural transformation f => g between parallel functors."""
    cat, dst = f.source, f.target
    choices = [dst.hom(f.obj[a], g.obj[a]) for a in cat.objects]
    out = []
    for comps in itertools.product(*choices):
        cand = NatTransf(f, g, dict(zip(cat.objects, comps)))
        if not cand.validate():
            out.append(cand)
    return out


def find_isomorphism(a, b):
    """A pair of mutually inverse functors a <-> b, or None.

    Backtracking search over object bijections refined by hom-set counts,
    then arrow bijections checked for functoriality.
    """
    if len(a.objects) != len(b.objects) or len(a.morphisms) != len(b.morphisms):
        return None

    def profile(cat, o):
        outs = sorted(len(cat.hom(o, x)) for x in cat.objects)
        ins = sorted(len(cat.hom(x, o)) for x in cat.objects)
        return (tuple(outs), tuple(ins))

    prof_b = {o: profile(b, o) for o in b.objects}

    def try_objects(k, obj_map, used):
        if k == len(a.objects):
            return try_arrows(obj_map)
        o = a.objects[k]
        pa = profile(a, o)
        for o2 in b.objects:
            if o2 in used or prof_b[o2] != pa:
                continue
            if any(len(a.hom(a.objects[i], o)) != len(b.hom(obj_map[a.objects[i]], o2))
                   or len(a.hom(o, a.objects[i])) != len(b.hom(o2, obj_map[a.objects[i]]))
                   for i in range(k)):
                continue
            obj_map[o] = o2
            used.add(o2)
            res = try_objects(k + 1, obj_map, used)
            if res:
                return res
            del obj_map[o]
            used.discard(o2)
        return None

    def try_arrows(obj_map):
        nonids = [x for x in a.morphisms if not a.is_identity(x)]
        choices = [b.hom(obj_map[a.src[x]], obj_map[a.tgt[x]]) for x in nonids]
        used_targets = [tuple(x for x in c if not b.is_identity(x)) for c in choices]
        for mors in itertools.product(*used_targets):
            if len(set(mors)) != len(mors):
                continue
            mor_map = {a.identity(o): b.identity(obj_map[o]) for o in a.objects}
            mor_map.update(dict(zip(nonids, mors)))
            fwd = Functor("iso", a, b, dict(obj_map), mor_map)
            if fwd.validate():
                continue
            inv_obj = {v: k for k, v in obj_map.items()}
            inv_mor = {v: k for k, v in mor_map.items()}
            bwd = Functor("iso_inv", b, a, inv_obj, inv_mor)
            if not bwd.validate():
                return fwd, bwd
        return None

    return try_objects(0, {}, set())
