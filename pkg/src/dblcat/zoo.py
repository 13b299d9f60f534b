"""Small stock categories, functors and profunctor builders used by the
test corpora and the CLI probe sets."""

from __future__ import annotations

import itertools

from .fincat import FinCategory, Functor, make_category, all_functors


def empty_category():
    return make_category("Zero", (), {})


def terminal_category():
    return make_category("One", ("*",), {})


def walking_arrow():
    """Two objects 0, 1 and a single arrow between them."""
    return make_category("Two", ("0", "1"), {"a": ("0", "1")})


def parallel_pair():
    """Two objects with two parallel arrows s, t : 0 -> 1."""
    return make_category("Pair", ("0", "1"), {"s": ("0", "1"), "t": ("0", "1")})


def composable_pair():
    """0 -> 1 -> 2 with the composite stored."""
    return make_category(
        "Three", ("0", "1", "2"),
        {"a": ("0", "1"), "b": ("1", "2"), "ba": ("0", "2")},
        {("b", "a"): "ba"})


def discrete(n):
    return make_category(f"Disc{n}", tuple(str(i) for i in range(n)), {})


def iso_pair():
    """Two objects joined by a pair of mutually inverse arrows."""
    return make_category(
        "Iso", ("0", "1"), {"u": ("0", "1"), "v": ("1", "0")},
        {("v", "u"): "1_0", ("u", "v"): "1_1"})


def span_shape():
    """Three objects with arrows 1 <- 0 -> 2 (a limit-shaped index)."""
    return make_category("Span", ("0", "1", "2"),
                         {"l": ("0", "1"), "r": ("0", "2")})


def cospan_shape():
    """Three objects with arrows 0 -> 2 <- 1 (pullback-shaped index)."""
    return make_category("Cospan", ("0", "1", "2"),
                         {"l": ("0", "2"), "r": ("1", "2")})


def pick(cat, obj, name=None):
    """The functor One -> cat selecting the given object."""
    one = terminal_category()
    return Functor(name or f"pick_{obj}", one, cat,
                   {"*": obj}, {"1_*": cat.identity(obj)})


def bang(cat, name=None):
    """The unique functor cat -> One."""
    one = terminal_category()
    return Functor(name or f"!_{cat.name}", cat, one,
                   {o: "*" for o in cat.objects},
                   {m: "1_*" for m in cat.morphisms})


def probe_categories():
    """Default probe set: every stock category with at most 2 objects and
    4 morphisms, plus the parallel pair."""
    return [terminal_category(), walking_arrow(), discrete(2), parallel_pair()]


def corpus_categories():
    """The categories the enumerative test corpora range over."""
    return [terminal_category(), walking_arrow(), parallel_pair(),
            composable_pair(), discrete(2), iso_pair()]


def corpus_functors(cats=None, limit_per_pair=None):
    """All functors between corpus categories, optionally truncated
    per (source, target) pair."""
    cats = cats or corpus_categories()
    out = []
    for a in cats:
        for m in cats:
            fs = all_functors(a, m)
            if limit_per_pair is not None:
                fs = fs[:limit_per_pair]
            out.extend(fs)
    return out
