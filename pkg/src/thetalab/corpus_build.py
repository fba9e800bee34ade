"""Builders for the shipped corpus: every fixture file plus its manifest.

build_all regenerates the corpus directory from scratch; the files it writes
are byte-identical across runs, so the shipped corpus can be diffed against a
fresh build.  The manifest (index.json) records, per file, the expectations
corpus-verify must confirm: Segal verdicts for precats, isofibration and
cofibration flags for functors, descent verdicts for presheaves against the
shipped sites.
"""

import json
import os

from .cat_one import (
    FinCategory,
    FinFunctor,
    cat_chain,
    cat_discrete,
    cat_interval,
    cat_iso_interval,
    cat_point,
)
from .fixtures import dumps, relabel_precat, save_path
from .limits_lab import (
    Diagram,
    FiniteSite,
    SitePresheaf,
    cospan_diagram,
    cospan_index,
    parallel_pair_index,
    span_index,
    trivial_site,
)
from .presheaf_engine import (
    PrecatMap,
    discrete,
    empty_precat,
    interval,
    iso_interval,
    pushout,
    representable,
    terminal,
)

# ---------------------------------------------------------------- categories

def _cat_parallel():
    homs = {("x", "x"): ("1x",), ("y", "y"): ("1y",), ("x", "y"): ("s", "t")}
    comp = {("1x", "1x"): "1x", ("1y", "1y"): "1y",
            ("s", "1x"): "s", ("1y", "s"): "s",
            ("t", "1x"): "t", ("1y", "t"): "t"}
    return FinCategory(("x", "y"), homs, comp, name="parallel")


def _cat_idem():
    # the free idempotent monoid: e is absorbing but not an identity
    homs = {("m", "m"): ("1m", "e")}
    comp = {("1m", "1m"): "1m", ("1m", "e"): "e", ("e", "1m"): "e", ("e", "e"): "e"}
    return FinCategory(("m",), homs, comp, name="idem")


def _cat_c2():
    homs = {("g", "g"): ("1g", "s")}
    comp = {("1g", "1g"): "1g", ("1g", "s"): "s", ("s", "1g"): "s", ("s", "s"): "1g"}
    return FinCategory(("g",), homs, comp, name="c2")


def _cat_square():
    objects = ("00", "01", "10", "11")
    homs = {("00", "01"): ("a",), ("00", "10"): ("b",),
            ("01", "11"): ("c",), ("10", "11"): ("d",),
            ("00", "11"): ("q",)}
    for o in objects:
        homs[(o, o)] = ("i" + o,)
    comp = {("c", "a"): "q", ("d", "b"): "q"}
    for o in objects:
        comp[("i" + o, "i" + o)] = "i" + o
    for f, (x, y) in (("a", ("00", "01")), ("b", ("00", "10")),
                      ("c", ("01", "11")), ("d", ("10", "11")),
                      ("q", ("00", "11"))):
        comp[(f, "i" + x)] = f
        comp[("i" + y, f)] = f
    return FinCategory(objects, homs, comp, name="square")


def _cat_span():
    return span_index()


def _cat_cospan():
    return cospan_index()


def _cat_arms():
    """Two arms into a common target; the base of the shipped sites."""
    homs = {("U", "X"): ("a",), ("V", "X"): ("b",)}
    comp = {("a", "1U"): "a", ("1X", "a"): "a", ("b", "1V"): "b", ("1X", "b"): "b"}
    for o in ("X", "U", "V"):
        homs[(o, o)] = ("1" + o,)
        comp[("1" + o, "1" + o)] = "1" + o
    return FinCategory(("X", "U", "V"), homs, comp, name="arms")


# ------------------------------------------------------------------- precats

def _word_namer(prof, i, elem):
    return "".join(str(v) for v in elem.components[0].values)


def _precat_twostep():
    two, _ = relabel_precat(representable(1, (2,), 2), namer=_word_namer,
                            name="twostep")
    return two


def _end_map(word, target):
    pt = terminal(1, 2)
    comps = {prof: {"*": word * ((prof[0] if prof else 0) + 1)}
             for prof in pt.profiles()}
    return PrecatMap(pt, target, comps)


def _pair_ends(target):
    pair = discrete(1, 2, ("a", "b"))
    comps = {prof: {"a": "0" * ((prof[0] if prof else 0) + 1),
                    "b": "1" * ((prof[0] if prof else 0) + 1)}
             for prof in pair.profiles()}
    return PrecatMap(pair, target, comps)


def _precat_circle():
    po, _, _ = pushout(_pair_ends(interval(2)), _pair_ends(interval(2)))
    out, _ = relabel_precat(po, name="circle")
    return out


def _precat_loop():
    pair = discrete(1, 2, ("a", "b"))
    crush = PrecatMap(pair, terminal(1, 2),
                      {prof: {"a": "*", "b": "*"} for prof in pair.profiles()})
    po, _, _ = pushout(_pair_ends(interval(2)), crush)
    out, _ = relabel_precat(po, name="loop")
    return out


# ------------------------------------------------------------------ functors

def _functor_end(which):
    obj = "0" if which == 0 else "1"
    ident = "i" + obj
    return FinFunctor(cat_point(), cat_iso_interval(), {"x": obj}, {"1x": ident})


def _functor_collapse():
    ib = cat_iso_interval()
    return FinFunctor(ib, cat_point(), {"0": "x", "1": "x"},
                      {a: "1x" for a in ib.src})


def _map_leg(which):
    return _end_map("0" if which == 0 else "1", interval(2))


def _map_idem():
    # crush the second point of a discrete pair onto the first
    D = discrete(1, 2, ("a", "b"))
    comps = {prof: {e: "a" for e in D.level(prof)} for prof in D.profiles()}
    return PrecatMap(D, D, comps)


# ------------------------------------------------------------------ diagrams

def _diagram_cospan():
    ib = cat_iso_interval()
    pt = cat_point()
    u = FinFunctor(pt, ib, {"x": "0"}, {"1x": "i0"})
    v = FinFunctor(pt, ib, {"x": "1"}, {"1x": "i1"})
    d = cospan_diagram(u, v)
    d.name = "pt-into-ibar"
    return d


def _diagram_setcospan():
    idx = cospan_index()
    values = {"x": ("x1", "x2"), "y": ("y1", "y2"), "z": ("z1", "z2", "z3")}
    action = {"f": {"x1": "y1", "x2": "y2"},
              "g": {"z1": "y1", "z2": "y1", "z3": "y2"},
              "1x": {v: v for v in values["x"]},
              "1y": {v: v for v in values["y"]},
              "1z": {v: v for v in values["z"]}}
    return Diagram(idx, values, action, kind="set", name="pullback")


def _diagram_setspan():
    idx = span_index()
    values = {"l": ("p1", "p2"), "m": ("m1", "m2"), "r": ("q1",)}
    action = {"f": {"m1": "p1", "m2": "p2"},
              "g": {"m1": "q1", "m2": "q1"},
              "1l": {v: v for v in values["l"]},
              "1m": {v: v for v in values["m"]},
              "1r": {v: v for v in values["r"]}}
    return Diagram(idx, values, action, kind="set", name="pushout")


def _diagram_setpair():
    idx = parallel_pair_index()
    values = {"a": ("s1", "s2"), "b": ("t1", "t2", "t3")}
    action = {"f": {"s1": "t1", "s2": "t2"},
              "g": {"s1": "t2", "s2": "t3"},
              "1a": {v: v for v in values["a"]},
              "1b": {v: v for v in values["b"]}}
    return Diagram(idx, values, action, kind="set", name="coequalizer")


# ------------------------------------------------------- sites and presheaves

def _site_trivial():
    return trivial_site(_cat_arms())


def _site_arms():
    return FiniteSite(_cat_arms(), {"X": (("a", "b"),)})


def _presheaf_sections():
    cat = _cat_arms()
    values = {"X": ("s1", "s2"), "U": ("u1", "u2"), "V": ("v1",)}
    restriction = {"a": {"s1": "u1", "s2": "u2"},
                   "b": {"s1": "v1", "s2": "v1"},
                   "1X": {s: s for s in values["X"]},
                   "1U": {s: s for s in values["U"]},
                   "1V": {s: s for s in values["V"]}}
    return SitePresheaf(cat, values, restriction, kind="set")


def _presheaf_sections_bad():
    # only one global section, so the family (u2, v1) never glues
    cat = _cat_arms()
    values = {"X": ("s1",), "U": ("u1", "u2"), "V": ("v1",)}
    restriction = {"a": {"s1": "u1"},
                   "b": {"s1": "v1"},
                   "1X": {s: s for s in values["X"]},
                   "1U": {s: s for s in values["U"]},
                   "1V": {s: s for s in values["V"]}}
    return SitePresheaf(cat, values, restriction, kind="set")


def _presheaf_catsections():
    cat = _cat_arms()
    dX = cat_discrete(("a", "b"))
    dU = cat_discrete(("a", "b"))
    dV = cat_point()
    values = {"X": dX, "U": dU, "V": dV}
    restriction = {"a": FinFunctor(dX, dU, {"a": "a", "b": "b"},
                                   {"1a": "1a", "1b": "1b"}),
                   "b": FinFunctor(dX, dV, {"a": "x", "b": "x"},
                                   {"1a": "1x", "1b": "1x"}),
                   "1X": FinFunctor.identity(dX),
                   "1U": FinFunctor.identity(dU),
                   "1V": FinFunctor.identity(dV)}
    return SitePresheaf(cat, values, restriction, kind="cat")


# ------------------------------------------------------------------ manifest

def manifest():
    """Ordered (file, kind, builder, expect) rows for every shipped fixture."""
    rows = []

    def add(file, kind, builder, expect=None):
        rows.append((file, kind, builder, expect or {}))

    add("cat-pt.json", "category", cat_point)
    add("cat-chain1.json", "category", cat_interval)
    add("cat-chain2.json", "category", lambda: cat_chain(2))
    add("cat-chain3.json", "category", lambda: cat_chain(3))
    add("cat-ibar.json", "category", cat_iso_interval)
    add("cat-disc2.json", "category", lambda: cat_discrete(("a", "b")))
    add("cat-disc3.json", "category", lambda: cat_discrete(("a", "b", "c")))
    add("cat-parallel.json", "category", _cat_parallel)
    add("cat-idem.json", "category", _cat_idem)
    add("cat-c2.json", "category", _cat_c2)
    add("cat-square.json", "category", _cat_square)
    add("cat-span.json", "category", _cat_span)
    add("cat-cospan.json", "category", _cat_cospan)
    add("cat-arms.json", "category", _cat_arms)

    add("pt.json", "precat", lambda: terminal(1, 2), {"segal": True})
    add("empty.json", "precat", lambda: empty_precat(1, 2), {"segal": True})
    # dimension 0 fixtures feed the cell constructors, whose edges live one
    # dimension below the cell
    add("pt0.json", "precat", lambda: terminal(0, 2), {"segal": True})
    add("empty0.json", "precat", lambda: empty_precat(0, 2), {"segal": True})
    add("disc2-0.json", "precat", lambda: discrete(0, 2, ("a", "b")),
        {"segal": True})
    add("disc2.json", "precat", lambda: discrete(1, 2, ("a", "b")),
        {"segal": True})
    add("interval.json", "precat", lambda: interval(2), {"segal": True})
    add("ibar.json", "precat", lambda: iso_interval(2), {"segal": True})
    add("twostep.json", "precat", _precat_twostep, {"segal": True})
    # two parallel edges between two vertices: this is the nerve of the
    # parallel-pair category, so it is Segal; the loop below is not, its
    # composites would run away
    add("circle.json", "precat", _precat_circle, {"segal": True})
    add("loop.json", "precat", _precat_loop, {"segal": False})

    add("end0.json", "functor", lambda: _functor_end(0), {"isofibration": False})
    add("end1.json", "functor", lambda: _functor_end(1), {"isofibration": False})
    add("collapse.json", "functor", _functor_collapse, {"isofibration": True})
    add("leg0.json", "functor", lambda: _map_leg(0), {"cofibration": True})
    add("leg1.json", "functor", lambda: _map_leg(1), {"cofibration": True})
    add("pairleg0.json", "functor", lambda: _pair_ends(interval(2)),
        {"cofibration": True})
    add("pairleg1.json", "functor", lambda: _pair_ends(interval(2)),
        {"cofibration": True})
    add("idemmap.json", "functor", _map_idem)

    add("cospan.json", "diagram", _diagram_cospan)
    add("setcospan.json", "diagram", _diagram_setcospan)
    add("setspan.json", "diagram", _diagram_setspan)
    add("setpair.json", "diagram", _diagram_setpair)

    add("site-trivial.json", "site", _site_trivial)
    add("site-arms.json", "site", _site_arms)

    add("sections.json", "presheaf", _presheaf_sections,
        {"stack": [{"site": "site-trivial.json", "ok": True},
                   {"site": "site-arms.json", "ok": True}]})
    add("sections-bad.json", "presheaf", _presheaf_sections_bad,
        {"stack": [{"site": "site-trivial.json", "ok": True},
                   {"site": "site-arms.json", "ok": False,
                    "failures": [["X", 0]]}]})
    add("catsections.json", "presheaf", _presheaf_catsections,
        {"stack": [{"site": "site-trivial.json", "ok": True},
                   {"site": "site-arms.json", "ok": True}]})
    return rows


def build_all(outdir):
    """Write every corpus file plus index.json; returns {filename: text}."""
    os.makedirs(outdir, exist_ok=True)
    written = {}
    entries = []
    for file, kind, builder, expect in manifest():
        obj = builder()
        written[file] = save_path(os.path.join(outdir, file), obj)
        entry = {"file": file, "kind": kind}
        if expect:
            entry["expect"] = expect
        entries.append(entry)
    index_text = dumps({"fixtures": entries})
    with open(os.path.join(outdir, "index.json"), "w", encoding="utf-8") as fh:
        fh.write(index_text)
    written["index.json"] = index_text
    return written
