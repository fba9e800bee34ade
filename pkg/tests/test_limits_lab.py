import random

import pytest

from thetalab.cat_one import (
    FinCategory,
    FinFunctor,
    cat_chain,
    cat_discrete,
    cat_generate,
    cat_interval,
    cat_iso_interval,
    cat_point,
    equivalence_search,
    find_cat_isomorphism,
    is_isofibration,
    iso_comma,
    strict_pullback,
)
from thetalab.errors import (
    AlphaTooSmall,
    CapExceeded,
    FixtureError,
    NotIdempotent,
)
from thetalab.limits_lab import (
    Cone,
    ConeCategory,
    DAlpha,
    Diagram,
    FiniteSite,
    SetCone,
    SitePresheaf,
    cone_equivalence_search,
    cospan_diagram,
    cospan_index,
    constant_diagram,
    direct_limit_bootstrap,
    homotopy_fiber_product,
    homotopy_pushout,
    lambda_limit,
    parallel_pair_index,
    set_colimit,
    set_limit,
    span_index,
    stack_check,
    telescope,
    trivial_site,
    universal_property_harness,
    upgrade_to_cat,
)
from thetalab.presheaf_engine import (
    PrecatMap,
    discrete,
    empty_precat,
    interval,
    iso_interval,
    terminal,
)

from oracles import brute_set_colimit, brute_set_limit


def ident_action(index, values):
    return {index.identity[x]: {v: v for v in values[x]} for x in index.objects}


def pullback_fixture():
    idx = cospan_index()
    values = {"x": ("a1", "a2"), "y": ("b1", "b2"), "z": ("c1", "c2", "c3")}
    action = ident_action(idx, values)
    action["f"] = {"a1": "b1", "a2": "b2"}
    action["g"] = {"c1": "b1", "c2": "b1", "c3": "b2"}
    return Diagram(idx, values, action)


def equalizer_fixture():
    idx = parallel_pair_index()
    values = {"a": ("x1",), "b": ("y1", "y2")}
    action = ident_action(idx, values)
    action["f"] = {"x1": "y1"}
    action["g"] = {"x1": "y2"}
    return Diagram(idx, values, action)


def span_fixture():
    idx = span_index()
    values = {"l": ("l1", "l2"), "m": ("m1",), "r": ("r1",)}
    action = ident_action(idx, values)
    action["f"] = {"m1": "l1"}
    action["g"] = {"m1": "r1"}
    return Diagram(idx, values, action)


def random_set_diagram(rng):
    kind = rng.randrange(5)
    if kind == 0:
        idx, gens = cospan_index(), (("f", "x", "y"), ("g", "z", "y"))
    elif kind == 1:
        idx, gens = span_index(), (("f", "m", "l"), ("g", "m", "r"))
    elif kind == 2:
        idx, gens = parallel_pair_index(), (("f", "a", "b"), ("g", "a", "b"))
    elif kind == 3:
        idx, gens = cat_chain(3), (("c01", "0", "1"), ("c12", "1", "2"),
                                   ("c23", "2", "3"))
    else:
        idx, gens = cat_discrete(("a", "b")), ()
    values = {a: tuple("%s%d" % (a, i) for i in range(rng.randint(1, 3)))
              for a in idx.objects}
    action = ident_action(idx, values)
    for name, s, t in gens:
        action[name] = {v: rng.choice(values[t]) for v in values[s]}
    if kind == 3:
        for i in range(4):
            for j in range(i + 1, 4):
                if j - i == 1:
                    continue
                step = action["c%d%d" % (j - 1, j)]
                prev = action["c%d%d" % (i, j - 1)]
                action["c%d%d" % (i, j)] = {v: step[prev[v]] for v in values[str(i)]}
    return Diagram(idx, values, action)


def oracle_tables(d):
    objs = sorted(d.index.objects)
    arrows = [(d.index.src[f], d.index.tgt[f], d.action[f])
              for f in d.index.src if f not in set(d.index.identity.values())]
    values = {a: list(d.value(a)) for a in d.index.objects}
    return objs, arrows, values


def realign(d, fams):
    objs = list(d.index.objects)
    order = sorted(objs)
    pos = [objs.index(a) for a in order]
    return {tuple(f[i] for i in pos) for f in fams}


# --------------------------------------------------------------- set limits

def test_set_limit_of_a_pullback_square():
    lim = set_limit(pullback_fixture())
    assert set(lim.elements) == {("a1", "b1", "c1"), ("a1", "b1", "c2"),
                                 ("a2", "b2", "c3")}
    for fam in lim.elements:
        assert lim.projections["x"][fam] == fam[0]
        assert lim.projections["z"][fam] == fam[2]
    lim.cone()


def test_set_limit_of_an_empty_equalizer():
    assert len(set_limit(equalizer_fixture())) == 0


def test_set_colimit_of_a_coequalizer():
    col = set_colimit(equalizer_fixture())
    assert len(col) == 1
    assert set(col.classes[0]) == {("a", "x1"), ("b", "y1"), ("b", "y2")}


def test_set_colimit_of_a_span():
    col = set_colimit(span_fixture())
    groups = {frozenset(c) for c in col.classes}
    assert groups == {frozenset({("l", "l1"), ("m", "m1"), ("r", "r1")}),
                      frozenset({("l", "l2")})}
    assert col.injections["l"]["l2"] == (("l", "l2"),)
    col.cocone()


def test_random_set_diagrams_match_the_brute_oracles():
    rng = random.Random(20240816)
    for _ in range(25):
        d = random_set_diagram(rng)
        objs, arrows, values = oracle_tables(d)
        want = {tuple(f) for f in brute_set_limit(objs, arrows, values)}
        assert realign(d, set_limit(d).elements) == want
        got = {frozenset(c) for c in set_colimit(d).classes}
        assert got == {frozenset(c) for c in brute_set_colimit(objs, arrows, values)}


def test_limit_of_a_product_diagram_is_the_product_of_limits():
    rng = random.Random(7)
    for _ in range(5):
        d1 = random_set_diagram(rng)
        idx = d1.index
        values2 = {a: tuple("w%s%d" % (a, i) for i in range(rng.randint(1, 2)))
                   for a in idx.objects}
        action2 = ident_action(idx, values2)
        for f in idx.src:
            if f in set(idx.identity.values()):
                continue
            s, t = idx.src[f], idx.tgt[f]
            action2[f] = {v: rng.choice(values2[t]) for v in values2[s]}
        d2 = Diagram(idx, values2, action2)
        values = {a: tuple((x, y) for x in d1.value(a) for y in d2.value(a))
                  for a in idx.objects}
        action = {f: {(x, y): (d1.action[f][x], d2.action[f][y])
                      for (x, y) in values[idx.src[f]]}
                  for f in idx.src}
        prod = Diagram(idx, values, action)
        l1, l2, lp = set_limit(d1), set_limit(d2), set_limit(prod)
        assert len(lp) == len(l1) * len(l2)
        paired = {tuple(zip(f1, f2)) for f1 in l1.elements for f2 in l2.elements}
        assert set(lp.elements) == paired


def double_grid(rng, shape):
    # vals[(i, j)] with rows[j]: (0,j) -> (1,j) and cols[i]: (i,0) -> (i,1);
    # the square is forced to commute either by product structure or by a
    # terminal singleton corner
    if shape == "product":
        us = {i: tuple("u%d%d" % (i, k) for k in range(rng.randint(1, 2)))
              for i in (0, 1)}
        vs = {j: tuple("v%d%d" % (j, k) for k in range(rng.randint(1, 2)))
              for j in (0, 1)}
        umap = {u: rng.choice(us[1]) for u in us[0]}
        vmap = {v: rng.choice(vs[1]) for v in vs[0]}
        vals = {(i, j): tuple("%s|%s" % (u, v) for u in us[i] for v in vs[j])
                for i in (0, 1) for j in (0, 1)}

        def split(e):
            return e.split("|")

        rows = {j: {e: "%s|%s" % (umap[split(e)[0]], split(e)[1])
                    for e in vals[(0, j)]} for j in (0, 1)}
        cols = {i: {e: "%s|%s" % (split(e)[0], vmap[split(e)[1]])
                    for e in vals[(i, 0)]} for i in (0, 1)}
        return vals, rows, cols
    vals = {(0, 0): tuple("p%d" % k for k in range(rng.randint(1, 3))),
            (1, 0): tuple("q%d" % k for k in range(rng.randint(1, 2))),
            (0, 1): tuple("r%d" % k for k in range(rng.randint(1, 2))),
            (1, 1): ("z",)}
    rows = {0: {e: rng.choice(vals[(1, 0)]) for e in vals[(0, 0)]},
            1: {e: "z" for e in vals[(0, 1)]}}
    cols = {0: {e: rng.choice(vals[(0, 1)]) for e in vals[(0, 0)]},
            1: {e: "z" for e in vals[(1, 0)]}}
    return vals, rows, cols


def chain1_diagram(v0, v1, table):
    idx = cat_chain(1)
    values = {"0": tuple(v0), "1": tuple(v1)}
    action = ident_action(idx, values)
    action["c01"] = dict(table)
    return Diagram(idx, values, action)


def test_iterated_set_limits_commute():
    rng = random.Random(99)
    for trial in range(12):
        vals, rows, cols = double_grid(rng, "product" if trial % 2 else "corner")
        inner_i = {i: set_limit(chain1_diagram(vals[(i, 0)], vals[(i, 1)], cols[i]))
                   for i in (0, 1)}
        table = {fam: (rows[0][fam[0]], rows[1][fam[1]])
                 for fam in inner_i[0].elements}
        colfirst = set_limit(chain1_diagram(inner_i[0].elements,
                                            inner_i[1].elements, table))
        flat1 = {(f[0][0], f[0][1], f[1][0], f[1][1]) for f in colfirst.elements}
        inner_j = {j: set_limit(chain1_diagram(vals[(0, j)], vals[(1, j)], rows[j]))
                   for j in (0, 1)}
        table = {fam: (cols[0][fam[0]], cols[1][fam[1]])
                 for fam in inner_j[0].elements}
        rowfirst = set_limit(chain1_diagram(inner_j[0].elements,
                                            inner_j[1].elements, table))
        flat2 = {(f[0][0], f[1][0], f[0][1], f[1][1]) for f in rowfirst.elements}
        direct = {(a, b, c, d)
                  for a in vals[(0, 0)] for b in vals[(0, 1)]
                  for c in vals[(1, 0)] for d in vals[(1, 1)]
                  if cols[0][a] == b and cols[1][c] == d
                  and rows[0][a] == c and rows[1][b] == d}
        assert flat1 == direct
        assert flat2 == direct


# ------------------------------------------------------------- pseudo-cones

def one_object_diagram(C):
    idx = cat_point()
    return Diagram(idx, {"x": C}, {"1x": FinFunctor.identity(C)}, kind="cat")


def pt_functor(C, obj):
    return FinFunctor(cat_point(), C, {"x": obj}, {"1x": C.identity[obj]},
                      check=False)


def walking_iso_cospan():
    ib = cat_iso_interval()
    return cospan_diagram(pt_functor(ib, "0"), pt_functor(ib, "1")), ib


def test_lambda_over_one_object_recovers_the_value():
    for C in (cat_interval(), cat_iso_interval()):
        lam, cone = lambda_limit(one_object_diagram(C))
        assert find_cat_isomorphism(lam, C) is not None
        assert cone.legs["x"].on_obj(lam.objects[0]) in C.objects


def test_lambda_of_the_walking_iso_cospan():
    d, ib = walking_iso_cospan()
    lam, cone = lambda_limit(d)
    assert len(lam.objects) == 2
    assert equivalence_search(cat_point(), lam) is not None
    hfp = homotopy_fiber_product(pt_functor(ib, "0"), pt_functor(ib, "1"))
    assert len(hfp.objects) == 1
    assert equivalence_search(hfp, lam) is not None


def test_lambda_of_a_set_diagram_is_the_discrete_limit():
    d = pullback_fixture()
    lam, _ = lambda_limit(d)
    assert len(lam.objects) == len(set_limit(d))
    for n1 in lam.objects:
        for n2 in lam.objects:
            assert len(lam.homs[(n1, n2)]) == (1 if n1 == n2 else 0)


def harness_universe():
    return [cat_point(), cat_interval(), cat_iso_interval(),
            cat_discrete(("s", "t"))]


def harness_fixture_diagrams():
    d_cospan, _ = walking_iso_cospan()
    idx2 = cat_discrete(("a", "b"))
    pt, iv = cat_point(), cat_interval()
    d_disc = Diagram(idx2, {"a": pt, "b": iv},
                     {"1a": FinFunctor.identity(pt),
                      "1b": FinFunctor.identity(iv)}, kind="cat")
    d_const = constant_diagram(cat_chain(1), cat_interval(), kind="cat")
    idx = parallel_pair_index()
    d_pair = Diagram(idx, {"a": iv, "b": iv},
                     {"1a": FinFunctor.identity(iv),
                      "1b": FinFunctor.identity(iv),
                      "f": FinFunctor.identity(iv),
                      "g": FinFunctor.identity(iv)}, kind="cat")
    return [one_object_diagram(cat_iso_interval()),
            one_object_diagram(cat_interval()),
            d_cospan, d_disc, d_const, d_pair]


def test_harness_passes_on_every_lambda_cone():
    universe = harness_universe()
    for d in harness_fixture_diagrams():
        lam, cone = lambda_limit(d)
        report = universal_property_harness(cone, universe)
        assert report.ok, (d.name, report)


def test_harness_flags_a_vertex_that_is_not_the_limit():
    d = one_object_diagram(cat_iso_interval())
    wrong = cat_discrete(("s", "t"))
    ib = cat_iso_interval()
    legs = {"x": FinFunctor(wrong, ib, {"s": "0", "t": "0"},
                            {"1s": "i0", "1t": "i0"})}
    cone = Cone(wrong, d, legs, {"1x": {"s": "i0", "t": "i0"}})
    report = universal_property_harness(cone, harness_universe())
    assert not report.ok
    assert any(detail for _, flag, detail in report.verdicts if not flag)


def test_set_harness_accepts_the_limit_and_rejects_junk():
    d = pullback_fixture()
    lim = set_limit(d)
    assert universal_property_harness(lim.cone(), [("v",), ("v", "w")]).ok
    col = set_colimit(d)
    assert universal_property_harness(col.cocone(), [("v",), ("v", "w")]).ok
    padded = lim.elements + ("junk",)
    legs = {a: dict(lim.projections[a]) for a in d.index.objects}
    for a in d.index.objects:
        legs[a]["junk"] = legs[a][lim.elements[0]]
    bad = SetCone(padded, d, legs)
    assert not universal_property_harness(bad, [("v", "w")]).ok


def test_equivalent_vertices_are_connected_by_the_search():
    d, _ = walking_iso_cospan()
    lam, cone = lambda_limit(d)
    legs, gammas = lam.cones["P0"]
    small = Cone(cat_point(), cone.diagram, legs, gammas)
    assert universal_property_harness(small, harness_universe()).ok
    E = cone_equivalence_search(small, cone)
    assert E is not None
    assert E.on_obj("x") in lam.objects


def test_iterated_lambda_limits_commute_up_to_equivalence():
    idx = cat_chain(1)
    ib, pt = cat_iso_interval(), cat_point()
    vals = {(0, 0): ib, (1, 0): pt, (0, 1): ib, (1, 1): pt}
    collapse = FinFunctor(ib, pt, {"0": "x", "1": "x"},
                          {a: "1x" for a in ib.src})
    rows = {0: collapse, 1: collapse}
    cols = {0: FinFunctor.identity(ib), 1: FinFunctor.identity(pt)}

    def cat_diagram(c0, c1, step):
        return Diagram(idx, {"0": c0, "1": c1},
                       {"c00": FinFunctor.identity(c0),
                        "c11": FinFunctor.identity(c1),
                        "c01": step}, kind="cat")

    def induced(lam_s, lam_t, maps, diagram_t):
        omap = {}
        for n in lam_s.objects:
            legs, gam = lam_s.cones[n]
            legs2 = {b: maps[b].after(legs[b]) for b in idx.objects}
            gam2 = {f: {"x": maps[idx.tgt[f]].on_arrow(gam[f]["x"])}
                    for f in idx.src}
            hit = [n2 for n2, (l2, g2) in lam_t.cones.items()
                   if all(l2[b].key() == legs2[b].key() for b in idx.objects)
                   and g2 == gam2]
            assert len(hit) == 1
            omap[n] = hit[0]
        amap = {}
        for m in lam_s.src:
            mu = lam_s.modifications[m]
            mu2 = {b: {"x": maps[b].on_arrow(mu[b]["x"])} for b in idx.objects}
            hit = [m2 for m2 in lam_t.homs[(omap[lam_s.src[m]],
                                            omap[lam_s.tgt[m]])]
                   if lam_t.modifications[m2] == mu2]
            assert len(hit) == 1
            amap[m] = hit[0]
        return FinFunctor(lam_s, lam_t, omap, amap)

    inner0 = cat_diagram(vals[(0, 0)], vals[(0, 1)], cols[0])
    inner1 = cat_diagram(vals[(1, 0)], vals[(1, 1)], cols[1])
    lam0, _ = lambda_limit(inner0)
    lam1, _ = lambda_limit(inner1)
    step = induced(lam0, lam1, {"0": rows[0], "1": rows[1]}, inner1)
    colfirst, _ = lambda_limit(cat_diagram(lam0, lam1, step))

    innerN = cat_diagram(vals[(0, 0)], vals[(1, 0)], rows[0])
    innerS = cat_diagram(vals[(0, 1)], vals[(1, 1)], rows[1])
    lamN, _ = lambda_limit(innerN)
    lamS, _ = lambda_limit(innerS)
    step2 = induced(lamN, lamS, {"0": cols[0], "1": cols[1]}, innerS)
    rowfirst, _ = lambda_limit(cat_diagram(lamN, lamS, step2))

    assert equivalence_search(colfirst, rowfirst) is not None


# --------------------------------------------- fiber products and pushouts

def test_strict_and_homotopy_fiber_products_agree_over_isofibrations():
    ib, pt, iv = cat_iso_interval(), cat_point(), cat_interval()
    disc = cat_discrete(("s", "t"))
    swap = FinFunctor(ib, ib, {"0": "1", "1": "0"},
                      {"i0": "i1", "i1": "i0", "u": "v", "v": "u"})
    collapse_ib = FinFunctor(ib, pt, {"0": "x", "1": "x"},
                             {a: "1x" for a in ib.src})
    collapse_iv = FinFunctor(iv, pt, {"0": "x", "1": "x"},
                             {a: "1x" for a in iv.src})
    collapse_disc = FinFunctor(disc, pt, {"s": "x", "t": "x"},
                               {"1s": "1x", "1t": "1x"})
    cospans = [
        (FinFunctor.identity(ib), pt_functor(ib, "0")),
        (collapse_ib, FinFunctor.identity(pt)),
        (swap, pt_functor(ib, "1")),
        (collapse_iv, collapse_ib),
        (collapse_disc, FinFunctor.identity(pt)),
    ]
    for u, v in cospans:
        flag, _ = is_isofibration(u)
        assert flag
        strict = strict_pullback(u, v)
        hfp = homotopy_fiber_product(u, v)
        assert equivalence_search(strict, hfp) is not None


def test_point_cospan_separates_strict_from_homotopy():
    ib = cat_iso_interval()
    u, v = pt_functor(ib, "0"), pt_functor(ib, "1")
    strict = strict_pullback(u, v)
    hfp = homotopy_fiber_product(u, v)
    assert len(strict.objects) == 0
    assert len(hfp.objects) == 1
    assert equivalence_search(strict, hfp) is None


def test_fiber_product_over_the_point_is_the_product():
    iv, ib, pt = cat_interval(), cat_iso_interval(), cat_point()
    u = FinFunctor(iv, pt, {"0": "x", "1": "x"}, {a: "1x" for a in iv.src})
    v = FinFunctor(ib, pt, {"0": "x", "1": "x"}, {a: "1x" for a in ib.src})
    strict = strict_pullback(u, v)
    hfp = homotopy_fiber_product(u, v)
    assert find_cat_isomorphism(strict, hfp) is not None


def interval_end(which, bound=2):
    src = terminal(1, bound)
    tgt = interval(bound)
    comps = {prof: {"*": which * ((prof[0] + 1) if prof else 1)}
             for prof in src.profiles()}
    return PrecatMap(src, tgt, comps, check=False), src, tgt


def test_gluing_two_intervals_gives_the_chain():
    f, p1, _ = interval_end("1")
    g = PrecatMap(p1, interval(2),
                  {prof: {"*": "0" * ((prof[0] + 1) if prof else 1)}
                   for prof in p1.profiles()}, check=False)
    cat = homotopy_pushout(f, g)
    assert find_cat_isomorphism(cat, cat_chain(2)) is not None


def test_empty_legged_pushout_is_the_disjoint_union():
    e = empty_precat(1, 2)
    f = PrecatMap(e, interval(2), {}, check=False)
    g = PrecatMap(e, iso_interval(2), {}, check=False)
    cat = homotopy_pushout(f, g)
    assert len(cat.objects) == 4
    assert len(cat.src) == 7
    lefts = [o for o in cat.objects if o[0] == "L"]
    rights = [o for o in cat.objects if o[0] == "R"]
    for a in lefts:
        for b in rights:
            assert cat.homs[(a, b)] == ()
            assert cat.homs[(b, a)] == ()


def test_identity_legged_pushout_returns_the_input():
    one = PrecatMap.identity(interval(2))
    cat = homotopy_pushout(one, one)
    assert find_cat_isomorphism(cat, cat_interval()) is not None


def test_pushout_rejects_a_non_cofibration():
    pair = discrete(1, 2, ("a", "b"))
    pt = terminal(1, 2)
    crush = PrecatMap(pair, pt, {prof: {"a": "*", "b": "*"}
                                 for prof in pair.profiles()}, check=False)
    with pytest.raises(FixtureError):
        homotopy_pushout(crush, crush)


def test_pushout_cap_overflow_propagates():
    pair = discrete(1, 2, ("a", "b"))
    ends = PrecatMap(pair, interval(2),
                     {prof: {"a": "0" * ((prof[0] + 1) if prof else 1),
                             "b": "1" * ((prof[0] + 1) if prof else 1)}
                      for prof in pair.profiles()}, check=False)
    crush = PrecatMap(pair, terminal(1, 2),
                      {prof: {"a": "*", "b": "*"} for prof in pair.profiles()},
                      check=False)
    with pytest.raises(CapExceeded):
        homotopy_pushout(ends, crush, cap=16)


# ------------------------------------------------------------ the bootstrap

def singleton_diagram():
    idx = cat_discrete(("a",))
    return Diagram(idx, {"a": ("a0",)}, ident_action(idx, {"a": ("a0",)}))


def coequalizer_singletons():
    idx = parallel_pair_index()
    values = {"a": ("x0",), "b": ("y0",)}
    action = ident_action(idx, values)
    action["f"] = {"x0": "y0"}
    action["g"] = {"x0": "y0"}
    return Diagram(idx, values, action)


def span_singletons():
    idx = span_index()
    values = {"l": ("l0",), "m": ("m0",), "r": ("r0",)}
    action = ident_action(idx, values)
    action["f"] = {"m0": "l0"}
    action["g"] = {"m0": "r0"}
    return Diagram(idx, values, action)


def check_bootstrap_against_colimit(d, alpha):
    boot = direct_limit_bootstrap(d, alpha)
    col = set_colimit(d)
    assert len(boot) == len(col.classes)
    mapping = {}
    for cls in col.classes:
        images = {boot.cocone_legs[a][x] for a, x in cls}
        assert len(images) == 1
        mapping[cls] = images.pop()
    assert len(set(mapping.values())) == len(col.classes)
    assert set(mapping.values()) == set(boot.elements)
    return boot


def test_bootstrap_worked_examples():
    assert len(direct_limit_bootstrap(singleton_diagram(), 1)) == 1
    assert len(direct_limit_bootstrap(coequalizer_singletons(), 2)) == 1
    boot = check_bootstrap_against_colimit(span_singletons(), 3)
    assert len(boot) == 1


def test_bootstrap_matches_the_colimit_and_is_alpha_independent():
    rng = random.Random(314)
    done = 0
    attempts = 0
    while done < 10 and attempts < 200:
        attempts += 1
        d = random_set_diagram(rng)
        col = set_colimit(d)
        if len(col.classes) > 2:
            continue
        minimum = len(col.classes)
        first = check_bootstrap_against_colimit(d, minimum)
        second = check_bootstrap_against_colimit(d, minimum + 1)
        assert len(first) == len(second)
        done += 1
    assert done == 10


def test_bootstrap_cocone_passes_the_dual_harness():
    for d, alpha in ((coequalizer_singletons(), 2), (span_singletons(), 3)):
        boot = direct_limit_bootstrap(d, alpha)
        report = universal_property_harness(boot.cocone(), [("s",), ("s", "t")])
        assert report.ok, report


def test_bootstrap_raises_when_the_ambient_cannot_hold_the_limit():
    idx = cat_discrete(("a", "b", "c"))
    values = {a: (a + "0",) for a in idx.objects}
    d = Diagram(idx, values, ident_action(idx, values))
    with pytest.raises(AlphaTooSmall):
        direct_limit_bootstrap(d, 2)
    with pytest.raises(AlphaTooSmall):
        direct_limit_bootstrap(singleton_diagram(), 0)


def test_candidate_cocone_category_is_a_category():
    da = DAlpha(singleton_diagram(), 2)
    assert da.index.validate()
    sizes = {len(da.data[n][0]) for n in da.index.objects}
    assert sizes == {1, 2}


# -------------------------------------------------------------- telescopes

def test_telescope_of_the_identity_keeps_the_type():
    U = interval(2)
    p = PrecatMap.identity(U)
    tel = telescope(U, p, m=2)
    assert tel.r.after(tel.j).key() == p.key()
    cat = cat_generate(tel.precat, cap=64).category
    assert equivalence_search(cat_interval(), cat) is not None


def test_telescope_collapses_onto_the_image():
    U = discrete(1, 2, ("a", "b"))
    p = PrecatMap(U, U, {prof: {"a": "a", "b": "a"} for prof in U.profiles()},
                  check=False)
    for m in (1, 2, 3):
        tel = telescope(U, p, m=m)
        assert tel.r.after(tel.j).key() == p.key()
        assert tel.image.level(()) == ("a",)
        cat = cat_generate(tel.precat, cap=64).category
        assert equivalence_search(cat_point(), cat) is not None


def test_telescope_rejects_a_non_idempotent():
    U = discrete(1, 2, ("a", "b"))
    swap = PrecatMap(U, U, {prof: {"a": "b", "b": "a"} for prof in U.profiles()},
                     check=False)
    with pytest.raises(NotIdempotent):
        telescope(U, swap, m=2)


# ------------------------------------------------------------ finite sites

def chain_presheaf():
    cat = cat_chain(1)
    values = {"0": ("p", "q"), "1": ("r", "s", "t")}
    restriction = {"c00": {"p": "p", "q": "q"},
                   "c11": {"r": "r", "s": "s", "t": "t"},
                   "c01": {"r": "p", "s": "q", "t": "q"}}
    return trivial_site(cat), SitePresheaf(cat, values, restriction)


def two_arm_site():
    homs = {("U", "X"): ("a",), ("V", "X"): ("b",)}
    comp = {}
    for o in ("X", "U", "V"):
        homs[(o, o)] = ("1" + o,)
        comp[("1" + o, "1" + o)] = "1" + o
    comp[("a", "1U")] = "a"
    comp[("1X", "a")] = "a"
    comp[("b", "1V")] = "b"
    comp[("1X", "b")] = "b"
    cat = FinCategory(("X", "U", "V"), homs, comp, name="twoarm")
    return FiniteSite(cat, {"X": (("a", "b"),)})


def test_trivial_topology_always_descends():
    site, F = chain_presheaf()
    report = stack_check(site, F)
    assert report.ok, report


def test_non_gluing_sections_fail_at_the_declared_cover():
    site = two_arm_site()
    cat = site.cat
    values = {"X": ("s0",), "U": ("u1", "u2"), "V": ("v1", "v2")}
    restriction = {"1X": {"s0": "s0"},
                   "1U": {"u1": "u1", "u2": "u2"},
                   "1V": {"v1": "v1", "v2": "v2"},
                   "a": {"s0": "u1"},
                   "b": {"s0": "v1"}}
    F = SitePresheaf(cat, values, restriction)
    report = stack_check(site, F)
    assert not report.ok
    assert report.failures() == (("X", 0),)


def test_constant_sections_glue_over_connected_covers():
    cat = cat_chain(2)
    site = trivial_site(cat)
    values = {x: ("p", "q") for x in cat.objects}
    restriction = {a: {"p": "p", "q": "q"} for a in cat.src}
    report = stack_check(site, SitePresheaf(cat, values, restriction))
    assert report.ok, report


def test_category_valued_descent_over_the_trivial_topology():
    cat = cat_chain(1)
    ib = cat_iso_interval()
    values = {"0": ib, "1": ib}
    restriction = {"c00": FinFunctor.identity(ib),
                   "c11": FinFunctor.identity(ib),
                   "c01": FinFunctor.identity(ib)}
    F = SitePresheaf(cat, values, restriction, kind="cat")
    report = stack_check(trivial_site(cat), F)
    assert report.ok, report


def test_category_valued_descent_detects_missing_sections():
    site = two_arm_site()
    cat = site.cat
    pt = cat_point()
    disc = cat_discrete(("s", "t"))
    values = {"X": pt, "U": disc, "V": pt}
    restriction = {"1X": FinFunctor.identity(pt),
                   "1U": FinFunctor.identity(disc),
                   "1V": FinFunctor.identity(pt),
                   "a": FinFunctor(pt, disc, {"x": "s"}, {"1x": "1s"}),
                   "b": FinFunctor.identity(pt)}
    F = SitePresheaf(cat, values, restriction, kind="cat")
    report = stack_check(site, F)
    assert not report.ok
    assert report.failures() == (("X", 0),)


def test_site_validation_rejects_a_leaky_sieve():
    cat = cat_chain(1)
    # c11 alone is not downward closed, precomposing with c01 leaves the set
    with pytest.raises(FixtureError):
        FiniteSite(cat, {"1": (("c11",),)})


def test_upgraded_diagram_keeps_the_action():
    d = pullback_fixture()
    up = upgrade_to_cat(d)
    assert up.kind == "cat"
    for f in d.index.src:
        for x in d.value(d.index.src[f]):
            assert up.action[f].on_obj(x) == d.action[f][x]
