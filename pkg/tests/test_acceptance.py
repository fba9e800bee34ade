"""Acceptance suite: one timed criterion per test, one pass/fail line each.

Run with -v -s to see the per-criterion lines; every criterion re-derives
its expectations from independent oracles or frozen corpus facts and
enforces its own wall-clock budget.
"""

import json
import os
import random
import time
from contextlib import contextmanager

import pytest

from thetalab import fixtures
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
    nerve,
    segal_reconstruct,
    segal_spine_tables,
    strict_pullback,
)
from thetalab.homotopy_loc import (
    gc_pushout_compare,
    group_completion,
    iso_correspondence,
)
from thetalab.limits_lab import (
    Cone,
    direct_limit_bootstrap,
    homotopy_fiber_product,
    homotopy_pushout,
    lambda_limit,
    set_colimit,
    set_limit,
    stack_check,
    telescope,
    universal_property_harness,
)
from thetalab.ncat_tools import cardinality, interior, tau_le_0
from thetalab.presheaf_engine import (
    PrecatMap,
    count_maps,
    discrete,
    empty_precat,
    find_isomorphism,
    interval,
    iso_interval,
    terminal,
)
from thetalab.upsilon import assemble_upsilon2, build_shell, build_upsilon

from oracles import brute_set_colimit, brute_set_limit
from test_limits_lab import (
    chain1_diagram,
    check_bootstrap_against_colimit,
    double_grid,
    harness_fixture_diagrams,
    harness_universe,
    one_object_diagram,
    oracle_tables,
    random_set_diagram,
    realign,
)
from test_upsilon import chain_nerve

CORPUS = os.path.join(os.path.dirname(fixtures.__file__), "corpus")


def corpus_index():
    with open(os.path.join(CORPUS, "index.json"), encoding="utf-8") as fh:
        return json.load(fh)["fixtures"]


def corpus_load(fn):
    return fixtures.load_path(os.path.join(CORPUS, fn))


def corpus_categories():
    return [(e["file"], corpus_load(e["file"])) for e in corpus_index()
            if e["kind"] == "category"]


@contextmanager
def criterion(num, title, budget):
    start = time.monotonic()
    try:
        yield
    except Exception:
        print("criterion %2d (%s): FAIL after %.2fs"
              % (num, title, time.monotonic() - start))
        raise
    elapsed = time.monotonic() - start
    print("criterion %2d (%s): PASS in %.2fs (budget %ds)"
          % (num, title, elapsed, budget))
    assert elapsed <= budget, "criterion %d blew its %ds budget" % (num, budget)


def segal_bijective(A, p):
    """Spine tuples of p-cells against composable p-chains of 1-cells."""
    tables = segal_spine_tables(A, p)
    spines = [tuple(t[cell] for t in tables) for cell in A.level((p,))]
    if len(set(spines)) != len(spines):
        return False
    ends = {e: A.vertices((1,), e) for e in A.level((1,))}
    chains = [(e,) for e in A.level((1,))]
    for _ in range(p - 1):
        chains = [c + (e,) for c in chains for e in A.level((1,))
                  if ends[c[-1]][1] == ends[e][0]]
    return set(spines) == set(chains) and len(chains) == len(spines)


def test_criterion_01_nerve_round_trip():
    with criterion(1, "nerve and Segal round trip", 5):
        cats = corpus_categories()
        assert len(cats) >= 10
        for fn, C in cats:
            assert len(C.objects) <= 5, fn
            A = nerve(C, 3)
            for p in (2, 3):
                assert segal_bijective(A, p), (fn, p)
            back = segal_reconstruct(A)
            assert find_cat_isomorphism(back, C) is not None, fn


def test_criterion_02_upsilon_laws():
    with criterion(2, "one-cell constructor laws", 10):
        pt0 = terminal(0, 2)
        pair0 = discrete(0, 2, ("a", "b"))
        empty0 = empty_precat(0, 2)
        assert find_isomorphism(build_upsilon(pt0).precat,
                                interval(2)) is not None
        assert find_isomorphism(build_upsilon(pt0, pt0).precat,
                                chain_nerve(2, 2)) is not None
        pairs = [(pt0, pt0), (pt0, pair0), (pair0, pt0), (pair0, pair0),
                 (empty0, pt0), (pt0, empty0)]
        for E, F in pairs:
            assembled, iso = assemble_upsilon2(E, F)
            assert iso.is_isomorphism()
            direct = build_upsilon(E, F).precat
            for prof in direct.profiles():
                assert len(assembled.level(prof)) == len(direct.level(prof))
        for E in (empty0, pt0, pair0):
            cell = build_upsilon(E)
            for fn, C in corpus_categories():
                B = nerve(C, 2)
                want = sum(len(C.hom(x, y)) ** len(E.level(()))
                           for x in C.objects for y in C.objects)
                assert count_maps(cell.precat, B) == want, (E.name, fn)


def test_criterion_03_shell_classification():
    with criterion(3, "shells against their cells", 30):
        pt0 = terminal(0, 2)
        f = corpus_load("leg0.json")
        g = corpus_load("leg1.json")
        glued = homotopy_pushout(f, g)
        two = cat_generate(build_upsilon(pt0, pt0).precat).category
        assert equivalence_search(glued, two) is not None
        three = build_upsilon(pt0, pt0, pt0)
        left = build_shell(three, "left")
        cat_shell = cat_generate(left.precat).category
        cat_full = cat_generate(three.precat).category
        assert equivalence_search(cat_shell, cat_full) is None


def test_criterion_04_interval_suite():
    with criterion(4, "interval calculus", 5):
        assert len(tau_le_0(iso_interval(2))) == 1
        sub, _ = interior(interval(2))
        assert find_isomorphism(sub, discrete(1, 2, ("0", "1"))) is not None
        sub, _ = interior(iso_interval(2))
        assert find_isomorphism(sub, iso_interval(2)) is not None
        res = group_completion(interval(2))
        assert res.finite
        assert find_cat_isomorphism(res.category,
                                    cat_iso_interval()) is not None
        reduced = res.shadow[0].simplify()
        assert reduced.is_free() and reduced.generators == ()
        for fn, C in corpus_categories():
            ok, _ = iso_correspondence(C)
            assert ok, fn


def test_criterion_05_set_limits_against_oracles():
    with criterion(5, "set limits against brute oracles", 10):
        rng = random.Random(20260816)
        for _ in range(20):
            d = random_set_diagram(rng)
            objs, arrows, values = oracle_tables(d)
            want = {tuple(f) for f in brute_set_limit(objs, arrows, values)}
            assert realign(d, set_limit(d).elements) == want
            got = {frozenset(c) for c in set_colimit(d).classes}
            assert got == {frozenset(c)
                           for c in brute_set_colimit(objs, arrows, values)}
        for trial in range(10):
            vals, rows, cols = double_grid(
                rng, "product" if trial % 2 else "corner")
            inner = {i: set_limit(chain1_diagram(vals[(i, 0)], vals[(i, 1)],
                                                 cols[i]))
                     for i in (0, 1)}
            table = {fam: (rows[0][fam[0]], rows[1][fam[1]])
                     for fam in inner[0].elements}
            colfirst = set_limit(chain1_diagram(inner[0].elements,
                                                inner[1].elements, table))
            flat = {(f[0][0], f[0][1], f[1][0], f[1][1])
                    for f in colfirst.elements}
            direct = {(a, b, c, d)
                      for a in vals[(0, 0)] for b in vals[(0, 1)]
                      for c in vals[(1, 0)] for d in vals[(1, 1)]
                      if cols[0][a] == b and cols[1][c] == d
                      and rows[0][a] == c and rows[1][b] == d}
            assert flat == direct


def test_criterion_06_lambda_universal_property():
    with criterion(6, "pseudo-limit universal property", 60):
        universe = harness_universe()
        diagrams = harness_fixture_diagrams()
        assert len(diagrams) >= 5
        for d in diagrams:
            _, cone = lambda_limit(d)
            assert universal_property_harness(cone, universe).ok, d.name
        d = one_object_diagram(cat_iso_interval())
        wrong = cat_discrete(("s", "t"))
        ib = cat_iso_interval()
        legs = {"x": FinFunctor(wrong, ib, {"s": "0", "t": "0"},
                                {"1s": "i0", "1t": "i0"})}
        bad = Cone(wrong, d, legs, {"1x": {"s": "i0", "t": "i0"}})
        assert not universal_property_harness(bad, universe).ok


def test_criterion_07_fiber_products_over_isofibrations():
    with criterion(7, "fiber products over isofibrations", 30):
        ib, pt, iv = cat_iso_interval(), cat_point(), cat_interval()
        disc = cat_discrete(("s", "t"))
        swap = FinFunctor(ib, ib, {"0": "1", "1": "0"},
                          {"i0": "i1", "i1": "i0", "u": "v", "v": "u"})

        def collapse(C):
            return FinFunctor(C, pt, {x: "x" for x in C.objects},
                              {a: "1x" for a in C.src})

        def at(C, obj):
            return FinFunctor(pt, C, {"x": obj}, {"1x": C.identity[obj]})

        cospans = [
            (FinFunctor.identity(ib), at(ib, "0")),
            (collapse(ib), FinFunctor.identity(pt)),
            (swap, at(ib, "1")),
            (collapse(iv), collapse(ib)),
            (collapse(disc), FinFunctor.identity(pt)),
        ]
        for u, v in cospans:
            assert is_isofibration(u)[0]
            strict = strict_pullback(u, v)
            homotopy = homotopy_fiber_product(u, v)
            assert equivalence_search(strict, homotopy) is not None
        u, v = at(ib, "0"), at(ib, "1")
        assert not is_isofibration(u)[0]
        strict = strict_pullback(u, v)
        homotopy = homotopy_fiber_product(u, v)
        assert len(strict.objects) == 0 and len(homotopy.objects) == 1
        assert equivalence_search(strict, homotopy) is None


def test_criterion_08_homotopy_pushouts():
    with criterion(8, "homotopy pushouts", 5):
        glued = homotopy_pushout(corpus_load("leg0.json"),
                                 corpus_load("leg1.json"))
        assert find_cat_isomorphism(glued, cat_chain(2)) is not None
        e = empty_precat(1, 2)
        f = PrecatMap(e, interval(2), {}, check=False)
        g = PrecatMap(e, iso_interval(2), {}, check=False)
        both = homotopy_pushout(f, g)
        assert len(both.objects) == 4 and len(both.src) == 7
        lefts = [o for o in both.objects if o[0] == "L"]
        rights = [o for o in both.objects if o[0] == "R"]
        for a in lefts:
            for b in rights:
                assert both.homs[(a, b)] == () and both.homs[(b, a)] == ()


def test_criterion_09_bootstrap_and_telescope():
    with criterion(9, "direct limit bootstrap", 120):
        rng = random.Random(515)
        done = 0
        attempts = 0
        while done < 10 and attempts < 200:
            attempts += 1
            d = random_set_diagram(rng)
            col = set_colimit(d)
            if not 1 <= len(col.classes) <= 2:
                continue
            minimum = len(col.classes)
            first = check_bootstrap_against_colimit(d, minimum)
            second = check_bootstrap_against_colimit(d, minimum + 1)
            assert len(first) == len(second) == len(col.classes)
            done += 1
        assert done == 10
        U = discrete(1, 2, ("a", "b"))
        p = PrecatMap(U, U, {prof: {"a": "a", "b": "a"}
                             for prof in U.profiles()}, check=False)
        for m in (1, 2, 3):
            tel = telescope(U, p, m=m)
            assert tel.r.after(tel.j).key() == p.key()
            assert tel.image.level(()) == ("a",)
            collapsed = cat_generate(tel.precat).category
            image_cat = cat_generate(tel.image).category
            assert equivalence_search(collapsed, image_cat) is not None


def test_criterion_10_stack_checker():
    with criterion(10, "descent over finite sites", 10):
        trivial = corpus_load("site-trivial.json")
        arms = corpus_load("site-arms.json")
        sections = corpus_load("sections.json")
        bad = corpus_load("sections-bad.json")
        catval = corpus_load("catsections.json")
        assert stack_check(trivial, sections).ok
        assert stack_check(arms, sections).ok
        report = stack_check(arms, bad)
        assert not report.ok
        assert report.failures() == (("X", 0),)
        assert stack_check(trivial, bad).ok
        assert stack_check(arms, catval).ok
        assert stack_check(trivial, catval).ok


def test_criterion_11_cardinality():
    with criterion(11, "cardinality invariance", 5):
        assert cardinality(iso_interval(2)).value == 1
        assert cardinality(interval(2)).value == 3
        segal = [e["file"] for e in corpus_index()
                 if e["kind"] == "precat" and e.get("expect", {}).get("segal")]
        assert len(segal) >= 8
        for fn in segal:
            A = corpus_load(fn)
            base = cardinality(A)
            if A.n == 0:
                continue
            classes = tau_le_0(A)
            for k, cls in enumerate(classes):
                for alt in cls[1:]:
                    reps = tuple(alt if i == k else c[0]
                                 for i, c in enumerate(classes))
                    assert cardinality(A, reps=reps) == base, fn
        # an equivalence changes the presentation, never the count
        indiscrete = FinCategory(
            ("a", "b"),
            {(x, y): ("%s%s" % (x, y),) for x in "ab" for y in "ab"},
            {("%s%s" % (y, z), "%s%s" % (x, y)): "%s%s" % (x, z)
             for x in "ab" for y in "ab" for z in "ab"})
        assert cardinality(nerve(indiscrete, 2)) == \
            cardinality(terminal(1, 2)) == cardinality(iso_interval(2))


def test_criterion_12_group_completion_of_pushouts():
    with criterion(12, "group completion of pushouts", 5):
        circle = gc_pushout_compare(corpus_load("pairleg0.json"),
                                    corpus_load("pairleg1.json"))
        assert circle.ok
        assert circle.direct_components == 1
        assert circle.entries[0][1:] == (1, 1)
        wedge = gc_pushout_compare(corpus_load("leg0.json"),
                                   corpus_load("leg1.json"))
        assert wedge.ok
        assert wedge.direct_components == 1
        assert wedge.entries[0][1:] == (0, 0)
