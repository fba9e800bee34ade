"""Command line front end: fixture files in, JSON reports out.

Every subcommand prints one JSON report to stdout with a "checks" list and a
top-level "ok"; the exit code is 0 when every check passed, 1 when some
check failed, and 2 on usage problems (bad arguments, unreadable or
malformed fixtures, inputs outside an operation's domain).  Reports are
deterministic: no ordering in them depends on hash iteration.
"""

import argparse
import json
import os
import sys

from . import fixtures
from .cat_one import (
    cat_discrete,
    cat_interval,
    cat_iso_interval,
    cat_point,
    cat_generate,
    equivalence_search,
    is_isofibration,
    nerve,
    segal_reconstruct,
    segal_spine_tables,
)
from .errors import (
    NotSegal,
    SegalFails,
    SliceNotCategory,
    ThetaLabError,
    FixtureError,
)
from .homotopy_loc import gc_pushout_compare, group_completion, localize
from .limits_lab import (
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
from .ncat_tools import cardinality, is_ncategory, k_interior, tau_le_0, tau_le_1
from .presheaf_engine import (
    Precat,
    PrecatMap,
    fiber_product,
    inflate,
    internal_hom,
    is_cofibration,
    product,
    pushout,
)
from .upsilon import build_bracket, build_shell, build_upsilon
from .cat_one import FinCategory, FinFunctor


def corpus_dir():
    return os.environ.get("THETALAB_CORPUS") or \
        os.path.join(os.path.dirname(__file__), "corpus")


# ------------------------------------------------------------------- loading

def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FixtureError("cannot read %s: %s" % (path, exc))


def _load(path, *kinds):
    payload = fixtures.loads(_read(path))
    kind = payload.get("kind")
    if kinds and kind not in kinds:
        raise FixtureError("%s holds a %r fixture, expected %s"
                           % (path, kind, " or ".join(kinds)))
    return fixtures.decode(payload)


def _load_precat(path):
    return _load(path, "precat")


def _load_category(path):
    return _load(path, "category")


def _load_cat_functor(path):
    F = _load(path, "functor")
    if not isinstance(F, FinFunctor):
        raise FixtureError("%s is a precat map, expected a category functor" % path)
    return F


def _load_precat_map(path):
    f = _load(path, "functor")
    if not isinstance(f, PrecatMap):
        raise FixtureError("%s is a category functor, expected a precat map" % path)
    return f


def _rebuild_endo(p):
    """Decoded source and target are distinct instances; an endomorphism
    fixture is reknit onto its own source."""
    if p.source.levels != p.target.levels:
        raise FixtureError("the map is not an endomorphism")
    return PrecatMap(p.source, p.source, p.components, check=False)


def _align_target(f, g):
    """Rebuild g onto f's target when the two decoded targets agree."""
    if fixtures.category_body(f.target) != fixtures.category_body(g.target):
        raise FixtureError("the two functors have different targets")
    return FinFunctor(g.source, f.target, g.obj_map, g.arrow_map, check=False)


# ------------------------------------------------------------------ reports

def _check(name, ok, detail=""):
    entry = {"name": name, "ok": bool(ok)}
    if detail:
        entry["detail"] = str(detail)
    return entry


def _report(command, checks, **extra):
    out = {"command": command, "ok": all(c["ok"] for c in checks)}
    for key, value in extra.items():
        out[key] = value
    out["checks"] = checks
    return out


def _precat_payload(A, name=None):
    out, _ = fixtures.relabel_precat(A, name=name)
    return fixtures.encode_precat(out)


def _category_payload(C, name=None):
    out, _, _ = fixtures.relabel_category(C, name=name)
    return fixtures.encode_category(out)


def _cardinal_json(c):
    return c.value if c.finite else "omega"


# ----------------------------------------------------------------- commands

def cmd_check_segal(args):
    A = _load_precat(args.fixture)
    if A.n != 1:
        raise FixtureError("check-segal works on 1-precats; use check-ncat")
    bound = min(args.bound or A.bound, A.bound)
    ends = {e: A.vertices((1,), e) for e in A.level((1,))}
    checks = []
    for p in range(2, bound + 1):
        tables = segal_spine_tables(A, p)
        spines = {}
        ok, detail = True, ""
        for cell in A.level((p,)):
            spine = tuple(t[cell] for t in tables)
            if spine in spines:
                ok, detail = False, "two cells share the spine %r" % (spine,)
                break
            spines[spine] = cell
        if ok:
            chains = [(e,) for e in A.level((1,))]
            for _ in range(p - 1):
                chains = [c + (e,) for c in chains for e in A.level((1,))
                          if ends[c[-1]][1] == ends[e][0]]
            for chain in chains:
                if chain not in spines:
                    ok, detail = False, "no cell over the spine %r" % (chain,)
                    break
        checks.append(_check("segal-%d" % p, ok, detail))
    return _report("check-segal", checks, fixture=args.fixture)


def cmd_check_ncat(args):
    A = _load_precat(args.fixture)
    try:
        witness = is_ncategory(A)
        checks = [_check("ncat", True,
                         "%d objects" % witness.n_objects)]
    except (SegalFails, SliceNotCategory) as exc:
        checks = [_check("ncat", False, exc)]
    return _report("check-ncat", checks, fixture=args.fixture)


def cmd_nerve(args):
    C = _load_category(args.fixture)
    bound = args.bound or 3
    A = nerve(C, bound)
    out, _ = fixtures.relabel_precat(A)
    ends = {e: out.vertices((1,), e) for e in out.level((1,))}
    checks = []
    for p in range(2, bound + 1):
        tables = segal_spine_tables(out, p)
        seen = {tuple(t[cell] for t in tables) for cell in out.level((p,))}
        chains = [(e,) for e in out.level((1,))]
        for _ in range(p - 1):
            chains = [c + (e,) for c in chains for e in out.level((1,))
                      if ends[c[-1]][1] == ends[e][0]]
        ok = len(seen) == len(out.level((p,))) and all(c in seen for c in chains) \
            and len(seen) == len(chains)
        checks.append(_check("segal-%d" % p, ok))
    return _report("nerve", checks, fixture=args.fixture,
                   result=fixtures.encode_precat(out))


def cmd_reconstruct(args):
    A = _load_precat(args.fixture)
    try:
        C = segal_reconstruct(A)
    except NotSegal as exc:
        return _report("reconstruct", [_check("segal", False, exc)],
                       fixture=args.fixture)
    return _report("reconstruct", [_check("segal", True)],
                   fixture=args.fixture, result=_category_payload(C))


def cmd_cat(args):
    A = _load_precat(args.fixture)
    res = cat_generate(A, cap=args.cap)
    detail = "%(generators)d generators, %(relations)d relations," \
             " %(arrows)d arrows" % res.trace
    return _report("cat", [_check("generated", True, detail)],
                   fixture=args.fixture,
                   result=_category_payload(res.category))


def cmd_upsilon(args):
    edges = [_load_precat(p) for p in args.edges]
    if len(edges) != args.k:
        raise FixtureError("expected %d edge fixtures, got %d"
                           % (args.k, len(edges)))
    cell = build_upsilon(*edges)
    return _report("upsilon", [_check("built", True)],
                   result=_precat_payload(cell.precat))


def cmd_bracket(args):
    E = _load_precat(args.fixture)
    cell = build_bracket(args.p, E)
    return _report("bracket", [_check("built", True)],
                   result=_precat_payload(cell.precat))


def cmd_shell(args):
    edges = [_load_precat(p) for p in args.edges]
    parent = build_upsilon(*edges)
    shell = build_shell(parent, args.side)
    return _report("shell", [_check("built", True)],
                   side=args.side,
                   parent_size=parent.precat.size(),
                   result=_precat_payload(shell.precat))


def cmd_pushout(args):
    f = _load_precat_map(args.left)
    g = _load_precat_map(args.right)
    po, _, _ = pushout(f, g)
    po.validate()
    return _report("pushout", [_check("valid", True)],
                   result=_precat_payload(po))


def cmd_product(args):
    A = _load_precat(args.left)
    B = _load_precat(args.right)
    prod, _, _ = product(A, B)
    prod.validate()
    return _report("product", [_check("valid", True)],
                   result=_precat_payload(prod))


def cmd_fiber_product(args):
    f = _load_precat_map(args.left)
    g = _load_precat_map(args.right)
    if f.target.levels != g.target.levels:
        raise FixtureError("the two maps have different targets")
    fp, _, _ = fiber_product(f, g)
    fp.validate()
    return _report("fiber-product", [_check("valid", True)],
                   result=_precat_payload(fp))


def cmd_hom(args):
    A = _load_precat(args.left)
    B = _load_precat(args.right)
    H = internal_hom(A, B, budget=args.budget)
    return _report("hom", [_check("built", True)],
                   result=_precat_payload(H))


def cmd_inflate(args):
    A = _load_precat(args.fixture)
    out = inflate(A, args.dim)
    return _report("inflate", [_check("built", True)],
                   result=fixtures.encode_precat(out))


def cmd_tau(args):
    A = _load_precat(args.fixture)
    if args.level == 0:
        try:
            classes = tau_le_0(A)
        except NotSegal as exc:
            return _report("tau", [_check("segal", False, exc)],
                           fixture=args.fixture, level=0)
        plural = "" if len(classes) == 1 else "es"
        return _report("tau", [_check("computed", True)],
                       fixture=args.fixture, level=0,
                       summary="{%d class%s}" % (len(classes), plural),
                       classes=[list(cls) for cls in classes])
    try:
        C = tau_le_1(A)
    except NotSegal as exc:
        return _report("tau", [_check("segal", False, exc)],
                       fixture=args.fixture, level=1)
    return _report("tau", [_check("computed", True)],
                   fixture=args.fixture, level=1,
                   result=_category_payload(C))


def cmd_interior(args):
    X = _load_precat(args.fixture)
    try:
        out = k_interior(X, args.k)
    except NotSegal as exc:
        return _report("interior", [_check("segal", False, exc)],
                       fixture=args.fixture)
    return _report("interior", [_check("computed", True)],
                   fixture=args.fixture, result=_precat_payload(out))


def cmd_cardinality(args):
    A = _load_precat(args.fixture)
    try:
        total = cardinality(A)
    except NotSegal as exc:
        return _report("cardinality", [_check("segal", False, exc)],
                       fixture=args.fixture)
    return _report("cardinality", [_check("computed", True)],
                   fixture=args.fixture, cardinality=_cardinal_json(total))


def cmd_equivalence(args):
    C = _load_category(args.left)
    D = _load_category(args.right)
    found = equivalence_search(C, D, budget=args.budget)
    detail = "" if found is None else "on objects %s" % (
        json.dumps({x: found.obj_map[x] for x in C.objects}),)
    return _report("equivalence", [_check("equivalent", found is not None,
                                          detail)])


def cmd_isofib(args):
    F = _load_cat_functor(args.fixture)
    flag, witness = is_isofibration(F)
    detail = "" if flag else "no lift over %r" % (witness,)
    return _report("isofib", [_check("isofibration", flag, detail)],
                   fixture=args.fixture)


def cmd_limit(args):
    d = _load(args.fixture, "diagram")
    if d.kind != "set":
        raise FixtureError("limit works on set diagrams; use lambda for"
                           " category values")
    lim = set_limit(d)
    return _report("limit", [_check("computed", True)],
                   fixture=args.fixture, size=len(lim),
                   elements=[list(fam) for fam in lim.elements])


def cmd_colimit(args):
    d = _load(args.fixture, "diagram")
    if d.kind != "set":
        raise FixtureError("colimit works on set diagrams; use hocolim-po for"
                           " category values")
    col = set_colimit(d)
    return _report("colimit", [_check("computed", True)],
                   fixture=args.fixture, size=len(col),
                   classes=[[[a, x] for a, x in cls] for cls in col.classes])


def cmd_lambda(args):
    d = _load(args.fixture, "diagram")
    if d.kind != "cat":
        raise FixtureError("lambda expects a category valued diagram")
    cones, best = lambda_limit(d, lax=args.lax, budget=args.budget)
    return _report("lambda", [_check("computed", True)],
                   fixture=args.fixture,
                   cones=len(cones.objects),
                   vertex=_category_payload(best.vertex))


_UNIVERSE = {
    "pt": cat_point,
    "I": cat_interval,
    "Ibar": cat_iso_interval,
    "disc2": lambda: cat_discrete(("a", "b")),
}


def _universe(tokens):
    out = []
    for tok in tokens.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok in _UNIVERSE:
            out.append(_UNIVERSE[tok]())
        else:
            out.append(_load_category(tok))
    if not out:
        raise FixtureError("the universe is empty")
    return out


def cmd_harness(args):
    d = _load(args.diagram, "diagram")
    if d.kind != "cat":
        raise FixtureError("harness expects a category valued diagram")
    universe = _universe(args.universe)
    _, cone = lambda_limit(d, lax=args.lax, budget=args.budget)
    rpt = universal_property_harness(cone, universe, lax=args.lax,
                                     budget=args.budget)
    checks = [_check(name, flag, detail) for name, flag, detail in rpt.verdicts]
    return _report("harness", checks, diagram=args.diagram)


def cmd_holim_fp(args):
    u = _load_cat_functor(args.left)
    v = _align_target(u, _load_cat_functor(args.right))
    C = homotopy_fiber_product(u, v)
    return _report("holim-fp", [_check("built", True)],
                   result=_category_payload(C))


def cmd_hocolim_po(args):
    f = _load_precat_map(args.left)
    g = _load_precat_map(args.right)
    C = homotopy_pushout(f, g, cap=args.cap)
    return _report("hocolim-po", [_check("built", True)],
                   result=_category_payload(C))


def cmd_bootstrap(args):
    d = _load(args.fixture, "diagram")
    if d.kind != "set":
        raise FixtureError("bootstrap works on set diagrams")
    res = direct_limit_bootstrap(d, args.alpha)
    col = set_colimit(d)
    assign = {}
    ok = True
    for cls in col.classes:
        vals = {res.cocone_legs[a][x] for a, x in cls}
        if len(vals) != 1:
            ok = False
            break
        assign[cls] = vals.pop()
    ok = ok and len(set(assign.values())) == len(assign) == len(res)
    checks = [_check("matches-colimit", ok,
                     "bootstrap %d vs colimit %d" % (len(res), len(col)))]
    return _report("bootstrap", checks, fixture=args.fixture,
                   alpha=args.alpha, size=len(res))


def cmd_telescope(args):
    p = _rebuild_endo(_load_precat_map(args.fixture))
    tel = telescope(p.source, p, m=args.m)
    retract_ok = tel.r.after(tel.j).key() == p.key()
    return _report("telescope", [_check("retract", retract_ok)],
                   fixture=args.fixture, stages=tel.stages,
                   size=tel.precat.size(),
                   result=_precat_payload(tel.precat))


def cmd_localize(args):
    C = _load_category(args.fixture)
    inverted = tuple(s for s in (args.invert or "").split(",") if s)
    res = localize(C, inverted, cap=args.cap)
    if res.finite:
        bad = [s for s in inverted
               if not res.category.is_iso(res.unit.arrow_map[s])]
        checks = [_check("inverts", not bad,
                         "not invertible: %s" % ", ".join(bad) if bad else "")]
        return _report("localize", checks, fixture=args.fixture,
                       inverted=list(inverted), finite=True,
                       result=_category_payload(res.category))
    checks = [_check("presented", True, "closure overflowed the cap")]
    return _report("localize", checks, fixture=args.fixture,
                   inverted=list(inverted), finite=False,
                   presentations=[p.text() for p in res.presentations])


def cmd_gc(args):
    X = _load_precat(args.fixture)
    res = group_completion(X, cap=args.cap)
    shadow = [p.text() for p in res.shadow] if res.shadow else []
    if res.finite:
        arrows = res.category.arrows()
        groupoid = all(res.category.is_iso(a) for a in arrows)
        checks = [_check("groupoid", groupoid)]
        return _report("gc", checks, fixture=args.fixture, finite=True,
                       result=_category_payload(res.category), shadow=shadow)
    checks = [_check("presented", True, "closure overflowed the cap")]
    return _report("gc", checks, fixture=args.fixture, finite=False,
                   presentations=[p.text() for p in res.presentations],
                   shadow=shadow)


def cmd_gc_pushout(args):
    f = _load_precat_map(args.left)
    g = _load_precat_map(args.right)
    rpt = gc_pushout_compare(f, g, cap=args.cap)
    checks = [_check("components", rpt.direct_components == rpt.split_components,
                     "%d vs %d" % (rpt.direct_components, rpt.split_components))]
    for base, direct_rank, split_rank in rpt.entries:
        checks.append(_check("rank@%s" % (base,), direct_rank == split_rank,
                             "direct %d, split %d" % (direct_rank, split_rank)))
    return _report("gc-pushout", checks,
                   entries=[[str(base), direct, split]
                            for base, direct, split in rpt.entries])


def cmd_stack_check(args):
    site = _load(args.site, "site")
    pre = _load(args.presheaf, "presheaf")
    if fixtures.category_body(site.cat) != fixtures.category_body(pre.cat):
        raise FixtureError("site and presheaf live on different categories")
    rpt = stack_check(site, pre, lax=args.lax, budget=args.budget)
    checks = [_check("%s#%d" % (x, i), flag, detail)
              for x, i, flag, detail in rpt.entries]
    if not checks:
        checks = [_check("no-coverings", True)]
    return _report("stack-check", checks, site=args.site,
                   presheaf=args.presheaf)


def cmd_corpus_verify(args):
    root = corpus_dir()
    index_path = os.path.join(root, "index.json")
    try:
        index = json.loads(_read(index_path))
    except json.JSONDecodeError as exc:
        raise FixtureError("corpus index is not valid JSON: %s" % (exc,))
    checks = []
    cache = {}

    def load_cached(fn):
        if fn not in cache:
            cache[fn] = _load(os.path.join(root, fn))
        return cache[fn]

    for entry in index.get("fixtures", ()):
        fn = entry["file"]
        expect = entry.get("expect", {})
        try:
            text = _read(os.path.join(root, fn))
            payload = fixtures.loads(text)
            if fixtures.dumps(payload) != text:
                checks.append(_check(fn, False, "file is not in printed form"))
                continue
            obj = fixtures.decode(payload)
            cache[fn] = obj
            if fixtures.encode(obj) != payload:
                checks.append(_check(fn, False, "re-encoding drifts"))
                continue
            detail = _verify_expectations(obj, entry["kind"], expect, load_cached)
        except ThetaLabError as exc:
            checks.append(_check(fn, False, exc))
            continue
        checks.append(_check(fn, detail == "", detail))
    return _report("corpus-verify", checks, corpus=root,
                   fixtures=len(checks))


def _verify_expectations(obj, kind, expect, load_cached):
    if kind == "precat":
        obj.validate()
        try:
            is_ncategory(obj)
            got = True
        except (SegalFails, SliceNotCategory):
            got = False
        if "segal" in expect and got != expect["segal"]:
            return "segal check gave %s" % got
    elif kind == "category":
        obj.validate()
    elif kind == "functor":
        if "isofibration" in expect:
            flag, _ = is_isofibration(obj)
            if flag != expect["isofibration"]:
                return "isofibration check gave %s" % flag
        if "cofibration" in expect:
            flag, _ = is_cofibration(obj)
            if flag != expect["cofibration"]:
                return "cofibration check gave %s" % flag
    elif kind == "presheaf":
        for spec in expect.get("stack", ()):
            site = load_cached(spec["site"])
            rpt = stack_check(site, obj)
            if rpt.ok != spec["ok"]:
                return "descent over %s gave %s" % (spec["site"], rpt.ok)
            if not spec["ok"]:
                want = [tuple(x) for x in spec.get("failures", ())]
                got = list(rpt.failures())
                if got != want:
                    return "descent failed at %s, declared %s" % (got, want)
    return ""


# ------------------------------------------------------------------- parser

def build_parser():
    parser = argparse.ArgumentParser(
        prog="thetalab",
        description="finite presheaf workbench: Segal checks, cell"
                    " constructors, limits, localization")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--report", metavar="OUT.JSON",
                       help="also write the report to a file")
        return p

    p = cmd("check-segal", cmd_check_segal, help="Segal maps of a 1-precat")
    p.add_argument("fixture")
    p.add_argument("--bound", type=int, default=None, metavar="D")

    p = cmd("check-ncat", cmd_check_ncat, help="recursive n-category check")
    p.add_argument("fixture")

    p = cmd("nerve", cmd_nerve, help="nerve of a category, with Segal checks")
    p.add_argument("fixture")
    p.add_argument("--bound", type=int, default=None, metavar="D")

    p = cmd("reconstruct", cmd_reconstruct,
            help="category from a Segal 1-precat")
    p.add_argument("fixture")

    p = cmd("cat", cmd_cat, help="generated category of a 1-precat")
    p.add_argument("fixture")
    p.add_argument("--cap", type=int, default=64, metavar="N")

    p = cmd("upsilon", cmd_upsilon, help="k-gon cell on edge precats")
    p.add_argument("k", type=int)
    p.add_argument("edges", nargs="+")

    p = cmd("bracket", cmd_bracket, help="universal cell [p](E)")
    p.add_argument("p", type=int)
    p.add_argument("fixture")

    p = cmd("shell", cmd_shell, help="face union of a k-gon cell")
    p.add_argument("side", choices=("left", "right", "spine"))
    p.add_argument("edges", nargs="+")

    p = cmd("pushout", cmd_pushout, help="pushout of two precat maps")
    p.add_argument("left")
    p.add_argument("right")

    p = cmd("product", cmd_product, help="levelwise product of two precats")
    p.add_argument("left")
    p.add_argument("right")

    p = cmd("fiber-product", cmd_fiber_product,
            help="strict fiber product of two precat maps")
    p.add_argument("left")
    p.add_argument("right")

    p = cmd("hom", cmd_hom, help="internal hom of two precats")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--budget", type=int, default=500000, metavar="B")

    p = cmd("inflate", cmd_inflate, help="reread a precat in a higher dimension")
    p.add_argument("fixture")
    p.add_argument("--dim", type=int, required=True, metavar="N")

    p = cmd("tau", cmd_tau, help="truncation of an n-category")
    p.add_argument("fixture")
    p.add_argument("--level", type=int, choices=(0, 1), required=True)

    p = cmd("interior", cmd_interior, help="interior groupoid of an n-category")
    p.add_argument("fixture")
    p.add_argument("--k", type=int, default=0)

    p = cmd("cardinality", cmd_cardinality, help="cardinality of an n-category")
    p.add_argument("fixture")

    p = cmd("equivalence", cmd_equivalence,
            help="search for an equivalence between two categories")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--budget", type=int, default=200000, metavar="B")

    p = cmd("isofib", cmd_isofib, help="isofibration check for a functor")
    p.add_argument("fixture")

    p = cmd("limit", cmd_limit, help="limit of a set diagram")
    p.add_argument("fixture")

    p = cmd("colimit", cmd_colimit, help="colimit of a set diagram")
    p.add_argument("fixture")

    p = cmd("lambda", cmd_lambda, help="pseudo-limit of a category diagram")
    p.add_argument("fixture")
    p.add_argument("--budget", type=int, default=200000, metavar="B")
    p.add_argument("--lax", action="store_true")

    p = cmd("harness", cmd_harness,
            help="universal property harness for a pseudo-limit")
    p.add_argument("--diagram", required=True)
    p.add_argument("--universe", required=True,
                   help="comma list of pt, I, Ibar, disc2 or fixture paths")
    p.add_argument("--budget", type=int, default=200000, metavar="B")
    p.add_argument("--lax", action="store_true")

    p = cmd("holim-fp", cmd_holim_fp,
            help="homotopy fiber product of two functors")
    p.add_argument("left")
    p.add_argument("right")

    p = cmd("hocolim-po", cmd_hocolim_po,
            help="homotopy pushout of two precat maps")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--cap", type=int, default=64, metavar="N")

    p = cmd("bootstrap", cmd_bootstrap,
            help="direct limit from inverse limits alone")
    p.add_argument("fixture")
    p.add_argument("--alpha", type=int, required=True, metavar="K")

    p = cmd("telescope", cmd_telescope,
            help="mapping telescope of a strict idempotent")
    p.add_argument("fixture")
    p.add_argument("--m", type=int, default=2)

    p = cmd("localize", cmd_localize, help="invert chosen arrows of a category")
    p.add_argument("fixture")
    p.add_argument("--invert", default="", metavar="S1,S2")
    p.add_argument("--cap", type=int, default=64, metavar="N")

    p = cmd("gc", cmd_gc, help="group completion of a 1-precat")
    p.add_argument("fixture")
    p.add_argument("--cap", type=int, default=64, metavar="N")

    p = cmd("gc-pushout", cmd_gc_pushout,
            help="group completion against a pushout, both ways")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--cap", type=int, default=64, metavar="N")

    p = cmd("stack-check", cmd_stack_check, help="descent over covering sieves")
    p.add_argument("site")
    p.add_argument("presheaf")
    p.add_argument("--budget", type=int, default=200000, metavar="B")
    p.add_argument("--lax", action="store_true")

    cmd("corpus-verify", cmd_corpus_verify,
        help="round-trip and recheck every shipped fixture")

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        rpt = args.handler(args)
    except ThetaLabError as exc:
        rpt = {"command": args.command, "ok": False,
               "error": "%s: %s" % (type(exc).__name__, exc)}
        _emit(rpt, args)
        return 2
    _emit(rpt, args)
    return 0 if rpt["ok"] else 1


def _emit(rpt, args):
    text = json.dumps(rpt, indent=2, ensure_ascii=False)
    print(text)
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


if __name__ == "__main__":
    sys.exit(main())
