"""JSON fixture files: one object per file, canonical printed form.

Six kinds are understood: precat, category, functor, diagram, site and
presheaf.  Functors come in two flavors, "cat" between finite categories and
"precat" for levelwise maps; diagrams and presheaves are "set" or "cat"
valued.  The printer emits keys and entries in the intrinsic order of the
object (object tuples, level tuples, canonical morphism enumeration), so a
file produced here survives parse-then-print bit for bit, and parse after
print rebuilds an equal object.

Element and arrow names must be strings; relabel_precat turns machine-made
names (tuples from pushouts and products, morphism objects from
representables) into printable ones first.
"""

import json

from .cat_one import FinCategory, FinFunctor
from .errors import FixtureError
from .limits_lab import Diagram, FiniteSite, SitePresheaf
from .presheaf_engine import Precat, PrecatMap
from .theta_core import (
    DeltaMorphism,
    ThetaMorphism,
    canonical_profile,
    pad,
    parse_profile,
    profile_str,
    profiles_within,
)

ARROW = "→"
COMPOSE = "∘"

KINDS = ("precat", "category", "functor", "diagram", "site", "presheaf")


def _require_str(value, where):
    if not isinstance(value, str):
        raise FixtureError("%s must be a string, got %r" % (where, value))
    return value


def _split2(key, sep, where):
    parts = key.split(sep)
    if len(parts) != 2:
        raise FixtureError("%s key %r must contain %r exactly once" % (where, key, sep))
    return parts[0], parts[1]


# ---------------------------------------------------------------- relabeling

def _scrub(elem):
    """Flatten tuples with dots; None when the element has no obvious name."""
    if isinstance(elem, str):
        return elem
    if isinstance(elem, bool):
        return None
    if isinstance(elem, int):
        return str(elem)
    if isinstance(elem, tuple):
        parts = [_scrub(p) for p in elem]
        if any(p is None or p == "" for p in parts):
            return None
        return ".".join(parts)
    return None


def relabel_precat(A, namer=None, name=None):
    """Copy of A with string element names, plus the per-level name tables.

    The default namer flattens tuple names and falls back to positional
    names on any level where that is ambiguous or impossible.
    """
    tables = {}
    for prof in A.profiles():
        elems = A.level(prof)
        if namer is None:
            names = [_scrub(e) for e in elems]
            if any(nm is None for nm in names) or len(set(names)) != len(names):
                names = ["e%d" % i for i in range(len(elems))]
        else:
            names = [namer(prof, i, e) for i, e in enumerate(elems)]
        if len(set(names)) != len(names) or not all(isinstance(nm, str) for nm in names):
            raise FixtureError("relabeling is not injective at level %s"
                               % profile_str(prof))
        tables[prof] = dict(zip(elems, names))

    levels = {prof: tuple(tables[prof][e] for e in A.level(prof))
              for prof in A.profiles()}

    def action(f):
        raw = A.act(f)
        src = tables[canonical_profile(f.source)]
        tgt = tables[canonical_profile(f.target)]
        return {tgt[e]: src[v] for e, v in raw.items()}

    out = Precat(A.n, A.bound, levels, action, name=name or A.name)
    return out, tables


def relabel_map(f, source_tables=None, target_tables=None):
    """Transport a PrecatMap along relabelings of its two ends."""
    src, stab = relabel_precat(f.source, namer=_table_namer(source_tables))
    tgt, ttab = relabel_precat(f.target, namer=_table_namer(target_tables))
    comps = {prof: {stab[prof][e]: ttab[prof][v]
                    for e, v in f.components[prof].items()}
             for prof in f.source.profiles()}
    return PrecatMap(src, tgt, comps, check=False)


def _table_namer(tables):
    if tables is None:
        return None
    return lambda prof, i, e: tables[prof][e]


def relabel_category(C, name=None):
    """Copy of C with printable names, plus the object and arrow tables.

    Machine-built categories (cone categories, iso-commas, generated
    quotients) carry tuple-shaped names; scrub what scrubs, number the rest.
    """
    objs = [_scrub(x) for x in C.objects]
    if any(o is None or ARROW in o for o in objs) or len(set(objs)) != len(objs):
        objs = ["x%d" % i for i in range(len(C.objects))]
    omap = dict(zip(C.objects, objs))
    arrs = list(C.src)
    names = [_scrub(a) for a in arrs]
    if any(nm is None or COMPOSE in nm for nm in names) or \
            len(set(names)) != len(names):
        names = ["a%d" % i for i in range(len(arrs))]
    amap = dict(zip(arrs, names))
    homs = {(omap[x], omap[y]): tuple(amap[a] for a in cell)
            for (x, y), cell in C.homs.items()}
    comp = {(amap[g], amap[f]): amap[h] for (g, f), h in C.compose.items()}
    out = FinCategory(tuple(omap[x] for x in C.objects), homs, comp,
                      name=name or C.name, check=False)
    return out, omap, amap


# -------------------------------------------------------------------- precat

def encode_precat(A, name=None):
    payload = {"kind": "precat"}
    label = name or A.name
    if label:
        payload["name"] = _require_str(label, "precat name")
    payload["n"] = A.n
    payload["D"] = A.bound
    profs = profiles_within(A.n, A.bound)
    levels = {}
    for prof in profs:
        levels[profile_str(prof)] = [
            _require_str(e, "element at level %s" % profile_str(prof))
            for e in A.level(prof)]
    payload["levels"] = levels
    action = []
    for src in profs:
        for tgt in profs:
            for f in _morphisms(A.n, src, tgt):
                if f.is_identity:
                    continue
                table = A.act(f)
                action.append({
                    "from": profile_str(src),
                    "to": profile_str(tgt),
                    "map": [list(c.values) for c in f.components],
                    "table": {e: table[e] for e in A.level(tgt)},
                })
    payload["action"] = action
    return payload


def _morphisms(n, src, tgt):
    from .theta_core import enumerate_morphisms
    return enumerate_morphisms(n, src, tgt)


def decode_precat(payload):
    n = payload["n"]
    bound = payload["D"]
    if not isinstance(n, int) or not isinstance(bound, int) or n < 0 or bound < 1:
        raise FixtureError("precat needs integer n >= 0 and D >= 1")
    levels = {}
    for key, elems in payload["levels"].items():
        prof = parse_profile(key)
        levels[prof] = tuple(_require_str(e, "element") for e in elems)
    for prof in profiles_within(n, bound):
        if prof not in levels:
            raise FixtureError("level %s missing from the fixture" % profile_str(prof))
    tables = {}
    for entry in payload["action"]:
        src = parse_profile(entry["from"])
        tgt = parse_profile(entry["to"])
        srep, trep = pad(src, n), pad(tgt, n)
        raw = entry["map"]
        if len(raw) != n:
            raise FixtureError("morphism map needs %d coordinates, got %d"
                               % (n, len(raw)))
        try:
            comps = tuple(DeltaMorphism(srep[t], trep[t], tuple(raw[t]))
                          for t in range(n))
            f = ThetaMorphism(n, src, tgt, comps)
        except AssertionError:
            raise FixtureError("entry %s -> %s with map %r is not a canonical"
                               " shape morphism" % (entry["from"], entry["to"], raw))
        if f in tables:
            raise FixtureError("duplicate action entry for %r" % (f,))
        tables[f] = dict(entry["table"])

    def action(f):
        if f.is_identity:
            return {e: e for e in levels[canonical_profile(f.source)]}
        if f not in tables:
            raise FixtureError("fixture carries no action table for %r" % (f,))
        return dict(tables[f])

    return Precat(n, bound, levels, action, name=payload.get("name"))


# ------------------------------------------------------------------ category

def encode_category(C, name=None):
    payload = {"kind": "category"}
    label = name or C.name
    if label:
        payload["name"] = _require_str(label, "category name")
    body = category_body(C)
    payload.update(body)
    return payload


def category_body(C):
    for x in C.objects:
        if not isinstance(x, str) or ARROW in x:
            raise FixtureError("object name %r is not printable" % (x,))
    order = []
    homs = {}
    for x in C.objects:
        for y in C.objects:
            cell = C.homs[(x, y)]
            if not cell:
                continue
            for a in cell:
                if not isinstance(a, str) or COMPOSE in a:
                    raise FixtureError("arrow name %r is not printable" % (a,))
            homs["%s%s%s" % (x, ARROW, y)] = list(cell)
            order.extend(cell)
    pos = {a: i for i, a in enumerate(order)}
    compose = {}
    for g, f in sorted(C.compose, key=lambda gf: (pos[gf[0]], pos[gf[1]])):
        compose["%s%s%s" % (g, COMPOSE, f)] = C.compose[(g, f)]
    return {"objects": list(C.objects), "homs": homs, "compose": compose}


def decode_category(payload, name=None):
    objects = tuple(_require_str(x, "object") for x in payload["objects"])
    homs = {}
    for key, arrows in payload["homs"].items():
        x, y = _split2(key, ARROW, "homs")
        if x not in objects or y not in objects:
            raise FixtureError("hom key %r names unknown objects" % (key,))
        homs[(x, y)] = tuple(_require_str(a, "arrow") for a in arrows)
    compose = {}
    for key, h in payload["compose"].items():
        g, f = _split2(key, COMPOSE, "compose")
        compose[(g, f)] = _require_str(h, "composite")
    return FinCategory(objects, homs, compose, name=name or payload.get("name"))


# ------------------------------------------------------------------- functor

def encode_functor(F):
    payload = {"kind": "functor"}
    if isinstance(F, PrecatMap):
        payload["flavor"] = "precat"
        payload["source"] = _strip_kind(encode_precat(F.source))
        payload["target"] = _strip_kind(encode_precat(F.target))
        comps = {}
        for prof in F.source.profiles():
            table = F.components[prof]
            comps[profile_str(prof)] = {e: table[e] for e in F.source.level(prof)}
        payload["components"] = comps
        return payload
    payload["flavor"] = "cat"
    payload["source"] = _named_body(F.source)
    payload["target"] = _named_body(F.target)
    payload["objects"] = {x: F.obj_map[x] for x in F.source.objects}
    payload["arrows"] = {a: F.arrow_map[a] for a in _arrow_order(F.source)}
    return payload


def _strip_kind(payload):
    return {k: v for k, v in payload.items() if k != "kind"}


def _arrow_order(C):
    out = []
    for x in C.objects:
        for y in C.objects:
            out.extend(C.homs[(x, y)])
    return out


def decode_functor(payload):
    flavor = payload.get("flavor", "cat")
    if flavor == "precat":
        source = decode_precat(payload["source"])
        target = decode_precat(payload["target"])
        comps = {parse_profile(k): dict(t)
                 for k, t in payload["components"].items()}
        f = PrecatMap(source, target, comps)
        f.validate()
        return f
    if flavor != "cat":
        raise FixtureError("unknown functor flavor %r" % (flavor,))
    source = decode_category(payload["source"])
    target = decode_category(payload["target"])
    return FinFunctor(source, target, dict(payload["objects"]),
                      dict(payload["arrows"]))


# ------------------------------------------------------------------- diagram

def encode_diagram(d, name=None):
    payload = {"kind": "diagram"}
    label = name or d.name
    if label:
        payload["name"] = _require_str(label, "diagram name")
    payload["flavor"] = d.kind
    index = category_body(d.index)
    if d.index.name:
        index = {"name": d.index.name, **index}
    payload["index"] = index
    if d.kind == "set":
        payload["values"] = {x: [_require_str(v, "diagram element")
                                 for v in d.values[x]]
                             for x in d.index.objects}
        payload["action"] = {
            a: {v: d.action[a][v] for v in d.values[d.index.src[a]]}
            for a in _arrow_order(d.index) if a not in _identity_set(d.index)}
    else:
        payload["values"] = {x: _named_body(d.values[x]) for x in d.index.objects}
        payload["action"] = {
            a: _functor_maps(d.action[a])
            for a in _arrow_order(d.index) if a not in _identity_set(d.index)}
    return payload


def _identity_set(C):
    return set(C.identity.values())


def _named_body(C):
    body = category_body(C)
    if C.name:
        body = {"name": C.name, **body}
    return body


def _functor_maps(F):
    return {"objects": {x: F.obj_map[x] for x in F.source.objects},
            "arrows": {a: F.arrow_map[a] for a in _arrow_order(F.source)}}


def decode_diagram(payload):
    flavor = payload.get("flavor", "set")
    index = decode_category(payload["index"])
    if flavor == "set":
        values = {x: tuple(payload["values"][x]) for x in index.objects}
        action = {}
        for a, table in payload["action"].items():
            action[a] = dict(table)
        for x, e in index.identity.items():
            action[e] = {v: v for v in values[x]}
        return Diagram(index, values, action, kind="set",
                       name=payload.get("name"))
    if flavor != "cat":
        raise FixtureError("unknown diagram flavor %r" % (flavor,))
    values = {x: decode_category(payload["values"][x]) for x in index.objects}
    action = {}
    for a, maps in payload["action"].items():
        if a not in index.src:
            raise FixtureError("action names unknown arrow %r" % (a,))
        action[a] = FinFunctor(values[index.src[a]], values[index.tgt[a]],
                               dict(maps["objects"]), dict(maps["arrows"]))
    for x, e in index.identity.items():
        action[e] = FinFunctor.identity(values[x])
    return Diagram(index, values, action, kind="cat", name=payload.get("name"))


# ---------------------------------------------------------------------- site

def encode_site(site):
    payload = {"kind": "site"}
    payload["cat"] = _named_body(site.cat)
    coverings = {}
    for x in site.cat.objects:
        sieves = site.coverings.get(x, ())
        if sieves:
            coverings[x] = [list(B) for B in sieves]
    payload["coverings"] = coverings
    return payload


def decode_site(payload):
    cat = decode_category(payload["cat"])
    coverings = {x: tuple(tuple(_require_str(a, "sieve arrow") for a in B)
                          for B in sieves)
                 for x, sieves in payload["coverings"].items()}
    return FiniteSite(cat, coverings)


# ------------------------------------------------------------------ presheaf

def encode_presheaf(p):
    payload = {"kind": "presheaf"}
    payload["flavor"] = p.kind
    payload["cat"] = _named_body(p.cat)
    idset = _identity_set(p.cat)
    if p.kind == "set":
        payload["values"] = {x: [_require_str(s, "section") for s in p.values[x]]
                             for x in p.cat.objects}
        payload["restriction"] = {
            f: {s: p.restriction[f][s] for s in p.values[p.cat.tgt[f]]}
            for f in _arrow_order(p.cat) if f not in idset}
    else:
        payload["values"] = {x: _named_body(p.values[x]) for x in p.cat.objects}
        payload["restriction"] = {
            f: _functor_maps(p.restriction[f])
            for f in _arrow_order(p.cat) if f not in idset}
    return payload


def decode_presheaf(payload):
    flavor = payload.get("flavor", "set")
    cat = decode_category(payload["cat"])
    if flavor == "set":
        values = {x: tuple(payload["values"][x]) for x in cat.objects}
        restriction = {f: dict(t) for f, t in payload["restriction"].items()}
        for x, e in cat.identity.items():
            restriction[e] = {s: s for s in values[x]}
        return SitePresheaf(cat, values, restriction, kind="set")
    if flavor != "cat":
        raise FixtureError("unknown presheaf flavor %r" % (flavor,))
    values = {x: decode_category(payload["values"][x]) for x in cat.objects}
    restriction = {}
    for f, maps in payload["restriction"].items():
        if f not in cat.src:
            raise FixtureError("restriction names unknown arrow %r" % (f,))
        restriction[f] = FinFunctor(values[cat.tgt[f]], values[cat.src[f]],
                                    dict(maps["objects"]), dict(maps["arrows"]))
    for x, e in cat.identity.items():
        restriction[e] = FinFunctor.identity(values[x])
    return SitePresheaf(cat, values, restriction, kind="cat")


# ------------------------------------------------------------------ dispatch

def encode(obj, name=None):
    if isinstance(obj, Precat):
        return encode_precat(obj, name=name)
    if isinstance(obj, Diagram):
        return encode_diagram(obj, name=name)
    if isinstance(obj, (FinFunctor, PrecatMap)):
        return encode_functor(obj)
    if isinstance(obj, FinCategory):
        return encode_category(obj, name=name)
    if isinstance(obj, FiniteSite):
        return encode_site(obj)
    if isinstance(obj, SitePresheaf):
        return encode_presheaf(obj)
    raise FixtureError("cannot encode %r as a fixture" % (type(obj).__name__,))


_DECODERS = {
    "precat": decode_precat,
    "category": decode_category,
    "functor": decode_functor,
    "diagram": decode_diagram,
    "site": decode_site,
    "presheaf": decode_presheaf,
}


def decode(payload):
    kind = payload.get("kind")
    if kind not in _DECODERS:
        raise FixtureError("unknown fixture kind %r" % (kind,))
    try:
        return _DECODERS[kind](payload)
    except FixtureError:
        raise
    except (KeyError, IndexError, TypeError, ValueError, AttributeError) as exc:
        raise FixtureError("malformed %s fixture: %s" % (kind, exc))


def _reject_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise FixtureError("duplicate key %r in fixture" % (key,))
        out[key] = value
    return out


def loads(text):
    try:
        payload = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise FixtureError("fixture is not valid JSON: %s" % (exc,))
    if not isinstance(payload, dict):
        raise FixtureError("fixture must be a JSON object")
    return payload


def dumps(payload):
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def parse(text):
    return decode(loads(text))


def print_fixture(obj, name=None):
    return dumps(encode(obj, name=name))


def load_path(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FixtureError("cannot read %s: %s" % (path, exc))
    return parse(text)


def save_path(path, obj, name=None):
    text = print_fixture(obj, name=name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
