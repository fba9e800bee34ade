"""Localization and group completion at presentation level.

Inverting a set of arrows is run through the completion engine when the
result stays finite; past the cap the answer is reported as a group
presentation per connected component, read off a spanning tree of the
underlying graph.  Group presentations invert every generator by
construction, so the presentation route always describes a groupoid.
"""

from .cat_one import (
    CompletionEngine,
    FinFunctor,
    cat_generate,
    cat_iso_interval,
    functors_between,
)
from .errors import (
    CapExceeded,
    FixtureError,
    IncompatibleProfiles,
    UndecidableFixture,
)
from .limits_lab import HarnessReport
from .presheaf_engine import is_cofibration, pushout
from .theta_core import enumerate_morphisms, long_edge_map, spine_map


# ------------------------------------------------------------------- words

def free_reduce(word):
    out = []
    for gen, exp in word:
        if out and out[-1][0] == gen and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


def invert_word(word):
    return tuple((gen, -exp) for gen, exp in reversed(word))


def _canonical_relator(word):
    # a relator, its inverse, and every cyclic rotation generate the same
    # normal closure; pick a deterministic representative
    best = None
    for base in (free_reduce(word), free_reduce(invert_word(word))):
        for i in range(max(1, len(base))):
            w = free_reduce(base[i:] + base[:i])
            key = (len(w), repr(w))
            if best is None or key < best[0]:
                best = (key, w)
    return best[1]


class GroupPresentation:
    """Generators and relator words for one component, with a basepoint."""

    def __init__(self, generators, relations, basepoint=None, name=None,
                 check=True):
        self.generators = tuple(generators)
        self.relations = tuple(tuple(w) for w in relations)
        self.basepoint = basepoint
        self.name = name
        if check:
            declared = set(self.generators)
            for w in self.relations:
                for gen, exp in w:
                    if gen not in declared or exp not in (1, -1):
                        raise FixtureError("relator letter %r is not a declared"
                                           " generator" % (gen,))

    def simplify(self):
        """Tietze moves limited to free reduction, deduplication, and the
        removal of generators forced trivial by a one letter relator."""
        gens = list(self.generators)
        rels = list(self.relations)
        while True:
            seen = set()
            cleaned = []
            for w in rels:
                w = _canonical_relator(w)
                if w and w not in seen:
                    seen.add(w)
                    cleaned.append(w)
            rels = cleaned
            trivial = None
            for w in rels:
                if len(w) == 1:
                    trivial = w[0][0]
                    break
            if trivial is None:
                break
            gens = [g for g in gens if g != trivial]
            rels = [tuple(l for l in w if l[0] != trivial) for w in rels]
        return GroupPresentation(gens, rels, basepoint=self.basepoint,
                                 name=self.name, check=False)

    def is_free(self):
        return not self.relations

    def text(self):
        gens = ", ".join(str(g) for g in self.generators)
        rels = ", ".join(" ".join(str(g) if e == 1 else "%s^-1" % (g,)
                                  for g, e in w)
                         for w in self.relations)
        return "⟨%s | %s⟩" % (gens, rels)

    def __repr__(self):
        return "<presentation at %r %s>" % (self.basepoint, self.text())


# ------------------------------------------- presentations from spanning trees

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if repr(rb) < repr(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra


def _graph_presentations(vertices, edges, pairs):
    """Per-component presentations of the groupoid completion of a graph
    with path relations.

    edges maps a name to its (source, target) pair; pairs lists equations
    between composable forward paths, either side possibly empty.  Collapsing
    a spanning tree leaves one generator per non-tree edge and one relator
    per equation.  Also returns the vertex -> basepoint table.
    """
    verts = sorted(vertices, key=repr)
    uf = _UnionFind(verts)
    for e in sorted(edges, key=repr):
        x, y = edges[e]
        uf.union(x, y)
    comp_of = {v: uf.find(v) for v in verts}
    neighbors = {v: [] for v in verts}
    for e in sorted(edges, key=repr):
        x, y = edges[e]
        neighbors[x].append((y, e))
        neighbors[y].append((x, e))
    tree = set()
    reached = set()
    for base in verts:
        if base in reached:
            continue
        reached.add(base)
        queue = [base]
        while queue:
            v = queue.pop(0)
            for w, e in neighbors[v]:
                if w not in reached:
                    reached.add(w)
                    tree.add(e)
                    queue.append(w)
    free = [e for e in sorted(edges, key=repr) if e not in tree]
    free_set = set(free)

    def word(path):
        return tuple((e, 1) for e in path if e in free_set)

    relators = {uf.find(v): [] for v in verts}
    for left, right in pairs:
        probe = left or right
        if not probe:
            continue
        comp = comp_of[edges[probe[0]][0]]
        w = free_reduce(word(left) + invert_word(word(right)))
        if w:
            relators[comp].append(w)
    out = []
    for base in sorted(relators, key=repr):
        gens = [e for e in free if comp_of[edges[e][0]] == base]
        out.append(GroupPresentation(gens, relators[base], basepoint=base,
                                     check=False))
    return tuple(out), comp_of


def _category_presentations(C):
    idents = set(C.identity.values())
    edges = {a: (C.src[a], C.tgt[a]) for a in C.src if a not in idents}
    pairs = []
    for (g, f), h in sorted(C.compose.items(), key=repr):
        if g in idents or f in idents:
            continue
        pairs.append(((f, g), (h,) if h not in idents else ()))
    return _graph_presentations(C.objects, edges, pairs)


def _precat_presentations(A):
    base = A.level(())
    degeneracy = A.act(enumerate_morphisms(1, (1,), ())[0])
    degenerate = {degeneracy[x] for x in base}
    edges = {e: A.vertices((1,), e) for e in A.level((1,))
             if e not in degenerate}
    pairs = []
    if A.bound >= 2:
        first = A.act(spine_map(1, 1, 2, ()))
        last = A.act(spine_map(1, 2, 2, ()))
        longe = A.act(long_edge_map(1, 2, ()))
        for s in A.level((2,)):
            left = tuple(e for e in (first[s], last[s]) if e in edges)
            right = (longe[s],) if longe[s] in edges else ()
            if left != right:
                pairs.append((left, right))
    return _graph_presentations(base, edges, pairs)


# ------------------------------------------------------------- localization

class LocalizationResult:
    """Either the finite localized category with its unit, or group
    presentations per component when the closure overflowed the cap."""

    def __init__(self, source, inverted, category=None, unit=None,
                 presentations=None, shadow=None, cap_hit=False):
        self.source = source
        self.inverted = inverted
        self.category = category
        self.unit = unit
        self.presentations = presentations
        self.shadow = shadow
        self.cap_hit = cap_hit

    @property
    def finite(self):
        return self.category is not None

    def __repr__(self):
        if self.finite:
            return "<localization %d objects %d arrows>" % (
                len(self.category.objects), len(self.category.src))
        return "<localization %s>" % "; ".join(p.simplify().text()
                                               for p in self.presentations)


def localize(C, S, cap=64):
    """Invert the arrows in S.

    Accepts a finite category or a 1-precat; a precat is first run through
    cat_generate with the same cap, naming S by 1-cells.  Total: on cap
    overflow the group presentation of the completion is returned instead
    of a finite category.
    """
    if hasattr(C, "level"):
        A = C
        if A.n != 1:
            raise IncompatibleProfiles("localization expects a 1-precat")
        try:
            gen = cat_generate(A, cap=cap)
        except CapExceeded:
            pres, _ = _precat_presentations(A)
            return LocalizationResult(A, tuple(sorted(S, key=repr)),
                                      presentations=pres, cap_hit=True)
        named = {gen.unit.component((1,))[e][0] for e in S}
        inner = localize(gen.category, named, cap=cap)
        if not inner.finite:
            pres, _ = _precat_presentations(A)
            return LocalizationResult(A, tuple(sorted(S, key=repr)),
                                      presentations=pres, cap_hit=True)
        return LocalizationResult(A, tuple(sorted(S, key=repr)),
                                  category=inner.category, unit=inner.unit)
    idents = set(C.identity.values())
    unknown = [s for s in S if s not in C.src]
    if unknown:
        raise FixtureError("cannot invert %r, not an arrow" % (unknown[0],))
    inverted = tuple(sorted(set(S), key=repr))
    engine = CompletionEngine(C.objects, cap=cap)
    handle = {}
    for x, e in C.identity.items():
        handle[e] = engine.identity(x)
    for a in sorted(C.src, key=repr):
        if a not in handle:
            handle[a] = engine.generator("%s" % (a,), C.src[a], C.tgt[a])
    for (g, f), h in sorted(C.compose.items(), key=repr):
        engine.compose_is(handle[g], handle[f], handle[h])
    for s in inverted:
        if s in idents:
            continue
        back = engine.generator("%s^-1" % (s,), C.tgt[s], C.src[s])
        engine.compose_is(back, handle[s], engine.identity(C.src[s]))
        engine.compose_is(handle[s], back, engine.identity(C.tgt[s]))
    try:
        engine.saturate()
    except CapExceeded:
        pres, _ = _category_presentations(C)
        return LocalizationResult(C, inverted, presentations=pres,
                                  cap_hit=True)
    cat, naming = engine.category(name="loc(%s)" % (C.name or "C"))
    unit = FinFunctor(C, cat, {x: x for x in C.objects},
                      {a: naming[handle[a]] for a in C.src})
    return LocalizationResult(C, inverted, category=cat, unit=unit)


def group_completion(X, cap=64):
    """Invert every arrow of the category generated by a finite 1-precat.

    The result carries an independently computed spanning tree presentation
    of the fundamental groupoid of the underlying cells in shadow, built
    without the completion engine, for cross checking.
    """
    if X.n != 1:
        raise IncompatibleProfiles("group completion expects a 1-precat")
    shadow, _ = _precat_presentations(X)
    try:
        gen = cat_generate(X, cap=cap)
    except CapExceeded:
        return LocalizationResult(X, "all", presentations=shadow,
                                  shadow=shadow, cap_hit=True)
    C = gen.category
    idents = set(C.identity.values())
    arrows = tuple(sorted((a for a in C.src if a not in idents), key=repr))
    inner = localize(C, arrows, cap=cap)
    if inner.finite:
        return LocalizationResult(X, arrows, category=inner.category,
                                  unit=inner.unit, shadow=shadow)
    return LocalizationResult(X, arrows, presentations=inner.presentations,
                              shadow=shadow, cap_hit=True)


def localization_universal_property(result, targets, budget=200000):
    """Exhaustive factorization through the unit against groupoid targets.

    Functors out of the localized category must correspond one to one with
    functors out of the source sending every inverted arrow to an
    isomorphism.
    """
    if not result.finite:
        raise FixtureError("universal property needs the finite form")
    C, L, u = result.source, result.category, result.unit
    verdicts = []
    for G in targets:
        if any(not G.is_iso(a) for a in G.src):
            raise FixtureError("target %r is not a groupoid" % (G.name,))
        composites = {}
        for F in functors_between(L, G, budget=budget):
            key = F.after(u).key()
            composites[key] = composites.get(key, 0) + 1
        inverting = [F for F in functors_between(C, G, budget=budget)
                     if all(G.is_iso(F.on_arrow(s)) for s in result.inverted)]
        collision = any(n > 1 for n in composites.values())
        missed = [F for F in inverting if F.key() not in composites]
        extra = len(composites) - (len(inverting) - len(missed))
        ok = not collision and not missed and extra == 0
        detail = None
        if not ok:
            detail = "factorization is not a bijection: %d through, %d inverting" % (
                len(composites), len(inverting))
        verdicts.append((G.name or "target", ok, detail))
    return HarnessReport(verdicts)


def iso_correspondence(C, budget=200000):
    """Functors from the walking isomorphism against the isomorphisms of C."""
    functors = functors_between(cat_iso_interval(), C, budget=budget)
    images = sorted((F.on_arrow("u") for F in functors), key=repr)
    isos = sorted((a for a in C.src if C.is_iso(a)), key=repr)
    return images == isos, tuple(isos)


# --------------------------------------------------- pushout compatibility

class GcPushoutReport:
    """Per-component free ranks from completing before and after gluing."""

    def __init__(self, entries, direct_components, split_components):
        self.entries = tuple(entries)
        self.direct_components = direct_components
        self.split_components = split_components

    @property
    def ok(self):
        bases = [b for b, _, _ in self.entries]
        return (self.direct_components == self.split_components
                and len(set(bases)) == len(bases) == self.direct_components
                and all(d == s for _, d, s in self.entries))

    def __repr__(self):
        body = ", ".join("%r:%d=%d" % e for e in self.entries)
        return "<gc pushout %s %s>" % ("ok" if self.ok else "MISMATCH", body)


def _require_free(pres):
    reduced = pres.simplify()
    if not reduced.is_free():
        raise UndecidableFixture("presentation is not visibly free: %s"
                                 % reduced.text())
    return reduced


def _is_discrete(A):
    base = A.level(())
    for p in range(1, A.bound + 1):
        cells = A.level((p,))
        if len(cells) != len(base):
            return False
        table = A.act(enumerate_morphisms(1, (p,), ())[0])
        if set(table.values()) != set(cells):
            return False
    return True


def gc_pushout_compare(f, g, cap=64):
    """Group completion of a gluing against the gluing of completions.

    The gluing object must be discrete and both legs cofibrations; outside
    that class the comparison is refused.  Both sides are reduced to free
    ranks per component, so agreement is decidable.
    """
    A = f.source
    if A.n != 1:
        raise IncompatibleProfiles("pushout comparison expects 1-precats")
    if not _is_discrete(A):
        raise UndecidableFixture("the gluing object must be discrete")
    if not (is_cofibration(f)[0] and is_cofibration(g)[0]):
        raise UndecidableFixture("both legs must be cofibrations")
    po, i1, i2 = pushout(f, g)
    direct, comp_po = _precat_presentations(po)
    by_direct = {p.basepoint: p for p in direct}
    presB, compB = _precat_presentations(f.target)
    presC, compC = _precat_presentations(g.target)
    by_side = {("B", p.basepoint): p for p in presB}
    by_side.update({("C", p.basepoint): p for p in presC})
    points = sorted(A.level(()), key=repr)
    nodes = sorted(by_side, key=repr) + [("A", a) for a in points]
    uf = _UnionFind(nodes)
    glue_edges = []
    fv, gv = f.component(()), g.component(())
    for a in points:
        for node in ((("B", compB[fv[a]])), (("C", compC[gv[a]]))):
            glue_edges.append((("A", a), node))
            uf.union(("A", a), node)
    merged = {}
    for node in nodes:
        merged.setdefault(uf.find(node), []).append(node)
    entries = []
    for root in sorted(merged, key=repr):
        members = merged[root]
        rank = 0
        for node in members:
            if node in by_side:
                rank += len(_require_free(by_side[node]).generators)
        inside = sum(1 for a, b in glue_edges if uf.find(a) == root)
        rank += inside - (len(members) - 1)
        first = sorted(members, key=repr)[0]
        if first[0] == "A":
            anchor = i1.component(())[fv[first[1]]]
        elif first[0] == "B":
            anchor = i1.component(())[first[1]]
        else:
            anchor = i2.component(())[first[1]]
        base = comp_po[anchor]
        entries.append((base, len(_require_free(by_direct[base]).generators),
                        rank))
    return GcPushoutReport(entries, len(direct), len(merged))
