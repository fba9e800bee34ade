"""Finite 1-categories: nerves, Segal reconstruction, generated categories,
functor categories, equivalences and isofibrations.

Everything here is exhaustively finite.  The completion engine turns a
presentation (generators plus composition equations) into an honest category
by breadth-first creation of missing composites with eager deduction, and a
per-hom cap turns runaway closures into CapExceeded instead of divergence.
"""

from itertools import product as cartesian

from .errors import (
    BudgetExceeded,
    CapExceeded,
    FixtureError,
    IncompatibleProfiles,
    NotSegal,
)
from .presheaf_engine import Precat, PrecatMap
from .theta_core import (
    canonical_profile,
    enumerate_morphisms,
    long_edge_map,
    spine_map,
)


class FinCategory:
    """Finite category with named arrows and an explicit composition table.

    homs maps object pairs to arrow name tuples, compose maps (g, f) with
    f: x -> y and g: y -> z to the name of g after f.  Identities are inferred
    from the table; every object must have exactly one.
    """

    def __init__(self, objects, homs, compose, name=None, check=True):
        self.objects = tuple(objects)
        self.name = name
        self.homs = {}
        self.src = {}
        self.tgt = {}
        for (x, y), arrows in homs.items():
            arrows = tuple(arrows)
            for a in arrows:
                if a in self.src:
                    raise FixtureError("arrow name %r used twice" % (a,))
                self.src[a] = x
                self.tgt[a] = y
            self.homs[(x, y)] = arrows
        for x in self.objects:
            for y in self.objects:
                self.homs.setdefault((x, y), ())
        self.compose = dict(compose)
        if check:
            self._check_table()
        self.identity = self._infer_identities()

    def _check_table(self):
        for (g, f), h in self.compose.items():
            if f not in self.src or g not in self.src or h not in self.src:
                raise FixtureError("composition names unknown arrow %r" % ((g, f, h),))
            if self.tgt[f] != self.src[g]:
                raise FixtureError("pair (%r, %r) is not composable" % (g, f))
            if (self.src[h], self.tgt[h]) != (self.src[f], self.tgt[g]):
                raise FixtureError("composite %r has wrong endpoints" % (h,))
        for f in self.src:
            for g in self.src:
                if self.tgt[f] == self.src[g] and (g, f) not in self.compose:
                    raise FixtureError("composition table misses pair (%r, %r)" % (g, f))

    def _infer_identities(self):
        found = {}
        for x in self.objects:
            for e in self.homs[(x, x)]:
                if all(self.compose[(e, f)] == f
                       for f in self.src if self.tgt[f] == x) and \
                   all(self.compose[(g, e)] == g
                       for g in self.src if self.src[g] == x):
                    if x in found:
                        raise FixtureError("two identities at %r" % (x,))
                    found[x] = e
            if x not in found:
                raise FixtureError("no identity at %r" % (x,))
        return found

    def arrows(self):
        return tuple(self.src)

    def hom(self, x, y):
        return self.homs[(x, y)]

    def compose2(self, g, f):
        return self.compose[(g, f)]

    def validate(self):
        """Exhaustive associativity; identities were already forced on build."""
        for f in self.src:
            for g in self.src:
                if self.tgt[f] != self.src[g]:
                    continue
                gf = self.compose[(g, f)]
                for h in self.src:
                    if self.tgt[g] != self.src[h]:
                        continue
                    if self.compose[(h, gf)] != self.compose[(self.compose[(h, g)], f)]:
                        raise FixtureError(
                            "associativity fails on (%r, %r, %r)" % (h, g, f))
        return True

    def inverse(self, a):
        """The two-sided inverse arrow, or None."""
        x, y = self.src[a], self.tgt[a]
        for b in self.homs[(y, x)]:
            if self.compose[(b, a)] == self.identity[x] and \
               self.compose[(a, b)] == self.identity[y]:
                return b
        return None

    def is_iso(self, a):
        return self.inverse(a) is not None

    def isos(self, x, y):
        return tuple(a for a in self.homs[(x, y)] if self.is_iso(a))

    def iso_classes(self):
        """Objects partitioned by the existence of an isomorphism."""
        classes = []
        seen = set()
        for x in self.objects:
            if x in seen:
                continue
            cls = [y for y in self.objects if y == x or self.isos(x, y)]
            seen.update(cls)
            classes.append(tuple(cls))
        return tuple(classes)

    def __repr__(self):
        return "<category %s: %d objects, %d arrows>" % (
            self.name or "?", len(self.objects), len(self.src))


class FinFunctor:
    """Functor between finite categories, checked on the full tables."""

    def __init__(self, source, target, obj_map, arrow_map, check=True):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.arrow_map = dict(arrow_map)
        if check:
            self._check()

    def _check(self):
        C, D = self.source, self.target
        if set(self.obj_map) != set(C.objects):
            raise FixtureError("object map not total")
        if set(self.arrow_map) != set(C.src):
            raise FixtureError("arrow map not total")
        for a, b in self.arrow_map.items():
            if (D.src[b], D.tgt[b]) != (self.obj_map[C.src[a]], self.obj_map[C.tgt[a]]):
                raise FixtureError("arrow %r lands between wrong objects" % (a,))
        for x, e in C.identity.items():
            if self.arrow_map[e] != D.identity[self.obj_map[x]]:
                raise FixtureError("identity at %r not preserved" % (x,))
        for (g, f), h in C.compose.items():
            if D.compose[(self.arrow_map[g], self.arrow_map[f])] != self.arrow_map[h]:
                raise FixtureError("composition not preserved on (%r, %r)" % (g, f))

    @staticmethod
    def identity(C):
        return FinFunctor(C, C, {x: x for x in C.objects},
                          {a: a for a in C.src}, check=False)

    def on_obj(self, x):
        return self.obj_map[x]

    def on_arrow(self, a):
        return self.arrow_map[a]

    def after(self, other):
        return FinFunctor(other.source, self.target,
                          {x: self.obj_map[v] for x, v in other.obj_map.items()},
                          {a: self.arrow_map[v] for a, v in other.arrow_map.items()},
                          check=False)

    def key(self):
        return (tuple(sorted(self.obj_map.items(), key=repr)),
                tuple(sorted(self.arrow_map.items(), key=repr)))

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


# -------------------------------------------------------- standard fixtures

def cat_point():
    return FinCategory(("x",), {("x", "x"): ("1x",)}, {("1x", "1x"): "1x"}, name="pt")


def cat_discrete(names):
    homs = {(x, x): ("1" + str(x),) for x in names}
    comp = {("1" + str(x), "1" + str(x)): "1" + str(x) for x in names}
    return FinCategory(tuple(names), homs, comp, name="disc")


def cat_chain(m):
    """The linear order 0 < 1 < ... < m."""
    objects = tuple(str(v) for v in range(m + 1))
    homs = {}
    for x in range(m + 1):
        for y in range(x, m + 1):
            homs[(str(x), str(y))] = ("c%d%d" % (x, y),)
    comp = {}
    for x in range(m + 1):
        for y in range(x, m + 1):
            for z in range(y, m + 1):
                comp[("c%d%d" % (y, z), "c%d%d" % (x, y))] = "c%d%d" % (x, z)
    return FinCategory(objects, homs, comp, name="chain%d" % m)


def cat_interval():
    out = cat_chain(1)
    out.name = "I"
    return out


def cat_iso_interval():
    homs = {("0", "0"): ("i0",), ("0", "1"): ("u",),
            ("1", "0"): ("v",), ("1", "1"): ("i1",)}
    comp = {("i0", "i0"): "i0", ("u", "i0"): "u", ("i1", "u"): "u", ("v", "u"): "i0",
            ("i0", "v"): "v", ("u", "v"): "i1", ("i1", "i1"): "i1", ("v", "i1"): "v"}
    return FinCategory(("0", "1"), homs, comp, name="Ibar")


# -------------------------------------------------------------------- nerve

def nerve(C, bound):
    """The 1-precat of composable chains of C, up to the degree bound."""
    levels = {(): tuple(C.objects)}
    chains = {1: [(a,) for a in sorted(C.src, key=repr)]}
    for p in range(2, bound + 1):
        chains[p] = [c + (a,) for c in chains[p - 1]
                     for a in sorted(C.src, key=repr) if C.src[a] == C.tgt[c[-1]]]
    for p in range(1, bound + 1):
        levels[(p,)] = tuple(chains[p])

    def chain_vertex(elem, prof, j):
        if prof == ():
            return elem
        return C.src[elem[0]] if j == 0 else C.tgt[elem[j - 1]]

    def stretch(elem, prof, lo, hi):
        # composite of the chain segment (lo, hi], identity when empty
        if lo == hi:
            return C.identity[chain_vertex(elem, prof, lo)]
        out = elem[lo]
        for j in range(lo + 1, hi):
            out = C.compose[(elem[j], out)]
        return out

    def action(f):
        u = f.components[0]
        tgt = canonical_profile(f.target)
        src = canonical_profile(f.source)
        table = {}
        for elem in levels[tgt]:
            if src == ():
                table[elem] = chain_vertex(elem, tgt, u(0))
            else:
                table[elem] = tuple(stretch(elem, tgt, u(i - 1), u(i))
                                    for i in range(1, u.source + 1))
        return table

    return Precat(1, bound, levels, action, name="N(%s)" % (C.name or "C"))


# ------------------------------------------------------------ segal checks

def segal_spine_tables(A, p):
    return [A.act(spine_map(1, i, p, ())) for i in range(1, p + 1)]


def segal_reconstruct(A):
    """Rebuild a category from a 1-precat whose Segal maps are bijections.

    Checks bijectivity at p = 2, 3 inside the bound and raises NotSegal with
    the failing level and a witness tuple otherwise.
    """
    if A.n != 1:
        raise IncompatibleProfiles("reconstruction expects a 1-precat")
    objects = A.level(())
    ends = {e: A.vertices((1,), e) for e in A.level((1,))}
    preimage = {}
    for p in range(2, min(3, A.bound) + 1):
        tables = segal_spine_tables(A, p)
        seen = {}
        for cell in A.level((p,)):
            spine = tuple(t[cell] for t in tables)
            if spine in seen:
                raise NotSegal(p, witness=spine)
            seen[spine] = cell
        compatible = [(e,) for e in A.level((1,))]
        for _ in range(p - 1):
            compatible = [c + (e,) for c in compatible for e in A.level((1,))
                          if ends[c[-1]][1] == ends[e][0]]
        for spine in compatible:
            if spine not in seen:
                raise NotSegal(p, witness=spine)
        if p == 2:
            preimage = seen

    if A.bound < 2:
        raise FixtureError("reconstruction needs level 2 within the bound")
    homs = {}
    for e in A.level((1,)):
        homs.setdefault(ends[e], []).append(e)
    d1 = A.act(long_edge_map(1, 2, ()))
    table = {}
    for (f, g), cell in preimage.items():
        table[(g, f)] = d1[cell]
    try:
        return FinCategory(objects, homs, table, name=A.name)
    except FixtureError as exc:
        raise NotSegal(min(3, A.bound), witness=str(exc))


# -------------------------------------------------------- completion engine

class CompletionEngine:
    """Closure of a category presentation with a hom-set cap.

    Drive it with identity/generator handles, impose equations, then call
    saturate.  Missing composites are deduced from associativity whenever
    possible and created breadth first otherwise; a hom set growing past the
    cap raises CapExceeded.
    """

    def __init__(self, objects, cap=64):
        self.objects = tuple(objects)
        self.cap = cap
        self.parent = {}
        self.src = {}
        self.tgt = {}
        self.label = {}
        self._labels_used = set()
        self.comp = {}
        self.pending = []
        self.created = 0
        self.rounds = 0
        self.ident = {}
        for x in self.objects:
            self.ident[x] = self._new("1_%s" % (x,), x, x)

    def _new(self, label, x, y):
        while label in self._labels_used:
            label = label + "'"
        self._labels_used.add(label)
        i = len(self.parent)
        self.parent[i] = i
        self.src[i] = x
        self.tgt[i] = y
        self.label[i] = label
        return i

    def identity(self, x):
        return self.ident[x]

    def generator(self, label, x, y):
        return self._new(label, x, y)

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def equate(self, a, b):
        self.pending.append((a, b))

    def compose_is(self, g, f, h):
        g, f, h = self.find(g), self.find(f), self.find(h)
        old = self.comp.get((g, f))
        if old is None:
            self.comp[(g, f)] = h
        elif self.find(old) != h:
            self.pending.append((old, h))

    def _flush(self):
        moved = False
        while self.pending:
            a, b = self.pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            moved = True
        if not moved:
            return False
        table = {}
        for (g, f), h in self.comp.items():
            key = (self.find(g), self.find(f))
            h = self.find(h)
            old = table.get(key)
            if old is None:
                table[key] = h
            elif old != h:
                self.pending.append((old, h))
        self.comp = table
        if self.pending:
            self._flush()
        return True

    def reps(self):
        return sorted({self.find(a) for a in self.parent})

    def _deduce(self):
        changed = False
        for f in self.reps():
            self.compose_is(f, self.ident[self.src[f]], f)
            self.compose_is(self.ident[self.tgt[f]], f, f)
        by_first = {}
        by_second = {}
        for (g, f), h in list(self.comp.items()):
            by_first.setdefault(g, []).append((f, h))
            by_second.setdefault(f, []).append((g, h))
        for g in by_first:
            for f, gf in by_first[g]:
                for h, hg in by_second.get(g, ()):
                    left = self.comp.get((self.find(h), self.find(gf)))
                    right = self.comp.get((self.find(hg), self.find(f)))
                    if left is not None and right is not None:
                        if self.find(left) != self.find(right):
                            self.pending.append((left, right))
                            changed = True
                    elif left is not None:
                        self.compose_is(hg, f, left)
                        changed = True
                    elif right is not None:
                        self.compose_is(h, gf, right)
                        changed = True
        if self.pending:
            self._flush()
            changed = True
        return changed

    def _missing_pair(self):
        reps = self.reps()
        for f in reps:
            for g in reps:
                if self.tgt[f] == self.src[g] and (g, f) not in self.comp:
                    return g, f
        return None

    def _check_cap(self):
        counts = {}
        for a in self.reps():
            key = (self.src[a], self.tgt[a])
            counts[key] = counts.get(key, 0) + 1
            if counts[key] > self.cap:
                raise CapExceeded(self.cap, where=key)

    def saturate(self):
        self._flush()
        while True:
            self.rounds += 1
            if self._deduce():
                continue
            pair = self._missing_pair()
            if pair is None:
                return
            g, f = pair
            h = self._new("(%s.%s)" % (self.label[g], self.label[f]),
                          self.src[f], self.tgt[g])
            self.comp[(g, f)] = h
            self.created += 1
            self._check_cap()

    def category(self, name=None):
        """The finished category and the handle -> arrow-name dictionary."""
        reps = self.reps()
        homs = {}
        for a in reps:
            homs.setdefault((self.src[a], self.tgt[a]), []).append(self.label[a])
        table = {}
        for (g, f), h in self.comp.items():
            table[(self.label[self.find(g)], self.label[self.find(f)])] = \
                self.label[self.find(h)]
        cat = FinCategory(self.objects, homs, table, name=name)
        naming = {a: self.label[self.find(a)] for a in self.parent}
        return cat, naming


class CatGenResult:
    """Outcome of generating a category from a 1-precat."""

    def __init__(self, precat, category, unit, trace, cap_hit=False):
        self.precat = precat
        self.category = category
        self.unit = unit
        self.trace = trace
        self.cap_hit = cap_hit


def cat_generate(A, cap=64):
    """The category generated by the cells of a 1-precat.

    Objects are the 0-cells; nondegenerate 1-cells generate freely, each
    2-cell imposes long edge = last edge after first edge, and degenerate
    1-cells become identities.  Returns the category together with the
    canonical comparison map into its nerve.
    """
    if A.n != 1:
        raise IncompatibleProfiles("category generation expects a 1-precat")
    engine = CompletionEngine(A.level(()), cap=cap)
    degeneracy = A.act(enumerate_morphisms(1, (1,), ())[0])
    degenerate = {degeneracy[x]: x for x in A.level(())}
    handle = {}
    for e in A.level((1,)):
        if e in degenerate:
            handle[e] = engine.identity(degenerate[e])
        else:
            x, y = A.vertices((1,), e)
            handle[e] = engine.generator(str(e), x, y)
    relations = 0
    if A.bound >= 2:
        first = A.act(spine_map(1, 1, 2, ()))
        last = A.act(spine_map(1, 2, 2, ()))
        longe = A.act(long_edge_map(1, 2, ()))
        for sigma in A.level((2,)):
            engine.compose_is(handle[last[sigma]], handle[first[sigma]],
                              handle[longe[sigma]])
            relations += 1
    engine.saturate()
    category, naming = engine.category(name="Cat(%s)" % (A.name or "A"))
    trace = {
        "generators": sum(1 for e in A.level((1,)) if e not in degenerate),
        "relations": relations,
        "created": engine.created,
        "rounds": engine.rounds,
        "arrows": len(category.src),
    }
    unit = _unit_map(A, category, handle, naming)
    return CatGenResult(A, category, unit, trace)


def _unit_map(A, category, handle, naming):
    # send a p-cell to the chain of its spine edge images
    target = nerve(category, A.bound)
    comps = {(): {x: x for x in A.level(())}}
    for p in range(1, A.bound + 1):
        tables = segal_spine_tables(A, p)
        comps[(p,)] = {e: tuple(naming[handle[t[e]]] for t in tables)
                       for e in A.level((p,))}
    return PrecatMap(A, target, comps)


# --------------------------------------------------- functors and functor cats

def functors_between(C, D, budget=200000):
    """All functors C -> D by backtracking over arrow images."""
    arrows = sorted(C.src, key=repr)
    spent = [0]
    out = []

    def assign_arrows(obj_map):
        amap = {C.identity[x]: D.identity[obj_map[x]] for x in C.objects}
        free = [a for a in arrows if a not in amap]

        def place(i):
            spent[0] += 1
            if spent[0] > budget:
                raise BudgetExceeded(budget, "enumerating functors")
            if i == len(free):
                for (g, f), h in C.compose.items():
                    if D.compose[(amap[g], amap[f])] != amap[h]:
                        return
                out.append(FinFunctor(C, D, dict(obj_map), dict(amap), check=False))
                return
            a = free[i]
            for b in D.homs[(obj_map[C.src[a]], obj_map[C.tgt[a]])]:
                amap[a] = b
                ok = True
                for (g, f), h in C.compose.items():
                    if g in amap and f in amap and h in amap:
                        if D.compose[(amap[g], amap[f])] != amap[h]:
                            ok = False
                            break
                if ok:
                    place(i + 1)
                del amap[a]

        place(0)

    for values in cartesian(D.objects, repeat=len(C.objects)):
        assign_arrows(dict(zip(C.objects, values)))
    return out


def natural_transformations(F, G):
    """All natural transformations F -> G as component dictionaries."""
    C, D = F.source, F.target
    objs = list(C.objects)
    candidates = [D.homs[(F.on_obj(x), G.on_obj(x))] for x in objs]
    out = []
    for combo in cartesian(*candidates):
        eta = dict(zip(objs, combo))
        if all(D.compose[(eta[C.tgt[a]], F.on_arrow(a))] ==
               D.compose[(G.on_arrow(a), eta[C.src[a]])]
               for a in C.src):
            out.append(eta)
    return out


def functor_category(V, C, budget=200000):
    """Functors V -> C with natural transformations, as a finite category."""
    functors = functors_between(V, C, budget=budget)
    fnames = {f: "F%d" % i for i, f in enumerate(functors)}
    homs = {}
    tnames = {}
    for f in functors:
        for g in functors:
            cell = []
            for eta in natural_transformations(f, g):
                label = "t%s.%s.%d" % (fnames[f][1:], fnames[g][1:], len(cell))
                key = (fnames[f], fnames[g], tuple(sorted(eta.items(), key=repr)))
                tnames[key] = label
                cell.append((label, eta))
            homs[(fnames[f], fnames[g])] = cell
    compose = {}
    D = C
    for f in functors:
        for g in functors:
            for h in functors:
                for la, ea in homs[(fnames[f], fnames[g])]:
                    for lb, eb in homs[(fnames[g], fnames[h])]:
                        combo = {x: D.compose[(eb[x], ea[x])] for x in V.objects}
                        key = (fnames[f], fnames[h],
                               tuple(sorted(combo.items(), key=repr)))
                        compose[(lb, la)] = tnames[key]
    return FinCategory(tuple(fnames[f] for f in functors),
                       {k: tuple(l for l, _ in v) for k, v in homs.items()},
                       compose, name="[%s,%s]" % (V.name or "V", C.name or "C"))


# ----------------------------------------------------- equivalence checking

def equivalence_check(F):
    """Fully faithful and essentially surjective, on the full finite tables."""
    C, D = F.source, F.target
    for x in C.objects:
        for y in C.objects:
            images = [F.on_arrow(a) for a in C.homs[(x, y)]]
            hom = D.homs[(F.on_obj(x), F.on_obj(y))]
            if len(set(images)) != len(images) or set(images) != set(hom):
                return False
    hit = set(F.on_obj(x) for x in C.objects)
    for d in D.objects:
        if d not in hit and not any(D.isos(d, e) for e in hit):
            return False
    return True


def equivalence_search(C, D, budget=200000):
    """The first functor C -> D that is an equivalence, or None."""
    for F in functors_between(C, D, budget=budget):
        if equivalence_check(F):
            return F
    return None


def find_cat_isomorphism(C, D, budget=200000):
    """A functor bijective on objects and arrows, or None."""
    if len(C.objects) != len(D.objects) or len(C.src) != len(D.src):
        return None
    for F in functors_between(C, D, budget=budget):
        if len(set(F.obj_map.values())) == len(D.objects) and \
           len(set(F.arrow_map.values())) == len(D.src):
            return F
    return None


def is_isofibration(F):
    """Isomorphism lifting with prescribed target; returns (flag, witness)."""
    C, D = F.source, F.target
    for a in C.objects:
        for b in D.objects:
            for v in D.isos(F.on_obj(a), b):
                lifted = False
                for a2 in C.objects:
                    if F.on_obj(a2) != b:
                        continue
                    for w in C.isos(a, a2):
                        if F.on_arrow(w) == v:
                            lifted = True
                            break
                    if lifted:
                        break
                if not lifted:
                    return False, (a, v)
    return True, None


# -------------------------------------------------- pullback style builders

def strict_pullback(F, G):
    """The category of pairs agreeing strictly in the common target."""
    C, D = F.source, G.source
    objects = [(c, d) for c in C.objects for d in D.objects
               if F.on_obj(c) == G.on_obj(d)]
    homs = {}
    for (c, d) in objects:
        for (c2, d2) in objects:
            homs[((c, d), (c2, d2))] = tuple(
                (a, b) for a in C.homs[(c, c2)] for b in D.homs[(d, d2)]
                if F.on_arrow(a) == G.on_arrow(b))
    compose = {}
    for ((g1, g2), (f1, f2)) in cartesian(
            [ab for cell in homs.values() for ab in cell], repeat=2):
        if C.tgt[f1] == C.src[g1] and D.tgt[f2] == D.src[g2]:
            compose[((g1, g2), (f1, f2))] = (C.compose[(g1, f1)], D.compose[(g2, f2)])
    return FinCategory(tuple(objects), homs, compose, name="pullback")


def iso_comma(F, G):
    """Objects are pairs with a chosen isomorphism between their images."""
    C, D = F.source, G.source
    E = F.target
    objects = []
    for c in C.objects:
        for d in D.objects:
            for v in E.isos(F.on_obj(c), G.on_obj(d)):
                objects.append((c, d, v))
    homs = {}
    for (c, d, v) in objects:
        for (c2, d2, v2) in objects:
            # the chosen isomorphisms ride along in the arrow name, the same
            # underlying pair can be natural for several choices
            cell = []
            for a in C.homs[(c, c2)]:
                for b in D.homs[(d, d2)]:
                    if E.compose[(v2, F.on_arrow(a))] == E.compose[(G.on_arrow(b), v)]:
                        cell.append((a, b, v, v2))
            homs[((c, d, v), (c2, d2, v2))] = tuple(cell)
    compose = {}
    for src_obj in objects:
        for mid_obj in objects:
            for tgt_obj in objects:
                for f in homs[(src_obj, mid_obj)]:
                    for g in homs[(mid_obj, tgt_obj)]:
                        compose[(g, f)] = (C.compose[(g[0], f[0])],
                                           D.compose[(g[1], f[1])],
                                           f[2], g[3])
    return FinCategory(tuple(objects), homs, compose, name="isocomma")
