"""Finite presheaves on the shape category and the maps between them.

A precat stores one finite level set per canonical profile inside a degree
bound, together with the contravariant action of every shape morphism
between bounded profiles.  Constructions stay inside the bound and raise
BoundExceeded instead of silently truncating.
"""

from itertools import product as cartesian

from .cardinal import Cardinal, OMEGA
from .errors import BoundExceeded, BudgetExceeded, FixtureError, IncompatibleProfiles
from .theta_core import (
    canonical_profile,
    enumerate_morphisms,
    identity_morphism,
    inner_map,
    pad,
    profile_str,
    profiles_within,
    truncate_morphism,
    vertex_morphisms,
)


def _ekey(elem):
    # deterministic element order without assuming a common element type
    return repr(elem)


class Precat:
    """Presheaf on the shape category, stored levelwise inside a bound.

    `levels` maps canonical profiles to element tuples; `action` maps a shape
    morphism f: M -> M' to a dict sending each element of the level at M' to
    an element of the level at M.  Action tables are memoized on first use and
    checked to be total with values in the right level.
    """

    def __init__(self, n, bound, levels, action, strict_bounded=False, name=None):
        self.n = n
        self.bound = bound
        self.strict_bounded = strict_bounded
        self.name = name
        stored = {}
        for prof, elems in levels.items():
            prof = canonical_profile(prof)
            self._check_profile(prof)
            elems = tuple(elems)
            if len(set(elems)) != len(elems):
                raise FixtureError("duplicate elements at level %s" % profile_str(prof))
            stored[prof] = elems
        self.levels = stored
        self._action = action
        self._acts = {}

    def _check_profile(self, prof):
        if len(prof) > self.n:
            raise IncompatibleProfiles(
                "profile %s does not live in dimension %d" % (profile_str(prof), self.n))
        if any(v > self.bound for v in prof):
            raise BoundExceeded(
                "profile %s exceeds degree bound %d" % (profile_str(prof), self.bound))

    def profiles(self):
        return profiles_within(self.n, self.bound)

    def level(self, prof):
        prof = canonical_profile(prof)
        self._check_profile(prof)
        if prof in self.levels:
            return self.levels[prof]
        if self.strict_bounded:
            return ()
        raise FixtureError(
            "level %s absent and presheaf is not strict_bounded" % profile_str(prof))

    def act(self, f):
        """Memoized action table of a shape morphism, level(target) -> level(source)."""
        if f.n != self.n:
            raise IncompatibleProfiles("morphism of dimension %d in a %d-precat" % (f.n, self.n))
        if f in self._acts:
            return self._acts[f]
        table = self._action(f)
        src = set(self.level(f.source))
        if set(table) != set(self.level(f.target)) or any(v not in src for v in table.values()):
            raise FixtureError("action of %r is not a function between the levels" % f)
        self._acts[f] = table
        return table

    def apply(self, f, elem):
        return self.act(f)[elem]

    def vertices(self, prof, elem):
        """Endpoint objects of an element, one per vertex of the first coordinate."""
        prof = canonical_profile(prof)
        if prof == ():
            return (elem,)
        return tuple(self.apply(v, elem) for v in vertex_morphisms(self.n, prof))

    def size(self):
        return sum(len(self.level(p)) for p in self.profiles())

    def is_empty(self):
        return self.size() == 0

    def validate(self):
        """Check identity and composition laws exhaustively inside the bound."""
        profs = self.profiles()
        for prof in profs:
            table = self.act(identity_morphism(self.n, prof))
            for e in self.level(prof):
                if table[e] != e:
                    raise FixtureError("identity acts nontrivially on %r at %s" % (e, prof))
        for mid in profs:
            for src in profs:
                for f in enumerate_morphisms(self.n, src, mid):
                    tf = self.act(f)
                    for tgt in profs:
                        for g in enumerate_morphisms(self.n, mid, tgt):
                            tg = self.act(g)
                            tgf = self.act(g.after(f))
                            for e in self.level(tgt):
                                if tgf[e] != tf[tg[e]]:
                                    raise FixtureError(
                                        "functoriality fails on %r for %r after %r" % (e, g, f))
        return True

    def __repr__(self):
        label = self.name or "precat"
        return "<%s n=%d D=%d size=%d>" % (label, self.n, self.bound, self.size())


class SlicePrecat(Precat):
    """Levels of the parent at profiles with a fixed positive first entry."""

    def __init__(self, parent, p):
        if parent.n < 1:
            raise IncompatibleProfiles("a 0-precat has no slices")
        if not (1 <= p <= parent.bound):
            raise BoundExceeded("slice index %d outside degree bound %d" % (p, parent.bound))
        levels = {q: parent.level((p,) + q) for q in profiles_within(parent.n - 1, parent.bound)}

        def action(v):
            return parent.act(inner_map(parent.n, p, v))

        super().__init__(parent.n - 1, parent.bound, levels, action,
                         strict_bounded=parent.strict_bounded,
                         name="%s_{%d/}" % (parent.name or "A", p))
        self.parent = parent
        self.p = p


class HomFiber(Precat):
    """Part of a slice lying over a fixed tuple of endpoint objects."""

    def __init__(self, parent, objects):
        objects = tuple(objects)
        if len(objects) < 2:
            raise FixtureError("a hom fiber needs at least two endpoint objects")
        p = len(objects) - 1
        if parent.n < 1:
            raise IncompatibleProfiles("a 0-precat has no hom fibers")
        if p > parent.bound:
            raise BoundExceeded("fiber over %d objects outside bound %d" % (p + 1, parent.bound))
        levels = {}
        for q in profiles_within(parent.n - 1, parent.bound):
            full = (p,) + q
            levels[q] = tuple(e for e in parent.level(full)
                              if parent.vertices(full, e) == objects)

        def action(v):
            table = parent.act(inner_map(parent.n, p, v))
            return {e: table[e] for e in levels[canonical_profile(v.target)]}

        super().__init__(parent.n - 1, parent.bound, levels, action,
                         strict_bounded=parent.strict_bounded,
                         name="%s(%s)" % (parent.name or "A", ",".join(map(str, objects))))
        self.parent = parent
        self.objects = objects


def hom_fiber(parent, x, y):
    """The (n-1)-precat of maps from x to y inside an n-precat."""
    return HomFiber(parent, (x, y))


class PrecatMap:
    """Levelwise function between two precats of the same dimension and bound."""

    def __init__(self, source, target, components, check=True):
        if (source.n, source.bound) != (target.n, target.bound):
            raise IncompatibleProfiles("map between presheaves of different shape")
        self.source = source
        self.target = target
        comps = {}
        for prof in source.profiles():
            table = dict(components.get(prof, ()))
            if check:
                if set(table) != set(source.level(prof)):
                    raise FixtureError("component at %s is not defined on the whole level"
                                       % profile_str(prof))
                codomain = set(target.level(prof))
                if any(v not in codomain for v in table.values()):
                    raise FixtureError("component at %s leaves the target level"
                                       % profile_str(prof))
            comps[prof] = table
        self.components = comps

    @staticmethod
    def identity(precat):
        return PrecatMap(precat, precat,
                         {p: {e: e for e in precat.level(p)} for p in precat.profiles()},
                         check=False)

    def component(self, prof):
        return self.components[canonical_profile(prof)]

    def apply(self, prof, elem):
        return self.component(prof)[elem]

    def after(self, other):
        """Composite self of other, defined when other.target is self.source."""
        if other.target is not self.source and other.target.levels != self.source.levels:
            raise IncompatibleProfiles("composition endpoints do not match")
        comps = {p: {e: self.components[p][v] for e, v in other.components[p].items()}
                 for p in self.components}
        return PrecatMap(other.source, self.target, comps, check=False)

    def validate(self):
        """Check every naturality square inside the bound."""
        profs = self.source.profiles()
        for src in profs:
            for tgt in profs:
                for f in enumerate_morphisms(self.source.n, src, tgt):
                    sa = self.source.act(f)
                    ta = self.target.act(f)
                    for e in self.source.level(tgt):
                        if self.components[src][sa[e]] != ta[self.components[tgt][e]]:
                            raise FixtureError("naturality fails at %r for element %r" % (f, e))
        return True

    def is_injective_at(self, prof):
        table = self.component(prof)
        return len(set(table.values())) == len(table)

    def is_isomorphism(self):
        # bijective components suffice, the inverse is then automatically natural
        return all(self.is_injective_at(p)
                   and len(self.components[p]) == len(self.target.level(p))
                   for p in self.source.profiles())

    def key(self):
        return tuple((p, tuple(sorted(self.components[p].items(), key=lambda kv: _ekey(kv[0]))))
                     for p in self.source.profiles())

    def digest(self):
        import hashlib
        return hashlib.sha1(repr(self.key()).encode()).hexdigest()[:10]

    def __eq__(self, other):
        if not isinstance(other, PrecatMap):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "<map %s>" % self.digest()


# ------------------------------------------------------------- constructors

def terminal(n, bound):
    """The presheaf with a single element at every level."""
    levels = {p: ("*",) for p in profiles_within(n, bound)}
    return Precat(n, bound, levels, lambda f: {"*": "*"}, name="pt")


def empty_precat(n, bound):
    levels = {p: () for p in profiles_within(n, bound)}
    return Precat(n, bound, levels, lambda f: {}, name="empty")


def discrete(n, bound, names):
    """The constant presheaf on a finite set of objects."""
    names = tuple(names)
    levels = {p: names for p in profiles_within(n, bound)}
    return Precat(n, bound, levels, lambda f: {e: e for e in names},
                  name="disc(%d)" % len(names))


def representable(n, shape, bound):
    """The presheaf represented by a shape object: levels are hom sets into it."""
    shape = canonical_profile(shape)
    if len(shape) > n or any(v > bound for v in shape):
        raise BoundExceeded("representing object %s outside bound %d" % (shape, bound))
    levels = {p: enumerate_morphisms(n, p, shape) for p in profiles_within(n, bound)}

    def action(f):
        # precomposition: u at the target level pulls back to u after f
        return {u: u.after(f) for u in levels[canonical_profile(f.target)]}

    return Precat(n, bound, levels, action, name="h(%s)" % profile_str(shape))


def representable_map(f, bound):
    """Covariant functoriality of representables: f: M -> M' gives h(M) -> h(M')."""
    src = representable(f.n, f.source, bound)
    tgt = representable(f.n, f.target, bound)
    comps = {p: {u: f.after(u) for u in src.level(p)} for p in src.profiles()}
    return PrecatMap(src, tgt, comps, check=False)


def interval(bound):
    """Nerve of the one-arrow category on objects 0, 1 as a 1-precat.

    The level at (p) is the set of monotone 0/1 strings of length p+1, the
    action reindexes a string along the first coordinate of the morphism.
    """
    return _binary_nerve(bound, monotone=True, name="I")


def iso_interval(bound):
    """Nerve of the two-object groupoid with one isomorphism between them."""
    return _binary_nerve(bound, monotone=False, name="Ibar")


def _binary_nerve(bound, monotone, name):
    levels = {(): ("0", "1")}
    for p in range(1, bound + 1):
        words = ["".join(w) for w in cartesian("01", repeat=p + 1)]
        if monotone:
            words = [w for w in words if all(a <= b for a, b in zip(w, w[1:]))]
        levels[(p,)] = tuple(sorted(words))

    def action(f):
        u = f.components[0]
        return {w: "".join(w[u(i)] for i in range(u.source + 1))
                for w in levels[canonical_profile(f.target)]}

    return Precat(1, bound, levels, action, name=name)


# -------------------------------------------------------------- combinators

def _same_shape(A, B):
    if (A.n, A.bound) != (B.n, B.bound):
        raise IncompatibleProfiles("presheaves of different dimension or bound")


def product(A, B):
    """Levelwise product with its two projections."""
    _same_shape(A, B)
    levels = {p: tuple(cartesian(A.level(p), B.level(p))) for p in A.profiles()}

    def action(f):
        ta, tb = A.act(f), B.act(f)
        return {(a, b): (ta[a], tb[b]) for a, b in levels[canonical_profile(f.target)]}

    prod = Precat(A.n, A.bound, levels, action,
                  name="(%s x %s)" % (A.name or "A", B.name or "B"))
    p1 = PrecatMap(prod, A, {p: {ab: ab[0] for ab in levels[p]} for p in levels}, check=False)
    p2 = PrecatMap(prod, B, {p: {ab: ab[1] for ab in levels[p]} for p in levels}, check=False)
    return prod, p1, p2


def fiber_product(f, g):
    """Levelwise fiber product of f: A -> C and g: B -> C with its projections."""
    A, B = f.source, g.source
    _same_shape(A, B)
    levels = {p: tuple((a, b) for a, b in cartesian(A.level(p), B.level(p))
                       if f.apply(p, a) == g.apply(p, b))
              for p in A.profiles()}

    def action(u):
        ta, tb = A.act(u), B.act(u)
        return {(a, b): (ta[a], tb[b]) for a, b in levels[canonical_profile(u.target)]}

    fp = Precat(A.n, A.bound, levels, action,
                name="(%s x_C %s)" % (A.name or "A", B.name or "B"))
    p1 = PrecatMap(fp, A, {p: {ab: ab[0] for ab in levels[p]} for p in levels}, check=False)
    p2 = PrecatMap(fp, B, {p: {ab: ab[1] for ab in levels[p]} for p in levels}, check=False)
    return fp, p1, p2


def pushout(f, g):
    """Levelwise pushout of f: A -> B and g: A -> C with its two injections.

    Elements are tagged pairs ("L", b) or ("R", c); each glued class is named
    by its least member in (tag, repr) order so output is deterministic.
    """
    A = f.source
    if g.source is not A and g.source.levels != A.levels:
        raise IncompatibleProfiles("pushout legs must share their source")
    B, C = f.target, g.target
    _same_shape(B, C)

    reps = {}
    levels = {}
    for prof in B.profiles():
        items = [("L", b) for b in B.level(prof)] + [("R", c) for c in C.level(prof)]
        parent = {it: it for it in items}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in A.level(prof):
            x, y = find(("L", f.apply(prof, a))), find(("R", g.apply(prof, a)))
            if x != y:
                parent[x] = y
        classes = {}
        for it in items:
            classes.setdefault(find(it), []).append(it)
        naming = {}
        for members in classes.values():
            rep = min(members, key=lambda t: (t[0], _ekey(t[1])))
            for member in members:
                naming[member] = rep
        reps[prof] = naming
        levels[prof] = tuple(sorted(set(naming.values()), key=lambda t: (t[0], _ekey(t[1]))))

    def action(u):
        src = canonical_profile(u.source)
        out = {}
        for tag, x in levels[canonical_profile(u.target)]:
            side = B if tag == "L" else C
            out[(tag, x)] = reps[src][(tag, side.apply(u, x))]
        return out

    po = Precat(B.n, B.bound, levels, action,
                name="(%s +_A %s)" % (B.name or "B", C.name or "C"))
    i1 = PrecatMap(B, po, {p: {b: reps[p][("L", b)] for b in B.level(p)} for p in reps},
                   check=False)
    i2 = PrecatMap(C, po, {p: {c: reps[p][("R", c)] for c in C.level(p)} for p in reps},
                   check=False)
    return po, i1, i2


def is_cofibration(f):
    """Injectivity below the top dimension; returns (flag, first failing level)."""
    for prof in f.source.profiles():
        if len(prof) < f.source.n and not f.is_injective_at(prof):
            return False, prof
    return True, None


def inflate(A, n):
    """Pull a presheaf back along coordinate truncation into a higher dimension."""
    m = A.n
    if n < m:
        raise IncompatibleProfiles("cannot inflate from dimension %d to %d" % (m, n))

    def down(prof):
        return canonical_profile(pad(prof, n)[:m])

    levels = {p: A.level(down(p)) for p in profiles_within(n, A.bound)}

    def action(f):
        return A.act(truncate_morphism(f, m))

    return Precat(n, A.bound, levels, action, strict_bounded=A.strict_bounded,
                  name=A.name)


def precardinality(A):
    """Total size as a cardinal plus the largest bounded level as a finite diagnostic.

    A nonempty presheaf has infinitely many levels over the whole shape
    category, so the honest total is omega; the diagnostic reports the sup of
    the level sizes actually stored.
    """
    if A.is_empty():
        return Cardinal(0), 0
    return OMEGA, max(len(A.level(p)) for p in A.profiles())


# --------------------------------------------------------- map enumeration

def enumerate_maps(A, B, budget=500000, limit=None):
    """All natural maps A -> B inside the bound, in a deterministic order.

    Levels are filled in the profile order of profiles_within; images forced
    by morphisms out of already filled levels are placed first, remaining
    elements are assigned by backtracking filtered against morphisms into
    filled levels, then same-level naturality is checked.  `budget` caps the
    number of candidate placements tried.
    """
    _same_shape(A, B)
    n = A.n
    profs = list(A.profiles())
    index = {p: i for i, p in enumerate(profs)}
    ident = {p: identity_morphism(n, p) for p in profs}

    from_earlier = {p: [] for p in profs}   # morphisms p -> earlier, force images at p
    into_earlier = {p: [] for p in profs}   # morphisms earlier -> p, filter candidates at p
    endos = {p: [u for u in enumerate_morphisms(n, p, p) if u != ident[p]] for p in profs}
    for p in profs:
        for q in profs:
            if index[q] < index[p]:
                from_earlier[p].extend((q, u) for u in enumerate_morphisms(n, p, q))
                into_earlier[p].extend((q, u) for u in enumerate_morphisms(n, q, p))

    assign = {p: {} for p in profs}
    found = []
    spent = [0]

    def fill_level(i):
        if i == len(profs):
            comps = {p: dict(assign[p]) for p in profs}
            found.append(PrecatMap(A, B, comps, check=False))
            return limit is not None and len(found) >= limit
        prof = profs[i]
        cur = assign[prof]
        cur.clear()
        forced = {}
        for q, u in from_earlier[prof]:
            au, bu = A.act(u), B.act(u)
            for m in A.level(q):
                a, want = au[m], bu[assign[q][m]]
                if forced.setdefault(a, want) != want:
                    return False
        free = [a for a in A.level(prof) if a not in forced]
        cur.update(forced)

        def viable(a, b):
            for q, u in into_earlier[prof]:
                if assign[q][A.act(u)[a]] != B.act(u)[b]:
                    return False
            return True

        def place(j):
            spent[0] += 1
            if spent[0] > budget:
                raise BudgetExceeded(budget, "enumerating maps %s -> %s"
                                     % (A.name or "A", B.name or "B"))
            if j == len(free):
                for u in endos[prof]:
                    au, bu = A.act(u), B.act(u)
                    if any(cur[au[a]] != bu[cur[a]] for a in A.level(prof)):
                        return False
                return fill_level(i + 1)
            a = free[j]
            for b in B.level(prof):
                if viable(a, b):
                    cur[a] = b
                    if place(j + 1):
                        return True
                    del cur[a]
            return False

        return place(0)

    fill_level(0)
    return found


def count_maps(A, B, budget=500000):
    return len(enumerate_maps(A, B, budget=budget))


def find_isomorphism(A, B, budget=500000):
    """An invertible map A -> B if one exists inside the bound, else None."""
    if any(len(A.level(p)) != len(B.level(p)) for p in A.profiles()):
        return None
    for f in enumerate_maps(A, B, budget=budget):
        if f.is_isomorphism():
            return f
    return None


# ------------------------------------------------------------ internal hom

def internal_hom_bounded(A, B, shape, budget=500000):
    """The level of the internal hom at one shape: maps A x h(shape) -> B."""
    shape = canonical_profile(shape)
    if len(shape) > A.n or any(v > A.bound for v in shape):
        raise BoundExceeded("internal hom level %s outside bound %d" % (shape, A.bound))
    prod, _, _ = product(A, representable(A.n, shape, A.bound))
    return enumerate_maps(prod, B, budget=budget)


def internal_hom(A, B, budget=500000):
    """The internal hom presheaf, with action by precomposition on the shape leg."""
    _same_shape(A, B)
    prods = {p: product(A, representable(A.n, p, A.bound))[0] for p in A.profiles()}
    levels = {p: tuple(enumerate_maps(prods[p], B, budget=budget)) for p in A.profiles()}

    def action(f):
        src, tgt = canonical_profile(f.source), canonical_profile(f.target)
        out = {}
        for phi in levels[tgt]:
            comps = {}
            for prof in prods[src].profiles():
                table = phi.component(prof)
                comps[prof] = {(a, u): table[(a, f.after(u))]
                               for a, u in prods[src].level(prof)}
            out[phi] = PrecatMap(prods[src], B, comps, check=False)
        return out

    return Precat(A.n, A.bound, levels, action,
                  name="hom(%s,%s)" % (A.name or "A", B.name or "B"))
