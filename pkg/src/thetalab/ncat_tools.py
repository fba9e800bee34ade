"""Recursive n-category machinery: the Segal condition, truncations,
equivalences, interior groupoids and cardinality.

Everything recurses through slices.  A slice A_{p/} of an n-precat is an
(n-1)-precat; the fiber of a slice over a tuple of endpoint objects is where
all hom reasoning happens.  Dimension 0 is the base case: a 0-precat is a
plain set, every set is a 0-category, equivalence means bijection.
"""

from itertools import product as cart

from .cardinal import Cardinal, OMEGA
from .cat_one import segal_reconstruct
from .errors import IncompatibleProfiles, SegalFails, SliceNotCategory
from .presheaf_engine import (
    HomFiber,
    Precat,
    PrecatMap,
    SlicePrecat,
    hom_fiber,
    product,
)
from .theta_core import (
    canonical_profile,
    enumerate_morphisms,
    inner_map,
    outer_map,
    spine_map,
)


class NCatWitness:
    """Certificate produced by a successful n-category check."""

    def __init__(self, precat, n_objects, segal, slices):
        self.precat = precat
        self.n_objects = n_objects
        self.segal = segal
        self.slices = slices

    def __bool__(self):
        return True

    def __repr__(self):
        return "<ncat witness: %d objects, segal %s>" % (
            self.n_objects, sorted(self.segal))


def _segal_fiber_map(A, xs):
    """The restriction of the Segal map over one tuple of endpoint objects."""
    p = len(xs) - 1
    F = HomFiber(A, xs)
    parts = [hom_fiber(A, xs[i - 1], xs[i]) for i in range(1, p + 1)]
    T = parts[0]
    for part in parts[1:]:
        T, _, _ = product(T, part)
    comps = {}
    for q in F.profiles():
        table = {}
        for e in F.level(q):
            edges = [A.apply(spine_map(A.n, i, p, q), e) for i in range(1, p + 1)]
            img = edges[0]
            for extra in edges[1:]:
                img = (img, extra)
            table[e] = img
        comps[q] = table
    return PrecatMap(F, T, comps)


def is_ncategory(A):
    """Certify A as an n-category or raise SliceNotCategory/SegalFails.

    Each slice must recursively be an (n-1)-category, then every Segal map
    must be an equivalence, checked fiberwise over endpoint tuples.
    """
    if A.n == 0:
        return NCatWitness(A, len(A.level(())), {}, {})
    slices = {}
    for p in range(1, A.bound + 1):
        try:
            slices[p] = is_ncategory(SlicePrecat(A, p))
        except (SliceNotCategory, SegalFails) as exc:
            raise SliceNotCategory(p, inner=exc)
    objects = A.level(())
    segal = {}
    for p in range(2, A.bound + 1):
        for xs in cart(objects, repeat=p + 1):
            if not ncat_equivalence(_segal_fiber_map(A, xs)):
                raise SegalFails(p, detail=xs)
        segal[p] = "equivalence"
    return NCatWitness(A, len(objects), segal, slices)


def _hom_restriction(f, xs, ys):
    """f squeezed to one hom fiber, as a map of (n-1)-precats."""
    F = HomFiber(f.source, xs)
    G = HomFiber(f.target, ys)
    p = len(xs) - 1
    comps = {q: {e: f.apply((p,) + q, e) for e in F.level(q)}
             for q in F.profiles()}
    return PrecatMap(F, G, comps)


def ncat_equivalence(f):
    """Fully faithful and essentially surjective, by recursion on dimension.

    Both ends must already be n-categories; dimension 0 means bijection.
    """
    A, B = f.source, f.target
    if A.n == 0:
        table = f.components[()]
        return len(A.level(())) == len(B.level(())) and \
            len(set(table.values())) == len(B.level(()))
    objects = A.level(())
    for x in objects:
        for y in objects:
            fx, fy = f.apply((), x), f.apply((), y)
            if not ncat_equivalence(_hom_restriction(f, (x, y), (fx, fy))):
                return False
    table = f.components[()]
    hit = set(table.values())
    for cls in tau_le_0(B):
        if not hit.intersection(cls):
            return False
    return True


# ------------------------------------------------------------- truncations

def tau_le_1(A):
    """The 1-category of objects and morphism classes of an n-category.

    Levelwise truncation of the slices gives a simplicial set whose Segal
    maps are isomorphisms; reconstruction turns it into a category.
    """
    if A.n == 0:
        raise IncompatibleProfiles("a set has no tau_le_1")
    if A.n == 1:
        return segal_reconstruct(A)
    levels = {(): A.level(())}
    classes = {}
    for p in range(1, A.bound + 1):
        cls = tau_le_0(SlicePrecat(A, p))
        classes[p] = {e: c for c in cls for e in c}
        levels[(p,)] = tuple(sorted({classes[p][e] for e in A.level((p,))}, key=repr))

    def action(u):
        src = canonical_profile(u.source)
        tgt = canonical_profile(u.target)
        raw = A.act(outer_map(A.n, u.components[0], ()))
        table = {}
        for elem in levels[tgt]:
            rep = elem if tgt == () else elem[0]
            img = raw[rep]
            table[elem] = img if src == () else classes[src[0]][img]
        return table

    T = Precat(1, A.bound, levels, action, name="tau1(%s)" % (A.name or "A"))
    return segal_reconstruct(T)


def tau_le_0(A):
    """Objects up to equivalence, as a tuple of class tuples."""
    if A.n == 0:
        return tuple((e,) for e in sorted(A.level(()), key=repr))
    cat = tau_le_1(A)
    out = [tuple(sorted(cls, key=repr)) for cls in cat.iso_classes()]
    return tuple(sorted(out, key=repr))


# ---------------------------------------------------------------- interior

def _invertible_one_cells(X):
    if X.n == 1:
        T1 = segal_reconstruct(X)
        return {e for e in X.level((1,)) if T1.is_iso(e)}
    T1 = tau_le_1(X)
    cls1 = {e: c for c in tau_le_0(SlicePrecat(X, 1)) for e in c}
    return {e for e in X.level((1,)) if T1.is_iso(cls1[e])}


def interior(X):
    """The largest sub-presheaf of an n-category with everything invertible.

    Hom fibers are replaced by their recursive interiors, then only the
    1-morphisms invertible in tau_le_1 survive together with every cell
    whose principal edges they carry.  Returns the interior precat and its
    inclusion into X.
    """
    if X.n == 0:
        return X, PrecatMap(X, X, {(): {e: e for e in X.level(())}}, check=False)
    objects = X.level(())
    one_int = {prof: set() for prof in X.profiles() if prof != ()}
    for p in range(1, X.bound + 1):
        for xs in cart(objects, repeat=p + 1):
            fiber = HomFiber(X, xs)
            if fiber.is_empty():
                continue
            kept, _ = interior(fiber)
            for q in kept.profiles():
                one_int[(p,) + q].update(kept.level(q))
    inv = _invertible_one_cells(X)

    def surviving(prof, e):
        p, q = prof[0], prof[1:]
        if q == ():
            objs = [e]
        else:
            objs = [X.apply(inner_map(X.n, p, v), e)
                    for v in enumerate_morphisms(X.n - 1, (), q)]
        return all(X.apply(spine_map(X.n, i, p, ()), obj) in inv
                   for obj in objs for i in range(1, p + 1))

    levels = {(): X.level(())}
    for prof in X.profiles():
        if prof == ():
            continue
        levels[prof] = tuple(e for e in X.level(prof)
                             if e in one_int[prof] and surviving(prof, e))

    def action(f):
        table = X.act(f)
        return {e: table[e] for e in levels[canonical_profile(f.target)]}

    sub = Precat(X.n, X.bound, levels, action, name="int(%s)" % (X.name or "X"))
    incl = PrecatMap(sub, X, {prof: {e: e for e in levels[prof]} for prof in levels},
                     check=False)
    return sub, incl


def k_interior(X, k):
    """Invertibility imposed only above level k; k = 0 is the full interior."""
    if k == 0:
        return interior(X)[0]
    if X.n == 0 or k >= X.n:
        return X
    levels = {(): X.level(())}
    for p in range(1, X.bound + 1):
        inner = k_interior(SlicePrecat(X, p), k - 1)
        for q in inner.profiles():
            levels[(p,) + q] = inner.level(q)

    def action(f):
        table = X.act(f)
        return {e: table[e] for e in levels[canonical_profile(f.target)]}

    return Precat(X.n, X.bound, levels, action,
                  name="%dint(%s)" % (k, X.name or "X"))


# ------------------------------------------------------------- cardinality

def cardinality(A, reps=None):
    """Sum of hom fiber cardinals over representatives of object classes.

    The representative of each class is its least member; pass reps to force
    a different choice (the result must not change).
    """
    if A.n == 0:
        return Cardinal(len(A.level(())))
    classes = tau_le_0(A)
    if reps is None:
        reps = tuple(cls[0] for cls in classes)
    total = Cardinal(0)
    for y in reps:
        for z in reps:
            total = total + cardinality(hom_fiber(A, y, z))
    return total
