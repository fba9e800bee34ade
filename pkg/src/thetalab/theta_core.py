"""Shape category indexing the levels of our presheaves.

Levels are indexed by *profiles*: tuples of strictly positive integers of
length at most the ambient dimension n. A profile stands for the class of
n-tuples in the n-fold product of the simplex category obtained by padding
with zeros; every tuple is identified with the prefix that precedes its
first zero, because nothing after a collapsed coordinate carries content.

Morphisms are coordinatewise monotone maps between padded representatives,
identified when they agree up to and including the first constant
coordinate. The canonical representative keeps the first constant
coordinate's value and replaces everything after it with the constant-0
filler. At n = 1 no identification fires and the category is the plain
simplex category.
"""

from functools import lru_cache
from itertools import combinations_with_replacement, product

from .errors import IncompatibleProfiles


class DeltaMorphism:
    """A monotone map [p] -> [q], stored as its value tuple of length p+1."""

    __slots__ = ("source", "target", "values")

    def __init__(self, source, target, values):
        values = tuple(values)
        assert source >= 0 and target >= 0
        assert len(values) == source + 1, (source, values)
        assert all(isinstance(v, int) and 0 <= v <= target for v in values), (target, values)
        assert all(values[i] <= values[i + 1] for i in range(source)), values
        self.source = source
        self.target = target
        self.values = values

    @staticmethod
    def identity(p):
        return DeltaMorphism(p, p, range(p + 1))

    @staticmethod
    def constant(source, target, value=0):
        return DeltaMorphism(source, target, (value,) * (source + 1))

    @property
    def is_constant(self):
        return self.values[0] == self.values[-1]

    @property
    def is_identity(self):
        return self.source == self.target and self.values == tuple(range(self.source + 1))

    def __call__(self, i):
        return self.values[i]

    def after(self, other):
        """self o other: apply `other` first."""
        assert other.target == self.source, (other.target, self.source)
        return DeltaMorphism(other.source, self.target, tuple(self.values[v] for v in other.values))

    def __eq__(self, other):
        return (
            isinstance(other, DeltaMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.source, self.target, self.values))

    def __repr__(self):
        return f"Δ[{self.source}->{self.target}:{','.join(map(str, self.values))}]"


def monotone_maps(p, q):
    """All monotone maps [p] -> [q] in lexicographic order of value tuples."""
    return tuple(
        DeltaMorphism(p, q, vals) for vals in combinations_with_replacement(range(q + 1), p + 1)
    )


def canonical_profile(raw):
    """The positive prefix preceding the first zero of a raw entry tuple."""
    profile = []
    for entry in raw:
        assert isinstance(entry, int) and entry >= 0, raw
        if entry == 0:
            break
        profile.append(entry)
    return tuple(profile)


def pad(profile, n):
    assert len(profile) <= n, (profile, n)
    return tuple(profile) + (0,) * (n - len(profile))


def profile_str(profile):
    return ".".join(str(m) for m in profile)


def parse_profile(text):
    if text == "":
        return ()
    profile = tuple(int(part) for part in text.split("."))
    assert all(m >= 1 for m in profile), text
    return profile


class ThetaObject:
    """A canonical object of the shape category for ambient dimension n."""

    __slots__ = ("n", "profile")

    def __init__(self, n, profile):
        profile = tuple(profile)
        assert 0 <= len(profile) <= n
        assert all(isinstance(m, int) and m >= 1 for m in profile), profile
        self.n = n
        self.profile = profile

    def __eq__(self, other):
        return isinstance(other, ThetaObject) and (self.n, self.profile) == (other.n, other.profile)

    def __hash__(self):
        return hash((self.n, self.profile))

    def __repr__(self):
        return f"Θ{self.n}({profile_str(self.profile)})"


def canonicalize_object(raw, n):
    raw = tuple(raw)
    assert len(raw) <= n, (raw, n)
    return ThetaObject(n, canonical_profile(raw))


class ThetaMorphism:
    """A canonical morphism between profiles in ambient dimension n.

    `components` always has length n and runs between the padded
    representatives of `source` and `target`. The canonical-form invariant:
    with j the index of the first constant component (j = n when none is),
    components before j are non-constant and components after j are the
    constant-0 map. Equality of classes is structural equality.
    """

    __slots__ = ("n", "source", "target", "components")

    def __init__(self, n, source, target, components):
        source = tuple(source)
        target = tuple(target)
        components = tuple(components)
        assert len(components) == n
        srep = pad(source, n)
        trep = pad(target, n)
        j = n
        for t, comp in enumerate(components):
            assert comp.source == srep[t] and comp.target == trep[t], (comp, srep, trep)
            if j == n:
                if comp.is_constant:
                    j = t
            else:
                assert comp.values == (0,) * (srep[t] + 1), (t, components)
        self.n = n
        self.source = source
        self.target = target
        self.components = components

    @staticmethod
    def make(n, source_raw, target_raw, components):
        """Canonicalize a raw coordinatewise tuple between padded entry tuples."""
        source_raw = tuple(source_raw)
        target_raw = tuple(target_raw)
        components = tuple(components)
        assert len(source_raw) == len(target_raw) == len(components) == n
        src = canonical_profile(source_raw)
        tgt = canonical_profile(target_raw)
        srep = pad(src, n)
        trep = pad(tgt, n)
        adjusted = []
        for t in range(n):
            comp = components[t]
            assert comp.source == source_raw[t] and comp.target == target_raw[t]
            if comp.source != srep[t]:
                # section from the padded representative: constant 0 into the raw entry
                comp = comp.after(DeltaMorphism.constant(srep[t], comp.source, 0))
            if comp.target != trep[t]:
                comp = DeltaMorphism.constant(comp.target, trep[t], 0).after(comp)
            adjusted.append(comp)
        return ThetaMorphism(n, src, tgt, _normal_tail(n, srep, trep, adjusted))

    @property
    def is_identity(self):
        # padded coordinates of the canonical identity are [0] -> [0], itself an identity
        return self.source == self.target and all(c.is_identity for c in self.components)

    def after(self, other):
        """self o other: apply `other` first. Profiles must match up."""
        if not isinstance(other, ThetaMorphism) or other.n != self.n:
            raise IncompatibleProfiles(f"cannot compose {self!r} with {other!r}")
        if other.target != self.source:
            raise IncompatibleProfiles(
                f"target {profile_str(other.target)!r} != source {profile_str(self.source)!r}"
            )
        n = self.n
        srep = pad(other.source, n)
        trep = pad(self.target, n)
        comps = [self.components[t].after(other.components[t]) for t in range(n)]
        return ThetaMorphism(n, other.source, self.target, _normal_tail(n, srep, trep, comps))

    def sort_key(self):
        return (self.source, self.target, tuple(c.values for c in self.components))

    def __eq__(self, other):
        return (
            isinstance(other, ThetaMorphism)
            and self.n == other.n
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.n, self.source, self.target, self.components))

    def __repr__(self):
        comps = ";".join(",".join(map(str, c.values)) for c in self.components)
        return f"({profile_str(self.source)}->{profile_str(self.target)})[{comps}]"


def _normal_tail(n, srep, trep, comps):
    """Zero out every component strictly after the first constant one."""
    j = n
    for t in range(n):
        if comps[t].is_constant:
            j = t
            break
    return tuple(
        comps[t] if t <= j else DeltaMorphism.constant(srep[t], trep[t], 0) for t in range(n)
    )


def canonicalize_morphism(n, source_raw, target_raw, components):
    return ThetaMorphism.make(n, source_raw, target_raw, components)


def identity_morphism(n, profile):
    profile = tuple(profile)
    srep = pad(profile, n)
    comps = [DeltaMorphism.identity(m) for m in srep]
    return ThetaMorphism(n, profile, profile, _normal_tail(n, srep, srep, comps))


@lru_cache(maxsize=None)
def enumerate_morphisms(n, source, target):
    """All canonical morphisms source -> target, deterministically ordered.

    Enumerates by the index j of the first constant component: non-constant
    choices before j, a free constant value at j, constant-0 filler after.
    """
    source = tuple(source)
    target = tuple(target)
    srep = pad(source, n)
    trep = pad(target, n)
    found = []
    for j in range(n + 1):
        if j == n and (len(source) < n or len(target) < n):
            continue  # padding forces a constant component somewhere
        prefix_options = []
        feasible = True
        for t in range(j):
            options = [f for f in monotone_maps(srep[t], trep[t]) if not f.is_constant]
            if not options:
                feasible = False
                break
            prefix_options.append(options)
        if not feasible:
            continue
        if j < n:
            pivots = [DeltaMorphism.constant(srep[j], trep[j], v) for v in range(trep[j] + 1)]
            tail = [DeltaMorphism.constant(srep[t], trep[t], 0) for t in range(j + 1, n)]
            for prefix in product(*prefix_options):
                for pivot in pivots:
                    comps = list(prefix) + [pivot] + tail
                    found.append(ThetaMorphism(n, source, target, comps))
        else:
            for prefix in product(*prefix_options):
                found.append(ThetaMorphism(n, source, target, prefix))
    found.sort(key=ThetaMorphism.sort_key)
    return tuple(found)


def profiles_within(n, bound):
    """All profiles of length <= n with entries in 1..bound, small ones first."""
    out = [()]
    for length in range(1, n + 1):
        out.extend(product(range(1, bound + 1), repeat=length))
    out.sort(key=lambda prof: (sum(prof), len(prof), prof))
    return tuple(out)


def theta1(delta):
    """Lift a plain monotone map to a morphism of the n = 1 shape category."""
    return ThetaMorphism.make(1, (delta.source,), (delta.target,), (delta,))


def outer_map(n, delta, rest):
    """The morphism acting by `delta` in the first coordinate, identity on `rest`."""
    rest_rep = pad(rest, n - 1)
    source_raw = (delta.source,) + rest_rep
    target_raw = (delta.target,) + rest_rep
    comps = [delta] + [DeltaMorphism.identity(m) for m in rest_rep]
    return ThetaMorphism.make(n, source_raw, target_raw, comps)


def inner_map(n, p, rest_morphism):
    """The morphism fixing the first coordinate [p] and acting by an
    (n-1)-dimensional morphism on the remaining coordinates."""
    assert rest_morphism.n == n - 1
    assert p >= 1
    source_raw = (p,) + pad(rest_morphism.source, n - 1)
    target_raw = (p,) + pad(rest_morphism.target, n - 1)
    comps = [DeltaMorphism.identity(p)] + list(rest_morphism.components)
    return ThetaMorphism.make(n, source_raw, target_raw, comps)


def truncate_morphism(f, m):
    """Push a morphism down the coordinate-truncation functor to dimension m."""
    assert m <= f.n
    source_raw = pad(f.source, f.n)[:m]
    target_raw = pad(f.target, f.n)[:m]
    return ThetaMorphism.make(m, source_raw, target_raw, f.components[:m])


def vertex_morphisms(n, profile):
    """The profile[0]+1 morphisms () -> profile picking out a vertex."""
    profile = tuple(profile)
    assert len(profile) >= 1
    out = []
    for v in range(profile[0] + 1):
        delta = DeltaMorphism.constant(0, profile[0], v)
        out.append(outer_map(n, delta, profile[1:]))
    return tuple(out)


def spine_map(n, i, p, rest):
    """The morphism (1, rest) -> (p, rest) spanning vertices i-1, i (1-based i)."""
    assert 1 <= i <= p
    return outer_map(n, DeltaMorphism(1, p, (i - 1, i)), rest)


def long_edge_map(n, p, rest, lo=0, hi=None):
    """The morphism (1, rest) -> (p, rest) spanning vertices lo, hi."""
    if hi is None:
        hi = p
    assert 0 <= lo <= hi <= p and lo < hi
    return outer_map(n, DeltaMorphism(1, p, (lo, hi)), rest)
