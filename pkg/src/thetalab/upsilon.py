"""Cell constructors: the k-gon cells, universal brackets, faces and shells.

An element of a cell at profile (p, q...) is a pair (word, payload): the word
is a nondecreasing vertex tuple of length p+1, the payload is "*" on constant
words and a tuple of edge-precat elements at level q... otherwise.  Decreasing
words carry no elements.
"""

from itertools import combinations_with_replacement, product as cartesian

from .errors import AssemblyMismatch, IncompatibleProfiles, InvalidFace
from .presheaf_engine import (
    Precat,
    PrecatMap,
    find_isomorphism,
    product,
    pushout,
    terminal,
)
from .theta_core import ThetaMorphism, canonical_profile, pad, profiles_within


def _words(k, length):
    return combinations_with_replacement(range(k + 1), length)


def _rest_morphism(f):
    # the shape morphism on all coordinates after the first
    n = f.n
    return ThetaMorphism.make(n - 1, pad(f.source, n)[1:], pad(f.target, n)[1:],
                              f.components[1:])


def _cell_levels(n, bound, k, payload_sets):
    """Level sets for a cell with objects 0..k.

    payload_sets(word, q) lists the payloads of a non-constant word over the
    profile tail q; constant words always carry the single payload "*".
    """
    levels = {}
    for prof in profiles_within(n, bound):
        p = prof[0] if prof else 0
        q = prof[1:]
        elems = []
        for word in _words(k, p + 1):
            if word[0] == word[-1]:
                elems.append((word, "*"))
            else:
                elems.extend((word, pay) for pay in payload_sets(word, q))
        levels[prof] = tuple(elems)
    return levels


def _cell_action(levels, pull_payload):
    """Contravariant action shared by all word-and-payload cells.

    pull_payload(word, old_word, payload, rest) moves a payload along the
    coordinate-tail morphism `rest` after the word has been reindexed.
    """

    def action(f):
        tgt = levels[canonical_profile(f.target)]
        first = f.components[0]
        rest = None if first.is_constant else _rest_morphism(f)
        out = {}
        for word, payload in tgt:
            new = tuple(word[first(i)] for i in range(first.source + 1))
            if new[0] == new[-1]:
                out[(word, payload)] = (new, "*")
            else:
                out[(word, payload)] = (new, pull_payload(new, word, payload, rest))
        return out

    return action


class UpsilonCell:
    """The k-gon cell with edge data E1..Ek and the product rule on long edges.

    The level over a non-constant word (y0,...,yp) is the product of the edge
    precats E_j for y0 < j <= yp, evaluated at the profile tail.
    """

    def __init__(self, *edges):
        if not edges:
            raise InvalidFace("a cell needs at least one edge")
        base = edges[0]
        if any((E.n, E.bound) != (base.n, base.bound) for E in edges):
            raise IncompatibleProfiles("edge precats must share dimension and bound")
        self.k = len(edges)
        self.edges = edges
        self.n = base.n + 1
        self.bound = base.bound

        def payload_sets(word, q):
            return cartesian(*(edges[j - 1].level(q)
                               for j in range(word[0] + 1, word[-1] + 1)))

        levels = _cell_levels(self.n, self.bound, self.k, payload_sets)

        def pull_payload(new, old, payload, rest):
            out = []
            for j in range(new[0] + 1, new[-1] + 1):
                e = payload[j - old[0] - 1]
                out.append(edges[j - 1].apply(rest, e))
            return tuple(out)

        self.precat = Precat(self.n, self.bound, levels, _cell_action(levels, pull_payload),
                             name="Y%d" % self.k)


def build_upsilon(*edges):
    return UpsilonCell(*edges)


class BracketCell:
    """The universal cell [p](E): one copy of E over every non-constant word."""

    def __init__(self, p, E):
        if p < 1:
            raise InvalidFace("bracket cells need p >= 1")
        self.p = p
        self.E = E
        self.n = E.n + 1
        self.bound = E.bound

        def payload_sets(word, q):
            return E.level(q)

        levels = _cell_levels(self.n, self.bound, p, payload_sets)

        def pull_payload(new, old, payload, rest):
            return E.apply(rest, payload)

        self.precat = Precat(self.n, self.bound, levels, _cell_action(levels, pull_payload),
                             name="[%d]" % p)


def build_bracket(p, E):
    return BracketCell(p, E)


def object_inclusion(cell, j):
    """The map from the terminal presheaf onto the degeneracies of object j."""
    pt = terminal(cell.n, cell.bound)
    comps = {}
    for prof in pt.profiles():
        length = (prof[0] if prof else 0) + 1
        comps[prof] = {"*": ((j,) * length, "*")}
    return PrecatMap(pt, cell.precat, comps)


def cell_map(src, tgt, vertex_map, payload_map):
    """The map of cells acting by vertex_map on words and payload_map on payloads.

    payload_map(new_word, old_word, payload) must produce a payload valid for
    the target cell; constant images collapse to "*".
    """
    comps = {}
    for prof in src.precat.profiles():
        table = {}
        for word, payload in src.precat.level(prof):
            new = tuple(vertex_map(y) for y in word)
            if new[0] == new[-1]:
                table[(word, payload)] = (new, "*")
            else:
                table[(word, payload)] = (new, payload_map(new, word, payload))
        comps[prof] = table
    return PrecatMap(src.precat, tgt.precat, comps)


def face_inclusion(parent, face):
    """The inclusion of one principal face into a k-gon cell.

    face is "drop-last" (objects 0..k-1), "drop-first" (objects 1..k) or
    "merge-i" (objects skip i, edges i and i+1 combine into their product).
    """
    k = parent.k
    if face == "drop-last":
        skip = k
    elif face == "drop-first":
        skip = 0
    elif isinstance(face, str) and face.startswith("merge-"):
        try:
            skip = int(face[len("merge-"):])
        except ValueError:
            raise InvalidFace("bad face spec %r" % face)
        if not 1 <= skip <= k - 1:
            raise InvalidFace("merge index %d outside 1..%d" % (skip, k - 1))
    else:
        raise InvalidFace("bad face spec %r" % face)
    if k == 1:
        raise InvalidFace("a one-edge cell has no cell faces")

    edges = parent.edges
    if skip == 0:
        child = UpsilonCell(*edges[1:])
    elif skip == k:
        child = UpsilonCell(*edges[:-1])
    else:
        merged = product(edges[skip - 1], edges[skip])[0]
        child = UpsilonCell(*(edges[:skip - 1] + (merged,) + edges[skip + 1:]))

    def vertex(y):
        return y if y < skip else y + 1

    def payload(new_word, old_word, pay):
        def child_part(j):
            return pay[j - old_word[0] - 1]

        out = []
        for jp in range(new_word[0] + 1, new_word[-1] + 1):
            if skip == 0:
                out.append(child_part(jp - 1))
            elif skip == k or jp < skip:
                out.append(child_part(jp))
            elif jp == skip:
                out.append(child_part(skip)[0])
            elif jp == skip + 1:
                out.append(child_part(skip)[1])
            else:
                out.append(child_part(jp - 1))
        return tuple(out)

    return cell_map(child, parent, vertex, payload)


class ShellComplex:
    """A union of faces of a k-gon cell, realized as a subpresheaf.

    An element lies in the face skipping object j exactly when its word avoids
    j, so the left shell of a tetrahedron keeps the words missing one of 1,2,3
    and the right shell those missing one of 0,1,2.  For k=2 either side gives
    the spine (01)+(12); side "spine" asks for the principal edges directly.
    """

    def __init__(self, parent, side):
        k = parent.k
        if side == "spine":
            keep = lambda word: word[-1] - word[0] <= 1
        elif k == 2:
            keep = lambda word: not {0, 2} <= set(word)
        elif k == 3 and side == "left":
            keep = lambda word: not {1, 2, 3} <= set(word)
        elif k == 3 and side == "right":
            keep = lambda word: not {0, 1, 2} <= set(word)
        else:
            raise InvalidFace("no %r shell for a %d-gon cell" % (side, k))
        self.parent = parent
        self.side = side
        levels = {prof: tuple(e for e in parent.precat.level(prof) if keep(e[0]))
                  for prof in parent.precat.profiles()}

        def action(f):
            table = parent.precat.act(f)
            return {e: table[e] for e in levels[canonical_profile(f.target)]}

        self.precat = Precat(parent.n, parent.bound, levels, action,
                             name="shell-%s" % side)
        self.inclusion = PrecatMap(
            self.precat, parent.precat,
            {prof: {e: e for e in levels[prof]} for prof in levels}, check=False)


def build_shell(parent, side):
    return ShellComplex(parent, side)


def assemble_upsilon2(E, F):
    """Glue the two-edge cell out of brackets and compare with the closed form.

    The middle object is [1](ExF) twice, joined end to start at a point; it
    maps into [2](ExF) along the two short faces and onto [1](E) joined with
    [1](F) by the product projections.  The pushout of those two maps must be
    the two-edge cell; returns it with the comparison isomorphism.
    """
    G, _, _ = product(E, F)
    b2 = build_bracket(2, G)
    b1g = build_bracket(1, G)
    b1e = build_bracket(1, E)
    b1f = build_bracket(1, F)

    mid, m1, m2 = pushout(object_inclusion(b1g, 1), object_inclusion(b1g, 0))
    chain, c1, c2 = pushout(object_inclusion(b1e, 1), object_inclusion(b1f, 0))

    def tagged_components(build_left, build_right):
        comps = {}
        for prof in mid.profiles():
            table = {}
            for rep in mid.level(prof):
                tag, (word, payload) = rep
                table[rep] = (build_left if tag == "L" else build_right)(prof, word, payload)
            comps[prof] = table
        return comps

    def alpha_left(prof, word, payload):
        return (word, payload)

    def alpha_right(prof, word, payload):
        return (tuple(y + 1 for y in word), payload)

    alpha = PrecatMap(mid, b2.precat, tagged_components(alpha_left, alpha_right))

    def beta_left(prof, word, payload):
        pay = "*" if payload == "*" else payload[0]
        return c1.apply(prof, (word, pay))

    def beta_right(prof, word, payload):
        pay = "*" if payload == "*" else payload[1]
        return c2.apply(prof, (word, pay))

    beta = PrecatMap(mid, chain, tagged_components(beta_left, beta_right))

    assembled, _, _ = pushout(alpha, beta)
    direct = build_upsilon(E, F).precat
    iso = find_isomorphism(assembled, direct)
    if iso is None:
        raise AssemblyMismatch("glued two-edge cell differs from the closed form")
    return assembled, iso
