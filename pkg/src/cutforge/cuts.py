"""Cuts: vertex subsets with edge coboundaries, over a finite graph or a
Cayley ball.

Membership is a dense bit mask over vertex indices (corner arithmetic is
the hot loop downstream).  On ball universes a Cut carries the interior
contract: every coboundary edge has both endpoints at distance <= R-1, so
corner emptiness and nestedness decided on the trace are exact for the
half-space families the pipeline produces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, components
from .groups import BallView, ball as make_ball, left_edge_image

MAX_CLOSURE_GENERATORS = 12
MAX_ENUMERATED_ATOMS = 20


class CutError(ValueError):
    pass


def universe_graph(universe):
    if isinstance(universe, BallView):
        return universe.graph
    if isinstance(universe, Graph):
        return universe
    raise CutError("universe must be a Graph or a BallView")


def full_mask(universe):
    return (1 << universe_graph(universe).nv) - 1


def bits_of_members(universe, members):
    g = universe_graph(universe)
    bits = 0
    for v in members:
        if v not in g.vindex:
            raise CutError("member %r not a universe vertex" % (v,))
        bits |= 1 << g.vindex[v]
    return bits


def members_of_bits(universe, bits):
    g = universe_graph(universe)
    return tuple(g.vertices[i] for i in range(g.nv) if (bits >> i) & 1)


def coboundary_indices(graph, bits):
    """Indices of edges with exactly one endpoint in the bit set."""
    out = []
    for k, (_e, s, d) in enumerate(graph.edges):
        si, di = graph.vindex[s], graph.vindex[d]
        if ((bits >> si) & 1) != ((bits >> di) & 1):
            out.append(k)
    return out


def _check_interior(universe, bits):
    if not isinstance(universe, BallView):
        return
    g = universe.graph
    limit = universe.radius - 1
    for k in coboundary_indices(g, bits):
        _e, s, d = g.edges[k]
        if universe.dist[g.vindex[s]] > limit or universe.dist[g.vindex[d]] > limit:
            raise CutError("interior-coboundary violated: edge %r" % (_e,))


class Cut:
    """Immutable cut; equality and hashing are by universe identity and
    member bits, so complements and translates dedupe exactly."""

    __slots__ = ("universe", "bits", "name", "_cob")

    def __init__(self, universe, bits, name=None):
        g = universe_graph(universe)
        if bits < 0 or bits >> g.nv:
            raise CutError("member bits out of range for universe")
        _check_interior(universe, bits)
        self.universe = universe
        self.bits = bits
        self.name = name
        self._cob = None

    def members(self):
        return members_of_bits(self.universe, self.bits)

    def size(self):
        return self.bits.bit_count()

    def complement(self, name=None):
        if name is None and self.name is not None:
            name = self.name[1:] if self.name.startswith("~") else "~" + self.name
        return Cut(self.universe, full_mask(self.universe) ^ self.bits, name)

    def coboundary(self):
        if self._cob is None:
            g = universe_graph(self.universe)
            self._cob = tuple(
                g.edges[k][0] for k in coboundary_indices(g, self.bits)
            )
        return frozenset(self._cob)

    def __eq__(self, other):
        return (
            isinstance(other, Cut)
            and self.universe is other.universe
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((id(self.universe), self.bits))

    def __repr__(self):
        label = self.name if self.name is not None else "%d members" % self.size()
        return "Cut(%s)" % (label,)


def cut_from_members(universe, members, name=None):
    return Cut(universe, bits_of_members(universe, members), name)


def coboundary(universe, members_or_cut):
    """Edge ids with exactly one endpoint in the set.  On a ball universe
    the interior contract is enforced."""
    if isinstance(members_or_cut, Cut):
        return members_or_cut.coboundary()
    bits = bits_of_members(universe, members_or_cut)
    _check_interior(universe, bits)
    g = universe_graph(universe)
    return frozenset(g.edges[k][0] for k in coboundary_indices(g, bits))


def sym_diff(a, b):
    _same_universe(a, b)
    return frozenset(members_of_bits(a.universe, a.bits ^ b.bits))


def almost_equal(a, b):
    """(almost equal?, symmetric difference).  Exact on finite graphs; on a
    ball the answer is certified only when the difference avoids the sphere
    (otherwise it may keep growing outside the window)."""
    _same_universe(a, b)
    diff = a.bits ^ b.bits
    if isinstance(a.universe, BallView):
        ok = (diff & a.universe.sphere_mask()) == 0
    else:
        ok = True
    return ok, frozenset(members_of_bits(a.universe, diff))


def _same_universe(a, b):
    if a.universe is not b.universe:
        raise CutError("cuts live over different universes")


CORNER_NAMES = ("A&B", "A&~B", "~A&B", "~A&~B")


@dataclass(frozen=True)
class NestedReport:
    corner_sizes: tuple
    corner_infinite: tuple
    nested: bool
    empty_corners: tuple

    def corners(self):
        return dict(zip(CORNER_NAMES, self.corner_sizes))


def nested_report(a, b):
    """Corner census for two cuts.  Nested iff some corner is empty; on ball
    universes a corner is flagged infinite when its trace meets the sphere
    (exact for interior-coboundary cuts: every corner is a union of residual
    components of ball minus the two coboundaries)."""
    _same_universe(a, b)
    full = full_mask(a.universe)
    corners = (
        a.bits & b.bits,
        a.bits & (full ^ b.bits),
        (full ^ a.bits) & b.bits,
        (full ^ a.bits) & (full ^ b.bits),
    )
    sizes = tuple(c.bit_count() for c in corners)
    if isinstance(a.universe, BallView):
        sm = a.universe.sphere_mask()
        inf = tuple(bool(c & sm) for c in corners)
    else:
        inf = (False, False, False, False)
    empty = tuple(
        CORNER_NAMES[i] for i in range(4) if sizes[i] == 0
    )
    return NestedReport(sizes, inf, bool(empty), empty)


def is_nested_bits(full, abits, bbits):
    return (
        abits & bbits == 0
        or abits & (full ^ bbits) == 0
        or (full ^ abits) & bbits == 0
        or (full ^ abits) & (full ^ bbits) == 0
    )


class CutAlgebra:
    """Finite Boolean algebra of vertex sets, generated by cuts.  Atoms are
    the refinement blocks, ordered by smallest vertex index; every element
    is a union of atoms."""

    __slots__ = ("universe", "generators", "atoms")

    def __init__(self, universe, generators, atoms):
        self.universe = universe
        self.generators = tuple(generators)
        self.atoms = tuple(atoms)

    @property
    def n_atoms(self):
        return len(self.atoms)

    def full(self):
        return full_mask(self.universe)

    def element_bits(self, subset):
        bits = 0
        for i in range(self.n_atoms):
            if (subset >> i) & 1:
                bits |= self.atoms[i]
        return bits

    def decompose(self, bits):
        """Atom subset index of an element, or None if bits is not in the
        algebra."""
        subset = 0
        rest = bits
        for i, atom in enumerate(self.atoms):
            inter = bits & atom
            if inter == atom:
                subset |= 1 << i
                rest &= ~atom
            elif inter:
                return None
        if rest:
            return None
        return subset

    def contains(self, bits):
        return self.decompose(bits) is not None

    def all_element_bits(self):
        if self.n_atoms > MAX_ENUMERATED_ATOMS:
            raise CutError(
                "refusing to enumerate 2^%d elements (cap %d atoms)"
                % (self.n_atoms, MAX_ENUMERATED_ATOMS)
            )
        for subset in range(1 << self.n_atoms):
            yield self.element_bits(subset)

    def same_algebra(self, other):
        return self.universe is other.universe and sorted(self.atoms) == sorted(
            other.atoms
        )


def boolean_closure(cuts, max_generators=MAX_CLOSURE_GENERATORS):
    if not cuts:
        raise CutError("boolean_closure needs at least one generating cut")
    if len(cuts) > max_generators:
        raise CutError(
            "%d generators exceed closure cap %d" % (len(cuts), max_generators)
        )
    universe = cuts[0].universe
    for c in cuts[1:]:
        _same_universe(cuts[0], c)
    blocks = [full_mask(universe)]
    if blocks[0] == 0:
        raise CutError("empty universe has no cut algebra")
    for c in cuts:
        nxt = []
        for b in blocks:
            inside = b & c.bits
            outside = b & ~c.bits
            if inside:
                nxt.append(inside)
            if outside:
                nxt.append(outside)
        blocks = nxt
    blocks.sort(key=lambda b: (b & -b).bit_length())
    return CutAlgebra(universe, cuts, blocks)


@dataclass(frozen=True)
class RightStability:
    """Certificate for near-invariance under right translation by the
    generators: status is 'exact' (whole finite group seen),
    'ball_verified' (no growth between the probe radius and R), or
    'rejected' (a generator's difference set grew; witness attached)."""

    status: str
    radius: int
    probe_radius: int
    per_generator: tuple  # (name, size at probe, size at R)
    witness: object


def right_flip_bits(bv, bits, s_element):
    """(A (symdiff) As^-1) restricted to the decidable domain
    {x : xs in ball}.  Returns (flip bits, valid-domain bits)."""
    o = bv.oracle
    flip = 0
    valid = 0
    for i, el in enumerate(bv.elements):
        img = o.multiply(el, s_element)
        j = bv.el_to_idx.get(img)
        if j is None:
            continue
        valid |= 1 << i
        if ((bits >> i) & 1) != ((bits >> j) & 1):
            flip |= 1 << i
    return flip, valid


def crossing_sources(bv, bits, gen_index):
    """Sources x of Cayley edges (x, s) that cross the bit set, for the
    generator with the given index."""
    out = 0
    for k, (src_i, gj) in enumerate(bv.edge_meta):
        if gj != gen_index:
            continue
        _e, _s, d = bv.graph.edges[k]
        di = bv.graph.vindex[d]
        if ((bits >> src_i) & 1) != ((bits >> di) & 1):
            out |= 1 << src_i
    return out


def is_almost_right_stable(bv, cut, probe_radius=None):
    if not isinstance(bv, BallView):
        raise CutError("right-stability check needs a ball universe")
    if cut.universe is not bv:
        raise CutError("cut does not live on this ball")
    o = bv.oracle
    gens = o.generators()

    def checked_flip(view, bits, gen_index, g):
        flip, _valid = right_flip_bits(view, bits, g)
        if flip != crossing_sources(view, bits, gen_index):
            raise CutError("translation identity violated (internal)")
        return flip

    if bv.exhausted:
        per = []
        for gi, (name, g) in enumerate(gens):
            n = checked_flip(bv, cut.bits, gi, g).bit_count()
            per.append((name, n, n))
        return RightStability("exact", bv.radius, bv.radius, tuple(per), None)
    probe = probe_radius if probe_radius is not None else max(2, bv.radius // 2)
    if probe >= bv.radius:
        raise CutError("probe radius must be smaller than the ball radius")
    small = make_ball(o, probe)
    small_bits = 0
    for i, el in enumerate(small.elements):
        j = bv.el_to_idx.get(el)
        if j is None:
            raise CutError("probe ball escapes the outer ball")
        if (cut.bits >> j) & 1:
            small_bits |= 1 << i
    per = []
    witness = None
    for gi, (name, g) in enumerate(gens):
        nb = checked_flip(bv, cut.bits, gi, g).bit_count()
        ns = checked_flip(small, small_bits, gi, g).bit_count()
        per.append((name, ns, nb))
        if nb > ns and witness is None:
            witness = (name, ns, nb)
    status = "rejected" if witness is not None else "ball_verified"
    return RightStability(status, bv.radius, probe, tuple(per), witness)


def act_left_cut(bv, g, cut, name=None):
    """Left translate of an interior-coboundary cut, as a cut of the same
    ball.  The translated coboundary must stay interior; membership on the
    fringe (where g^-1 x escapes) is filled in per residual component."""
    if cut.universe is not bv:
        raise CutError("cut does not live on this ball")
    o = bv.oracle
    graph = bv.graph
    img_edges = []
    for k in coboundary_indices(graph, cut.bits):
        k2 = left_edge_image(bv, g, k)
        if k2 is None:
            raise CutError(
                "radius too small: translated coboundary escapes the ball"
            )
        img_edges.append(k2)
    limit = bv.radius - 1 if not bv.exhausted else bv.radius
    for k2 in img_edges:
        _e, s, d = graph.edges[k2]
        if bv.dist[graph.vindex[s]] > limit or bv.dist[graph.vindex[d]] > limit:
            raise CutError("radius too small: translated coboundary not interior")
    ginv = o.invert(g)
    known = 0
    known_bits = 0
    for i, el in enumerate(bv.elements):
        pre = o.multiply(ginv, el)
        j = bv.el_to_idx.get(pre)
        if j is None:
            continue
        known |= 1 << i
        if (cut.bits >> j) & 1:
            known_bits |= 1 << i
    removed = [graph.edges[k2][0] for k2 in img_edges]
    part = components(graph, removed=removed)
    bits = 0
    for block in part.blocks:
        bmask = 0
        for v in block:
            bmask |= 1 << graph.vindex[v]
        probe = bmask & known
        if probe == 0:
            raise CutError("radius too small: a fringe component is undecidable")
        inside = probe & known_bits
        if inside == probe:
            bits |= bmask
        elif inside != 0:
            raise CutError("translated cut is inconsistent on a component")
    return Cut(bv, bits, name)


@dataclass(frozen=True)
class OrbitCuts:
    cuts: tuple
    words: tuple  # word witness per cut, aligned


def orbit_cuts(bv, cut, words):
    """Distinct left translates of `cut` under the given (element, word)
    list; first word witness per distinct translate is kept."""
    base = cut.name if cut.name else "A"
    seen = {}
    out = []
    wit = []
    for el, word in words:
        label = base if word == "" else "%s*%s" % (word, base)
        img = act_left_cut(bv, el, cut, name=label)
        if img.bits in seen:
            continue
        seen[img.bits] = word
        out.append(img)
        wit.append(word)
    return OrbitCuts(tuple(out), tuple(wit))
