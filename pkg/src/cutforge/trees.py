"""Trees from nested cut systems, and equivariant surgery on them.

A verified system E of cuts yields a tree whose edges are the cuts
themselves.  In paired mode (complement-stable E) each cut e runs from the
vertex labeled {d | d contains e or d strictly contains the complement of
e} to the midpoint labeled {e, complement}; complementary cuts meet at the
midpoint, so each complement pair is a length-2 segment.  In unpaired mode
(no complement pairs in E) the cut runs between the two one-sided labels,
with no midpoints.  Vertex labels are materialized as explicit cut-index
sets: the tree metric equals the symmetric-difference size of labels, and
that identity is what the test suites check.

The action layer has two flavors.  TreeAction is a full action of a finite
group, verified exhaustively (homomorphism plus incidence), supporting
stabilizers, orbits, compressible collapse, blow-up, and the size
polynomial.  PartialAction is the word-bounded evidence available over a
Cayley ball: per-word partial maps, orbits as reachability classes, and
fixed vertices only when every generator visibly fixes them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import Cut, CutError, act_left_cut, full_mask, is_nested_bits
from .graphs import Graph, collapse_blocks, components, is_tree

SUBGROUP_ENUM_CAP = 48
SEPARATION_SCAN_CAP = 2000


class TreeError(ValueError):
    pass


# -- nested systems -----------------------------------------------------------


@dataclass(frozen=True)
class NestedSystem:
    cuts: tuple
    complement_stable: bool
    complement_free: bool
    nested: bool
    nested_witness: object
    excludes_empty: bool
    excludes_full: bool
    finitely_separating: bool
    max_separation: object  # int, or None when the scan was skipped

    @property
    def valid(self):
        """Flags required by the paired builder."""
        return (
            self.complement_stable
            and self.nested
            and self.excludes_empty
            and self.excludes_full
            and self.finitely_separating
        )

    def failures(self):
        out = []
        if not self.complement_stable:
            out.append("complement_stable")
        if not self.nested:
            out.append("nested (witness %r)" % (self.nested_witness,))
        if not self.excludes_empty:
            out.append("excludes_empty")
        if not self.excludes_full:
            out.append("excludes_full")
        return tuple(out)

    @property
    def universe(self):
        return self.cuts[0].universe if self.cuts else None

    def index_of_bits(self, bits):
        for i, c in enumerate(self.cuts):
            if c.bits == bits:
                return i
        return None


def _cut_name(system, i):
    name = system.cuts[i].name
    return name if name is not None else "cut%d" % (i,)


def verify_system(cuts):
    cuts = tuple(cuts)
    if not cuts:
        return NestedSystem((), True, True, True, None, True, True, True, 0)
    universe = cuts[0].universe
    for c in cuts:
        if c.universe is not universe:
            raise TreeError("system cuts live over different universes")
    seen = {}
    for i, c in enumerate(cuts):
        if c.bits in seen:
            raise TreeError(
                "duplicate cut in system: %r and %r"
                % (cuts[seen[c.bits]].name, c.name)
            )
        seen[c.bits] = i
    full = full_mask(universe)
    excludes_empty = all(c.bits != 0 for c in cuts)
    excludes_full = all(c.bits != full for c in cuts)
    comp_stable = all((full ^ c.bits) in seen for c in cuts)
    comp_free = all((full ^ c.bits) not in seen for c in cuts)
    nested = True
    witness = None
    for i in range(len(cuts)):
        for j in range(i + 1, len(cuts)):
            if not is_nested_bits(full, cuts[i].bits, cuts[j].bits):
                nested = False
                witness = (cuts[i].name, cuts[j].name)
                break
        if not nested:
            break
    # finite systems always separate finitely; record the worst pair count
    # when the universe is small enough to scan
    nv = full.bit_count()
    max_sep = None
    if nv <= SEPARATION_SCAN_CAP:
        max_sep = 0
        for v in range(nv):
            for w in range(v + 1, nv):
                sep = sum(
                    1
                    for c in cuts
                    if ((c.bits >> v) & 1) != ((c.bits >> w) & 1)
                )
                if sep > max_sep:
                    max_sep = sep
    return NestedSystem(
        cuts,
        comp_stable,
        comp_free,
        nested,
        witness,
        excludes_empty,
        excludes_full,
        True,
        max_sep,
    )


# -- labels --------------------------------------------------------------------


def _subset(a, b):
    return a & ~b == 0


def _initial_label(system, i):
    """{d | d contains cut i, or d strictly contains its complement}."""
    bits = system.cuts[i].bits
    full = full_mask(system.universe)
    cbits = full ^ bits
    out = []
    for d, c in enumerate(system.cuts):
        if _subset(bits, c.bits) or (_subset(cbits, c.bits) and c.bits != cbits):
            out.append(d)
    return frozenset(out)


def _outward_label(system, i):
    """{d | d strictly contains cut i, or d contains its complement}."""
    bits = system.cuts[i].bits
    full = full_mask(system.universe)
    cbits = full ^ bits
    out = []
    for d, c in enumerate(system.cuts):
        if (_subset(bits, c.bits) and c.bits != bits) or _subset(cbits, c.bits):
            out.append(d)
    return frozenset(out)


def _pair_label(system, i):
    full = full_mask(system.universe)
    j = system.index_of_bits(full ^ system.cuts[i].bits)
    return frozenset((i, j))


class StructureTree:
    """Tree whose edge k realizes cut k of the system; vertex labels are
    frozensets of cut indices."""

    __slots__ = (
        "graph",
        "mode",
        "system",
        "labels",
        "label_to_vertex",
        "edge_cut_index",
        "cut_edge_id",
    )

    def __init__(self, graph, mode, system, labels):
        self.graph = graph
        self.mode = mode
        self.system = system
        self.labels = tuple(labels)
        self.label_to_vertex = {}
        for vid, lab in zip(graph.vertices, self.labels):
            self.label_to_vertex[lab] = vid
        self.edge_cut_index = {e: k for k, (e, _s, _d) in enumerate(graph.edges)}
        self.cut_edge_id = tuple(e for (e, _s, _d) in graph.edges)

    def label_of(self, vertex_id):
        return self.labels[self.graph.vindex[vertex_id]]

    def cut_of_edge(self, edge_id):
        return self.system.cuts[self.edge_cut_index[edge_id]]

    def label_names(self, label):
        return tuple(_cut_name(self.system, i) for i in sorted(label))

    def __repr__(self):
        return "StructureTree(mode=%s, %d cuts)" % (self.mode, len(self.system.cuts))


def _build(system, mode):
    n = len(system.cuts)
    if n == 0:
        g = Graph(["n0"], [])
        return StructureTree(g, mode, system, [frozenset()])
    heads = [_initial_label(system, i) for i in range(n)]
    if mode == "T":
        tails = [_pair_label(system, i) for i in range(n)]
    else:
        tails = [_outward_label(system, i) for i in range(n)]
    names = {}
    order = []
    for lab in [l for pair in zip(heads, tails) for l in pair]:
        if lab not in names:
            names[lab] = "n%d" % (len(order),)
            order.append(lab)
    edges = [
        ("e%d" % (i,), names[heads[i]], names[tails[i]]) for i in range(n)
    ]
    g = Graph([names[lab] for lab in order], edges)
    if not is_tree(g):
        raise TreeError("construction did not produce a tree (internal)")
    return StructureTree(g, mode, system, order)


def paired_tree(system):
    """Tree of a complement-stable system; cuts and their complements meet
    at shared midpoint vertices."""
    if not isinstance(system, NestedSystem):
        system = verify_system(system)
    missing = system.failures()
    if missing:
        raise TreeError("system not usable: " + ", ".join(missing))
    return _build(system, "T")


def unpaired_tree(system):
    """Tree of a complement-free system; each cut joins its two one-sided
    labels directly."""
    if not isinstance(system, NestedSystem):
        system = verify_system(system)
    bad = []
    if not system.complement_free:
        bad.append("complement pair present")
    if not system.nested:
        bad.append("nested (witness %r)" % (system.nested_witness,))
    if not system.excludes_empty:
        bad.append("excludes_empty")
    if not system.excludes_full:
        bad.append("excludes_full")
    if bad:
        raise TreeError("system not usable: " + ", ".join(bad))
    return _build(system, "U")


def edge_cut(t, edge_id):
    """e**: the vertices on the source side of a tree edge."""
    if not is_tree(t):
        raise TreeError("edge_cut requires a tree")
    if edge_id not in t.eindex:
        raise TreeError("edge %r not in tree" % (edge_id,))
    src = t.edges[t.eindex[edge_id]][1]
    part = components(t, removed=(edge_id,))
    return frozenset(part.blocks[part.block_of(src)])


def edge_cuts(t):
    return {e: edge_cut(t, e) for (e, _s, _d) in t.edges}


def vertex_embed(stree, universe_vertex):
    """Tree vertex of a universe vertex: the label of a minimal cut
    containing it.  Verifies the label identity (the cuts containing the
    vertex are exactly that label) rather than trusting it."""
    if stree.mode != "T":
        raise TreeError("vertex embedding is defined on paired trees")
    system = stree.system
    g_univ = system.cuts[0].universe if system.cuts else None
    if not system.cuts:
        return stree.graph.vertices[0]
    from .cuts import universe_graph

    vi = universe_graph(g_univ).vindex[universe_vertex]
    loc = [i for i, c in enumerate(system.cuts) if (c.bits >> vi) & 1]
    if not loc:
        raise TreeError(
            "vertex %r lies in no cut (system not complement-stable?)"
            % (universe_vertex,)
        )
    # any minimal cut containing the vertex does; nestedness makes the
    # running-minimum scan sound
    best = None
    for i in loc:
        if best is None or (
            _subset(system.cuts[i].bits, system.cuts[best].bits)
            and system.cuts[i].bits != system.cuts[best].bits
        ):
            best = i
    label = _initial_label(system, best)
    if frozenset(loc) != label:
        raise TreeError(
            "label identity fails at %r: cuts containing it are %r, label %r"
            % (universe_vertex, sorted(loc), sorted(label))
        )
    return stree.label_to_vertex[label]


def _as_bits(universe, cut_or_bits):
    if isinstance(cut_or_bits, Cut):
        return cut_or_bits.bits
    return int(cut_or_bits)


def interval(system, e, f):
    """Cuts d of the system with e <= d <= f (as vertex sets)."""
    universe = system.universe
    ebits = _as_bits(universe, e)
    fbits = _as_bits(universe, f)
    return tuple(
        c
        for c in system.cuts
        if _subset(ebits, c.bits) and _subset(c.bits, fbits)
    )


def prec(system, e, f):
    """e < f with nothing of the system strictly between: [e, f[ = {e}."""
    universe = system.universe
    ebits = _as_bits(universe, e)
    fbits = _as_bits(universe, f)
    if ebits == fbits:
        return False
    half_open = [c.bits for c in interval(system, ebits, fbits) if c.bits != fbits]
    return half_open == [ebits]


# -- full actions of finite groups ---------------------------------------------


class TreeAction:
    """Fully verified action of a finite group on a tree: element-indexed
    vertex and edge permutations commuting with incidences."""

    __slots__ = ("graph", "oracle", "vertex_maps", "edge_maps", "stree", "_elements")

    def __init__(self, graph, oracle, vertex_maps, edge_maps, stree=None):
        if not oracle.finite_kind:
            raise TreeError("tree actions need a finite group oracle")
        if not is_tree(graph):
            raise TreeError("tree actions need a tree")
        self.graph = graph
        self.oracle = oracle
        self.vertex_maps = dict(vertex_maps)
        self.edge_maps = dict(edge_maps)
        self.stree = stree
        self._elements = tuple(oracle.elements())
        self._verify()

    def _verify(self):
        g = self.graph
        ident = self.oracle.identity()
        els = self._elements
        if set(self.vertex_maps) != set(els) or set(self.edge_maps) != set(els):
            raise TreeError("action must map every group element")
        if tuple(self.vertex_maps[ident]) != tuple(range(g.nv)):
            raise TreeError("identity does not act trivially on vertices")
        if tuple(self.edge_maps[ident]) != tuple(range(g.ne)):
            raise TreeError("identity does not act trivially on edges")
        for a in els:
            vm, em = self.vertex_maps[a], self.edge_maps[a]
            if sorted(vm) != list(range(g.nv)) or sorted(em) != list(range(g.ne)):
                raise TreeError("element %s does not act bijectively" % (a,))
            for k, (_e, s, d) in enumerate(g.edges):
                k2 = em[k]
                _e2, s2, d2 = g.edges[k2]
                if g.vindex[s2] != vm[g.vindex[s]] or g.vindex[d2] != vm[g.vindex[d]]:
                    raise TreeError(
                        "incidence broken: element %s, edge %r" % (a, _e)
                    )
        for a in els:
            for b in els:
                ab = self.oracle.multiply(a, b)
                vab, va, vb = self.vertex_maps[ab], self.vertex_maps[a], self.vertex_maps[b]
                eab, ea, eb = self.edge_maps[ab], self.edge_maps[a], self.edge_maps[b]
                for x in range(g.nv):
                    if vab[x] != va[vb[x]]:
                        raise TreeError("vertex maps are not a homomorphism")
                for k in range(g.ne):
                    if eab[k] != ea[eb[k]]:
                        raise TreeError("edge maps are not a homomorphism")

    @property
    def order(self):
        return len(self._elements)

    def elements(self):
        return self._elements

    def _orbits(self, maps, n):
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            block = sorted({maps[a][start] for a in self._elements})
            for x in block:
                seen[x] = True
            out.append(tuple(block))
        return tuple(out)

    def vertex_orbits(self):
        return self._orbits(self.vertex_maps, self.graph.nv)

    def edge_orbits(self):
        return self._orbits(self.edge_maps, self.graph.ne)

    def vertex_stabilizer(self, vi):
        return frozenset(a for a in self._elements if self.vertex_maps[a][vi] == vi)

    def edge_stabilizer(self, k):
        return frozenset(a for a in self._elements if self.edge_maps[a][k] == k)

    def orbit_of_vertex(self, vi):
        return tuple(sorted({self.vertex_maps[a][vi] for a in self._elements}))

    def orbit_of_edge(self, k):
        return tuple(sorted({self.edge_maps[a][k] for a in self._elements}))

    def collapse(self, edge_ids):
        """Collapse an action-closed edge set; returns the induced action."""
        g = self.graph
        idxs = set()
        for e in edge_ids:
            if e not in g.eindex:
                raise TreeError("edge %r not in tree" % (e,))
            idxs.add(g.eindex[e])
        for a in self._elements:
            for k in idxs:
                if self.edge_maps[a][k] not in idxs:
                    raise TreeError("collapsed edge set is not action-closed")
        newg, vmap = collapse_blocks(g, edge_ids)
        old_to_new = [newg.vindex[vmap[v]] for v in g.vertices]
        kept = [k for k in range(g.ne) if k not in idxs]
        kept_pos = {k: p for p, k in enumerate(kept)}
        vertex_maps = {}
        edge_maps = {}
        for a in self._elements:
            vm_old = self.vertex_maps[a]
            nvm = [None] * newg.nv
            for x in range(g.nv):
                src = old_to_new[x]
                dst = old_to_new[vm_old[x]]
                if nvm[src] is None:
                    nvm[src] = dst
                elif nvm[src] != dst:
                    raise TreeError("collapse produced an inconsistent action")
            vertex_maps[a] = tuple(nvm)
            em_old = self.edge_maps[a]
            edge_maps[a] = tuple(kept_pos[em_old[k]] for k in kept)
        return TreeAction(newg, self.oracle, vertex_maps, edge_maps)


def induce_action(stree, oracle, cut_maps=None, vertex_perms=None):
    """Action of a finite group on a structure tree, from per-generator data:
    either cut_maps (generator name -> sequence cut index -> cut index) or
    vertex_perms (generator name -> universe vertex permutation dict, cuts
    transported as sets).  The family must be closed under the action."""
    system = stree.system
    n = len(system.cuts)
    full = full_mask(system.universe) if system.cuts else 0
    bits_to_idx = {c.bits: i for i, c in enumerate(system.cuts)}
    comp_idx = [bits_to_idx[full ^ c.bits] for c in system.cuts]

    if (cut_maps is None) == (vertex_perms is None):
        raise TreeError("provide exactly one of cut_maps / vertex_perms")
    gen_maps = {}
    if vertex_perms is not None:
        from .cuts import universe_graph

        g_univ = universe_graph(system.universe)
        for name, _el in oracle.generators():
            if name not in vertex_perms:
                raise TreeError("missing vertex permutation for generator %r" % (name,))
            perm = vertex_perms[name]
            amap = []
            for i, c in enumerate(system.cuts):
                img = 0
                for v in range(g_univ.nv):
                    if (c.bits >> v) & 1:
                        img |= 1 << g_univ.vindex[perm[g_univ.vertices[v]]]
                if img not in bits_to_idx:
                    raise TreeError(
                        "family not closed under the action: image of %r escapes"
                        % (_cut_name(system, i),)
                    )
                amap.append(bits_to_idx[img])
            gen_maps[name] = tuple(amap)
    else:
        for name, _el in oracle.generators():
            if name not in cut_maps:
                raise TreeError("missing cut map for generator %r" % (name,))
            amap = tuple(cut_maps[name])
            if sorted(amap) != list(range(n)):
                raise TreeError("cut map for %r is not a permutation" % (name,))
            gen_maps[name] = amap
    for name, amap in gen_maps.items():
        for i in range(n):
            if amap[comp_idx[i]] != comp_idx[amap[i]]:
                raise TreeError(
                    "cut map for %r does not commute with complementation" % (name,)
                )

    # extend to the whole group breadth first; relations are re-verified by
    # the TreeAction constructor
    ident = oracle.identity()
    cut_action = {ident: tuple(range(n))}
    letters = []
    for name, el in oracle.generators():
        letters.append((el, gen_maps[name]))
        inv = oracle.invert(el)
        if inv != el:
            inv_map = [None] * n
            for i in range(n):
                inv_map[gen_maps[name][i]] = i
            letters.append((inv, tuple(inv_map)))
    frontier = [ident]
    while frontier:
        nxt = []
        for el in frontier:
            base = cut_action[el]
            for gel, gmap in letters:
                img = oracle.multiply(el, gel)
                if img not in cut_action:
                    cut_action[img] = tuple(base[gmap[i]] for i in range(n))
                    nxt.append(img)
        frontier = nxt
    if len(cut_action) != len(oracle.elements()):
        raise TreeError("generators do not generate the group (internal)")

    g = stree.graph
    vertex_maps = {}
    edge_maps = {}
    for el, amap in cut_action.items():
        nvm = []
        for lab in stree.labels:
            img_lab = frozenset(amap[i] for i in lab)
            vid = stree.label_to_vertex.get(img_lab)
            if vid is None:
                raise TreeError(
                    "label transport escapes the tree (cut maps do not preserve "
                    "the nesting order)"
                )
            nvm.append(g.vindex[vid])
        vertex_maps[el] = tuple(nvm)
        edge_maps[el] = amap
    return TreeAction(g, oracle, vertex_maps, edge_maps, stree=stree)


def is_compressible(action, edge_id):
    """An edge is compressible when its endpoints lie in distinct orbits and
    one endpoint stabilizer contains the other; the edge stabilizer then
    equals the smaller endpoint stabilizer (checked)."""
    g = action.graph
    if edge_id not in g.eindex:
        raise TreeError("edge %r not in tree" % (edge_id,))
    k = g.eindex[edge_id]
    _e, s, d = g.edges[k]
    si, di = g.vindex[s], g.vindex[d]
    if action.orbit_of_vertex(si) == action.orbit_of_vertex(di):
        return False
    gs, gd = action.vertex_stabilizer(si), action.vertex_stabilizer(di)
    for small, big in ((gs, gd), (gd, gs)):
        if small <= big:
            if action.edge_stabilizer(k) != small:
                raise TreeError(
                    "edge stabilizer differs from the smaller endpoint "
                    "stabilizer at %r (internal)" % (edge_id,)
                )
            return True
    return False


def _close_subgroup(oracle, seed):
    out = set(seed)
    out.add(oracle.identity())
    frontier = list(out)
    while frontier:
        nxt = []
        for a in frontier:
            for b in tuple(out):
                for c in (oracle.multiply(a, b), oracle.multiply(b, a)):
                    if c not in out:
                        out.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(out)


def subgroups(oracle):
    """All subgroups, by closure growth.  Exhaustive; capped at order 48."""
    els = tuple(oracle.elements())
    if len(els) > SUBGROUP_ENUM_CAP:
        raise TreeError("subgroup enumeration capped at order %d" % (SUBGROUP_ENUM_CAP,))
    triv = frozenset((oracle.identity(),))
    found = {triv}
    queue = [triv]
    while queue:
        h = queue.pop()
        for x in els:
            if x in h:
                continue
            h2 = _close_subgroup(oracle, h | {x})
            if h2 not in found:
                found.add(h2)
                queue.append(h2)
    return frozenset(found)


def substabs(action):
    """Subgroups that stabilize some vertex."""
    subs = subgroups(action.oracle)
    stabs = [action.vertex_stabilizer(v) for v in range(action.graph.nv)]
    return frozenset(h for h in subs if any(h <= st for st in stabs))


def collapse_compressible(action):
    """Collapse compressible edge orbits, smallest edge first, until none
    remain.  For groups within the enumeration cap, the set of vertex
    substabilizer subgroups is asserted unchanged at every step."""
    log = []
    while True:
        g = action.graph
        comp = [k for k in range(g.ne) if is_compressible(action, g.edges[k][0])]
        if not comp:
            return action, tuple(log)
        orbit = action.orbit_of_edge(min(comp))
        edge_ids = tuple(g.edges[k][0] for k in orbit)
        before = None
        if action.order <= SUBGROUP_ENUM_CAP:
            before = substabs(action)
        action = action.collapse(edge_ids)
        if before is not None and substabs(action) != before:
            raise TreeError("collapse changed the vertex substabilizers")
        log.append(edge_ids)


@dataclass(frozen=True)
class SizePolynomial:
    constant: int
    terms: tuple  # sorted (stabilizer order n, edge orbit count) pairs

    def __str__(self):
        parts = [str(self.constant)]
        for n, count in self.terms:
            t = "t" if n == 1 else "t^%d" % (n,)
            parts.append(t if count == 1 else "%d %s" % (count, t))
        return " + ".join(parts)


def size_polynomial(action):
    ne_orbits = action.edge_orbits()
    nv_orbits = action.vertex_orbits()
    counts = {}
    for orb in ne_orbits:
        n = len(action.edge_stabilizer(orb[0]))
        counts[n] = counts.get(n, 0) + 1
    return SizePolynomial(
        len(ne_orbits) - len(nv_orbits), tuple(sorted(counts.items()))
    )


# -- blow-up --------------------------------------------------------------------


def _first_transporter(action, kind, src, dst):
    maps = action.vertex_maps if kind == "v" else action.edge_maps
    for a in action.elements():
        if maps[a][src] == dst:
            return a
    raise TreeError("no transporter found (distinct orbits?)")


def blow_up(action, fibers, attachments=None):
    """Equivariantly replace each vertex by a fiber tree.

    fibers: {vertex id of an orbit representative: (fiber Graph,
    {stabilizer element: {fiber vertex: fiber vertex}})}.  Orbits without an
    entry keep a single-vertex fiber.  attachments: {(edge id of an orbit
    representative, "src" | "dst"): fiber vertex id}; needed whenever the
    endpoint fiber has more than one vertex, and the chosen vertex must be
    fixed by the edge stabilizer.  The result collapses back to the base
    along the fiber edges (asserted)."""
    g = action.graph
    oracle = action.oracle
    attachments = dict(attachments or {})
    vorbits = action.vertex_orbits()
    rep_of_vertex = {}
    for orb in vorbits:
        for v in orb:
            rep_of_vertex[v] = orb[0]
    for vid in fibers:
        vi = g.vindex[vid]
        if rep_of_vertex[vi] != vi:
            raise TreeError(
                "fiber must be assigned to the orbit representative %r"
                % (g.vertices[rep_of_vertex[vi]],)
            )

    single = Graph(["*"], [])
    fiber_tree = {}
    fiber_vact = {}
    for orb in vorbits:
        rep = orb[0]
        spec = fibers.get(g.vertices[rep])
        if spec is None:
            fiber_tree[rep] = single
            fiber_vact[rep] = {a: {"*": "*"} for a in action.vertex_stabilizer(rep)}
            continue
        ftree, fact = spec
        if not is_tree(ftree):
            raise TreeError("fiber of %r is not a tree" % (g.vertices[rep],))
        stab = action.vertex_stabilizer(rep)
        vact = {}
        for a in stab:
            if a == oracle.identity():
                vact[a] = {x: x for x in ftree.vertices}
                continue
            if a not in fact:
                raise TreeError(
                    "fiber action of %r is missing stabilizer element %s"
                    % (g.vertices[rep], a)
                )
            vact[a] = dict(fact[a])
            if sorted(vact[a]) != sorted(ftree.vertices) or sorted(
                vact[a].values()
            ) != sorted(ftree.vertices):
                raise TreeError("fiber action of %r is not a permutation" % (g.vertices[rep],))
        fiber_tree[rep] = ftree
        fiber_vact[rep] = vact

    transporter = {}
    for orb in vorbits:
        for v in orb:
            transporter[v] = _first_transporter(action, "v", orb[0], v)

    def fiber_point(v, x):
        return "%s|%s" % (g.vertices[v], x)

    def act_point(a, v, x):
        """Image of the fiber point (v, x) under a."""
        v2 = action.vertex_maps[a][v]
        rep = rep_of_vertex[v]
        inner = oracle.multiply(
            oracle.invert(transporter[v2]), oracle.multiply(a, transporter[v])
        )
        return v2, fiber_vact[rep][inner][x]

    # attachment points per edge, transported from the orbit representatives
    eorbits = action.edge_orbits()
    attach = {}
    for orb in eorbits:
        rep_k = orb[0]
        rep_id = g.edges[rep_k][0]
        for side, vid in (("src", g.edges[rep_k][1]), ("dst", g.edges[rep_k][2])):
            vi = g.vindex[vid]
            ftree = fiber_tree[rep_of_vertex[vi]]
            key = (rep_id, side)
            if ftree.nv == 1:
                choice = ftree.vertices[0]
                attachments.setdefault(key, choice)
            if key not in attachments:
                raise TreeError(
                    "attachment needed for representative edge %r side %s"
                    % (rep_id, side)
                )
            choice = attachments[key]
            if choice not in ftree.vindex:
                raise TreeError(
                    "attachment %r is not a vertex of the fiber of %r"
                    % (choice, vid)
                )
            # the edge stabilizer must fix the chosen point
            for a in action.edge_stabilizer(rep_k):
                _v2, img = act_point(a, vi, choice)
                if img != choice:
                    raise TreeError(
                        "attachment %r on edge %r is not stabilized (element %s)"
                        % (choice, rep_id, a)
                    )
            for k in orb:
                a = _first_transporter(action, "e", rep_k, k)
                src_v = vi
                v2, x2 = act_point(a, src_v, choice)
                want = g.vindex[g.edges[k][1] if side == "src" else g.edges[k][2]]
                if v2 != want:
                    raise TreeError("edge transport mismatch (internal)")
                attach[(k, side)] = (v2, x2)

    new_vertices = []
    for v in range(g.nv):
        ftree = fiber_tree[rep_of_vertex[v]]
        for x in ftree.vertices:
            new_vertices.append(fiber_point(v, x))
    new_edges = []
    fiber_edge_ids = []
    fiber_edge_meta = {}  # id -> (v, fiber edge id)
    for v in range(g.nv):
        ftree = fiber_tree[rep_of_vertex[v]]
        for (fe, fs, fd) in ftree.edges:
            eid = "%s|%s" % (g.vertices[v], fe)
            new_edges.append((eid, fiber_point(v, fs), fiber_point(v, fd)))
            fiber_edge_ids.append(eid)
            fiber_edge_meta[eid] = (v, fe)
    for k, (e, _s, _d) in enumerate(g.edges):
        sv, sx = attach[(k, "src")]
        dv, dx = attach[(k, "dst")]
        new_edges.append((e, fiber_point(sv, sx), fiber_point(dv, dx)))
    newg = Graph(new_vertices, new_edges)

    vertex_maps = {}
    edge_maps = {}
    for a in action.elements():
        nvm = []
        for v in range(g.nv):
            ftree = fiber_tree[rep_of_vertex[v]]
            for x in ftree.vertices:
                v2, x2 = act_point(a, v, x)
                nvm.append(newg.vindex[fiber_point(v2, x2)])
        nem = []
        for (eid, s, d) in newg.edges:
            if eid in fiber_edge_meta:
                si = nvm[newg.vindex[s]]
                di = nvm[newg.vindex[d]]
                # the image fiber edge is the unique edge on those endpoints
                img = None
                for (e2, s2, d2) in newg.edges:
                    if e2 in fiber_edge_meta and newg.vindex[s2] == si and newg.vindex[d2] == di:
                        img = e2
                        break
                if img is None:
                    raise TreeError(
                        "fiber action is not a tree automorphism at %r" % (eid,)
                    )
                nem.append(newg.eindex[img])
            else:
                nem.append(newg.eindex[g.edges[action.edge_maps[a][g.eindex[eid]]][0]])
        vertex_maps[a] = tuple(nvm)
        edge_maps[a] = tuple(nem)
    out = TreeAction(newg, oracle, vertex_maps, edge_maps)

    # collapsing the fibers must give back the base
    collapsed, vmap = collapse_blocks(newg, fiber_edge_ids)
    if collapsed.nv != g.nv or collapsed.ne != g.ne:
        raise TreeError("fiber collapse does not recover the base (internal)")
    for (e, s, d) in collapsed.edges:
        be = g.edges[g.eindex[e]]
        if s.split("|", 1)[0] != str(be[1]) or d.split("|", 1)[0] != str(be[2]):
            raise TreeError("fiber collapse does not recover the base (internal)")
    return out


# -- word-bounded partial actions ------------------------------------------------


class PartialAction:
    """Per-word partial vertex and edge maps on a tree; None marks images the
    ball evidence cannot determine.  Orbits are reachability classes of the
    defined images, and a vertex counts as fixed only when every generator
    demonstrably fixes it."""

    __slots__ = ("graph", "words", "gen_word_pos", "vertex_images", "edge_images")

    def __init__(self, graph, words, gen_word_pos, vertex_images, edge_images):
        self.graph = graph
        self.words = tuple(words)
        self.gen_word_pos = tuple(gen_word_pos)
        self.vertex_images = tuple(tuple(m) for m in vertex_images)
        self.edge_images = tuple(tuple(m) for m in edge_images)

    def _orbit_blocks(self, images, n):
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for m in images:
            for i in range(n):
                j = m[i]
                if j is None:
                    continue
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        blocks = {}
        for i in range(n):
            blocks.setdefault(find(i), []).append(i)
        return tuple(tuple(blocks[r]) for r in sorted(blocks))

    def vertex_orbits(self):
        return self._orbit_blocks(self.vertex_images, self.graph.nv)

    def edge_orbits(self):
        return self._orbit_blocks(self.edge_images, self.graph.ne)

    def vertex_stabilizer_size(self, vi):
        return sum(1 for m in self.vertex_images if m[vi] == vi)

    def edge_stabilizer_size(self, k):
        return sum(1 for m in self.edge_images if m[k] == k)

    def orbit_max_vertex_stabilizer(self, orbit):
        return max(self.vertex_stabilizer_size(v) for v in orbit)

    def orbit_max_edge_stabilizer(self, orbit):
        return max(self.edge_stabilizer_size(k) for k in orbit)

    def fixed_vertices(self):
        """Vertices every generator maps to themselves (defined images only:
        absence of evidence never counts as fixing)."""
        out = []
        for vi in range(self.graph.nv):
            if all(
                self.vertex_images[w][vi] == vi for w in self.gen_word_pos
            ):
                out.append(self.graph.vertices[vi])
        return tuple(out)

    def collapse(self, edge_ids):
        """Collapse an orbit-closed edge set, inducing partial maps on the
        blocks; contradictory member images raise."""
        g = self.graph
        idxs = set()
        for e in edge_ids:
            if e not in g.eindex:
                raise TreeError("edge %r not in tree" % (e,))
            idxs.add(g.eindex[e])
        for m in self.edge_images:
            for k in idxs:
                if m[k] is not None and m[k] not in idxs:
                    raise TreeError("collapsed edge set is not closed under the maps")
        newg, vmap = collapse_blocks(g, [g.edges[k][0] for k in idxs])
        old_to_new = [newg.vindex[vmap[v]] for v in g.vertices]
        kept = [k for k in range(g.ne) if k not in idxs]
        kept_pos = {k: p for p, k in enumerate(kept)}
        new_vimgs = []
        new_eimgs = []
        for w in range(len(self.words)):
            vm = self.vertex_images[w]
            nvm = [None] * newg.nv
            for x in range(g.nv):
                if vm[x] is None:
                    continue
                src, dst = old_to_new[x], old_to_new[vm[x]]
                if nvm[src] is None:
                    nvm[src] = dst
                elif nvm[src] != dst:
                    raise TreeError(
                        "collapse transport contradicts itself at %r"
                        % (newg.vertices[src],)
                    )
            new_vimgs.append(tuple(nvm))
            em = self.edge_images[w]
            new_eimgs.append(
                tuple(
                    kept_pos[em[k]] if em[k] is not None else None for k in kept
                )
            )
        return PartialAction(newg, self.words, self.gen_word_pos, new_vimgs, new_eimgs)


def build_partial_action(stree, words):
    """Word-bounded action evidence on a paired tree over a Cayley ball.
    words: (element, word string) pairs, the identity included.  Cut images
    are exact translations when representable; vertex images are transported
    through incident edges and must agree across them."""
    system = stree.system
    if not system.cuts:
        raise TreeError("partial actions need a nonempty system")
    bv = system.universe
    if not hasattr(bv, "oracle"):
        raise TreeError("partial actions need a ball universe")
    oracle = bv.oracle
    g = stree.graph
    n = len(system.cuts)
    bits_to_idx = {c.bits: i for i, c in enumerate(system.cuts)}

    gen_word_pos = []
    for _name, gel in oracle.generators():
        pos = None
        for i, (el, _w) in enumerate(words):
            if el == gel:
                pos = i
                break
        if pos is None:
            raise TreeError("words must include every generator")
        gen_word_pos.append(pos)

    edge_images = []
    vertex_images = []
    for el, _word in words:
        emap = []
        for i, c in enumerate(system.cuts):
            try:
                img = act_left_cut(bv, el, c)
            except CutError:
                emap.append(None)
                continue
            emap.append(bits_to_idx.get(img.bits))
        # transport each vertex through its incident edges
        vmap = []
        for vi in range(g.nv):
            cand = None
            for (other, k, direction) in g.darts[vi]:
                j = emap[k]
                if j is None:
                    continue
                _e2, s2, d2 = g.edges[j]
                img_v = g.vindex[s2] if direction == 1 else g.vindex[d2]
                if cand is None:
                    cand = img_v
                elif cand != img_v:
                    raise TreeError(
                        "transport contradicts itself at tree vertex %r"
                        % (g.vertices[vi],)
                    )
            vmap.append(cand)
        edge_images.append(emap)
        vertex_images.append(vmap)
    return PartialAction(g, words, gen_word_pos, vertex_images, edge_images)


# -- rendering -------------------------------------------------------------------


def _dot_quote(s):
    return '"%s"' % (str(s).replace('"', '\\"'),)


def graph_dot(graph, vertex_labels=None, edge_labels=None, name="cutforge"):
    lines = ["graph %s {" % (name,)]
    for v in graph.vertices:
        lab = vertex_labels.get(v) if vertex_labels else None
        if lab is None:
            lines.append("  %s;" % (_dot_quote(v),))
        else:
            lines.append("  %s [label=%s];" % (_dot_quote(v), _dot_quote(lab)))
    for (e, s, d) in graph.edges:
        lab = edge_labels.get(e) if edge_labels else e
        lines.append(
            "  %s -- %s [label=%s];" % (_dot_quote(s), _dot_quote(d), _dot_quote(lab))
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_dot(stree):
    vlabels = {
        vid: "{%s}" % (",".join(stree.label_names(lab)),)
        for vid, lab in zip(stree.graph.vertices, stree.labels)
    }
    elabels = {
        e: _cut_name(stree.system, stree.edge_cut_index[e])
        for (e, _s, _d) in stree.graph.edges
    }
    return graph_dot(stree.graph, vlabels, elabels)


def tree_json_dict(stree):
    return {
        "mode": stree.mode,
        "vertices": [
            {"id": vid, "label": list(stree.label_names(lab))}
            for vid, lab in zip(stree.graph.vertices, stree.labels)
        ],
        "edges": [
            {
                "id": e,
                "cut": _cut_name(stree.system, stree.edge_cut_index[e]),
                "src": s,
                "dst": d,
            }
            for (e, s, d) in stree.graph.edges
        ],
    }
