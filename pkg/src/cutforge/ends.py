"""Ends from ball data, and the splitting pipeline.

The end count of a finitely generated group is approximated exactly on the
built-in families by counting residual components of a large ball after the
edges of a smaller ball are deleted; a component is flagged infinite when it
reaches the outer sphere.  A balanced cut is one infinite side of a small
central edge set.  The pipeline pushes such a cut through its word orbit,
the measure sieve, and the paired tree, then collapses partial edge orbits
one at a time until the remaining evidence first pins down a fixed vertex;
the orbit collapsed at that stage is the edge set of the reported one-orbit
tree.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import trees
from .cuts import cut_from_members, full_mask, orbit_cuts
from .graphs import components
from .groups import ball
from .series import certified_length
from .sieve import select_nested_generating

DEFAULT_RADIUS = 6
DEFAULT_WORD_BOUND = 2


class EndsError(ValueError):
    pass


@dataclass(frozen=True)
class EndsProfile:
    radii: tuple
    counts: tuple
    classification: str  # zero | one | two | infinitely_many | undetermined
    witness: object  # growth window for infinitely_many, else None


def _growth_window(radii, counts):
    for i in range(len(counts) - 2):
        if counts[i] < counts[i + 1] < counts[i + 2]:
            return (radii[i], radii[i + 1], radii[i + 2])
    return None


def ends_profile(oracle, rmax=DEFAULT_RADIUS):
    """Infinite-component counts of ball(rmax) minus the edges of ball(R),
    for R = 1..rmax-1, with the sphere-touching rule."""
    if rmax < 2:
        raise EndsError("rmax must be at least 2")
    bv = ball(oracle, rmax)
    g = bv.graph
    sphere_ids = tuple(g.vertices[i] for i in sorted(bv.sphere))
    radii = tuple(range(1, rmax))
    counts = []
    for r in radii:
        removed = [
            e
            for (e, s, d) in g.edges
            if bv.dist[g.vindex[s]] <= r and bv.dist[g.vindex[d]] <= r
        ]
        part = components(g, removed=removed, boundary=sphere_ids)
        counts.append(sum(1 for f in part.touches_boundary if f))
    counts = tuple(counts)
    if bv.exhausted:
        cls, witness = "zero", None
    elif all(c == 1 for c in counts):
        cls, witness = "one", None
    elif all(c == 2 for c in counts):
        cls, witness = "two", None
    else:
        witness = _growth_window(radii, counts)
        cls = "infinitely_many" if witness is not None else "undetermined"
    return EndsProfile(radii, counts, cls, witness)


def balanced_cut(oracle, radius=DEFAULT_RADIUS):
    """One infinite side (plus enclosed finite components) of a small central
    edge set: per-generator parallel classes at the identity are tried first,
    then the edge sets of balls 1 and 2."""
    bv = ball(oracle, radius)
    if bv.exhausted:
        raise EndsError("no balanced cut: the group is finite")
    g = bv.graph
    sphere_ids = tuple(g.vertices[i] for i in sorted(bv.sphere))
    candidates = []
    ident_id = g.vertices[0]
    for _name, gel in oracle.generators():
        target_id = g.vertices[bv.el_to_idx[gel]]
        cls = [
            e
            for (e, s, d) in g.edges
            if {s, d} == {ident_id, target_id}
        ]
        candidates.append(cls)
    for r in (1, 2):
        if r > radius - 1:
            break
        candidates.append(
            [
                e
                for (e, s, d) in g.edges
                if bv.dist[g.vindex[s]] <= r and bv.dist[g.vindex[d]] <= r
            ]
        )
    for cls in candidates:
        if not cls:
            continue
        part = components(g, removed=cls, boundary=sphere_ids)
        flagged = [
            b for b, f in zip(part.blocks, part.touches_boundary) if f
        ]
        if len(flagged) < 2:
            continue
        members = set(flagged[0])
        for b, f in zip(part.blocks, part.touches_boundary):
            if not f:
                members.update(b)
        cut = cut_from_members(bv, members, name="A")
        full = full_mask(bv)
        sm = bv.sphere_mask()
        if not (cut.bits & sm) or not ((full ^ cut.bits) & sm):
            raise EndsError("candidate side lost its sphere contact (internal)")
        return cut
    raise EndsError("no balanced cut")


@dataclass(frozen=True)
class SplittingReport:
    status: str  # split | undetermined
    cut_name: str
    cut_size: int
    orbit_words: tuple
    sieve_elements: int
    sieve_irreducible: int
    sieve_undecided: int
    kept: tuple
    removed: tuple
    tree_vertices: int
    tree_edges: int
    edge_orbit_count: int
    vertex_orbit_count: int
    edge_stabilizer_orders: tuple  # full tree, word-visible max per orbit
    collapse_log: tuple  # per stage, the cut names of the collapsed orbit
    stage: object  # first fixing stage (1-based), or None
    final_edge_orbit_count: object
    final_vertex_orbit_count: object
    final_vertex_stabilizer_orders: tuple
    final_edge_stabilizer_order: object
    certificate: str
    diagnostics: object
    stree: object
    final_partial: object

    def lines(self):
        out = [
            "cut %s (%d vertices), orbit of %d translates"
            % (self.cut_name, self.cut_size, len(self.orbit_words)),
            "sieve: %d algebra elements, %d irreducible, %d undecided"
            % (self.sieve_elements, self.sieve_irreducible, self.sieve_undecided),
            "system kept %d cuts (%d dropped)" % (len(self.kept), len(self.removed)),
            "tree: %d vertices, %d edges, %d edge orbits, %d vertex orbits"
            % (
                self.tree_vertices,
                self.tree_edges,
                self.edge_orbit_count,
                self.vertex_orbit_count,
            ),
        ]
        for i, names in enumerate(self.collapse_log, start=1):
            out.append("stage %d: collapse {%s}" % (i, ", ".join(names)))
        if self.status == "split":
            out.append(
                "final tree: 1 edge orbit, %d vertex orbits, vertex stabilizers "
                "%s, edge stabilizer %d"
                % (
                    self.final_vertex_orbit_count,
                    list(self.final_vertex_stabilizer_orders),
                    self.final_edge_stabilizer_order,
                )
            )
        else:
            out.append("undetermined: %s" % (self.diagnostics,))
        out.append(self.certificate)
        return out


def splitting_pipeline(
    oracle,
    cut=None,
    words=DEFAULT_WORD_BOUND,
    radius=DEFAULT_RADIUS,
    L=None,
):
    """Cut orbit -> sieve -> paired tree -> staged orbit collapse.

    Stops at the first stage whose cumulative collapse leaves a vertex fixed
    by every generator; the report's final tree keeps exactly the orbit
    collapsed at that stage.  One-ended and finite groups are refused by
    balanced_cut when no cut is supplied."""
    if cut is None:
        cut = balanced_cut(oracle, radius)
    bv = cut.universe
    if not hasattr(bv, "oracle"):
        raise EndsError("the pipeline needs a cut over a Cayley ball")
    if L is None:
        L = certified_length(bv)
    wlist = bv.oracle.words_up_to(words)
    orb = orbit_cuts(bv, cut, wlist)
    selection = select_nested_generating(orb.cuts, L=L, action=wlist)
    report = selection.report
    stree = trees.paired_tree(selection.system)
    paction = trees.build_partial_action(stree, wlist)
    eorbs = paction.edge_orbits()
    vorbs = paction.vertex_orbits()
    g = stree.graph

    def orbit_names(block):
        return tuple(
            trees._cut_name(stree.system, stree.edge_cut_index[g.edges[k][0]])
            for k in block
        )

    certificate = "ball-verified(R=%d, W=%d, L=%d)" % (bv.radius, words, L)
    common = dict(
        cut_name=cut.name or "A",
        cut_size=cut.bits.bit_count(),
        orbit_words=orb.words,
        sieve_elements=len(report.elements),
        sieve_irreducible=len(report.irreducible),
        sieve_undecided=report.undecided_count,
        kept=selection.kept,
        removed=selection.removed,
        tree_vertices=g.nv,
        tree_edges=g.ne,
        edge_orbit_count=len(eorbs),
        vertex_orbit_count=len(vorbs),
        edge_stabilizer_orders=tuple(
            paction.orbit_max_edge_stabilizer(b) for b in eorbs
        ),
        certificate=certificate,
        stree=stree,
    )

    stage = None
    acc = []
    for m, block in enumerate(eorbs, start=1):
        acc.extend(block)
        collapsed = paction.collapse([g.edges[k][0] for k in acc])
        if collapsed.fixed_vertices():
            stage = m
            break
    if stage is None:
        return SplittingReport(
            status="undetermined",
            collapse_log=tuple(orbit_names(b) for b in eorbs),
            stage=None,
            final_edge_orbit_count=None,
            final_vertex_orbit_count=None,
            final_vertex_stabilizer_orders=(),
            final_edge_stabilizer_order=None,
            diagnostics="no vertex is fixed by all generators at any "
            "collapse stage within the ball evidence",
            final_partial=None,
            **common,
        )

    drop = [
        g.edges[k][0]
        for i, block in enumerate(eorbs)
        if i != stage - 1
        for k in block
    ]
    final = paction.collapse(drop)
    f_eorbs = final.edge_orbits()
    if len(f_eorbs) != 1:
        raise EndsError("final tree has %d edge orbits, expected 1" % (len(f_eorbs),))
    if final.fixed_vertices():
        raise EndsError("final tree already fixes a vertex (internal)")
    f_vorbs = final.vertex_orbits()
    return SplittingReport(
        status="split",
        collapse_log=tuple(orbit_names(b) for b in eorbs[:stage]),
        stage=stage,
        final_edge_orbit_count=1,
        final_vertex_orbit_count=len(f_vorbs),
        final_vertex_stabilizer_orders=tuple(
            final.orbit_max_vertex_stabilizer(b) for b in f_vorbs
        ),
        final_edge_stabilizer_order=final.orbit_max_edge_stabilizer(f_eorbs[0]),
        diagnostics=None,
        final_partial=final,
        **common,
    )
