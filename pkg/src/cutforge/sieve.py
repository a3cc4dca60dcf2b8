"""Measure sieve over a finite cut algebra.

An element C of the algebra is reducible when it lies in the Boolean
subalgebra generated by the elements of strictly smaller measure, where
measure is the path-count series under lexicographic order.  On a
connected universe the irreducible elements form a complement-stable,
pairwise nested family that still generates the whole algebra; that family
is what the tree builders consume.

Truncation discipline: a strict series comparison with a pivot <= L is
exact at any L, so every label handed out below the certified length is
still sound; "undecided" is reserved for elements whose verdict would flip
if some truncation-tied element turned out to be strictly smaller.  An
element's own complement is never such a tie (the measure of a set and its
complement agree identically), which keeps the undecided band narrow.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import (
    Cut,
    CutError,
    act_left_cut,
    boolean_closure,
    full_mask,
    is_nested_bits,
    universe_graph,
)
from .graphs import components
from .series import atom_pair_table, certified_length
from . import trees

MAX_SIEVE_ATOMS = 12


class SieveError(ValueError):
    pass


@dataclass(frozen=True)
class SieveElement:
    mask: int  # atom-subset index
    bits: int  # vertex bit mask
    series: tuple
    status: str  # "reducible" | "irreducible" | "undecided"


@dataclass(frozen=True)
class SieveReport:
    algebra: object
    L: int
    certified: bool
    elements: tuple  # SieveElement per atom subset, in mask order
    irreducible: tuple  # the irreducible SieveElements, by (series, mask)
    undecided_count: int
    complement_stable: bool
    nested: bool
    generates: bool

    def status_of(self, mask):
        return self.elements[mask].status


def _refine(blocks, masks):
    for m in masks:
        nxt = []
        for b in blocks:
            inb = b & m
            outb = b & ~m
            if inb:
                nxt.append(inb)
            if outb:
                nxt.append(outb)
        blocks = nxt
    return blocks


def _is_union(m, blocks):
    for b in blocks:
        x = m & b
        if x and x != b:
            return False
    return True


def _series_by_mask(table, a, L):
    """Series of every atom union, assembled incrementally: adding atom k to
    a set gains the walks k -> outside and loses the walks inside -> k."""
    out = [None] * (1 << a)
    out[0] = (0,) * (L + 1)
    for m in range(1, 1 << a):
        k = (m & -m).bit_length() - 1
        prev = m ^ (1 << k)
        base = out[prev]
        coeffs = []
        for l in range(L + 1):
            row = table[l][k]
            gain = 0
            for j in range(a):
                if not (m >> j) & 1:
                    gain += row[j]
            loss = 0
            pm = prev
            while pm:
                i = (pm & -pm).bit_length() - 1
                loss += table[l][i][k]
                pm &= pm - 1
            coeffs.append(base[l] + gain - loss)
        out[m] = tuple(coeffs)
    return out


def classify(algebra, L=None):
    universe = algebra.universe
    g = universe_graph(universe)
    if len(components(g).blocks) != 1:
        raise SieveError("measure sieve needs a connected universe")
    a = algebra.n_atoms
    if a > MAX_SIEVE_ATOMS:
        raise SieveError(
            "algebra has %d atoms; sieve cap is %d" % (a, MAX_SIEVE_ATOMS)
        )
    lstar = certified_length(universe)
    if L is None:
        L = lstar
    if L < 1:
        raise SieveError("L must be >= 1")
    certified = L >= lstar
    table = atom_pair_table(universe, algebra.atoms, L)
    series = _series_by_mask(table, a, L)
    full = (1 << a) - 1

    order = sorted(range(1 << a), key=lambda m: (series[m], m))
    groups = []
    for m in order:
        if groups and series[groups[-1][0]] == series[m]:
            groups[-1].append(m)
        else:
            groups.append([m])

    status = [None] * (1 << a)
    blocks = [full] if full else []
    for group in groups:
        for m in group:
            red_min = _is_union(m, blocks)
            if certified or red_min:
                # membership in the strictly-smaller closure is exact at any L
                status[m] = "reducible" if red_min else "irreducible"
                continue
            ties = [d for d in group if d != m and d != (full ^ m)]
            if ties and _is_union(m, _refine(blocks, ties)):
                status[m] = "undecided"
            else:
                status[m] = "irreducible"
        blocks = _refine(blocks, group)

    elements = tuple(
        SieveElement(m, algebra.element_bits(m), series[m], status[m])
        for m in range(1 << a)
    )
    irr = tuple(
        elements[m]
        for m in sorted(
            (m for m in range(1 << a) if status[m] == "irreducible"),
            key=lambda m: (series[m], m),
        )
    )
    undecided = sum(1 for s in status if s == "undecided")
    comp_stable = all(status[m] == status[full ^ m] for m in range(1 << a))
    nested = True
    fullv = full_mask(universe)
    for i in range(len(irr)):
        for j in range(i + 1, len(irr)):
            if not is_nested_bits(fullv, irr[i].bits, irr[j].bits):
                nested = False
                break
        if not nested:
            break
    generates = all(
        b.bit_count() == 1 for b in _refine([full], [e.mask for e in irr])
    ) if full else True
    return SieveReport(
        algebra,
        L,
        certified,
        elements,
        irr,
        undecided,
        comp_stable,
        nested,
        generates,
    )


def _paired_cuts(report):
    """Irreducible elements as named Cuts: complement pairs c0/~c0, c1/~c1,
    ... in (series, mask) order, the smaller atom mask of a pair unmarked."""
    algebra = report.algebra
    universe = algebra.universe
    full = (1 << algebra.n_atoms) - 1
    seen = {}
    cuts = []
    for el in report.irreducible:
        if el.mask in seen:
            continue
        label = "c%d" % (len(seen) // 2,)
        rep, other = el.mask, full ^ el.mask
        if other < rep:
            rep, other = other, rep
        seen[rep] = label
        seen[other] = "~" + label
        for m in (rep, other):
            cuts.append(Cut(universe, algebra.element_bits(m), seen[m]))
    return tuple(cuts)


def irreducible_family(cuts, L=None):
    """Sieve the closure of a cut family and return (report, irreducible
    cuts).  The guarantees of the sieve (complement-stable, nested,
    regenerates the algebra) are verified and enforced, not assumed."""
    algebra = boolean_closure(list(cuts))
    report = classify(algebra, L=L)
    if report.undecided_count:
        raise SieveError(
            "%d elements undecided at L=%d; raise L toward %d"
            % (report.undecided_count, report.L, certified_length(algebra.universe))
        )
    if not report.complement_stable:
        raise SieveError("irreducibility is not complement-stable (internal)")
    if not report.nested:
        raise SieveError("irreducible family is not pairwise nested")
    if not report.generates:
        raise SieveError("irreducible family does not regenerate the algebra")
    return report, _paired_cuts(report)


@dataclass(frozen=True)
class Selection:
    system: object  # trees.NestedSystem
    report: SieveReport
    kept: tuple  # Cuts
    removed: tuple  # names of cuts dropped by the greedy pass, in drop order


def select_nested_generating(cuts, L=None, action=None):
    """Thin the irreducible family down to a nested system that still
    generates every input cut.

    action: optional (element, word) pairs; removal then only drops whole
    classes closed under complementation and the partial left action (an
    image counts when it is representable and lands in the family).  The
    greedy pass visits classes by descending measure, then first-appearance
    order, and keeps a class whenever dropping it would lose some input cut.
    """
    cuts = list(cuts)
    report, irr = irreducible_family(cuts, L=L)
    algebra = report.algebra
    universe = algebra.universe
    full = (1 << algebra.n_atoms) - 1
    masks = [algebra.decompose(c.bits) for c in irr]
    pos = {m: i for i, m in enumerate(masks)}

    parent = list(range(len(irr)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for i, m in enumerate(masks):
        union(i, pos[full ^ m])
    if action:
        if not hasattr(universe, "oracle"):
            raise SieveError("action data needs a ball universe")
        for el, _word in action:
            for i, c in enumerate(irr):
                try:
                    img = act_left_cut(universe, el, c)
                except CutError:
                    continue
                mm = algebra.decompose(img.bits)
                if mm in pos:
                    union(i, pos[mm])

    classes = {}
    for i in range(len(irr)):
        classes.setdefault(find(i), []).append(i)
    targets = [algebra.decompose(c.bits) for c in cuts]

    def covers(kept_indices):
        blocks = _refine([full], [masks[i] for i in kept_indices])
        return all(_is_union(t, blocks) for t in targets)

    order = sorted(
        classes.values(),
        key=lambda idxs: (
            tuple(-c for c in max(report.elements[masks[i]].series for i in idxs)),
            min(idxs),
        ),
    )
    kept = set(range(len(irr)))
    removed = []
    for idxs in order:
        trial = kept.difference(idxs)
        if covers(trial):
            kept = trial
            removed.extend(irr[i].name for i in idxs)
    kept_cuts = tuple(irr[i] for i in sorted(kept))
    system = trees.verify_system(kept_cuts)
    if not system.valid:
        raise SieveError(
            "selected family fails system flags: %s" % (system.failures(),)
        )
    return Selection(system, report, kept_cuts, tuple(removed))
