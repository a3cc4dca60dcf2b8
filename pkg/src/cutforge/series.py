"""Path-count series over a finite graph, truncated at degree L.

For a vertex set A, coefficient c_l is the number of length-l walks that
begin in A and end outside A (walks may repeat vertices and edges; each
edge is traversable in both directions, so a loop contributes two darts).
The odd-crossing variant counts walks crossing a given edge set an odd
number of times, and the corner variant counts walks from one set into
another.

Two engines compute the same coefficients: a transfer system (exact big
integers, linear in L) and a brute-force walk enumeration.  They are kept
separate on purpose; the test suites require them to agree.

Comparison is lexicographic.  A strict verdict at some pivot l <= L is
exact regardless of truncation; equality through L is certified only when
L >= 4|V| + 1, because the parity-augmented transfer system has <= 2|V|
states, so each coefficient sequence satisfies a linear recurrence of
order <= 2|V| and two such sequences agreeing on the first 4|V| + 1 terms
agree everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import bits_of_members, coboundary_indices, full_mask, universe_graph, Cut

DEFAULT_BALL_L = 16


class SeriesError(ValueError):
    pass


def certified_length(universe):
    return 4 * universe_graph(universe).nv + 1


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    provenance: str
    certified: bool

    @property
    def L(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __str__(self):
        parts = []
        for l, c in enumerate(self.coeffs):
            if l == 0:
                parts.append(str(c))
            elif l == 1:
                parts.append("%d t" % (c,))
            else:
                parts.append("%d t^%d" % (c, l))
        return " + ".join(parts)

    def json_coeffs(self):
        return [str(c) for c in self.coeffs]


@dataclass(frozen=True)
class SeriesOrdering:
    outcome: str  # "less" | "greater" | "equal_up_to" | "certified_equal"
    pivot: object  # first differing degree, or None
    upto: int


def compare(s1, s2):
    if s1.L != s2.L:
        raise SeriesError("cannot compare series of different truncation")
    for l in range(s1.L + 1):
        if s1.coeffs[l] != s2.coeffs[l]:
            outcome = "less" if s1.coeffs[l] < s2.coeffs[l] else "greater"
            return SeriesOrdering(outcome, l, s1.L)
    if s1.certified and s2.certified:
        return SeriesOrdering("certified_equal", None, s1.L)
    return SeriesOrdering("equal_up_to", None, s1.L)


def _as_bits(universe, spec_set):
    if isinstance(spec_set, Cut):
        return spec_set.bits
    if isinstance(spec_set, int):
        if spec_set < 0 or spec_set >> universe_graph(universe).nv:
            raise SeriesError("bit mask out of range")
        return spec_set
    return bits_of_members(universe, spec_set)


def _edge_index_set(universe, edge_ids):
    g = universe_graph(universe)
    out = set()
    for e in edge_ids:
        if e not in g.eindex:
            raise SeriesError("edge %r not in universe" % (e,))
        out.add(g.eindex[e])
    return out


def _normalize_spec(universe, spec):
    kind = spec[0]
    if kind == "measure":
        return ("measure", _as_bits(universe, spec[1]))
    if kind == "odd":
        return ("odd", frozenset(_edge_index_set(universe, spec[1])))
    if kind == "corner":
        return ("corner", _as_bits(universe, spec[1]), _as_bits(universe, spec[2]))
    raise SeriesError("unknown series spec kind %r" % (kind,))


# -- engine 1: transfer system ------------------------------------------------


def _adjacency_rows(g):
    rows = [[0] * g.nv for _ in range(g.nv)]
    for (_e, s, d) in g.edges:
        si, di = g.vindex[s], g.vindex[d]
        rows[si][di] += 1
        rows[di][si] += 1
    return rows


def _row_step(rows, vec):
    n = len(rows)
    out = [0] * n
    for i, x in enumerate(vec):
        if x:
            row = rows[i]
            for j in range(n):
                if row[j]:
                    out[j] += x * row[j]
    return out


def transfer_counts(universe, spec, L):
    """Coefficients 0..L via a transfer system: plain adjacency iteration
    for set-to-set walks, a parity-doubled state space for odd crossings."""
    if L < 0:
        raise SeriesError("L must be >= 0")
    g = universe_graph(universe)
    kind_spec = _normalize_spec(universe, spec)
    certified = L >= certified_length(universe)
    kind = kind_spec[0]
    if kind in ("measure", "corner"):
        if kind == "measure":
            start_bits = kind_spec[1]
            end_bits = full_mask(universe) ^ kind_spec[1]
        else:
            cbits, dbits = kind_spec[1], kind_spec[2]
            full = full_mask(universe)
            start_bits = cbits & (full ^ dbits)
            end_bits = (full ^ cbits) & dbits
        rows = _adjacency_rows(g)
        vec = [(start_bits >> i) & 1 for i in range(g.nv)]
        coeffs = []
        for l in range(L + 1):
            coeffs.append(sum(vec[i] for i in range(g.nv) if (end_bits >> i) & 1))
            if l < L:
                vec = _row_step(rows, vec)
        return TruncatedSeries(tuple(coeffs), "transfer", certified)
    # odd crossings of an edge set: states (vertex, parity)
    crossing = kind_spec[1]
    n = g.nv
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for k, (_e, s, d) in enumerate(g.edges):
        si, di = g.vindex[s], g.vindex[d]
        flip = 1 if k in crossing else 0
        for (a, b) in ((si, di), (di, si)):
            for p in (0, 1):
                rows[a + p * n][b + ((p + flip) % 2) * n] += 1
    vec = [0] * (2 * n)
    for i in range(n):
        vec[i] = 1
    coeffs = []
    for l in range(L + 1):
        coeffs.append(sum(vec[n:]))
        if l < L:
            vec = _row_step(rows, vec)
    return TruncatedSeries(tuple(coeffs), "transfer", certified)


# -- engine 2: walk enumeration -----------------------------------------------


def enumeration_counts(universe, spec, L):
    """Same coefficients by brute-force walk enumeration (exponential in L;
    the independent oracle for the transfer engine)."""
    if L < 0:
        raise SeriesError("L must be >= 0")
    g = universe_graph(universe)
    kind_spec = _normalize_spec(universe, spec)
    certified = L >= certified_length(universe)
    kind = kind_spec[0]
    counts = [0] * (L + 1)
    if kind in ("measure", "corner"):
        if kind == "measure":
            start_bits = kind_spec[1]
            end_bits = full_mask(universe) ^ kind_spec[1]
        else:
            cbits, dbits = kind_spec[1], kind_spec[2]
            full = full_mask(universe)
            start_bits = cbits & (full ^ dbits)
            end_bits = (full ^ cbits) & dbits

        def rec(u, depth):
            if (end_bits >> u) & 1:
                counts[depth] += 1
            if depth == L:
                return
            for (w, _k, _dir) in g.darts[u]:
                rec(w, depth + 1)

        for v0 in range(g.nv):
            if (start_bits >> v0) & 1:
                rec(v0, 0)
    else:
        crossing = kind_spec[1]

        def rec(u, depth, parity):
            if parity:
                counts[depth] += 1
            if depth == L:
                return
            for (w, k, _dir) in g.darts[u]:
                rec(w, depth + 1, parity ^ (1 if k in crossing else 0))

        for v0 in range(g.nv):
            rec(v0, 0, 0)
    return TruncatedSeries(tuple(counts), "enumeration", certified)


# -- named series -------------------------------------------------------------


def measure(universe, a, L=None):
    """Series of walks from a set into its complement; c_0 is always 0."""
    if L is None:
        L = certified_length(universe)
    return transfer_counts(universe, ("measure", _as_bits(universe, a)), L)


def odd_crossing_series(universe, edge_ids, L=None):
    if L is None:
        L = certified_length(universe)
    return transfer_counts(universe, ("odd", tuple(edge_ids)), L)


def corner_series(universe, a, b, L=None):
    """The four corner series of an ordered cut pair (A, B):
    a* = walks A&B -> ~A&B, b* = walks A&B -> ~A&~B,
    c* = walks A&~B -> ~A,  d* = walks A&~B -> A&B.
    Coefficientwise (a* + b*) + c* equals the measure of A."""
    if L is None:
        L = certified_length(universe)
    abits = _as_bits(universe, a)
    bbits = _as_bits(universe, b)
    full = full_mask(universe)
    corner_ab = abits & bbits
    corner_ab_c = abits & (full ^ bbits)
    corner_a_c_b = (full ^ abits) & bbits
    corner_a_c_b_c = (full ^ abits) & (full ^ bbits)
    pairs = (
        (corner_ab, corner_a_c_b),
        (corner_ab, corner_a_c_b_c),
        (corner_ab_c, full ^ abits),
        (corner_ab_c, corner_ab),
    )
    return tuple(_set_to_set_series(universe, s, e, L) for (s, e) in pairs)


def _set_to_set_series(universe, start_bits, end_bits, L):
    g = universe_graph(universe)
    rows = _adjacency_rows(g)
    vec = [(start_bits >> i) & 1 for i in range(g.nv)]
    coeffs = []
    for l in range(L + 1):
        coeffs.append(sum(vec[i] for i in range(g.nv) if (end_bits >> i) & 1))
        if l < L:
            vec = _row_step(rows, vec)
    return TruncatedSeries(
        tuple(coeffs), "transfer", L >= certified_length(universe)
    )


def series_sum(*series):
    L = series[0].L
    for s in series[1:]:
        if s.L != L:
            raise SeriesError("cannot add series of different truncation")
    coeffs = tuple(sum(s.coeffs[l] for s in series) for l in range(L + 1))
    return TruncatedSeries(
        coeffs, "sum", all(s.certified for s in series)
    )


def series_scale(s, k):
    return TruncatedSeries(tuple(k * c for c in s.coeffs), s.provenance, s.certified)


# -- crossing distance ---------------------------------------------------------


def crossing_distance(universe, r_edges, s_edges, cap=None):
    """Minimum length of a walk that crosses both edge sets at least once.
    BFS over (vertex, crossed R?, crossed S?) states."""
    g = universe_graph(universe)
    r_idx = _edge_index_set(universe, r_edges)
    s_idx = _edge_index_set(universe, s_edges)
    if cap is None:
        cap = 2 * g.nv + 2
    seen = set()
    frontier = [(v, False, False) for v in range(g.nv)]
    seen.update(frontier)
    for depth in range(1, cap + 1):
        nxt = []
        for (u, cr, cs) in frontier:
            for (w, k, _dir) in g.darts[u]:
                state = (w, cr or k in r_idx, cs or k in s_idx)
                if state[1] and state[2]:
                    return depth
                if state not in seen:
                    seen.add(state)
                    nxt.append(state)
        frontier = nxt
        if not frontier:
            break
    raise SeriesError("no walk crosses both edge sets within cap %d" % (cap,))


def edge_set_distance(universe, r_edges, s_edges):
    """Graph distance between two edge sets: least vertex distance between
    an endpoint of one and an endpoint of the other."""
    g = universe_graph(universe)
    r_idx = _edge_index_set(universe, r_edges)
    s_idx = _edge_index_set(universe, s_edges)
    starts = set()
    for k in r_idx:
        _e, s, d = g.edges[k]
        starts.add(g.vindex[s])
        starts.add(g.vindex[d])
    targets = set()
    for k in s_idx:
        _e, s, d = g.edges[k]
        targets.add(g.vindex[s])
        targets.add(g.vindex[d])
    if starts & targets:
        return 0
    dist = {v: 0 for v in starts}
    frontier = sorted(starts)
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for (w, _k, _dir) in g.darts[u]:
                if w not in dist:
                    dist[w] = d
                    if w in targets:
                        return d
                    nxt.append(w)
        frontier = nxt
    raise SeriesError("edge sets lie in different components")


# -- atom pair tables (shared with the sieve) ----------------------------------


def atom_pair_table(universe, atoms, L):
    """P[l][i][j] = number of length-l walks from atom i into atom j.
    Lets callers assemble the series of every union of atoms by addition."""
    g = universe_graph(universe)
    rows = _adjacency_rows(g)
    a = len(atoms)
    ind = [[1 if (atoms[i] >> v) & 1 else 0 for v in range(g.nv)] for i in range(a)]
    vecs = [list(ind[i]) for i in range(a)]
    table = []
    for l in range(L + 1):
        level = []
        for i in range(a):
            vi = vecs[i]
            level.append(
                tuple(
                    sum(vi[v] for v in range(g.nv) if (atoms[j] >> v) & 1)
                    for j in range(a)
                )
            )
        table.append(tuple(level))
        if l < L:
            vecs = [_row_step(rows, v) for v in vecs]
    return tuple(table)
