"""Group oracles and Cayley-graph balls.

An oracle answers identity / multiply / invert and owns a fixed generating
tuple.  Finite kinds (multiplication table, permutation generators) know
their full element list; the lazy kinds (Z^d, free, free products of finite
cyclics) work with canonical normal forms and are only ever observed
through balls of finite radius.

Cayley edges are pairs (g, s) with s a generator, drawn g -> gs.  A ball of
radius R carries every edge with both endpoints at distance <= R, plus the
breadth-first layering that certifies those distances.
"""

from __future__ import annotations

import os

from .graphs import Graph

DEFAULT_VERTEX_CAP = 200_000
CAP_ENV_VAR = "CUTFORGE_CAP_VERTICES"


class GroupError(ValueError):
    pass


def _vertex_cap(explicit=None):
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(CAP_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_VERTEX_CAP


class GroupOracle:
    """Base oracle: subclasses provide identity/multiply/invert/el_str."""

    kind = None
    finite_kind = False

    def generators(self):
        """Tuple of (name, element).  Fixed canonical order."""
        return self._gens

    def identity(self):
        raise NotImplementedError

    def multiply(self, a, b):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def el_str(self, a):
        raise NotImplementedError

    def words_up_to(self, max_len):
        """Deduplicated (element, word string) pairs for all words over the
        generators and their inverses of length <= max_len, breadth first.
        The word kept per element is the first one found."""
        e = self.identity()
        seen = {e: ""}
        order = [e]
        frontier = [e]
        letters = []
        for name, g in self.generators():
            letters.append((name, g))
            gi = self.invert(g)
            if gi != g:
                letters.append((name + "^-1", gi))
        for _ in range(max_len):
            nxt = []
            for el in frontier:
                w = seen[el]
                for name, g in letters:
                    img = self.multiply(el, g)
                    if img not in seen:
                        seen[img] = (w + " " + name).strip()
                        order.append(img)
                        nxt.append(img)
            frontier = nxt
            if not frontier:
                break
        return [(el, seen[el]) for el in order]

    def element_from_word(self, word):
        """Parse a word string: space-separated tokens `name` or `name^k`
        (k may be negative).  The empty string is the identity."""
        gens = dict(self.generators())
        el = self.identity()
        for tok in word.split():
            if "^" in tok:
                name, _, exp = tok.partition("^")
                try:
                    k = int(exp)
                except ValueError:
                    raise GroupError("bad exponent in token %r" % (tok,))
            else:
                name, k = tok, 1
            if name not in gens:
                raise GroupError("unknown generator %r in word %r" % (name, word))
            g = gens[name] if k >= 0 else self.invert(gens[name])
            for _ in range(abs(k)):
                el = self.multiply(el, g)
        return el


class TableOracle(GroupOracle):
    kind = "table"
    finite_kind = True

    def __init__(self, elements, mul, gens):
        n = len(elements)
        if n == 0:
            raise GroupError("empty multiplication table")
        if len(set(elements)) != n:
            raise GroupError("duplicate element names in table")
        if len(mul) != n or any(len(row) != n for row in mul):
            raise GroupError("multiplication table must be %d x %d" % (n, n))
        for row in mul:
            for x in row:
                if not (0 <= x < n):
                    raise GroupError("table entry %r out of range" % (x,))
        self.names = tuple(elements)
        self.mul = tuple(tuple(row) for row in mul)
        # identity: two-sided
        ident = None
        for e in range(n):
            if all(self.mul[e][x] == x and self.mul[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise GroupError("table has no two-sided identity")
        self._identity = ident
        # inverses
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mul[a][b] == ident and self.mul[b][a] == ident:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise GroupError(
                    "element %r has no two-sided inverse" % (self.names[a],)
                )
        self._inv = tuple(inv)
        # associativity, exhaustively (tables are desk scale)
        for a in range(n):
            for b in range(n):
                ab = self.mul[a][b]
                for c in range(n):
                    if self.mul[ab][c] != self.mul[a][self.mul[b][c]]:
                        raise GroupError(
                            "associativity fails at (%s, %s, %s)"
                            % (self.names[a], self.names[b], self.names[c])
                        )
        name_to_idx = {nm: i for i, nm in enumerate(self.names)}
        gen_list = []
        for gname in gens:
            if gname not in name_to_idx:
                raise GroupError("generator %r not an element" % (gname,))
            gi = name_to_idx[gname]
            if gi == ident:
                raise GroupError("identity listed as a generator")
            gen_list.append((gname, gi))
        if not gen_list:
            raise GroupError("table oracle needs at least one generator")
        if len(set(i for _, i in gen_list)) != len(gen_list):
            raise GroupError("duplicate generator")
        self._gens = tuple(gen_list)
        # generators must generate
        closure = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for _, g in self._gens:
                    for y in (self.mul[x][g], self.mul[x][self._inv[g]]):
                        if y not in closure:
                            closure.add(y)
                            nxt.append(y)
            frontier = nxt
        if len(closure) != n:
            raise GroupError("generators do not generate the group")
        self.order = n

    def elements(self):
        return tuple(range(self.order))

    def identity(self):
        return self._identity

    def multiply(self, a, b):
        return self.mul[a][b]

    def invert(self, a):
        return self._inv[a]

    def el_str(self, a):
        return self.names[a]


class PermOracle(GroupOracle):
    """Permutation group: generators as image tuples on 0..degree-1;
    elements enumerated by closure."""

    kind = "perm"
    finite_kind = True

    def __init__(self, degree, gens, names=None, closure_cap=20000):
        self.degree = int(degree)
        ident = tuple(range(self.degree))
        gen_list = []
        for i, perm in enumerate(gens):
            p = tuple(perm)
            if sorted(p) != list(range(self.degree)):
                raise GroupError("generator %d is not a permutation" % (i,))
            if p == ident:
                raise GroupError("identity listed as a generator")
            name = names[i] if names else "s%d" % (i,)
            gen_list.append((name, p))
        if not gen_list:
            raise GroupError("perm oracle needs at least one generator")
        self._gens = tuple(gen_list)
        closure = {ident}
        order = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for _, g in self._gens:
                    for h in (g, self.invert(g)):
                        y = self.multiply(x, h)
                        if y not in closure:
                            closure.add(y)
                            order.append(y)
                            nxt.append(y)
            frontier = nxt
            if len(closure) > closure_cap:
                raise GroupError("permutation closure exceeds cap %d" % (closure_cap,))
        self._elements = tuple(order)
        self.order = len(order)

    def elements(self):
        return self._elements

    def identity(self):
        return tuple(range(self.degree))

    def multiply(self, a, b):
        # left action convention: (a*b)(x) = a(b(x))
        return tuple(a[b[x]] for x in range(self.degree))

    def invert(self, a):
        out = [0] * self.degree
        for i, img in enumerate(a):
            out[img] = i
        return tuple(out)

    def el_str(self, a):
        return "(" + " ".join(str(x) for x in a) + ")"


class ZdOracle(GroupOracle):
    kind = "zd"

    def __init__(self, d):
        d = int(d)
        if d < 1:
            raise GroupError("zd needs d >= 1")
        self.d = d
        gens = []
        for i in range(d):
            e = tuple(1 if j == i else 0 for j in range(d))
            gens.append(("x%d" % (i,) if d > 1 else "x", e))
        self._gens = tuple(gens)

    def identity(self):
        return (0,) * self.d

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def invert(self, a):
        return tuple(-x for x in a)

    def el_str(self, a):
        return ",".join(str(x) for x in a)


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class FreeOracle(GroupOracle):
    """Free group of rank k; elements are reduced words as tuples of nonzero
    ints (+i / -i for the i-th generator and its inverse, 1-based)."""

    kind = "free"

    def __init__(self, k):
        k = int(k)
        if k < 1:
            raise GroupError("free needs k >= 1")
        self.k = k
        self._gens = tuple((_LETTERS[i], (i + 1,)) for i in range(k))

    def identity(self):
        return ()

    def multiply(self, a, b):
        out = list(a)
        for x in b:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def invert(self, a):
        return tuple(-x for x in reversed(a))

    def el_str(self, a):
        toks = []
        for x in a:
            name = _LETTERS[abs(x) - 1]
            toks.append(name if x > 0 else name + "^-1")
        return " ".join(toks)


class FreeProductOracle(GroupOracle):
    """Free product of finite cyclic groups Z/n_1 * ... * Z/n_m; elements are
    alternating syllable tuples ((factor, exp), ...) with 1 <= exp < n."""

    kind = "free_product"

    def __init__(self, orders):
        orders = tuple(int(n) for n in orders)
        if not orders or any(n < 2 for n in orders):
            raise GroupError("free_product needs cyclic orders >= 2")
        self.orders = orders
        self._gens = tuple((_LETTERS[i], ((i, 1),)) for i in range(len(orders)))

    def identity(self):
        return ()

    def multiply(self, a, b):
        out = list(a)
        for (f, e) in b:
            if out and out[-1][0] == f:
                e2 = (out[-1][1] + e) % self.orders[f]
                out.pop()
                if e2:
                    out.append((f, e2))
            else:
                out.append((f, e))
        return tuple(out)

    def invert(self, a):
        return tuple((f, self.orders[f] - e) for (f, e) in reversed(a))

    def el_str(self, a):
        toks = []
        for (f, e) in a:
            name = _LETTERS[f]
            toks.append(name if e == 1 else "%s^%d" % (name, e))
        return " ".join(toks)


def make_oracle(spec):
    """Build an oracle from a spec dict: {"kind": "zd", "d": 2},
    {"kind": "free", "k": 2}, {"kind": "free_product", "orders": [2, 3]},
    {"kind": "table", "elements": [...], "mul": [[...]], "gens": [...]},
    {"kind": "perm", "degree": n, "gens": [[...]], "names": [...]}."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise GroupError("group spec must be a dict with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "zd":
            return ZdOracle(spec["d"])
        if kind == "free":
            return FreeOracle(spec["k"])
        if kind == "free_product":
            return FreeProductOracle(spec["orders"])
        if kind == "table":
            return TableOracle(spec["elements"], spec["mul"], spec["gens"])
        if kind == "perm":
            return PermOracle(spec["degree"], spec["gens"], spec.get("names"))
    except KeyError as exc:
        raise GroupError("group spec for kind %r is missing %s" % (kind, exc))
    raise GroupError("unknown group kind %r" % (kind,))


class BallView:
    """Cayley ball of radius R: a Graph on element strings, the aligned
    element list, breadth-first distances, and the sphere (distance == R).

    exhausted is True when the group ran out before radius R (finite group);
    then the ball is the whole Cayley graph and the sphere is empty.
    """

    __slots__ = (
        "oracle",
        "radius",
        "graph",
        "elements",
        "el_to_idx",
        "dist",
        "sphere",
        "exhausted",
        "edge_meta",
    )

    def __init__(self, oracle, radius, graph, elements, dist, sphere, exhausted, edge_meta):
        self.oracle = oracle
        self.radius = radius
        self.graph = graph
        self.elements = elements
        self.el_to_idx = {el: i for i, el in enumerate(elements)}
        self.dist = dist
        self.sphere = sphere  # frozenset of vertex indices
        self.exhausted = exhausted
        self.edge_meta = edge_meta  # per edge: (src_vertex_idx, gen_idx)

    @property
    def nv(self):
        return self.graph.nv

    def sphere_mask(self):
        m = 0
        for i in self.sphere:
            m |= 1 << i
        return m

    def interior_mask(self):
        return ((1 << self.nv) - 1) ^ self.sphere_mask()

    def index_of(self, element):
        if element not in self.el_to_idx:
            raise GroupError(
                "element %s outside ball of radius %d"
                % (self.oracle.el_str(element), self.radius)
            )
        return self.el_to_idx[element]


def ball(oracle, radius, cap=None):
    if radius < 0:
        raise GroupError("radius must be >= 0")
    cap = _vertex_cap(cap)
    e = oracle.identity()
    dist = {e: 0}
    order = [e]
    frontier = [e]
    letters = []
    for name, g in oracle.generators():
        letters.append(g)
        gi = oracle.invert(g)
        if gi != g:
            letters.append(gi)
    exhausted = False
    for r in range(1, radius + 1):
        nxt = []
        for el in frontier:
            for g in letters:
                img = oracle.multiply(el, g)
                if img not in dist:
                    dist[img] = r
                    order.append(img)
                    nxt.append(img)
                    if len(order) > cap:
                        raise GroupError(
                            "ball of radius %d exceeds vertex cap %d" % (radius, cap)
                        )
        frontier = nxt
        if not frontier:
            exhausted = True
            break
    idx = {el: i for i, el in enumerate(order)}
    names = [oracle.el_str(el) for el in order]
    gens = oracle.generators()
    edges = []
    edge_meta = []
    for i, el in enumerate(order):
        for gj, (gname, g) in enumerate(gens):
            img = oracle.multiply(el, g)
            if img in idx:
                edges.append(("%s|%s" % (names[i], gname), names[i], names[idx[img]]))
                edge_meta.append((i, gj))
    graph = Graph(names, edges)
    sphere = frozenset(i for i, el in enumerate(order) if dist[el] == radius)
    if exhausted:
        sphere = frozenset()
    return BallView(
        oracle,
        radius,
        graph,
        tuple(order),
        tuple(dist[el] for el in order),
        sphere,
        exhausted,
        tuple(edge_meta),
    )


def act_left(bv, g, vertex_ids):
    """Left translate a set of ball vertices; error if any image escapes."""
    o = bv.oracle
    out = []
    for v in vertex_ids:
        el = bv.elements[bv.graph.vindex[v]]
        img = o.multiply(g, el)
        if img not in bv.el_to_idx:
            raise GroupError(
                "radius too small: %s escapes the ball" % (o.el_str(img),)
            )
        out.append(bv.graph.vertices[bv.el_to_idx[img]])
    return set(out)


def left_edge_image(bv, g, edge_idx):
    """Image of Cayley edge (h, s) under left translation: (gh, s).
    Returns the edge index, or None if an endpoint escapes."""
    src_i, gen_j = bv.edge_meta[edge_idx]
    o = bv.oracle
    img = o.multiply(g, bv.elements[src_i])
    if img not in bv.el_to_idx:
        return None
    name = "%s|%s" % (bv.graph.vertices[bv.el_to_idx[img]], o.generators()[gen_j][0])
    k = bv.graph.eindex.get(name)
    return k


def translate_right(bv, member_bits, g):
    """Right translate: x is a member of Ag iff x g^-1 was a member of A.
    Membership is only decidable where x g^-1 stays in the ball, so the
    result is (bits, valid_bits)."""
    o = bv.oracle
    ginv = o.invert(g)
    bits = 0
    valid = 0
    for i, el in enumerate(bv.elements):
        pre = o.multiply(el, ginv)
        j = bv.el_to_idx.get(pre)
        if j is None:
            continue
        valid |= 1 << i
        if (member_bits >> j) & 1:
            bits |= 1 << i
    return bits, valid
