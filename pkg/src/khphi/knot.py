"""
Oriented knot diagrams as planar-diagram (PD) codes.

Each crossing is a 4-tuple of edge labels listed counterclockwise,
starting from the incoming under-strand (the KnotTheory convention).
Crossing signs are derived from the orientation of the over-strand:
a crossing is positive when the over-strand enters at position 3.

Generators (torus knots, pretzels) and transformations (mirror,
connected sum, twisting) all go through a small port-graph builder
that re-derives orientation by walking the knot, so every Diagram
produced here is validated the same way as parsed input.
"""

import math
import re
from dataclasses import dataclass, field


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    edges: tuple
    sign: int

    def enters(self):
        """Positions at which an edge enters this crossing."""
        return (0, 3) if self.sign > 0 else (0, 1)


@dataclass(frozen=True)
class Diagram:
    crossings: tuple = ()
    basepoint: int = 1
    components: int = field(default=1, compare=False)

    @property
    def n_plus(self):
        return sum(1 for c in self.crossings if c.sign > 0)

    @property
    def n_minus(self):
        return sum(1 for c in self.crossings if c.sign < 0)

    @property
    def writhe(self):
        return self.n_plus - self.n_minus

    @property
    def edge_count(self):
        return 2 * len(self.crossings)

    def __len__(self):
        return len(self.crossings)

    def pd(self):
        return [c.edges for c in self.crossings]

    def __str__(self):
        return ";".join("X(%d,%d,%d,%d)" % c.edges for c in self.crossings)

    def with_basepoint(self, edge):
        if self.crossings and edge not in {e for c in self.crossings for e in c.edges}:
            raise DiagramError("basepoint %r is not an edge label" % (edge,))
        return Diagram(self.crossings, edge, self.components)

    def canonical(self):
        """Relabel edges 1..2n along the orientation, starting at the basepoint."""
        if not self.crossings:
            return Diagram((), 1)
        order = walk(self.crossings, self.basepoint)
        relabel = {e: i + 1 for i, e in enumerate(order)}
        xs = tuple(Crossing(tuple(relabel[e] for e in c.edges), c.sign)
                   for c in self.crossings)
        return Diagram(xs, 1)

    def canonical_key(self):
        """Sorted normalized PD tuples; stable under reordering crossings."""
        c = self.canonical()
        return ";".join("X(%d,%d,%d,%d)" % t for t in sorted(c.pd()))


UNKNOT = Diagram()


def _occurrences(tuples):
    occ = {}
    for ci, t in enumerate(tuples):
        for pos, e in enumerate(t):
            occ.setdefault(e, []).append((ci, pos))
    return occ


def orient(tuples):
    """
    Propagate orientation from the under-strand convention.

    Returns the list of crossing signs.  Raises DiagramError when the
    labels do not pair up or the orientation is inconsistent.
    """
    occ = _occurrences(tuples)
    bad = sorted(e for e, places in occ.items() if len(places) != 2)
    if bad:
        raise DiagramError("edge labels %s do not appear exactly twice" %
                           ",".join(map(str, bad)))
    # True = the edge enters the crossing at that slot
    into = {}
    for ci in range(len(tuples)):
        into[ci, 0] = True
        into[ci, 2] = False
    stack = list(into)
    while stack:
        ci, pos = stack.pop()
        val = into[ci, pos]
        e = tuples[ci][pos]
        a, b = occ[e]
        other = b if a == (ci, pos) else a
        partner = (ci, (pos + 2) % 4)
        for slot, want in ((other, not val), (partner, not val)):
            have = into.get(slot)
            if have is None:
                into[slot] = want
                stack.append(slot)
            elif have != want:
                raise DiagramError("strand orientation is inconsistent at edge %d" % e)
    signs = []
    for ci in range(len(tuples)):
        if (ci, 3) not in into:
            raise DiagramError("crossing %d has an unoriented over-strand" % (ci + 1))
        signs.append(1 if into[ci, 3] else -1)
    return signs


def walk(crossings, start):
    """Edge labels in orientation order, beginning with ``start``."""
    where = {}
    for ci, c in enumerate(crossings):
        for pos in c.enters():
            where[c.edges[pos]] = (ci, pos)
    order = [start]
    e = start
    while True:
        ci, pos = where[e]
        e = crossings[ci].edges[(pos + 2) % 4]
        if e == start:
            return order
        order.append(e)


def _count_components(crossings):
    labels = {e for c in crossings for e in c.edges}
    seen = set()
    n = 0
    for e in sorted(labels):
        if e not in seen:
            n += 1
            seen.update(walk(crossings, e))
    return n


def make_diagram(tuples, basepoint=None):
    tuples = [tuple(int(v) for v in t) for t in tuples]
    if not tuples:
        return UNKNOT
    for t in tuples:
        if len(t) != 4:
            raise DiagramError("crossing %r does not have four entries" % (t,))
        if min(t) < 1:
            raise DiagramError("edge labels must be positive integers: %r" % (t,))
    signs = orient(tuples)
    xs = tuple(Crossing(t, s) for t, s in zip(tuples, signs))
    ncomp = _count_components(xs)
    if ncomp != 1:
        raise DiagramError("diagram has %d components; only knots are supported" % ncomp)
    labels = {e for t in tuples for e in t}
    if basepoint is None:
        basepoint = min(labels)
    elif basepoint not in labels:
        raise DiagramError("basepoint %r is not an edge label" % (basepoint,))
    return Diagram(xs, basepoint, ncomp)


_TUPLE = re.compile(r"[(\[]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[)\]]")


def parse_pd(text, basepoint=None):
    """Parse "X(1,4,2,5);X(3,6,4,1);..." or a bracketed list of 4-tuples."""
    if not isinstance(text, str):
        return make_diagram(text, basepoint)
    tuples = [tuple(int(v) for v in m.groups()) for m in _TUPLE.finditer(text)]
    rest = _TUPLE.sub("", text)
    if re.sub(r"[\s\[\]();,]|PD|X", "", rest):
        raise DiagramError("malformed PD code: %r" % text)
    return make_diagram(tuples, basepoint)


# ---------------------------------------------------------------------------
# port-graph builder


class _Builder:
    """
    Crossings with anonymous ports, joined by wires.

    ``crossing()`` returns four fresh port ids in counterclockwise order
    with slots 0 and 2 on the under-strand; orientation is unknown until
    ``finish`` walks the knot.  Plain nodes (``node()``) may sit in the
    middle of a wire chain.
    """

    def __init__(self):
        self.xings = []
        self.port_of = {}
        self.adj = {}
        self._next = 0
        self._wires = 0

    def node(self):
        self._next += 1
        return self._next

    def crossing(self):
        ports = tuple(self.node() for _ in range(4))
        for pos, p in enumerate(ports):
            self.port_of[p] = (len(self.xings), pos)
        self.xings.append(ports)
        return ports

    def wire(self, a, b):
        self._wires += 1
        self.adj.setdefault(a, []).append((self._wires, b))
        self.adj.setdefault(b, []).append((self._wires, a))

    def far_port(self, p):
        """Crossing port at the other end of the wire chain leaving ``p``."""
        (w, cur), = self.adj[p]
        while cur not in self.port_of:
            links = self.adj[cur]
            if len(links) != 2:
                raise DiagramError("dangling strand in generated diagram")
            w, cur = links[1] if links[0][0] == w else links[0]
        return cur

    def _free_loops(self):
        seen = set()
        loops = 0
        for n in self.adj:
            if n in seen or n in self.port_of:
                continue
            stack, comp, touches = [n], set(), False
            while stack:
                m = stack.pop()
                if m in comp:
                    continue
                comp.add(m)
                if m in self.port_of:
                    touches = True
                    continue
                stack.extend(o for _, o in self.adj[m])
            seen |= comp
            if not touches:
                loops += 1
        return loops

    def finish(self, start=None):
        """Walk the knot from crossing port ``start`` (an entry) and label edges 1..2n."""
        loops = self._free_loops()
        if not self.xings:
            if loops != 1:
                raise DiagramError("diagram has %d components; only knots are supported" % loops)
            return UNKNOT
        if loops:
            raise DiagramError("diagram has split unknotted components")
        if start is None:
            start = self.xings[0][0]
        steps = []
        entered = set()
        p = start
        while True:
            ci, pos = self.port_of[p]
            entered.add((ci, pos))
            out = self.xings[ci][(pos + 2) % 4]
            p = self.far_port(out)
            steps.append((out, p))
            if p == start:
                break
            if len(steps) > 2 * len(self.xings):
                raise DiagramError("walk does not close up")
        if len(steps) != 2 * len(self.xings):
            raise DiagramError("generated diagram is a link, not a knot")
        # edge into ``start`` gets label 1
        steps = steps[-1:] + steps[:-1]
        labels = {}
        for k, (a, z) in enumerate(steps, 1):
            labels[self.port_of[a]] = k
            labels[self.port_of[z]] = k
        tuples = []
        for ci in range(len(self.xings)):
            lab = [labels[ci, pos] for pos in range(4)]
            if (ci, 0) not in entered:
                lab = lab[2:] + lab[:2]
            tuples.append(tuple(lab))
        return make_diagram(tuples, basepoint=1)


def _load(b, d, skip=None):
    """
    Copy diagram ``d`` into builder ``b``.  Crossing ``skip`` becomes four
    plain nodes.  Returns (ports per crossing, label -> two port ids).
    """
    ports = []
    for ci in range(len(d.crossings)):
        if ci == skip:
            ports.append(tuple(b.node() for _ in range(4)))
        else:
            ports.append(b.crossing())
    occ = {}
    for ci, c in enumerate(d.crossings):
        for pos, e in enumerate(c.edges):
            occ.setdefault(e, []).append(ports[ci][pos])
    return ports, occ


def _wire_all(b, occ, skip=()):
    for e, (p, q) in occ.items():
        if e not in skip:
            b.wire(p, q)


def _entry_port(d, ports, edge):
    for ci, c in enumerate(d.crossings):
        for pos in c.enters():
            if c.edges[pos] == edge:
                return ports[ci][pos]
    raise DiagramError("edge %d not found" % edge)


def _exit_port(d, ports, edge):
    for ci, c in enumerate(d.crossings):
        for pos in ({0, 1, 2, 3} - set(c.enters())):
            if c.edges[pos] == edge:
                return ports[ci][pos]
    raise DiagramError("edge %d not found" % edge)


# ---------------------------------------------------------------------------
# generators


def braid_closure(word, strands):
    """PD code of the closure of a braid word (1-based signed generators)."""
    b = _Builder()
    bottom = [b.node() for _ in range(strands)]
    cur = list(bottom)
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise DiagramError("braid generator %d out of range" % g)
        # ports: SW, SE, NE, NW counterclockwise
        if g > 0:
            se, ne, nw, sw = b.crossing()
        else:
            sw, se, ne, nw = b.crossing()
        b.wire(cur[i], sw)
        b.wire(cur[i + 1], se)
        cur[i], cur[i + 1] = nw, ne
    for top, bot in zip(cur, bottom):
        b.wire(top, bot)
    return b.finish()


def torus_knot(p, q):
    """Closure of (s1 ... s_{p-1})^q."""
    if p < 1:
        raise DiagramError("torus knot needs p >= 1")
    if math.gcd(abs(p), abs(q)) != 1:
        raise DiagramError("torus knot parameters %d,%d are not coprime" % (p, q))
    sign = 1 if q > 0 else -1
    word = [sign * i for i in range(1, p)] * abs(q)
    return braid_closure(word, p)


def pretzel(*params):
    """
    Pretzel knot P(p1, ..., pk): vertical twist columns joined in a ring.

    Positive entries are right-handed half twists, so that P(-2,3,5) is
    the positive torus knot T(3,5).
    """
    if len(params) < 1:
        raise DiagramError("pretzel needs at least one parameter")
    evens = sum(1 for p in params if p % 2 == 0)
    if evens > 1 or (evens == 0 and len(params) % 2 == 0):
        raise DiagramError("pretzel parameters %s give a link" % (params,))
    b = _Builder()
    cols = []
    for p in params:
        if p == 0:
            tl, tr, bl, br = (b.node() for _ in range(4))
            b.wire(tl, bl)
            b.wire(tr, br)
            cols.append((tl, tr, bl, br))
            continue
        first = last = None
        for _ in range(abs(p)):
            # ports NW, SW, SE, NE counterclockwise
            if p > 0:
                nw, sw, se, ne = b.crossing()
            else:
                sw, se, ne, nw = b.crossing()
            if last is None:
                first = (nw, ne)
            else:
                b.wire(last[0], nw)
                b.wire(last[1], ne)
            last = (sw, se)
        cols.append((first[0], first[1], last[0], last[1]))
    k = len(cols)
    for j in range(k):
        a, c = cols[j], cols[(j + 1) % k]
        b.wire(a[1], c[0])
        b.wire(a[3], c[2])
    return b.finish()


# ---------------------------------------------------------------------------
# transformations


def mirror(d):
    """Swap over and under at every crossing by rotating each tuple."""
    xs = []
    for c in d.crossings:
        a, b_, c_, e = c.edges
        t = (b_, c_, e, a) if c.sign < 0 else (e, a, b_, c_)
        xs.append(Crossing(t, -c.sign))
    return Diagram(tuple(xs), d.basepoint, d.components)


def connected_sum(d1, d2):
    """Splice the basepoint edges of ``d1`` and ``d2``."""
    if not d1.crossings:
        return d2.canonical()
    if not d2.crossings:
        return d1.canonical()
    b = _Builder()
    p1, occ1 = _load(b, d1)
    p2, occ2 = _load(b, d2)
    e1, e2 = d1.basepoint, d2.basepoint
    _wire_all(b, occ1, skip=(e1,))
    _wire_all(b, occ2, skip=(e2,))
    b.wire(_exit_port(d1, p1, e1), _entry_port(d2, p2, e2))
    b.wire(_exit_port(d2, p2, e2), _entry_port(d1, p1, e1))
    return b.finish(start=_entry_port(d2, p2, e2))


def add_twists(d, crossing, n):
    """
    Replace crossing number ``crossing`` (0-based) by 2n+1 crossings of
    the same handedness, stacked along the axis on which its two strands
    are oppositely oriented (the band picture of a twist region).
    """
    if not 0 <= crossing < len(d.crossings):
        raise DiagramError("no crossing %r" % (crossing,))
    if n < 0:
        raise DiagramError("twist count must be non-negative")
    b = _Builder()
    ports, occ = _load(b, d, skip=crossing)
    _wire_all(b, occ)
    c = d.crossings[crossing]
    # frame slots: (f0, f1) one end of the twist axis, (f2, f3) the other
    shift = 0 if c.sign > 0 else 1
    frame = [ports[crossing][(j + shift) % 4] for j in range(4)]
    chain = []
    for _ in range(2 * n + 1):
        pts = b.crossing()
        chain.append(pts if shift == 0 else (pts[3], pts[0], pts[1], pts[2]))
    for j in range(1, len(chain)):
        b.wire(chain[j - 1][3], chain[j][0])
        b.wire(chain[j - 1][2], chain[j][1])
    links = {frame[0]: chain[0][0], frame[1]: chain[0][1],
             frame[2]: chain[-1][2], frame[3]: chain[-1][3]}
    for plain, port in links.items():
        b.wire(plain, port)
    start = _entry_port(d, ports, d.basepoint)
    return b.finish(start=links.get(start, start))


# ---------------------------------------------------------------------------
# specifiers


def add_kink(d, edge=None, positive=True):
    """Insert a Reidemeister-I loop on an edge (default: the basepoint edge)."""
    if not d.crossings:
        return make_diagram([(2, 2, 1, 1) if positive else (1, 2, 2, 1)], basepoint=1)
    e = d.basepoint if edge is None else edge
    top = max(x for c in d.crossings for x in c.edges)
    u, w = top + 1, top + 2
    xs = []
    done = False
    for c in d.crossings:
        t = list(c.edges)
        for slot in c.enters():
            if t[slot] == e and not done:
                t[slot] = w
                done = True
        xs.append(tuple(t))
    if not done:
        raise DiagramError("edge %r does not occur in the diagram" % (e,))
    xs.append((e, w, u, u) if positive else (e, u, u, w))
    return make_diagram(xs, basepoint=d.basepoint)


def from_specifier(spec):
    """Accept a PD string, "torus:p,q", "pretzel:p1,p2,p3", "unknot", "mirror:<spec>"."""
    s = spec.strip()
    low = s.lower()
    if low in ("unknot", "0_1", ""):
        return UNKNOT
    if low.startswith("mirror:"):
        return mirror(from_specifier(s[7:]))
    for name, fn in (("torus:", torus_knot), ("pretzel:", pretzel)):
        if low.startswith(name):
            try:
                args = [int(v) for v in s[len(name):].split(",")]
            except ValueError:
                raise DiagramError("bad generator arguments in %r" % spec) from None
            if name == "torus:" and len(args) != 2:
                raise DiagramError("torus needs two arguments")
            return fn(*args)
    return parse_pd(s)
