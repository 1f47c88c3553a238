"""
Semibifiltered chain complexes over Q.

A complex has a finite basis of generators with integer bigrades (g, h)
and a differential stored sparsely as out[src][tgt] = value.  Values are
kept as ints while they stay integral and as Fractions otherwise, which
keeps the elimination arithmetic cheap on cube complexes.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json

from .linalg import SparseMatrix, fmt, frac, rank


class ComplexError(ValueError):
    pass


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


class SemiBifilteredComplex:
    """
    Generators are ``ids[i]`` with bigrade ``(g[i], h[i])``.  The declared
    bound (m, n) promises every entry has dg >= m and dh >= n.
    """

    def __init__(self, basis, entries=(), bound=(-3, 1)):
        self.ids = []
        self.g = []
        self.h = []
        index = {}
        for gid, g, h in basis:
            if gid in index:
                raise ComplexError("duplicate generator id %r" % (gid,))
            index[gid] = len(self.ids)
            self.ids.append(gid)
            self.g.append(int(g))
            self.h.append(int(h))
        self.index = index
        self.bound = tuple(bound)
        self.out = [dict() for _ in self.ids]
        for src, tgt, v in entries:
            v = _norm(frac(v)) if not isinstance(v, int) else v
            if not v:
                continue
            i, j = index[src], index[tgt]
            self.out[i][j] = self.out[i].get(j, 0) + v
            if not self.out[i][j]:
                del self.out[i][j]

    @classmethod
    def from_indexed(cls, grades, out, bound=(-3, 1), ids=None):
        """Fast constructor from grade pairs and index-based out dicts."""
        c = cls.__new__(cls)
        c.ids = list(range(len(grades))) if ids is None else list(ids)
        c.g = [g for g, _ in grades]
        c.h = [h for _, h in grades]
        c.index = {gid: i for i, gid in enumerate(c.ids)}
        c.bound = tuple(bound)
        c.out = [dict(o) for o in out]
        return c

    def __len__(self):
        return len(self.ids)

    @property
    def dim(self):
        return len(self.ids)

    def basis(self):
        return [(self.ids[i], self.g[i], self.h[i]) for i in range(len(self.ids))]

    def parity(self, i):
        return self.g[i] % 2

    def entries(self):
        """Yield (src index, tgt index, value) in deterministic order."""
        for i in range(len(self.out)):
            for j in sorted(self.out[i]):
                yield i, j, self.out[i][j]

    def shifts(self):
        return {(self.g[j] - self.g[i], self.h[j] - self.h[i])
                for i, j, _ in self.entries()}

    @property
    def differential(self):
        """Differential as a SparseMatrix with row = target, col = source."""
        n = len(self.ids)
        return SparseMatrix(n, n, {(j, i): v for i, j, v in self.entries()})

    def d_squared_is_zero(self):
        for i, row in enumerate(self.out):
            acc = {}
            for j, v in row.items():
                for k, w in self.out[j].items():
                    acc[k] = acc.get(k, 0) + v * w
            if any(acc.values()):
                return False
        return True

    def check(self):
        if not self.d_squared_is_zero():
            raise ComplexError("d o d != 0")
        if not certify_bounded(self, *self.bound):
            raise ComplexError("differential violates declared bound %s" % (self.bound,))
        return True

    def copy(self):
        return SemiBifilteredComplex.from_indexed(
            list(zip(self.g, self.h)), self.out, self.bound, self.ids)

    def __eq__(self, other):
        if not isinstance(other, SemiBifilteredComplex):
            return NotImplemented
        return (self.basis() == other.basis() and self.bound == other.bound
                and [dict(o) for o in self.out] == [dict(o) for o in other.out])

    def __repr__(self):
        nnz = sum(len(o) for o in self.out)
        return "SemiBifilteredComplex(dim=%d, nnz=%d, bound=%s)" % (len(self), nnz, self.bound)

    def to_dict(self):
        return {
            "basis": [{"id": gid, "g": g, "h": h} for gid, g, h in self.basis()],
            "differential": [{"from": self.ids[i], "to": self.ids[j], "value": fmt(v)}
                             for i, j, v in self.entries()],
            "bound": list(self.bound),
        }

    @classmethod
    def from_dict(cls, data):
        try:
            basis = [(b["id"], b["g"], b["h"]) for b in data["basis"]]
            ents = [(e["from"], e["to"], frac(e["value"])) for e in data["differential"]]
            bound = tuple(data.get("bound", (-3, 1)))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ComplexError("malformed complex document: %s" % exc)
        try:
            return cls(basis, ents, bound)
        except KeyError as exc:
            raise ComplexError("differential refers to unknown generator %s" % exc)


def dumps(c):
    return json.dumps(c.to_dict(), indent=1, sort_keys=True)


def loads(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexError("not a JSON document: %s" % exc)
    return SemiBifilteredComplex.from_dict(data)


def certify_bounded(c, m, n):
    for i, j, _ in c.entries():
        if c.g[j] - c.g[i] < m or c.h[j] - c.h[i] < n:
            return False
    return True


def homology_dimension(c):
    return len(c) - 2 * rank(c.differential)


def vertical_associated_graded(c):
    """Keep only entries whose dh equals the declared lower bound."""
    n = c.bound[1]
    out = [{j: v for j, v in row.items() if c.h[j] - c.h[i] == n} for i, row in enumerate(c.out)]
    return SemiBifilteredComplex.from_indexed(list(zip(c.g, c.h)), out, c.bound, c.ids)


def tensor(c1, c2):
    """Tensor product with d(a(x)b) = da(x)b + (-1)^h(a) a(x)db."""
    n2 = len(c2)
    grades, ids, out = [], [], []
    for i in range(len(c1)):
        for j in range(n2):
            grades.append((c1.g[i] + c2.g[j], c1.h[i] + c2.h[j]))
            ids.append("%s*%s" % (c1.ids[i], c2.ids[j]))
            row = {}
            for k, v in c1.out[i].items():
                row[k * n2 + j] = v
            sign = -1 if c1.h[i] % 2 else 1
            for k, v in c2.out[j].items():
                t = i * n2 + k
                row[t] = row.get(t, 0) + sign * v
            out.append({t: v for t, v in row.items() if v})
    bound = (min(c1.bound[0], c2.bound[0]), min(c1.bound[1], c2.bound[1]))
    return SemiBifilteredComplex.from_indexed(grades, out, bound, ids)


@dataclass
class ReductionTrace:
    pairs: list = field(default_factory=list)   # (source id, target id, pivot)
    model: object = None


class Eliminator:
    """
    Mutable Gaussian-elimination state.  Cancelling a pivot a -> b with
    value p replaces every surviving entry x -> y by

        d(x, y) - d(x, b) p^-1 d(a, y)

    and deletes a and b.
    """

    def __init__(self, out):
        self.out = {i: dict(row) for i, row in enumerate(out)}
        self.ins = {i: {} for i in self.out}
        for i, row in self.out.items():
            for j, v in row.items():
                self.ins[j][i] = v

    def alive(self):
        return sorted(self.out)

    def cancel(self, a, b):
        out, ins = self.out, self.ins
        p = out[a][b]
        row_a = out.pop(a)
        col_b = ins.pop(b)
        row_b = out.pop(b)
        col_a = ins.pop(a)
        for y in row_a:
            if y != b and y != a:
                del ins[y][a]
        for x in col_b:
            if x != a and x != b:
                del out[x][b]
        for y in row_b:
            if y != a and y != b:
                del ins[y][b]
        for x in col_a:
            if x != a and x != b:
                del out[x][a]
        touched = []
        if p == 1 or p == -1:
            inv = p
        else:
            inv = Fraction(1) / p
        for x, dxb in col_b.items():
            if x == a or x == b:
                continue
            f = _norm(dxb * inv)
            ox = out[x]
            for y, day in row_a.items():
                if y == b or y == a:
                    continue
                nv = _norm(ox.get(y, 0) - f * day)
                if nv:
                    ox[y] = nv
                    ins[y][x] = nv
                else:
                    ox.pop(y, None)
                    ins[y].pop(x, None)
            touched.append(x)
        return p, touched

    def to_complex(self, c):
        keep = self.alive()
        pos = {old: new for new, old in enumerate(keep)}
        out = [{pos[j]: v for j, v in self.out[i].items()} for i in keep]
        return SemiBifilteredComplex.from_indexed(
            [(c.g[i], c.h[i]) for i in keep], out, c.bound, [c.ids[i] for i in keep])


def cancel_matching(elim, matches):
    """
    Cancel entries a -> b with matches(a, b) until none remain.

    Pivots prefer unit values, then targets with few incoming entries.
    Returns the list of (a, b, pivot) in cancellation order.
    """
    pairs = []
    stack = sorted(elim.out, reverse=True)
    queued = set(stack)
    while stack:
        a = stack.pop()
        queued.discard(a)
        if a not in elim.out:
            continue
        best = None
        for b, v in elim.out[a].items():
            if b == a or not matches(a, b):
                continue
            key = (v != 1 and v != -1, len(elim.ins[b]))
            if best is None or key < best[0]:
                best = (key, b)
        if best is None:
            continue
        b = best[1]
        p, touched = elim.cancel(a, b)
        pairs.append((a, b, p))
        for x in touched:
            if x not in queued:
                queued.add(x)
                stack.append(x)
    return pairs


def reduce(c, layer=(-3, 1)):
    """
    Cancel every differential entry of the given exact bidegree.

    Returns (model, trace).  The model is homotopy equivalent to ``c``;
    when ``layer`` equals the declared bound the equivalences are filtered.
    """
    elim = Eliminator(c.out)
    dg, dh = layer
    g, h = c.g, c.h

    def matches(a, b):
        return g[b] - g[a] == dg and h[b] - h[a] == dh

    pairs = cancel_matching(elim, matches)
    trace = ReductionTrace([(c.ids[a], c.ids[b], p) for a, b, p in pairs])
    trace.model = elim.to_complex(c)
    return trace.model, trace


def replay(c, trace):
    """Re-run the cancellations listed in a trace."""
    elim = Eliminator(c.out)
    for src, tgt, p in trace.pairs:
        a, b = c.index[src], c.index[tgt]
        if elim.out.get(a, {}).get(b) != p:
            raise ComplexError("trace pivot %r -> %r does not match" % (src, tgt))
        elim.cancel(a, b)
    return elim.to_complex(c)


def reduce_all(c):
    """Cancel every entry; the survivors are a basis of the homology."""
    elim = Eliminator(c.out)
    for a in sorted(elim.out):
        while a in elim.out and elim.out[a]:
            b = min(elim.out[a], key=lambda j: (elim.out[a][j] not in (1, -1), j))
            if b == a:
                raise ComplexError("self-loop in differential")
            elim.cancel(a, b)
    return elim.to_complex(c)
