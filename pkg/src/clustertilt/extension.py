"""Relation-extension (cluster-tilted) algebras and windows of the cluster-repetitive algebra.

The relation-extension adds one arrow ``y -> x`` for each minimal relation
``x ~> y`` of C; its relations are the cyclic derivatives of the potential
``W = sum(alpha_rho * rho)``.  The cluster-repetitive quiver has a copy of C
at every integer ``i`` (vertices ``x@i``, arrows ``a@i``) and a connecting
arrow ``alpha_rho@i : y@i -> x@(i-1)`` for each new arrow.
"""

from .errors import MinimalSystemAmbiguous, WindowTooSmall
from .linalg import Echelon
from .quiver import BoundQuiver, Relation, _pivot_key, natural_key, path_basis


class ExtensionData:
    """Bookkeeping for a relation-extension.

    Attributes:
        base: the bound quiver of C.
        new_arrows: list of ``(label, relation)``; the arrow runs from the
            relation's target to its source.
        potential: list of ``(coeff, cycle)`` with cycles starting at the new arrow.
        relations: the derived relations of the extension.
    """

    def __init__(self, base, new_arrows, potential, relations):
        self.base = base
        self.new_arrows = new_arrows
        self.potential = potential
        self.relations = relations

    @property
    def new_labels(self):
        return [a for a, _ in self.new_arrows]


def check_minimal(C):
    """Raise MinimalSystemAmbiguous unless the relations are independent modulo I*rad + rad*I."""
    if not C.relations:
        return
    A = path_basis(C)
    N = A.L + 1
    by_end, by_start = {}, {}
    frontier = [(v, v, ()) for v in C.vertices]
    allp = list(frontier)
    for _ in range(N):
        frontier = [(p[0], a.target, p[2] + (a.label,)) for p in frontier for a in C.arrows_out(p[1])]
        allp.extend(frontier)
    for p in allp:
        by_end.setdefault(p[1], []).append(p)
        by_start.setdefault(p[0], []).append(p)
    span = Echelon(_pivot_key)
    for r in C.relations:
        for left in by_end.get(r.source, []):
            for right in by_start.get(r.target, []):
                if not left[2] and not right[2]:
                    continue
                vec = {}
                for c, p in r.terms:
                    full = left[2] + p + right[2]
                    if len(full) <= N:
                        key = (left[0], right[1], full)
                        vec[key] = vec.get(key, 0) + c
                span.add(vec)
    for r in C.relations:
        vec = {(r.source, r.target, p): c for c, p in r.terms if len(p) <= N}
        if not span.add(vec):
            raise MinimalSystemAmbiguous(
                f"relation {r.equation()} is not independent of the others modulo I*rad + rad*I")


def cyclic_derivative(potential, arrow):
    """Cyclic derivative of a potential with respect to one arrow."""
    out = {}
    for c, cyc in potential:
        for i, a in enumerate(cyc):
            if a == arrow:
                word = cyc[i + 1:] + cyc[:i]
                out[word] = out.get(word, 0) + c
    return [(c, w) for w, c in out.items() if c]


def relation_extension(C, check=True):
    """Relation-extension of a tilted algebra given by a minimal system of relations.

    Returns ``(Ctilde, ExtensionData)``.  Unnamed relations get new arrows
    ``r1, r2, ...`` in canonical relation order.
    """
    if check:
        path_basis(C)
        check_minimal(C)
    taken = set(C.vertices) | {a.label for a in C.arrows}
    new_arrows = []
    arrows = [tuple(a) for a in C.arrows]
    k = 0
    for r in C.relations:
        label = r.name
        if label is None:
            k += 1
            label = f"r{k}"
            while label in taken:
                k += 1
                label = f"r{k}"
        if label in taken:
            raise ValueError(f"new arrow label {label} clashes with an existing label")
        taken.add(label)
        new_arrows.append((label, r))
        arrows.append((label, r.target, r.source))
    potential = [(c, (label,) + p) for label, r in new_arrows for c, p in r.terms]
    skeleton = BoundQuiver(C.vertices, arrows)
    rels = []
    for a in skeleton.arrows:
        d = cyclic_derivative(potential, a.label)
        if d:
            rels.append(skeleton._make_relation(d))
    Ct = BoundQuiver(C.vertices, arrows, rels)
    return Ct, ExtensionData(C, new_arrows, potential, Ct.relations)


def lift_label(label, i):
    return f"{label}@{i}"


def split_label(label):
    base, _, i = str(label).rpartition("@")
    return base, int(i)


class RepetitiveQuiver:
    """Lazy description of the cluster-repetitive bound quiver of C.

    Args:
        C: bound quiver of the tilted algebra.
        ext: optional precomputed ``(Ctilde, ExtensionData)``.
    """

    def __init__(self, C, ext=None):
        self.C = C
        self.Ct, self.ext = ext if ext is not None else relation_extension(C)
        self.new = {label: r for label, r in self.ext.new_arrows}
        self._windows = {}

    def arrow_shift(self, label):
        """Copy change along an arrow of the relation-extension."""
        return -1 if label in self.new else 0

    def lift_path(self, labels, start, copy):
        """Lift a path of the relation-extension starting at vertex ``start@copy``."""
        out = []
        i = copy
        for a in labels:
            out.append(lift_label(a, i))
            i += self.arrow_shift(a)
        return tuple(out), i

    def window(self, lo, hi):
        """Bound quiver of the full (convex) subquiver on copies lo..hi."""
        key = (lo, hi)
        if key in self._windows:
            return self._windows[key]
        verts = [lift_label(v, i) for i in range(lo, hi + 1) for v in self.C.vertices]
        arrows = []
        for i in range(lo, hi + 1):
            for a in self.Ct.arrows:
                j = i + self.arrow_shift(a.label)
                if lo <= j <= hi:
                    arrows.append((lift_label(a.label, i), lift_label(a.source, i), lift_label(a.target, j)))
        rels = []
        for i in range(lo, hi + 1):
            for r in self.Ct.relations:
                terms = []
                end = None
                for c, p in r.terms:
                    lp, j = self.lift_path(p, r.source, i)
                    end = j
                    terms.append((c, lp))
                if end is not None and lo <= end <= hi:
                    rels.append(Relation(terms, lift_label(r.source, i), lift_label(r.target, end)))
        Q = BoundQuiver(verts, arrows, rels)
        return self._windows.setdefault(key, Q)

    def shift_vertex(self, label, k=-1):
        """phi^(-k) on vertices: ``x@i -> x@(i+k)``; the default is phi."""
        base, i = split_label(label)
        return lift_label(base, i + k)

    def shift_arrow(self, label, k=-1):
        base, i = split_label(label)
        return lift_label(base, i + k)

    def collapse(self, Q):
        """Identify copies: the image of a window under the covering functor."""
        verts = sorted({split_label(v)[0] for v in Q.vertices}, key=natural_key)
        arrows = sorted({(split_label(a.label)[0], split_label(a.source)[0], split_label(a.target)[0])
                         for a in Q.arrows}, key=lambda t: natural_key(t[0]))
        rels = {}
        for r in Q.relations:
            terms = tuple((c, tuple(split_label(a)[0] for a in p)) for c, p in r.terms)
            rels[terms] = Relation(list(terms), split_label(r.source)[0], split_label(r.target)[0])
        return BoundQuiver(verts, arrows, list(rels.values()))


class RepetitiveWindow:
    """A finite window of the cluster-repetitive algebra.

    Attributes:
        lo, hi: copy range.
        quiver: its bound quiver (vertices ``x@i``).
        rq: the underlying :class:`RepetitiveQuiver`.
    """

    def __init__(self, rq, lo, hi):
        self.rq = rq
        self.lo = lo
        self.hi = hi
        self.quiver = rq.window(lo, hi)

    def phi(self, label):
        return self.rq.shift_vertex(label, -1)

    def grown(self, lo, hi, cap=16):
        lo, hi = min(lo, self.lo), max(hi, self.hi)
        if hi - lo + 1 > cap:
            raise WindowTooSmall(f"window [{lo},{hi}] exceeds the cap of {cap} copies")
        return RepetitiveWindow(self.rq, lo, hi)


def cluster_repetitive(C, copies=(0, 2), ext=None):
    lo, hi = copies
    return RepetitiveWindow(RepetitiveQuiver(C, ext), lo, hi)


def cluster_duplicated(C, ext=None):
    """Two-copy window (copies 0 and 1) of the cluster-repetitive algebra."""
    return RepetitiveQuiver(C, ext).window(0, 1)
