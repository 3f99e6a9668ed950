"""Bound quivers, their path-algebra bases, opposites and ideal quotients.

Paths compose diagrammatically: the path ``a*b`` traverses ``a`` first.  A
path is stored as a tuple ``(source, target, labels)``; the trivial path at
``x`` is ``(x, x, ())``.  Algebra elements are dicts mapping paths to scalars.
"""

import re
from collections import namedtuple
from functools import lru_cache

from .errors import (NonParallelRelation, NotAdmissible, ParseError,
                     UnknownVertex)
from .linalg import Echelon, Matrix
from .scalars import fmt, scalar

Arrow = namedtuple("Arrow", "label source target")


def natural_key(label):
    """Sort key that orders embedded integers numerically ("x2" < "x10")."""
    parts = re.split(r"(-?\d+)", str(label))
    return tuple((0, int(p), "") if re.fullmatch(r"-?\d+", p) else (1, 0, p) for p in parts if p != "")


def path_key(path):
    return (len(path[2]), tuple(natural_key(a) for a in path[2]), natural_key(path[0]))


def _pivot_key(path):
    # Longest path first, so normal forms rewrite towards shorter paths.
    return (-len(path[2]), tuple(natural_key(a) for a in path[2]), natural_key(path[0]))


def trivial(x):
    return (x, x, ())


def path_str(labels, sep=None):
    """Render a label sequence, e.g. ("α", "β") -> "αβ"."""
    if not labels:
        return "e"
    if sep is None:
        sep = "" if all(len(a) == 1 for a in labels) else "*"
    return sep.join(labels)


class Relation:
    """A linear combination of parallel paths, with an optional name."""

    __slots__ = ("terms", "source", "target", "name")

    def __init__(self, terms, source, target, name=None):
        combined = {}
        for c, labels in terms:
            labels = tuple(labels)
            combined[labels] = combined.get(labels, 0) + scalar(c)
        items = [(c, p) for p, c in combined.items() if c]
        items.sort(key=lambda t: (len(t[1]), tuple(natural_key(a) for a in t[1])))
        self.terms = tuple(items)
        self.source = source
        self.target = target
        self.name = name

    def as_element(self):
        return {(self.source, self.target, p): c for c, p in self.terms}

    def normalized(self):
        """Terms scaled so the first coefficient is 1 (for comparisons up to scalars)."""
        lead = self.terms[0][0]
        return tuple((c / lead, p) for c, p in self.terms)

    def __eq__(self, other):
        return (isinstance(other, Relation) and self.terms == other.terms
                and self.source == other.source and self.target == other.target
                and self.name == other.name)

    def __hash__(self):
        return hash((self.terms, self.source, self.target, self.name))

    def equation(self):
        """Compact equation string such as "αβ=γδ" or "αβ=0"."""
        t = self.terms
        if len(t) == 1:
            return f"{path_str(t[0][1])}=0"
        if len(t) == 2:
            (c1, p1), (c2, p2) = t
            r = -c2 / c1
            if r == 1:
                return f"{path_str(p1)}={path_str(p2)}"
            if r == -1:
                return f"{path_str(p1)}=-{path_str(p2)}"
            return f"{path_str(p1)}={fmt(r)}{path_str(p2)}"
        return format_combination(t, sep=None) + "=0"

    def __repr__(self):
        return f"Relation({self.equation()})"


def format_combination(terms, sep="*"):
    out = []
    for i, (c, p) in enumerate(terms):
        neg = c < 0 if not hasattr(c, "p") else False
        mag = -c if neg else c
        coeff = "" if mag == 1 else f"{fmt(mag)}*"
        body = coeff + path_str(p, sep)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class BoundQuiver:
    """Finite quiver with linear relations among parallel paths (immutable).

    Args:
        vertices: vertex labels.
        arrows: iterable of ``(label, source, target)``.
        relations: iterable of :class:`Relation`, or of term lists
            ``[(coeff, (a, b, ...)), ...]``.
    """

    def __init__(self, vertices, arrows=(), relations=()):
        vs = [str(v) for v in vertices]
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex label")
        arrs = [Arrow(str(a), str(s), str(t)) for a, s, t in arrows]
        labels = [a.label for a in arrs]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate arrow label")
        if set(labels) & set(vs):
            raise ValueError("arrow and vertex labels must differ")
        vset = set(vs)
        for a in arrs:
            for end in (a.source, a.target):
                if end not in vset:
                    raise UnknownVertex(f"arrow {a.label} uses unknown vertex {end}")
        self.vertices = tuple(sorted(vs, key=natural_key))
        self.arrows = tuple(sorted(arrs, key=lambda a: natural_key(a.label)))
        self._arrow = {a.label: a for a in self.arrows}
        rels = []
        for r in relations:
            if not isinstance(r, Relation):
                r = self._make_relation(r)
            else:
                self._check_relation(r)
            rels.append(r)
        rels.sort(key=lambda r: (natural_key(r.source), natural_key(r.target),
                                 [(len(p), tuple(natural_key(a) for a in p)) for _, p in r.terms]))
        self.relations = tuple(rels)
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    def _make_relation(self, terms, name=None):
        ends = set()
        for _, labels in terms:
            ends.add(self.path_ends(labels))
        if len(ends) != 1:
            raise NonParallelRelation(f"relation terms are not parallel: {sorted(ends)}")
        s, t = ends.pop()
        r = Relation(terms, s, t, name)
        self._check_relation(r)
        return r

    def _check_relation(self, r):
        if not r.terms:
            raise ValueError("relation is zero")
        for _, labels in r.terms:
            if len(labels) < 2:
                raise ValueError(f"relation path {path_str(labels)} has length < 2")
            if self.path_ends(labels) != (r.source, r.target):
                raise NonParallelRelation(f"term {path_str(labels)} is not parallel to the relation")

    def path_ends(self, labels):
        if not labels:
            raise ValueError("empty path needs an explicit vertex")
        for a in labels:
            if a not in self._arrow:
                raise ValueError(f"unknown arrow {a}")
        for a, b in zip(labels, labels[1:]):
            if self._arrow[a].target != self._arrow[b].source:
                raise ValueError(f"arrows {a} and {b} are not composable")
        return (self._arrow[labels[0]].source, self._arrow[labels[-1]].target)

    def path(self, labels):
        s, t = self.path_ends(tuple(labels))
        return (s, t, tuple(labels))

    def arrow(self, label):
        return self._arrow[label]

    def has_vertex(self, x):
        return x in self._out

    def check_vertex(self, x):
        if x not in self._out:
            raise UnknownVertex(f"unknown vertex {x}")

    def arrows_out(self, x):
        return self._out[x]

    def arrows_in(self, x):
        return self._in[x]

    def _key(self):
        return (self.vertices, self.arrows, self.relations)

    def __eq__(self, other):
        return isinstance(other, BoundQuiver) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"BoundQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows, {len(self.relations)} relations)"

    def equations(self):
        """Sorted list of relation equation strings."""
        return sorted(r.equation() for r in self.relations)

    def same_up_to_scaling(self, other):
        """Equal quivers whose relations agree up to nonzero scalars and names."""
        if (self.vertices, self.arrows) != (other.vertices, other.arrows):
            return False
        mine = sorted((r.source, r.target, r.normalized()) for r in self.relations)
        theirs = sorted((r.source, r.target, r.normalized()) for r in other.relations)
        return mine == theirs

    def with_relations(self, relations):
        return BoundQuiver(self.vertices, self.arrows, relations)

    def is_hereditary(self):
        return not self.relations

    def full_subquiver(self, keep):
        """Full subquiver on ``keep`` with relations truncated to paths inside it.

        This presents the quotient A / <e_z : z not in keep>.
        """
        keep = set(keep)
        arrs = [a for a in self.arrows if a.source in keep and a.target in keep]
        live = {a.label for a in arrs}
        rels = []
        for r in self.relations:
            if r.source not in keep or r.target not in keep:
                continue
            terms = [(c, p) for c, p in r.terms if all(a in live for a in p)]
            if terms:
                rels.append(Relation(terms, r.source, r.target, r.name))
        return BoundQuiver([v for v in self.vertices if v in keep], arrs, rels)

    def relabel(self, vmap, amap):
        arrs = [(amap[a.label], vmap[a.source], vmap[a.target]) for a in self.arrows]
        rels = [Relation([(c, tuple(amap[a] for a in p)) for c, p in r.terms],
                         vmap[r.source], vmap[r.target], r.name) for r in self.relations]
        return BoundQuiver([vmap[v] for v in self.vertices], arrs, rels)


def opposite(Q):
    """Opposite bound quiver: arrows and relation paths reversed."""
    arrs = [(a.label, a.target, a.source) for a in Q.arrows]
    rels = [Relation([(c, tuple(reversed(p))) for c, p in r.terms], r.target, r.source, r.name)
            for r in Q.relations]
    return BoundQuiver(Q.vertices, arrs, rels)


# ---------------------------------------------------------------- parsing

_LABEL = r"[^\s:*+\-#/>=,]+"
_TERM_RE = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(" + _LABEL + r"(?:\s*\*\s*" + _LABEL + r")*)\s*")


def parse_bound_quiver(text):
    """Parse the line-oriented bound quiver grammar.

    Lines are ``vertices: v1 v2 ...``, ``arrow a: x -> y`` and
    ``relation [name:] t1 (+|-) t2 ...`` with terms ``[coeff*]a*b*...``.
    ``#`` starts a comment.
    """
    vertices = None
    arrows = []
    raw_rels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        if body.startswith("vertices:"):
            if vertices is not None:
                raise ParseError("vertices declared twice", lineno, indent + 1)
            vertices = body[len("vertices:"):].split()
            for v in vertices:
                if not re.fullmatch(_LABEL, v):
                    raise ParseError(f"bad vertex label {v!r}", lineno, line.find(v) + 1)
        elif body.startswith("arrow "):
            m = re.fullmatch(r"arrow\s+(" + _LABEL + r")\s*:\s*(" + _LABEL + r")\s*->\s*(" + _LABEL + r")", body)
            if not m:
                raise ParseError("expected 'arrow <label>: <src> -> <tgt>'", lineno, indent + 1)
            arrows.append((m.group(1), m.group(2), m.group(3), lineno))
        elif body.startswith("relation "):
            rest = body[len("relation "):]
            name = None
            m = re.match(r"\s*(" + _LABEL + r")\s*:", rest)
            if m:
                name = m.group(1)
                rest = rest[m.end():]
            col0 = line.find(rest) + 1
            raw_rels.append((name, _parse_terms(rest, lineno, col0), lineno))
        else:
            raise ParseError(f"unrecognised line {body!r}", lineno, indent + 1)
    if vertices is None:
        raise ParseError("missing 'vertices:' line", 1, 1)
    vset = set(vertices)
    for label, s, t, lineno in arrows:
        for end in (s, t):
            if end not in vset:
                raise UnknownVertex(f"line {lineno}: arrow {label} uses unknown vertex {end}")
    try:
        Q = BoundQuiver(vertices, [a[:3] for a in arrows])
    except UnknownVertex:
        raise
    except ValueError as e:
        raise ParseError(str(e), None, None) from None
    rels = []
    for name, terms, lineno in raw_rels:
        try:
            rels.append(Q._make_relation(terms, name))
        except NonParallelRelation as e:
            raise NonParallelRelation(f"line {lineno}: {e}") from None
        except ValueError as e:
            raise ParseError(str(e), lineno, 1) from None
    names = [r.name for r in rels if r.name is not None]
    if len(set(names)) != len(names):
        raise ParseError("duplicate relation name", None, None)
    return BoundQuiver(Q.vertices, Q.arrows, rels)


def _parse_terms(s, lineno, col0):
    pos = 0
    terms = []
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse relation term at {s[pos:]!r}", lineno, col0 + pos)
        sign, coeff, path = m.groups()
        if terms and sign is None:
            raise ParseError("missing '+' or '-' between terms", lineno, col0 + pos)
        c = scalar(coeff) if coeff else scalar(1)
        if sign == "-":
            c = -c
        terms.append((c, tuple(x.strip() for x in path.split("*"))))
        pos = m.end()
    if not terms:
        raise ParseError("empty relation", lineno, col0)
    return terms


def format_bound_quiver(Q, names=True):
    """Canonical text form accepted by :func:`parse_bound_quiver`."""
    lines = ["vertices: " + " ".join(Q.vertices)]
    for a in Q.arrows:
        lines.append(f"arrow {a.label}: {a.source} -> {a.target}")
    for r in Q.relations:
        prefix = f"{r.name}: " if (names and r.name) else ""
        lines.append("relation " + prefix + format_combination(r.terms))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- path basis

def concat(p, q):
    if p[1] != q[0]:
        return None
    return (p[0], q[1], p[2] + q[2])


class AlgebraBasis:
    """Exact basis of kQ/I by standard monomials, with multiplication.

    The basis of e_x A e_y consists of path classes x ~> y.  ``L`` is the
    length of the longest nonzero path class.
    """

    def __init__(self, quiver, length_cap=None):
        self.quiver = quiver
        Q = quiver
        cap = length_cap if length_cap is not None else 2 * len(Q.arrows) + 2
        maxrel = max((len(p) for r in Q.relations for _, p in r.terms), default=1)
        if cap < maxrel:
            raise ValueError("length_cap is shorter than a relation path")
        K = max(maxrel + 1, 2)
        self._plen = {}
        while True:
            ech, m = self._attempt(K)
            if m is not None:
                break
            if K > cap:
                raise NotAdmissible(f"nonzero path classes persist at length {cap}")
            K += 1
        self._ech = ech
        self.L = m - 1
        self._m = m
        basis = []
        for length in range(m):
            for p in self._paths_of_length(length):
                if p not in ech.rows:
                    basis.append(p)
        basis.sort(key=lambda p: (natural_key(p[0]), natural_key(p[1]), path_key(p)))
        self.paths = basis
        self.index = {p: i for i, p in enumerate(basis)}
        self.by_pair = {}
        for p in basis:
            self.by_pair.setdefault((p[0], p[1]), []).append(p)
        self._nf = {}
        self._mul = {}

    def _paths_of_length(self, n):
        if n not in self._plen:
            if n == 0:
                self._plen[n] = [trivial(v) for v in self.quiver.vertices]
            else:
                self._plen[n] = [(p[0], a.target, p[2] + (a.label,))
                                 for p in self._paths_of_length(n - 1) for a in self.quiver.arrows_out(p[1])]
        return self._plen[n]

    def _attempt(self, K):
        Q = self.quiver
        into = {v: {0: [trivial(v)]} for v in Q.vertices}
        outof = {v: {0: [trivial(v)]} for v in Q.vertices}
        for n in range(1, K):
            for v in Q.vertices:
                into[v][n] = [(p[0], v, p[2] + (a.label,)) for a in Q.arrows_in(v) for p in into[a.source][n - 1]]
                outof[v][n] = [(v, p[1], (a.label,) + p[2]) for a in Q.arrows_out(v) for p in outof[a.target][n - 1]]
        ech = Echelon(_pivot_key)
        for r in Q.relations:
            lmin = min(len(p) for _, p in r.terms)
            for i in range(K - lmin):
                for left in into[r.source][i]:
                    for j in range(K - lmin - i):
                        for right in outof[r.target][j]:
                            vec = {}
                            for c, p in r.terms:
                                full = left[2] + p + right[2]
                                if len(full) < K:
                                    key = (left[0], right[1], full)
                                    vec[key] = vec.get(key, 0) + c
                            ech.add(vec)
        for m in range(1, K):
            if all(not ech.reduce({p: 1}) for p in self._paths_of_length(m)):
                return ech, m
        return ech, None

    @property
    def dim(self):
        return len(self.paths)

    def dim_pair(self, x, y):
        return len(self.by_pair.get((x, y), ()))

    def basis(self, x, y):
        return self.by_pair.get((x, y), [])

    def nf(self, path):
        """Normal form of a path as a dict over basis paths."""
        if len(path[2]) >= self._m:
            return {}
        r = self._nf.get(path)
        if r is None:
            r = self._ech.reduce({path: scalar(1)})
            self._nf[path] = r
        return r

    def reduce(self, elem):
        out = {}
        for p, c in elem.items():
            if not c:
                continue
            for q, d in self.nf(p).items():
                v = out.get(q, 0) + c * d
                if v:
                    out[q] = v
                else:
                    out.pop(q, None)
        return out

    def mul_paths(self, p, q):
        key = (p, q)
        r = self._mul.get(key)
        if r is None:
            pq = concat(p, q)
            r = {} if pq is None else self.nf(pq)
            self._mul[key] = r
        return r

    def mul(self, u, v):
        out = {}
        for p, c in u.items():
            for q, d in v.items():
                if p[1] != q[0]:
                    continue
                for s, e in self.mul_paths(p, q).items():
                    val = out.get(s, 0) + c * d * e
                    if val:
                        out[s] = val
                    else:
                        out.pop(s, None)
        return out

    def arrow_elem(self, label):
        a = self.quiver.arrow(label)
        return {(a.source, a.target, (label,)): scalar(1)}

    def element_vector(self, elem):
        """Coordinates of a reduced element in the global basis order."""
        v = [scalar(0)] * self.dim
        for p, c in self.reduce(elem).items():
            v[self.index[p]] = c
        return v


@lru_cache(maxsize=512)
def path_basis(Q, length_cap=None):
    """Cached :class:`AlgebraBasis` of the bound quiver ``Q``."""
    return AlgebraBasis(Q, length_cap)


# ---------------------------------------------------------------- quotients

class QuotientData:
    """Correspondence between A and a quotient A/J re-presented as a bound quiver.

    ``arrow_images`` maps every arrow of A to its image, a dict over paths of
    the quotient quiver (empty dict for arrows mapping to zero).
    """

    def __init__(self, source, target, arrow_images, ideal_elements):
        self.source = source
        self.target = target
        self.arrow_images = arrow_images
        self.ideal_elements = ideal_elements

    @property
    def ideal_dim(self):
        return len(self.ideal_elements)

    @property
    def vertices(self):
        return self.target.quiver.vertices


def ideal_closure(A, gens):
    """Echelon basis (over A's basis paths) of the two-sided ideal generated by ``gens``."""
    ech = Echelon(_pivot_key)
    arrows = [A.arrow_elem(a.label) for a in A.quiver.arrows]
    queue = [A.reduce(g) for g in gens]
    while queue:
        g = queue.pop()
        if not g or not ech.add(g):
            continue
        for a in arrows:
            for prod in (A.mul(a, g), A.mul(g, a)):
                if prod:
                    queue.append(prod)
    return ech


def quotient_by_ideal(A, gens):
    """Quotient A/<gens> presented as a bound quiver with labels kept from A.

    Returns ``(BoundQuiver, AlgebraBasis, QuotientData)``.
    """
    Q = A.quiver
    J = ideal_closure(A, gens)

    def red(elem):
        return J.reduce(A.reduce(elem))

    alive = [v for v in Q.vertices if not J.contains({trivial(v): scalar(1)})]
    aset = set(alive)
    # Arrows independent modulo J + rad^2, chosen greedily by label.
    rad2 = Echelon(_pivot_key)
    for p in A.paths:
        if len(p[2]) >= 2:
            rad2.add(red({p: scalar(1)}))
    chosen = []
    for a in Q.arrows:
        if a.source in aset and a.target in aset:
            if rad2.add(red(A.arrow_elem(a.label))):
                chosen.append(a)
    bare = BoundQuiver(alive, chosen)
    N = A.L + 1
    dom = {}
    frontier = [trivial(v) for v in alive]
    for _ in range(N):
        frontier = [(p[0], a.target, p[2] + (a.label,)) for p in frontier for a in bare.arrows_out(p[1])]
        for p in frontier:
            dom.setdefault((p[0], p[1]), []).append(p)
    qbasis_keys = [p for p in A.paths if p not in J.rows]
    qindex = {p: i for i, p in enumerate(qbasis_keys)}

    def image_vec(path):
        v = [scalar(0)] * len(qbasis_keys)
        for q, c in red({path: scalar(1)}).items():
            v[qindex[q]] = c
        return v

    kernel = {}
    images = {}
    for pair, paths in dom.items():
        M = Matrix.from_rows([image_vec(p) for p in paths], len(qbasis_keys))
        images[pair] = (paths, M)
        ker = M.left_nullspace()
        elems = []
        kech = Echelon(_pivot_key)
        for row in ker.rows:
            kech.add({p: c for p, c in zip(paths, row) if c})
        elems = list(kech.rows.values())
        if elems:
            kernel[pair] = elems
    # Generators modulo rad*K + K*rad (truncated at length N).
    gen_space = Echelon(_pivot_key)
    for elems in kernel.values():
        for k in elems:
            for a in bare.arrows:
                for side in ("l", "r"):
                    prod = {}
                    for p, c in k.items():
                        q = concat((a.source, a.target, (a.label,)), p) if side == "l" else concat(p, (a.source, a.target, (a.label,)))
                        if q is not None and len(q[2]) <= N:
                            prod[q] = prod.get(q, 0) + c
                    if prod:
                        gen_space.add(prod)
    candidates = [k for elems in kernel.values() for k in elems]
    candidates.sort(key=lambda k: (max(len(p[2]) for p in k), len(k), sorted(path_key(p) for p in k)))
    rels = []
    for k in candidates:
        if gen_space.add(k):
            p0 = next(iter(k))
            rels.append(Relation([(c, p[2]) for p, c in k.items()], p0[0], p0[1]))
    Qbar = BoundQuiver(alive, chosen, rels)
    B = path_basis(Qbar)
    if B.dim != len(qbasis_keys):
        raise AssertionError("quotient presentation has the wrong dimension")
    arrow_images = {}
    chosen_labels = {a.label for a in chosen}
    for a in Q.arrows:
        if a.label in chosen_labels:
            arrow_images[a.label] = {(a.source, a.target, (a.label,)): scalar(1)}
            continue
        target = red(A.arrow_elem(a.label))
        if not target:
            arrow_images[a.label] = {}
            continue
        paths, M = images[(a.source, a.target)]
        tv = Matrix.from_rows([image_vec((a.source, a.target, (a.label,)))], len(qbasis_keys))
        sol = M.solve_left(tv)
        arrow_images[a.label] = {p: c for p, c in zip(paths, sol.rows[0]) if c}
    return Qbar, B, QuotientData(A, B, arrow_images, [dict(r) for r in J.rows.values()])
