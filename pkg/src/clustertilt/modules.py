"""Right modules over bound quiver algebras, as quiver representations.

A representation assigns a vector space k^{d_x} to each vertex and, to each
arrow ``a: x -> y``, a d_x by d_y matrix acting on row vectors, so that
``m . a = m @ M(a)``.  A morphism is a dict vertex -> matrix with
``M(a) @ f_y == f_x @ N(a)`` for every arrow.
"""

import json
import random

from .errors import (Inconclusive, NotAnnihilated, NotSubmodule,
                     RelationViolated, UnknownVertex)
from .linalg import Echelon, Matrix, block_diag, hstack, in_row_space
from .quiver import natural_key, path_basis, trivial
from .scalars import fmt, scalar


def base_vertex(label):
    """Strip a copy suffix: "3@1" -> "3"."""
    return str(label).split("@", 1)[0]


class Representation:
    """Finite-dimensional representation of a bound quiver.

    Args:
        quiver: the :class:`BoundQuiver` it lives over.
        dims: vertex -> dimension (missing vertices are 0).
        mats: arrow label -> :class:`Matrix` (missing arrows are zero maps).
        check: verify that every relation acts as zero.
    """

    __slots__ = ("quiver", "dims", "mats", "_cache")

    def __init__(self, quiver, dims, mats=None, check=True):
        self.quiver = quiver
        self.dims = {}
        for v in quiver.vertices:
            d = int(dims.get(v, 0))
            if d < 0:
                raise ValueError(f"negative dimension at {v}")
            self.dims[v] = d
        for v in dims:
            if not quiver.has_vertex(v):
                raise UnknownVertex(f"unknown vertex {v}")
        mats = mats or {}
        self.mats = {}
        for a in quiver.arrows:
            shape = (self.dims[a.source], self.dims[a.target])
            m = mats.get(a.label)
            if m is None:
                m = Matrix.zeros(*shape)
            elif not isinstance(m, Matrix):
                m = Matrix(m, shape[0], shape[1])
            if m.shape != shape:
                raise ValueError(f"arrow {a.label}: matrix shape {m.shape} != {shape}")
            self.mats[a.label] = m
        self._cache = {}
        if check:
            for r in quiver.relations:
                if not self.act(r.as_element()).is_zero():
                    raise RelationViolated(f"relation {r.equation()} does not act as zero")

    def __repr__(self):
        return f"Representation({self.loewy_label()} dim={self.dim_vector()})"

    def dim_vector(self):
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def dim(self):
        return sum(self.dims.values())

    def support(self):
        return [v for v in self.quiver.vertices if self.dims[v]]

    def is_zero(self):
        return self.dim() == 0

    def path_matrix(self, path):
        """Matrix of the right action of a path ``(x, y, labels)``."""
        x, y, labels = path
        m = Matrix.identity(self.dims[x])
        for a in labels:
            m = m @ self.mats[a]
        return m

    def act(self, elem, source=None, target=None):
        """Matrix of an algebra element supported on paths x ~> y."""
        out = None
        for p, c in elem.items():
            if not c:
                continue
            term = self.path_matrix(p).scale(c)
            out = term if out is None else out + term
        if out is None:
            if source is None:
                p = next(iter(elem), None)
                if p is None:
                    return Matrix.zeros(0, 0)
                source, target = p[0], p[1]
            return Matrix.zeros(self.dims[source], self.dims[target])
        return out

    def key(self):
        return (self.quiver, tuple(self.dims[v] for v in self.quiver.vertices),
                tuple(self.mats[a.label] for a in self.quiver.arrows))

    def __eq__(self, other):
        return isinstance(other, Representation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # -- structure ---------------------------------------------------------

    def radical_subspaces(self):
        subs = {}
        for v in self.quiver.vertices:
            rows = []
            for a in self.quiver.arrows_in(v):
                rows.extend(self.mats[a.label].rows)
            subs[v] = Matrix.from_rows(rows, self.dims[v]).row_space()
        return subs

    def socle_subspaces(self):
        subs = {}
        for v in self.quiver.vertices:
            outs = self.quiver.arrows_out(v)
            if not outs:
                subs[v] = Matrix.identity(self.dims[v])
                continue
            big = hstack([self.mats[a.label] for a in outs], self.dims[v])
            subs[v] = big.left_nullspace().row_space()
        return subs

    def radical_layers(self):
        """Dimension vectors of the successive Loewy (radical) layers, top first."""
        if "layers" not in self._cache:
            layers = []
            M = self
            while not M.is_zero():
                R, _ = submodule(M, M.radical_subspaces())
                layers.append({v: M.dims[v] - R.dims[v] for v in M.quiver.vertices})
                M = R
            self._cache["layers"] = layers
        return self._cache["layers"]

    def socle_layers(self):
        if "slayers" not in self._cache:
            layers = []
            M = self
            while not M.is_zero():
                soc = M.socle_subspaces()
                layers.append({v: soc[v].nrows for v in M.quiver.vertices})
                M, _ = quotient(M, soc)
            self._cache["slayers"] = layers
        return self._cache["slayers"]

    def loewy_label(self):
        """Stacked layer notation, top first, e.g. "4/23/1"."""
        if "label" not in self._cache:
            parts = []
            for layer in self.radical_layers():
                names = []
                for v in sorted(layer, key=lambda v: natural_key(base_vertex(v))):
                    names.extend([base_vertex(v)] * layer[v])
                names.sort(key=natural_key)
                sep = "" if all(len(n) == 1 for n in names) else ","
                parts.append(sep.join(names))
            self._cache["label"] = "/".join(parts) if parts else "0"
        return self._cache["label"]

    def invariant(self):
        """Cheap isomorphism invariant used to prefilter comparisons."""
        if "inv" not in self._cache:
            rl = tuple(tuple(l[v] for v in self.quiver.vertices) for l in self.radical_layers())
            sl = tuple(tuple(l[v] for v in self.quiver.vertices) for l in self.socle_layers())
            self._cache["inv"] = (self.dim_vector(), rl, sl)
        return self._cache["inv"]

    # -- serialisation ------------------------------------------------------

    def to_json(self):
        return {
            "dims": {v: self.dims[v] for v in self.quiver.vertices if self.dims[v]},
            "matrices": {a.label: [[fmt(x) for x in r] for r in self.mats[a.label].rows]
                         for a in self.quiver.arrows
                         if self.dims[a.source] and self.dims[a.target] and not self.mats[a.label].is_zero()},
        }

    @classmethod
    def from_json(cls, quiver, data):
        if isinstance(data, str):
            data = json.loads(data)
        dims = {str(k): v for k, v in data.get("dims", {}).items()}
        mats = {}
        for a, rows in data.get("matrices", {}).items():
            arr = quiver.arrow(a)
            mats[a] = Matrix([[scalar(x) for x in r] for r in rows], dims.get(arr.source, 0), dims.get(arr.target, 0))
        return cls(quiver, dims, mats)


# ---------------------------------------------------------------- constructors

def simple(Q, x):
    Q.check_vertex(x)
    return Representation(Q, {x: 1})


def projective(A, x):
    """P_x = e_x A, with basis the path classes starting at x."""
    Q = A.quiver
    Q.check_vertex(x)
    dims = {y: A.dim_pair(x, y) for y in Q.vertices}
    mats = {}
    for a in Q.arrows:
        src = A.basis(x, a.source)
        tgt = A.basis(x, a.target)
        idx = {p: i for i, p in enumerate(tgt)}
        rows = []
        for p in src:
            row = [scalar(0)] * len(tgt)
            for q, c in A.mul_paths(p, (a.source, a.target, (a.label,))).items():
                row[idx[q]] = c
            rows.append(row)
        mats[a.label] = Matrix.from_rows(rows, len(tgt))
    return Representation(Q, dims, mats, check=False)


def injective(A, x):
    """I_x = D(A e_x), with basis dual to the path classes ending at x."""
    Q = A.quiver
    Q.check_vertex(x)
    dims = {v: A.dim_pair(v, x) for v in Q.vertices}
    mats = {}
    for a in Q.arrows:
        src = A.basis(a.source, x)
        tgt = A.basis(a.target, x)
        idx = {p: i for i, p in enumerate(src)}
        m = Matrix.zeros(len(src), len(tgt))
        for j, q in enumerate(tgt):
            for p, c in A.mul_paths((a.source, a.target, (a.label,)), q).items():
                m.rows[idx[p]][j] = c
        mats[a.label] = m
    return Representation(Q, dims, mats, check=False)


def direct_sum(mods):
    Q = mods[0].quiver
    dims = {v: sum(M.dims[v] for M in mods) for v in Q.vertices}
    mats = {a.label: block_diag([M.mats[a.label] for M in mods]) for a in Q.arrows}
    return Representation(Q, dims, mats, check=False)


def zero_module(Q):
    return Representation(Q, {}, check=False)


# ---------------------------------------------------------------- sub/quotient

def submodule(M, subs):
    """Submodule spanned by the given per-vertex row bases; returns (module, inclusion)."""
    Q = M.quiver
    bases = {}
    for v in Q.vertices:
        s = subs.get(v)
        bases[v] = s.row_space() if s is not None else Matrix.zeros(0, M.dims[v])
    mats = {}
    for a in Q.arrows:
        src, tgt = bases[a.source], bases[a.target]
        img = src @ M.mats[a.label]
        if src.nrows == 0:
            mats[a.label] = Matrix.zeros(0, tgt.nrows)
            continue
        sol = tgt.solve_left(img)
        if sol is None:
            raise NotSubmodule(f"subspace not closed under arrow {a.label}")
        mats[a.label] = sol
    S = Representation(Q, {v: bases[v].nrows for v in Q.vertices}, mats, check=False)
    return S, {v: bases[v] for v in Q.vertices}


def quotient(M, subs):
    """Quotient M / sub; returns (module, projection)."""
    Q = M.quiver
    info = {}
    for v in Q.vertices:
        s = subs.get(v)
        r, piv = (s.rref() if s is not None else (Matrix.zeros(0, M.dims[v]), []))
        comp = [c for c in range(M.dims[v]) if c not in set(piv)]
        info[v] = (r, piv, comp)
    mats = {}
    for a in Q.arrows:
        r_s, piv_s, comp_s = info[a.source]
        r_t, piv_t, comp_t = info[a.target]
        rows = []
        for c in comp_s:
            img = M.mats[a.label].rows[c]
            red = in_row_space(img, r_t, piv_t)
            rows.append([red[j] for j in comp_t])
        mats[a.label] = Matrix.from_rows(rows, len(comp_t))
    for a in Q.arrows:
        # closure check: sub maps into sub
        r_s, _, _ = info[a.source]
        r_t, piv_t, _ = info[a.target]
        for row in (r_s @ M.mats[a.label]).rows:
            if any(in_row_space(row, r_t, piv_t)):
                raise NotSubmodule(f"subspace not closed under arrow {a.label}")
    proj = {}
    for v in Q.vertices:
        r, piv, comp = info[v]
        m = Matrix.zeros(M.dims[v], len(comp))
        for i in range(M.dims[v]):
            e = [scalar(0)] * M.dims[v]
            e[i] = scalar(1)
            red = in_row_space(e, r, piv)
            m.rows[i] = [red[j] for j in comp]
        proj[v] = m
    return Representation(Q, {v: len(info[v][2]) for v in Q.vertices}, mats, check=False), proj


def generated_subspaces(M, gens):
    """Per-vertex bases of the submodule generated by vectors ``gens`` (vertex -> list of rows)."""
    Q = M.quiver
    spans = {v: Echelon(lambda i: i) for v in Q.vertices}
    queue = [(v, row) for v, rows in gens.items() for row in rows]
    while queue:
        v, row = queue.pop()
        if spans[v].add({i: c for i, c in enumerate(row) if c}):
            for a in Q.arrows_out(v):
                img = M.mats[a.label].row_vector(row)
                if any(img):
                    queue.append((a.target, img))
    out = {}
    for v in Q.vertices:
        rows = []
        for r in spans[v].rows.values():
            vec = [scalar(0)] * M.dims[v]
            for i, c in r.items():
                vec[i] = c
            rows.append(vec)
        out[v] = Matrix.from_rows(rows, M.dims[v])
    return out


def socle_subspaces_dims(M):
    return {v: m.nrows for v, m in M.socle_subspaces().items()}


def top_dims(M):
    return {v: M.dims[v] - m.nrows for v, m in M.radical_subspaces().items()}


def radical(M):
    return submodule(M, M.radical_subspaces())[0]


def top(M):
    return quotient(M, M.radical_subspaces())[0]


def socle(M):
    return submodule(M, M.socle_subspaces())[0]


def socle_quotient(M):
    return quotient(M, M.socle_subspaces())[0]


# ---------------------------------------------------------------- morphisms

def _sparse_nullspace(eqs, nvars):
    ech = Echelon(lambda i: i)
    for e in eqs:
        if e:
            ech.add(e)
    piv = ech.rows
    free = [i for i in range(nvars) if i not in piv]
    basis = []
    for f in free:
        v = {f: scalar(1)}
        for p, row in piv.items():
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def hom_basis(M, N):
    """Basis of Hom(M, N) as a list of dicts vertex -> matrix."""
    Q = M.quiver
    offs = {}
    n = 0
    for v in Q.vertices:
        offs[v] = n
        n += M.dims[v] * N.dims[v]
    eqs = []
    for a in Q.arrows:
        x, y = a.source, a.target
        mx, my, nx, ny = M.dims[x], M.dims[y], N.dims[x], N.dims[y]
        if mx == 0 or ny == 0:
            continue
        Ma, Na = M.mats[a.label].rows, N.mats[a.label].rows
        for i in range(mx):
            for j in range(ny):
                e = {}
                # (M(a) f_y)[i,j] - (f_x N(a))[i,j]
                for k in range(my):
                    c = Ma[i][k]
                    if c:
                        idx = offs[y] + k * ny + j
                        e[idx] = e.get(idx, 0) + c
                for k in range(nx):
                    c = Na[k][j]
                    if c:
                        idx = offs[x] + i * nx + k
                        e[idx] = e.get(idx, 0) - c
                eqs.append({k: c for k, c in e.items() if c})
    out = []
    for vec in _sparse_nullspace(eqs, n):
        f = {}
        for v in Q.vertices:
            d1, d2 = M.dims[v], N.dims[v]
            m = Matrix.zeros(d1, d2)
            base = offs[v]
            for i in range(d1):
                for j in range(d2):
                    c = vec.get(base + i * d2 + j)
                    if c:
                        m.rows[i][j] = c
            f[v] = m
        out.append(f)
    return out


def compose(f, g):
    """First f then g."""
    return {v: f[v] @ g[v] for v in f}


def combine(fs, coeffs, M, N):
    out = {v: Matrix.zeros(M.dims[v], N.dims[v]) for v in M.quiver.vertices}
    for f, c in zip(fs, coeffs):
        if c:
            for v in out:
                out[v] = out[v] + f[v].scale(c)
    return out


def is_iso_map(f):
    for m in f.values():
        if m.nrows != m.ncols:
            return False
        if m.nrows and m.rank() != m.nrows:
            return False
    return True


def is_morphism(f, M, N):
    for a in M.quiver.arrows:
        if M.mats[a.label] @ f[a.target] != f[a.source] @ N.mats[a.label]:
            return False
    return True


def is_isomorphic(M, N, seed=0, tries=3, sweep_limit=6):
    """Decide M ≅ N by random combinations of Hom(M, N), then a small sweep.

    Raises Inconclusive only when the hom dimensions cannot separate the
    modules and no invertible map was found.
    """
    if M.dim_vector() != N.dim_vector():
        return False
    if M.invariant() != N.invariant():
        return False
    if M == N:
        return True
    H = hom_basis(M, N)
    if not H:
        return False
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randint(-1000, 1000) for _ in H]
        if is_iso_map(combine(H, coeffs, M, N)):
            return True
    if len(H) <= sweep_limit:
        import itertools
        for coeffs in itertools.product((-1, 0, 1), repeat=len(H)):
            if any(coeffs) and is_iso_map(combine(H, coeffs, M, N)):
                return True
    if len(H) != len(hom_basis(N, M)) or len(H) != len(hom_basis(M, M)):
        return False
    raise Inconclusive("no invertible map found although hom dimensions agree")


def endomorphism_radical_rank(M):
    """dim End(M) - dim rad End(M), via the trace form (characteristic 0)."""
    E = hom_basis(M, M)
    gram = []
    for f in E:
        row = []
        for g in E:
            h = compose(f, g)
            row.append(sum((sum((h[v].rows[i][i] for i in range(h[v].nrows)), scalar(0)) for v in h), scalar(0)))
        gram.append(row)
    return Matrix.from_rows(gram, len(E)).rank() if E else 0


def is_indecomposable(M):
    return not M.is_zero() and endomorphism_radical_rank(M) == 1


def kernel_of(f, M, N):
    """Kernel of a morphism f: M -> N as a submodule of M."""
    subs = {v: f[v].left_nullspace() for v in M.quiver.vertices}
    return submodule(M, subs)


def image_subspaces(f, M, N):
    return {v: f[v].row_space() for v in M.quiver.vertices}


def cokernel_of(f, M, N):
    return quotient(N, image_subspaces(f, M, N))


# ---------------------------------------------------------------- algebra-level

def regular_module(A):
    return direct_sum([projective(A, x) for x in A.quiver.vertices])


def annihilator(mods, A=None):
    """Basis of {a in A : X . a = 0 for all X in mods}, as algebra elements."""
    Q = mods[0].quiver
    A = A or path_basis(Q)
    out = []
    for (x, y), paths in sorted(A.by_pair.items(), key=lambda t: (natural_key(t[0][0]), natural_key(t[0][1]))):
        cols = []
        for p in paths:
            entries = []
            for X in mods:
                entries.extend(c for r in X.path_matrix(p).rows for c in r)
            cols.append(entries)
        if not cols[0]:
            out.extend({p: scalar(1)} for p in paths)
            continue
        # coefficient vectors c with sum c_p X(p) = 0
        ker = Matrix.from_rows(cols, len(cols[0])).left_nullspace()
        ker = ker.rref()[0]
        for row in ker.rows:
            out.append({p: c for p, c in zip(paths, row) if c})
    return out


def restrict(M, qdata):
    """View an A-module annihilated by the quotient ideal as a module over the quotient."""
    B = qdata.target.quiver
    for p in qdata.ideal_elements:
        if not M.act(p).is_zero():
            raise NotAnnihilated("module is not annihilated by the quotient ideal")
    for v in M.quiver.vertices:
        if M.dims[v] and not B.has_vertex(v):
            raise NotAnnihilated(f"module is supported at removed vertex {v}")
    return Representation(B, {v: M.dims[v] for v in B.vertices},
                          {a.label: M.mats[a.label] for a in B.arrows})


def inflate(N, qdata):
    """View a module over the quotient as a module over the original algebra."""
    A = qdata.source.quiver
    dims = {v: (N.dims[v] if N.quiver.has_vertex(v) else 0) for v in A.vertices}
    mats = {}
    for a in A.arrows:
        img = qdata.arrow_images[a.label]
        if img:
            mats[a.label] = N.act(img)
    return Representation(A, dims, mats)


def dual(M, Qop=None):
    """D M = Hom_k(M, k) as a representation of the opposite quiver."""
    from .quiver import opposite
    Qop = Qop or opposite(M.quiver)
    return Representation(Qop, dict(M.dims), {a: m.transpose() for a, m in M.mats.items()}, check=False)


def transport(M, Q2, vmap, amap):
    """Relabel a representation along a quiver isomorphism."""
    return Representation(Q2, {vmap[v]: d for v, d in M.dims.items() if d},
                          {amap[a]: m for a, m in M.mats.items()}, check=False)


def cyclic_quotient(A, x, kill_paths):
    """P_x modulo the submodule generated by the given paths from x."""
    P = projective(A, x)
    gens = {}
    for labels in kill_paths:
        p = A.quiver.path(labels) if labels else trivial(x)
        if p[0] != x:
            raise ValueError(f"path {labels} does not start at {x}")
        vec = [scalar(0)] * P.dims[p[1]]
        idx = {q: i for i, q in enumerate(A.basis(x, p[1]))}
        for q, c in A.nf(p).items():
            vec[idx[q]] = c
        gens.setdefault(p[1], []).append(vec)
    return quotient(P, generated_subspaces(P, gens))[0]


def projective_cover_data(M):
    """Top generators: a list of (vertex, vector) lifting a basis of top M."""
    rad = M.radical_subspaces()
    out = []
    for v in M.quiver.vertices:
        r, piv = rad[v].rref()
        comp = [c for c in range(M.dims[v]) if c not in set(piv)]
        for c in comp:
            e = [scalar(0)] * M.dims[v]
            e[c] = scalar(1)
            out.append((v, e))
    return out


def element_action_matrix(M, x, vec, A):
    """Map P_x -> M sending e_x to vec, as matrices per vertex."""
    f = {}
    for y in M.quiver.vertices:
        rows = []
        for p in A.basis(x, y):
            rows.append(M.path_matrix(p).row_vector(vec) if M.dims[x] else [scalar(0)] * M.dims[y])
        f[y] = Matrix.from_rows(rows, M.dims[y])
    return f

