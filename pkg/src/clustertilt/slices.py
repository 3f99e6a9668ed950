"""Local slices in the cluster-repetitive algebra: homotopy moves, completions, reflections.

A slice is stored with coordinates in the translation quiver ZΔ, where Δ is a
reference orientation of the slice tree: every reference edge ``(u, v)``
yields arrows ``(k, u) -> (k, v)`` and ``(k, v) -> (k + 1, u)``, and
``tau^-1 (k, u) = (k + 1, u)``.  Node ``u`` of a slice sits at ``(pos[u], u)``.
"""

import random

from .artranslate import IsInjective, IsProjective, irr_dim
from .errors import (DoesNotExist, IsInjectiveError, IsProjectiveError,
                     NoRightmostSlice, NotAdmissibleSink, NotASink,
                     NotASource, NotASlice, NotStrongSink, NotTreeType,
                     RecursionOrderViolated)
from .extension import lift_label, split_label
from .linalg import Matrix
from .modules import Representation, direct_sum, generated_subspaces, projective
from .quiver import natural_key, path_basis
from .scalars import scalar


class LocalSlice:
    """Slice of n indecomposable Č-modules placed on a section of ZΔ.

    Args:
        cover: the :class:`Cover` the modules live in.
        edges: reference edges ``(u, v)`` of the tree Δ on ``range(n)``.
        pos: tuple with the ZΔ coordinate of each node.
        mods: tuple of modules, one per node.
    """

    def __init__(self, cover, edges, pos, mods):
        self.cover = cover
        self.edges = tuple(edges)
        self.pos = tuple(pos)
        self.mods = tuple(mods)
        self._algebra = None
        self._inj = None
        self._proj = None
        for u, v in self.edges:
            if self.pos[u] not in (self.pos[v], self.pos[v] + 1):
                raise NotASlice(f"positions of nodes {u}, {v} do not form a section")

    def __len__(self):
        return len(self.mods)

    def arrows(self):
        """Oriented slice arrows (i, j) induced by the coordinates."""
        out = []
        for u, v in self.edges:
            out.append((u, v) if self.pos[u] == self.pos[v] else (v, u))
        return sorted(out)

    def successors(self, u):
        return [j for i, j in self.arrows() if i == u]

    def predecessors(self, u):
        return [i for i, j in self.arrows() if j == u]

    def sources(self):
        return [u for u in range(len(self)) if not self.predecessors(u)]

    def sinks(self):
        return [u for u in range(len(self)) if not self.successors(u)]

    def labels(self):
        return [m.loewy_label() for m in self.mods]

    def support(self):
        return sorted(frozenset().union(*[m.support() for m in self.mods]), key=natural_key)

    @property
    def algebra(self):
        if self._algebra is None:
            self._algebra = self.cover.support_algebra(list(self.mods))
        return self._algebra

    def injective_vertex(self, u):
        if self._inj is None:
            self._inj = [self.algebra.injective_vertex(m) for m in self.mods]
        return self._inj[u]

    def projective_vertex(self, u):
        if self._proj is None:
            self._proj = [self.algebra.projective_vertex(m) for m in self.mods]
        return self._proj[u]

    def replace(self, changes, keep_algebra=False):
        """New slice with ``changes`` = {u: (pos, module)}."""
        pos = list(self.pos)
        mods = list(self.mods)
        for u, (k, m) in changes.items():
            pos[u] = k
            mods[u] = m
        out = LocalSlice(self.cover, self.edges, pos, mods)
        if keep_algebra:
            out._algebra = self._algebra
        return out

    def shifted(self, k, pos=None):
        """Move every module k copies up, with new coordinates ``pos``."""
        return LocalSlice(self.cover, self.edges, self.pos if pos is None else pos,
                          [self.cover.shift(m, k) for m in self.mods])

    def key(self):
        return tuple(m.key() for m in self.mods)


def _is_tree(n, edges):
    if len(edges) != n - 1:
        return False
    adj = {u: set() for u in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u] - seen:
            seen.add(v)
            stack.append(v)
    return len(seen) == n


def slice_quiver(cover, mods):
    """Arrows with multiplicities among slice modules, from irreducible-map dimensions."""
    mods = cover.common(*mods)
    arrows = {}
    for i, X in enumerate(mods):
        for j, Y in enumerate(mods):
            if i == j:
                continue
            others = [Z for k, Z in enumerate(mods) if k not in (i, j)]
            d = irr_dim(X, Y, others, cover.seed)
            if d:
                arrows[(i, j)] = d
    return arrows


def slice_from_modules(cover, mods, copy=0, order=None):
    """Build a LocalSlice from C-modules (placed at ``copy``) or Č-modules.

    Raises NotTreeType when the slice quiver is not a tree with simple arrows.
    """
    lifted = [cover.lift(m, copy) if not _is_lifted(m) else m for m in mods]
    arrows = slice_quiver(cover, lifted)
    if any(d > 1 for d in arrows.values()):
        raise NotTreeType("slice quiver has multiple arrows")
    edges = sorted(arrows)
    if not _is_tree(len(lifted), edges):
        raise NotTreeType("slice quiver is not a tree")
    return LocalSlice(cover, edges, [0] * len(lifted), lifted)


def _is_lifted(m):
    return all("@" in v for v in m.quiver.vertices)


# ---------------------------------------------------------------- homotopy moves

def move_source(sl, u):
    """Replace the source u by tau^-1 of it (computed over the support algebra)."""
    if sl.predecessors(u):
        raise NotASource(f"node {u} is not a source")
    T = sl.algebra.tau_inverse(sl.mods[u])
    if isinstance(T, IsInjective):
        raise IsInjectiveError(f"node {u} ({sl.mods[u].loewy_label()}) is injective")
    return sl.replace({u: (sl.pos[u] + 1, T)}, keep_algebra=True)


def move_sink(sl, u):
    """Replace the sink u by tau of it."""
    if sl.successors(u):
        raise NotASink(f"node {u} is not a sink")
    T = sl.algebra.tau(sl.mods[u])
    if isinstance(T, IsProjective):
        raise IsProjectiveError(f"node {u} ({sl.mods[u].loewy_label()}) is projective")
    return sl.replace({u: (sl.pos[u] - 1, T)}, keep_algebra=True)


def movable_sources(sl):
    return [u for u in sl.sources() if sl.injective_vertex(u) is None]


def movable_sinks(sl):
    return [u for u in sl.sinks() if sl.projective_vertex(u) is None]


def rightmost_slice(sl, cap=200, trail=None):
    """Move non-injective sources until every source is injective.

    ``trail`` (a list) receives ``(u, pos, module)`` for every created node.
    """
    for _ in range(cap + 1):
        cand = movable_sources(sl)
        if not cand:
            return sl
        u = cand[0]
        sl = move_source(sl, u)
        if trail is not None:
            trail.append((u, sl.pos[u], sl.mods[u]))
    raise NoRightmostSlice(f"no rightmost slice within {cap} moves")


def leftmost_slice(sl, cap=200, trail=None):
    for _ in range(cap + 1):
        cand = movable_sinks(sl)
        if not cand:
            return sl
        u = cand[0]
        sl = move_sink(sl, u)
        if trail is not None:
            trail.append((u, sl.pos[u], sl.mods[u]))
    raise NoRightmostSlice(f"no leftmost slice within {cap} moves")


# ---------------------------------------------------------------- completions

def completion_nodes(arrows, injective, start):
    """Completion of ``start`` in a slice quiver.

    Args:
        arrows: iterable of (i, j) arrows.
        injective: set of injective nodes.
        start: the injective source.

    Returns the node set, or raises DoesNotExist when condition (d) fails.
    """
    arrows = list(arrows)
    G = {start}
    while True:
        new = set(G)
        changed = True
        while changed:
            changed = False
            for i, j in arrows:
                if j in new and i not in new:
                    new.add(i)
                    changed = True
        for i, j in arrows:
            if i in new and i in injective and j not in new:
                new.add(j)
        if new == G:
            break
        G = new
    for i, j in arrows:
        if j in G and j in injective and i not in injective:
            raise DoesNotExist(f"completion fails: arrow into an injective from a non-injective node {i}")
    return G


def strong_sinks(sl):
    """List of (vertex, node) with I_vertex an injective source of the slice."""
    out = []
    for u in sl.sources():
        x = sl.injective_vertex(u)
        if x is not None:
            out.append((x, u))
    return sorted(out, key=lambda t: natural_key(t[0]))


def completion(sl, x):
    """Completion G_x as a sorted list of node indices."""
    for y, u in strong_sinks(sl):
        if y == x:
            inj = {w for w in range(len(sl)) if sl.injective_vertex(w) is not None}
            return sorted(completion_nodes(sl.arrows(), inj, u))
    raise NotStrongSink(f"{x} is not a strong sink")


def admissible_sinks(sl):
    """Admissible sinks in label order, as (vertex, completion) pairs."""
    out = []
    for x, _ in strong_sinks(sl):
        try:
            out.append((x, completion(sl, x)))
        except DoesNotExist:
            continue
    return out


# ---------------------------------------------------------------- reflections

class Reflection:
    """Outcome of a reflection: the new slice, created nodes and holes.

    Attributes:
        slice: the reflected slice.
        created: list of ``(u, pos, module, kind)`` with kind "tau" or "new".
        holes: list of ``(u, pos)``.
        vertex: the admissible sink reflected at.
        group: node indices of the completion.
    """

    def __init__(self, sl, created, holes, vertex, group):
        self.slice = sl
        self.created = created
        self.holes = holes
        self.vertex = vertex
        self.group = group


def _topological(nodes, arrows):
    nodes = list(nodes)
    indeg = {u: 0 for u in nodes}
    for i, j in arrows:
        if i in indeg and j in indeg:
            indeg[j] += 1
    order = []
    ready = sorted(u for u in nodes if indeg[u] == 0)
    while ready:
        u = ready.pop(0)
        order.append(u)
        for i, j in arrows:
            if i == u and j in indeg:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
                    ready.sort()
    return order


def reflect(sl, x=None, verify=True):
    """Reflect a rightmost slice at an admissible sink (default: the first one)."""
    if movable_sources(sl):
        raise NotAdmissibleSink("slice is not rightmost")
    sinks = admissible_sinks(sl)
    if x is None:
        if not sinks:
            raise DoesNotExist("no admissible sink")
        x, G = sinks[0]
    else:
        match = [g for y, g in sinks if y == x]
        if not match:
            if any(y == x for y, _ in strong_sinks(sl)):
                raise DoesNotExist(f"completion at {x} does not exist")
            raise NotAdmissibleSink(f"{x} is not an admissible sink")
        G = match[0]
    B = sl.algebra
    cover = sl.cover
    arrows = sl.arrows()
    J = [w for w in G if sl.injective_vertex(w) is not None]
    Ms = [w for w in G if sl.injective_vertex(w) is None]
    changes = {}
    created = []
    holes = []
    for w in Ms:
        T = B.tau_inverse(sl.mods[w])
        if isinstance(T, IsInjective):
            raise RecursionOrderViolated("non-injective completion member has no tau inverse")
        changes[w] = (sl.pos[w] + 1, T)
        created.append((w, sl.pos[w] + 1, T, "tau"))
    built = {}
    for w in _topological(J, arrows):
        y = sl.injective_vertex(w)
        ytop = cover.rq.shift_vertex(y, 1)
        parts = [changes[m][1] for i, m in arrows if i == w and m in Ms]
        for i, j in arrows:
            if j == w and i in J:
                if i not in built:
                    raise RecursionOrderViolated(f"new projective for node {i} is not built yet")
                parts.append(built[i])
        P = new_projective(cover, ytop, parts)
        if verify:
            check_new_projective(cover, ytop, P)
        built[w] = P
        changes[w] = (sl.pos[w] + 2, P)
        holes.append((w, sl.pos[w] + 1))
        created.append((w, sl.pos[w] + 2, P, "new"))
    return Reflection(sl.replace(changes), created, holes, x, list(G))


def new_projective(cover, ytop, parts, tries=8):
    """Module with top S_ytop and radical the direct sum of ``parts``.

    The structure maps out of the top are a generic solution of the relations
    starting at ``ytop`` that generates the radical.
    """
    if parts:
        parts = cover.common(*parts)
        R = direct_sum(parts)
    else:
        R = None
    S = set(R.support()) if R is not None else set()
    T = S | {ytop}
    Q = cover.frame(T)
    Rt = cover.embed(R, T) if R is not None else Representation(Q, {}, check=False)
    outs = [a for a in Q.arrows_out(ytop) if Rt.dims[a.target]]
    offs = {}
    n = 0
    for a in outs:
        offs[a.label] = n
        n += Rt.dims[a.target]
    eqs = []
    for r in Q.relations:
        if r.source != ytop:
            continue
        dim_t = Rt.dims[r.target]
        rows = [[scalar(0)] * n for _ in range(dim_t)]
        for c, p in r.terms:
            a = p[0]
            if a not in offs:
                continue
            rest = Rt.path_matrix((Q.arrow(a).target, r.target, p[1:]))
            for i, row in enumerate(rest.rows):
                for j, val in enumerate(row):
                    if val:
                        rows[j][offs[a] + i] = rows[j][offs[a] + i] + c * val
        eqs.extend(rows)
    sol = Matrix.from_rows(eqs, n).nullspace() if eqs else Matrix.identity(n)
    rng = random.Random(cover.seed)
    d0 = Rt.dims[ytop]
    for _ in range(tries):
        coeffs = [rng.randint(-50, 50) for _ in range(sol.nrows)]
        vec = [sum((c * row[i] for c, row in zip(coeffs, sol.rows)), scalar(0)) for i in range(n)]
        gens = {}
        for a in outs:
            gens.setdefault(a.target, []).append(vec[offs[a.label]:offs[a.label] + Rt.dims[a.target]])
        if R is not None:
            span = generated_subspaces(Rt, gens)
            if any(span[v].nrows != Rt.dims[v] for v in Q.vertices):
                continue
        dims = dict(Rt.dims)
        dims[ytop] = d0 + 1
        mats = {}
        for a in Q.arrows:
            m = Rt.mats[a.label]
            if a.source == ytop and a.target == ytop:
                raise RecursionOrderViolated("loop at the new top vertex")
            if a.source == ytop:
                top_row = vec[offs[a.label]:offs[a.label] + Rt.dims[a.target]] if a.label in offs else [scalar(0)] * Rt.dims[a.target]
                mats[a.label] = Matrix.from_rows([top_row] + m.rows, Rt.dims[a.target])
            elif a.target == ytop:
                mats[a.label] = Matrix.from_rows([[scalar(0)] + r for r in m.rows], d0 + 1)
            else:
                mats[a.label] = m
        P = Representation(Q, dims, mats, check=True)
        return cover.embed(P)
    raise RecursionOrderViolated(f"no structure maps generate the radical of the new projective at {ytop}")


def window_projective(cover, y, depth=2):
    """Indecomposable projective of the cluster-repetitive algebra at vertex y."""
    _, c = split_label(y)
    while True:
        W = cover.rq.window(c - depth, c)
        P = projective(path_basis(W), y)
        lowest = min(split_label(v)[1] for v in P.support())
        if lowest > c - depth or depth > 16:
            return cover.embed(P)
        depth *= 2


def check_new_projective(cover, ytop, P):
    if not cover.iso(P, window_projective(cover, ytop)):
        raise RecursionOrderViolated(f"new projective at {ytop} differs from the indecomposable projective")


# ---------------------------------------------------------------- duality

def coreflect(sl, x=None, verify=True):
    """Coreflection at an admissible source, via the opposite algebra."""
    mirror = sl.cover.mirror()
    msl = mirror_slice(sl, mirror)
    msl = _as_leftmost_check(msl)
    r = reflect(msl, None if x is None else mirror_vertex_label(x), verify)
    back = mirror_slice(r.slice, sl.cover)
    created = [(u, -k, mirror.mirror_module(m, sl.cover), kind) for u, k, m, kind in r.created]
    holes = [(u, -k) for u, k in r.holes]
    vertex = mirror_vertex_label(r.vertex)
    return Reflection(back, created, holes, vertex, r.group)


def _as_leftmost_check(msl):
    if movable_sources(msl):
        raise NotAdmissibleSink("slice is not leftmost")
    return msl


def mirror_vertex_label(x):
    b, i = split_label(x)
    return lift_label(b, -i)


def mirror_slice(sl, target_cover):
    mods = [sl.cover.mirror_module(m, target_cover) for m in sl.mods]
    edges = [(v, u) for u, v in sl.edges]
    return LocalSlice(target_cover, edges, [-k for k in sl.pos], mods)


def strong_sources(sl):
    out = []
    for u in sl.sinks():
        x = sl.projective_vertex(u)
        if x is not None:
            out.append((x, u))
    return sorted(out, key=lambda t: natural_key(t[0]))


def admissible_sources(sl):
    mirror = sl.cover.mirror()
    msl = mirror_slice(sl, mirror)
    return [(mirror_vertex_label(x), g) for x, g in admissible_sinks(msl)]


def completion_from_modules(cover, mods, x, copy=0):
    """Completion at x for an arbitrary slice given by modules (no tree needed).

    Arrows come from irreducible-map dimensions and injectivity is decided
    over the support algebra, so this also covers slices that are not trees.
    """
    lifted = [cover.lift(m, copy) if not _is_lifted(m) else m for m in mods]
    arrows = list(slice_quiver(cover, lifted))
    B = cover.support_algebra(lifted)
    inj = {i: B.injective_vertex(m) for i, m in enumerate(lifted)}
    target = x if "@" in str(x) else lift_label(x, copy)
    for i, y in inj.items():
        if y == target and not any(j == i for _, j in arrows):
            injset = {j for j, v in inj.items() if v is not None}
            return sorted(completion_nodes(arrows, injset, i))
    raise NotStrongSink(f"{x} is not a strong sink")
