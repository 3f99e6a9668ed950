"""Modules over the cluster-repetitive algebra and their support algebras.

A module with finite support S is stored as a representation of the *frame*
on S: the full subquiver of the cluster-repetitive quiver on S, bound by the
relations truncated to S.  This presents Č/<e_z : z not in S>, so every Č-module
supported in S is a module over it.
"""

from .artranslate import IsInjective, IsProjective, tau, tau_inverse
from .extension import RepetitiveQuiver, lift_label, split_label
from .linalg import Matrix
from .modules import (Representation, annihilator, injective, inflate,
                      is_isomorphic, projective, restrict, socle_subspaces_dims,
                      top_dims)
from .quiver import natural_key, opposite, path_basis, quotient_by_ideal


class Cover:
    """Bookkeeping for computations inside the cluster-repetitive algebra of C.

    Args:
        C: bound quiver of the tilted algebra.
        seed: seed for randomised isomorphism tests and generic choices.
        ext: optional precomputed relation-extension.
    """

    def __init__(self, C, seed=0, ext=None):
        self.C = C
        self.rq = RepetitiveQuiver(C, ext)
        self.Ct = self.rq.Ct
        self.seed = seed
        self._frames = {}
        self._support = {}
        self._mirror = None

    # -- frames ---------------------------------------------------------------

    def frame(self, S):
        S = frozenset(S)
        Q = self._frames.get(S)
        if Q is None:
            copies = [split_label(v)[1] for v in S] or [0]
            W = self.rq.window(min(copies), max(copies))
            Q = self._frames.setdefault(S, W.full_subquiver(S))
        return Q

    def embed(self, M, S=None):
        """Re-express M over the frame on S (default: its own support)."""
        S = frozenset(M.support()) if S is None else frozenset(S) | frozenset(M.support())
        Q = self.frame(S)
        if Q is M.quiver:
            return M
        mats = {}
        for a in Q.arrows:
            if M.dims.get(a.source, 0) and M.dims.get(a.target, 0):
                mats[a.label] = M.mats[a.label]
        return Representation(Q, {v: M.dims.get(v, 0) for v in Q.vertices}, mats, check=False)

    def common(self, *mods):
        S = frozenset().union(*[m.support() for m in mods])
        return [self.embed(m, S) for m in mods]

    def lift(self, M, copy=0):
        """A C-module placed at the given copy."""
        S = [lift_label(v, copy) for v in M.support()]
        Q = self.frame(S)
        dims = {lift_label(v, copy): d for v, d in M.dims.items() if d}
        mats = {lift_label(a.label, copy): M.mats[a.label] for a in M.quiver.arrows
                if M.dims[a.source] and M.dims[a.target]}
        return Representation(Q, dims, mats, check=True)

    def shift(self, M, k):
        """Move a module k copies up (k = -1 is the shift phi)."""
        def sv(v):
            b, i = split_label(v)
            return lift_label(b, i + k)
        S = [sv(v) for v in M.support()]
        Q = self.frame(S)
        dims = {sv(v): M.dims[v] for v in M.support()}
        mats = {}
        for a in M.quiver.arrows:
            if M.dims[a.source] and M.dims[a.target]:
                mats[sv(a.label)] = M.mats[a.label]
        return Representation(Q, dims, mats, check=False)

    def pushdown(self, M):
        """Image under the covering functor: a module over the relation-extension."""
        Ct = self.Ct
        dims = {v: 0 for v in Ct.vertices}
        offs = {}
        for v in sorted(M.support(), key=natural_key):
            b, _ = split_label(v)
            offs[v] = dims[b]
            dims[b] += M.dims[v]
        mats = {a.label: Matrix.zeros(dims[a.source], dims[a.target]) for a in Ct.arrows}
        for a in M.quiver.arrows:
            if not (M.dims[a.source] and M.dims[a.target]):
                continue
            b, _ = split_label(a.label)
            m = mats[b]
            r0, c0 = offs[a.source], offs[a.target]
            for i, row in enumerate(M.mats[a.label].rows):
                m.rows[r0 + i][c0:c0 + len(row)] = row
        return Representation(Ct, dims, mats)

    def copy_range(self, M):
        cs = [split_label(v)[1] for v in M.support()]
        return (min(cs), max(cs)) if cs else (0, 0)

    # -- duality ---------------------------------------------------------------

    def mirror(self):
        """Cover of the opposite algebra, with new arrows keeping their labels."""
        if self._mirror is None:
            named = self.C.with_relations([r for r in _named_relations(self.rq)])
            m = Cover(opposite(named), self.seed)
            m._mirror = self
            self._mirror = m
        return self._mirror

    def mirror_vertex(self, v):
        b, i = split_label(v)
        return lift_label(b, -i)

    def mirror_arrow(self, a):
        b, i = split_label(a)
        return lift_label(b, 1 - i if b in self.rq.new else -i)

    def mirror_module(self, M, target):
        """D(M) as a module over the cluster-repetitive algebra of the opposite."""
        S = [self.mirror_vertex(v) for v in M.support()]
        Q = target.frame(S)
        dims = {self.mirror_vertex(v): M.dims[v] for v in M.support()}
        mats = {}
        for a in M.quiver.arrows:
            if M.dims[a.source] and M.dims[a.target]:
                mats[self.mirror_arrow(a.label)] = M.mats[a.label].transpose()
        return Representation(Q, dims, mats, check=True)

    # -- comparisons ------------------------------------------------------------

    def iso(self, M, N):
        if M.dim() != N.dim():
            return False
        if set(M.support()) != set(N.support()):
            return False
        M2, N2 = self.common(M, N)
        return is_isomorphic(M2, N2, self.seed)

    def iso_up_to_shift(self, M, N):
        """Return k with shift(M, k) ≅ N, or None."""
        (a, _), (b, _) = self.copy_range(M), self.copy_range(N)
        k = b - a
        return k if self.iso(self.shift(M, k), N) else None

    # -- support algebras -------------------------------------------------------

    def support_algebra(self, mods):
        """Quotient Č/Ann(mods), presented over the frame of their joint support.

        Returns a :class:`SupportAlgebra`.
        """
        S = frozenset().union(*[m.support() for m in mods])
        mods = [self.embed(m, S) for m in mods]
        ann = annihilator(mods, path_basis(self.frame(S)))
        key = (S, tuple(sorted(_elem_key(e) for e in ann)))
        sa = self._support.get(key)
        if sa is None:
            sa = self._support.setdefault(key, SupportAlgebra(self, S, ann))
        return sa


def _named_relations(rq):
    return [r.__class__(r.terms, r.source, r.target, label) for label, r in rq.ext.new_arrows]


def _elem_key(e):
    return tuple(sorted(((p[0], p[1], p[2]), str(c)) for p, c in e.items()))


class SupportAlgebra:
    """B = Č/Ann for a family of modules with joint support S."""

    def __init__(self, cover, S, ann):
        self.cover = cover
        self.S = S
        self.frame = cover.frame(S)
        self.A = path_basis(self.frame)
        self.quiver, self.basis, self.qdata = quotient_by_ideal(self.A, ann)
        self._inj = {}
        self._proj = {}

    def to_B(self, M):
        return restrict(self.cover.embed(M, self.S), self.qdata)

    def from_B(self, N):
        return self.cover.embed(inflate(N, self.qdata))

    def injective(self, x):
        if x not in self._inj:
            self._inj[x] = self.from_B(injective(self.basis, x))
        return self._inj[x]

    def projective(self, x):
        if x not in self._proj:
            self._proj[x] = self.from_B(projective(self.basis, x))
        return self._proj[x]

    def tau_inverse(self, M):
        r = tau_inverse(self.to_B(M), self.basis)
        return r if isinstance(r, IsInjective) else self.from_B(r)

    def tau(self, M):
        r = tau(self.to_B(M), self.basis)
        return r if isinstance(r, IsProjective) else self.from_B(r)

    def injective_vertex(self, M):
        """x with M ≅ I_x over B, or None."""
        soc = socle_subspaces_dims(M)
        if sum(soc.values()) != 1:
            return None
        x = next(v for v, d in soc.items() if d)
        if not self.quiver.has_vertex(x):
            return None
        return x if self.cover.iso(M, self.injective(x)) else None

    def projective_vertex(self, M):
        tp = top_dims(M)
        if sum(tp.values()) != 1:
            return None
        x = next(v for v, d in tp.items() if d)
        if not self.quiver.has_vertex(x):
            return None
        return x if self.cover.iso(M, self.projective(x)) else None

