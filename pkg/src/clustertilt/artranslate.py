"""Auslander-Reiten translations via the Nakayama functor.

``tau(M)`` is the kernel of nu(p1): nu P1 -> nu P0 for a minimal projective
presentation P1 -> P0 -> M -> 0; ``tau_inverse`` is the dual construction,
computed as D tau_{A^op} D.
"""

from .errors import NotIndecomposable
from .linalg import Matrix, vstack
from .modules import (direct_sum, dual, element_action_matrix, hom_basis,
                      injective, is_indecomposable, is_isomorphic, projective,
                      projective_cover_data, submodule, compose)
from .quiver import opposite, path_basis
from .scalars import scalar


class IsProjective:
    """Marker returned by :func:`tau` for projective modules."""

    def __bool__(self):
        return False

    def __repr__(self):
        return "IsProjective"


class IsInjective:
    """Marker returned by :func:`tau_inverse` for injective modules."""

    def __bool__(self):
        return False

    def __repr__(self):
        return "IsInjective"


def projective_presentation(M, A):
    """Minimal presentation data.

    Returns ``(gens0, gens1)``: gens0 lists the vertices x_i of P0; gens1 lists
    pairs (x'_j, w_j) where w_j[i] is an element of e_{x_i} A e_{x'_j} giving
    the component P_{x'_j} -> P_{x_i} of p1.
    """
    top0 = projective_cover_data(M)
    xs = [x for x, _ in top0]
    P0 = direct_sum([projective(A, x) for x in xs]) if xs else None
    if P0 is None:
        return [], []
    pis = [element_action_matrix(M, x, v, A) for x, v in top0]
    pi = {y: vstack([f[y] for f in pis], M.dims[y]) for y in M.quiver.vertices}
    ker_subs = {y: pi[y].left_nullspace() for y in M.quiver.vertices}
    K, incl = submodule(P0, ker_subs)
    gens1 = []
    for x1, w in projective_cover_data(K):
        vec = incl[x1].row_vector(w) if K.dims[x1] else []
        parts = []
        off = 0
        for x0 in xs:
            basis = A.basis(x0, x1)
            parts.append({p: c for p, c in zip(basis, vec[off:off + len(basis)]) if c})
            off += len(basis)
        gens1.append((x1, parts))
    return xs, gens1


def nakayama_block(A, x1, x0, w, v):
    """Matrix at vertex v of nu(w): I_{x1} -> I_{x0} for w in e_{x0} A e_{x1}."""
    rows_b = A.basis(v, x1)
    cols_b = A.basis(v, x0)
    idx = {p: i for i, p in enumerate(rows_b)}
    m = Matrix.zeros(len(rows_b), len(cols_b))
    for j, q in enumerate(cols_b):
        for p, c in A.mul(({q: scalar(1)}), w).items():
            m.rows[idx[p]][j] = m.rows[idx[p]][j] + c
    return m


def tau(M, A=None, check=False):
    """Auslander-Reiten translate of an indecomposable module.

    Args:
        M: indecomposable representation.
        A: its algebra basis (computed from ``M.quiver`` when omitted).
        check: verify indecomposability first.

    Returns:
        a Representation, or an :class:`IsProjective` marker.
    """
    A = A or path_basis(M.quiver)
    if check and not is_indecomposable(M):
        raise NotIndecomposable("tau needs an indecomposable module")
    xs, gens1 = projective_presentation(M, A)
    if not gens1:
        return IsProjective()
    Q = M.quiver
    nuP1 = direct_sum([injective(A, x1) for x1, _ in gens1])
    subs = {}
    for v in Q.vertices:
        blocks = []
        for x1, parts in gens1:
            row_blocks = [nakayama_block(A, x1, x0, w, v) for x0, w in zip(xs, parts)]
            nr = A.dim_pair(v, x1)
            cat = Matrix.zeros(nr, 0)
            for b in row_blocks:
                cat = Matrix.from_rows([r + s for r, s in zip(cat.rows, b.rows)], cat.ncols + b.ncols)
            blocks.append(cat)
        ncols = sum(A.dim_pair(v, x0) for x0 in xs)
        nu = vstack(blocks, ncols)
        subs[v] = nu.left_nullspace()
    T, _ = submodule(nuP1, subs)
    return T


def tau_inverse(M, A=None, check=False):
    """Inverse Auslander-Reiten translate, via duality with the opposite algebra."""
    Q = M.quiver
    if check and not is_indecomposable(M):
        raise NotIndecomposable("tau_inverse needs an indecomposable module")
    Qop = opposite(Q)
    Aop = path_basis(Qop)
    T = tau(dual(M, Qop), Aop)
    if isinstance(T, IsProjective):
        return IsInjective()
    return dual(T, Q)


def is_projective(M, A=None):
    return isinstance(tau(M, A), IsProjective)


def is_injective(M, A=None):
    return isinstance(tau_inverse(M, A), IsInjective)


def irr_dim(X, Y, intermediates, seed=0):
    """dim rad(X,Y)/rad^2(X,Y) with rad^2 spanned by compositions through ``intermediates``.

    X, Y are indecomposable and non-isomorphic; ``intermediates`` should list the
    indecomposables (other than X, Y) through which maps may factor.
    """
    H = hom_basis(X, Y)
    if not H:
        return 0
    Q = X.quiver

    def flat(f):
        return [c for v in Q.vertices for r in f[v].rows for c in r]

    n = len(flat(H[0]))
    span = []
    for Z in intermediates:
        if is_isomorphic(Z, X, seed) or is_isomorphic(Z, Y, seed):
            continue
        for f in hom_basis(X, Z):
            for g in hom_basis(Z, Y):
                span.append(flat(compose(f, g)))
    r = Matrix.from_rows(span, n).rank() if span else 0
    return len(H) - r
