"""EXPERIMENTAL: tubes of cluster-tilted algebras by coray insertion.

The construction is only known to work in special cases: the new injective
is inserted where its socle quotient is tau of the non-projective summand of
rad P_i, and the tube is then knitted with exact translates over the
relation-extension.  Outputs carry :data:`WARNING`.
"""

import json
import random
import warnings

from .artranslate import IsInjective, IsProjective, tau, tau_inverse
from .errors import CapExceeded, NotInTube, RadicalShapeUnexpected
from .extension import relation_extension
from .modules import (Representation, compose, hom_basis, injective,
                      is_indecomposable, is_isomorphic, is_iso_map, kernel_of,
                      projective, radical, socle_quotient, socle_subspaces_dims,
                      combine)
from .quiver import path_basis

WARNING = ("experimental: coray insertion is not proven to produce the tube of the "
           "cluster-tilted algebra in general")


class TubeFragment:
    """A finite piece of a tube.

    Attributes:
        basis: algebra basis the modules live over.
        modules: list of representations (pairwise non-isomorphic).
        projective: indices of projective modules.
        injective: indices of injective modules.
        inserted: index of the inserted injective, if any.
        period: number of knitting rounds after which nothing new appeared, or None.
    """

    def __init__(self, basis, modules, inserted=None, seed=0):
        self.basis = basis
        self.modules = list(modules)
        self.inserted = inserted
        self.seed = seed
        self.period = None
        self.warning = WARNING

    @property
    def quiver(self):
        return self.basis.quiver

    def labels(self):
        return [m.loewy_label() for m in self.modules]

    def index_of(self, M):
        for i, N in enumerate(self.modules):
            if N.dim_vector() == M.dim_vector() and is_isomorphic(N, M, self.seed):
                return i
        return None

    def flags(self):
        proj = [i for i, M in enumerate(self.modules) if isinstance(tau(M, self.basis), IsProjective)]
        inj = [i for i, M in enumerate(self.modules) if isinstance(tau_inverse(M, self.basis), IsInjective)]
        return proj, inj

    def tau_links(self):
        """Pairs (i, j) with modules[j] = tau^-1 modules[i] inside the fragment."""
        out = []
        for i, M in enumerate(self.modules):
            T = tau_inverse(M, self.basis)
            if isinstance(T, IsInjective):
                continue
            j = self.index_of(T)
            if j is not None:
                out.append((i, j))
        return sorted(out)

    def to_json(self):
        proj, inj = self.flags()
        data = {"warning": self.warning,
                "modules": [{"label": m.loewy_label(), "dims": {v: m.dims[v] for v in m.support()}}
                            for m in self.modules],
                "projective": proj, "injective": inj, "inserted": self.inserted,
                "tau": [list(t) for t in self.tau_links()], "period": self.period}
        return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False)

    def to_dot(self):
        proj, inj = self.flags()
        lines = ["digraph tube {", f'  label="{self.warning}";', "  node [shape=box];"]
        for i, m in enumerate(self.modules):
            style = ', style=bold' if i == self.inserted else ''
            extra = ', peripheries=2' if i in proj or i in inj else ''
            lines.append(f'  m{i} [label="{m.loewy_label()}"{style}{extra}];')
        for i, j in self.tau_links():
            lines.append(f'  m{j} -> m{i} [style=dotted];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _sorted_modules(mods):
    return sorted(mods, key=lambda m: (m.dim(), [m.dims[v] for v in m.quiver.vertices], m.loewy_label()))


def knit_tube(tube, depth, dim_cap=None, max_modules=200):
    """Close the fragment under tau and tau^-1 for ``depth`` rounds.

    Args:
        tube: the TubeFragment.
        depth: number of rounds; 0 returns the input.
        dim_cap: ignore translates of larger total dimension.
        max_modules: raise CapExceeded beyond this many modules.
    """
    warnings.warn(WARNING, stacklevel=2)
    if depth <= 0:
        return tube
    mods = list(tube.modules)
    out = TubeFragment(tube.basis, mods, tube.inserted, tube.seed)
    for rnd in range(depth):
        new = []
        for M in list(out.modules):
            for T in (tau(M, out.basis), tau_inverse(M, out.basis)):
                if isinstance(T, (IsProjective, IsInjective)) or T.is_zero():
                    continue
                if dim_cap is not None and T.dim() > dim_cap:
                    continue
                if out.index_of(T) is None and not any(is_isomorphic(T, N, out.seed) for N in new
                                                         if N.dim_vector() == T.dim_vector()):
                    new.append(T)
        if not new:
            out.period = rnd
            break
        out.modules.extend(new)
        if len(out.modules) > max_modules:
            raise CapExceeded(f"tube exceeds {max_modules} modules", partial=out)
    inserted = out.modules[out.inserted] if out.inserted is not None else None
    out.modules = _sorted_modules(out.modules)
    if inserted is not None:
        out.inserted = out.index_of(inserted)
    return out


def split_radical(P, A, seed=0):
    """Decompose rad P as (projective summands, N) with N indecomposable non-projective."""
    R = radical(P)
    rng = random.Random(seed)
    projs = []
    changed = True
    while changed and not R.is_zero():
        changed = False
        for j in A.quiver.vertices:
            Pj = projective(A, j)
            fs = hom_basis(Pj, R)
            gs = hom_basis(R, Pj)
            if not fs or not gs:
                continue
            for _ in range(4):
                f = combine(fs, [rng.randint(-50, 50) for _ in fs], Pj, R)
                g = combine(gs, [rng.randint(-50, 50) for _ in gs], R, Pj)
                if is_iso_map(compose(f, g)):
                    R, _ = kernel_of(g, R, Pj)
                    projs.append(j)
                    changed = True
                    break
            if changed:
                break
    if R.is_zero() or not is_indecomposable(R):
        raise RadicalShapeUnexpected("radical is not a projective plus one indecomposable summand")
    if isinstance(tau(R, A), IsProjective):
        raise RadicalShapeUnexpected("the remaining radical summand is projective")
    return projs, R


def to_extension(M, Ct):
    """A C-module viewed over the relation-extension (new arrows act as zero)."""
    mats = {a: m for a, m in M.mats.items()}
    return Representation(Ct, dict(M.dims), mats, check=True)


def insert_coray(tube, i, depth=6, dim_cap=None):
    """Insert the new injective of the relation-extension at vertex i and re-knit.

    Returns a TubeFragment over the relation-extension whose ``inserted``
    index points at the new injective.  Raises NotInTube when P_i is not in
    the fragment and RadicalShapeUnexpected when rad P_i has the wrong shape.
    A fragment without projectives is returned unchanged.
    """
    warnings.warn(WARNING, stacklevel=2)
    A = tube.basis
    C = A.quiver
    C.check_vertex(i)
    if not tube.flags()[0]:
        return tube
    P = projective(A, i)
    if tube.index_of(P) is None:
        raise NotInTube(f"P_{i} is not in the tube")
    _, N = split_radical(P, A, tube.seed)
    tN = tau(N, A)
    Ct, _ = relation_extension(C)
    At = path_basis(Ct)
    I = injective(At, i)
    soc = socle_subspaces_dims(I)
    if sum(soc.values()) != 1 or soc[i] != 1:
        raise RadicalShapeUnexpected("new injective does not have simple socle S_i")
    if not is_isomorphic(socle_quotient(I), to_extension(tN, Ct), tube.seed):
        raise RadicalShapeUnexpected("socle quotient of the new injective differs from tau N")
    seeds = [to_extension(M, Ct) for M in tube.modules]
    extra = [I, radical(I), socle_quotient(I)]
    out = TubeFragment(At, [], None, tube.seed)
    for M in seeds + extra:
        if not M.is_zero() and is_indecomposable(M) and out.index_of(M) is None:
            out.modules.append(M)
    out.inserted = out.index_of(I)
    # modules on the inserted coray gain one composition factor S_i
    cap = dim_cap if dim_cap is not None else max(m.dim() for m in seeds) + 1
    return knit_tube(out, depth, cap)


def coray_contract(tube_c, tube_ct, i):
    """Check socle(I~_i) = S_i and I~_i / soc = tau_C N on an inserted tube."""
    A = tube_c.basis
    _, N = split_radical(projective(A, i), A, tube_c.seed)
    I = tube_ct.modules[tube_ct.inserted]
    return is_isomorphic(socle_quotient(I), to_extension(tau(N, A), tube_ct.quiver), tube_c.seed)


def tube_from_modules(C, mods, seed=0):
    A = path_basis(C)
    return TubeFragment(A, mods, None, seed)
