"""Knitting the transjective component of the cluster-repetitive algebra.

Nodes live at ZΔ coordinates ``(k, u)`` (see :mod:`clustertilt.slices`).  A
hole is a coordinate left empty on purpose: it sits between an injective
``I_y`` at ``(k, u)`` and the new projective at ``(k + 2, u)``.
"""

import json
from concurrent.futures import ThreadPoolExecutor

from .errors import CapExceeded, NoAdmissibleSink
from .extension import split_label
from .modules import annihilator
from .quiver import natural_key, path_basis, quotient_by_ideal
from .slices import (admissible_sinks, admissible_sources, coreflect,
                     move_sink, move_source, movable_sinks, movable_sources,
                     reflect)

ALL_SOURCES_INJECTIVE = "AllSourcesInjective"
ALL_SINKS_PROJECTIVE = "AllSinksProjective"
STEP_CAP = "StepCap"
PERIODIC = "Periodic"
NO_ADMISSIBLE = "NoAdmissibleSink"


class ARStrip:
    """A knitted piece of the transjective component.

    Attributes:
        cover: the :class:`Cover`.
        edges: reference edges of Δ.
        nodes: dict ``(k, u) -> module``.
        kinds: dict ``(k, u) -> "slice" | "tau" | "new"``.
        holes: set of hole coordinates.
        tau_links: set of pairs ``(c, d)`` with ``d = tau^-1 c``.
        right, left: the current right and left frontier slices.
        phi: dict ``u -> (delta, u')`` once periodicity is found, else None.
        reasons: list of knitting outcomes.
    """

    def __init__(self, sl):
        self.cover = sl.cover
        self.edges = sl.edges
        self.n = len(sl)
        self.nodes = {}
        self.kinds = {}
        self.holes = set()
        self.tau_links = set()
        self.initial = sl
        self.right = sl
        self.left = sl
        self.phi = None
        self.reasons = []
        self.reflections = []
        self._index = {}
        for u in range(len(sl)):
            self._add((sl.pos[u], u), sl.mods[u], "slice")

    # -- bookkeeping ------------------------------------------------------------

    def _add(self, c, M, kind):
        if c in self.nodes:
            return
        self.nodes[c] = M
        self.kinds[c] = kind
        sig = _signature(M)
        self._index.setdefault(sig, []).append(c)

    def find(self, M):
        """Coordinate of a node isomorphic to the Č-module M, or None."""
        for c in self._index.get(_signature(M), []):
            if self.cover.iso(self.nodes[c], M):
                return c
        return None

    def arrows(self):
        """Mesh arrows between module nodes (holes are skipped)."""
        out = set()
        for (k, u) in self.nodes:
            for a, b in self.edges:
                if u == a and (k, b) in self.nodes:
                    out.add(((k, a), (k, b)))
                if u == b and (k + 1, a) in self.nodes:
                    out.add(((k, b), (k + 1, a)))
        return sorted(out)

    def predecessors(self, c):
        k, u = c
        out = []
        for a, b in self.edges:
            if u == b:
                out.append((k, a))
            if u == a:
                out.append((k - 1, b))
        return out

    def label(self, c):
        return self.cover.pushdown(self.nodes[c]).loewy_label()

    # -- knitting -----------------------------------------------------------------

    def knit_right(self, steps):
        """Move non-injective sources of the right frontier, at most ``steps`` times."""
        for _ in range(steps):
            cand = movable_sources(self.right)
            if not cand:
                self.reasons.append(ALL_SOURCES_INJECTIVE)
                return ALL_SOURCES_INJECTIVE
            u = cand[0]
            old = (self.right.pos[u], u)
            self.right = move_source(self.right, u)
            new = (self.right.pos[u], u)
            self._add(new, self.right.mods[u], "tau")
            self.tau_links.add((old, new))
            if self.periodic():
                return PERIODIC
        if not movable_sources(self.right):
            return ALL_SOURCES_INJECTIVE
        self.reasons.append(STEP_CAP)
        return STEP_CAP

    def knit_left(self, steps):
        for _ in range(steps):
            cand = movable_sinks(self.left)
            if not cand:
                self.reasons.append(ALL_SINKS_PROJECTIVE)
                return ALL_SINKS_PROJECTIVE
            u = cand[0]
            old = (self.left.pos[u], u)
            self.left = move_sink(self.left, u)
            new = (self.left.pos[u], u)
            self._add(new, self.left.mods[u], "tau")
            self.tau_links.add((new, old))
        if not movable_sinks(self.left):
            return ALL_SINKS_PROJECTIVE
        self.reasons.append(STEP_CAP)
        return STEP_CAP

    def reflect_step(self, verify=True):
        """Reflect the right frontier at its first admissible sink."""
        if not admissible_sinks(self.right):
            raise NoAdmissibleSink("rightmost frontier has no admissible sink")
        r = reflect(self.right, verify=verify)
        self._apply(r, self.right, forward=True)
        self.right = r.slice
        self.reflections.append(("+", r.vertex))
        return r

    def coreflect_step(self, verify=True):
        if not admissible_sources(self.left):
            raise NoAdmissibleSink("leftmost frontier has no admissible source")
        r = coreflect(self.left, verify=verify)
        self._apply(r, self.left, forward=False)
        self.left = r.slice
        self.reflections.append(("-", r.vertex))
        return r

    def _apply(self, r, before, forward):
        for u, k, M, kind in r.created:
            c = (k, u)
            self._add(c, M, kind)
            if kind == "tau":
                old = (before.pos[u], u)
                self.tau_links.add((old, c) if forward else (c, old))
        for u, k in r.holes:
            self.holes.add((k, u))

    # -- periodicity ---------------------------------------------------------------

    def periodic(self):
        """Stopping rule: phi of every right-frontier module is already built.

        On success ``self.phi`` records the induced map on coordinates.
        """
        sl = self.right
        phi = {}
        for u in range(len(sl)):
            c = self.find(self.cover.shift(sl.mods[u], -1))
            if c is None:
                return False
            phi[u] = (sl.pos[u] - c[0], c[1])
        self.phi = phi
        return True

    def phi_coord(self, c, j=1):
        """Apply phi^j to a coordinate (j may be negative)."""
        k, u = c
        if j >= 0:
            for _ in range(j):
                d, v = self.phi[u]
                k, u = k - d, v
        else:
            inv = {v: (d, w) for w, (d, v) in self.phi.items()}
            for _ in range(-j):
                d, w = inv[u]
                k, u = k + d, w
        return (k, u)

    # -- quotient ------------------------------------------------------------------

    def orbits(self):
        """Group coordinates into phi-orbits: dict representative -> members."""
        if self.phi is None:
            raise ValueError("strip is not periodic yet")
        rep = {}
        for c in sorted(self.nodes):
            if c in rep:
                continue
            rep[c] = c
            for j in (1, -1):
                d = c
                while True:
                    d = self.phi_coord(d, j)
                    if d not in self.nodes:
                        break
                    rep[d] = c
        return rep

    def quotient(self):
        """The phi-quotient as plain data (labels are pushdown Loewy series)."""
        rep = self.orbits()
        reps = sorted(set(rep.values()))
        name = {c: self.label(c) for c in reps}
        nodes = sorted(name.values(), key=natural_key)
        arrows = sorted({(name[rep[a]], name[rep[b]]) for a, b in self.arrows()})
        tau = sorted({(name[rep[a]], name[rep[b]]) for a, b in self.tau_links})
        holes = set()
        for h in self.holes:
            for c in (h,) + tuple(self.phi_coord(h, j) for j in range(-4, 5)):
                prev = (c[0] - 1, c[1])
                if prev in rep:
                    holes.add(name[rep[prev]])
                    break
        return {"nodes": nodes, "arrows": [list(a) for a in arrows],
                "tau": [list(t) for t in tau], "holes_after": sorted(holes, key=natural_key)}

    # -- export ----------------------------------------------------------------------

    def to_json(self):
        nodes = []
        for c in sorted(self.nodes):
            M = self.nodes[c]
            nodes.append({"id": _cid(c), "k": c[0], "u": c[1], "kind": self.kinds[c],
                          "label": self.label(c), "support": M.support(),
                          "dims": {v: M.dims[v] for v in M.support()}})
        out = {"nodes": nodes,
               "arrows": [[_cid(a), _cid(b)] for a, b in self.arrows()],
               "holes": [_cid(h) for h in sorted(self.holes)],
               "tau": [[_cid(a), _cid(b)] for a, b in sorted(self.tau_links)],
               "phi": None if self.phi is None else {str(u): [d, v] for u, (d, v) in sorted(self.phi.items())},
               "reasons": self.reasons,
               "reflections": [list(r) for r in self.reflections]}
        if self.phi is not None:
            out["quotient"] = self.quotient()
        return json.dumps(out, indent=1, sort_keys=True, ensure_ascii=False)

    def to_dot(self):
        lines = ["digraph strip {", "  rankdir=LR;", "  node [shape=box];"]
        rep = self.orbits() if self.phi is not None else {}
        for c in sorted(self.nodes):
            attrs = [f'label="{self.label(c)}"', f'pos="{c[0]},{-c[1]}!"']
            if c in rep:
                attrs.append(f'group="{_cid(rep[c])}"')
            lines.append(f'  "{_cid(c)}" [{", ".join(attrs)}];')
        for h in sorted(self.holes):
            lines.append(f'  "{_cid(h)}" [shape=diamond, style=dashed, label="", pos="{h[0]},{-h[1]}!"];')
        for a, b in self.arrows():
            lines.append(f'  "{_cid(a)}" -> "{_cid(b)}";')
        for a, b in sorted(self.tau_links):
            lines.append(f'  "{_cid(b)}" -> "{_cid(a)}" [style=dotted, constraint=false];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def quotient_to_dot(q):
    """DOT for the data returned by :meth:`ARStrip.quotient`."""
    ids = {name: f"n{i}" for i, name in enumerate(q["nodes"])}
    lines = ["digraph quotient {", "  rankdir=LR;", "  node [shape=box];"]
    for name in q["nodes"]:
        lines.append(f'  {ids[name]} [label="{name}"];')
    for i, name in enumerate(q["holes_after"]):
        lines.append(f'  h{i} [shape=diamond, style=dashed, label=""];')
        lines.append(f'  {ids[name]} -> h{i} [style=dashed, arrowhead=none];')
    for a, b in q["arrows"]:
        lines.append(f"  {ids[a]} -> {ids[b]};")
    for a, b in q["tau"]:
        lines.append(f"  {ids[b]} -> {ids[a]} [style=dotted, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cid(c):
    return f"{c[0]},{c[1]}"


def _signature(M):
    return tuple(sorted((v, d) for v, d in M.dims.items() if d))


def default_caps(n):
    return 5 * n, 4 * n


def build_transjective(sl, mode="finite", knit_cap=None, reflect_cap=None, verify=True):
    """Knit the transjective component starting from a local slice.

    Args:
        sl: initial LocalSlice (usually a complete slice of C at copy 0).
        mode: "finite" runs until the periodicity rule; "infinite" knits
            both directions up to the caps and keeps the stable parts.
        knit_cap: moves allowed between two reflections (default 5n).
        reflect_cap: reflections allowed per direction (default 4n).
        verify: check each new projective against the window projective.

    Raises CapExceeded (with ``partial``) when finite mode hits a cap.
    """
    kc, rc = default_caps(len(sl))
    knit_cap = kc if knit_cap is None else knit_cap
    reflect_cap = rc if reflect_cap is None else reflect_cap
    strip = ARStrip(sl)
    if strip.periodic():
        return strip
    done = False
    for _ in range(reflect_cap + 1):
        res = strip.knit_right(knit_cap)
        if res == PERIODIC:
            done = True
            break
        if res == STEP_CAP:
            break
        if len(strip.reflections) >= reflect_cap:
            break
        if not admissible_sinks(strip.right):
            strip.reasons.append(NO_ADMISSIBLE)
            break
        strip.reflect_step(verify)
        if strip.periodic():
            done = True
            break
    if mode == "finite":
        if not done:
            raise CapExceeded("periodicity not reached within the caps", partial=strip)
        return strip
    lefts = 0
    while True:
        res = strip.knit_left(knit_cap)
        if res == STEP_CAP or lefts >= reflect_cap:
            break
        if not admissible_sources(strip.left):
            strip.reasons.append(NO_ADMISSIBLE)
            break
        strip.coreflect_step(verify)
        lefts += 1
    return strip


# ---------------------------------------------------------------- slice axioms

def slice_coords(sl):
    return [(sl.pos[u], u) for u in range(len(sl))]


def is_local_slice(strip, coords):
    """Check the local slice axioms for a set of strip nodes.

    Args:
        strip: an :class:`ARStrip`.
        coords: iterable of ``(k, u)`` coordinates of module nodes.

    Returns ``(ok, report)``; the report names the first violated axiom and
    a witness, or is empty.
    """
    S = set(coords)
    for c in sorted(S):
        if c not in strip.nodes:
            return False, f"node {c} is not a module of the strip"
    if len(S) != strip.n:
        return False, f"LS3: {len(S)} nodes, expected {strip.n}"
    arrows = strip.arrows()
    succ = {}
    for a, b in arrows:
        succ.setdefault(a, []).append(b)
    for a, b in arrows:
        # tau^-1 of (k, u) is (k + 1, u)
        if b in S and a not in S and (a[0] + 1, a[1]) not in S:
            return False, f"LS1(a): {strip.label(a)} -> {strip.label(b)}"
        if a in S and b not in S and (b[0] - 1, b[1]) not in S:
            return False, f"LS1(b): {strip.label(a)} -> {strip.label(b)}"
    for start in sorted(S):
        # sectional paths leaving S and coming back
        stack = [(b, start, [start, b]) for b in succ.get(start, ()) if b not in S]
        while stack:
            cur, prev, path = stack.pop()
            for nxt in succ.get(cur, ()):
                if nxt == (prev[0] + 1, prev[1]):
                    continue
                if nxt in S:
                    return False, "LS2: " + " -> ".join(strip.label(c) for c in path + [nxt])
                stack.append((nxt, cur, path + [nxt]))
    return True, ""


# ---------------------------------------------------------------- distances

def hole_positions(strip, lo, hi):
    """All hole coordinates with lo <= k <= hi, generated with phi."""
    out = set()
    for h in strip.holes:
        for j in (1, -1):
            c = h
            for _ in range(200):
                if lo <= c[0] <= hi:
                    out.add(c)
                nxt = strip.phi_coord(c, j)
                if (j == 1 and nxt[0] < lo) or (j == -1 and nxt[0] > hi):
                    break
                c = nxt
    return out


def holes_between(strip, s1, s2):
    """Number of holes strictly between two sections (position tuples)."""
    lo = min(min(s1), min(s2))
    hi = max(max(s1), max(s2))
    count = 0
    for k, u in hole_positions(strip, lo, hi):
        a, b = sorted((s1[u], s2[u]))
        if a < k < b:
            count += 1
    return count


def shift_section(strip, pos, j):
    """Coordinates of phi^j applied to a section."""
    out = [None] * len(pos)
    for u, k in enumerate(pos):
        k2, v = strip.phi_coord((k, u), j)
        out[v] = k2
    return tuple(out)


def distance(strip, s1, s2, span=None):
    """Minimum of holes_between(s1, phi^j s2) over shifts j."""
    if strip.phi is None:
        raise ValueError("distance needs a periodic strip")
    span = span if span is not None else 2 * len(s1) + 2
    return min(holes_between(strip, s1, shift_section(strip, s2, j)) for j in range(-span, span + 1))


# ---------------------------------------------------------------- fibre quotients

class FibreQuotient:
    """A fibre quotient: its bound quiver, a witness slice and its annihilator key."""

    def __init__(self, quiver, witness, key, path):
        self.quiver = quiver
        self.witness = witness
        self.key = key
        self.path = path


def slice_annihilator(sl):
    cover = sl.cover
    mods = [cover.pushdown(m) for m in sl.mods]
    A = path_basis(cover.Ct)
    ann = annihilator(mods, A)
    return A, ann


def _ann_key(ann):
    return tuple(sorted(tuple(sorted(((p[0], p[1], p[2]), str(c)) for p, c in e.items())) for e in ann))


def quotient_algebra(sl):
    """C̃ / Ann(pushdown of the slice) as a bound quiver."""
    A, ann = slice_annihilator(sl)
    Q, _, _ = quotient_by_ideal(A, ann)
    return Q, _ann_key(ann)


def reflect_algebra(sl_plus, x=None, verify=True):
    """The reflected algebra: quotient by the annihilator of the reflected slice."""
    return quotient_algebra(reflect(sl_plus, x, verify).slice)[0]


def coreflect_algebra(sl_minus, x=None, verify=True):
    return quotient_algebra(coreflect(sl_minus, x, verify).slice)[0]


def enumerate_fibre_quotients(sl, knit_cap=None, reflect_cap=None, limit=64, verify=False, jobs=1):
    """Breadth-first closure under reflections and coreflections.

    Args:
        sl: starting local slice.
        knit_cap: moves allowed when pushing to the right- or leftmost slice.
        reflect_cap: unused, kept for a uniform cap interface.
        limit: raise CapExceeded beyond this many algebras.
        verify: check new projectives during reflections.
        jobs: worker threads expanding one BFS layer; results are merged in
            queue order, so the output does not depend on it.

    Returns a list of :class:`FibreQuotient`, the first one being the input.
    """
    kc, _ = default_caps(len(sl))
    knit_cap = kc if knit_cap is None else knit_cap
    sl.cover.mirror()
    Q, key = quotient_algebra(sl)
    found = [FibreQuotient(Q, sl, key, [])]
    seen = {key}
    layer = [(sl, [])]

    def expand(item):
        cur, _ = item
        return [(nxt, step, quotient_algebra(nxt)) for nxt, step in _neighbours(cur, knit_cap, verify)]

    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while layer:
            results = list(pool.map(expand, layer)) if pool else [expand(it) for it in layer]
            nxt_layer = []
            for (_, path), nbrs in zip(layer, results):
                for nxt, step, (Q2, k2) in nbrs:
                    if k2 in seen:
                        continue
                    if len(found) >= limit:
                        raise CapExceeded(f"more than {limit} fibre quotients", partial=found)
                    seen.add(k2)
                    found.append(FibreQuotient(Q2, nxt, k2, path + [step]))
                    nxt_layer.append((nxt, path + [step]))
            layer = nxt_layer
    finally:
        if pool:
            pool.shutdown()
    return found


def _neighbours(sl, knit_cap, verify):
    from .slices import leftmost_slice, rightmost_slice
    out = []
    right = rightmost_slice(sl, knit_cap)
    done = []
    for x, g in admissible_sinks(right):
        if g in done:
            continue
        done.append(g)
        out.append((reflect(right, x, verify).slice, ("+", split_label(x)[0])))
    left = leftmost_slice(sl, knit_cap)
    done = []
    for x, g in admissible_sources(left):
        if g in done:
            continue
        done.append(g)
        out.append((coreflect(left, x, verify).slice, ("-", split_label(x)[0])))
    return out


def distance_matrix(strip, quotients):
    n = len(quotients)
    return [[distance(strip, quotients[i].witness.pos, quotients[j].witness.pos) for j in range(n)]
            for i in range(n)]
