import re

import pytest

from clustertilt.errors import MinimalSystemAmbiguous, WindowTooSmall
from clustertilt.extension import (cluster_duplicated, cluster_repetitive,
                                   relation_extension, split_label)
from clustertilt.modules import projective
from clustertilt.quiver import format_bound_quiver, parse_bound_quiver, path_basis
from conftest import CORPUS, load
from oracles import algebra_dim


def arrows(Q):
    return sorted((a.label, a.source, a.target) for a in Q.arrows)


def test_first_example_extension():
    Ct, ext = relation_extension(load("ex47_C1"))
    assert [label for label, _ in ext.new_arrows] == ["γ", "ν"]
    assert ("γ", "3", "1") in arrows(Ct) and ("ν", "2", "5") in arrows(Ct)
    assert Ct.equations() == ["αβ=0", "βγ=0", "γα=0", "λμ=0", "μν=0", "νλ=0"]


def test_tube_example_extension():
    Ct, _ = relation_extension(load("tube"))
    assert ("σ", "4", "1") in arrows(Ct) and ("ρ", "4", "2") in arrows(Ct)
    assert Ct.equations() == ["αβ=0", "βσ=0", "γδ=0", "δρ=0", "ργ=0", "σα=0"]


def test_euclidean_extension_relations():
    Ct, _ = relation_extension(load("d4tilde"))
    listed = {"αβ=γδ", "αβε=0", "βλ=βεμ", "λα=εμα", "δλ=0", "λγ=0"}
    assert listed <= set(Ct.equations())
    # the cyclic derivative with respect to ε contributes one more relation
    assert set(Ct.equations()) - listed == {"μαβ=0"}


def test_extra_relation_is_not_redundant():
    Ct, _ = relation_extension(load("d4tilde"))
    text = "".join(line + "\n" for line in format_bound_quiver(Ct, names=False).splitlines()
                   if line != "relation μ*α*β")
    assert algebra_dim(parse_bound_quiver(text), 8) == path_basis(Ct).dim + 1


@pytest.mark.parametrize("name", ["a2", "point"])
def test_hereditary_unchanged(name):
    C = load(name)
    Ct, ext = relation_extension(C)
    assert Ct == C and not ext.new_arrows


@pytest.mark.parametrize("name", CORPUS)
def test_one_new_arrow_per_relation(name):
    C = load(name)
    Ct, ext = relation_extension(C)
    assert len(Ct.arrows) == len(C.arrows) + len(C.relations)
    for label, r in ext.new_arrows:
        a = Ct.arrow(label)
        assert (a.source, a.target) == (r.target, r.source)


@pytest.mark.parametrize("name", CORPUS)
def test_relations_avoiding_new_arrows_recover_c(name):
    C = load(name)
    Ct, ext = relation_extension(C)
    new = {label for label, _ in ext.new_arrows}
    old = {r.normalized() for r in Ct.relations if not any(a in new for _, p in r.terms for a in p)}
    assert old == {r.normalized() for r in C.relations}


@pytest.mark.parametrize("text", [
    "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\nrelation a*b\nrelation a*b*c\n",
    "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b\nrelation 2*a*b\n",
])
def test_non_minimal_systems_rejected(text):
    with pytest.raises(MinimalSystemAmbiguous):
        relation_extension(parse_bound_quiver(text))


def test_single_copy_window_is_c():
    C = load("ex47_C1")
    W = cluster_repetitive(C, (0, 0)).quiver
    assert len(W.vertices) == 5 and len(W.arrows) == 4
    assert W.equations() == ["α@0*β@0=0", "λ@0*μ@0=0"]


def test_window_collapses_to_extension():
    C = load("ex47_C1")
    w = cluster_repetitive(C, (0, 2))
    Ct, _ = relation_extension(C)
    assert w.rq.collapse(w.quiver).equations() == Ct.equations()
    for a in w.quiver.arrows:
        # new arrows drop one copy, old ones stay inside
        _, i = split_label(a.source)
        _, j = split_label(a.target)
        assert j - i == w.rq.arrow_shift(split_label(a.label)[0])


def test_phi_is_an_automorphism_of_the_interior():
    w = cluster_repetitive(load("d4tilde"), (0, 3))

    def arrows_within(lo, hi, shift=0):
        out = set()
        for a in w.quiver.arrows:
            (s, i), (t, j) = split_label(a.source), split_label(a.target)
            if lo <= min(i, j) and max(i, j) <= hi:
                out.add((split_label(a.label)[0], s, i + shift, t, j + shift))
        return out

    assert arrows_within(1, 3, -1) == arrows_within(0, 2)
    down = {re.sub(r"@(\d+)", lambda m: f"@{int(m.group(1)) - 1}", r.equation())
            for r in w.quiver.relations if {split_label(v)[1] for v in (r.source, r.target)} <= {1, 2}}
    assert down <= {r.equation() for r in w.quiver.relations}


def test_window_cap():
    w = cluster_repetitive(load("d4"), (0, 1))
    with pytest.raises(WindowTooSmall):
        w.grown(0, 40, cap=8)


def test_duplicated_algebra():
    C = load("ex47_C1")
    assert len(cluster_duplicated(C).vertices) == 10
    D = cluster_duplicated(load("a2"))
    assert len(D.arrows) == 2 and all(split_label(a.source)[1] == split_label(a.target)[1] for a in D.arrows)


def test_duplicated_projective_matches_new_projective():
    W = cluster_duplicated(load("d4"))
    P = projective(path_basis(W), "1@1")
    assert P.loewy_label() == "1/4"
    assert sorted(P.support()) == ["1@1", "4@0"]
