import pytest
from hypothesis import given, settings, strategies as st

from clustertilt.artranslate import IsInjective, IsProjective, tau, tau_inverse
from clustertilt.errors import NotIndecomposable
from clustertilt.extension import relation_extension
from clustertilt.modules import (direct_sum, injective, is_indecomposable,
                                 is_isomorphic, projective, simple)
from clustertilt.quiver import BoundQuiver, path_basis
from clustertilt.tube import to_extension
from conftest import CORPUS, load, slice_modules
from oracles import coxeter_tau_dims
from test_modules import corpus_modules


def test_projectives_and_injectives_flagged():
    for name in CORPUS:
        C = load(name)
        A = path_basis(C)
        for x in C.vertices:
            assert isinstance(tau(projective(A, x), A), IsProjective)
            assert isinstance(tau_inverse(injective(A, x), A), IsInjective)


def test_d4_translates():
    C = load("d4")
    A = path_basis(C)
    S4 = simple(C, "4")
    T = tau(S4, A)
    assert T.loewy_label() == "4/23"
    back = tau_inverse(T, A)
    assert back.loewy_label() == "4" and is_isomorphic(back, S4)
    assert is_isomorphic(tau(tau_inverse(T, A), A), T)


def test_decomposable_rejected():
    C = load("d4")
    A = path_basis(C)
    with pytest.raises(NotIndecomposable):
        tau(direct_sum([simple(C, "2"), simple(C, "3")]), A, check=True)


@pytest.mark.parametrize("name", CORPUS)
@pytest.mark.parametrize("ext", [False, True])
def test_tau_and_inverse_cancel(name, ext):
    A, mods = corpus_modules(name, ext)
    for M in mods:
        if not is_indecomposable(M):
            continue
        T = tau_inverse(M, A)
        if not isinstance(T, IsInjective):
            assert is_isomorphic(tau(T, A), M)
        T = tau(M, A)
        if not isinstance(T, IsProjective):
            assert is_isomorphic(tau_inverse(T, A), M)


@pytest.mark.parametrize("name", ["ex47_C1", "d4", "d4tilde"])
def test_translates_agree_over_relation_extension(name):
    # modules on a complete slice have the same translates over C and C~
    C, mods = slice_modules(name)
    Ct, _ = relation_extension(C)
    A, At = path_basis(C), path_basis(Ct)
    for M in mods:
        Mt = to_extension(M, Ct)
        for f in (tau, tau_inverse):
            a, b = f(M, A), f(Mt, At)
            if isinstance(a, (IsProjective, IsInjective)):
                assert type(a) is type(b)
            else:
                assert is_isomorphic(to_extension(a, Ct), b)


# ---------------------------------------------------------------- hereditary oracle

@st.composite
def trees(draw):
    n = draw(st.integers(2, 6))
    verts = [str(i) for i in range(1, n + 1)]
    arrows = []
    for k in range(1, n):
        parent = draw(st.integers(0, k - 1))
        s, t = (verts[parent], verts[k]) if draw(st.booleans()) else (verts[k], verts[parent])
        arrows.append((f"a{k}", s, t))
    return BoundQuiver(verts, arrows)


@settings(max_examples=30, deadline=None)
@given(trees(), st.data())
def test_tau_dimension_matches_coxeter(Q, data):
    A = path_basis(Q)
    x = data.draw(st.sampled_from(Q.vertices))
    for M in (injective(A, x), simple(Q, x)):
        T = tau(M, A)
        if isinstance(T, IsProjective):
            continue
        assert T.dims == coxeter_tau_dims(Q, M.dims)
