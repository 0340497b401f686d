import json

import pytest
from hypothesis import given, settings, strategies as st

from cubar.barcobar import (
    BarCobarError, TwistingCochain, acyclic_bar, acyclic_cobar, algebra_as_module, bar, brown_condition_check,
    check_chain_identifications, check_chain_map, check_comultiplicative, check_multiplicative, cobar,
    cochain_algebra, comultiplicative_extension, graded_algebra, multiplicative_extension, perturbed,
    simplicial_coalgebra, tau_chain_cochain, trivial_module, twisted_tensor, twisting_to_json,
    universal_bar_cochain, universal_cobar_cochain,
)
from cubar.chain import Z2, ZZ, add_term, betti_numbers, homology, verify_d_squared
from cubar.loop_path import universal_tau
from cubar.simplicial import (
    minimal_sphere, one_vertex_torus, product, simplex_mod_1skeleton, standard_simplex, suspension, wedge,
)

S2, S3 = minimal_sphere(2), minimal_sphere(3)
W22 = wedge(minimal_sphere(2), minimal_sphere(2))
D3 = simplex_mod_1skeleton(3)
ST = suspension(one_vertex_torus())
S2S2 = product(S2, S2)


def test_cobar_sphere2():
    Om = cobar(simplicial_coalgebra(S2), 6)
    K = Om.complex()
    assert [K.rank(n) for n in range(7)] == [1] * 7
    assert all(not K.d[n] for n in K.bases)


def test_cobar_sphere3():
    K = cobar(simplicial_coalgebra(S3), 6).complex()
    assert [K.rank(n) for n in range(7)] == [1, 0, 1, 0, 1, 0, 1]
    assert all(not K.d[n] for n in K.bases)


def test_cobar_requires_1_reduced():
    with pytest.raises(BarCobarError):
        cobar(simplicial_coalgebra(standard_simplex(2)), 3)


@pytest.mark.parametrize("X,deg", [(S2, 6), (S3, 6), (W22, 5), (D3, 4), (ST, 5), (S2S2, 5)])
def test_cobar_d_squared(X, deg):
    K = cobar(simplicial_coalgebra(X), deg).complex()
    assert verify_d_squared(K) == []
    assert verify_d_squared(K, Z2) == []


def test_cobar_d2_term():
    # in S2 x S2 the top cells split under Alexander-Whitney into the two 2-spheres
    X = product(S2, S2)
    C = simplicial_coalgebra(X)
    Om = cobar(C, 3)
    top = "(s3s2(s),s1s0(s))"
    d = Om.d((top,))
    assert d[("(s,s1s0(*))", "(s1s0(*),s)")] == 1
    assert {w[0]: -k for w, k in d.items() if len(w) == 1} == C.d(top)
    # every proper Alexander-Whitney split of a 3-simplex of D3 has a degenerate edge
    assert cobar(simplicial_coalgebra(D3), 2).d(("0123",)) == {
        ("123",): -1, ("023",): 1, ("013",): -1, ("012",): 1}


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_cobar_derivation(data):
    Om = cobar(simplicial_coalgebra(D3), 4)
    p = data.draw(st.integers(0, 2))
    q = data.draw(st.integers(0, 4 - p))
    u = data.draw(st.sampled_from(Om.basis(p)))
    v = data.draw(st.sampled_from(Om.basis(q)))
    lhs = Om.d(u + v)
    rhs: dict = {}
    for w, k in Om.d(u).items():
        add_term(rhs, w + v, k)
    for w, k in Om.d(v).items():
        add_term(rhs, u + w, (-1) ** p * k)
    assert lhs == rhs


def test_bar_of_sphere_cohomology():
    A = graded_algebra({"y": 2})
    B = bar(A, 6)
    K = B.complex()
    assert [K.rank(n) for n in range(7)] == [1] * 7
    assert all(not K.d[n] for n in K.bases)


def test_bar_single_relation():
    A = graded_algebra({"a": 2, "b": 4}, {("a", "a"): {"b": 1}})
    B = bar(A, 4)
    assert B.d(("a", "a")) == {("b",): 1}
    assert verify_d_squared(B.complex()) == []


def test_bar_requires_reduced():
    with pytest.raises(BarCobarError):
        bar(graded_algebra({"x": 1}), 3)


@pytest.mark.parametrize("X", [S3, D3, ST, S2S2])
def test_bar_of_cochains(X):
    B = bar(cochain_algebra(X), 5)
    assert verify_d_squared(B.complex()) == []
    # deconcatenation is counital, coassociative and a chain map
    for n in range(6):
        for w in B.basis(n):
            D = B.diagonal(w)
            assert D[((), w)] == 1 and D[(w, ())] == 1
            lhs: dict = {}
            for v, k in B.d(w).items():
                for key, c in B.diagonal(v).items():
                    add_term(lhs, key, k * c)
            rhs: dict = {}
            for (a, b), c in D.items():
                for a2, k in B.d(a).items():
                    add_term(rhs, (a2, b), c * k)
                for b2, k in B.d(b).items():
                    add_term(rhs, (a, b2), (-1) ** B.degree(a) * c * k)
            assert lhs == rhs


@pytest.mark.parametrize("X", [S2, S3, W22, D3])
def test_acyclic_constructions(X):
    AC = acyclic_cobar(simplicial_coalgebra(X), 5)
    assert verify_d_squared(AC) == []
    assert betti_numbers(AC, degrees=range(5)) == [1, 0, 0, 0, 0]
    AB = acyclic_bar(cochain_algebra(X), 5)
    assert verify_d_squared(AB) == []
    assert betti_numbers(AB, degrees=range(5)) == [1, 0, 0, 0, 0]


def test_acyclic_bar_of_sphere_cohomology():
    AB = acyclic_bar(graded_algebra({"y": 2}), 6)
    assert betti_numbers(AB, degrees=range(6)) == [1, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("X", [S2, S3, W22, D3, S2S2])
def test_universal_cochains_brown(X):
    C = simplicial_coalgebra(X)
    assert brown_condition_check(universal_cobar_cochain(C, 5)) == []
    assert brown_condition_check(universal_bar_cochain(cochain_algebra(X), 5)) == []


@pytest.mark.parametrize("X", [S2, S3, D3, W22, S2S2])
def test_tau_cochains_brown(X):
    lo, up = tau_chain_cochain(universal_tau(X, 4), 4)
    assert brown_condition_check(lo) == []
    assert brown_condition_check(up, 4) == []
    assert brown_condition_check(up, 4, Z2) == []


def test_tau_lower_on_sphere2():
    lo, up = tau_chain_cochain(universal_tau(S2, 3), 3)
    s = S2.gen("s")
    assert lo("s") == {(s,): -1}
    # tau^* is minus the transpose of tau_* under the evaluation pairing
    assert up((s,)) == {"s": 1}


def test_tau_upper_is_signed_transpose():
    lo, up = tau_chain_cochain(universal_tau(D3, 3), 3)
    for n in range(2, 4):
        for g in D3.generators(n):
            for q, k in lo(g).items():
                assert up(q).get(g) == -k


def test_zero_cochain_is_trivially_twisting():
    C = simplicial_coalgebra(D3)
    Om = cobar(C, 3)
    zero = TwistingCochain(C, Om, lambda c: {}, "zero")
    assert brown_condition_check(zero) == []


def test_negative_controls():
    C = simplicial_coalgebra(D3)
    iota = universal_cobar_cochain(C, 4)
    bad = perturbed(iota, "0123")
    report = brown_condition_check(bad)
    assert [r[0] for r in report] == ["0123"]
    K = twisted_tensor(bad, algebra_as_module(bad.target), 4)
    assert verify_d_squared(K)
    lo, _ = tau_chain_cochain(universal_tau(D3, 3), 3)
    assert brown_condition_check(perturbed(lo, "012"))


def test_zero_twist_with_trivial_module_is_plain():
    C = simplicial_coalgebra(D3)
    Om = cobar(C, 3)
    zero = TwistingCochain(C, Om, lambda c: {}, "zero")
    K = twisted_tensor(zero, trivial_module(Om), 3)
    CX = C.complex(3)
    for n in range(4):
        assert sorted(a for a, _ in K.basis(n)) == sorted(CX.basis(n))
        for (a, m) in K.basis(n):
            assert K.boundary_of(n, (a, m)) == {(b, m): k for b, k in CX.boundary_of(n, a).items()}


def test_twisted_tensor_d_squared_tau():
    lo, up = tau_chain_cochain(universal_tau(D3, 4), 4)
    from cubar.barcobar import cubical_module
    Q = lo.target
    assert verify_d_squared(twisted_tensor(lo, algebra_as_module(Q), 4)) == []


@pytest.mark.parametrize("X,deg", [(S2, 5), (S3, 5), (W22, 4), (D3, 4), (S2S2, 4)])
def test_chain_identifications(X, deg):
    assert check_chain_identifications(X, deg) == {"i": [], "ii": [], "iii": []}


def test_chain_identifications_resolution():
    from cubar.loop_path import ConstantTau
    tau = ConstantTau(D3)
    r = check_chain_identifications(D3, 3, tau=tau, L=tau.Q)
    assert r["iii"] == []


def test_extensions():
    C = simplicial_coalgebra(D3)
    iota = universal_cobar_cochain(C, 4)
    Om = iota.target
    f = multiplicative_extension(iota, 4)
    for n in range(5):
        for w in Om.basis(n):
            assert f(w) == {w: 1}
    lo, up = tau_chain_cochain(universal_tau(D3, 4), 4)
    f = multiplicative_extension(lo, 4)
    assert check_chain_map(f, Om, lo.target, 4) == []
    assert check_multiplicative(f, Om, lo.target, 4) == []
    # two different cochains give different extensions on letters
    f2 = multiplicative_extension(perturbed(iota, "012"), 4)
    assert f2(("012",)) != multiplicative_extension(iota, 4)(("012",))


@pytest.mark.parametrize("X", [S3, D3, S2S2])
def test_comultiplicative_extension(X):
    lo, up = tau_chain_cochain(universal_tau(X, 4), 4)
    g = comultiplicative_extension(up, 4)
    B = bar(up.target, 5)
    assert check_chain_map(g, up.source, B, 4) == []
    assert check_comultiplicative(g, up.source, B, 4) == []
    A = cochain_algebra(X)
    pi = universal_bar_cochain(A, 5)
    gp = comultiplicative_extension(pi, 5)
    assert all(gp(w) == {w: 1} for n in range(6) for w in pi.source.basis(n))


def test_twisting_json():
    lo, _ = tau_chain_cochain(universal_tau(S2, 3), 3)
    data = json.loads(twisting_to_json(lo, 3))
    assert data["degree_shift"] == -1
    assert list(data["values"]) == ["'s'"]
