import itertools

import pytest

from cubar.chain import betti_numbers, homology, verify_d_squared
from cubar.cubical import BlockWord, block_face, normalized_cubical_chains, serre_failures, verify_cubical_identities
from cubar.loop_path import (
    ConstantTau, LoopError, LoopSpace, MonoidalMap, PointMonoid, TableTau, TwistedProduct, UniversalTau,
    cubical_resolution, d_subcomplex_leaks, include_loops, induced_monoidal_map, loop_d_cells, loop_functor,
    path_functor, universal_tau, verify_monoidal_map, verify_truncating,
)
from cubar.simplicial import (
    minimal_sphere, normalized_chains, simplex_mod_1skeleton, standard_simplex, wedge,
)

S2, S3 = minimal_sphere(2), minimal_sphere(3)
W22 = wedge(minimal_sphere(2), minimal_sphere(2))
D3 = simplex_mod_1skeleton(3)


def test_not_1_reduced_rejected():
    with pytest.raises(LoopError):
        loop_functor(standard_simplex(2), 3)


@pytest.mark.parametrize("X,deg", [(S2, 5), (S3, 5), (W22, 4), (D3, 4)])
def test_loop_identities_and_d_squared(X, deg):
    Om = loop_functor(X, deg)
    assert verify_cubical_identities(Om) == []
    assert verify_d_squared(normalized_cubical_chains(Om)) == []


def test_loop_homology():
    assert betti_numbers(normalized_cubical_chains(loop_functor(S2, 6))) == [1] * 7
    assert betti_numbers(normalized_cubical_chains(loop_functor(S3, 6))) == [1, 0, 1, 0, 1, 0, 1]
    assert betti_numbers(normalized_cubical_chains(loop_functor(W22, 4))) == [1, 2, 4, 8, 16]
    for k in range(5):
        assert homology(normalized_cubical_chains(loop_functor(S2, 4)), k).torsion == ()


def test_loop_sphere2_cells_and_faces():
    Om = loop_functor(S2, 4)
    assert [len(Om.cells(k)) for k in range(5)] == [1, 1, 1, 1, 1]
    s = Om.word("s")
    # d_1^0 splits into two unit letters, d_1^1 gives the degenerate basepoint letter
    assert Om.face(s, 1, 0) == Om.unit
    assert Om.face(s, 1, 1) == Om.unit
    assert normalized_cubical_chains(Om).d.get(1, {}) in ({}, {Om.cells(1)[0]: {}})


def test_loop_sphere3_outer_faces():
    # in a 1-reduced X the first and last 0-faces of a letter are its outer simplicial faces
    for X in (S3, D3):
        Om = loop_functor(X, 3)
        for g in X.generators(3):
            x = X.gen(g)
            t = Om.letter(x)
            assert Om.face(t, 1, 0) == Om.letter(X.face(x, 0))
            assert Om.face(t, 2, 0) == Om.letter(X.face(x, 3))


def test_loop_monoid_free():
    Om = loop_functor(D3, 4)
    for n in range(5):
        cells = Om.cells(n)
        assert len(set(cells)) == len(cells)
        elems = [Om.elem(c) for c in cells]
        assert len(set(elems)) == len(elems)
    # concatenation on generators is injective
    words = [c for n in range(3) for c in Om.cells(n)]
    seen = {}
    for a, b in itertools.product(words, repeat=2):
        p = Om.multiply(Om.elem(a), Om.elem(b))
        assert seen.setdefault(p, a + b) == a + b


def test_loop_serre_bialgebra():
    Om = loop_functor(D3, 3)
    assert serre_failures(Om) == {"coassociative": [], "counit": [], "chain_map": []}


@pytest.mark.parametrize("X", [S2, S3, D3])
def test_no_leaks_from_dropped_cells(X):
    Om = loop_functor(X, 3)
    assert d_subcomplex_leaks(Om, 3, lambda n: loop_d_cells(Om, n)) == []


@pytest.mark.parametrize("X,deg", [(S2, 5), (S3, 5), (W22, 4), (D3, 4)])
def test_path_identities_and_acyclic(X, deg):
    P = path_functor(X, deg)
    assert verify_cubical_identities(P) == []
    C = normalized_cubical_chains(P)
    assert verify_d_squared(C) == []
    assert betti_numbers(C, degrees=range(deg)) == [1] + [0] * (deg - 1)


def test_path_first_face_sphere2():
    P = path_functor(S2, 3)
    Om = P.L
    x = P.pair(S2.gen("s"), Om.unit)
    # the back face of the first 0-face is the whole simplex, so its letter survives
    assert P.face(x, 1, 0) == P.pair(S2.point(0), Om.word("s"))
    assert P.face(x, 2, 0) == P.pair(S2.point(1), Om.unit)
    assert P.face(x, 1, 1) == P.pair(S2.point(1), Om.unit)


def test_path_contains_loops():
    P = path_functor(S3, 4)
    Om = P.L
    for n in range(4):
        for c in Om.cells(n):
            y = Om.elem(c)
            for i in range(1, n + 1):
                for e in (0, 1):
                    assert P.face(include_loops(P, y), i, e) == include_loops(P, Om.face(y, i, e))


def test_tcp_with_universal_tau_is_path():
    Om = LoopSpace(S3, 4)
    T = TwistedProduct(S3, UniversalTau(Om), Om, max_degree=4)
    P = path_functor(S3, 4)
    for n in range(5):
        assert T.cells(n) == P.cells(n)
        for c in T.cells(n):
            for i in range(1, n + 1):
                for e in (0, 1):
                    assert T.face(T.elem(c), i, e) == P.face(P.elem(c), i, e)


@pytest.mark.parametrize("X", [S2, S3, W22, D3])
def test_universal_tau_axioms(X):
    tau = universal_tau(X, 4)
    assert verify_truncating(tau) == []
    assert tau(X.point(1)) == tau.Q.unit
    f = induced_monoidal_map(tau, tau.Q)
    for n in range(4):
        for c in tau.Q.cells(n):
            assert f(tau.Q.elem(c)) == tau.Q.elem(c)


def test_universal_tau_instances():
    tau = universal_tau(S2, 3)
    assert tau(S2.gen("s")) == ((), (S2.gen("s"),))
    t3 = universal_tau(D3, 3)
    x = D3.gen("0123")
    assert t3.Q.face(t3(x), 1, 1) == t3(D3.face(x, 1))


def test_corrupted_table_reported():
    Om = LoopSpace(D3, 3)
    good = {g: Om.word(g) for n in (2, 3) for g in D3.generators(n)}
    assert verify_truncating(TableTau(D3, Om, good)) == []
    bad = dict(good)
    bad["0123"] = Om.word("012", "023")
    report = verify_truncating(TableTau(D3, Om, bad))
    assert report and {r[0] for r in report} == {"0123"}
    assert any(r[1] == "d0" for r in report)
    with pytest.raises(LoopError):
        induced_monoidal_map(TableTau(D3, Om, bad), Om)


@pytest.mark.parametrize("X", [S3, D3])
def test_constant_tau_resolution(X):
    tau = ConstantTau(X)
    assert verify_truncating(tau) == []
    Om = LoopSpace(X, 3)
    f = induced_monoidal_map(tau, Om)
    assert verify_monoidal_map(f) == []
    # every letter of degree m goes to e_1^m
    for n in range(4):
        for c in Om.cells(n):
            assert f(Om.elem(c)) == PointMonoid().e(n)
    R = cubical_resolution(X, X.top_dim)
    assert verify_cubical_identities(R) == []
    CR = normalized_cubical_chains(R)
    CX = normalized_chains(X)
    assert [CR.rank(n) for n in range(X.top_dim + 1)] == [CX.rank(n) for n in range(X.top_dim + 1)]
    assert betti_numbers(CR) == betti_numbers(CX)


def test_monoidal_map_identity_and_factorization():
    Om = LoopSpace(D3, 3)
    f = induced_monoidal_map(UniversalTau(Om), Om)
    assert verify_monoidal_map(f) == []


def test_monoidal_extension_unique():
    # perturbing a single value of tau breaks the extension
    Om = LoopSpace(D3, 3)
    table = {g: Om.word(g) for n in (2, 3) for g in D3.generators(n)}
    table["0123"] = Om.word("012", "123")
    f = MonoidalMap(TableTau(D3, Om, table), Om)
    assert verify_monoidal_map(f)


def _omega_elem(Om, top, blocks):
    X = Om.X
    return Om.canon_letters([X.restrict(top, b) for b in blocks])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_block_faces_match_loop_faces(n):
    X = simplex_mod_1skeleton(n + 1)
    Om = LoopSpace(X, n)
    top = X.gen(X.generators(n + 1)[0])
    todo = [BlockWord.top(n)]
    seen = set()
    while todo:
        b = todo.pop()
        if b in seen:
            continue
        seen.add(b)
        a = _omega_elem(Om, top, b.blocks)
        for i in range(1, b.dim + 1):
            for e in (0, 1):
                c = block_face(b, i, e)
                assert Om.face(a, i, e) == _omega_elem(Om, top, c.blocks)
                todo.append(c)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_open_block_faces_match_path_faces(n):
    X = simplex_mod_1skeleton(n + 1)
    P = path_functor(X, n + 1)
    Om = P.L
    top = X.gen(X.generators(n + 1)[0])

    def elem(b):
        return P.pair(X.restrict(top, b.blocks[0]), _omega_elem(Om, top, b.blocks[1:]))

    todo = [BlockWord.top(n, open_first=True)]
    seen = set()
    while todo:
        b = todo.pop()
        if b in seen:
            continue
        seen.add(b)
        for i in range(1, b.dim + 1):
            for e in (0, 1):
                c = block_face(b, i, e)
                assert P.face(elem(b), i, e) == elem(c)
                todo.append(c)
