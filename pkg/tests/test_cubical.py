import random

import pytest
from hypothesis import given, settings, strategies as st

from cubar import cubical
from cubar.chain import betti_numbers, homology, tensor_complex, verify_d_squared
from cubar.cubical import (
    BlockWord, CubicalError, StandardCube, TableCubicalSet, block_face, cubical_from_json,
    cubical_product, normalized_cubical_chains, point_cubical, psi_projection, serre_failures,
    verify_cubical_identities,
)


def test_standard_cube_identities():
    for n in range(4):
        assert verify_cubical_identities(StandardCube(n)) == []


def test_corrupted_table_reported():
    # square with a wrong face: d_1^0 and d_2^0 disagree on the corner
    faces = {
        "e1": [[((), "a"), ((), "b")]], "e2": [[((), "a"), ((), "c")]],
        "e3": [[((), "b"), ((), "d")]], "e4": [[((), "c"), ((), "d")]],
        "sq": [[((), "e2"), ((), "e3")], [((), "e1"), ((), "e4")]],
    }
    good = TableCubicalSet({0: "abcd", 1: ["e1", "e2", "e3", "e4"], 2: ["sq"]}, faces)
    assert verify_cubical_identities(good) == []
    faces["sq"] = [[((), "e3"), ((), "e2")], [((), "e1"), ((), "e4")]]
    bad = TableCubicalSet({0: "abcd", 1: ["e1", "e2", "e3", "e4"], 2: ["sq"]}, faces)
    report = verify_cubical_identities(bad)
    assert report and report[0][0] == "sq" and report[0][1][0] == "dd"


def test_interval_and_square_chains():
    C1 = normalized_cubical_chains(StandardCube(1))
    assert (C1.rank(0), C1.rank(1)) == (2, 1)
    assert C1.boundary_of(1, "x") == {"1": 1, "0": -1}
    C2 = normalized_cubical_chains(StandardCube(2))
    assert verify_d_squared(C2) == []
    assert betti_numbers(C2) == [1, 0, 0]


def test_serre_small_cases():
    Q = StandardCube(1)
    assert Q.serre_diagonal(Q.elem("x")) == {("0", "x"): 1, ("x", "1"): 1}
    Q2 = StandardCube(2)
    D = Q2.serre_diagonal(Q2.elem("xx"))
    assert D[("00", "xx")] == 1 and D[("xx", "11")] == 1
    # d_2^0 x (x) d_1^1 x keeps coordinate 1 on the left and is free of sign;
    # d_1^0 x (x) d_2^1 x interchanges the two coordinates
    assert D[("x0", "1x")] == 1
    assert D[("0x", "x1")] == -1
    assert len(D) == 4


def test_serre_other_order_fails_chain_map(monkeypatch):
    Q = StandardCube(3)
    assert serre_failures(Q) == {"coassociative": [], "counit": [], "chain_map": []}
    monkeypatch.setattr(cubical, "SERRE_ORDER", "JI")
    assert serre_failures(Q)["chain_map"]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_serre_on_cubes(n):
    assert serre_failures(StandardCube(n)) == {"coassociative": [], "counit": [], "chain_map": []}


def test_products():
    P = cubical_product(point_cubical(), StandardCube(2))
    assert [len(P.cells(k)) for k in range(3)] == [4, 4, 1]
    II = cubical_product(StandardCube(1), StandardCube(1))
    assert verify_cubical_identities(II) == []
    assert [len(II.cells(k)) for k in range(3)] == [4, 4, 1]
    C = normalized_cubical_chains(II)
    C2 = normalized_cubical_chains(StandardCube(2))
    # the obvious bijection of cells carries one boundary to the other
    rel = lambda cell: cell[0] + cell[1]
    for k in (1, 2):
        for c in C.basis(k):
            assert {rel(t): v for t, v in C.boundary_of(k, c).items()} == C2.boundary_of(k, rel(c))
    assert serre_failures(II) == {"coassociative": [], "counit": [], "chain_map": []}


def random_table_set(rng):
    # random 1-dimensional cubical set (a graph) with some degenerate edges, squares glued on loops
    verts = [f"v{i}" for i in range(rng.randint(1, 3))]
    edges = {}
    for k in range(rng.randint(0, 3)):
        edges[f"e{k}"] = [[((), rng.choice(verts)), ((), rng.choice(verts))]]
    dims = {0: verts, 1: list(edges)}
    return TableCubicalSet(dims, edges)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_product_homology_matches_tensor(seed):
    rng = random.Random(seed)
    A, B = random_table_set(rng), random_table_set(rng)
    P = cubical_product(A, B)
    assert verify_cubical_identities(P) == []
    CP = normalized_cubical_chains(P)
    T = tensor_complex(normalized_cubical_chains(A), normalized_cubical_chains(B))
    assert verify_d_squared(CP) == []
    assert CP.degree_range == T.degree_range
    for n in range(CP.degree_range[1] + 1):
        assert homology(CP, n) == homology(T, n)


def test_json_roundtrip():
    faces = {"l": [[((), "*"), ((), "*")]], "s": [[((1,), "*"), ((1,), "*")], [((), "l"), ((1,), "*")]]}
    Q = TableCubicalSet({0: ["*"], 1: ["l"], 2: ["s"]}, faces)
    assert verify_cubical_identities(Q) == []
    Q2 = cubical_from_json(Q.to_json())
    assert Q2.faces == Q.faces


def test_block_faces():
    top = BlockWord.top(2)
    assert str(block_face(top, 2, 0)) == "[0,1,2][2,3]"
    assert str(block_face(top, 2, 1)) == "[0,1,3]"
    ob = BlockWord.top(1, open_first=True)
    assert str(ob) == "0,1,2]"
    assert str(block_face(ob, 1, 0)) == "0][0,1,2]"
    assert str(block_face(ob, 2, 0)) == "0,1][1,2]"
    assert str(block_face(ob, 1, 1)) == "1,2]"
    with pytest.raises(CubicalError):
        block_face(top, 3, 0)


def test_psi():
    assert psi_projection(BlockWord(((0,), (0, 1, 2)), True)) == (0,)
    assert psi_projection(BlockWord(((0, 1), (1, 2)), True)) == (0, 1)
    assert psi_projection(BlockWord.top(3, True)) == (0, 1, 2, 3, 4)


class _BlockCube(cubical.CubicalSet):
    # faces of I^n computed through block words
    def __init__(self, n, open_first):
        self.n, self.o = n, open_first

    def core_dim(self, core):
        return core.dim

    def _core_face(self, core, i, eps):
        return ((), block_face(core, i, eps))

    def cells(self, k):
        raise NotImplementedError


@pytest.mark.parametrize("n,open_first", [(1, False), (2, False), (3, False), (4, False),
                                          (1, True), (2, True), (3, True)])
def test_block_faces_satisfy_identities(n, open_first):
    Q = _BlockCube(n, open_first)
    x = Q.elem(BlockWord.top(n, open_first))
    dim = x[1].dim
    for i in range(1, dim):
        for j in range(i, dim):
            for e1 in (0, 1):
                for e2 in (0, 1):
                    assert Q.face(Q.face(x, i, e2), j, e1) == Q.face(Q.face(x, j + 1, e1), i, e2)
