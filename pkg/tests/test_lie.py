import itertools
import random
from fractions import Fraction

import pytest

from rotabaxter.catalog import (
    abelian,
    affine_line,
    double_affine,
    heisenberg,
    natural_rep_affine,
    search_algebras,
    sl2,
)
from rotabaxter.errors import SearchSpaceError, ShapeMismatchError
from rotabaxter.lie import (
    LinearOperator,
    adjoint,
    check_lie,
    check_representation,
    is_rota_baxter,
    lie_algebra,
    oop_defect,
    operator,
    search_rbo,
    zero_operator,
)
from rotabaxter.linalg import basis_vector, mat_vec, matrix


def direct_rbo_check(alg, p):
    """Oracle: the weight-zero Rota-Baxter identity by raw matrix algebra."""
    n = alg.dim
    for i in range(n):
        for j in range(n):
            px = mat_vec(p.matrix, basis_vector(n, i))
            py = mat_vec(p.matrix, basis_vector(n, j))
            lhs = alg.bracket(px, py)
            inner_1 = alg.bracket(px, basis_vector(n, j))
            inner_2 = alg.bracket(basis_vector(n, i), py)
            rhs = mat_vec(p.matrix, tuple(a + b for a, b in zip(inner_1, inner_2)))
            if lhs != rhs:
                return False
    return True


def test_check_lie_abelian():
    assert check_lie(abelian(3)).ok


def test_check_lie_catalog():
    for name, alg in search_algebras():
        rep = check_lie(alg)
        assert rep.ok, name


def test_check_lie_antisymmetry_failure():
    broken = lie_algebra(["e1", "e2"], {(0, 1): {0: 1}, (1, 0): {0: 1}})
    rep = check_lie(broken)
    assert not rep.ok
    assert not rep.details["antisymmetry_ok"]
    assert rep.witness["at"] == [1, 2, 1]


def test_check_lie_jacobi_failure():
    broken = lie_algebra(
        ["e1", "e2", "e3"],
        {(0, 1): {2: 1}, (0, 2): {0: 1}},
    )
    rep = check_lie(broken)
    assert not rep.ok
    assert rep.details["antisymmetry_ok"]
    assert not rep.details["jacobi_ok"]


def test_adjoint_matrices_affine():
    ad = adjoint(affine_line())
    assert ad.matrices[0] == matrix([[0, 0], [0, 1]])
    assert ad.matrices[1] == matrix([[0, 0], [-1, 0]])


def test_adjoint_heisenberg_single_entry():
    ad = adjoint(heisenberg())
    assert ad.matrices[0] == matrix([[0, 0, 0], [0, 0, 0], [0, 1, 0]])


def test_adjoint_is_representation_for_catalog():
    for alg in [affine_line(), heisenberg(), sl2(), double_affine(), abelian(2)]:
        assert check_representation(alg, adjoint(alg)).ok


def test_zero_representation_ok():
    alg = affine_line()
    zero = lie_algebra(["v1", "v2"], {})
    rep = natural_rep_affine()
    from rotabaxter.lie import Representation

    zrep = Representation(("v1", "v2"), (matrix([[0, 0], [0, 0]]),) * 2)
    assert check_representation(alg, zrep).ok
    assert check_representation(alg, rep).ok


def test_representation_failure_witness():
    from rotabaxter.lie import Representation

    alg = affine_line()
    bad = Representation(("v1", "v2"), (matrix([[1, 0], [0, 0]]), matrix([[1, 0], [0, 0]])))
    rep = check_representation(alg, bad)
    assert not rep.ok
    assert rep.witness["at"] == [1, 2]


def test_oop_defect_zero_operator():
    alg = affine_line()
    assert oop_defect(alg, adjoint(alg), zero_operator(2, 2)).is_zero()


def test_oop_defect_known_rbo():
    alg = affine_line()
    p = operator([[0, 1], [0, 0]], "g", "g")  # P(e1)=0, P(e2)=e1
    assert oop_defect(alg, adjoint(alg), p).is_zero()
    assert is_rota_baxter(alg, p)


def test_oop_defect_identity_operator():
    alg = affine_line()
    ident = operator([[1, 0], [0, 1]], "g", "g")
    defect = oop_defect(alg, adjoint(alg), ident)
    assert defect.eval((0, 1)) == (Fraction(0), Fraction(-1))
    assert not is_rota_baxter(alg, ident)


def test_oop_defect_antisymmetry():
    rng = random.Random(1)
    alg = heisenberg()
    rep = adjoint(alg)
    for _ in range(10):
        mat = [[Fraction(rng.randrange(-2, 3)) for _ in range(3)] for _ in range(3)]
        t = LinearOperator(matrix(mat))
        d = oop_defect(alg, rep, t)
        for i in range(3):
            for j in range(3):
                lhs = d.eval((i, j))
                rhs = tuple(-x for x in d.eval((j, i)))
                assert lhs == rhs


def test_is_rota_baxter_matches_defect_route():
    rng = random.Random(2)
    for name, alg in search_algebras():
        rep = adjoint(alg)
        for _ in range(25):
            mat = [[Fraction(rng.randrange(-1, 2)) for _ in range(alg.dim)]
                   for _ in range(alg.dim)]
            p = LinearOperator(matrix(mat), "g", "g")
            assert is_rota_baxter(alg, p) == oop_defect(alg, rep, p).is_zero()


def test_oop_scaling_invariance():
    # If T is an O-operator, so is every scalar multiple.
    alg = affine_line()
    rep = adjoint(alg)
    found = search_rbo(alg, (-1, 0, 1))
    for op in found:
        for lam in (Fraction(-1), Fraction(2), Fraction(1, 3)):
            assert oop_defect(alg, rep, op.scale(lam)).is_zero()


def test_search_rbo_matches_direct_oracle_affine():
    alg = affine_line()
    grid = (Fraction(-1), Fraction(0), Fraction(1))
    found = search_rbo(alg, grid)
    expected = []
    for flat in itertools.product(grid, repeat=4):
        p = LinearOperator((flat[0:2], flat[2:4]), "g", "g")
        if direct_rbo_check(alg, p):
            expected.append(p.matrix)
    assert sorted(op.matrix for op in found) == sorted(expected)
    assert len(found) == 15


def test_search_rbo_zero_one_grid_contains_spec_examples():
    alg = affine_line()
    found = {op.matrix for op in search_rbo(alg, (0, 1))}
    assert len(found) == 5
    assert matrix([[0, 1], [0, 0]]) in found  # P(e1)=0, P(e2)=e1
    assert matrix([[0, 0], [0, 0]]) in found


def test_search_rbo_abelian_one_dim():
    found = search_rbo(abelian(1), (0, 1))
    assert len(found) == 2


def test_search_rbo_empty_grid():
    with pytest.raises(ValueError):
        search_rbo(affine_line(), ())


def test_search_rbo_cap():
    with pytest.raises(SearchSpaceError):
        search_rbo(sl2(), (-1, 0, 1), cap=100)


def test_search_rbo_parallel_agrees():
    alg = affine_line()
    seq = search_rbo(alg, (-1, 0, 1))
    par = search_rbo(alg, (-1, 0, 1), processes=2)
    assert [op.matrix for op in seq] == [op.matrix for op in par]


def test_shape_errors():
    alg = affine_line()
    with pytest.raises(ShapeMismatchError):
        oop_defect(alg, adjoint(alg), zero_operator(3, 3))
    with pytest.raises(ShapeMismatchError):
        is_rota_baxter(alg, zero_operator(3, 3))
