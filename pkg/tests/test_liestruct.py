import random
from fractions import Fraction

import pytest

from liefield import liestruct
from liefield.grammar import parse_field
from liefield.liestruct import (
    ClosureError,
    DecompositionError,
    generic_rank,
    identify_type,
    is_semisimple,
    killing_form,
    root_decomposition,
    span_closure,
)
from liefield.realize import a1_power, a_type, product
from liefield.vfield import VectorField, bracket


def fields(texts, dim):
    return [parse_field(t, dim) for t in texts]


def test_exp_triple_closure():
    A = span_closure(fields(["d1", "exp(x1)*d1", "exp(-x1)*d1"], 1))
    assert A.dim == 3


def test_abelian_rank_one():
    n = 4
    A = span_closure(fields(["d1"] + [f"x2^{k}*d1" for k in range(1, n + 1)], 2))
    assert A.dim == n + 1
    assert A.is_abelian()
    assert generic_rank(A) == 1
    assert all(v == 0 for row in killing_form(A) for v in row)
    assert not is_semisimple(A)


def test_trivial():
    A = span_closure(fields(["d1"], 1))
    assert A.dim == 1 and not is_semisimple(A)


def test_rank_of_coordinate_fields():
    assert generic_rank(span_closure(fields(["d1", "d2"], 2))) == 2


def test_closure_cap():
    with pytest.raises(ClosureError):
        span_closure(fields(["exp(x1)*d1", "x1^2*d1"], 1), max_dim=10)


def test_closure_idempotent():
    A = a_type(2).closure()
    B = span_closure(A.basis)
    assert B.basis == A.basis and B.structure == A.structure


def _structure_from_brackets(A):
    for a in range(A.dim):
        for b in range(A.dim):
            lhs = bracket(A.basis[a], A.basis[b])
            rhs = A.element([A.structure_constant(a, b, c) for c in range(A.dim)])
            assert lhs == rhs


def test_structure_constants_exact():
    _structure_from_brackets(a_type(2).closure())


@pytest.mark.parametrize("A", [a_type(2).closure(), product([1, 1]).closure()])
def test_antisymmetry_and_jacobi(A):
    n = A.dim
    C = A.structure_array()
    for a in range(n):
        for b in range(n):
            assert C[a][b] == [-x for x in C[b][a]]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                tot = [Fraction(0)] * n
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    inner = C[y][z]
                    for d, v in enumerate(inner):
                        if v:
                            for e in range(n):
                                tot[e] += v * C[x][d][e]
                assert not any(tot)


def test_sl2_killing_oracle():
    # standard triple on C^1
    H, X, Y = fields(["2*x1*d1", "-x1^2*d1", "d1"], 1)
    assert bracket(H, X) == X.scale(2) and bracket(H, Y) == Y.scale(-2) and bracket(X, Y) == H
    A = span_closure([H, X, Y])
    K = killing_form(A)
    assert K[0][0] == 8 and K[1][2] == 4 and K[0][1] == 0


def test_killing_invariance():
    A = a_type(2).closure()
    K = killing_form(A)
    rng = random.Random(5)

    def kap(x, y):
        return sum(x[a] * K[a][b] * y[b] for a in range(A.dim) for b in range(A.dim))

    for _ in range(10):
        x, y, z = ([Fraction(rng.randint(-2, 2)) for _ in range(A.dim)] for _ in range(3))
        assert kap(A.bracket_coords(x, y), z) == kap(x, A.bracket_coords(y, z))


def test_product_killing_block_diagonal():
    A1 = a_type(1).closure()
    A2 = a_type(2).closure()
    P = product([2, 1]).closure()
    d = liestruct.killing_determinant
    assert d(P) == d(A1) * d(A2)


def test_canonical_a1_roots():
    A = a1_power(1).closure()
    cd = root_decomposition(A, [0])
    assert cd.roots == [(Fraction(-1),), (Fraction(1),)]
    for lam, text in ((1, "exp(x1)*d1"), (-1, "exp(-x1)*d1")):
        (v,) = cd.root_vectors((Fraction(lam),))
        assert span_closure([v]).contains(parse_field(text, 1))
        assert len(v.monomials()) == 1


def test_abelian_cartan_single_zero_root():
    A = span_closure(fields(["d1", "d2"], 2))
    cd = root_decomposition(A, [0, 1])
    assert cd.roots == [] and len(cd.zero_space) == 2


def test_a2_roots_and_type():
    r = a_type(2)
    A = r.closure()
    cd = root_decomposition(A, [0, 1])
    assert len(cd.roots) == 6
    assert {tuple(-x for x in ro) for ro in cd.roots} == set(cd.roots)
    assert identify_type(cd) == ["A2"]


def test_product_types():
    A = product([2, 1]).closure()
    assert identify_type(root_decomposition(A, [0, 1, 2])) == ["A2", "A1"]
    A = a1_power(4).closure()
    assert identify_type(root_decomposition(A, [0, 1, 2, 3])) == ["A1"] * 4


def test_non_commuting_cartan_rejected():
    A = span_closure(fields(["d1", "x1*d1", "x1^2*d1"], 1))
    with pytest.raises(DecompositionError):
        root_decomposition(A, [0, 1])


def test_nilpotent_cartan_rejected():
    A = span_closure(fields(["d1", "x1*d1", "x1^2*d1"], 1))
    with pytest.raises(DecompositionError):
        root_decomposition(A, [0])  # ad(d1) is nilpotent: not self-centralizing


def test_rank_bounds():
    for r in [a1_power(2), a_type(3), product([1, 2])]:
        A = r.closure()
        g = generic_rank(A)
        assert g <= min(A.dim, A.ambient_dim)
        assert g == r.ambient_dim
