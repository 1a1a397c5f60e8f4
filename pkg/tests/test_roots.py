from fractions import Fraction

import pytest

from liefield.roots import (
    DynkinDiagram,
    RootSystemError,
    all_simple_types,
    build,
    cartan_matrix,
    highest_root,
    identify_cartan_matrix,
    obstruction_witness,
    orthogonal_a1_subset,
)


def weyl_orbit_roots(rs):
    """All roots as the orbit of the simple roots under simple reflections (independent oracle)."""
    A = rs.cartan_matrix
    n = rs.rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                # s_i(r) = r - <r, a_i^vee> a_i with <r, a_i^vee> = sum_j r_j A[i][j]
                pairing = sum(r[j] * A[i][j] for j in range(n))
                s = tuple(r[k] - (pairing if k == i else 0) for k in range(n))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return seen


CLASSICAL_COUNTS = {("A", l): l * (l + 1) // 2 for l in range(1, 7)}
CLASSICAL_COUNTS.update({("B", 2): 4, ("G", 2): 6, ("D", 4): 12, ("E", 6): 36, ("E", 7): 63,
                         ("E", 8): 120, ("F", 4): 24, ("C", 3): 9, ("B", 3): 9, ("D", 5): 20})


@pytest.mark.parametrize("typ,rank", sorted(CLASSICAL_COUNTS))
def test_positive_root_counts(typ, rank):
    rs = build(typ, rank)
    assert len(rs.positive_roots) == CLASSICAL_COUNTS[(typ, rank)]
    orbit = weyl_orbit_roots(rs)
    assert set(rs.all_roots()) == orbit


def test_b2_matches_listed_roots():
    rs = build("B", 2)
    # alpha, beta, alpha+beta, alpha+2beta
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert highest_root(rs) == (1, 2)


def test_g2_matches_listed_roots():
    rs = build("G", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)}


def test_d4_highest_root_orthogonal_to_outer_nodes():
    rs = build("D", 4)
    h = highest_root(rs)
    assert h == (1, 2, 1, 1)
    for i in (0, 2, 3):
        e = tuple(int(k == i) for k in range(4))
        assert rs.inner(h, e) == 0
    # <alpha,beta> = <beta,gamma> = <beta,delta> = -1 in the simply-laced normalization
    assert rs.bilinear[0][1] == rs.bilinear[1][2] == rs.bilinear[1][3] == -1


def test_a1_highest():
    assert highest_root(build("A", 1)) == (1,)


def test_orthogonal_subsets():
    assert orthogonal_a1_subset(build("B", 2), 2) == [(1, 0), (1, 2)]
    assert orthogonal_a1_subset(build("D", 4), 4) == [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 2, 1, 1)]
    assert orthogonal_a1_subset(build("A", 2), 2) is None
    rs = build("G", 2)
    sub = orthogonal_a1_subset(rs, 2)
    assert rs.inner(*sub) == 0


def test_cartan_invariants():
    for typ, rank in all_simple_types(8):
        A = build(typ, rank).cartan_matrix
        assert all(A[i][i] == 2 for i in range(rank))
        for i in range(rank):
            for j in range(rank):
                if i != j:
                    assert A[i][j] in (0, -1, -2, -3)
                    assert (A[i][j] == 0) == (A[j][i] == 0)
        assert identify_cartan_matrix(A) == [build(typ, rank).label]


def test_illegal_types():
    for typ, rank in [("G", 5), ("E", 9), ("D", 3), ("B", 1), ("Q", 2)]:
        with pytest.raises(RootSystemError):
            build(typ, rank)


def test_c2_is_b2():
    assert build("C", 2).label == "B2"


@pytest.mark.parametrize("typ,rank", all_simple_types(8))
def test_witnesses(typ, rank):
    w = obstruction_witness(typ, rank)
    if typ == "A":
        assert not w.is_obstruction
        return
    assert w.kind in ("B2", "G2", "D4")
    assert w.verify()
    assert identify_cartan_matrix(w.sub_cartan()) == [w.kind]


def test_e6_row_extremes_removed():
    w = obstruction_witness("E", 6)
    assert w.kind == "D4"
    assert len(w.e6_row) == 5 and set(w.removed) == {w.e6_row[0], w.e6_row[-1]}


def test_b5_double_bond():
    w = obstruction_witness("B", 5)
    assert w.kind == "B2" and sorted(w.nodes) == [3, 4]


def test_diagram_ascii_and_json():
    d = build("E", 6).diagram()
    assert isinstance(d, DynkinDiagram)
    assert "o" in d.ascii()
    js = d.to_json()
    assert js["type"] == "E6" and len(js["edges"]) == 5
