import itertools
from fractions import Fraction

import pytest

from liefield import certify
from liefield.certify import (
    FORCES,
    INCONSISTENT,
    NOT_REALIZABLE,
    OUT_OF_SCOPE,
    REALIZABLE,
    PolyConstraintSystem,
    Relation,
    a1_relations,
    ansatz_constraints,
    classify,
    diagonal_nonvanishing,
    highest_weight_obstruction,
    joint_kernel,
    lam,
    monomial_field_space,
    mu,
    pair_system,
    pairwise_reduce,
    solve_small,
    verify_certificate,
)
from liefield.grammar import parse_field
from liefield.polys import PolyRing, ResourceExhausted
from liefield.vfield import VectorField


def test_single_index_normalization():
    sys = ansatz_constraints(1, [Relation("HX=X", 1)])
    assert [str(e) for e in sys.equations] == ["-2*l11^2*m11 - l11"]
    res = solve_small(sys, ["l11"])
    # with l11 != 0 the relation says l11*m11 = -1/2
    R = res.basis[0].ring
    prod = R.gen("l11") * R.gen("m11") + Fraction(1, 2)
    from liefield.polys import normal_form
    assert not normal_form(prod, res.basis)


def test_empty_relations():
    assert len(ansatz_constraints(2, [])) == 0


def test_undefined_index():
    with pytest.raises(IndexError):
        ansatz_constraints(2, [Relation("XX=0", 1, 3)])


def test_prop_system_n2_forces_off_diagonal():
    sys = ansatz_constraints(2, a1_relations([1, 2]))
    res = solve_small(sys, ["l11", "m11", "l22", "m22"])
    assert res.classification == FORCES
    assert {"l12", "m12", "l21", "m21"} <= set(res.forced)


def test_inverse_clash():
    R = PolyRing(["v"])
    sys = PolyConstraintSystem(R, [R.gen("v")], ["v = 0"])
    assert solve_small(sys, ["v"]).classification == INCONSISTENT


def test_paper_identities_clash():
    # l - l*t, t - l, l*t + t with t nonzero
    R = PolyRing(["l", "t"])
    l, t = R.gens()
    sys = PolyConstraintSystem(R, [l - l * t, t - l, l * t + t], ["z1a", "z1b", "dx"])
    assert solve_small(sys, ["t"]).classification == INCONSISTENT


def test_variable_cap():
    sys = ansatz_constraints(3, a1_relations([1, 2, 3]))
    with pytest.raises(ResourceExhausted):
        solve_small(sys, ["l11"])


def test_permuted_equations_same_classification():
    sys, nz = pair_system(2, 1, 2)
    a = solve_small(sys, nz)
    rev = PolyConstraintSystem(sys.ring, sys.equations[::-1], sys.provenance[::-1])
    b = solve_small(rev, nz)
    assert a.classification == b.classification and a.basis == b.basis


def test_relabeling_invariance():
    sys = ansatz_constraints(2, a1_relations([1, 2]))
    swap = {"l11": "l22", "l22": "l11", "l12": "l21", "l21": "l12",
            "m11": "m22", "m22": "m11", "m12": "m21", "m21": "m12"}
    renamed = {e.monic() for e in (p.rename(sys.ring, swap) for p in sys.equations)}
    original = {e.monic() for e in sys.equations}
    assert renamed == original


def test_provenance_tags_name_relations():
    sys = ansatz_constraints(2, a1_relations([1, 2]))
    names = {str(r) for r in a1_relations([1, 2])}
    assert all(tag.split(":")[0] in names for tag in sys.provenance)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("which", ["l", "m"])
def test_diagonal_nonvanishing(n, which):
    out = diagonal_nonvanishing(n, 1, which)
    assert out["verified"]
    assert all(c["result"] == INCONSISTENT for c in out["zero_cases"])
    assert out["nonzero_case"] != INCONSISTENT


def test_pairwise_small():
    assert pairwise_reduce(1)["verified"] and pairwise_reduce(1)["pairs"] == []
    r2 = pairwise_reduce(2)
    assert r2["verified"] and r2["forced_zero"] == ["l12", "l21", "m12", "m21"]
    r3 = pairwise_reduce(3)
    assert r3["verified"] and len(r3["pairs"]) == 3
    assert all(set(p["result"]["forced_zero"]) >= {certify.lam(*p["pair"])} for p in r3["pairs"])


class TestJointKernel:
    def test_constant_fields(self):
        D = [parse_field("d1", 2), parse_field("d2", 2)]
        ker = joint_kernel(D, monomial_field_space(2, 2))
        assert len(ker) == 2
        assert all(k.is_constant() for k in ker)

    def test_no_derivations(self):
        space = [parse_field("exp(x1)*d1", 1), parse_field("d1", 1)]
        assert len(joint_kernel([], space)) == 2

    def test_eigenvalue_one(self):
        space = [parse_field("exp(x1)*d1", 1), parse_field("d1", 1)]
        ker = joint_kernel([parse_field("d1", 1)], space)
        assert ker == [parse_field("d1", 1)]

    def test_unstable_space(self):
        with pytest.raises(certify.StabilityError):
            joint_kernel([parse_field("d1", 1)], [parse_field("x1^2*d1", 1)])


@pytest.mark.parametrize("target,n,roots", [("B2", 2, [[1, 0], [1, 2]]), ("G2", 2, [[1, 0], [1, 2]]),
                                            ("D4", 4, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 2, 1, 1]])])
def test_highest_weight_obstruction(target, n, roots):
    frag = highest_weight_obstruction(target, n)
    assert frag["verified"]
    assert frag["orthogonal_roots"] == roots


def test_obstruction_rejects_other_targets():
    with pytest.raises(ValueError):
        highest_weight_obstruction("B2", 3)


@pytest.mark.parametrize("factors,n,verdict", [
    (["A2", "A1"], 3, REALIZABLE), (["B2"], 2, NOT_REALIZABLE), (["D4"], 4, NOT_REALIZABLE),
    (["G2"], 2, NOT_REALIZABLE), (["A1"], 1, REALIZABLE), (["A2"], 2, REALIZABLE),
    (["A1", "A1"], 2, REALIZABLE), (["A2"], 3, OUT_OF_SCOPE), (["A3"], 2, NOT_REALIZABLE),
    (["C2"], 2, NOT_REALIZABLE), (["F4"], 4, NOT_REALIZABLE), (["E6"], 6, NOT_REALIZABLE),
    (["B2"], 3, OUT_OF_SCOPE),
])
def test_classify(factors, n, verdict):
    cert = classify(factors, n)
    assert cert.verdict == verdict
    assert verify_certificate(cert)


def test_classify_round_trip_a_types():
    for N in range(1, 7):
        for parts in _partitions(N):
            cert = classify([f"A{p}" for p in parts], N)
            assert cert.verdict == REALIZABLE
            assert cert.evidence["audit"]["identified_type"] == cert.factors


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def test_tampered_certificate_fails():
    cert = classify(["E7"], 7)
    cert.evidence["witness"]["nodes"] = [1, 2, 3, 4]
    assert not verify_certificate(cert)


@pytest.mark.parametrize("N,i,j", [(2, 1, 2), (3, 1, 3), (4, 2, 4)])
def test_pair_forces_without_cartan_normalization(N, i, j):
    sys_, nonzero = pair_system(N, i, j, normalize_cartan=False)
    assert not any("XY=H" in t for t in sys_.provenance)
    res = solve_small(sys_, nonzero)
    assert res.classification == FORCES
    assert {lam(i, j), lam(j, i), mu(i, j), mu(j, i)} <= set(res.forced)
