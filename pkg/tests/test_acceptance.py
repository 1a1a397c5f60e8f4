"""Acceptance suite: one PASS/FAIL line per criterion, with wall time.

The lines are collected in ``RESULTS`` and printed at the end of the pytest
run by ``conftest.py``; running this file directly prints them as well.
"""

import itertools
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from liefield import certify, realize
from liefield.cli import main
from liefield.coeffring import ExpPoly
from liefield.grammar import parse_field
from liefield.roots import (
    all_simple_types,
    build,
    highest_root,
    identify_cartan_matrix,
    obstruction_witness,
)
from liefield.vfield import VectorField, bracket, project

from strategies import rand_coeff, rand_exppoly, rand_field, rand_projectable

RESULTS: list[str] = []
GOLDEN = Path(__file__).parent / "golden" / "fields.txt"


@contextmanager
def criterion(number, title, limit=None):
    """Time the block and record one line; a failed assertion records FAIL and re-raises."""
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        if limit is not None and dt >= limit:
            ok = False
        budget = f" (limit {limit:g} s)" if limit is not None else ""
        RESULTS.append(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  [{dt:.2f} s{budget}]")
    assert limit is None or dt < limit, f"criterion {number} took {dt:.2f} s, limit {limit} s"


def test_01_bracket_laws():
    rng = random.Random(1)
    count = 0
    with criterion(1, "antisymmetry, Jacobi, Leibniz on random fields, N <= 4", limit=10):
        while count < 510:
            n = rng.randint(1, 4)
            X, Y, Z = (rand_field(rng, n, 3, max_pow=1) for _ in range(3))
            h = rand_exppoly(rng, n, 3, max_pow=1)
            assert bracket(X, Y) == -bracket(Y, X)
            J = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
            assert not J
            assert bracket(X, Y.scale(h)) == bracket(X, Y).scale(h) + Y.scale(X(h))
            count += 3


def _exp_closed_form(chi, U, psi, V):
    # exp(chi + psi) (U(psi) V - V(chi) U + [U, V]) with [U, V] = 0 for constant U, V
    U_psi = sum((u * p for u, p in zip(U, psi)), Fraction(0))
    V_chi = sum((v * c for v, c in zip(V, chi)), Fraction(0))
    e = ExpPoly.exp(len(U), [a + b for a, b in zip(chi, psi)])
    return VectorField([e.scale(U_psi * v - V_chi * u) for u, v in zip(U, V)])


def test_02_exponential_oracle():
    rng = random.Random(2)
    with criterion(2, "general bracket equals the exp(chi+psi) closed form", limit=5):
        for _ in range(250):
            n = rng.randint(1, 4)
            chi = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
            psi = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
            U = [rand_coeff(rng) if rng.random() < 0.8 else 0 for _ in range(n)]
            V = [rand_coeff(rng) if rng.random() < 0.8 else 0 for _ in range(n)]
            X = VectorField([ExpPoly.exp(n, chi).scale(u) for u in U])
            Y = VectorField([ExpPoly.exp(n, psi).scale(v) for v in V])
            assert bracket(X, Y) == _exp_closed_form(chi, U, psi, V)


def test_03_pairwise_mechanization():
    with criterion(3, "pair systems force off-diagonal unknowns to zero, N = 2..5"):
        for which in ("l", "m"):
            d = certify.diagonal_nonvanishing(1, 1, which)
            assert d["verified"]
            assert [c["result"] for c in d["zero_cases"]] == [certify.INCONSISTENT]
            assert d["nonzero_case"] != certify.INCONSISTENT
        for N in range(2, 6):
            for i, j in itertools.combinations(range(1, N + 1), 2):
                t0 = time.perf_counter()
                sys_, nonzero = certify.pair_system(N, i, j)
                res = certify.solve_small(sys_, nonzero)
                dt = time.perf_counter() - t0
                assert dt < 1, f"pair {i},{j} of N={N} took {dt:.2f} s"
                assert res.classification == certify.FORCES
                off = {certify.lam(i, j), certify.lam(j, i), certify.mu(i, j), certify.mu(j, i)}
                assert off <= set(res.forced)
            assert certify.pairwise_reduce(N)["verified"]


def test_04_realization_audits():
    with criterion(4, "audits of a1_power, a_type and product(2,1)", limit=30):
        for N in range(1, 7):
            rep = realize.audit(realize.a1_power(N))
            assert rep.passed, rep.checks
            assert (rep.closure_dim, rep.identified_type, rep.rank) == (3 * N, ["A1"] * N, N)
            assert rep.killing_det != 0
        for k in range(1, 5):
            rep = realize.audit(realize.a_type(k))
            assert rep.passed, rep.checks
            assert (rep.closure_dim, rep.identified_type, rep.rank) == (k * k + 2 * k, [f"A{k}"], k)
        rep = realize.audit(realize.product([2, 1]))
        assert rep.passed, rep.checks
        assert (rep.closure_dim, rep.identified_type, rep.rank) == (11, ["A2", "A1"], 3)


def test_05_straightening():
    with criterion(5, "straightened A_k: Cartan = coordinate fields, root vectors exp-constant"):
        for k in range(1, 4):
            r = realize.a_type(k)
            s = realize.straighten(r)
            assert s.cartan == [VectorField.coordinate(k, i) for i in range(k)]
            for name, X in s.generators.items():
                if name[0] in "XY":
                    assert realize.is_e1_shape(X), name
            assert r.closure().structure == s.closure().structure


def test_06_root_tables():
    with criterion(6, "positive-root tables and the D4 highest root"):
        for l in range(1, 7):
            assert len(build("A", l).positive_roots) == l * (l + 1) // 2
        # alpha the first simple root, beta the second (short for B2 and G2)
        assert set(build("B", 2).positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
        g2 = build("G", 2)
        assert len(g2.positive_roots) == 6 and {(1, 3), (2, 3)} <= set(g2.positive_roots)
        d4 = build("D", 4)
        assert len(d4.positive_roots) == 12
        top = highest_root(d4)
        assert top == (1, 2, 1, 1)
        for simple in ((1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
            assert d4.inner(top, simple) == 0
        assert d4.inner(top, (0, 1, 0, 0)) != 0


def test_07_witnesses():
    with criterion(7, "every non-A simple type of rank <= 8 has a B2/G2/D4 witness"):
        for typ, rank in all_simple_types(8):
            w = obstruction_witness(typ, rank)
            assert w.verify(), (typ, rank)
            if typ == "A":
                assert not w.is_obstruction
                continue
            assert w.rebuilt_label() in ("B2", "G2", "D4")
            if typ == "E":
                A = build(typ, rank).cartan_matrix
                e6 = [[A[i][j] for j in w.e6_nodes] for i in w.e6_nodes]
                assert identify_cartan_matrix(e6) == ["E6"]
                kept = [v for v in w.e6_nodes if v not in w.removed]
                sub = [[A[i][j] for j in kept] for i in kept]
                assert identify_cartan_matrix(sub) == ["D4"]
                assert set(w.removed) == {w.e6_row[0], w.e6_row[-1]}


def _a_multisets(N):
    out = []

    def rec(rest, top, acc):
        if rest == 0:
            out.append(list(acc))
        for r in range(min(rest, top), 0, -1):
            rec(rest - r, r, acc + [r])

    rec(N, N, [])
    return [[f"A{r}" for r in m] for m in out]


def test_08_classification_end_to_end():
    with criterion(8, "classification verdicts with re-verified certificates", limit=60):
        for factors, N in (["B2"], 2), (["G2"], 2), (["D4"], 4):
            cert = certify.classify(factors, N)
            assert cert.verdict == certify.NOT_REALIZABLE
            assert cert.evidence["obstruction"]["verified"]
            assert certify.verify_certificate(cert)
        for N in range(1, 5):
            for factors in _a_multisets(N):
                cert = certify.classify(factors, N)
                assert cert.verdict == certify.REALIZABLE, factors
                assert cert.evidence["audit"]["passed"]
                assert certify.verify_certificate(cert)
        cert = certify.classify(["A2"], 3)
        assert cert.verdict == certify.OUT_OF_SCOPE
        assert certify.verify_certificate(cert)
        # simple or semisimple algebras whose Cartan fills C^2 (A1 fills C^1)
        viable = {("A1",): 1, ("A1", "A1"): 2, ("A2",): 2}
        for factors, N in viable.items():
            assert certify.classify(list(factors), N).verdict == certify.REALIZABLE
        for lab in ("B2", "G2"):
            assert certify.classify([lab], 2).verdict == certify.NOT_REALIZABLE


def test_09_projection_homomorphism():
    rng = random.Random(9)
    with criterion(9, "projection commutes with the bracket"):
        for _ in range(220):
            n = rng.randint(2, 4)
            k = rng.randint(1, n - 1)
            X, Y = rand_projectable(rng, n, k), rand_projectable(rng, n, k)
            assert project(bracket(X, Y), k) == bracket(project(X, k), project(Y, k))


def _cli(argv):
    return subprocess.run([sys.executable, "-m", "liefield.cli", *argv], capture_output=True)


def test_10_cli_determinism_and_round_trip():
    with criterion(10, "CLI determinism, golden round trip, exit codes"):
        for argv in (
            ["bracket", "exp(x1)*d1", "exp(-1*x1)*d1", "--dim", "1"],
            ["realize", "--factors", "A2,A1", "--dim", "3", "--audit", "--json"],
            ["certify", "--factors", "B2", "--dim", "2", "--json"],
            ["analyze", "x1*d1", "x2*d2", "x1*d2", "x2*d1", "--dim", "2", "--cartan", "1,2", "--json"],
        ):
            a, b = _cli(argv), _cli(argv)
            assert a.returncode == 0 and a.stdout and a.stdout == b.stdout
        lines = [l for l in GOLDEN.read_text().splitlines() if l and not l.startswith("#")]
        assert lines
        for line in lines:
            dim, text = line.split("\t")
            assert str(parse_field(text, int(dim))) == text
        assert _cli(["bracket", "exp(x1)*d1", "exp(-1*x1)*d1", "--dim", "1"]).stdout == b"-2*d1\n"
        assert _cli(["bracket", "x3*d1", "d1", "--dim", "2"]).returncode == 2
        assert _cli(["analyze", "d1", "x1*d1", "x1^2*d1", "--dim", "1", "--cartan", "1"]).returncode == 1
        assert _cli(["closure", "x1*d1", "exp(x1)*d1", "--dim", "1", "--max-dim", "5"]).returncode == 3
        assert main(["certify", "--factors", "G2", "--dim", "2"]) == 0


if __name__ == "__main__":
    fails = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                fails += 1
    print("\n".join(RESULTS))
    sys.exit(1 if fails else 0)
