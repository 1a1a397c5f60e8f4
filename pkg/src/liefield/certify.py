"""Machine-checked classification of maximal-rank semisimple field algebras.

Three kinds of evidence are produced here:

* polynomial constraint systems for the constant-coefficient ansatz
  ``X_i = exp(x_i) sum_j l_ij d_j``, ``Y_i = exp(-x_i) sum_j m_ij d_j``,
  decided by Gröbner bases with nonzero unknowns saturated away;
* a highest-weight obstruction: the joint kernel of the straightened
  derived-Borel generators of ``A1^N`` is spanned by constant fields, which
  already belong to ``A1^N``;
* audited realizations for the A-type products that do exist.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg, realize
from .coeffring import ExpMonomial, ExpPoly
from .liestruct import field_vector, span_closure
from .polys import MAX_VARIABLES, Poly, PolyRing, ResourceExhausted, groebner, normal_form
from .roots import (
    Witness,
    build,
    check_type,
    format_root,
    label,
    obstruction_witness,
    orthogonal_a1_subset,
    parse_label,
    sort_labels,
)
from .vfield import VectorField, bracket, mono_text, permute, polynomial_chart, project, reflect

REALIZABLE = "REALIZABLE"
NOT_REALIZABLE = "NOT_REALIZABLE"
OUT_OF_SCOPE = "OUT_OF_SCOPE"

INCONSISTENT = "INCONSISTENT"
FORCES = "FORCES"
OPEN = "OPEN"


class CertificationError(RuntimeError):
    """A step of a certificate failed to verify."""


class StabilityError(CertificationError):
    """The field space is not stable under the given derivations."""


# -- constraint systems -------------------------------------------------------------------


def lam(i: int, j: int) -> str:
    return f"l{i}{j}" if max(i, j) < 10 else f"l{i}_{j}"


def mu(i: int, j: int) -> str:
    return f"m{i}{j}" if max(i, j) < 10 else f"m{i}_{j}"


@dataclass(frozen=True)
class Relation:
    """One imposed bracket relation between ansatz generators (1-based indices).

    kinds: ``XY=H`` (``[X_i, Y_i] = d_i``), ``HX=X`` and ``HY=-Y`` (with
    ``H_i = [X_i, Y_i]``), and for ``i != j``: ``XX=0``, ``YY=0``, ``XY=0``
    (``[X_i, Y_j] = 0``).
    """

    kind: str
    i: int
    j: int | None = None

    def __str__(self):
        a, b = {"XY=H": ("[X{i},Y{i}]", "H{i}"), "HX=X": ("[H{i},X{i}]", "X{i}"),
                "HY=-Y": ("[H{i},Y{i}]", "-Y{i}"), "XX=0": ("[X{i},X{j}]", "0"),
                "YY=0": ("[Y{i},Y{j}]", "0"), "XY=0": ("[X{i},Y{j}]", "0")}[self.kind]
        return f"{a}={b}".format(i=self.i, j=self.j)


SINGLE_KINDS = ("XY=H", "HX=X", "HY=-Y")
PAIR_KINDS = ("XX=0", "YY=0", "XY=0")


def a1_relations(indices: Sequence[int], normalize_cartan: bool = True) -> list[Relation]:
    """Relations saying the triples with the given indices span commuting sl2 factors."""
    out = []
    for i in indices:
        if normalize_cartan:
            out.append(Relation("XY=H", i))
        out.append(Relation("HX=X", i))
        out.append(Relation("HY=-Y", i))
    for i, j in itertools.permutations(indices, 2):
        if i < j:
            out.append(Relation("XX=0", i, j))
            out.append(Relation("YY=0", i, j))
        out.append(Relation("XY=0", i, j))
    return out


@dataclass
class PolyConstraintSystem:
    ring: PolyRing
    equations: list[Poly]
    provenance: list[str]

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.names

    def __len__(self):
        return len(self.equations)

    def with_equations(self, extra: Sequence[Poly], tags: Sequence[str]) -> "PolyConstraintSystem":
        return PolyConstraintSystem(self.ring, self.equations + list(extra), self.provenance + list(tags))

    def check(self) -> None:
        declared = set(self.ring.names)
        for eq, tag in zip(self.equations, self.provenance):
            if not eq.variables() <= declared:
                raise CertificationError(f"equation {tag} uses undeclared variables")

    def to_json(self) -> dict:
        return {"variables": list(self.ring.names),
                "equations": [{"poly": str(e), "from": t} for e, t in zip(self.equations, self.provenance)]}


def ansatz_fields(N: int, ring: PolyRing | None = None):
    """Symbolic ``X_i``, ``Y_i`` on C^N with unknown constant coefficients."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if ring is None:
        names = [lam(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
        names += [mu(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
        ring = PolyRing(names)
    X, Y = {}, {}
    for i in range(1, N + 1):
        ep = ExpMonomial(tuple(Fraction(int(k == i - 1)) for k in range(N)), (0,) * N)
        em = ExpMonomial(tuple(Fraction(-int(k == i - 1)) for k in range(N)), (0,) * N)
        X[i] = VectorField([ExpPoly(N, {ep: ring.gen(lam(i, j))}) for j in range(1, N + 1)])
        Y[i] = VectorField([ExpPoly(N, {em: ring.gen(mu(i, j))}) for j in range(1, N + 1)])
    return ring, X, Y


def _relation_field(rel: Relation, X, Y, N: int) -> VectorField:
    i, j = rel.i, rel.j
    if i not in X or (j is not None and j not in X):
        raise IndexError(f"relation {rel} refers to an undefined index")
    if rel.kind in PAIR_KINDS and (j is None or j == i):
        raise ValueError(f"relation {rel.kind} needs two distinct indices")
    if rel.kind == "XY=H":
        return bracket(X[i], Y[i]) - VectorField.coordinate(N, i - 1)
    if rel.kind == "HX=X":
        return bracket(bracket(X[i], Y[i]), X[i]) - X[i]
    if rel.kind == "HY=-Y":
        return bracket(bracket(X[i], Y[i]), Y[i]) + Y[i]
    if rel.kind == "XX=0":
        return bracket(X[i], X[j])
    if rel.kind == "YY=0":
        return bracket(Y[i], Y[j])
    if rel.kind == "XY=0":
        return bracket(X[i], Y[j])
    raise ValueError(f"unknown relation kind {rel.kind!r}")


def constraints_from_fields(ring: PolyRing, X: dict, Y: dict, N: int,
                            relations: Sequence[Relation]) -> PolyConstraintSystem:
    eqs, tags = [], []
    seen = set()
    for rel in relations:
        F = _relation_field(rel, X, Y, N)
        for (slot, mono), c in sorted(F.items(), key=lambda t: (t[0][0], t[0][1])):
            if not isinstance(c, Poly):
                c = ring.constant(c)
            if not c:
                continue
            eq = c.monic() if not c.is_constant() else ring.one()
            if eq in seen:
                continue
            seen.add(eq)
            eqs.append(c)
            tags.append(f"{rel}: d{slot + 1} coefficient of {mono_text(mono)}")
    sys = PolyConstraintSystem(ring, eqs, tags)
    sys.check()
    return sys


def ansatz_constraints(N: int, relations: Sequence[Relation]) -> PolyConstraintSystem:
    """Coefficient-wise polynomial equations imposed by ``relations`` on the ansatz."""
    ring, X, Y = ansatz_fields(N)
    return constraints_from_fields(ring, X, Y, N, relations)


@dataclass
class SolveResult:
    classification: str
    forced: list[str]
    basis: list[Poly]
    nonzero: list[str]

    def to_json(self) -> dict:
        return {"classification": self.classification, "forced_zero": self.forced,
                "nonzero": self.nonzero, "groebner_basis": [str(g) for g in self.basis]}


def solve_small(system: PolyConstraintSystem, nonzero: Sequence[str] = ()) -> SolveResult:
    """Decide what the system says about its variables, with ``v != 0`` for ``v`` in ``nonzero``."""
    nonzero = list(nonzero)
    for v in nonzero:
        if v not in system.ring.index:
            raise KeyError(f"unknown variable {v}")
    used = sorted(set().union(*(e.variables() for e in system.equations)) | set(nonzero),
                  key=system.ring.index.__getitem__)
    inverses = [f"inv_{v}" for v in nonzero]
    if len(used) + len(inverses) > MAX_VARIABLES:
        raise ResourceExhausted(
            f"{len(used) + len(inverses)} variables after saturation exceeds the cap of {MAX_VARIABLES}")
    ring = PolyRing(used + inverses)
    polys = [e.rename(ring) for e in system.equations]
    for v, w in zip(nonzero, inverses):
        polys.append(ring.gen(v) * ring.gen(w) - 1)
    G = groebner(polys)
    if len(G) == 1 and G[0].is_constant():
        return SolveResult(INCONSISTENT, [], G, nonzero)
    forced = [v for v in used if not normal_form(ring.gen(v), G)]
    return SolveResult(FORCES if forced else OPEN, forced, G, nonzero)


# -- the A1^N mechanization ------------------------------------------------------------------


def diagonal_nonvanishing(n: int = 2, index: int = 1, which: str = "l") -> dict:
    """Single-triple system: a zero diagonal entry contradicts ``[H, X] = X``.

    Only the eigen-relations are imposed (no normalization of ``H``).  A
    nonzero generator needs some nonzero coefficient, so the case
    ``diagonal = 0`` splits over the slot carrying it; every case must be
    inconsistent.  The complementary case (diagonal nonzero) must not be.
    """
    ring, X, Y = ansatz_fields(n)
    rels = [Relation("HX=X", index), Relation("HY=-Y", index)]
    sys = constraints_from_fields(ring, X, Y, n, rels)
    name = (lam if which == "l" else mu)
    diag = name(index, index)
    zero_cases = []
    for j in range(1, n + 1):
        other = name(index, j)
        case = sys.with_equations([ring.gen(diag)], [f"{diag} = 0"])
        res = solve_small(case, [other])
        zero_cases.append({"nonzero": other, "result": res.classification})
    consistent = solve_small(sys, [lam(index, index), mu(index, index)])
    ok = all(c["result"] == INCONSISTENT for c in zero_cases) and consistent.classification != INCONSISTENT
    return {"ambient_dim": n, "variable": diag, "zero_cases": zero_cases,
            "nonzero_case": consistent.classification, "verified": ok}


def pair_system(N: int, i: int, j: int,
                normalize_cartan: bool = True) -> tuple[PolyConstraintSystem, list[str]]:
    """Project the pair ``(i, j)`` of the ansatz onto ``(x_i, x_j)`` and impose A1 x A1.

    ``normalize_cartan=False`` drops ``[X, Y] = H`` and keeps only the eigen
    and commutation relations.
    """
    ring, X, Y = ansatz_fields(N)
    # move x_i, x_j to the front, then drop the rest: X_i, Y_i only see x_i
    order = [i - 1, j - 1] + [k for k in range(N) if k not in (i - 1, j - 1)]
    perm = [0] * N
    for new, old in enumerate(order):
        perm[old] = new
    PX = {1: project(permute(X[i], perm), 2), 2: project(permute(X[j], perm), 2)}
    PY = {1: project(permute(Y[i], perm), 2), 2: project(permute(Y[j], perm), 2)}
    names = [lam(i, i), lam(i, j), lam(j, i), lam(j, j), mu(i, i), mu(i, j), mu(j, i), mu(j, j)]
    sub = PolyRing(names)

    # the projected coefficients only involve the pair unknowns
    def restrict(F: VectorField) -> VectorField:
        return VectorField([ExpPoly(2, {m: c.rename(sub) for m, c in f.items()}) for f in F.coeffs])

    PX = {k: restrict(v) for k, v in PX.items()}
    PY = {k: restrict(v) for k, v in PY.items()}
    sys = constraints_from_fields(sub, PX, PY, 2, a1_relations([1, 2], normalize_cartan))
    sys.provenance = [t.replace("X1", f"X{i}").replace("Y1", f"Y{i}").replace("H1", f"H{i}")
                      .replace("X2", f"X{j}").replace("Y2", f"Y{j}").replace("H2", f"H{j}")
                      for t in sys.provenance]
    nonzero = [lam(i, i), mu(i, i), lam(j, j), mu(j, j)]
    return sys, nonzero


def pairwise_reduce(N: int) -> dict:
    """Run every pair system; all off-diagonal unknowns must be forced to zero."""
    pairs = []
    forced_all: set[str] = set()
    for i, j in itertools.combinations(range(1, N + 1), 2):
        sys, nonzero = pair_system(N, i, j)
        res = solve_small(sys, nonzero)
        off = [lam(i, j), lam(j, i), mu(i, j), mu(j, i)]
        ok = res.classification == FORCES and set(off) <= set(res.forced)
        forced_all.update(v for v in res.forced if v in off)
        pairs.append({"pair": [i, j], "equations": len(sys), "result": res.to_json(), "verified": ok})
    expected = {f(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i != j for f in (lam, mu)}
    return {
        "N": N,
        "pairs": pairs,
        "forced_zero": sorted(forced_all),
        "verified": all(p["verified"] for p in pairs) and forced_all == expected,
    }


# -- highest-weight obstruction ---------------------------------------------------------------------


def _independent(fields: Sequence[VectorField]) -> tuple[list[VectorField], linalg.EchelonSpan]:
    span = linalg.EchelonSpan()
    basis = []
    for F in fields:
        if span.add(field_vector(F), len(basis)):
            basis.append(F)
    return basis, span


def joint_kernel(derivations: Sequence[VectorField], space: Sequence[VectorField]) -> list[VectorField]:
    """Basis of ``{v in span(space) : [D, v] = 0 for every D}``."""
    basis, span = _independent(space)
    n = len(basis)
    if not n:
        return []
    rows: list[list] = []
    for D in derivations:
        cols = []
        for v in basis:
            coords = span.coordinates(field_vector(bracket(D, v)))
            if coords is None:
                raise StabilityError(f"[{D}, {v}] leaves the given field space")
            cols.append(coords)
        for r in range(n):
            rows.append([cols[c].get(r, Fraction(0)) for c in range(n)])
    ker = linalg.nullspace(rows, n)
    out = []
    for vec in ker:
        F = VectorField.zero(basis[0].dim)
        for c, v in zip(basis, vec):
            if v:
                F = F + c.scale(v)
        out.append(F)
    return out


def monomial_field_space(dim: int, max_degree: int) -> list[VectorField]:
    """All ``x^a d_j`` with ``|a| <= max_degree``."""
    out = []
    for total in range(max_degree + 1):
        for a in itertools.product(range(total + 1), repeat=dim):
            if sum(a) != total:
                continue
            for j in range(dim):
                coeff = ExpPoly.monomial(dim, 1, pow=a)
                out.append(VectorField.coordinate(dim, j, coeff))
    return out


def _same_span(A: Sequence[VectorField], B: Sequence[VectorField]) -> bool:
    a, sa = _independent(A)
    b, sb = _independent(B)
    return len(a) == len(b) and all(sa.contains(field_vector(F)) for F in b)


def strongly_orthogonal(rs, roots: Sequence[tuple]) -> bool:
    """Pairwise orthogonal with no sums or differences among the roots."""
    for r, s in itertools.combinations(roots, 2):
        if rs.inner(r, s) != 0:
            return False
        plus = tuple(a + b for a, b in zip(r, s))
        minus = tuple(a - b for a, b in zip(r, s))
        if rs.is_root(plus) or rs.is_root(minus):
            return False
    return True


def highest_weight_obstruction(target: str, N: int) -> dict:
    """No highest-weight vector can sit outside the canonical ``A1^N`` on C^N."""
    typ, rank = parse_label(target)
    key = label(typ, rank)
    if (key, N) not in (("B2", 2), ("G2", 2), ("D4", 4)):
        raise ValueError(f"highest-weight obstruction is defined for B2/G2 on C^2 and D4 on C^4, not {key} on C^{N}")
    rs = build(typ, rank)
    subset = orthogonal_a1_subset(rs, N)
    if subset is None:
        raise CertificationError(f"{key} has no {N} orthogonal roots")
    transcript = [f"{key}: orthogonal roots " + ", ".join(format_root(r) for r in subset)]
    orth_ok = strongly_orthogonal(rs, subset)
    transcript.append(f"strongly orthogonal (span A1^{N}): {orth_ok}")

    S = realize.a1_power(N)
    coords = range(N)
    borel = [S.generators[f"X{i}"] for i in range(1, N + 1)]
    # chart: x -> -x, then w = exp(x); the derived Borel becomes -d_{w_i}
    charted = {k: polynomial_chart(reflect(v, coords), coords) for k, v in S.generators.items()}
    D = [charted[f"X{i}"] for i in range(1, N + 1)]
    straight = all(F == VectorField.coordinate(N, i, ExpPoly.constant(N, -1)) for i, F in enumerate(D))
    commuting = all(not bracket(a, b) for a, b in itertools.combinations(borel, 2))
    transcript.append(f"derived Borel <X_i> commutes: {commuting}; straightened to -d_w: {straight}")
    degree = max(sum(m.pow) for F in charted.values() for m in F.monomials())
    space = monomial_field_space(N, degree)
    kernel = joint_kernel(D, space)
    constants = [VectorField.coordinate(N, i) for i in range(N)]
    kernel_ok = _same_span(kernel, constants)
    transcript.append(f"joint kernel on {len(space)} fields of degree <= {degree}: dim {len(kernel)}, "
                      f"equals constant fields: {kernel_ok}")
    S_chart = span_closure(list(charted.values()))
    inside = all(S_chart.contains(F) for F in kernel)
    transcript.append(f"kernel inside A1^{N} (dim {S_chart.dim}): {inside}")
    return {
        "target": key,
        "N": N,
        "orthogonal_roots": [list(map(int, r)) for r in subset],
        "chart_generators": {k: str(v) for k, v in charted.items()},
        "kernel": [str(F) for F in kernel],
        "transcript": transcript,
        "verified": orth_ok and commuting and straight and kernel_ok and inside,
    }


# -- classification ---------------------------------------------------------------------------


@dataclass
class Certificate:
    verdict: str
    factors: list[str]
    N: int
    evidence: dict = field(default_factory=dict)
    transcript: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "factors": self.factors, "dim": self.N,
                "evidence": self.evidence, "transcript": self.transcript}


FRAGMENT_TARGET = {"B2": ("B2", 2), "G2": ("G2", 2), "D4": ("D4", 4)}


def _factor_rank(lab: str) -> int:
    return parse_label(lab)[1]


def classify(factors: Sequence[str], N: int, seed: int = 0) -> Certificate:
    labels = [label(*check_type(*parse_label(f))) for f in factors]
    labels = sort_labels(labels)
    if N < 1:
        raise ValueError("N must be at least 1")
    if not labels:
        raise ValueError("need at least one simple factor")
    total = sum(_factor_rank(f) for f in labels)
    cert = Certificate(OUT_OF_SCOPE, labels, N)
    cert.transcript.append(f"Cartan dimension {total} on C^{N}")
    if total < N:
        cert.evidence = {"reason": "not of maximal rank: Cartan dimension below N", "cartan_dim": total}
        cert.transcript.append("outside the maximal-rank hypothesis; no verdict")
        return cert
    if total > N:
        cert.verdict = NOT_REALIZABLE
        cert.evidence = {"reason": "rank bound: Cartan dimension exceeds N", "cartan_dim": total}
        cert.transcript.append("a Cartan subalgebra of fields on C^N has dimension at most N")
        return cert
    non_a = [f for f in labels if parse_label(f)[0] != "A"]
    if not non_a:
        r = realize.product([_factor_rank(f) for f in labels])
        rep = realize.audit(r, seed=seed)
        cert.verdict = REALIZABLE if rep.passed else NOT_REALIZABLE
        cert.evidence = {"realization": realization_json(r), "audit": rep.to_json()}
        cert.transcript.append(f"product realization audit: {'PASS' if rep.passed else 'FAIL'}")
        if not rep.passed:
            raise CertificationError("A-type product realization failed its audit")
        return cert
    lab = non_a[0]
    typ, rank = parse_label(lab)
    w = obstruction_witness(typ, rank)
    if not w.verify():
        raise CertificationError(f"obstruction witness for {lab} does not verify")
    sub = w.kind
    target, k = FRAGMENT_TARGET[sub]
    cert.transcript.append(f"factor {lab} contains {sub} ({w.reason})")
    cert.transcript.append(f"projection to the witness coordinates gives fields on C^{k}")
    frag = highest_weight_obstruction(target, k)
    cert.transcript.extend(frag["transcript"])
    if not frag["verified"]:
        raise CertificationError(f"highest-weight obstruction for {target} did not verify")
    cert.verdict = NOT_REALIZABLE
    cert.evidence = {"factor": lab, "witness": w.to_json(), "obstruction": frag}
    return cert


def verify_certificate(cert: Certificate, seed: int = 0) -> bool:
    """Re-run the checks behind a certificate from its factor list."""
    total = sum(_factor_rank(f) for f in cert.factors)
    if cert.verdict == OUT_OF_SCOPE:
        return total < cert.N
    if cert.verdict == REALIZABLE:
        r = realize.product([_factor_rank(f) for f in cert.factors])
        return total == cert.N and realize.audit(r, seed=seed).passed
    if total > cert.N:
        return True
    lab = cert.evidence.get("factor")
    if lab is None:
        return False
    w = obstruction_witness(*parse_label(lab))
    if not w.verify() or w.to_json() != cert.evidence["witness"]:
        return False
    target, k = FRAGMENT_TARGET[w.kind]
    return highest_weight_obstruction(target, k)["verified"]


def realization_json(r: realize.Realization) -> dict:
    from .serialize import field_to_json
    return {
        "dim": r.ambient_dim,
        "declared_type": r.declared_type,
        "chart": r.chart,
        "generators": {k: {"text": str(v), "field": field_to_json(v)} for k, v in r.generators.items()},
        "cartan": [str(h) for h in r.cartan],
    }
