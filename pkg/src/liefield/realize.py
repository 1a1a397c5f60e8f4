"""Concrete realizations of A-type algebras and their products as vector fields.

Every realization carries Chevalley-style triples ``(X_i, Y_i, H_i)`` per
simple root, normalized as ``[H, X] = X``, ``[H, Y] = -Y``, ``[X, Y] = H``,
plus a designated commuting family (the Cartan fields).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import liestruct
from .coeffring import ExpPoly
from .roots import sort_labels
from .vfield import VectorField, bracket, embed, substitute_exp


@dataclass
class Realization:
    ambient_dim: int
    generators: dict[str, VectorField]
    declared_type: list[str]
    cartan: list[VectorField]
    simple_rank: int = 0
    chart: str = "x"

    def triple(self, i: int) -> tuple[VectorField, VectorField, VectorField]:
        g = self.generators
        return g[f"X{i}"], g[f"Y{i}"], g[f"H{i}"]

    def generator_list(self) -> list[VectorField]:
        """Cartan fields first, then the triples: the closure basis starts with the Cartan."""
        out = list(self.cartan)
        for i in range(1, self.simple_rank + 1):
            out.extend(self.triple(i))
        return out

    def closure(self, max_dim: int = liestruct.DEFAULT_MAX_DIM) -> liestruct.Subalgebra:
        return liestruct.span_closure(self.generator_list(), max_dim=max_dim)

    def map_fields(self, fn, chart: str | None = None) -> "Realization":
        return Realization(
            self.ambient_dim,
            {k: fn(v) for k, v in self.generators.items()},
            list(self.declared_type),
            [fn(h) for h in self.cartan],
            self.simple_rank,
            chart or self.chart,
        )


def _var(n: int, i: int) -> ExpPoly:
    return ExpPoly.var(n, i)


def _coord(n: int, j: int, coeff: ExpPoly | None = None) -> VectorField:
    return VectorField.coordinate(n, j, coeff)


def normalized_triple(X: VectorField, Y: VectorField) -> tuple[VectorField, VectorField, VectorField]:
    """Rescale ``Y`` so that ``H = [X, Y]`` satisfies ``[H, X] = X``."""
    h = bracket(X, Y)
    hx = bracket(h, X)
    # hx = c * X for a nonzero rational c when (X, Y) span an sl2 with h
    key, v = next(iter(X.items()))
    c = dict(hx.items()).get(key, Fraction(0)) / v
    if not c or hx != X.scale(c):
        raise ValueError("X is not an eigenvector of [X, Y] with nonzero eigenvalue")
    s = 1 / c
    return X, Y.scale(s), h.scale(s)


def a1_power(N: int) -> Realization:
    """``X_i = exp(x_i) d_i``, ``Y_i = -1/2 exp(-x_i) d_i``, ``H_i = d_i``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    gens = {}
    cartan = []
    for i in range(N):
        X = _coord(N, i, ExpPoly.exp(N, [int(k == i) for k in range(N)]))
        Y = _coord(N, i, ExpPoly.exp(N, [-int(k == i) for k in range(N)]).scale(Fraction(-1, 2)))
        H = _coord(N, i)
        gens[f"X{i + 1}"], gens[f"Y{i + 1}"], gens[f"H{i + 1}"] = X, Y, H
        cartan.append(H)
    return Realization(N, gens, ["A1"] * N, cartan, N, "x")


def a_type(k: int) -> Realization:
    """Infinitesimal projective action of ``sl(k+1)`` on C^k.

    Simple roots relative to the Cartan ``x_i d_i``: ``e_i - e_{i+1}``
    (root vector ``x_i d_{i+1}``) and ``e_k`` (root vector ``x_k * E`` with
    ``E`` the Euler field).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = k
    euler = VectorField.euler(n)
    gens = {}
    for i in range(k - 1):
        X = _coord(n, i + 1, _var(n, i))          # x_i d_{i+1}
        Y = _coord(n, i, _var(n, i + 1))          # x_{i+1} d_i
        X, Y, H = normalized_triple(X, Y)
        gens[f"X{i + 1}"], gens[f"Y{i + 1}"], gens[f"H{i + 1}"] = X, Y, H
    X = euler.scale(_var(n, k - 1))
    Y = _coord(n, k - 1)
    X, Y, H = normalized_triple(X, Y)
    gens[f"X{k}"], gens[f"Y{k}"], gens[f"H{k}"] = X, Y, H
    cartan = [_coord(n, i, _var(n, i)) for i in range(n)]
    return Realization(n, gens, [f"A{k}"], cartan, k, "x")


def product(ranks: Sequence[int]) -> Realization:
    """Block-disjoint ``a_type`` realizations on consecutive coordinate blocks."""
    ranks = [int(r) for r in ranks]
    if not ranks or any(r < 1 for r in ranks):
        raise ValueError("ranks must be a nonempty list of positive integers")
    N = sum(ranks)
    gens = {}
    cartan = []
    offset = 0
    idx = 0
    for r in ranks:
        block = a_type(r)
        for i in range(1, r + 1):
            X, Y, H = block.triple(i)
            idx += 1
            gens[f"X{idx}"] = embed(X, N, offset)
            gens[f"Y{idx}"] = embed(Y, N, offset)
            gens[f"H{idx}"] = embed(H, N, offset)
        cartan.extend(embed(h, N, offset) for h in block.cartan)
        offset += r
    return Realization(N, gens, sort_labels([f"A{r}" for r in ranks]), cartan, N, "x")


def straighten(r: Realization) -> Realization:
    """Torus chart ``x_i = exp(u_i)`` on every coordinate.

    Realizations whose Cartan already consists of constant fields are
    returned unchanged.
    """
    if all(h.is_constant() for h in r.cartan):
        return r
    subset = range(r.ambient_dim)
    return r.map_fields(lambda X: substitute_exp(X, subset), chart="u")


def is_e1_shape(X: VectorField) -> bool:
    """``exp(<k,u>) * (constant field)``: one exponent, no polynomial factors."""
    monos = X.monomials()
    return len(monos) == 1 and all(not any(m.pow) for m in monos)


# -- audit ---------------------------------------------------------------------------


@dataclass
class AuditReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    closure_dim: int | None = None
    killing_det: Fraction | None = None
    identified_type: list[str] | None = None
    rank: int | None = None
    roots: int | None = None

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, bool(ok), detail))

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "closure_dim": self.closure_dim,
            "killing_det": None if self.killing_det is None else str(self.killing_det),
            "identified_type": self.identified_type,
            "generic_rank": self.rank,
            "root_count": self.roots,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
        }


def expected_dimension(types: Sequence[str]) -> int:
    from .roots import build, parse_label
    total = 0
    for lab in types:
        rs = build(*parse_label(lab))
        total += rs.rank + 2 * len(rs.positive_roots)
    return total


def audit(r: Realization, seed: int = 0, max_dim: int = liestruct.DEFAULT_MAX_DIM) -> AuditReport:
    rep = AuditReport()
    for i in range(1, r.simple_rank + 1):
        X, Y, H = r.triple(i)
        rep.add(f"[H{i},X{i}]=X{i}", bracket(H, X) == X)
        rep.add(f"[H{i},Y{i}]=-Y{i}", bracket(H, Y) == -Y)
        rep.add(f"[X{i},Y{i}]=H{i}", bracket(X, Y) == H)
        # alternate audit in the standard normalization: (2H, X, 2Y)
        H2, Y2 = H.scale(2), Y.scale(2)
        rep.add(f"standard triple {i}",
                bracket(H2, X) == X.scale(2) and bracket(H2, Y2) == Y2.scale(-2) and bracket(X, Y2) == H2)
    for a in range(len(r.cartan)):
        for b in range(a + 1, len(r.cartan)):
            rep.add(f"cartan {a + 1},{b + 1} commute", not bracket(r.cartan[a], r.cartan[b]))
    try:
        A = r.closure(max_dim)
    except liestruct.ClosureError as exc:
        rep.add("closure finite", False, str(exc))
        return rep
    rep.closure_dim = A.dim
    rep.add("closure dimension", A.dim == expected_dimension(r.declared_type),
            f"{A.dim} vs {expected_dimension(r.declared_type)}")
    rep.killing_det = liestruct.killing_determinant(A)
    rep.add("semisimple", rep.killing_det != 0)
    try:
        cd = liestruct.root_decomposition(A, list(range(len(r.cartan))))
        rep.roots = len(cd.roots)
        rep.identified_type = liestruct.identify_type(cd)
        rep.add("type", rep.identified_type == sort_labels(r.declared_type),
                f"{rep.identified_type} vs {sort_labels(r.declared_type)}")
    except (liestruct.DecompositionError, liestruct.TypeIdentificationError) as exc:
        rep.add("type", False, str(exc))
    rep.rank = liestruct.generic_rank(A, seed=seed)
    rep.add("generic rank", rep.rank == r.ambient_dim, f"{rep.rank} vs {r.ambient_dim}")
    return rep
