"""Finite-dimensional Lie algebras spanned by vector fields.

Fields are treated as sparse vectors indexed by ``(slot, ExpMonomial)``.
Distinct exponential monomials are linearly independent functions, so linear
independence of fields is decided exactly on those coordinates.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .coeffring import GaussianRational
from .roots import RootSystemError, build, classify_cartan_matrix, parse_label, sort_labels
from .vfield import VectorField, bracket

DEFAULT_MAX_DIM = 120
RANK_SAMPLES = 8
RANK_RTOL = 1e-8


class ClosureError(RuntimeError):
    """Bracket closure exceeded the dimension cap."""


class DecompositionError(ArithmeticError):
    """The proposed Cartan family does not diagonalise the algebra."""


class TypeIdentificationError(ValueError):
    """The root data matches no semisimple type."""


def _as_scalar(c):
    # keep real coefficients as plain Fractions: much cheaper in the dense helpers
    if isinstance(c, GaussianRational) and not c.im:
        return c.re
    return c


def field_vector(X: VectorField) -> dict:
    return {k: _as_scalar(v) for k, v in X.items()}


@dataclass
class Subalgebra:
    """Bracket-closed span of vector fields with exact structure constants.

    ``structure[(a, b)]`` maps ``c`` to ``c_{ab}^c`` for ``a != b`` where
    ``[e_a, e_b] = sum_c c_{ab}^c e_c``; missing entries are zero.
    """

    ambient_dim: int
    basis: list[VectorField]
    structure: dict[tuple[int, int], dict[int, object]]
    _span: linalg.EchelonSpan = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def coordinates(self, X: VectorField) -> list | None:
        """Coordinates of ``X`` on the basis, or None if ``X`` is outside the span."""
        coords = self._span.coordinates(field_vector(X))
        if coords is None:
            return None
        return [coords.get(a, Fraction(0)) for a in range(self.dim)]

    def contains(self, X: VectorField) -> bool:
        return self._span.contains(field_vector(X))

    def index_of(self, X: VectorField) -> int:
        return self.basis.index(X)

    def element(self, coords: Sequence) -> VectorField:
        out = VectorField.zero(self.ambient_dim)
        for a, c in enumerate(coords):
            if c:
                out = out + self.basis[a].scale(c)
        return out

    def structure_constant(self, a: int, b: int, c: int):
        return self.structure.get((a, b), {}).get(c, Fraction(0))

    def structure_array(self) -> list[list[list]]:
        n = self.dim
        return [[[self.structure_constant(a, b, c) for c in range(n)] for b in range(n)]
                for a in range(n)]

    def ad(self, a: int) -> list[list]:
        """Matrix of ``ad(e_a)`` acting on coordinate columns."""
        n = self.dim
        M = [[Fraction(0)] * n for _ in range(n)]
        for b in range(n):
            for c, v in self.structure.get((a, b), {}).items():
                M[c][b] = v
        return M

    def ad_of(self, coords: Sequence) -> list[list]:
        n = self.dim
        M = [[Fraction(0)] * n for _ in range(n)]
        for a, s in enumerate(coords):
            if not s:
                continue
            for b in range(n):
                for c, v in self.structure.get((a, b), {}).items():
                    M[c][b] = M[c][b] + s * v
        return M

    def bracket_coords(self, x: Sequence, y: Sequence) -> list:
        n = self.dim
        out = [Fraction(0)] * n
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb or a == b:
                    continue
                for c, v in self.structure.get((a, b), {}).items():
                    out[c] = out[c] + xa * yb * v
        return out

    def is_abelian(self) -> bool:
        return not any(self.structure.values())


def span_closure(generators: Sequence[VectorField], max_dim: int = DEFAULT_MAX_DIM) -> Subalgebra:
    """Smallest bracket-closed span containing ``generators``.

    Basis order: independent generators in the given order, then new
    brackets in the order ``(a, b)`` with ``b`` increasing and ``a < b``.
    """
    if max_dim < 1:
        raise ValueError("max_dim must be at least 1")
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    dim = generators[0].dim
    span = linalg.EchelonSpan()
    basis: list[VectorField] = []

    def push(X):
        if X.dim != dim:
            raise ValueError("generators live in different ambient dimensions")
        if span.add(field_vector(X), len(basis)):
            basis.append(X)
            if len(basis) > max_dim:
                raise ClosureError(f"closure dimension exceeds max_dim={max_dim}")

    for g in generators:
        push(g)
    brackets: dict[tuple[int, int], VectorField] = {}
    b = 0
    while b < len(basis):
        for a in range(b):
            br = bracket(basis[a], basis[b])
            brackets[(a, b)] = br
            if br:
                push(br)
        b += 1
    structure: dict[tuple[int, int], dict[int, object]] = {}
    for (a, b), br in brackets.items():
        if not br:
            continue
        coords = span.coordinates(field_vector(br))
        assert coords is not None
        coords = {c: v for c, v in coords.items() if v}
        if coords:
            structure[(a, b)] = coords
            structure[(b, a)] = {c: -v for c, v in coords.items()}
    return Subalgebra(dim, basis, structure, span)


# -- Killing form -------------------------------------------------------------------


def killing_form(A: Subalgebra) -> list[list]:
    """``kappa(e_a, e_b) = trace(ad e_a ad e_b)`` from the structure constants."""
    n = A.dim
    # nz[a] = list of (row c, col d, value) of ad(e_a)
    nz = []
    for a in range(n):
        entries = {}
        for d in range(n):
            for c, v in A.structure.get((a, d), {}).items():
                entries[(c, d)] = v
        nz.append(entries)
    K = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            s = Fraction(0)
            eb = nz[b]
            for (c, d), v in nz[a].items():
                w = eb.get((d, c))
                if w:
                    s = s + v * w
            K[a][b] = s
            K[b][a] = s
    return K


def killing_determinant(A: Subalgebra):
    return linalg.det(killing_form(A))


def is_semisimple(A: Subalgebra) -> bool:
    """Cartan's criterion: the Killing form is nondegenerate."""
    return bool(killing_determinant(A))


# -- generic rank ---------------------------------------------------------------------


def sample_points(dim: int, seed: int = 0, samples: int = RANK_SAMPLES) -> list[list[Fraction]]:
    """The origin plus ``samples`` rational points with coordinates in [-3, 3]."""
    rng = random.Random(seed)
    pts = [[Fraction(0)] * dim]
    for _ in range(samples):
        pts.append([Fraction(rng.randint(-12, 12), 4) for _ in range(dim)])
    return pts


def generic_rank(A: Subalgebra | Sequence[VectorField], seed: int = 0,
                 samples: int = RANK_SAMPLES) -> int:
    """Largest pointwise dimension of the span of the basis over the sample points."""
    basis = A.basis if isinstance(A, Subalgebra) else list(A)
    if not basis:
        return 0
    dim = basis[0].dim
    best = 0
    for pt in sample_points(dim, seed, samples):
        fpt = [float(v) for v in pt]
        try:
            M = np.array([X.eval_numeric(fpt) for X in basis], dtype=complex)
        except ArithmeticError:
            continue
        s = np.linalg.svd(M, compute_uv=False)
        if s.size == 0 or s[0] == 0:
            continue
        best = max(best, int(np.sum(s > RANK_RTOL * s[0])))
    return best


# -- root decomposition -----------------------------------------------------------------


@dataclass
class CartanData:
    """Simultaneous eigenspace decomposition under a commuting family.

    ``roots`` are eigenvalue vectors (one entry per Cartan element), sorted;
    ``root_spaces[root]`` holds coordinate vectors (on the subalgebra basis)
    of a basis of the root space.
    """

    algebra: Subalgebra
    cartan_basis: list[int]
    roots: list[tuple[Fraction, ...]]
    root_spaces: dict[tuple[Fraction, ...], list[list]]
    zero_space: list[list]

    def root_vectors(self, root) -> list[VectorField]:
        return [self.algebra.element(v) for v in self.root_spaces[tuple(root)]]

    def multiplicities(self) -> dict:
        return {r: len(v) for r, v in self.root_spaces.items()}


def _rref_basis(vectors: list[list]) -> tuple[list[list], list[int]]:
    R, piv = linalg.rref(vectors)
    return R[:len(piv)], piv


def root_decomposition(A: Subalgebra, cartan: Sequence[int]) -> CartanData:
    """Split ``A`` into simultaneous ``ad``-eigenspaces of the basis elements ``cartan``."""
    cartan = list(cartan)
    if not cartan:
        raise DecompositionError("empty Cartan family")
    for a, b in itertools.combinations(cartan, 2):
        if A.structure.get((a, b)):
            raise DecompositionError(f"Cartan elements {a} and {b} do not commute")
    n = A.dim
    # eigenspaces as sparse rows {basis index: coefficient} in reduced echelon form
    spaces: list[tuple[tuple, list[dict], list[int]]] = [
        ((), [{i: Fraction(1)} for i in range(n)], list(range(n)))]
    for h in cartan:
        adcols = [A.structure.get((h, b), {}) for b in range(n)]
        refined = []
        for ev, W, piv in spaces:
            k = len(W)
            images = []
            for w in W:
                img: dict = {}
                for b, wb in w.items():
                    linalg._axpy(img, wb, adcols[b])
                images.append(img)
            # restricted matrix M[i][l]: coefficient of W_i in ad(h) W_l
            M = [[images[l].get(piv[i], Fraction(0)) for l in range(k)] for i in range(k)]
            for l in range(k):
                recon: dict = {}
                for i in range(k):
                    if M[i][l]:
                        linalg._axpy(recon, M[i][l], W[i])
                if recon != images[l]:
                    raise DecompositionError("eigenspace is not invariant; the family does not commute")
            try:
                eigen = linalg.rational_roots(linalg.charpoly(M))
            except linalg.NonRationalEigenvalueError as exc:
                raise DecompositionError(f"ad of basis element {h}: {exc}") from exc
            found = 0
            for lam in sorted(eigen):
                shifted = [[M[i][j] - (lam if i == j else 0) for j in range(k)] for i in range(k)]
                ker = linalg.nullspace(shifted, k)
                if not ker:
                    continue
                vecs = []
                for v in ker:
                    acc: dict = {}
                    for i in range(k):
                        if v[i]:
                            linalg._axpy(acc, v[i], W[i])
                    vecs.append([acc.get(c, Fraction(0)) for c in range(n)])
                R, p = _rref_basis(vecs)
                rows = [{c: x for c, x in enumerate(r) if x} for r in R]
                refined.append((ev + (lam,), rows, p))
                found += len(ker)
            if found != k:
                raise DecompositionError(
                    f"ad of basis element {h} is not diagonalizable on a {k}-dimensional eigenspace")
        spaces = refined

    def dense(rows):
        return [[r.get(c, Fraction(0)) for c in range(n)] for r in rows]

    spaces = [(ev, dense(W), piv) for ev, W, piv in spaces]
    zero = tuple(Fraction(0) for _ in cartan)
    root_spaces = {ev: W for ev, W, _ in spaces if ev != zero}
    zero_space = next((W for ev, W, _ in spaces if ev == zero), [])
    if len(zero_space) != len(cartan):
        raise DecompositionError(
            f"zero-weight space has dimension {len(zero_space)} but the Cartan family has "
            f"{len(cartan)} elements; not self-centralizing")
    cd = CartanData(A, cartan, sorted(root_spaces), root_spaces, zero_space)
    _check_eigenvectors(cd)
    return cd


def _check_eigenvectors(cd: CartanData) -> None:
    A = cd.algebra
    n = A.dim
    for root, vecs in cd.root_spaces.items():
        for v in vecs:
            for lam, h in zip(root, cd.cartan_basis):
                e = [Fraction(int(i == h)) for i in range(n)]
                if A.bracket_coords(e, v) != [lam * x for x in v]:
                    raise DecompositionError(f"claimed eigenvector for root {root} fails exact check")


# -- type identification ------------------------------------------------------------------


def _lex_positive(v) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def simple_roots(roots: Sequence[tuple]) -> list[tuple]:
    """Lex-positive roots that are not a sum of two lex-positive roots."""
    pos = sorted(r for r in roots if _lex_positive(r))
    posset = set(pos)
    out = []
    for r in pos:
        decomposable = any(tuple(x - y for x, y in zip(r, s)) in posset for s in pos if s != r)
        if not decomposable:
            out.append(r)
    return out


def cartan_matrix_from_roots(roots: Sequence[tuple], simple: Sequence[tuple]) -> list[list[int]]:
    """``a_ij = -(length of the a_i-string above a_j)`` from the root list alone."""
    rootset = set(tuple(r) for r in roots)
    n = len(simple)
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            q = 0
            cur = simple[j]
            while True:
                cur = tuple(x + y for x, y in zip(cur, simple[i]))
                if cur in rootset:
                    q += 1
                else:
                    break
            A[i][j] = -q
    return A


def identify_type(cd: CartanData) -> list[str]:
    """Names of the simple factors, e.g. ``["A2", "A1"]``, canonically sorted."""
    mult = cd.multiplicities()
    if any(m != 1 for m in mult.values()):
        raise TypeIdentificationError("root spaces are not one-dimensional")
    roots = list(cd.roots)
    if set(tuple(-x for x in r) for r in roots) != set(roots):
        raise TypeIdentificationError("root set is not symmetric under negation")
    simple = simple_roots(roots)
    if linalg.rank([list(r) for r in simple]) != len(simple):
        raise TypeIdentificationError("candidate simple roots are linearly dependent")
    A = cartan_matrix_from_roots(roots, simple)
    try:
        comps = classify_cartan_matrix(A)
    except RootSystemError as exc:
        raise TypeIdentificationError(str(exc)) from exc
    expected = sum(2 * len(build(*parse_label(lab)).positive_roots) for lab, _ in comps)
    if expected != len(roots):
        raise TypeIdentificationError(
            f"{len(roots)} roots found but {[lab for lab, _ in comps]} has {expected}")
    return sort_labels([lab for lab, _ in comps])
