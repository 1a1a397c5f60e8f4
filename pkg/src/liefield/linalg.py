"""Exact linear algebra over Q and Q(i).

Two flavours live here: :class:`EchelonSpan` works on sparse vectors (dicts
keyed by any orderable label) and is what the closure algorithm uses to
decide membership in a span; the dense helpers work on small square matrices
given as lists of lists and back the Killing form and root decomposition.
Entries may be ``Fraction`` or ``GaussianRational``; both divide exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Hashable, Sequence

from .coeffring import GaussianRational


class NonRationalEigenvalueError(ArithmeticError):
    """A characteristic polynomial has a root outside Q."""


# -- sparse echelon span ------------------------------------------------------


def _axpy(target: dict, scale, source: dict) -> None:
    """``target += scale * source`` in place, dropping zeros."""
    for k, v in source.items():
        w = scale * v
        if k in target:
            w = target[k] + w
            if w:
                target[k] = w
            else:
                del target[k]
        elif w:
            target[k] = w


class EchelonSpan:
    """Incrementally maintained echelon basis of sparse vectors.

    Each accepted vector gets a label; every stored row remembers how it is
    written in terms of the labelled originals, so membership tests also
    return coordinates.
    """

    def __init__(self):
        self._rows: list[tuple[Hashable, dict, dict]] = []
        self.labels: list = []

    def __len__(self):
        return len(self._rows)

    def _reduce(self, vec: dict) -> tuple[dict, dict]:
        residual = dict(vec)
        used: dict = {}
        for pivot, row, combo in self._rows:
            c = residual.get(pivot)
            if c:
                _axpy(residual, -c, row)
                _axpy(used, c, combo)
        return residual, used

    def add(self, vec: dict, label) -> bool:
        """Insert ``vec`` under ``label``; False (and no change) if already in the span."""
        residual, used = self._reduce(vec)
        if not residual:
            return False
        pivot = min(residual)
        inv = _inv(residual[pivot])
        row = {k: v * inv for k, v in residual.items()}
        combo = {label: inv}
        _axpy(combo, -inv, used)
        self._rows.append((pivot, row, combo))
        self.labels.append(label)
        return True

    def contains(self, vec: dict) -> bool:
        residual, _ = self._reduce(vec)
        return not residual

    def coordinates(self, vec: dict) -> dict | None:
        """Coefficients of ``vec`` on the labelled originals, or None if outside the span."""
        residual, used = self._reduce(vec)
        if residual:
            return None
        return used


# -- dense helpers --------------------------------------------------------------


def _inv(x):
    if isinstance(x, GaussianRational):
        return 1 / x
    return Fraction(1) / x


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        Ai = A[i]
        row = [0] * p
        for k in range(m):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(p):
                    b = Bk[j]
                    if b:
                        row[j] = row[j] + a * b
        out.append(row)
    return out


def rref(M: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = _inv(A[r][c])
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                Ai, Ar = A[i], A[r]
                A[i] = [a - f * b for a, b in zip(Ai, Ar)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of ``{v : M v = 0}``; one vector per free column, with a 1 there."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    n = len(R[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def det(M: Sequence[Sequence]):
    """Exact determinant by fraction-aware Gaussian elimination."""
    A = [list(r) for r in M]
    n = len(A)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        pivot = A[c][c]
        result = result * pivot
        inv = _inv(pivot)
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return result


def charpoly(M: Sequence[Sequence]) -> list:
    """Coefficients (constant term first) of ``det(t I - M)``.

    Reduces to upper Hessenberg form by similarity, then runs the standard
    three-term recurrence; O(n^3) field operations.
    """
    H = [list(r) for r in M]
    n = len(H)
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if H[r][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = _inv(H[m][m - 1])
        for r in range(m + 1, n):
            u = H[r][m - 1] * inv
            if not u:
                continue
            H[r] = [a - u * b for a, b in zip(H[r], H[m])]
            for row in H:
                if row[r]:
                    row[m] = row[m] + u * row[r]
    # p[k] = charpoly of leading k x k block
    polys: list[list] = [[Fraction(1)]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        h = H[m - 1][m - 1]
        nxt = [Fraction(0)] + list(prev)
        for k, c in enumerate(prev):
            nxt[k] = nxt[k] - h * c
        prod = Fraction(1)
        for i in range(m - 1, 0, -1):
            prod = prod * H[i][i - 1]
            if not prod:
                break
            coef = H[i - 1][m - 1] * prod
            if coef:
                for k, c in enumerate(polys[i - 1]):
                    nxt[k] = nxt[k] - coef * c
        polys.append(nxt)
    return polys[n]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _synthetic_divide(coeffs: list[Fraction], r: Fraction) -> tuple[list[Fraction], Fraction]:
    # coeffs constant-first; returns quotient (constant-first) and remainder
    hi = coeffs[::-1]
    out = [hi[0]]
    for c in hi[1:]:
        out.append(c + r * out[-1])
    rem = out.pop()
    return out[::-1], rem


def rational_roots(coeffs: Sequence) -> dict[Fraction, int]:
    """All roots of a polynomial that splits over Q, with multiplicities.

    Raises :class:`NonRationalEigenvalueError` when a coefficient is not
    real or when some root is irrational (the polynomial does not split).
    """
    q = []
    for c in coeffs:
        if isinstance(c, GaussianRational):
            if c.im:
                raise NonRationalEigenvalueError("characteristic polynomial has non-real coefficients")
            c = c.re
        q.append(Fraction(c))
    while q and not q[-1]:
        q.pop()
    roots: dict[Fraction, int] = {}
    zeros = 0
    while len(q) > 1 and not q[0]:
        q.pop(0)
        zeros += 1
    if zeros:
        roots[Fraction(0)] = zeros
    if len(q) <= 1:
        return roots
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in q]
    candidates = set()
    for p in _divisors(ints[0]):
        for s in _divisors(ints[-1]):
            candidates.add(Fraction(p, s))
            candidates.add(Fraction(-p, s))
    for r in sorted(candidates):
        while len(q) > 1:
            quot, rem = _synthetic_divide(q, r)
            if rem:
                break
            q = quot
            roots[r] = roots.get(r, 0) + 1
    if len(q) > 1:
        raise NonRationalEigenvalueError(
            f"{len(q) - 1} eigenvalue(s) are not rational")
    return roots
