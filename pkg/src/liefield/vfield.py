"""Vector fields with exponential-polynomial coefficients.

A field ``sum_j f_j * d/dx_j`` is stored as the tuple ``(f_1, ..., f_N)``.
The bracket is the coefficient-wise Leibniz formula

    [X, Y]_j = sum_i X_i * d_i(Y_j) - Y_i * d_i(X_j)

and everything else (projection, eigen-splitting, the torus chart) is exact
bookkeeping on monomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .coeffring import DimensionError, ExpMonomial, ExpPoly, GaussianRational


class ProjectionError(ValueError):
    """A coefficient depends on a variable the projection would drop."""

    def __init__(self, slot: int, variable: int):
        self.slot = slot
        self.variable = variable
        super().__init__(
            f"coefficient of d{slot + 1} depends on x{variable + 1}; cannot project it away")


class EigenDecompositionError(ValueError):
    """Polynomial dependence on the eigen-coordinate (a generalized eigenvector)."""


class SubstitutionError(ValueError):
    """The torus substitution would leave the exponential-polynomial class."""


class VectorField:
    __slots__ = ("dim", "coeffs", "_hash")

    def __init__(self, coeffs: Sequence[ExpPoly]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a vector field needs at least one coefficient slot")
        dim = len(coeffs)
        for c in coeffs:
            if not isinstance(c, ExpPoly):
                raise TypeError(f"coefficients must be ExpPoly, got {type(c).__name__}")
            if c.dim != dim:
                raise DimensionError(f"coefficient of dimension {c.dim} in a field on C^{dim}")
        self.dim = dim
        self.coeffs = coeffs
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "VectorField":
        return cls([ExpPoly.zero(dim)] * dim)

    @classmethod
    def coordinate(cls, dim: int, j: int, coeff: ExpPoly | None = None) -> "VectorField":
        """``coeff * d/dx_{j+1}``; the bare coordinate field when ``coeff`` is None."""
        if not 0 <= j < dim:
            raise IndexError(f"direction index {j + 1} out of range for dimension {dim}")
        c = ExpPoly.constant(dim, 1) if coeff is None else coeff
        return cls([c if k == j else ExpPoly.zero(dim) for k in range(dim)])

    @classmethod
    def constant(cls, values: Sequence) -> "VectorField":
        dim = len(values)
        return cls([ExpPoly.constant(dim, v) for v in values])

    @classmethod
    def euler(cls, dim: int) -> "VectorField":
        """The radial field ``sum_j x_j d_j``."""
        return cls([ExpPoly.var(dim, j) for j in range(dim)])

    # -- inspection -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not self

    def items(self):
        """``((slot, monomial), coefficient)`` pairs: the sparse coordinate vector."""
        for slot, c in enumerate(self.coeffs):
            for mono, v in c.iter_terms():
                yield (slot, mono), v

    def monomials(self) -> set:
        out = set()
        for c in self.coeffs:
            out.update(c.monomials())
        return out

    def __repr__(self):
        return f"VectorField({self.dim}, {self})"

    def __str__(self):
        from .grammar import format_field
        return format_field(self)

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "VectorField"):
        if not isinstance(other, VectorField):
            raise TypeError(f"expected VectorField, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        return VectorField([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return VectorField([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return VectorField([-a for a in self.coeffs])

    def scale(self, c) -> "VectorField":
        """Multiply by a constant or by a scalar function ``h`` (an ExpPoly)."""
        if isinstance(c, ExpPoly):
            if c.dim != self.dim:
                raise DimensionError(f"dimension mismatch: {self.dim} vs {c.dim}")
            return VectorField([c * a for a in self.coeffs])
        return VectorField([a.scale(c) for a in self.coeffs])

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    # -- calculus -----------------------------------------------------------

    def __call__(self, h: ExpPoly) -> ExpPoly:
        """Directional derivative ``X(h) = sum_i X_i d_i h``."""
        if h.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {h.dim}")
        out = ExpPoly.zero(self.dim)
        for i, xi in enumerate(self.coeffs):
            if xi:
                out = out + xi * h.partial(i)
        return out

    def eval_numeric(self, point: Sequence[float]) -> list[complex]:
        return [c.eval_numeric(point) for c in self.coeffs]

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)


def _accumulate(out: dict, a: ExpPoly, b: ExpPoly, negate: bool) -> None:
    # out += a * b (or -= a * b), in place on a term dict
    for m1, c1 in a.iter_terms():
        for m2, c2 in b.iter_terms():
            m = m1.times(m2)
            v = c1 * c2
            if negate:
                v = -v
            if m in out:
                v = out[m] + v
                if v:
                    out[m] = v
                else:
                    del out[m]
            elif v:
                out[m] = v


def bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Exact Lie bracket ``[X, Y]``."""
    X._check(Y)
    n = X.dim
    # d_i Y_j and d_i X_j only where the multiplier is nonzero
    out = []
    for j in range(n):
        acc: dict = {}
        yj, xj = Y.coeffs[j], X.coeffs[j]
        for i in range(n):
            xi, yi = X.coeffs[i], Y.coeffs[i]
            if xi and yj:
                _accumulate(acc, xi, yj.partial(i), False)
            if yi and xj:
                _accumulate(acc, yi, xj.partial(i), True)
        out.append(ExpPoly._raw(n, acc))
    return VectorField(out)


def project(X: VectorField, k: int) -> VectorField:
    """Drop the last ``N - k`` slots of a field whose coefficients only see ``x_1..x_k``."""
    if not 1 <= k <= X.dim:
        raise ValueError(f"projection target {k} must lie in 1..{X.dim}")
    for slot, c in enumerate(X.coeffs):
        for var in range(k, X.dim):
            if c.depends_on(var):
                raise ProjectionError(slot, var)
    return VectorField([c.truncate(k) for c in X.coeffs[:k]])


def embed(X: VectorField, dim: int, offset: int) -> VectorField:
    """Place ``X`` on the coordinate block ``offset+1 .. offset+X.dim`` of C^dim."""
    coeffs = [ExpPoly.zero(dim)] * dim
    coeffs = list(coeffs)
    for j, c in enumerate(X.coeffs):
        coeffs[offset + j] = c.embed(dim, offset)
    return VectorField(coeffs)


def permute(X: VectorField, perm: Sequence[int]) -> VectorField:
    """Relabel coordinates: old ``x_j`` becomes new ``x_{perm[j]}`` (0-based)."""
    if sorted(perm) != list(range(X.dim)):
        raise ValueError(f"{list(perm)} is not a permutation of 0..{X.dim - 1}")
    coeffs = [None] * X.dim
    for j, c in enumerate(X.coeffs):
        coeffs[perm[j]] = c.permute(perm)
    return VectorField(coeffs)


def eigenfield_decompose(X: VectorField, i: int) -> list[tuple[Fraction, VectorField]]:
    """Split ``X`` into eigenfields of ``ad(d_i)``, highest eigenvalue first.

    Requires purely exponential dependence on ``x_i``.
    """
    if not 0 <= i < X.dim:
        raise IndexError(f"coordinate index {i + 1} out of range for dimension {X.dim}")
    groups: dict[Fraction, list[dict]] = {}
    for slot, c in enumerate(X.coeffs):
        for mono in c.monomials():
            if mono.pow[i]:
                raise EigenDecompositionError(
                    f"coefficient of d{slot + 1} has polynomial dependence on x{i + 1}")
            lam = mono.freq[i]
            slots = groups.setdefault(lam, [dict() for _ in range(X.dim)])
            slots[slot][mono] = c.coefficient(mono)
    out = []
    for lam in sorted(groups, reverse=True):
        comp = VectorField([ExpPoly(X.dim, t) for t in groups[lam]])
        out.append((lam, comp))
    return out


def substitute_exp(X: VectorField, subset: Iterable[int]) -> VectorField:
    """Push ``X`` forward through ``x_i = exp(u_i)`` for every ``i`` in ``subset``.

    In the new chart ``d/dx_i = exp(-u_i) d/du_i`` and ``x_i^p = exp(p u_i)``.
    Fails if some coefficient carries ``exp(q x_i)`` with ``q != 0`` for a
    substituted ``i``: that becomes ``exp(q exp(u_i))``.
    """
    S = sorted(set(subset))
    n = X.dim
    for i in S:
        if not 0 <= i < n:
            raise IndexError(f"coordinate index {i + 1} out of range for dimension {n}")
    inS = [False] * n
    for i in S:
        inS[i] = True

    def chart(mono: ExpMonomial, slot: int) -> ExpMonomial:
        freq = list(mono.freq)
        pow = list(mono.pow)
        for i in S:
            if freq[i]:
                raise SubstitutionError(
                    f"term {mono_text(mono)} in the d{slot + 1} coefficient has exp(q*x{i + 1}) "
                    f"with x{i + 1} substituted; result is not an exponential-polynomial")
            freq[i] = Fraction(pow[i])
            pow[i] = 0
        if inS[slot]:
            # divide by x_slot: the u-chart coefficient of d/du_slot is X_slot / x_slot
            freq[slot] -= 1
        return ExpMonomial(tuple(freq), tuple(pow))

    coeffs = []
    for slot, c in enumerate(X.coeffs):
        coeffs.append(ExpPoly(n, [(chart(m, slot), v) for m, v in c.items()]))
    return VectorField(coeffs)


def mono_text(mono: ExpMonomial) -> str:
    from .grammar import format_exppoly
    return format_exppoly(ExpPoly(len(mono.pow), {mono: GaussianRational(1)}))



def reflect(X: VectorField, subset: Iterable[int]) -> VectorField:
    """Push ``X`` forward through ``x_i -> -x_i`` for every ``i`` in ``subset``."""
    S = set(subset)
    for i in S:
        if not 0 <= i < X.dim:
            raise IndexError(f"coordinate index {i + 1} out of range for dimension {X.dim}")

    def flip(mono: ExpMonomial, v):
        freq = tuple(-q if k in S else q for k, q in enumerate(mono.freq))
        sign = sum(p for k, p in enumerate(mono.pow) if k in S) % 2
        return ExpMonomial(freq, mono.pow), (-v if sign else v)

    coeffs = []
    for slot, c in enumerate(X.coeffs):
        terms = [flip(m, v) for m, v in c.items()]
        out = ExpPoly(X.dim, terms)
        coeffs.append(-out if slot in S else out)
    return VectorField(coeffs)


def polynomial_chart(X: VectorField, subset: Iterable[int]) -> VectorField:
    """Inverse of :func:`substitute_exp`: rewrite a field given in ``u`` through ``w_i = exp(u_i)``.

    Needs integer frequencies in the chart variables, no polynomial factors
    in them, and nonnegative resulting powers.
    """
    S = sorted(set(subset))
    n = X.dim
    for i in S:
        if not 0 <= i < n:
            raise IndexError(f"coordinate index {i + 1} out of range for dimension {n}")

    def chart(mono: ExpMonomial, slot: int) -> ExpMonomial:
        freq = list(mono.freq)
        pow = list(mono.pow)
        if slot in S:
            # d/du_slot = w_slot d/dw_slot
            freq[slot] += 1
        for i in S:
            if pow[i] or freq[i].denominator != 1 or freq[i] < 0:
                raise SubstitutionError(
                    f"term {mono_text(mono)} in the d{slot + 1} coefficient is not polynomial "
                    f"in w{i + 1} = exp(x{i + 1})")
            pow[i] = int(freq[i])
            freq[i] = Fraction(0)
        return ExpMonomial(tuple(freq), tuple(pow))

    coeffs = []
    for slot, c in enumerate(X.coeffs):
        coeffs.append(ExpPoly(n, [(chart(m, slot), v) for m, v in c.items()]))
    return VectorField(coeffs)
