"""Exact exponential-polynomial functions of N variables.

An :class:`ExpPoly` is a finite sum of terms ``c * x^p * exp(<k, x>)`` with
``c`` a Gaussian rational, ``p`` a vector of non-negative integers and ``k`` a
vector of rationals. The class is closed under sums, products and partial
derivatives, which is all a Lie bracket of vector fields needs.

Coefficients are duck-typed: anything supporting ``+``, ``-``, ``*`` (with each
other and with ``int``/``Fraction``) and truthiness works. The certification
code relies on this to run the very same bracket over polynomial unknowns.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, NamedTuple, Sequence


class DimensionError(ValueError):
    """Operands live in different ambient dimensions."""


class EvaluationError(ArithmeticError):
    """Floating evaluation overflowed or was fed a non-finite point."""


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class GaussianRational:
    """Element ``re + im*i`` of Q(i), stored as two reduced fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_fraction(re)
        self.im = _to_fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return cls(value)

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            if not other.im:
                return GaussianRational(self.re * other.re, self.im * other.re)
            if not self.im:
                return GaussianRational(self.re * other.re, self.re * other.im)
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Rational)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        n = other.norm()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {abs(self.im)}*i)"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


class _MonomialFields(NamedTuple):
    freq: tuple
    pow: tuple


class ExpMonomial(_MonomialFields):
    """``x^pow * exp(<freq, x>)``; tuple order is lexicographic on (freq, pow)."""

    # hashing a tuple of Fractions is costly and monomials are dict keys everywhere
    def __hash__(self):
        try:
            return self.__dict__["_h"]
        except KeyError:
            h = self.__dict__["_h"] = tuple.__hash__(self)
            return h

    @classmethod
    def one(cls, dim: int) -> "ExpMonomial":
        return cls((Fraction(0),) * dim, (0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.pow)

    def times(self, other: "ExpMonomial") -> "ExpMonomial":
        # most factors are purely polynomial or purely exponential
        if not any(other.freq):
            freq = self.freq
        elif not any(self.freq):
            freq = other.freq
        else:
            freq = tuple(a + b for a, b in zip(self.freq, other.freq))
        return ExpMonomial(freq, tuple(a + b for a, b in zip(self.pow, other.pow)))

    def depends_on(self, i: int) -> bool:
        return self.pow[i] != 0 or self.freq[i] != 0

    def is_pure_exponential(self) -> bool:
        return not any(self.pow)


def _check_index(i: int, dim: int) -> None:
    if not 0 <= i < dim:
        raise IndexError(f"coordinate index {i + 1} out of range for dimension {dim}")


class ExpPoly:
    """Immutable sparse exponential-polynomial in ``dim`` variables.

    Coordinates are 0-based internally; the textual form and the CLI use
    ``x1 .. xN``.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms=None):
        self.dim = int(dim)
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for mono, coeff in items:
                if not isinstance(mono, ExpMonomial):
                    mono = ExpMonomial(tuple(_to_fraction(q) for q in mono[0]), tuple(int(p) for p in mono[1]))
                if len(mono.pow) != self.dim or len(mono.freq) != self.dim:
                    raise DimensionError(f"monomial of length {len(mono.pow)} in dimension {self.dim}")
                if any(p < 0 for p in mono.pow):
                    raise ValueError("negative polynomial exponents are not supported")
                if isinstance(coeff, (int, Rational, str)):
                    coeff = GaussianRational(coeff)
                if mono in clean:
                    coeff = clean[mono] + coeff
                if coeff:
                    clean[mono] = coeff
                else:
                    clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "ExpPoly":
        # terms already canonical: no zero coefficients, correct lengths
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "ExpPoly":
        return cls._raw(dim, {})

    @classmethod
    def constant(cls, dim: int, c=1) -> "ExpPoly":
        if not isinstance(c, GaussianRational) and isinstance(c, (int, Rational, str)):
            c = GaussianRational(c)
        if not c:
            return cls.zero(dim)
        return cls._raw(dim, {ExpMonomial.one(dim): c})

    @classmethod
    def monomial(cls, dim: int, coeff=1, pow: Sequence[int] | None = None,
                 freq: Sequence | None = None) -> "ExpPoly":
        pow = tuple(int(p) for p in pow) if pow is not None else (0,) * dim
        freq = tuple(_to_fraction(q) for q in freq) if freq is not None else (Fraction(0),) * dim
        return cls(dim, {ExpMonomial(freq, pow): coeff})

    @classmethod
    def var(cls, dim: int, i: int) -> "ExpPoly":
        _check_index(i, dim)
        pow = [0] * dim
        pow[i] = 1
        return cls.monomial(dim, 1, pow=pow)

    @classmethod
    def exp(cls, dim: int, freq: Sequence) -> "ExpPoly":
        return cls.monomial(dim, 1, freq=freq)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        """Terms in canonical (freq, pow) order."""
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0]))

    def iter_terms(self):
        """Terms in storage order (cheaper than :meth:`items`)."""
        return iter(self._terms.items())

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, mono: ExpMonomial):
        return self._terms.get(mono, ZERO)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        one = ExpMonomial.one(self.dim)
        return all(m == one for m in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._terms.get(ExpMonomial.one(self.dim), ZERO)

    def depends_on(self, i: int) -> bool:
        _check_index(i, self.dim)
        return any(m.depends_on(i) for m in self._terms)

    def __eq__(self, other):
        if isinstance(other, ExpPoly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Rational, GaussianRational)):
            return self == ExpPoly.constant(self.dim, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "ExpPoly":
        if isinstance(other, ExpPoly):
            if other.dim != self.dim:
                raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (int, Rational, GaussianRational)):
            return ExpPoly.constant(self.dim, other)
        raise TypeError(f"cannot combine ExpPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return ExpPoly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly._raw(self.dim, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "ExpPoly":
        if not c:
            return ExpPoly.zero(self.dim)
        out = {}
        for m, a in self._terms.items():
            v = a * c
            if v:
                out[m] = v
        return ExpPoly._raw(self.dim, out)

    def __mul__(self, other):
        if isinstance(other, ExpPoly):
            if other.dim != self.dim:
                raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
            out: dict = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = m1.times(m2)
                    v = c1 * c2
                    if m in out:
                        v = out[m] + v
                        if v:
                            out[m] = v
                        else:
                            del out[m]
                    elif v:
                        out[m] = v
            return ExpPoly._raw(self.dim, out)
        if isinstance(other, (int, Rational, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not exponential-polynomials")
        out = ExpPoly.constant(self.dim, 1)
        for _ in range(n):
            out = out * self
        return out

    def partial(self, i: int) -> "ExpPoly":
        """Exact derivative with respect to ``x_{i+1}`` (0-based ``i``)."""
        _check_index(i, self.dim)
        out: dict = {}

        def put(m, v):
            if m in out:
                v = out[m] + v
                if v:
                    out[m] = v
                else:
                    del out[m]
            elif v:
                out[m] = v

        for m, c in self._terms.items():
            p, k = m.pow[i], m.freq[i]
            if k:
                put(m, c * k)
            if p:
                lowered = m.pow[:i] + (p - 1,) + m.pow[i + 1:]
                put(ExpMonomial(m.freq, lowered), c * p)
        return ExpPoly._raw(self.dim, out)

    # -- coordinate surgery -------------------------------------------------

    def map_monomials(self, fn, dim: int | None = None) -> "ExpPoly":
        """Apply ``fn`` to every monomial and re-collect like terms."""
        return ExpPoly(self.dim if dim is None else dim, [(fn(m), c) for m, c in self._terms.items()])

    def truncate(self, k: int) -> "ExpPoly":
        """Drop variables ``x_{k+1}..x_N``; caller guarantees independence."""
        return ExpPoly._raw(k, {ExpMonomial(m.freq[:k], m.pow[:k]): c for m, c in self._terms.items()})

    def embed(self, dim: int, offset: int) -> "ExpPoly":
        """Re-home into ``dim`` variables with ``x_1`` mapped to ``x_{offset+1}``."""
        if offset < 0 or offset + self.dim > dim:
            raise DimensionError(f"cannot embed dimension {self.dim} at offset {offset} into {dim}")
        zf = (Fraction(0),)
        out = {}
        for m, c in self._terms.items():
            freq = zf * offset + m.freq + zf * (dim - offset - self.dim)
            pow = (0,) * offset + m.pow + (0,) * (dim - offset - self.dim)
            out[ExpMonomial(freq, pow)] = c
        return ExpPoly._raw(dim, out)

    def permute(self, perm: Sequence[int]) -> "ExpPoly":
        """New variable ``perm[j]`` receives old variable ``j``."""
        def move(m):
            freq = [Fraction(0)] * self.dim
            pow = [0] * self.dim
            for j, t in enumerate(perm):
                freq[t] = m.freq[j]
                pow[t] = m.pow[j]
            return ExpMonomial(tuple(freq), tuple(pow))
        return ExpPoly._raw(self.dim, {move(m): c for m, c in self._terms.items()})

    # -- numerics -----------------------------------------------------------

    def eval_numeric(self, point: Sequence[float]) -> complex:
        """Double-precision value at ``point``; diagnostics only."""
        if len(point) != self.dim:
            raise DimensionError(f"point of length {len(point)} for dimension {self.dim}")
        pt = [complex(v) for v in point]
        if not all(cmath.isfinite(v) for v in pt):
            raise EvaluationError("non-finite evaluation point")
        total = 0j
        try:
            for m, c in self._terms.items():
                expo = sum(float(q) * v for q, v in zip(m.freq, pt))
                val = complex(c) * cmath.exp(expo)
                for p, v in zip(m.pow, pt):
                    if p:
                        val *= v ** p
                total += val
        except OverflowError as exc:
            raise EvaluationError(f"overflow evaluating {self}") from exc
        if not cmath.isfinite(total):
            raise EvaluationError(f"overflow evaluating {self}")
        return total

    # -- printing -------------------------------------------------------------

    def __repr__(self):
        return f"ExpPoly({self.dim}, {self})"

    def __str__(self):
        from .grammar import format_exppoly
        return format_exppoly(self)


def as_exppoly(value, dim: int) -> ExpPoly:
    if isinstance(value, ExpPoly):
        if value.dim != dim:
            raise DimensionError(f"dimension mismatch: {value.dim} vs {dim}")
        return value
    return ExpPoly.constant(dim, value)


def exppoly_sum(polys: Iterable[ExpPoly], dim: int) -> ExpPoly:
    out = ExpPoly.zero(dim)
    for p in polys:
        out = out + p
    return out


def depends_on(a: ExpPoly, i: int) -> bool:
    return a.depends_on(i)

