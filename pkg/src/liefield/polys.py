"""Sparse multivariate polynomials over Q and a small Buchberger engine.

Polynomials double as symbolic coefficients inside :class:`ExpPoly`, which
is how unknown constants are threaded through the bracket code.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .coeffring import GaussianRational

MAX_VARIABLES = 12
MAX_BASIS = 10_000
MAX_PAIRS = 200_000


class ResourceExhausted(RuntimeError):
    """A hard cap of the Gröbner engine was hit; this is never a verdict."""


class PolyRing:
    """Ordered set of variable names; monomials are exponent tuples in this order."""

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.index = {n: k for k, n in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.names == self.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing{self.names}"

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c})

    def gen(self, name: str) -> "Poly":
        k = self.index[name]
        e = tuple(int(i == k) for i in range(self.nvars))
        return Poly(self, {e: Fraction(1)})

    def gens(self) -> list["Poly"]:
        return [self.gen(n) for n in self.names]

    def extend(self, extra: Sequence[str]) -> "PolyRing":
        return PolyRing(self.names + tuple(extra))


def _scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, GaussianRational):
        if c.im:
            raise ValueError("polynomial constraints must have rational coefficients")
        return c.re
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


def degrevlex_key(e: tuple) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        clean = {}
        for e, c in terms.items():
            c = _scalar(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Rational, GaussianRational)):
            return self == Poly(self.ring, {(0,) * self.ring.nvars: other}) if other else not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.constant(_scalar(other))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = _scalar(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Poly._raw(self.ring, {})
            return Poly._raw(self.ring, {e: v * c for e, v in self.terms.items()})
        if other.ring != self.ring:
            raise ValueError("polynomials from different rings")
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    # -- inspection -----------------------------------------------------------

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def variables(self) -> set[str]:
        out = set()
        for e in self.terms:
            for k, p in enumerate(e):
                if p:
                    out.add(self.ring.names[k])
        return out

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self) -> tuple[tuple, Fraction]:
        e = max(self.terms, key=degrevlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def monic(self) -> "Poly":
        _, c = self.leading()
        return self * (1 / c)

    def rename(self, ring: PolyRing, mapping: dict[str, str] | None = None) -> "Poly":
        """Re-express in ``ring`` (optionally renaming variables)."""
        mapping = mapping or {}
        names = self.ring.names
        out = {}
        for e, c in self.terms.items():
            f = [0] * ring.nvars
            for k, p in enumerate(e):
                if p:
                    f[ring.index[mapping.get(names[k], names[k])]] += p
            out[tuple(f)] = c
        return Poly(ring, out)

    def subs(self, values: dict[str, Fraction]) -> "Poly":
        """Substitute rational values for some variables."""
        out: dict = {}
        for e, c in self.terms.items():
            f = list(e)
            for name, v in values.items():
                k = self.ring.index[name]
                if f[k]:
                    c = c * Fraction(v) ** f[k]
                    f[k] = 0
            if c:
                t = tuple(f)
                w = out.get(t, 0) + c
                if w:
                    out[t] = w
                else:
                    out.pop(t, None)
        return Poly._raw(self.ring, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (n if p == 1 else f"{n}^{p}") for n, p in zip(self.ring.names, e) if p)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"Poly({self})"


# -- Gröbner bases ---------------------------------------------------------------------


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _sub_scaled(f: dict, c: Fraction, shift: tuple, g: dict) -> None:
    """``f -= c * x^shift * g`` in place."""
    for e, v in g.items():
        t = tuple(a + b for a, b in zip(e, shift))
        w = f.get(t, 0) - c * v
        if w:
            f[t] = w
        else:
            f.pop(t, None)


def normal_form(f: Poly, basis: Sequence[Poly]) -> Poly:
    """Full reduction of ``f`` modulo ``basis`` (any order; results unique for a Gröbner basis)."""
    leads = [(g.leading(), g.terms) for g in basis if g]
    rem: dict = {}
    p = dict(f.terms)
    while p:
        e = max(p, key=degrevlex_key)
        c = p[e]
        for (le, lc), gt in leads:
            if _divides(le, e):
                shift = tuple(a - b for a, b in zip(e, le))
                _sub_scaled(p, c / lc, shift, gt)
                break
        else:
            rem[e] = c
            del p[e]
    return Poly._raw(f.ring, rem)


def _spoly(f: Poly, g: Poly) -> Poly:
    (ef, cf), (eg, cg) = f.leading(), g.leading()
    L = _lcm(ef, eg)
    out = {}
    _sub_scaled(out, -1 / cf, tuple(a - b for a, b in zip(L, ef)), f.terms)
    _sub_scaled(out, 1 / cg, tuple(a - b for a, b in zip(L, eg)), g.terms)
    return Poly._raw(f.ring, out)


def groebner(polys: Iterable[Poly], max_basis: int = MAX_BASIS) -> list[Poly]:
    """Reduced Gröbner basis (degrevlex), sorted by leading monomial, monic."""
    G: list[Poly] = []
    for f in polys:
        if f:
            G.append(f.monic())
    if not G:
        return []
    ring = G[0].ring
    LM = [g.leading()[0] for g in G]
    heap: list = []
    pending: set = set()

    def push(i, j):
        heapq.heappush(heap, (degrevlex_key(_lcm(LM[i], LM[j])), i, j))
        pending.add((i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)
    processed = 0
    # normal strategy: smallest lcm first
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        processed += 1
        if processed > MAX_PAIRS:
            raise ResourceExhausted(f"more than {MAX_PAIRS} critical pairs")
        ei, ej = LM[i], LM[j]
        if _coprime(ei, ej):
            continue
        L = _lcm(ei, ej)
        # chain criterion: another lead divides the lcm and both side pairs are already done
        if any(k != i and k != j and _divides(LM[k], L)
               and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending
               for k in range(len(G))):
            continue
        h = normal_form(_spoly(G[i], G[j]), G)
        if not h:
            continue
        h = h.monic()
        if h.is_constant():
            return [ring.one()]
        G.append(h)
        LM.append(h.leading()[0])
        if len(G) > max_basis:
            raise ResourceExhausted(f"Gröbner basis exceeded {max_basis} polynomials")
        k = len(G) - 1
        for m in range(k):
            push(m, k)
    return _reduce(G)


def _reduce(G: list[Poly]) -> list[Poly]:
    # minimal basis: drop elements whose lead is divisible by another lead
    G = [g for g in G if g]
    leads = [g.leading()[0] for g in G]
    keep = []
    for k, g in enumerate(G):
        lk = leads[k]
        dominated = False
        for m, lm in enumerate(leads):
            if m == k:
                continue
            if _divides(lm, lk) and (lm != lk or m < k):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    out = []
    for k, g in enumerate(keep):
        rest = keep[:k] + keep[k + 1:]
        lead_e, lead_c = g.leading()
        tail = Poly._raw(g.ring, {e: c for e, c in g.terms.items() if e != lead_e})
        r = normal_form(tail, rest)
        terms = dict(r.terms)
        terms[lead_e] = lead_c
        out.append(Poly._raw(g.ring, terms).monic())
    out.sort(key=lambda p: degrevlex_key(p.leading()[0]))
    return out


def ideal_contains(basis: Sequence[Poly], f: Poly) -> bool:
    return not normal_form(f, basis)
