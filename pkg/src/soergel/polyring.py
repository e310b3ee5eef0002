"""
The polynomial ring R = S(V*) over Q with its W-action.

Variables are the x_s, one per simple reflection, each of degree 2.  The
realization is fixed by a Cartan matrix a with

    s . x_t = x_t - a(s, t) x_s,

extended multiplicatively.  From the splitting R = R^s + x_s R^s we get

    P_s(p)  = (p + s.p) / 2          (invariant part)
    I_s(p)  = (p - s.p) / 2          (= x_s * I'_s(p))
    I'_s(p) = (p - s.p) / (2 x_s)    (divided difference, lowers degree by 2)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .coxeter import INF, CoxeterMatrix, alternating
from .errors import ConfigError, InternalError
from .scalars import Rational, is_scalar

Monomial = tuple


class Polynomial:
    """Sparse polynomial: ``{exponent vector: Rational}`` with no zero coefficients."""

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms=None, nvars: int = 0):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    if len(mono) != nvars:
                        raise ValueError(f"monomial {mono} has wrong arity for {nvars} variables")
                    self.terms[mono] = Rational(c)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls._raw({(0,) * nvars: Rational(c)} if c else {}, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int, power: int = 1) -> "Polynomial":
        e = [0] * nvars
        e[i] = power
        return cls._raw({tuple(e): Rational(1)}, nvars)

    @classmethod
    def monomial(cls, mono: Monomial, coef=1) -> "Polynomial":
        return cls._raw({tuple(mono): Rational(coef)} if coef else {}, len(mono))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if is_scalar(other):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Polynomial._raw(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.nvars)
        c = Rational(c)
        return Polynomial._raw({m: v * c for m, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial.zero(self.nvars)
        if len(other.terms) == 1 and len(self.terms) > 1:
            return other * self
        terms: dict = {}
        get = terms.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in terms.items() if c}, self.nvars)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, c):
        return self.scale(Rational(1) / Rational(c))

    def __pow__(self, k: int):
        out = Polynomial.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def divide_by_var(self, i: int) -> "Polynomial":
        terms = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                raise InternalError(f"{self} is not divisible by x_{i}")
            terms[m[:i] + (m[i] - 1,) + m[i + 1:]] = c
        return Polynomial._raw(terms, self.nvars)

    # -- queries ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if is_scalar(other):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def constant_term(self) -> Rational:
        return self.terms.get((0,) * self.nvars, Rational(0))

    def degree(self) -> int:
        """Degree with deg x_s = 2; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return 2 * max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coefficient(self, mono: Monomial) -> Rational:
        return self.terms.get(tuple(mono), Rational(0))

    def sorted_terms(self):
        """Terms in graded lexicographic order (highest first)."""
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)


def format_scalar(c: Rational) -> str:
    c = Rational(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Human-readable form, e.g. ``x_0^2 - 1/2*x_0*x_1 + 3``; ``names`` are the variable names."""
    if not p.terms:
        return "0"
    out = ""
    for k, (mono, c) in enumerate(p.sorted_terms()):
        factors = []
        for i, e in enumerate(mono):
            if e:
                name = names[i] if names else f"x_{i}"
                factors.append(name if e == 1 else f"{name}^{e}")
        sign = "-" if c < 0 else "+"
        mag = format_scalar(abs(c))
        if not factors:
            term = mag
        elif mag == "1":
            term = "*".join(factors)
        else:
            term = f"{mag}*" + "*".join(factors)
        if k == 0:
            out = ("-" if sign == "-" else "") + term
        else:
            out += f" {sign} {term}"
    return out


def monomials_of_degree(degree: int, nvars: int) -> list[Monomial]:
    """Exponent vectors of all monomials of (even) degree ``degree``; deg x_s = 2."""
    if degree < 0 or degree % 2:
        return []
    d = degree // 2
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def dim_homogeneous(degree: int, nvars: int) -> int:
    """dim R_degree."""
    if degree < 0 or degree % 2:
        return 0
    d = degree // 2
    return comb(d + nvars - 1, nvars - 1)


def random_polynomial(nvars: int, max_degree: int, rng: random.Random, nterms: int = 6,
                      homogeneous: bool = False) -> Polynomial:
    """Random polynomial with small integer/half-integer coefficients, degree <= max_degree."""
    terms = {}
    top = max_degree // 2
    fixed = rng.randint(0, top) if homogeneous else None
    for _ in range(nterms):
        d = fixed if homogeneous else rng.randint(0, top)
        e = [0] * nvars
        for _ in range(d):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = Rational(rng.randint(-5, 5), rng.choice((1, 1, 2, 3)))
    return Polynomial(terms, nvars)


DEFAULT_CARTAN = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), INF: (-2, -2)}
COMPATIBLE_PRODUCT = {2: 0, 3: 1, 4: 2, 6: 3, INF: 4}


@dataclass(frozen=True)
class CartanRealization:
    """Cartan matrix ``a`` of a rational realization of a Coxeter system.

    ``a[s][t]`` is the coefficient in ``s . x_t = x_t - a(s,t) x_s``.  Caches
    (the action on monomials and everything memoized downstream) live on the
    instance.
    """

    coxeter: CoxeterMatrix
    a: tuple
    check: bool = field(default=True, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        a = tuple(tuple(Rational(x) for x in row) for row in self.a)
        object.__setattr__(self, "a", a)
        n = self.coxeter.rank
        if len(a) != n or any(len(row) != n for row in a):
            raise ConfigError("Cartan matrix has the wrong shape")
        if not self.check:
            # deliberately unvalidated data, used to exercise the verification suite
            return
        for s in range(n):
            if a[s][s] != 2:
                raise ConfigError(f"a({s},{s}) must be 2")
            for t in range(s + 1, n):
                m = self.coxeter.order(s, t)
                want = COMPATIBLE_PRODUCT[m]
                if a[s][t] * a[t][s] != want:
                    raise ConfigError(
                        f"a({s},{t}) * a({t},{s}) = {a[s][t] * a[t][s]} but m({s},{t}) = {m} "
                        f"requires 4cos^2(pi/m) = {want}"
                    )
                if m != 2 and (a[s][t] == 0 or a[t][s] == 0):
                    raise ConfigError(f"a({s},{t}) and a({t},{s}) must be nonzero for m = {m}")

    @classmethod
    def default(cls, cm: CoxeterMatrix, overrides: dict | None = None) -> "CartanRealization":
        """Integral default realization; ``overrides`` maps (s, t) to a(s, t)."""
        n = cm.rank
        a = [[Rational(2) if s == t else Rational(0) for t in range(n)] for s in range(n)]
        for s in range(n):
            for t in range(s + 1, n):
                low, high = DEFAULT_CARTAN[cm.order(s, t)]
                a[s][t], a[t][s] = Rational(low), Rational(high)
        for (s, t), v in (overrides or {}).items():
            a[s][t] = Rational(v)
        return cls(cm, tuple(map(tuple, a)))

    @property
    def rank(self) -> int:
        return self.coxeter.rank

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.rank)

    def one(self) -> Polynomial:
        return Polynomial.one(self.rank)

    def x(self, s: int, power: int = 1) -> Polynomial:
        return Polynomial.var(s, self.rank, power)

    def const(self, c) -> Polynomial:
        return Polynomial.constant(c, self.rank)

    def reflection_matrix(self, s: int) -> list[list[Rational]]:
        """Matrix of s on V* in the basis (x_0, ..., x_{n-1}); column t is s.x_t."""
        n = self.rank
        mat = [[Rational(int(i == j)) for j in range(n)] for i in range(n)]
        for t in range(n):
            mat[s][t] -= self.a[s][t]
        return mat


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def braid_relation_holds(cr: CartanRealization, s: int, t: int) -> bool:
    """Check that the alternating products of length m(s,t) of the two reflections agree on V*."""
    m = cr.coxeter.order(s, t)
    if m == INF:
        return True
    n = cr.rank
    left = right = [[Rational(int(i == j)) for j in range(n)] for i in range(n)]
    for u in alternating(s, t, m):
        left = _mat_mul(left, cr.reflection_matrix(u))
    for u in alternating(t, s, m):
        right = _mat_mul(right, cr.reflection_matrix(u))
    return left == right


def _act_monomial(mono: Monomial, s: int, cr: CartanRealization) -> Polynomial:
    cache = cr._cache.setdefault("act", {})
    key = (s, mono)
    hit = cache.get(key)
    if hit is not None:
        return hit
    n = cr.rank
    out = Polynomial.one(n)
    for t, e in enumerate(mono):
        if not e:
            continue
        if t == s:
            img = Polynomial.var(s, n).scale(-1)
        else:
            img = Polynomial.var(t, n) - Polynomial.var(s, n).scale(cr.a[s][t])
        out = out * img ** e
    cache[key] = out
    return out


def act_generator(s: int, p: Polynomial, cr: CartanRealization) -> Polynomial:
    out: dict = {}
    for mono, c in p.terms.items():
        for m2, c2 in _act_monomial(mono, s, cr).terms.items():
            out[m2] = out.get(m2, 0) + c * c2
    return Polynomial._raw({m: c for m, c in out.items() if c}, p.nvars)


def act(w: Sequence[int], p: Polynomial, cr: CartanRealization) -> Polynomial:
    """w . p, with the leftmost letter acting last."""
    for s in reversed(tuple(w)):
        p = act_generator(s, p, cr)
    return p


def decompose_s(p: Polynomial, s: int, cr: CartanRealization) -> tuple[Polynomial, Polynomial]:
    """(P_s(p), I'_s(p)) with p = P_s(p) + x_s I'_s(p), both parts s-invariant."""
    cache = cr._cache.setdefault("decompose", {})
    key = (s, p)
    hit = cache.get(key)
    if hit is not None:
        return hit
    sp = act_generator(s, p, cr)
    half = Rational(1, 2)
    inv = (p + sp).scale(half)
    div = (p - sp).scale(half).divide_by_var(s)
    cache[key] = (inv, div)
    return inv, div


def P_s(p: Polynomial, s: int, cr: CartanRealization) -> Polynomial:
    return decompose_s(p, s, cr)[0]


def Iprime_s(p: Polynomial, s: int, cr: CartanRealization) -> Polynomial:
    return decompose_s(p, s, cr)[1]


def I_s(p: Polynomial, s: int, cr: CartanRealization) -> Polynomial:
    return p - P_s(p, s, cr)


def is_invariant(p: Polynomial, s: int, cr: CartanRealization) -> bool:
    return act_generator(s, p, cr) == p
