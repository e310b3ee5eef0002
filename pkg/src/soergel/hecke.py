"""
Iwahori-Hecke algebra over Z[v, v^-1] in the standard basis {T_x}.

Conventions: q = v^-2 and T_s^2 = q + (q - 1) T_s.  Elements are stored as
``{canonical word: LaurentPoly}``.  ``tau`` extracts the coefficient of T_1;
by Soergel's theory tau((1 + T_s1)...(1 + T_sn)) = sum n_i q^i gives the
graded rank of Hom(theta_s1 ... theta_sn, R).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import coxeter
from .coxeter import CoxeterMatrix, INF, alternating
from .errors import InternalError, VerificationFailure


class LaurentPoly:
    """Element of Z[v, v^-1] stored as ``{exponent of v: int}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {k: int(c) for k, c in (coeffs or {}).items() if c}

    @classmethod
    def q_power(cls, i: int, c: int = 1) -> "LaurentPoly":
        return cls({-2 * i: c})

    @classmethod
    def from_q(cls, coeffs: dict) -> "LaurentPoly":
        return cls({-2 * i: c for i, c in coeffs.items()})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({k: c * other for k, c in self.coeffs.items()})
        out: dict = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def is_q_polynomial(self) -> bool:
        return all(k % 2 == 0 for k in self.coeffs)

    def q_coefficients(self) -> dict[int, int]:
        """``{i: n_i}`` with self = sum n_i q^i; raises if odd powers of v occur."""
        if not self.is_q_polynomial():
            raise InternalError(f"{self} contains odd powers of v")
        return {-k // 2: c for k, c in sorted(self.coeffs.items(), reverse=True)}

    def q_degree(self) -> int | None:
        """Degree as a polynomial in q (None for zero)."""
        if not self.coeffs:
            return None
        return max(self.q_coefficients())

    def __repr__(self):
        return f"LaurentPoly({self.coeffs})"

    def __str__(self):
        return format_v(self)


def _format_terms(items, var):
    """Terms like ``1 + 2q - q^3``; ``items`` are (exponent, coefficient) pairs."""
    if not items:
        return "0"
    out = ""
    for k, c in items:
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not out:
            out = body if c > 0 else "-" + body
        else:
            out += (" + " if c > 0 else " - ") + body
    return out


def format_v(p: LaurentPoly) -> str:
    return _format_terms(sorted(p.coeffs.items()), "v")


def format_q(p: LaurentPoly) -> str:
    return _format_terms(sorted(p.q_coefficients().items()), "q")


Q = LaurentPoly.q_power(1)
ONE = LaurentPoly.const(1)


@dataclass
class HeckeElement:
    coxeter: CoxeterMatrix
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: c for k, c in self.coeffs.items() if c}

    @classmethod
    def T(cls, w: Sequence[int], cm: CoxeterMatrix, coeff=None) -> "HeckeElement":
        """T_w for a reduced word ``w``; use ``product_T`` for arbitrary words."""
        key = coxeter.canonical(w, cm)
        if len(key) != len(tuple(w)):
            raise ValueError(f"{w} is not reduced; use product_T")
        return cls(cm, {key: coeff if coeff is not None else LaurentPoly.const(1)})

    @classmethod
    def one(cls, cm: CoxeterMatrix) -> "HeckeElement":
        return cls(cm, {(): LaurentPoly.const(1)})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, LaurentPoly()) + c
        return HeckeElement(self.coxeter, out)

    def scale(self, c: LaurentPoly) -> "HeckeElement":
        return HeckeElement(self.coxeter, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def coefficient(self, w: Sequence[int]) -> LaurentPoly:
        return self.coeffs.get(coxeter.canonical(w, self.coxeter), LaurentPoly())

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({format_v(c)})*T[{','.join(map(str, k))}]" for k, c in sorted(self.coeffs.items()))


def mul_Ts_right(h: HeckeElement, s: int) -> HeckeElement:
    """h * T_s."""
    cm = h.coxeter
    out: dict = {}

    def add(key, c):
        out[key] = out.get(key, LaurentPoly()) + c

    for x, c in h.coeffs.items():
        xs = coxeter.reduce(x + (s,), cm)
        if len(xs) > len(x):
            add(xs, c)
        else:
            add(xs, c * Q)
            add(x, c * (Q - 1))
    return HeckeElement(cm, out)


def mul_Ts_left(s: int, h: HeckeElement) -> HeckeElement:
    """T_s * h."""
    cm = h.coxeter
    out: dict = {}
    for x, c in h.coeffs.items():
        sx = coxeter.reduce((s,) + x, cm)
        if len(sx) > len(x):
            out[sx] = out.get(sx, LaurentPoly()) + c
        else:
            out[sx] = out.get(sx, LaurentPoly()) + c * Q
            out[x] = out.get(x, LaurentPoly()) + c * (Q - 1)
    return HeckeElement(cm, out)


def mul(h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
    """Product in the Hecke algebra (T_y expanded letter by letter on the right)."""
    cm = h1.coxeter
    total = HeckeElement(cm)
    for y, c in h2.coeffs.items():
        part = h1
        for s in y:
            part = mul_Ts_right(part, s)
        total = total + part.scale(c)
    return total


def product_T(word: Sequence[int], cm: CoxeterMatrix) -> HeckeElement:
    """T_{w1} T_{w2} ... as a Hecke product (the word need not be reduced)."""
    h = HeckeElement.one(cm)
    for s in word:
        h = mul_Ts_right(h, s)
    return h


def product_one_plus(word: Sequence[int], cm: CoxeterMatrix) -> HeckeElement:
    """(1 + T_s1)(1 + T_s2)...(1 + T_sn), multiplied left to right."""
    word = cm.check_word(word)
    cache = cm._cache.setdefault("product_one_plus", {})
    if word in cache:
        return cache[word]
    if not word:
        h = HeckeElement.one(cm)
    else:
        prev = product_one_plus(word[:-1], cm)
        h = prev + mul_Ts_right(prev, word[-1])
    cache[word] = h
    return h


def tau(h: HeckeElement) -> LaurentPoly:
    return h.coeffs.get((), LaurentPoly())


def tau_pairing(x: Sequence[int], y: Sequence[int], cm: CoxeterMatrix) -> LaurentPoly:
    """tau(T_x T_{y^-1}) for reduced words x, y."""
    tx = HeckeElement.T(coxeter.reduce(x, cm), cm)
    ty = HeckeElement.T(coxeter.reduce(coxeter.inverse(coxeter.reduce(y, cm)), cm), cm)
    return tau(mul(tx, ty))


def graded_rank(word: Sequence[int], cm: CoxeterMatrix) -> list[tuple[int, int]]:
    """[(i, n_i)] with Hom(theta_word, R) = sum n_i R(2i)."""
    return sorted(tau(product_one_plus(word, cm)).q_coefficients().items())


def hecke_coefficients(word: Sequence[int], cm: CoxeterMatrix) -> dict:
    """{canonical x: p^x_n} for the product (1 + T_s1)...(1 + T_sn)."""
    return dict(product_one_plus(word, cm).coeffs)


# -- the Z_j decomposition of alternating products (dihedral case) ------------

def _z_word(j: int, s: int = 0, r: int = 1) -> tuple:
    """Letters of Z_j: Z_0 = 1, Z_{2k-1} = T_s T_r ... (k), Z_{2k} = T_r T_s ... (k)."""
    if j == 0:
        return ()
    k = (j + 1) // 2
    return alternating(s, r, k) if j % 2 else alternating(r, s, k)


def _z_index(word: tuple) -> int:
    if not word:
        return 0
    k = len(word)
    return 2 * k - 1 if word[0] == 0 else 2 * k


def z_coefficients(n: int) -> dict[int, LaurentPoly]:
    """p_{j,n} for j = 0..4n-1.

    The Z_j are the standard basis elements of the infinite dihedral Hecke
    algebra, where all alternating words are reduced and distinct, so the
    expansion there is unique.  It maps onto every finite dihedral quotient.
    """
    free = CoxeterMatrix.dihedral(INF)
    h = product_one_plus(alternating(0, 1, 2 * n), free)
    return {_z_index(w): c for w, c in h.coeffs.items()}


@dataclass
class ZReport:
    order: object
    n: int
    p: dict
    tau_z: dict
    passed: bool
    failures: list

    def summary(self) -> str:
        status = "ok" if self.passed else "FAIL: " + "; ".join(self.failures)
        return f"Z-decomposition m={self.order} n={self.n}: {status}"


def verify_Z_decomposition(order, n: int, raise_on_failure: bool = True) -> ZReport:
    """Check the degree bounds on p_{j,n}, p_{4n-1,n} = 1, and tau(Z_j) in the dihedral group of ``order``."""
    failures = []
    bad_index = None
    p = z_coefficients(n)
    for j in range(4 * n):
        c = p.get(j, LaurentPoly())
        d = c.q_degree()
        if d is not None and not d < n - j // 4:
            failures.append(f"deg p_{j},{n} = {d} is not < {n - j // 4}")
            bad_index = j if bad_index is None else bad_index
    if set(p) - set(range(4 * n)):
        failures.append(f"unexpected indices {sorted(set(p) - set(range(4 * n)))}")
    if p.get(4 * n - 1) != ONE:
        failures.append(f"p_{4 * n - 1},{n} = {p.get(4 * n - 1)} is not 1")
        bad_index = 4 * n - 1 if bad_index is None else bad_index
    tau_z = {}
    if order != INF:
        cm = CoxeterMatrix.dihedral(order)
        m = order
        for j in range(1, 4 * m):
            t = tau(product_T(_z_word(j), cm))
            tau_z[j] = t
            want = LaurentPoly.q_power(m) if j == 4 * m - 1 else LaurentPoly()
            if t != want:
                failures.append(f"tau(Z_{j}) = {t}, expected {want}")
                bad_index = j if bad_index is None else bad_index
        # the expansion must also hold in the finite quotient
        lhs = product_one_plus(alternating(0, 1, 2 * n), cm)
        rhs = HeckeElement(cm)
        for j, c in p.items():
            rhs = rhs + product_T(_z_word(j), cm).scale(c)
        if lhs != rhs:
            failures.append("sum p_{j,n} Z_j differs from the alternating product in the finite quotient")
    report = ZReport(order, n, p, tau_z, not failures, failures)
    if failures and raise_on_failure:
        raise VerificationFailure(report.summary(), index=bad_index)
    return report
