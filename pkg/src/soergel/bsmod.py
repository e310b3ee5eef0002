"""
Bott-Samelson bimodules theta_t1 ... theta_tk = R (x)_{R^t1} R (x) ... (x)_{R^tk} R.

Such a bimodule is free as a left R-module on the *normal basis*

    b_i = 1 (x) x_t1^i1 (x) x_t2^i2 (x) ... (x) x_tk^ik,    i in {0,1}^k,

and an element is stored as ``{bit tuple: Polynomial}`` (its left
coefficients).  The right R-action is computed by pushing a polynomial from
the last tensor slot leftwards: in slot j it splits as P_t(p) + x_t I'_t(p),
the invariant part P_t(p) crosses (x)_{R^t} and x_t stays behind.

Morphisms of bimodules are left-linear by construction and are stored by
their values on the normal basis together with their degree
delta = deg f(e) - deg e (no shifted copies M(n) are ever formed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from . import coxeter
from .coxeter import INF, alternating
from .errors import InternalError, PreconditionViolation, WordMismatch
from .linalg import TrackedEchelon, nullspace
from .polyring import CartanRealization, Polynomial, decompose_s, monomials_of_degree
from .scalars import Rational, is_scalar

Bits = tuple


def cube(k: int) -> list[Bits]:
    """{0,1}^k in lexicographic order."""
    return list(product((0, 1), repeat=k))


def bits_str(bits: Bits) -> str:
    return "".join(map(str, bits))


@dataclass(frozen=True)
class BSElement:
    word: tuple
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        object.__setattr__(self, "coeffs", {b: p for b, p in self.coeffs.items() if p})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, bits: Bits, nvars: int) -> Polynomial:
        return self.coeffs.get(tuple(bits), Polynomial.zero(nvars))

    def degrees(self) -> set[int]:
        return {p.degree() + 2 * sum(b) for b, p in self.coeffs.items()}

    def degree(self) -> int | None:
        """Degree of a homogeneous element (None for zero); raises if inhomogeneous."""
        if not self.coeffs:
            return None
        if any(not p.is_homogeneous() for p in self.coeffs.values()) or len(self.degrees()) != 1:
            raise ValueError("element is not homogeneous")
        return next(iter(self.degrees()))

    def __eq__(self, other):
        if not isinstance(other, BSElement):
            return NotImplemented
        return self.word == other.word and self.coeffs == other.coeffs

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({p})*[{bits_str(b)}]" for b, p in sorted(self.coeffs.items()))


# -- accumulation helpers -------------------------------------------------------

def _acc_add(acc: dict, bits: Bits, poly: Polynomial, factor=None):
    terms = acc.setdefault(bits, {})
    if factor is None:
        for m, c in poly.terms.items():
            terms[m] = terms.get(m, 0) + c
    else:
        for m1, c1 in poly.terms.items():
            for m2, c2 in factor.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2


def _acc_finish(acc: dict, word, nvars: int) -> BSElement:
    coeffs = {}
    for b, terms in acc.items():
        t = {m: c for m, c in terms.items() if c}
        if t:
            coeffs[b] = Polynomial._raw(t, nvars)
    return BSElement(word, coeffs)


# -- elements --------------------------------------------------------------------

def zero(word, cr: CartanRealization) -> BSElement:
    return BSElement(tuple(word), {})


def basis_element(word, bits: Bits, cr: CartanRealization, coef: Polynomial | None = None) -> BSElement:
    word, bits = tuple(word), tuple(bits)
    if len(bits) != len(word):
        raise WordMismatch(f"bit vector {bits} does not fit word {word}")
    return BSElement(word, {bits: coef if coef is not None else cr.one()})


def normal_element(word, cr: CartanRealization) -> BSElement:
    """1 (x) x_t1 (x) ... (x) x_tk (the element 1 of R when the word is empty)."""
    return basis_element(word, (1,) * len(tuple(word)), cr)


def _basis_times_monomial(word: tuple, bits: Bits, mono: tuple, cr: CartanRealization) -> dict:
    """Normal form of b_bits * x^mono, as {bits: Polynomial}."""
    cache = cr._cache.setdefault("basis_times", {})
    key = (word, bits, mono)
    hit = cache.get(key)
    if hit is not None:
        return hit
    p = Polynomial.monomial(mono)
    if not word:
        out = {(): p}
    else:
        t = word[-1]
        if bits[-1]:
            p = p * cr.x(t)
        inv, div = decompose_s(p, t, cr)
        acc: dict = {}
        for part, bit in ((inv, 0), (div, 1)):
            for mono2, c in part.terms.items():
                for b2, q in _basis_times_monomial(word[:-1], bits[:-1], mono2, cr).items():
                    _acc_add(acc, b2 + (bit,), q.scale(c))
        out = _acc_finish(acc, word, cr.rank).coeffs
    cache[key] = out
    return out


def basis_times(word, bits: Bits, p: Polynomial, cr: CartanRealization) -> dict:
    """Normal form of b_bits * p."""
    word, bits = tuple(word), tuple(bits)
    acc: dict = {}
    for mono, c in p.terms.items():
        for b2, q in _basis_times_monomial(word, bits, mono, cr).items():
            _acc_add(acc, b2, q.scale(c))
    return _acc_finish(acc, word, cr.rank).coeffs


def right_mul(e: BSElement, p: Polynomial, cr: CartanRealization) -> BSElement:
    """e * p."""
    if is_scalar(p):
        p = cr.const(p)
    acc: dict = {}
    for bits, coef in e.coeffs.items():
        for mono, c in p.terms.items():
            scaled = coef.scale(c)
            for b2, q in _basis_times_monomial(e.word, bits, mono, cr).items():
                _acc_add(acc, b2, q, scaled)
    return _acc_finish(acc, e.word, cr.rank)


def left_mul(p: Polynomial, e: BSElement) -> BSElement:
    """p * e."""
    return BSElement(e.word, {b: p * c for b, c in e.coeffs.items()})


def scale(e: BSElement, c) -> BSElement:
    return BSElement(e.word, {b: p.scale(c) for b, p in e.coeffs.items()})


def add(e1: BSElement, e2: BSElement) -> BSElement:
    if e1.word != e2.word:
        raise WordMismatch(f"cannot add elements of {e1.word} and {e2.word}")
    out = dict(e1.coeffs)
    for b, p in e2.coeffs.items():
        out[b] = out[b] + p if b in out else p
    return BSElement(e1.word, out)


def append_bit(e: BSElement, s: int, bit: int) -> BSElement:
    """e (x) x_s^bit, an element of theta_word theta_s."""
    return BSElement(e.word + (s,), {b + (bit,): p for b, p in e.coeffs.items()})


def tensor(e1: BSElement, e2: BSElement, cr: CartanRealization) -> BSElement:
    """e1 (x)_R e2: the left coefficients of e2 cross into the last slot of e1."""
    acc: dict = {}
    for b1, c1 in e1.coeffs.items():
        for b2, c2 in e2.coeffs.items():
            for mono, c in c2.terms.items():
                scaled = c1.scale(c)
                for b3, q in _basis_times_monomial(e1.word, b1, mono, cr).items():
                    _acc_add(acc, b3 + b2, q, scaled)
    return _acc_finish(acc, e1.word + e2.word, cr.rank)


def normalize(word, raw: Iterable[Sequence], cr: CartanRealization) -> BSElement:
    """Normal form of sum over ``raw`` of p0 (x) p1 (x) ... (x) pk."""
    word = tuple(word)
    total = zero(word, cr)
    for tup in raw:
        tup = [cr.const(p) if is_scalar(p) else p for p in tup]
        if len(tup) != len(word) + 1:
            raise WordMismatch(f"tensor of {len(tup)} factors does not fit word {word}")
        e = BSElement((), {(): tup[0]})
        for t, p in zip(word, tup[1:]):
            e = right_mul(append_bit(e, t, 0), p, cr)
        total = add(total, e)
    return total


def denormalize(e: BSElement, cr: CartanRealization) -> list[tuple]:
    """A list of pure tensors (c, x_t1^i1, ..., x_tk^ik) summing to ``e``."""
    out = []
    for bits, c in sorted(e.coeffs.items()):
        out.append((c,) + tuple(cr.x(t) if b else cr.one() for t, b in zip(e.word, bits)))
    return out


def is_superior(e: BSElement) -> bool:
    """e lies in R_+ . theta: every coefficient has zero constant term."""
    return all(p.constant_term() == 0 for p in e.coeffs.values())


def is_normalsup(e: BSElement, cr: CartanRealization) -> bool:
    """e lies in (normal element) + R_+ . theta."""
    return is_superior(add(e, scale(normal_element(e.word, cr), -1)))


def normal_part(e: BSElement, cr: CartanRealization) -> Polynomial:
    return e.coefficient((1,) * len(e.word), cr.rank)


# -- morphisms -------------------------------------------------------------------

@dataclass
class BSMorphism:
    source: tuple
    target: tuple
    images: dict
    degree: int

    def __post_init__(self):
        self.source = tuple(self.source)
        self.target = tuple(self.target)
        self.images = {b: e for b, e in self.images.items() if not e.is_zero()}
        for e in self.images.values():
            if e.word != self.target:
                raise WordMismatch(f"image over {e.word} but target is {self.target}")

    def image(self, bits: Bits) -> BSElement:
        return self.images.get(tuple(bits)) or BSElement(self.target, {})

    def is_zero(self) -> bool:
        return not self.images

    def __eq__(self, other):
        if not isinstance(other, BSMorphism):
            return NotImplemented
        return (self.source, self.target, self.images) == (other.source, other.target, other.images) and (
            self.is_zero() or self.degree == other.degree)

    def __str__(self):
        lines = [f"{self.source} -> {self.target}, degree {self.degree}"]
        for b in cube(len(self.source)):
            lines.append(f"  [{bits_str(b)}] -> {self.image(b)}")
        return "\n".join(lines)


def identity(word, cr: CartanRealization) -> BSMorphism:
    word = tuple(word)
    return BSMorphism(word, word, {b: basis_element(word, b, cr) for b in cube(len(word))}, 0)


def apply(f: BSMorphism, e: BSElement) -> BSElement:
    if e.word != f.source:
        raise WordMismatch(f"element of {e.word} fed to a morphism from {f.source}")
    acc: dict = {}
    for bits, c in e.coeffs.items():
        img = f.images.get(bits)
        if img is None:
            continue
        for b2, p in img.coeffs.items():
            _acc_add(acc, b2, p, c)
    nvars = next(iter(e.coeffs.values())).nvars if e.coeffs else 0
    return _acc_finish(acc, f.target, nvars)


def compose(g: BSMorphism, f: BSMorphism) -> BSMorphism:
    """g o f."""
    if f.target != g.source:
        raise WordMismatch(f"cannot compose: target {f.target} != source {g.source}")
    return BSMorphism(f.source, g.target, {b: apply(g, e) for b, e in f.images.items()}, f.degree + g.degree)


def morphism_add(f: BSMorphism, g: BSMorphism) -> BSMorphism:
    if (f.source, f.target) != (g.source, g.target):
        raise WordMismatch("cannot add morphisms between different bimodules")
    images = dict(f.images)
    for b, e in g.images.items():
        images[b] = add(images[b], e) if b in images else e
    return BSMorphism(f.source, f.target, images, f.degree if not f.is_zero() else g.degree)


def morphism_scale(f: BSMorphism, c) -> BSMorphism:
    return BSMorphism(f.source, f.target, {b: scale(e, c) for b, e in f.images.items()}, f.degree)


def morphism_right_mul(f: BSMorphism, p: Polynomial, cr: CartanRealization) -> BSMorphism:
    """(f p)(m) = f(m) p."""
    d = p.degree() if p else 0
    return BSMorphism(f.source, f.target, {b: right_mul(e, p, cr) for b, e in f.images.items()}, f.degree + d)


def m_s(s: int, cr: CartanRealization) -> BSMorphism:
    """theta_s -> R, p (x) q -> pq."""
    return BSMorphism((s,), (), {(0,): BSElement((), {(): cr.one()}), (1,): BSElement((), {(): cr.x(s)})}, 0)


def _i_s(s: int, cr: CartanRealization, keep: bool) -> BSMorphism:
    # p (x) q (x) r -> p I'_s(q) r  (keep=False)  or  p I'_s(q) (x) r  (keep=True)
    images = {}
    for b in cube(2):
        q = cr.x(s) if b[0] else cr.one()
        r = cr.x(s) if b[1] else cr.one()
        c = decompose_s(q, s, cr)[1]
        if keep:
            images[b] = normalize((s,), [(c, r)], cr)
        else:
            images[b] = BSElement((), {(): c * r})
    return BSMorphism((s, s), (s,) if keep else (), images, -2)


def i_s0(s: int, cr: CartanRealization) -> BSMorphism:
    return _i_s(s, cr, keep=False)


def i_s1(s: int, cr: CartanRealization) -> BSMorphism:
    return _i_s(s, cr, keep=True)


def tensor_id(f: BSMorphism, left, right, cr: CartanRealization) -> BSMorphism:
    """Id_left (x) f (x) Id_right."""
    left, right = tuple(left), tuple(right)
    if not left and not right:
        return f
    images = {}
    for a in cube(len(left)):
        for i in cube(len(f.source)):
            img = f.images.get(i)
            if img is None:
                continue
            acc: dict = {}
            for j, coef in img.coeffs.items():
                for mono, c in coef.terms.items():
                    for a2, q in _basis_times_monomial(left, a, mono, cr).items():
                        _acc_add(acc, a2 + j, q.scale(c))
            base = _acc_finish(acc, left + f.target, cr.rank)
            for c_bits in cube(len(right)):
                images[a + i + c_bits] = BSElement(
                    left + f.target + right, {b + c_bits: p for b, p in base.coeffs.items()})
    return BSMorphism(left + f.source + right, left + f.target + right, images, f.degree)


# -- validation ------------------------------------------------------------------

@dataclass
class ValidationReport:
    passed: bool
    witnesses: list

    def __bool__(self):
        return self.passed


def validate_morphism(f: BSMorphism, cr: CartanRealization, max_witnesses: int = 5) -> ValidationReport:
    """Check right linearity against every x_u on every basis element, and homogeneity of degree delta."""
    witnesses = []
    for b in cube(len(f.source)):
        img = f.image(b)
        for p in img.coeffs.values():
            if not p.is_homogeneous():
                witnesses.append(("inhomogeneous", bits_str(b)))
        for d in img.degrees():
            if d - 2 * sum(b) != f.degree:
                witnesses.append(("degree", bits_str(b), d - 2 * sum(b)))
        for u in range(cr.rank):
            lhs = apply(f, BSElement(f.source, basis_times(f.source, b, cr.x(u), cr)))
            rhs = right_mul(img, cr.x(u), cr)
            if lhs != rhs:
                witnesses.append(("right-linearity", bits_str(b), u))
        if len(witnesses) >= max_witnesses:
            break
    return ValidationReport(not witnesses, witnesses[:max_witnesses])


# -- the Hom solver -------------------------------------------------------------

class HomCoordinates:
    """Indexing of the rational unknowns of a degree-delta morphism theta_src -> theta_tgt.

    An unknown is (source bits, target bits, monomial): the coefficient of
    that monomial in the left coefficient of b_target inside f(b_source).
    """

    def __init__(self, source, target, degree: int, nvars: int):
        self.source, self.target, self.degree, self.nvars = tuple(source), tuple(target), degree, nvars
        self.keys: list = []
        self.index: dict = {}
        for i in cube(len(self.source)):
            for j in cube(len(self.target)):
                for mono in monomials_of_degree(2 * sum(i) + degree - 2 * sum(j), nvars):
                    self.index[(i, j, mono)] = len(self.keys)
                    self.keys.append((i, j, mono))

    def __len__(self):
        return len(self.keys)

    def vector(self, f: BSMorphism) -> dict:
        vec = {}
        for i, e in f.images.items():
            for j, p in e.coeffs.items():
                for mono, c in p.terms.items():
                    k = self.index.get((i, j, mono))
                    if k is None:
                        raise ValueError(f"morphism has a term outside degree {self.degree}")
                    vec[k] = c
        return vec

    def morphism(self, vec: dict) -> BSMorphism:
        images: dict = {}
        for k, c in vec.items():
            i, j, mono = self.keys[k]
            images.setdefault(i, {}).setdefault(j, {})[mono] = Rational(c)
        return BSMorphism(
            self.source, self.target,
            {i: BSElement(self.target, {j: Polynomial._raw(t, self.nvars) for j, t in d.items()})
             for i, d in images.items()},
            self.degree)


def hom_constraints(coords: HomCoordinates, cr: CartanRealization):
    """Rows expressing f(b x_u) = f(b) x_u for every basis element b and generator u."""
    src, tgt = coords.source, coords.target
    index = coords.index
    for i in cube(len(src)):
        for u in range(cr.rank):
            xu = cr.x(u)
            rows: dict = {}
            # f(b_i x_u) = sum c_{i'} f(b_{i'})
            for i2, c in basis_times(src, i, xu, cr).items():
                for j in cube(len(tgt)):
                    for mu in monomials_of_degree(2 * sum(i2) + coords.degree - 2 * sum(j), cr.rank):
                        var = index[(i2, j, mu)]
                        for m, cv in c.terms.items():
                            nu = tuple(a + b for a, b in zip(m, mu))
                            row = rows.setdefault((j, nu), {})
                            row[var] = row.get(var, 0) + cv
            # - f(b_i) x_u = - sum F_{ij} (b_j x_u)
            for j in cube(len(tgt)):
                mus = monomials_of_degree(2 * sum(i) + coords.degree - 2 * sum(j), cr.rank)
                if not mus:
                    continue
                for j2, d in basis_times(tgt, j, xu, cr).items():
                    for mu in mus:
                        var = index[(i, j, mu)]
                        for m, dv in d.terms.items():
                            nu = tuple(a + b for a, b in zip(m, mu))
                            row = rows.setdefault((j2, nu), {})
                            row[var] = row.get(var, 0) - dv
            for row in rows.values():
                row = {k: v for k, v in row.items() if v}
                if row:
                    yield row


def _mono_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def bimodule_presentation(word, cr: CartanRealization) -> tuple[list, dict]:
    """A minimal set of bimodule generators of theta_word and how to reach every basis element.

    Returns ``(gens, expr)``: ``gens`` is a list of bit tuples (the generators
    are the corresponding normal basis elements) and ``expr[i]`` is a list of
    ``(c, mu, g, nu)`` with b_i = sum c * x^mu * b_gens[g] * x^nu.  Generators
    are chosen degree by degree (graded Nakayama): b_i becomes a generator
    exactly when it is not in the sub-bimodule generated by earlier ones.
    """
    word = tuple(word)
    cache = cr._cache.setdefault("presentation", {})
    if word in cache:
        return cache[word]
    n, nv = len(word), cr.rank
    gens: list = []
    expr: dict = {}
    for k in range(n + 1):
        D = 2 * k
        index: dict = {}
        dim = sum(len(monomials_of_degree(D - 2 * sum(i), nv)) for i in cube(n) if sum(i) <= k)

        def row_of(coeffs: dict) -> dict:
            row = {}
            for b, p in coeffs.items():
                for mono, c in p.terms.items():
                    col = index.setdefault((b, mono), len(index))
                    row[col] = row.get(col, 0) + c
            return row

        candidates = []
        for gi, g in enumerate(gens):
            rest = D - 2 * sum(g)
            for dmu in range(rest // 2 + 1):
                for mu in monomials_of_degree(2 * dmu, nv):
                    m = Polynomial.monomial(mu)
                    for nu in monomials_of_degree(rest - 2 * dmu, nv):
                        prod = _basis_times_monomial(word, g, nu, cr)
                        candidates.append((row_of({b: m * q for b, q in prod.items()}), (mu, gi, nu)))
        # sparse rows first keeps fill-in (and the tracked combinations) small
        candidates.sort(key=lambda rc: (len(rc[0]), rc[1]))
        ech = TrackedEchelon()
        for row, tag in candidates:
            if ech.rank == dim:
                break
            ech.add_tagged(row, tag)
        zero_mono = (0,) * nv
        for i in cube(n):
            if sum(i) != k:
                continue
            combo = ech.express(row_of({i: cr.one()}))
            if combo is None:
                gens.append(i)
                ech.add_tagged(row_of({i: cr.one()}), (zero_mono, len(gens) - 1, zero_mono))
                expr[i] = [(Rational(1), zero_mono, len(gens) - 1, zero_mono)]
            else:
                expr[i] = [(c, mu, g, nu) for (mu, g, nu), c in sorted(combo.items())]
    cache[word] = (gens, expr)
    return gens, expr


def _hom_by_generators(source, target, degree: int, cr: CartanRealization) -> list[BSMorphism]:
    """Hom solver whose unknowns are the images of a generating set of theta_source.

    Every basis image is then a linear expression in those unknowns (via the
    presentation), so left linearity holds by construction, and right
    linearity against each x_u on every basis element cuts out the Hom space
    exactly: a bimodule map is determined by its values on generators.
    """
    nv = cr.rank
    gens, pres = bimodule_presentation(source, cr)
    variables: list = []
    for gi, g in enumerate(gens):
        for j in cube(len(target)):
            for mono in monomials_of_degree(2 * sum(g) + degree - 2 * sum(j), nv):
                variables.append((gi, j, mono))
    if not variables:
        return []
    by_gen: dict = {}
    for vi, (gi, j, mono) in enumerate(variables):
        by_gen.setdefault(gi, []).append((vi, j, mono))

    def bump(acc: dict, key, vi, c):
        d = acc.setdefault(key, {})
        nvv = d.get(vi, 0) + c
        if nvv:
            d[vi] = nvv
        else:
            d.pop(vi)

    # images[i]: {(target bits, monomial): {variable: coefficient}}
    images: dict = {}
    for i in cube(len(source)):
        acc: dict = {}
        for a, mu, gi, nu in pres[i]:
            for vi, j, mono in by_gen.get(gi, ()):
                left = _mono_add(mu, mono)
                for j2, q in _basis_times_monomial(target, j, nu, cr).items():
                    for m, c in q.terms.items():
                        bump(acc, (j2, _mono_add(left, m)), vi, a * c)
        images[i] = acc
    images_orig = images

    def rows(level: int, images: dict):
        for i in cube(len(source)):
            if sum(i) != level:
                continue
            for u in range(nv):
                eu = tuple(1 if w == u else 0 for w in range(nv))
                acc: dict = {}
                for i2, c in _basis_times_monomial(source, i, eu, cr).items():
                    for (j2, m), vd in images[i2].items():
                        for mc, cc in c.terms.items():
                            key = (j2, _mono_add(m, mc))
                            for vi, x in vd.items():
                                bump(acc, key, vi, cc * x)
                for (j, m), vd in images[i].items():
                    for j2, q in _basis_times_monomial(target, j, eu, cr).items():
                        for mq, cq in q.terms.items():
                            key = (j2, _mono_add(m, mq))
                            for vi, x in vd.items():
                                bump(acc, key, vi, -cq * x)
                for row in acc.values():
                    if row:
                        yield row

    # Impose right linearity one source degree at a time and substitute the
    # current solution space back in, so the (large) high-degree images are
    # only ever expanded over the few parameters that survive.
    params = [{vi: Rational(1)} for vi in range(len(variables))]
    for level in range(len(source) + 1):
        basis = nullspace(rows(level, images), len(params))
        if len(basis) == len(params):
            continue
        params = [_combine(params, vec) for vec in basis]
        images = {i: {key: _combine_coeffs(vd, basis) for key, vd in e.items()} for i, e in images.items()}
        images = {i: {key: vd for key, vd in e.items() if vd} for i, e in images.items()}
        if not params:
            return []

    result = []
    for vec in params:
        imgs = {}
        for i, e in images_orig.items():
            coeffs: dict = {}
            for (j, m), vd in e.items():
                c = sum((x * vec[vi] for vi, x in vd.items() if vi in vec), Rational(0))
                if c:
                    coeffs.setdefault(j, {})[m] = c
            imgs[i] = BSElement(target, {j: Polynomial._raw(t, nv) for j, t in coeffs.items()})
        result.append(BSMorphism(source, target, imgs, degree))
    return result


def _combine(vectors: list, coeffs: dict) -> dict:
    """sum_k coeffs[k] * vectors[k] for sparse dict vectors."""
    out: dict = {}
    for k, c in coeffs.items():
        for key, v in vectors[k].items():
            out[key] = out.get(key, 0) + c * v
    return {key: v for key, v in out.items() if v}


def _combine_coeffs(vd: dict, basis: list) -> dict:
    """Rewrite a linear form over old parameters in terms of the new ones (basis[z] in old coordinates)."""
    out = {}
    for z, vec in enumerate(basis):
        if len(vd) < len(vec):
            c = sum((x * vec[y] for y, x in vd.items() if y in vec), Rational(0))
        else:
            c = sum((x * vd[y] for y, x in vec.items() if y in vd), Rational(0))
        if c:
            out[z] = c
    return out


def _hom_full(source, target, degree: int, cr: CartanRealization) -> list[BSMorphism]:
    coords = HomCoordinates(source, target, degree, cr.rank)
    if not len(coords):
        return []
    return [coords.morphism(v) for v in nullspace(hom_constraints(coords, cr), len(coords))]


def solve_hom_degree(source, target, degree: int, cr: CartanRealization,
                     method: str = "generators") -> list[BSMorphism]:
    """A basis of the degree-``degree`` bimodule morphisms theta_source -> theta_target.

    ``method="full"`` takes every coefficient of every basis image as an
    unknown and imposes right linearity (simple, but the systems get large).
    ``method="generators"`` (default) only takes the images of a minimal
    generating set as unknowns; both give the same solution space.
    """
    source, target = tuple(source), tuple(target)
    if method not in ("generators", "full"):
        raise ValueError(f"unknown method {method!r}")
    cache = cr._cache.setdefault("solve_hom", {})
    key = (source, target, degree, method)
    if key in cache:
        return list(cache[key])
    if degree % 2:
        result = []
    elif method == "full":
        result = _hom_full(source, target, degree, cr)
    else:
        result = _hom_by_generators(source, target, degree, cr)
    cache[key] = tuple(result)
    return result


def solve_braid(s: int, r: int, cr: CartanRealization) -> BSMorphism:
    """The degree-0 morphism theta_s theta_r ... -> theta_r theta_s ... (m factors each) normalized on the normal element."""
    m = cr.coxeter.order(s, r)
    if s == r or m == INF:
        raise PreconditionViolation(f"no braid relation between {s} and {r}")
    cache = cr._cache.setdefault("braid", {})
    if (s, r) in cache:
        return cache[(s, r)]
    X, X2 = alternating(s, r, m), alternating(r, s, m)
    sol = solve_hom_degree(X, X2, 0, cr)
    if len(sol) != 1:
        raise InternalError(f"degree-0 Hom({X}, {X2}) has dimension {len(sol)}, expected 1")
    f = sol[0]
    c = normal_part(apply(f, normal_element(X, cr)), cr)
    if c.degree() != 0:
        raise InternalError(f"normal part of f_{s},{r}(normal element) is {c}, expected a nonzero scalar")
    f = morphism_scale(f, 1 / c.constant_term())
    cache[(s, r)] = f
    return f


def braid_composite(t, s: int, cr: CartanRealization) -> tuple[BSMorphism, list]:
    """The composite of braid morphisms along ``coxeter.braid_path(t, s)`` and the path itself."""
    t = tuple(t)
    cache = cr._cache.setdefault("braid_composite", {})
    if (t, s) in cache:
        return cache[(t, s)]
    moves = coxeter.braid_path(t, s, cr.coxeter)
    F = identity(t, cr)
    word = t
    for mv in moves:
        k = cr.coxeter.order(mv.s, mv.t)
        step = tensor_id(solve_braid(mv.s, mv.t, cr), word[:mv.position], word[mv.position + k:], cr)
        F = compose(step, F)
        word = mv.apply(word, cr.coxeter)
    cache[(t, s)] = (F, moves)
    return F, moves


# -- adjunction ----------------------------------------------------------------

def adjoint_F(f: BSMorphism, cr: CartanRealization) -> BSMorphism:
    """Hom(theta_s M, N) -> Hom(M, theta_s N): m -> x_s (x) f(1 (x) m) + 1 (x) f(1 (x) x_s m)."""
    if not f.source:
        raise WordMismatch("source of f must begin with a generator")
    s, M = f.source[0], f.source[1:]
    one = basis_element((s,), (0,), cr)
    xs = basis_element((s,), (0,), cr, coef=cr.x(s))
    images = {}
    for i in cube(len(M)):
        images[i] = add(tensor(xs, f.image((0,) + i), cr), tensor(one, f.image((1,) + i), cr))
    return BSMorphism(M, (s,) + f.target, images, f.degree + 2)


def adjoint_G(g: BSMorphism, cr: CartanRealization) -> BSMorphism:
    """Inverse of ``adjoint_F``: writing g(m) = 1 (x) g1(m) + x_s (x) g2(m), send lambda (x) m -> lambda g2(m)."""
    if not g.target:
        raise WordMismatch("target of g must begin with a generator")
    s, N = g.target[0], g.target[1:]
    images = {}
    for i in cube(len(g.source)):
        acc1: dict = {}
        acc2: dict = {}
        for (a, *j), c in g.image(i).coeffs.items():
            inv, div = decompose_s(c, s, cr)
            factor = cr.x(s) if a else None
            _acc_add(acc1, tuple(j), inv, factor)
            _acc_add(acc2, tuple(j), div, factor)
        g1 = _acc_finish(acc1, N, cr.rank)
        g2 = _acc_finish(acc2, N, cr.rank)
        images[(0,) + i] = g2
        images[(1,) + i] = g1
    return BSMorphism((s,) + g.source, N, images, g.degree - 2)
