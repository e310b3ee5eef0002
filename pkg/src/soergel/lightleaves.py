"""
Light leaves: the binary tree of morphisms out of theta_s1 ... theta_sn.

A leaf at stage n is indexed by a bit vector i (one bit per letter).  At each
step the current target word t either does not have s_n as a right descent
(ascent, j = 0) or does (descent, j = 1):

    ascent,  i = 0:  (Id^k (x) m^s) o (a (x) Id)        target t
    ascent,  i = 1:  a (x) Id                          target t s
    descent, i = 0:  (Id^(k-1) (x) i^s_0) o (F (x) Id) o (a (x) Id)    target t' minus its last letter
    descent, i = 1:  (Id^(k-1) (x) i^s_1) o (F (x) Id) o (a (x) Id)    target t'

where F is the composite of braid morphisms along a fixed braid path taking t
to a word t' ending in s.  Light leaves are the leaves whose target is empty;
they form a basis of Hom(theta_s, R) as a right R-module.

Leaves are memoized per (prefix word, bits) on the realization, and a leaf's
morphism is never materialized unless asked for: images of basis elements are
computed on demand through the parent chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bsmod, coxeter, hecke
from .bsmod import BSElement, BSMorphism, cube
from .errors import PreconditionViolation, WordMismatch
from .hecke import LaurentPoly
from .linalg import Echelon
from .polyring import CartanRealization, Polynomial, monomials_of_degree


@dataclass(eq=False)
class Leaf:
    word: tuple
    bits_i: tuple
    bits_j: tuple
    target: tuple
    weight: int
    path_log: tuple
    nvars: int
    parent: "Leaf | None" = field(default=None, repr=False)
    stage: BSMorphism | None = field(default=None, repr=False)
    _images: dict = field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return -2 * self.weight

    @property
    def is_light(self) -> bool:
        return not self.target

    def image(self, bits) -> BSElement:
        """The leaf morphism applied to the normal basis element b_bits."""
        bits = tuple(bits)
        hit = self._images.get(bits)
        if hit is not None:
            return hit
        if len(bits) != len(self.word):
            raise WordMismatch(f"bit vector {bits} does not fit word {self.word}")
        if self.parent is None:
            e = BSElement((), {(): Polynomial.constant(1, self.nvars)})
        else:
            e = bsmod.append_bit(self.parent.image(bits[:-1]), self.word[-1], bits[-1])
            if self.stage is not None:
                e = bsmod.apply(self.stage, e)
        self._images[bits] = e
        return e

    def morphism(self) -> BSMorphism:
        return BSMorphism(self.word, self.target, {b: self.image(b) for b in cube(len(self.word))}, self.degree)

    def chain(self) -> list["Leaf"]:
        """The ancestors of this leaf, root first, ending with the leaf itself."""
        out = []
        node = self
        while node is not None:
            out.append(node)
            node = node.parent
        return out[::-1]


# -- the four stage maps ----------------------------------------------------

def _stage_map(kind: str, t: tuple, s: int, cr: CartanRealization) -> tuple[BSMorphism | None, tuple, tuple]:
    """(map theta_t theta_s -> theta_new, new target, braid moves used)."""
    cache = cr._cache.setdefault("ll_stage", {})
    key = (kind, t, s)
    if key in cache:
        return cache[key]
    if kind == "asc0":
        result = (bsmod.tensor_id(bsmod.m_s(s, cr), t, (), cr), t, ())
    elif kind == "asc1":
        result = (None, t + (s,), ())
    else:
        F, moves = bsmod.braid_composite(t, s, cr)
        t2 = F.target
        cap = bsmod.i_s0(s, cr) if kind == "desc0" else bsmod.i_s1(s, cr)
        head = bsmod.tensor_id(cap, t2[:-1], (), cr)
        f = bsmod.compose(head, bsmod.tensor_id(F, (), (s,), cr))
        result = (f, head.target, tuple(moves))
    cache[key] = result
    return result


def root(cr: CartanRealization) -> Leaf:
    cache = cr._cache.setdefault("ll_leaf", {})
    key = ((), ())
    if key not in cache:
        cache[key] = Leaf((), (), (), (), 0, (), cr.rank)
    return cache[key]


def step(leaf: Leaf, i: int, s: int, cr: CartanRealization) -> Leaf:
    """The child of ``leaf`` obtained by adding the letter s with bit i."""
    if i not in (0, 1):
        raise PreconditionViolation(f"bit must be 0 or 1, got {i!r}")
    cr.coxeter.check_word((s,))
    cache = cr._cache.setdefault("ll_leaf", {})
    word, bits = leaf.word + (s,), leaf.bits_i + (i,)
    hit = cache.get((word, bits))
    if hit is not None:
        return hit
    j = 1 if coxeter.descends_right(leaf.target, s, cr.coxeter) else 0
    kind = ("desc" if j else "asc") + str(i)
    stage, target, moves = _stage_map(kind, leaf.target, s, cr)
    log = leaf.path_log
    if j:
        log = log + ((len(word), leaf.target, s, moves),)
    child = Leaf(word, bits, leaf.bits_j + (j,), target, leaf.weight + j, log, cr.rank, leaf, stage)
    cache[(word, bits)] = child
    return child


def leaf(word, bits, cr: CartanRealization) -> Leaf:
    word, bits = tuple(word), tuple(bits)
    if len(word) != len(bits):
        raise WordMismatch(f"bit vector {bits} does not fit word {word}")
    node = root(cr)
    for s, i in zip(word, bits):
        node = step(node, i, s, cr)
    return node


def build_tree(word, cr: CartanRealization) -> list[Leaf]:
    """All 2^n leaves, in lexicographic order of their bit vectors."""
    word = cr.coxeter.check_word(word)
    return [leaf(word, b, cr) for b in cube(len(word))]


# -- the order and the light leaves -------------------------------------------

def order_key(bits) -> tuple:
    """Sort key realizing the total order: bit-sum first, then a 1 at the first difference is smaller."""
    return (sum(bits), tuple(1 - b for b in bits))


def precedes(a, b) -> bool:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise WordMismatch(f"cannot compare bit vectors of lengths {len(a)} and {len(b)}")
    return order_key(a) < order_key(b)


def light_leaves(word, cr: CartanRealization) -> list[Leaf]:
    return sorted((lf for lf in build_tree(word, cr) if lf.is_light), key=lambda lf: order_key(lf.bits_i))


def half_tree(word, cr: CartanRealization, first_bit: int = 1) -> list[Leaf]:
    """Leaves whose first bit is ``first_bit`` (the left half of the drawn tree keeps s_1)."""
    return [lf for lf in build_tree(word, cr) if lf.bits_i[:1] == (first_bit,)]


# -- triangularity -------------------------------------------------------------

@dataclass
class EvaluationMatrix:
    index: list
    entries: dict          # (i, i') -> Polynomial, only where evaluated
    diagonal_ok: bool
    lower_ok: bool
    failures: list

    @property
    def passed(self) -> bool:
        return self.diagonal_ok and self.lower_ok

    def scalar(self, a, b):
        """The entry as a rational when it is a constant, else None (0 for short-circuited entries)."""
        p = self.entries.get((tuple(a), tuple(b)))
        if p is None:
            return 0
        return p.constant_term() if p.degree() <= 0 else None


def evaluation_matrix(word, cr: CartanRealization, full: bool = False) -> EvaluationMatrix:
    """Evaluate each light leaf f_i on each x_i' (i, i' light-leaf indices).

    The diagonal must be 1 and entries with i succeeding i' must vanish.
    When sum(i) > sum(i') the value has negative degree and is 0 without
    evaluation.  With ``full`` the entries above the diagonal are evaluated
    too (they are polynomials in general).
    """
    leaves = light_leaves(word, cr)
    index = [lf.bits_i for lf in leaves]
    entries: dict = {}
    failures = []
    diag_ok = lower_ok = True
    for lf in leaves:
        a = lf.bits_i
        for b in index:
            below = precedes(b, a)
            if sum(a) > sum(b):
                continue
            if not (below or a == b or full):
                continue
            val = lf.image(b).coefficient((), cr.rank)
            entries[(a, b)] = val
            if a == b and val != Polynomial.constant(1, cr.rank):
                diag_ok = False
                failures.append(("diagonal", a, val))
            if below and not val.is_zero():
                lower_ok = False
                failures.append(("below-diagonal", a, b, val))
    return EvaluationMatrix(index, entries, diag_ok, lower_ok, failures)


def normalsup_chain(lf: Leaf, cr: CartanRealization) -> bool:
    """Every ancestor sends its own x_i to a normalsup element of its target."""
    for node in lf.chain():
        if not bsmod.is_normalsup(node.image(node.bits_i), cr):
            return False
    return True


# -- census -------------------------------------------------------------------

def graded_census(word, cr: CartanRealization) -> dict:
    """{canonical target element: sum of q^weight over leaves with that target}."""
    out: dict = {}
    for lf in build_tree(word, cr):
        x = coxeter.canonical(lf.target, cr.coxeter)
        out[x] = out.get(x, LaurentPoly()) + LaurentPoly.q_power(lf.weight)
    return {x: p for x, p in out.items() if p.coeffs}


def census_matches_hecke(word, cr: CartanRealization) -> bool:
    return graded_census(word, cr) == hecke.hecke_coefficients(word, cr.coxeter)


# -- spanning check against the brute-force solver -----------------------------

def right_multiples(morphisms, degree: int, cr: CartanRealization) -> list[BSMorphism]:
    """All f * x^mu with deg f + deg mu = degree."""
    out = []
    for f in morphisms:
        d = degree - f.degree
        if d < 0 or d % 2:
            continue
        for mu in monomials_of_degree(d, cr.rank):
            out.append(bsmod.morphism_right_mul(f, Polynomial.monomial(mu), cr))
    return out


def span_rank(morphisms, source, target, degree: int, cr: CartanRealization) -> int:
    coords = bsmod.HomCoordinates(source, target, degree, cr.rank)
    ech = Echelon()
    for f in morphisms:
        ech.add(coords.vector(f))
    return ech.rank


# -- Hom between two Bott-Samelson bimodules ------------------------------------

def hom_basis_pairs(source, target, cr: CartanRealization) -> list[tuple[Leaf, BSMorphism]]:
    """Basis of Hom(theta_source, theta_target) from the light leaves of reverse(target) + source.

    A light leaf f of the concatenated word gives
        m  |->  sum over i in {0,1}^k of  x^g_i * f(b_{(1-i_k, ..., 1-i_1)} (x) m)
    with x^g_i = x_t1^i1 (x) ... (x) x_tk^ik (x) 1 in theta_target, k = |target|.
    """
    source, target = tuple(source), tuple(target)
    k = len(target)
    word = tuple(reversed(target)) + source
    xg = {i: bsmod.normalize(target, [tuple(cr.x(t) if b else cr.one() for t, b in zip(target, i)) + (cr.one(),)], cr)
          for i in cube(k)}
    out = []
    for lf in light_leaves(word, cr):
        images = {}
        for a in cube(len(source)):
            total = bsmod.zero(target, cr)
            for i, g in xg.items():
                c = tuple(1 - b for b in reversed(i))
                val = lf.image(c + a).coefficient((), cr.rank)
                if not val.is_zero():
                    total = bsmod.add(total, bsmod.right_mul(g, val, cr))
            images[a] = total
        out.append((lf, BSMorphism(source, target, images, lf.degree + 2 * k)))
    return out


def hom_basis(source, target, cr: CartanRealization) -> list[BSMorphism]:
    return [f for _, f in hom_basis_pairs(source, target, cr)]


# -- the choice-dependence example ---------------------------------------------

@dataclass
class BraidChoiceReport:
    f_value: object
    g_value: object
    kernel_zero: bool

    @property
    def passed(self) -> bool:
        return self.f_value == 1 and self.g_value == 0 and self.kernel_zero


def braid_choice_pair(s: int, r: int, cr: CartanRealization) -> tuple[BSMorphism, BSMorphism, BSElement]:
    """Two morphisms theta_s theta_r theta_s theta_s theta_r theta_s -> R built from different braid choices.

    f caps the three adjacent pairs from the middle outwards with m o i_1;
    g first applies f_{s,r} and then f_{r,s} to the first three factors.
    Also returns the test element x = 1(x)x_r(x)1(x)x_s(x)1(x)x_s(x)1 + 1(x)1(x)x_r(x)x_s(x)1(x)x_s(x)1.
    """
    if cr.coxeter.order(s, r) != 3:
        raise PreconditionViolation("the example needs m(s,r) = 3")

    def cap(t):
        return bsmod.compose(bsmod.m_s(t, cr), bsmod.i_s1(t, cr))

    word = (s, r, s, s, r, s)
    f = bsmod.tensor_id(cap(s), (s, r), (r, s), cr)
    f = bsmod.compose(bsmod.tensor_id(cap(r), (s,), (s,), cr), f)
    f = bsmod.compose(cap(s), f)
    fsr = bsmod.tensor_id(bsmod.solve_braid(s, r, cr), (), (s, r, s), cr)
    frs = bsmod.tensor_id(bsmod.solve_braid(r, s, cr), (), (s, r, s), cr)
    g = bsmod.compose(f, bsmod.compose(frs, fsr))
    one, xs, xr = cr.one(), cr.x(s), cr.x(r)
    xbar = bsmod.normalize(word, [(one, xr, one, xs, one, xs, one), (one, one, xr, xs, one, xs, one)], cr)
    return f, g, xbar


def check_braid_choice(s: int, r: int, cr: CartanRealization) -> BraidChoiceReport:
    f, g, xbar = braid_choice_pair(s, r, cr)
    fv = bsmod.apply(f, xbar).coefficient((), cr.rank)
    gv = bsmod.apply(g, xbar).coefficient((), cr.rank)
    one = cr.one()
    r_difference = bsmod.normalize((s, r, s), [(one, cr.x(r), one, one), (one, one, cr.x(r), one)], cr)
    zero = bsmod.apply(bsmod.solve_braid(s, r, cr), r_difference).is_zero()
    as_scalar = lambda p: p.constant_term() if p.degree() <= 0 else p
    return BraidChoiceReport(as_scalar(fv), as_scalar(gv), zero)
