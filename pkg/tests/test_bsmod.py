from __future__ import annotations

import random

import pytest

from soergel import bsmod
from soergel.bsmod import BSElement, BSMorphism, basis_element, cube, normal_element
from soergel.errors import PreconditionViolation, WordMismatch
from soergel.polyring import act, random_polynomial
from soergel.scalars import Rational

from conftest import dihedral

S, R = 0, 1


# -- independent oracle: localization theta_w -> prod_e R -----------------------------
# p0 (x) p1 (x) ... (x) pk  ->  ( p0 * w1(p1) * w2(p2) ... )_e  with  w_j = s1^e1 ... sj^ej.
# Well defined on the tensor product over the invariant rings, and uses only the group action.

def localize_tensor(word, factors, cr):
    out = {}
    for e in cube(len(word)):
        total = factors[0]
        w = ()
        for t, bit, p in zip(word, e, factors[1:]):
            if bit:
                w = w + (t,)
            total = total * act(w, p, cr)
        out[e] = total
    return out


def localize(el: BSElement, cr):
    out = {e: cr.zero() for e in cube(len(el.word))}
    for bits, c in el.coeffs.items():
        factors = [c] + [cr.x(t) if b else cr.one() for t, b in zip(el.word, bits)]
        for e, v in localize_tensor(el.word, factors, cr).items():
            out[e] = out[e] + v
    return out


def rand_tensor(word, cr, rng, max_degree=4):
    return [random_polynomial(cr.rank, max_degree, rng, nterms=3) for _ in range(len(word) + 1)]


WORDS = [(), (S,), (S, R), (S, S), (S, R, S), (R, S, S, R)]


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_normalize_matches_localization(m):
    cr = dihedral(m)
    rng = random.Random(m)
    for word in WORDS:
        for _ in range(4):
            tensors = [rand_tensor(word, cr, rng) for _ in range(2)]
            el = bsmod.normalize(word, tensors, cr)
            want = {e: cr.zero() for e in cube(len(word))}
            for tup in tensors:
                for e, v in localize_tensor(word, tup, cr).items():
                    want[e] = want[e] + v
            assert localize(el, cr) == want


@pytest.mark.parametrize("m", [3, 4])
def test_right_mul_and_tensor_match_localization(m):
    cr = dihedral(m)
    rng = random.Random(10 + m)
    for word in WORDS[1:]:
        tup = rand_tensor(word, cr, rng, 2)
        el = bsmod.normalize(word, [tup], cr)
        p = random_polynomial(cr.rank, 3, rng, nterms=3)
        got = localize(bsmod.right_mul(el, p, cr), cr)
        want = localize_tensor(word, tup[:-1] + [tup[-1] * p], cr)
        assert got == want
        other = ((R,), rand_tensor((R,), cr, rng, 2))
        prod = bsmod.tensor(el, bsmod.normalize(other[0], [other[1]], cr), cr)
        merged = tup[:-1] + [tup[-1] * other[1][0]] + other[1][1:]
        assert localize(prod, cr) == localize_tensor(word + other[0], merged, cr)


def test_normal_element_examples(A2):
    assert normal_element((), A2) == BSElement((), {(): A2.one()})
    e = normal_element((S,), A2)
    assert e.coeffs == {(1,): A2.one()} and e.degree() == 2
    assert normal_element((S, R), A2).degree() == 4


def test_normalize_examples(A2):
    xs, xt = A2.x(S), A2.x(R)
    assert bsmod.normalize((), [(xs,)], A2) == BSElement((), {(): xs})
    assert bsmod.normalize((S,), [(1, xs ** 2)], A2) == BSElement((S,), {(0,): xs ** 2})
    got = bsmod.normalize((S,), [(1, xt)], A2)
    assert got == BSElement((S,), {(0,): xt + xs.scale(Rational(1, 2)), (1,): A2.const(Rational(-1, 2))})


def test_right_mul_examples(A2):
    xs = A2.x(S)
    one = basis_element((S,), (0,), A2)
    assert bsmod.right_mul(one, xs, A2) == basis_element((S,), (1,), A2)
    assert bsmod.right_mul(basis_element((S,), (1,), A2), xs, A2) == BSElement((S,), {(0,): xs ** 2})
    e = bsmod.normalize((S, R), [(xs, 1, xs)], A2)
    assert (e + bsmod.scale(e, -1)).is_zero()


def test_elementary_morphism_examples(A2):
    xs = A2.x(S)
    b = lambda word, bits: basis_element(word, bits, A2)
    assert bsmod.apply(bsmod.m_s(S, A2), b((S,), (1,))) == BSElement((), {(): xs})
    assert bsmod.apply(bsmod.m_s(S, A2), b((S,), (0,))) == BSElement((), {(): A2.one()})
    assert bsmod.apply(bsmod.i_s0(S, A2), b((S, S), (1, 0))) == BSElement((), {(): A2.one()})
    assert bsmod.apply(bsmod.i_s0(S, A2), b((S, S), (0, 0))).is_zero()
    assert bsmod.apply(bsmod.i_s1(S, A2), b((S, S), (1, 1))) == b((S,), (1,))
    chained = bsmod.compose(bsmod.m_s(S, A2), bsmod.i_s1(S, A2))
    assert bsmod.apply(chained, b((S, S), (1, 1))) == BSElement((), {(): xs})
    for f in (bsmod.m_s(S, A2), bsmod.i_s0(S, A2), bsmod.i_s1(S, A2)):
        assert bsmod.validate_morphism(f, A2).passed


def test_tensor_id_examples(A2):
    ms = bsmod.m_s(S, A2)
    assert bsmod.tensor_id(ms, (), (), A2) == ms
    f = bsmod.tensor_id(ms, (), (R,), A2)
    assert f.degree == ms.degree
    assert bsmod.apply(f, basis_element((S, R), (1, 1), A2)) == basis_element((R,), (1,), A2, coef=A2.x(S))
    assert bsmod.validate_morphism(bsmod.tensor_id(bsmod.i_s1(R, A2), (S,), (S,), A2), A2).passed


def test_compose_with_identity(A2):
    f = bsmod.i_s1(S, A2)
    assert bsmod.compose(f, bsmod.identity((S, S), A2)) == f
    assert bsmod.compose(bsmod.identity((S,), A2), f) == f
    with pytest.raises(WordMismatch):
        bsmod.compose(f, bsmod.identity((S,), A2))


def test_validate_detects_corruption(A2):
    ms = bsmod.m_s(S, A2)
    bad = BSMorphism(ms.source, ms.target, {(0,): ms.image((0,)), (1,): BSElement((), {(): A2.x(R)})}, 0)
    rep = bsmod.validate_morphism(bad, A2)
    assert not rep.passed and rep.witnesses
    wrong_degree = BSMorphism(ms.source, ms.target, dict(ms.images), 2)
    assert not bsmod.validate_morphism(wrong_degree, A2).passed


def test_solve_hom_degree_examples(A2):
    sol = bsmod.solve_hom_degree((S,), (), 0, A2)
    assert len(sol) == 1
    c = sol[0].image((0,)).coefficient((), 2).constant_term()
    assert sol[0] == bsmod.morphism_scale(bsmod.m_s(S, A2), c)
    assert bsmod.solve_hom_degree((S,), (), -2, A2) == []
    ident = bsmod.solve_hom_degree((), (), 0, A2)
    assert len(ident) == 1 and ident[0].image(()) == BSElement((), {(): A2.one()})
    assert bsmod.solve_hom_degree((S,), (), 1, A2) == []
    with pytest.raises(ValueError):
        bsmod.solve_hom_degree((S,), (), 0, A2, method="nope")


def _same_span(fs, gs, source, target, degree, cr):
    coords = bsmod.HomCoordinates(source, target, degree, cr.rank)
    from soergel.linalg import rank
    a = [coords.vector(f) for f in fs]
    b = [coords.vector(g) for g in gs]
    return rank(a) == rank(b) == rank(a + b) == len(a)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_generator_method_agrees_with_full(m):
    cr = dihedral(m)
    pairs = [((S,), ()), ((S, S), ()), ((S, R), (R,)), ((S, R, S), ()), ((S,), (S,)), ((S, S), (S,)),
             ((S, R), (S, R)), ((S, R, S), (R,))]
    for src, tgt in pairs:
        for d in (-2, 0, 2, 4):
            full = bsmod.solve_hom_degree(src, tgt, d, cr, method="full")
            gen = bsmod.solve_hom_degree(src, tgt, d, cr, method="generators")
            assert len(full) == len(gen)
            assert _same_span(full, gen, src, tgt, d, cr)
            assert all(bsmod.validate_morphism(f, cr).passed for f in gen)


@pytest.mark.parametrize("name", ["A1xA1", "A2", "B2", "G2"])
def test_braid_morphism(name, request):
    cr = request.getfixturevalue(name)
    m = cr.coxeter.order(S, R)
    f = bsmod.solve_braid(S, R, cr)
    X = bsmod.coxeter.alternating(S, R, m)
    assert f.source == X and f.degree == 0
    assert bsmod.normal_part(bsmod.apply(f, normal_element(X, cr)), cr) == cr.one()
    assert bsmod.is_normalsup(bsmod.apply(f, normal_element(X, cr)), cr)
    assert bsmod.validate_morphism(f, cr).passed


def test_braid_m2_is_the_flip(A1xA1):
    f = bsmod.solve_braid(S, R, A1xA1)
    assert f.image((0, 0)) == basis_element((R, S), (0, 0), A1xA1)
    for bits in cube(2):
        assert f.image(bits) == basis_element((R, S), bits[::-1], A1xA1)


def test_braid_kills_r_difference(A2):
    f = bsmod.solve_braid(S, R, A2)
    xr = A2.x(R)
    el = bsmod.normalize((S, R, S), [(1, xr, 1, 1), (1, 1, xr, 1)], A2)
    assert bsmod.apply(f, el).is_zero()


def test_braid_preconditions(Ainf, A2):
    with pytest.raises(PreconditionViolation):
        bsmod.solve_braid(S, R, Ainf)
    with pytest.raises(PreconditionViolation):
        bsmod.solve_braid(S, S, A2)


def test_braid_composite(A2):
    F, moves = bsmod.braid_composite((S, R, S), R, A2)
    assert len(moves) == 1 and F == bsmod.solve_braid(S, R, A2)
    F, moves = bsmod.braid_composite((S, R), R, A2)
    assert moves == [] and F == bsmod.identity((S, R), A2)
    B2 = dihedral(4)
    F, moves = bsmod.braid_composite((S, R, S, R), S, B2)
    assert len(moves) == 1 and F.source == (S, R, S, R) and F.target == (R, S, R, S)
    assert bsmod.validate_morphism(F, B2).passed


def test_superior_and_normalsup(A2):
    e = normal_element((S, R), A2)
    assert bsmod.is_normalsup(e, A2)
    xe = bsmod.left_mul(A2.x(S), e)
    assert bsmod.is_superior(xe) and not bsmod.is_normalsup(xe, A2)


def test_adjunction_examples(A2):
    ms = bsmod.m_s(S, A2)
    Fm = bsmod.adjoint_F(ms, A2)
    assert Fm.source == () and Fm.target == (S,) and Fm.degree == 2
    want = bsmod.normalize((S,), [(A2.x(S), 1), (1, A2.x(S))], A2)
    assert Fm.image(()) == want
    assert bsmod.adjoint_G(Fm, A2) == ms
    i0 = bsmod.i_s0(S, A2)
    assert bsmod.adjoint_G(bsmod.adjoint_F(i0, A2), A2) == i0
    ident = bsmod.identity((S,), A2)
    assert bsmod.adjoint_F(bsmod.adjoint_G(ident, A2), A2) == ident


def test_adjunction_on_solved_morphisms(B2):
    for src, tgt in [((S, R), ()), ((S, R), (R,)), ((S, S), (S,)), ((S, R, S), (R,))]:
        for d in (-2, 0, 2):
            for f in bsmod.solve_hom_degree(src, tgt, d, B2):
                Ff = bsmod.adjoint_F(f, B2)
                assert Ff.degree == f.degree + 2
                assert bsmod.validate_morphism(Ff, B2).passed
                assert bsmod.adjoint_G(Ff, B2) == f


def test_word_mismatch(A2):
    with pytest.raises(WordMismatch):
        basis_element((S,), (0, 1), A2)
    with pytest.raises(WordMismatch):
        bsmod.apply(bsmod.m_s(S, A2), normal_element((R,), A2))
    with pytest.raises(WordMismatch):
        bsmod.normalize((S,), [(1,)], A2)


def random_element(word, cr, rng, degree=None):
    acc = bsmod.zero(word, cr)
    for bits in cube(len(word)):
        if rng.random() < 0.6:
            acc = acc + basis_element(word, bits, cr, coef=random_polynomial(cr.rank, 4, rng, nterms=3))
    return acc


@pytest.mark.parametrize("m", [3, 4])
def test_denormalize_round_trip_and_module_laws(m):
    cr = dihedral(m)
    rng = random.Random(20 + m)
    for word in WORDS:
        for _ in range(5):
            e = random_element(word, cr, rng)
            assert bsmod.normalize(word, bsmod.denormalize(e, cr), cr) == e
            p = random_polynomial(cr.rank, 3, rng, nterms=3)
            q = random_polynomial(cr.rank, 3, rng, nterms=3)
            assert bsmod.right_mul(bsmod.right_mul(e, p, cr), q, cr) == bsmod.right_mul(e, p * q, cr)
            assert bsmod.right_mul(bsmod.left_mul(q, e), p, cr) == bsmod.left_mul(q, bsmod.right_mul(e, p, cr))


def test_morphisms_are_bimodule_maps_on_random_elements(B2):
    rng = random.Random(5)
    maps = [bsmod.m_s(S, B2), bsmod.i_s0(R, B2), bsmod.i_s1(S, B2), bsmod.solve_braid(S, R, B2),
            bsmod.tensor_id(bsmod.i_s1(R, B2), (S,), (), B2)]
    maps.append(bsmod.morphism_add(maps[2], bsmod.morphism_scale(maps[2], 3)))
    for f in maps:
        for _ in range(4):
            e = random_element(f.source, B2, rng)
            p = random_polynomial(B2.rank, 3, rng, nterms=3)
            assert bsmod.apply(f, bsmod.right_mul(e, p, B2)) == bsmod.right_mul(bsmod.apply(f, e), p, B2)
            assert bsmod.apply(f, bsmod.left_mul(p, e)) == bsmod.left_mul(p, bsmod.apply(f, e))
            sup = bsmod.left_mul(B2.x(R), e)
            assert bsmod.is_superior(bsmod.apply(f, sup))
    g = maps[-1]
    assert g == bsmod.morphism_scale(maps[2], 4)
