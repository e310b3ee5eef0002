"""Verification checks shared by the ``verify`` subcommand and the acceptance tests.

Every check returns a ``CheckResult``; nothing here raises on a failed
property, so a whole suite can run and report all failures at once.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import bsmod, coxeter, hecke, lightleaves
from .coxeter import INF, CoxeterMatrix, alternating
from .errors import SoergelError, VerificationFailure
from .hecke import LaurentPoly
from .polyring import (CartanRealization, braid_relation_holds, decompose_s, dim_homogeneous,
                       is_invariant, random_polynomial)


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        detail = f" ({self.checked} check{'' if self.checked == 1 else 's'})" if self.checked else ""
        if self.failures:
            detail += f"; first failure: {self.failures[0]}"
        return f"[{status}] {self.name}{detail}"


def _result(name: str, checked: int, failures: list) -> CheckResult:
    return CheckResult(name, not failures, checked, failures)


def words_up_to(cm: CoxeterMatrix, max_length: int):
    for n in range(max_length + 1):
        yield from itertools.product(range(cm.rank), repeat=n)


# -- realization -----------------------------------------------------------------

def check_realization(cr: CartanRealization, samples: int = 1000, max_degree: int = 8, seed: int = 0) -> CheckResult:
    """Braid relations of the reflections, and p = P_s(p) + x_s I'_s(p) with invariant parts."""
    failures = []
    checked = 0
    n = cr.rank
    for s in range(n):
        for t in range(s + 1, n):
            checked += 1
            if not braid_relation_holds(cr, s, t):
                failures.append(f"braid relation fails for ({s},{t})")
    rng = random.Random(seed)
    for _ in range(samples):
        p = random_polynomial(n, max_degree, rng)
        for s in range(n):
            checked += 1
            try:
                inv, div = decompose_s(p, s, cr)
            except SoergelError as exc:
                failures.append(f"decomposition failed: {exc}")
                continue
            if inv + cr.x(s) * div != p or not is_invariant(inv, s, cr) or not is_invariant(div, s, cr):
                failures.append(f"decomposition identity fails for s={s} on {p}")
    return _result("realization: braid relations and P_s/I'_s decomposition", checked, failures)


# -- Hecke algebra ---------------------------------------------------------------

def check_tau_pairing(cm: CoxeterMatrix, max_length: int = 5) -> CheckResult:
    """tau(T_x T_{y^-1}) = q^l(x) if x = y and 0 otherwise."""
    elems = coxeter.elements_up_to(cm, max_length)
    failures = []
    checked = 0
    for x in elems:
        for y in elems:
            checked += 1
            got = hecke.tau_pairing(x, y, cm)
            want = LaurentPoly.q_power(len(x)) if x == y else LaurentPoly()
            if got != want:
                failures.append(f"tau(T_{x} T_{y}^-1) = {got}")
    return _result(f"tau pairing on {len(elems)} elements of length <= {max_length}", checked, failures)


def check_Z_decomposition(orders=(3, 4), max_n: int = 3) -> CheckResult:
    failures = []
    checked = 0
    for m in orders:
        for n in range(1, max_n + 1):
            checked += 1
            report = hecke.verify_Z_decomposition(m, n, raise_on_failure=False)
            if not report.passed:
                failures.append(report.summary())
    return _result(f"Z-decomposition for m in {tuple(orders)}, n <= {max_n}", checked, failures)


# -- light leaves -------------------------------------------------------------------

def check_leaf_count(word, cr: CartanRealization) -> CheckResult:
    """Light leaves: count and weights match tau of (1+T_s1)...(1+T_sn); weight = sum i = sum j."""
    failures = []
    leaves = lightleaves.light_leaves(word, cr)
    weights: dict = {}
    for lf in leaves:
        weights[lf.weight] = weights.get(lf.weight, 0) + 1
        if sum(lf.bits_i) != lf.weight or sum(lf.bits_j) != lf.weight:
            failures.append(f"leaf {lf.bits_i}: weight {lf.weight}, sum i {sum(lf.bits_i)}, sum j {sum(lf.bits_j)}")
    want = dict(hecke.graded_rank(word, cr.coxeter))
    if weights != want:
        failures.append(f"weights {sorted(weights.items())} but tau predicts {sorted(want.items())}")
    return _result(f"light leaves of {tuple(word)}: {len(leaves)} leaves", len(leaves), failures)


def check_triangularity(words, cr: CartanRealization) -> CheckResult:
    failures = []
    checked = 0
    for w in words:
        em = lightleaves.evaluation_matrix(w, cr)
        checked += len(em.entries)
        if not em.passed:
            failures.append((tuple(w), em.failures[0]))
    return _result("evaluation matrix unitriangular", checked, failures)


def check_census(words, cr: CartanRealization) -> CheckResult:
    failures = []
    checked = 0
    for w in words:
        checked += 1
        got = lightleaves.graded_census(w, cr)
        want = hecke.hecke_coefficients(w, cr.coxeter)
        if got != want:
            failures.append(tuple(w))
    return _result("graded census equals Hecke coefficients p^x_n", checked, failures)


def check_bruteforce(words, cr: CartanRealization, max_degree: int = 4) -> CheckResult:
    """dim Hom^delta(theta_w, R) from the solver equals the Hecke prediction, and light leaves span it."""
    failures = []
    checked = 0
    for w in words:
        w = tuple(w)
        ranks = dict(hecke.graded_rank(w, cr.coxeter))
        leaves = [lf.morphism() for lf in lightleaves.light_leaves(w, cr)]
        for d in range(-2 * max(ranks), max_degree + 1, 2):
            checked += 1
            want = sum(n * dim_homogeneous(d + 2 * i, cr.rank) for i, n in ranks.items())
            got = len(bsmod.solve_hom_degree(w, (), d, cr))
            span = lightleaves.span_rank(lightleaves.right_multiples(leaves, d, cr), w, (), d, cr)
            if got != want or span != want:
                failures.append(f"{w} degree {d}: solver {got}, predicted {want}, light-leaf span {span}")
    return _result("brute-force Hom dimensions and light-leaf span", checked, failures)


def check_braid(s: int, r: int, cr: CartanRealization) -> CheckResult:
    """Degree-0 Hom between the two alternating words is 1-dimensional; normal element goes to normalsup."""
    m = cr.coxeter.order(s, r)
    failures = []
    X, X2 = alternating(s, r, m), alternating(r, s, m)
    dim = len(bsmod.solve_hom_degree(X, X2, 0, cr))
    if dim != 1:
        failures.append(f"degree-0 Hom has dimension {dim}")
    else:
        f = bsmod.solve_braid(s, r, cr)
        if not bsmod.is_normalsup(bsmod.apply(f, bsmod.normal_element(X, cr)), cr):
            failures.append("image of the normal element is not normalsup")
        rep = bsmod.validate_morphism(f, cr)
        if not rep.passed:
            failures.append(f"braid morphism is not a bimodule map: {rep.witnesses[:1]}")
    return _result(f"braid morphism f_({s},{r}), m = {m}", 1, failures)


def check_braid_choice(s: int, r: int, cr: CartanRealization) -> CheckResult:
    rep = lightleaves.check_braid_choice(s, r, cr)
    failures = []
    if not rep.kernel_zero:
        failures.append("f_{s,r}(1(x)x_r(x)1(x)1 + 1(x)1(x)x_r(x)1) != 0")
    if rep.f_value != 1:
        failures.append(f"f(x) = {rep.f_value}, expected 1")
    if rep.g_value != 0:
        failures.append(f"g(x) = {rep.g_value}, expected 0")
    return _result("different braid paths give different light leaves", 3, failures)


def adjunction_sample(cr: CartanRealization, max_total: int = 3, limit: int = 40) -> list:
    """Solved morphisms theta_(s,M) -> theta_N (for F) with small words, degrees 0 and 2."""
    out = []
    n = cr.rank
    for total in range(1, max_total + 1):
        for src_len in range(1, total + 1):
            for src in itertools.product(range(n), repeat=src_len):
                for tgt in itertools.product(range(n), repeat=total - src_len):
                    for d in (-2, 0, 2):
                        for f in bsmod.solve_hom_degree(src, tgt, d, cr):
                            out.append(f)
                            if len(out) >= limit:
                                return out
    return out


def check_adjunction(morphisms, cr: CartanRealization) -> CheckResult:
    """G(F(f)) = f for every sample f, F(G(g)) = g for g = F(f), degree shift +2, and F(f) validates."""
    failures = []
    checked = 0
    for f in morphisms:
        checked += 1
        Ff = bsmod.adjoint_F(f, cr)
        if Ff.degree != f.degree + 2:
            failures.append(f"degree of F(f) is {Ff.degree}, f has {f.degree}")
        if bsmod.adjoint_G(Ff, cr) != f:
            failures.append(f"G(F(f)) != f for f: {f.source} -> {f.target}")
        if bsmod.adjoint_F(bsmod.adjoint_G(Ff, cr), cr) != Ff:
            failures.append(f"F(G(g)) != g for g: {Ff.source} -> {Ff.target}")
        if not bsmod.validate_morphism(Ff, cr).passed:
            failures.append(f"F(f) is not a bimodule map for f: {f.source} -> {f.target}")
    return _result("adjunction round trip", checked, failures)


def check_hom_basis(pairs, cr: CartanRealization) -> CheckResult:
    """Size and q-census of hom_basis match tau of the concatenated product; every element validates."""
    failures = []
    checked = 0
    for src, tgt in pairs:
        src, tgt = tuple(src), tuple(tgt)
        checked += 1
        census: dict = {}
        for lf, f in lightleaves.hom_basis_pairs(src, tgt, cr):
            census[lf.weight] = census.get(lf.weight, 0) + 1
            if f.degree != 2 * len(tgt) - 2 * lf.weight:
                failures.append(f"{src} -> {tgt}: degree {f.degree} for weight {lf.weight}")
            if not bsmod.validate_morphism(f, cr).passed:
                failures.append(f"{src} -> {tgt}: element from leaf {lf.bits_i} is not a bimodule map")
        want = dict(hecke.graded_rank(tuple(reversed(tgt)) + src, cr.coxeter))
        if census != want:
            failures.append(f"{src} -> {tgt}: census {sorted(census.items())}, tau gives {sorted(want.items())}")
    return _result("Hom basis between Bott-Samelson bimodules", checked, failures)


# -- suite for one configuration and word ------------------------------------------

def _guarded(name: str, check, *args, **kwargs) -> CheckResult:
    """Run a check; an exception (e.g. a solver finding no braid morphism) becomes a failed result."""
    try:
        return check(*args, **kwargs)
    except SoergelError as exc:
        return CheckResult(name, False, 0, [f"{type(exc).__name__}: {exc}"])


def run_suite(word, cr: CartanRealization, max_degree: int = 4, seed: int = 0,
              samples: int = 200) -> list[CheckResult]:
    """All checks that make sense for one system and one word."""
    word = tuple(word)
    cm = cr.coxeter
    results = [_guarded("realization", check_realization, cr, samples=samples, seed=seed)]
    results.append(_guarded("tau pairing", check_tau_pairing, cm, max_length=min(4, max(1, len(word)))))
    orders = sorted({cm.order(s, t) for s in range(cm.rank) for t in range(s + 1, cm.rank)} - {INF, 2})
    if orders:
        results.append(_guarded("Z-decomposition", check_Z_decomposition, orders, max_n=2))
    for s in range(cm.rank):
        for t in range(s + 1, cm.rank):
            if cm.order(s, t) != INF:
                results.append(_guarded(f"braid morphism f_({s},{t})", check_braid, s, t, cr))
                if cm.order(s, t) == 3:
                    results.append(_guarded("braid choice", check_braid_choice, s, t, cr))
    results.append(_guarded("light leaves", check_leaf_count, word, cr))
    results.append(_guarded("triangularity", check_triangularity, [word], cr))
    results.append(_guarded("census", check_census, [word], cr))
    results.append(_guarded("brute force", check_bruteforce, [word], cr, max_degree=max_degree))
    splits = [(word[k:], tuple(reversed(word[:k]))) for k in range(len(word) + 1)]
    results.append(_guarded("Hom basis", check_hom_basis, splits, cr))
    try:
        sample = [f for src, tgt in splits if src for f in lightleaves.hom_basis(src, tgt, cr)]
    except SoergelError as exc:
        results.append(CheckResult("adjunction round trip", False, 0, [f"{type(exc).__name__}: {exc}"]))
    else:
        results.append(_guarded("adjunction", check_adjunction, sample, cr))
    return results


def require(result: CheckResult) -> CheckResult:
    if not result.passed:
        raise VerificationFailure(result.line())
    return result
