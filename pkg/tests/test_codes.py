"""Module theta-codes, duals, weight profiles, images, duality transfer."""

import itertools
import random

import numpy as np
import pytest

from skewcode.bases import ModuleBasis
from skewcode.codes import (
    LinearCode,
    classify_binary_type,
    dual_code,
    form_value,
    is_self_dual,
    is_self_orthogonal,
    phi_image,
    phi_image_set,
    theta_code,
    verify_duality_preservation,
    weight_profile,
)
from skewcode.errors import (
    LeeUndefined,
    NotBinary,
    NotInvolution,
    NotMonic,
    NotRightDivisor,
    NotSelfDual,
)
from skewcode.morphisms import identity_map, subgroup_generated
from skewcode.rings import subring_generated
from skewcode.skewpoly import skew_poly, x_pow_minus


def _intro_code(cat):
    f2u = cat.ring("f2u")
    idm = identity_map(f2u)
    g = skew_poly(f2u, idm, ["1", "x", "1"])
    return f2u, idm, theta_code(g, x_pow_minus(f2u, idm, 4), idm)


def test_theta_code_matrix(cat):
    f2u, idm, C = _intro_code(cat)
    assert C.generator_matrix_labels() == [
        ["1", "x", "1", "0"],
        ["0", "1", "x", "1"],
    ]
    # |A|^k with free rows: 4^2 = 16 (re-verified by enumeration below)
    assert C.size() == 16
    one = skew_poly(f2u, idm, ["1"])
    full = theta_code(one, x_pow_minus(f2u, idm, 3), idm)
    assert full.size() == 4**3
    with pytest.raises(NotMonic):
        theta_code(skew_poly(f2u, idm, ["1", "x"]), x_pow_minus(f2u, idm, 4), idm)
    with pytest.raises(NotRightDivisor):
        theta_code(
            skew_poly(f2u, idm, ["x", "0", "1"]), x_pow_minus(f2u, idm, 4), idm
        )


def test_codeword_enumeration(cat):
    f2u, idm, C = _intro_code(cat)
    words = C.codewords()
    assert words.shape == (16, 4)
    zero_code = LinearCode(f2u, 3, [(f2u.zero,) * 3])
    assert zero_code.size() == 1
    f2uv3 = cat.ring("f2uv3")
    u, v = f2uv3.parse("u"), f2uv3.parse("v")
    ideal = LinearCode(f2uv3, 1, [(u,), (v,)])
    assert ideal.size() == 4


def test_dual_code_basics(cat):
    f2u, idm, C = _intro_code(cat)
    zero_code = LinearCode(f2u, 2, [])
    D = dual_code(zero_code)
    assert D.size() == 4**2
    # non-Frobenius violation: dual of the radical ideal is itself
    f2uv3 = cat.ring("f2uv3")
    u, v = f2uv3.parse("u"), f2uv3.parse("v")
    ideal = LinearCode(f2uv3, 1, [(u,), (v,)])
    D = dual_code(ideal)
    assert D.size() == 4
    assert (D.codewords() == ideal.codewords()).all()
    assert D.size() * ideal.size() == 16 > f2uv3.order
    # intro example code is self-dual: dual equals the code setwise
    D2 = dual_code(C)
    assert (D2.codewords() == C.codewords()).all()


def test_left_dual_equals_right_dual(cat):
    m22 = cat.ring("m2f2")
    th = cat.map("m2f2", "flip")
    psi = cat.map("m2f2", "psi")
    g = skew_poly(m22, th, ["[[1,1],[1,0]]", "[[0,1],[1,1]]", "[[1,0],[0,1]]"])
    C = theta_code(g, x_pow_minus(m22, th, 4), th)
    left = dual_code(C, psi).codewords()
    # right dual: words w with <c, w> = 0 for all generators c
    keep = []
    for w in itertools.product(range(16), repeat=4):
        if all(
            form_value(m22, psi, gg, w) == m22.zero for gg in C.gens
        ):
            keep.append(w)
    right = np.array(sorted(keep), dtype=np.uint8)
    assert left.shape == right.shape and (left == right).all()


def test_is_self_dual(cat):
    f2u, idm, C = _intro_code(cat)
    assert is_self_dual(C)
    full = LinearCode(f2u, 2, [(f2u.one, f2u.zero), (f2u.zero, f2u.one)], free=True)
    assert not is_self_dual(full)
    gr = cat.ring("gr42")
    th = cat.map("gr42", "theta")
    g = skew_poly(gr, th, ["3w", "w+1", "1"])
    Cg = theta_code(g, x_pow_minus(gr, th, 4, gr.neg_el(gr.one)), th)
    assert is_self_dual(Cg)
    z4x2 = cat.ring("z4x_2")
    idm4 = identity_map(z4x2)
    g2 = skew_poly(z4x2, idm4, ["2x+3", "x", "1"])
    C2 = theta_code(g2, x_pow_minus(z4x2, idm4, 4, z4x2.neg_el(z4x2.one)), idm4)
    assert is_self_dual(C2)
    with pytest.raises(NotInvolution):
        m22 = cat.ring("m2f2")
        dual_code(LinearCode(m22, 1, [(m22.one,)]))  # id on a noncommutative ring


def test_phi_image_intro(cat):
    f2u, idm, C = _intro_code(cat)
    R = subring_generated(f2u, [])
    img1 = phi_image(C, ModuleBasis(f2u, R, [f2u.parse("1"), f2u.parse("x")]))
    assert img1.generator_matrix_labels() == [
        ["1", "0", "0", "1", "1", "0", "0", "0"],
        ["0", "1", "0", "0", "0", "1", "0", "0"],
        ["0", "0", "1", "0", "0", "1", "1", "0"],
        ["0", "0", "0", "1", "0", "0", "0", "1"],
    ]
    img2 = phi_image(C, ModuleBasis(f2u, R, [f2u.parse("1"), f2u.parse("x+1")]))
    assert img2.generator_matrix_labels() == [
        ["1", "0", "1", "1", "1", "0", "0", "0"],
        ["0", "1", "1", "1", "0", "1", "0", "0"],
        ["0", "0", "1", "0", "1", "1", "1", "0"],
        ["0", "0", "0", "1", "1", "1", "0", "1"],
    ]
    assert not is_self_dual(img1)
    assert is_self_dual(img2)
    prof = weight_profile(img2)
    assert prof.min_distance == 4
    assert all(w % 4 == 0 for w, c in enumerate(prof.distribution) if c)
    assert classify_binary_type(img2) == "II"
    # phi preserves cardinality
    assert img2.size() == C.size()
    b2 = ModuleBasis(f2u, R, [f2u.parse("1"), f2u.parse("x+1")])
    assert phi_image_set(C.codewords(), b2).shape[0] == C.size()


def test_classify_binary_type_edges(cat):
    f2 = cat.ring("f2")
    rep = LinearCode(f2, 2, [(1, 1)], free=True)
    assert classify_binary_type(rep) == "I"
    with pytest.raises(NotBinary):
        classify_binary_type(LinearCode(cat.ring("z4"), 2, [(1, 1)], free=True))
    with pytest.raises(NotSelfDual):
        classify_binary_type(LinearCode(f2, 3, [(1, 1, 1)], free=True))


def test_weight_profile_lee(cat):
    z4 = cat.ring("z4")
    C = LinearCode(z4, 2, [(1, 1)], free=True)
    prof = weight_profile(C, "lee")
    # words: (0,0),(1,1),(2,2),(3,3) -> Lee weights 0,2,4,2
    assert prof.distribution[0] == 1 and prof.distribution[2] == 2
    assert prof.distribution[4] == 1
    assert prof.min_distance == 2
    with pytest.raises(LeeUndefined):
        weight_profile(LinearCode(cat.ring("f4"), 1, [(1,)], free=True), "lee")


def test_theta_cyclic_closure(cat):
    m22 = cat.ring("m2f2")
    th = cat.map("m2f2", "flip")
    g = skew_poly(m22, th, ["[[1,1],[1,0]]", "[[0,1],[1,1]]", "[[1,0],[0,1]]"])
    C = theta_code(g, x_pow_minus(m22, th, 4), th)
    words = C.codewords()
    seen = {tuple(int(x) for x in w) for w in words}
    for w in seen:
        assert C.twisted_shift(w) in seen


def test_generator_matrix_consistency(cat):
    # free-span enumeration equals the deduplicated left span of the rows
    f2u, idm, C = _intro_code(cat)
    from skewcode.codes import _span

    direct = _span(f2u, C.gens)
    free = C.codewords()
    assert direct.shape == free.shape and (direct == free).all()


def test_cyclic_matches_classical_oracle(cat):
    # theta = id module codes coincide with classical cyclic codes
    f2u = cat.ring("f2u")
    idm = identity_map(f2u)
    g = skew_poly(f2u, idm, ["1", "x", "1"])
    C = theta_code(g, x_pow_minus(f2u, idm, 4), idm)

    def poly_mod(fc, gc):
        fc = list(fc)
        while len(fc) >= len(gc):
            lead = fc[-1]
            if lead != f2u.zero:
                s = len(fc) - len(gc)
                for i, c in enumerate(gc):
                    fc[s + i] = f2u.sub_el(fc[s + i], f2u.mul_el(lead, c))
            fc.pop()
        return fc

    # classical span: all u(X) * g(X) mod X^4 - 1
    mod = [f2u.neg_el(f2u.one), 0, 0, 0, f2u.one]
    words = set()
    for u in itertools.product(range(4), repeat=2):
        prod = [f2u.zero] * 5
        for i, a in enumerate(u):
            for j, b in enumerate(g.coeffs):
                prod[i + j] = f2u.add_el(prod[i + j], f2u.mul_el(a, b))
        rem = poly_mod(prod, mod)
        rem = rem + [f2u.zero] * (4 - len(rem))
        words.add(tuple(rem))
    lib = {tuple(int(x) for x in w) for w in C.codewords()}
    assert words == lib


def test_wood_law_instances(cat):
    for name, sigma_name in (("f2u", None), ("gr42", None), ("m2f2", "psi")):
        A = cat.ring(name)
        sigma = cat.map(name, sigma_name) if sigma_name else identity_map(A)
        if name == "m2f2":
            th = cat.map(name, "flip")
            g = skew_poly(A, th, ["[[1,1],[1,0]]", "[[0,1],[1,1]]", "[[1,0],[0,1]]"])
            C = theta_code(g, x_pow_minus(A, th, 4), th)
        else:
            idm = identity_map(A)
            gens = [(A.one, A.one)]
            C = LinearCode(A, 2, gens, free=True)
        D = dual_code(C, sigma)
        assert C.size() * D.size() == A.order**C.n


def test_verify_duality_intro(cat):
    f2u, idm, C = _intro_code(cat)
    R = subring_generated(f2u, [])
    aut = cat.automorphisms("f2u")
    b_bad = ModuleBasis(f2u, R, [f2u.parse("1"), f2u.parse("x")])
    b_good = ModuleBasis(f2u, R, [f2u.parse("1"), f2u.parse("x+1")])
    rep_bad = verify_duality_preservation(C, b_bad, idm, aut)
    assert rep_bad.method == "set-exact"
    assert rep_bad.equal is False
    assert not rep_bad.hypotheses["basis_duality_preserving"]
    rep_good = verify_duality_preservation(C, b_good, idm, aut)
    assert rep_good.equal is True and rep_good.hypotheses_met
    assert rep_good.cardinality_ok
    # trivial code: both sides are the full space
    zero_code = LinearCode(f2u, 2, [])
    rep0 = verify_duality_preservation(zero_code, b_good, idm, aut)
    assert rep0.equal is True
    assert rep0.lhs_size == 4**2


def test_verify_duality_m2f2(cat):
    m22 = cat.ring("m2f2")
    th = cat.map("m2f2", "flip")
    psi = cat.map("m2f2", "psi")
    theta3 = cat.map("m2f2", "theta")
    H = subgroup_generated([theta3])
    R4 = cat.subring("m2f2", "f4")
    b = ModuleBasis(m22, R4, [m22.one, m22.parse("[[0,1],[1,0]]")])
    g = skew_poly(m22, th, ["[[1,1],[1,0]]", "[[0,1],[1,1]]", "[[1,0],[0,1]]"])
    C = theta_code(g, x_pow_minus(m22, th, 4), th)
    rep = verify_duality_preservation(C, b, psi, H)
    assert rep.hypotheses_met and rep.equal is True
    assert rep.code_size * rep.dual_size == rep.alphabet_power


def test_verify_duality_certificate_route(cat):
    # budget too small for a set-exact scan: self-dual certificate instead
    f4u = cat.ring("f4u")
    th = cat.map("f4u", "sigma1")
    aut = cat.automorphisms("f4u")
    g = skew_poly(f4u, th, ["a^2*x+a", "a^2", "a^2", "a^2*x+a^2", "1"])
    C = theta_code(g, x_pow_minus(f4u, th, 8), th)
    R = cat.subring("f4u", "f4")
    b = ModuleBasis(f4u, R, [f4u.parse("a^2*x+1"), f4u.parse("a*x+1")])
    # the duality form is Euclidean; the twist is not the form involution
    rep = verify_duality_preservation(C, b, identity_map(f4u), aut, budget=1000)
    assert rep.method == "certificate"
    assert rep.equal is True
    assert rep.hypotheses["basis_duality_preserving"]


def test_module_audit_and_full_span_dual(cat):
    f2u, idm, C = _intro_code(cat)
    assert C.audit_module()
    D = dual_code(C, audit_full_span=True)
    assert (D.codewords() == C.codewords()).all()
