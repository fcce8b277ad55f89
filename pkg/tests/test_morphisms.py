"""Automorphism enumeration, traces, involutions, conjugation."""

import numpy as np
import pytest

from skewcode.bases import ModuleBasis
from skewcode.errors import MixedRings, NotInvolution
from skewcode.morphisms import (
    MapGroup,
    RingMap,
    conjugate_group,
    conjugate_involution,
    enumerate_anti_automorphisms,
    enumerate_automorphisms,
    enumerate_involutions,
    exhaustive_unit_fixing_maps,
    fixed_subring,
    identity_map,
    map_from_function,
    subgroup_generated,
    trace,
    trace_table,
)
from skewcode.rings import SubringHandle, subring_generated


def _m22_named_maps(cat):
    m22 = cat.ring("m2f2")
    tau = cat.map("m2f2", "tau")
    psi = cat.map("m2f2", "psi")
    theta = cat.map("m2f2", "theta")
    return m22, tau, psi, theta


def test_aut_group_orders(cat):
    expected = {
        "f2xy": (24, "S4"),
        "f4u": (6, "S3"),
        "f2xy_s": (8, "D4"),
        "f2x4": (4, "D2"),
        "m2f2": (6, "S3"),
        "gr42": (2, "S2"),
        "z4x_2": (4, "D2"),
        "f5u": (4, "C4"),
        "f2u": (1, "C1"),
        "f2v2": (2, "S2"),
        "f3x3": (6, "S3"),
        "f3v": (2, "S2"),
        "m2f3": (24, "S4"),
    }
    for name, (order, label) in expected.items():
        aut = cat.automorphisms(name)
        assert (aut.order, aut.structure_label()) == (order, label), name


def test_aut_f3xy_order_72_statistics(cat):
    aut = cat.automorphisms("f3xy")
    assert aut.order == 72
    hist = aut.element_order_histogram()
    assert hist == {1: 1, 2: 21, 3: 8, 4: 18, 6: 24}


def test_gr42_theta_generator(cat):
    gr = cat.ring("gr42")
    aut = cat.automorphisms("gr42")
    theta = [m for m in aut if not m.is_identity()][0]
    assert gr.label(theta(gr.symbols["w"])) == "3w+3"


def test_map_audits(cat):
    for name in ("f4u", "gr42", "m2f2", "m2f3"):
        for m in cat.automorphisms(name):
            assert m.audit()


def test_m2f2_anti_automorphisms_and_involutions(cat):
    m22, tau, psi, theta = _m22_named_maps(cat)
    anti = enumerate_anti_automorphisms(m22)
    assert len(anti) == 6
    invs = enumerate_involutions(m22)
    assert len(invs) == 4
    expected = {
        tau.key(),
        psi.key(),
        tau.compose(theta).key(),
        tau.compose(theta.compose(theta)).key(),
    }
    assert {m.key() for m in invs} == expected
    # the other two anti-automorphisms have order 6
    others = [m for m in anti if m.key() not in expected]
    assert sorted(m.order for m in others) == [6, 6]


def test_involutions_equal_filtered_anti_list(cat):
    for name in ("m2f2", "m2f3", "f4u_skew"):
        A = cat.ring(name)
        anti = enumerate_anti_automorphisms(A)
        invs = enumerate_involutions(A)
        filt = [m for m in anti if m.is_involution()]
        assert {m.key() for m in invs} == {m.key() for m in filt}


def test_commutative_involutions(cat):
    f2u = cat.ring("f2u")
    invs = enumerate_involutions(f2u)
    assert len(invs) == 1 and invs[0].is_identity()
    # oracle: all additive bijections of the 4 elements fixing 1
    brute = exhaustive_unit_fixing_maps(f2u)
    assert len(brute) == 1
    m2f3 = cat.ring("m2f3")
    assert len(enumerate_involutions(m2f3)) == 10


def test_exhaustive_fallback_agrees(cat):
    for name in ("f4u", "gr42", "f2xy_s"):
        A = cat.ring(name)
        fast = {m.key() for m in cat.automorphisms(name)}
        slow = {m.key() for m in exhaustive_unit_fixing_maps(A)}
        assert fast == slow, name
    m22 = cat.ring("m2f2")
    assert {m.key() for m in enumerate_anti_automorphisms(m22)} == {
        m.key() for m in exhaustive_unit_fixing_maps(m22, anti=True)
    }


def test_subgroup_generated(cat):
    gr = cat.ring("gr42")
    theta = cat.map("gr42", "theta")
    assert subgroup_generated([identity_map(gr)]).order == 1
    H = subgroup_generated([theta])
    assert H.order == 2
    f4u = cat.ring("f4u")
    with pytest.raises(MixedRings):
        subgroup_generated([theta, identity_map(f4u)])


def test_fixed_subring(cat):
    gr = cat.ring("gr42")
    aut = cat.automorphisms("gr42")
    full = fixed_subring(subgroup_generated([identity_map(gr)]))
    assert full.order == gr.order
    theta = cat.map("gr42", "theta")
    fx = fixed_subring(subgroup_generated([theta]))
    # oracle: brute scan
    brute = {a for a in gr.elements() if theta(a) == a}
    assert fx.element_set == brute
    assert sorted(gr.label(a) for a in fx.elements) == ["0", "1", "2", "3"]
    m22 = cat.ring("m2f2")
    th22 = cat.map("m2f2", "theta")
    R = fixed_subring(subgroup_generated([th22]))
    assert R.element_set == {
        m22.parse(s)
        for s in ("[[0,0],[0,0]]", "[[1,0],[0,1]]", "[[0,1],[1,1]]", "[[1,1],[1,0]]")
    }


def test_traces(cat):
    gr = cat.ring("gr42")
    theta = cat.map("gr42", "theta")
    H = subgroup_generated([theta])
    triv = subgroup_generated([identity_map(gr)])
    for a in gr.elements():
        assert trace(triv, a) == a
    xi = gr.symbols["w"]
    assert gr.label(trace(H, gr.mul_el(xi, xi))) == "3"
    m22, tau, psi, th = _m22_named_maps(cat)
    H22 = subgroup_generated([th])
    I, i_ = m22.one, m22.parse("[[0,1],[1,0]]")
    z = m22.zero
    assert trace(H22, m22.mul_el(I, psi(i_))) == z
    assert trace(H22, m22.mul_el(i_, psi(I))) == z
    assert trace(H22, m22.mul_el(I, psi(I))) == I
    assert trace(H22, m22.mul_el(i_, psi(i_))) == I


def test_trace_linearity_exhaustive(cat):
    # left/right linearity over the fixed subring, and H-invariance
    for name, mapname in (("gr42", "theta"), ("m2f2", "theta")):
        A = cat.ring(name)
        H = subgroup_generated([cat.map(name, mapname)])
        tr = trace_table(H)
        fixed = fixed_subring(H)
        for b in fixed.elements:
            for a in A.elements():
                assert tr[A.mul_el(b, a)] == A.mul_el(b, int(tr[a]))
                assert tr[A.mul_el(a, b)] == A.mul_el(int(tr[a]), b)
        for g in H:
            assert (g.perm[tr] == tr).all()


def test_conjugate_involution(cat):
    m22, tau, psi, theta = _m22_named_maps(cat)
    assert conjugate_involution(tau, tau) == tau
    taut = tau.compose(theta)
    taut2 = tau.compose(theta.compose(theta))
    assert conjugate_involution(tau, taut) == taut2
    assert conjugate_involution(tau, taut2) == taut
    assert conjugate_involution(psi, taut) == psi
    with pytest.raises(NotInvolution):
        noninv = theta  # order 3
        conjugate_involution(noninv, tau)


def test_lemma_inv_parts(cat):
    """Conjugating (sigma, H, basis) transports trace values through phi."""
    m22, tau, psi, theta = _m22_named_maps(cat)
    H = subgroup_generated([theta])
    R = fixed_subring(H)
    basis = ModuleBasis(m22, R, [m22.one, m22.parse("[[0,1],[1,0]]")])
    for phi in (tau, psi, tau.compose(theta)):
        sig_hat = conjugate_involution(tau, phi)
        assert sig_hat.is_involution()
        assert sig_hat.preserves(R.elements)
        H_hat = conjugate_group(H, phi)
        assert H_hat.order == H.order
        vecs_hat = [int(phi.perm[tau.perm[v]]) for v in basis.vecs]
        b_hat = ModuleBasis(m22, R, vecs_hat)  # still a basis
        tr = trace_table(H)
        tr_hat = trace_table(H_hat)
        for v, vh in zip(basis.vecs, vecs_hat):
            for w, wh in zip(basis.vecs, vecs_hat):
                lhs = tr_hat[m22.mul_el(vh, int(sig_hat.perm[wh]))]
                rhs = phi(int(tr[m22.mul_el(w, int(tau.perm[v]))]))
                assert lhs == rhs


def test_map_group_deterministic_order(cat):
    a1 = enumerate_automorphisms(cat.ring("f4u"))
    a2 = enumerate_automorphisms(cat.ring("f4u"))
    assert [m.key() for m in a1] == [m.key() for m in a2]


def test_pointwise_stabilizers_m2f3(cat):
    aut = cat.automorphisms("m2f3")
    for i in (1, 2, 3):
        sub = cat.subring("m2f3", f"f9_{i}")
        H = aut.pointwise_stabilizer(sub.elements)
        assert H.order == 4
