"""Dynkin quiver representations, stability, and ordered products."""

from fractions import Fraction
from itertools import product as iproduct

import pytest

from qdilog.coeffs import QRat
from qdilog.dynkinrep import (
    CentralCharge,
    build_indecomposables,
    diagram_edges,
    decreasing_extensions,
    direct_sum,
    dynkin_quiver,
    end_basis,
    hom_dim,
    hom_ext,
    hom_order,
    indecomposable,
    is_generic,
    phase_lt,
    positive_roots,
    reineke_product,
    source_sequence,
    stables,
    subrep_dims,
    verify_corollary,
)
from qdilog.errors import GenericityError, GuardError
from qdilog.qtorus import eval_word, skew_from_quiver
from qdilog.quiver import Quiver, quiver_from_arrows

from oracles import tits_roots

A2 = dynkin_quiver("A2")
A3 = dynkin_quiver("A3")
D4 = dynkin_quiver("D4")
ONE = QRat(1)

Z_TWO_STABLES = CentralCharge.of([(-1, 1), (1, 1)])
Z_THREE_STABLES = CentralCharge.of([(1, 1), (-1, 1)])


def a3_orientations():
    out = []
    for flips in iproduct([False, True], repeat=2):
        arrows = []
        for edge, flip in zip([(0, 1), (1, 2)], flips):
            arrows.append((edge[1], edge[0]) if flip else edge)
        out.append(dynkin_quiver("A3", arrows))
    return out


def generic_charges(dq, count, seed=11):
    """Deterministic exact search for generic charges on the given roots."""
    import random

    roots = positive_roots(dq)
    rng = random.Random(seed)
    xs = [Fraction(a, b) for a in range(-9, 10) for b in (1, 2, 3)]
    found = []
    while len(found) < count:
        cand = CentralCharge.of([(rng.choice(xs), 1) for _ in range(dq.n)])
        if is_generic(cand, roots):
            cand.validate(roots)
            found.append(cand)
    return found


# -- roots ---------------------------------------------------------------------


def test_positive_roots_small():
    assert positive_roots(A2) == [(0, 1), (1, 0), (1, 1)]
    assert positive_roots(dynkin_quiver("A1")) == [(1,)]
    assert len(positive_roots(A3)) == 6
    assert len(positive_roots(D4)) == 12


@pytest.mark.parametrize("label", ["A2", "A3", "A4", "D4", "D5"])
def test_positive_roots_match_quadratic_form_oracle(label):
    dq = dynkin_quiver(label)
    edges = diagram_edges(dq.kind, dq.n)
    assert positive_roots(dq) == tits_roots(edges, dq.n)


def test_dynkin_quiver_validates_orientation():
    with pytest.raises(ValueError):
        dynkin_quiver("A3", [(0, 1), (0, 2)])


# -- indecomposables -------------------------------------------------------------


def test_projective_cover_shape():
    rep = indecomposable(A2, (1, 1), 2)
    assert rep.dims == (1, 1)
    # matrices live on the opposite quiver: the arrow is 2 -> 1, identity
    assert rep.maps[(1, 0)] == ((1,),)


def test_simple_indecomposables():
    for i, alpha in enumerate([(1, 0), (0, 1)]):
        rep = indecomposable(A2, alpha, 2)
        assert rep.dims == alpha


def test_not_a_root():
    with pytest.raises(ValueError):
        indecomposable(A2, (2, 1), 2)


@pytest.mark.parametrize("label,p", [("A2", 2), ("A3", 2), ("A3", 3), ("D4", 2)])
def test_gabriel_bijection(label, p):
    dq = dynkin_quiver(label)
    table = build_indecomposables(dq.quiver.opposite(), p)
    assert set(table) == set(positive_roots(dq))
    for alpha, rep in table.items():
        assert rep.dims == alpha
        assert len(end_basis(rep)) == 1


# -- hom spaces -------------------------------------------------------------------


def test_hom_dims_a2():
    S1 = indecomposable(A2, (1, 0), 2)
    S2 = indecomposable(A2, (0, 1), 2)
    P2 = indecomposable(A2, (1, 1), 2)
    assert hom_dim(S1, S1) == 1
    assert hom_dim(S1, P2) == 1
    assert hom_dim(S2, P2) == 0
    assert hom_dim(S1, S2) == 0
    assert hom_dim(P2, S2) == 1


def test_hom_of_mismatched_shapes():
    S1 = indecomposable(A2, (1, 0), 2)
    T = indecomposable(A3, (1, 0, 0), 2)
    with pytest.raises(ValueError):
        hom_dim(S1, T)


def test_hom_ext_projective_cover():
    S1 = indecomposable(A2, (1, 0), 2)
    S2 = indecomposable(A2, (0, 1), 2)
    assert hom_ext(S2, S1) == (0, 1)
    assert hom_ext(S1, S2) == (0, 0)


def test_field_independence_spot_check():
    roots = positive_roots(A3)
    t2 = build_indecomposables(A3.quiver.opposite(), 2)
    t3 = build_indecomposables(A3.quiver.opposite(), 3)
    for a in roots:
        for b in roots:
            assert hom_dim(t2[a], t2[b]) == hom_dim(t3[a], t3[b])


# -- subrepresentations -----------------------------------------------------------


def test_subrep_dims_examples():
    P2 = indecomposable(A2, (1, 1), 2)
    assert subrep_dims(P2) == {(1, 0)}
    S1 = indecomposable(A2, (1, 0), 2)
    assert subrep_dims(S1) == set()
    both = direct_sum([S1, indecomposable(A2, (0, 1), 2)])
    assert subrep_dims(both) == {(1, 0), (0, 1)}


def test_subrep_field_independence_small():
    for alpha in positive_roots(A3):
        r2 = indecomposable(A3, alpha, 2)
        r3 = indecomposable(A3, alpha, 3)
        assert subrep_dims(r2) == subrep_dims(r3)


def test_subrep_guard(monkeypatch):
    monkeypatch.setenv("QDILOG_GUARD", "2")
    big = direct_sum([indecomposable(A2, (1, 1), 2)] * 2)
    with pytest.raises(GuardError):
        subrep_dims(big)


# -- stability ---------------------------------------------------------------------


def test_phase_comparisons():
    z = CentralCharge.of([(1, 1), (-1, 1)])
    assert phase_lt(z, (1, 0), (0, 1))
    assert not phase_lt(z, (0, 1), (1, 0))
    assert not phase_lt(z, (1, 0), (1, 0))
    # 45 < 90 < 135 through the middle charge
    assert phase_lt(z, (1, 0), (1, 1)) and phase_lt(z, (1, 1), (0, 1))


def test_phase_rejects_zero():
    z = CentralCharge.of([(1, 1), (-1, -1)])
    with pytest.raises(ValueError):
        phase_lt(z, (1, 1), (1, 0))


def test_is_generic():
    roots = positive_roots(A2)
    assert is_generic(Z_TWO_STABLES, roots)
    assert not is_generic(CentralCharge.of([(1, 1), (1, 1)]), roots)
    # exact pairwise cross products: all fifteen are nonzero here
    z3 = CentralCharge.of([(-2, 1), (0, 1), (3, 1)])
    assert is_generic(z3, positive_roots(A3))


def test_charge_validation():
    bad = CentralCharge.of([(1, 1), (1, -2)])
    with pytest.raises(GenericityError):
        stables(A2, bad)


def test_stables_two_regimes():
    assert [a for a, _ in stables(A2, Z_TWO_STABLES)] == [(1, 0), (0, 1)]
    assert [a for a, _ in stables(A2, Z_THREE_STABLES)] == [
        (0, 1),
        (1, 1),
        (1, 0),
    ]
    ranks = [r for _, r in stables(A2, Z_THREE_STABLES)]
    assert ranks == [0, 1, 2]


def test_single_vertex_stable():
    a1 = dynkin_quiver("A1")
    assert [a for a, _ in stables(a1, CentralCharge.of([(0, 1)]))] == [(1,)]


def test_simples_always_stable():
    for z in generic_charges(A3, 3):
        st = {a for a, _ in stables(A3, z)}
        for i in range(3):
            assert tuple(1 if k == i else 0 for k in range(3)) in st


def test_stable_phases_strictly_decreasing():
    for z in generic_charges(D4, 2, seed=5):
        ordered = [a for a, _ in stables(D4, z)]
        for a, b in zip(ordered, ordered[1:]):
            assert phase_lt(z, b, a)


# -- ordered products ----------------------------------------------------------------


def test_reineke_product_two_charges_give_pentagon():
    form = skew_from_quiver(A2.quiver)
    lhs = reineke_product(A2, Z_TWO_STABLES, 8)
    rhs = reineke_product(A2, Z_THREE_STABLES, 8)
    assert lhs == eval_word(form, [(1, ONE, (1, 0)), (1, ONE, (0, 1))], 8)
    assert rhs == eval_word(
        form, [(1, ONE, (0, 1)), (1, ONE, (1, 1)), (1, ONE, (1, 0))], 8
    )
    assert lhs == rhs


@pytest.mark.parametrize("dq", a3_orientations(), ids=lambda d: str(d.quiver.mult))
def test_reineke_invariance_a3(dq):
    charges = generic_charges(dq, 3)
    products = [reineke_product(dq, z, 6) for z in charges]
    assert products[0] == products[1] == products[2]


def test_reineke_invariance_d4():
    charges = generic_charges(D4, 3)
    products = [reineke_product(D4, z, 6) for z in charges]
    assert products[0] == products[1] == products[2]


# -- source sequences and the root-order identity -------------------------------------


def test_source_sequence():
    assert source_sequence(A2.quiver) == [0, 1]
    assert source_sequence(Quiver(((0, 0), (0, 0)))) == [0, 1]
    assert source_sequence(A3.quiver) == [0, 1, 2]
    cyclic = quiver_from_arrows(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    with pytest.raises(ValueError):
        source_sequence(cyclic)


def test_hom_order_a2():
    strict = hom_order(A2)
    assert ((1, 0), (1, 1)) in strict
    assert ((1, 1), (0, 1)) in strict
    assert ((1, 0), (0, 1)) in strict  # forced by transitivity


def test_hom_order_trivial():
    assert hom_order(dynkin_quiver("A1")) == set()


def test_decreasing_extensions_count():
    roots = positive_roots(A2)
    exts, complete = decreasing_extensions(roots, hom_order(A2), 10)
    assert complete and exts == [[(0, 1), (1, 1), (1, 0)]]


def test_corollary_a2_is_pentagon():
    assert verify_corollary(A2, 8)


def test_corollary_a1():
    assert verify_corollary(dynkin_quiver("A1"), 6)


@pytest.mark.parametrize("dq", a3_orientations(), ids=lambda d: str(d.quiver.mult))
def test_corollary_a3_all_orientations(dq):
    assert verify_corollary(dq, 6)


# -- exceptional types ------------------------------------------------------------


def test_exceptional_root_counts():
    assert len(positive_roots(dynkin_quiver("E6"))) == 36
    assert len(positive_roots(dynkin_quiver("E7"))) == 63
    assert len(positive_roots(dynkin_quiver("E8"))) == 120
    assert len(positive_roots(dynkin_quiver("D5"))) == 20


def test_e6_gabriel_bijection():
    dq = dynkin_quiver("E6")
    table = build_indecomposables(dq.quiver.opposite(), 2)
    assert set(table) == set(positive_roots(dq))
    for alpha, rep in table.items():
        assert rep.dims == alpha
        assert len(end_basis(rep)) == 1


def test_bad_type_labels():
    for label in ("D3", "E9", "F4", "A0"):
        with pytest.raises(ValueError):
            dynkin_quiver(label)
