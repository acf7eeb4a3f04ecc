"""Carrier-level checks: elements, homs, ultrafilters, ideals, Stone sets."""

import random
from fractions import Fraction

import pytest

from contactdual.algebra import (
    DEFAULT_SEED,
    BooleanHom,
    FiniteUltrafilter,
    Ideal,
    IntervalElement,
    PiecewiseAffine,
    bounded_below,
    finite_algebra,
    identity_hom,
    interval_algebra,
    interval_element,
    is_hom,
    left_infinity,
    make_algebra,
    principal_left,
    principal_right,
    random_interval_element,
    ray_free_ideal,
    right_infinity,
    stone_epsilon,
    stone_unit,
    uf_member,
    ultrafilters,
)
from contactdual.errors import InputError, UnsupportedError

F = Fraction


def ie(*comps):
    return interval_element(comps)


# -- construction -----------------------------------------------------------

def test_make_algebra_finite_powerset_size():
    A = make_algebra(("finite", 3))
    assert len(list(A.elements())) == 8


def test_make_algebra_interval_has_bottom_and_top():
    A = make_algebra("interval")
    assert A.bottom == IntervalElement(())
    assert A.top == IntervalElement(((None, None),))


def test_make_algebra_rejects_zero_atoms():
    with pytest.raises(InputError):
        make_algebra(("finite", 0))
    with pytest.raises(InputError):
        make_algebra(("finite", 17))


# -- element operations ------------------------------------------------------

def test_finite_join_of_atoms():
    A = finite_algebra(2)
    assert A.join(A.atom(0), A.atom(1)) == A.top


def test_interval_meet_of_touching_intervals_is_empty():
    A = interval_algebra()
    assert A.meet(ie((0, 2)), ie((2, 3))) == A.bottom


def test_interval_complement_of_unit_interval():
    A = interval_algebra()
    assert A.complement(ie((0, 1))) == ie((None, 0), (1, None))


def test_interval_join_merges_touching_components():
    A = interval_algebra()
    assert A.join(ie((0, 1)), ie((1, 2))) == ie((0, 2))


def test_mixed_backend_operations_are_rejected():
    A = finite_algebra(2)
    with pytest.raises(InputError):
        A.join(A.atom(0), ie((0, 1)))


def test_finite_de_morgan_double_complement_absorption_exhaustive():
    for n in range(1, 5):
        A = finite_algebra(n)
        elems = list(A.elements())
        for a in elems:
            assert A.complement(A.complement(a)) == a
            for b in elems:
                assert A.complement(A.join(a, b)) == A.meet(
                    A.complement(a), A.complement(b)
                )
                assert A.complement(A.meet(a, b)) == A.join(
                    A.complement(a), A.complement(b)
                )
                assert A.join(a, A.meet(a, b)) == a
                assert A.meet(a, A.join(a, b)) == a


def test_interval_double_complement_on_seeded_samples():
    A = interval_algebra()
    rng = random.Random(DEFAULT_SEED)
    for _ in range(1000):
        a = random_interval_element(rng)
        assert A.complement(A.complement(a)) == a


def test_interval_de_morgan_on_seeded_samples():
    A = interval_algebra()
    rng = random.Random(DEFAULT_SEED + 1)
    for _ in range(300):
        a = random_interval_element(rng)
        b = random_interval_element(rng)
        assert A.meet(a, b) == A.complement(A.join(A.complement(a), A.complement(b)))


def test_big_join_folds():
    A = finite_algebra(3)
    assert A.big_join([]) == A.bottom
    assert A.big_join([A.atom(0), A.atom(2)]) == A.element_from_atoms([0, 2])


# -- ultrafilters ------------------------------------------------------------

def test_finite_algebra_has_one_ultrafilter_per_atom():
    fam = ultrafilters(finite_algebra(3))
    assert fam.members == tuple(FiniteUltrafilter(i) for i in range(3))
    assert not fam.representable_only


def test_interval_family_is_flagged_representable_only():
    fam = ultrafilters(interval_algebra())
    assert fam.representable_only


def test_interval_membership_right_approach():
    assert uf_member(principal_right(0), ie((0, 1)))


def test_interval_membership_left_infinity_needs_a_ray():
    assert not uf_member(left_infinity(), ie((0, 1)))
    assert uf_member(left_infinity(), ie((None, 0)))
    assert uf_member(right_infinity(), ie((3, None)))


def test_interval_membership_left_approach_interior_point():
    assert uf_member(principal_left(F(1, 2)), ie((0, 1)))
    assert not uf_member(principal_left(0), ie((0, 1)))


def test_exactly_one_of_a_and_complement_is_member_finite():
    for n in range(1, 5):
        A = finite_algebra(n)
        for u in ultrafilters(A).members:
            for a in A.elements():
                assert uf_member(u, a) != uf_member(u, A.complement(a))


def test_exactly_one_of_a_and_complement_is_member_interval():
    A = interval_algebra()
    rng = random.Random(DEFAULT_SEED)
    kinds = [principal_left(1), principal_right(-2), left_infinity(), right_infinity()]
    for _ in range(500):
        a = random_interval_element(rng)
        for u in kinds:
            assert uf_member(u, a) != uf_member(u, A.complement(a))


# -- Stone map ----------------------------------------------------------------

def test_stone_epsilon_explicit_set():
    A = finite_algebra(3)
    got = stone_epsilon(A, A.element_from_atoms([0, 2]))
    assert got == frozenset({FiniteUltrafilter(0), FiniteUltrafilter(2)})


def test_stone_epsilon_of_top_is_everything():
    A = finite_algebra(2)
    assert stone_epsilon(A, A.top) == frozenset(ultrafilters(A).members)


def test_stone_epsilon_respects_join_and_meet():
    for n in range(1, 4):
        A = finite_algebra(n)
        for a in A.elements():
            for b in A.elements():
                assert stone_epsilon(A, A.join(a, b)) == stone_epsilon(A, a) | stone_epsilon(A, b)
                assert stone_epsilon(A, A.meet(a, b)) == stone_epsilon(A, a) & stone_epsilon(A, b)


def test_stone_unit_is_principal():
    A = finite_algebra(3)
    u = stone_unit(A, 1)
    assert uf_member(u, A.element_from_atoms([1]))
    assert not uf_member(u, A.element_from_atoms([0, 2]))


def test_interval_stone_epsilon_is_predicate_only():
    with pytest.raises(UnsupportedError):
        stone_epsilon(interval_algebra(), ie((0, 1)))


# -- homomorphisms ------------------------------------------------------------

def test_constant_dual_map_inverse_image():
    A = finite_algebra(2)
    phi = BooleanHom(A, A, dual_map=(0, 0))
    assert phi.apply(A.atom(0)) == A.top
    assert phi.apply(A.atom(1)) == A.bottom


def test_identity_hom_ult_preimage():
    A = finite_algebra(3)
    phi = identity_hom(A)
    assert phi.ult_preimage(FiniteUltrafilter(1)) == FiniteUltrafilter(1)


def test_every_dual_map_yields_a_hom_and_brute_force_agrees():
    # independent check: apply really is inverse image of the dual point map
    for n in range(1, 4):
        A = finite_algebra(n)
        for mask in range(n ** n):
            d, m = [], mask
            for _ in range(n):
                d.append(m % n)
                m //= n
            phi = BooleanHom(A, A, dual_map=tuple(d))
            assert is_hom(phi)
            for a in A.elements():
                image = phi.apply(a)
                expect = {y for y in range(n) if d[y] in a.atoms}
                assert set(image.atoms) == expect


def test_interval_shift_hom():
    A = interval_algebra()
    g = PiecewiseAffine((), (F(1),), (F(1),))  # x + 1
    phi = BooleanHom(A, A, piecewise=g)
    assert phi.apply(ie((0, 1))) == ie((1, 2))
    assert phi.ult_preimage(principal_left(1)) == principal_left(0)
    assert is_hom(phi)


def test_interval_decreasing_hom_flips_sides():
    A = interval_algebra()
    g = PiecewiseAffine((), (F(-1),), (F(0),))  # x -> -x
    phi = BooleanHom(A, A, piecewise=g)
    assert phi.apply(ie((0, 1))) == ie((-1, 0))
    assert phi.ult_preimage(principal_left(0)) == principal_right(0)
    assert phi.ult_preimage(left_infinity()) == right_infinity()
    assert is_hom(phi)


def test_piecewise_validation():
    with pytest.raises(InputError):
        PiecewiseAffine((F(0),), (F(1), F(1)), (F(0), F(1)))  # discontinuous
    with pytest.raises(InputError):
        PiecewiseAffine((), (F(0),), (F(0),))  # slope 0 not a bijection
    with pytest.raises(InputError):
        PiecewiseAffine((F(0),), (F(1), F(-1)), (F(0), F(0)))  # mixed slopes


def test_piecewise_inverse_and_compose_roundtrip():
    g = PiecewiseAffine((F(0), F(2)), (F(1), F(2), F(1)), (F(0), F(0), F(2)))
    h = g.compose(g.inverse())
    rng = random.Random(7)
    for _ in range(50):
        x = F(rng.randint(-40, 40), rng.choice((1, 2, 3)))
        assert h(x) == x
        assert g.inverse()(g(x)) == x


def test_piecewise_compose_matches_pointwise():
    g = PiecewiseAffine((F(0),), (F(1), F(3)), (F(0), F(0)))
    k = PiecewiseAffine((F(1),), (F(2), F(1)), (F(0), F(1)))
    gk = g.compose(k)
    rng = random.Random(11)
    for _ in range(60):
        x = F(rng.randint(-30, 30), rng.choice((1, 2)))
        assert gk(x) == g(k(x))


def test_hom_compose_finite():
    A = finite_algebra(3)
    p1 = BooleanHom(A, A, dual_map=(1, 2, 0))
    p2 = BooleanHom(A, A, dual_map=(2, 2, 1))
    comp = p2.compose(p1)
    for a in A.elements():
        assert comp.apply(a) == p2.apply(p1.apply(a))


# -- ideals --------------------------------------------------------------------

def test_finite_ideal_membership():
    A = finite_algebra(3)
    B = Ideal(A, A.element_from_atoms([0, 1]))
    assert not B.contains(A.element_from_atoms([2]))
    assert B.contains(A.element_from_atoms([0]))


def test_whole_ideal_is_dense():
    A = finite_algebra(2)
    assert Ideal(A, A.top).is_dense()


def test_proper_finite_ideal_is_not_dense():
    A = finite_algebra(2)
    assert not Ideal(A, A.atom(0)).is_dense()


def test_ray_free_ideal_rejects_rays_and_is_dense():
    A = interval_algebra()
    B = ray_free_ideal(A)
    assert not B.contains(ie((None, 0)))
    assert B.contains(ie((0, 1), (2, 3)))
    assert B.is_dense()


def test_bounded_below_shrinks_any_nonzero_element():
    A = interval_algebra()
    rng = random.Random(3)
    for _ in range(200):
        a = random_interval_element(rng)
        m = bounded_below(a)
        if a.is_zero:
            assert m.is_zero
        else:
            assert not m.is_zero and m.is_bounded and A.leq(m, a)
