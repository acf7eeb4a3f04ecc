"""Finite space checks: RC algebras, map predicates, rho, r/e, quotients."""

import pytest

from contactdual.errors import HypothesisError, InputError
from contactdual.topology import (
    absolute,
    closure_interior,
    dense_r_e,
    discrete_space,
    identity_map,
    indiscrete_space,
    make_space,
    map_predicates,
    point_map,
    quotient,
    rc_algebra,
    rho,
    sierpinski,
    space_predicates,
)


def x3():
    # points p,q,r with opens {}, {p}, {r}, {p,r}, {p,q,r}
    return make_space(("p", "q", "r"), [[], ["p"], ["r"], ["p", "r"], ["p", "q", "r"]])


# -- construction and closure/interior ---------------------------------------

def test_opens_must_close_under_union():
    with pytest.raises(InputError):
        make_space(("a", "b", "c"), [[], ["a"], ["b"], ["a", "b", "c"]])


def test_sierpinski_closure_of_open_point():
    cl, _ = closure_interior(sierpinski(), ["a"])
    assert cl == ("a", "b")


def test_interior_of_empty_is_empty():
    _, it = closure_interior(x3(), [])
    assert it == ()


def test_x3_interior_drops_the_fuzzy_point():
    _, it = closure_interior(x3(), ["p", "q"])
    assert it == ("p",)


# -- regular closed algebras ---------------------------------------------------

def test_sierpinski_rc_carrier_is_trivial():
    rc = rc_algebra(sierpinski())
    names = {rc.space.set_names(m) for m in rc.carrier}
    assert names == {(), ("a", "b")}


def test_x3_rc_carrier_and_complement():
    rc = rc_algebra(x3())
    names = {rc.space.set_names(m) for m in rc.carrier}
    assert names == {(), ("p", "q"), ("q", "r"), ("p", "q", "r")}
    pq = rc.space.mask_of(["p", "q"])
    assert rc.space.set_names(rc.complement(pq)) == ("q", "r")


def test_discrete_rc_carrier_is_the_powerset():
    rc = rc_algebra(discrete_space(("x", "y", "z")))
    assert len(rc.carrier) == 8


def test_rc_members_are_regular_closed():
    for space in (sierpinski(), x3(), discrete_space(("a", "b"))):
        rc = rc_algebra(space)
        for f in rc.carrier:
            assert space.closure(space.interior(f)) == f


# -- map predicates -------------------------------------------------------------

def test_indiscrete_collapse_is_irreducible():
    X = indiscrete_space(("a", "b"))
    Y = discrete_space(("*",))
    p = point_map(X, Y, {"a": "*", "b": "*"})
    assert map_predicates(p).irreducible


def test_discrete_collapse_is_not_irreducible():
    X = discrete_space(("a", "b"))
    Y = discrete_space(("*",))
    p = point_map(X, Y, {"a": "*", "b": "*"})
    rep = map_predicates(p)
    assert rep.closed and rep.surjective and not rep.irreducible


def test_identity_satisfies_everything():
    rep = map_predicates(identity_map(x3()))
    assert rep.continuous and rep.closed and rep.irreducible and rep.perfect
    assert rep.dense_image


# -- the image isomorphism -------------------------------------------------------

def test_rho_indiscrete_to_point():
    X = indiscrete_space(("a", "b"))
    Y = discrete_space(("*",))
    iso = rho(point_map(X, Y, {"a": "*", "b": "*"}))
    assert dict(iso.forward) == {0: 0, 3: 1}


def test_rho_identity_is_identity():
    iso = rho(identity_map(x3()))
    assert all(f == g for f, g in iso.forward)


def test_rho_rejects_non_irreducible():
    X = discrete_space(("a", "b"))
    Y = discrete_space(("*",))
    with pytest.raises(HypothesisError) as e:
        rho(point_map(X, Y, {"a": "*", "b": "*"}))
    assert e.value.predicate == "irreducible"


# -- dense subspaces ---------------------------------------------------------------

def test_dense_r_e_on_x3():
    sub, iso = dense_r_e(x3(), ("p", "r"))
    assert space_predicates(sub).discrete
    X = x3()
    pq = X.mask_of(["p", "q"])
    fwd = dict(iso.forward)
    assert sub.set_names(fwd[pq]) == ("p",)
    bwd = dict(iso.backward)
    assert X.set_names(bwd[sub.mask_of(["p"])]) == ("p", "q")


def test_dense_r_e_whole_space_is_identity():
    X = x3()
    _, iso = dense_r_e(X, X.points)
    assert all(f == g for f, g in iso.forward)


def test_dense_r_e_rejects_non_dense_subset():
    with pytest.raises(HypothesisError):
        dense_r_e(x3(), ("q",))


def test_r_e_mutually_inverse_exhaustive_small():
    import itertools
    from contactdual.harness import all_topologies

    for space in all_topologies(3):
        full = space.full_mask
        for k in range(1, len(space.points) + 1):
            for names in itertools.combinations(space.points, k):
                if space.closure(space.mask_of(names)) != full:
                    continue
                dense_r_e(space, names)  # raises on any iso failure


# -- quotients -----------------------------------------------------------------------

def test_quotient_of_discrete_is_discrete():
    X = discrete_space(("0", "1", "2"))
    Y, q = quotient(X, [["0", "1"], ["2"]])
    assert space_predicates(Y).discrete
    assert len(Y.points) == 2
    rep = map_predicates(q)
    assert rep.continuous and rep.surjective


def test_quotient_by_singletons_is_a_homeomorphic_copy():
    X = x3()
    Y, q = quotient(X, [["p"], ["q"], ["r"]])
    assert len(Y.opens) == len(X.opens)
    assert map_predicates(q).continuous


def test_quotient_rejects_non_partition():
    with pytest.raises(InputError):
        quotient(x3(), [["p"], ["q"]])


def test_indiscrete_collapse_quotient():
    X = indiscrete_space(("a", "b"))
    Y, _ = quotient(X, [["a", "b"]])
    assert len(Y.points) == 1


# -- space predicates -----------------------------------------------------------------

def test_sierpinski_predicates():
    rep = space_predicates(sierpinski())
    assert not rep.hausdorff
    assert rep.extremally_disconnected


def test_discrete_predicates():
    rep = space_predicates(discrete_space(("a", "b", "c")))
    assert rep.hausdorff and rep.discrete and rep.extremally_disconnected


def test_x3_not_hausdorff():
    assert not space_predicates(x3()).hausdorff


# -- absolutes ------------------------------------------------------------------------

def test_absolute_of_discrete_is_discrete_copy():
    X = discrete_space(("x", "y"))
    EX, pi = absolute(X)
    assert sorted(EX.points) == ["x", "y"]
    rep = map_predicates(pi)
    assert rep.perfect and rep.irreducible


def test_absolute_of_point():
    X = discrete_space(("*",))
    EX, _ = absolute(X)
    assert len(EX.points) == 1


def test_absolute_rejects_non_hausdorff():
    with pytest.raises(HypothesisError):
        absolute(sierpinski())
