import random

import pytest

from conftest import (
    closed_form_dims,
    known_square_identity_holds,
    mod_v1_expected_dims,
    sampled_dims,
)
from syntomic.arith import Monomial
from syntomic.linalg import (
    CERTIFIED,
    WindowCutoffs,
    euler_characteristic,
    square_cohomology,
    verify_truncation,
)
from syntomic.zp import (
    build_zp_square,
    del_action,
    left_window,
    mod_v1_cohomology,
    mod_v1_named_basis,
    mod_v1_square,
    named_basis,
    right_window,
    standard_cutoffs,
    syntomic_basis_table,
    v1_bottom_action,
    v1_top_action,
    zp_cohomology,
)

PRIMES = (2, 3, 5, 7)


# ------------------------------------------------------------- windows


def test_windows():
    assert left_window(3, 7) == 3
    assert right_window(3, 7) == 3
    assert right_window(3, 6) == 2
    assert right_window(5, 0) == -1


def test_corner_sizes_weight_zero_and_bott_weight():
    sq = build_zp_square(5, 0)
    assert sq.corner_sizes() == (1, 0, 1, 0)
    assert euler_characteristic(sq) == 0
    sq = build_zp_square(5, 4)
    assert sq.corner_sizes() == (2, 0, 6, 3)
    assert euler_characteristic(sq) == -1


def test_builder_rejects_bad_input():
    with pytest.raises(ValueError):
        build_zp_square(4, 1)
    with pytest.raises(ValueError):
        build_zp_square(3, -1)
    with pytest.raises(ValueError):
        build_zp_square(3, 1, extra=-1)


# ------------------------------------------------------------ dimensions


@pytest.mark.parametrize("p", PRIMES)
def test_certified_dims_match_closed_form(p):
    for i in range(3 * p + 1):
        rep = zp_cohomology(p, i)
        assert rep.status == CERTIFIED, (p, i)
        assert rep.dims == closed_form_dims(p, i), (p, i)


def test_spot_values():
    assert zp_cohomology(3, 0).dims == (1, 1, 0)
    assert zp_cohomology(3, 2).dims == (1, 2, 0)
    assert zp_cohomology(3, 3).dims == (0, 2, 1)
    assert zp_cohomology(2, 2).dims == (1, 3, 1)
    assert zp_cohomology(5, 5).dims == (0, 2, 1)
    assert zp_cohomology(7, 12).dims == (1, 2, 0)


@pytest.mark.parametrize("extra", [1, 2])
def test_dims_stable_under_extra_margin(extra):
    for p in PRIMES:
        for i in range(2 * p + 1):
            assert zp_cohomology(p, i, extra=extra).dims == zp_cohomology(p, i).dims


def test_euler_characteristic_matches_dims():
    for p in PRIMES:
        for i in range(3 * p + 1):
            rep = zp_cohomology(p, i)
            h0, h1, h2 = rep.dims
            assert h0 - h1 + h2 == rep.euler
            assert rep.euler == (0 if i == 0 else -1)


# ------------------------------------------------------------ generators


def test_named_basis_weight_zero():
    names = [c.name for c in named_basis(3, 0)]
    assert names == ["1", "del"]


def test_named_basis_bott_weight():
    cls = {c.name: c for c in named_basis(3, 2)}
    assert set(cls) == {"v1", "v1*del", "gamma_2"}
    assert cls["v1"].degree == 0 and cls["v1"].rep == "E^2*z*t^-2"
    assert cls["v1*del"].degree == 1 and cls["v1*del"].rep == "z^3*t^-2"
    assert cls["gamma_2"].degree == 1 and cls["gamma_2"].rep == "z^2*t^-2"


def test_named_basis_weight_p():
    cls = {c.name: c for c in named_basis(3, 3)}
    assert set(cls) == {"v1*gamma_1", "lambda1", "del*lambda1"}
    assert cls["lambda1"].degree == 1
    assert cls["lambda1"].rep == "E^2*Dz*t^-3"
    assert cls["del*lambda1"].degree == 2
    assert cls["del*lambda1"].rep == "z^2*Dz*t^-3"


def test_named_basis_deeper_tower():
    # weight p + (p-1): the next rung of the degree-2 tower
    cls = {c.name: c for c in named_basis(3, 5)}
    assert set(cls) == {"v1^2*gamma_1", "v1*lambda1", "v1*del*lambda1"}
    assert cls["v1*del*lambda1"].degree == 2
    assert cls["v1*del*lambda1"].rep == "z^5*Dz*t^-5"


@pytest.mark.parametrize("p", PRIMES)
def test_generator_counts_match_certified_dims(p):
    for i in range(3 * p + 1):
        rep = zp_cohomology(p, i)
        by_deg = [sum(1 for c in rep.generators if c.degree == d) for d in (0, 1, 2)]
        assert tuple(by_deg) == rep.dims


def test_basis_table_agrees_with_reports():
    rows = syntomic_basis_table(3, 8)
    assert len(rows) == 9
    for row in rows:
        rep = zp_cohomology(3, row.weight)
        assert (row.h0, row.h1, row.h2) == rep.dims
        assert row.generators == tuple(c.name for c in rep.generators)
        assert row.status == CERTIFIED


# ----------------------------------------------------------- truncation


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("extra", [1, 2])
def test_truncation_stability(p, extra):
    for i in range(3 * p + 1):
        sq = build_zp_square(p, i, extra=extra)
        assert verify_truncation(sq, standard_cutoffs(p, i))


def test_lowered_cutoffs_fail():
    sq = build_zp_square(3, 3, extra=2)
    c = standard_cutoffs(3, 3)
    low = WindowCutoffs(tl=c.tl - 1, tr=c.tr - 1, bl=c.bl - 1, br=c.br - 1)
    chk = verify_truncation(sq, low)
    assert not chk
    assert chk.failing is not None


def test_truncation_check_pinpoints_bott_column():
    # one notch below the standard window the Bott-power column k = i/(p-1)
    # sits in the complement but maps inside the baseline: not dominated
    sq = build_zp_square(2, 2, extra=1)
    c = standard_cutoffs(2, 2)
    low = WindowCutoffs(tl=c.tl - 1, tr=c.tr, bl=c.bl, br=c.br)
    chk = verify_truncation(sq, low)
    assert not chk


# ------------------------------------------------------ known identities


def test_known_square_identity_on_grid():
    for p in PRIMES:
        for i in range(3 * p + 1):
            assert known_square_identity_holds(build_zp_square(p, i)), (p, i)
            assert known_square_identity_holds(build_zp_square(p, i, extra=2))
    for p in (2, 3, 5):
        for i in range(2 * p + 2):
            assert known_square_identity_holds(mod_v1_square(p, i)), (p, i)


def test_exact_zero_columns():
    # bott column: vertical map and horizontal cancellation at k(p-1) = i
    sq = build_zp_square(3, 4)
    assert sq.nabla_top[2].terms == () and sq.nabla_top[2].tail_from is None
    assert sq.v_left[2].terms == () and sq.v_left[2].tail_from is None
    assert sq.nabla_bot[0].terms == ()
    assert sq.nabla_bot[6].terms == () and sq.nabla_bot[6].tail_from is None
    # non-bott columns keep their exact leads and unknown tails
    assert sq.nabla_top[0].tail_from == 4
    lead_deg, lead = sq.nabla_bot[2].terms[0]
    assert (lead_deg, lead.value) == (2, 2)
    assert sq.nabla_bot[2].tail_from == 3


def test_in_span_partners():
    sq = build_zp_square(3, 4)
    # p | m with m = 3, 6 in the window; m = 6 is the exact-zero bott column
    assert sq.bl_in_span == {3: 1}
    sq = build_zp_square(2, 2)
    assert sq.bl_in_span == {2: 1}


# --------------------------------------------------------------- mod v1


@pytest.mark.parametrize("p", PRIMES)
def test_mod_v1_dims(p):
    for i in range(3 * p + 1):
        rep = mod_v1_cohomology(p, i)
        assert rep.status == CERTIFIED, (p, i)
        assert rep.dims == mod_v1_expected_dims(p, i), (p, i)


def test_mod_v1_square_shapes():
    sq = mod_v1_square(5, 4)  # weight p-1 keeps two top-right classes
    assert sq.corner_sizes() == (1, 2, 5, 5)
    assert sq.bl_in_span == {4: 0}
    sq = mod_v1_square(5, 5)
    assert sq.corner_sizes() == (1, 1, 5, 5)
    assert sq.bl_in_span == {}
    sq = mod_v1_square(5, 2)  # below the bott weight: the plain square
    assert sq.corner_sizes() == build_zp_square(5, 2).corner_sizes()


def test_mod_v1_generator_names():
    assert [c.name for c in mod_v1_named_basis(5, 4)] == ["gamma_4"]
    assert [c.name for c in mod_v1_named_basis(5, 5)] == ["lambda1", "del*lambda1"]
    assert mod_v1_named_basis(5, 6) == ()
    assert [c.name for c in mod_v1_named_basis(2, 1)] == ["gamma_1"]


# ------------------------------------------------------------- sampling


SAMPLE_GRID = (
    [(2, i) for i in range(7)]
    + [(3, i) for i in range(10)]
    + [(5, 4), (5, 5), (5, 6), (5, 10)]
    + [(7, 6), (7, 7), (7, 8)]
)


@pytest.mark.parametrize("p,i", SAMPLE_GRID)
def test_certified_dims_are_instantiation_invariant(p, i):
    """100 random instantiations recomputed with plain F_p elimination."""
    sq = build_zp_square(p, i)
    rep = square_cohomology(sq)
    assert rep.status == CERTIFIED
    rng = random.Random(1000 * p + i)
    for _ in range(100):
        assert sampled_dims(sq, rng) == rep.dims


@pytest.mark.parametrize("p,i", [(3, 2), (3, 4), (2, 3), (5, 6)])
def test_extra_margin_squares_sample_consistently(p, i):
    sq = build_zp_square(p, i, extra=1)
    rep = square_cohomology(sq)
    assert rep.status == CERTIFIED
    rng = random.Random(17)
    for _ in range(50):
        assert sampled_dims(sq, rng) == rep.dims


@pytest.mark.parametrize("p", (2, 3, 5))
def test_mod_v1_squares_sample_consistently(p):
    for i in (p - 1, p, p + 1, 2 * p - 1):
        sq = mod_v1_square(p, i)
        rep = square_cohomology(sq)
        assert rep.status == CERTIFIED
        rng = random.Random(31 * p + i)
        for _ in range(100):
            assert sampled_dims(sq, rng) == rep.dims, (p, i)


# ------------------------------------------------------------ products


def test_v1_actions():
    m = Monomial(e_pow=2, z_pow=1, twist=2)
    assert v1_top_action(m, 3) == Monomial(e_pow=4, z_pow=2, twist=4)
    b = Monomial(z_pow=2, twist=2)
    assert v1_bottom_action(b, 3) == Monomial(z_pow=5, twist=4)


def test_del_action_shapes():
    p = 3
    corner, image = del_action("TL", Monomial(e_pow=2, z_pow=1, twist=2), p)
    assert corner == "BL" and image == Monomial(z_pow=3, twist=2)
    corner, image = del_action("TR", Monomial(e_pow=2, nabla=True, twist=3), p)
    assert corner == "BR" and image == Monomial(z_pow=2, nabla=True, twist=3)
    assert del_action("BL", Monomial(z_pow=3, twist=2), p) is None
    assert del_action("BR", Monomial(z_pow=2, nabla=True, twist=3), p) is None
    with pytest.raises(ValueError):
        del_action("TL", Monomial(e_pow=1, twist=2), p)  # not Nygaard-saturated
    with pytest.raises(ValueError):
        del_action("XX", Monomial(), p)


def test_del_squares_to_zero_through_the_bottom_row():
    # applying del twice factors through a bottom corner, where it vanishes
    p = 5
    corner, image = del_action("TL", Monomial(e_pow=4, z_pow=1, twist=4), p)
    assert del_action(corner, image, p) is None


def test_del_commutes_with_v1():
    p = 3
    m = Monomial(e_pow=4, z_pow=2, twist=4)
    _, a = del_action("TL", v1_top_action(m, p), p)
    b = v1_bottom_action(del_action("TL", m, p)[1], p)
    assert a == b
