import json

import pytest

from qcluster.rep import (
    ext_dim,
    hom_dim,
    injective,
    interval_modules,
    projective,
    random_rep,
    simple,
    standard_modules,
    zero_rep,
)
from qcluster.torus import LaurentScalar
from qcluster.verify import (
    DEFAULT_CONVENTION,
    ConventionConfig,
    PreconditionError,
    calibrate,
    cdz_sides,
    character,
    compare,
    context,
    interp_motivic,
    verify_bilinear,
    verify_cdz,
    verify_dim1_refined,
    verify_fiber_law,
    verify_hom_counts,
    verify_initial,
    verify_split_product,
    verify_strata_counts,
)


def a2_closed_form(ctx, p):
    # (q - 1)(t X̃_{P1} + 1)
    x = character(ctx, projective(ctx.quiver, p, 0)).shift(2) + ctx.torus.one()
    return x.scale(LaurentScalar({4: 1, 0: -1}))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cdz_a2_closed_form(a2, a2ctx, p):
    s1, s2 = simple(a2, p, 0), simple(a2, p, 1)
    rep = verify_cdz(a2ctx, s1, s2)
    assert rep.equal
    lhs, _, _ = cdz_sides(a2ctx, s1, s2)
    assert compare(lhs, a2_closed_form(a2ctx, p), p)[0]


def test_cdz_precondition(a2, a2ctx):
    with pytest.raises(PreconditionError):
        verify_cdz(a2ctx, simple(a2, 3, 1), simple(a2, 3, 0))


def test_cdz_wrong_sign_fails_in_constant_term(a2):
    ctx = context(a2, -1)
    rep = verify_cdz(ctx, simple(a2, 3, 0), simple(a2, 3, 1))
    assert not rep.equal
    assert [0, 0] in [d["alpha"] for d in rep.diagnostics]


def test_cdz_kronecker(kron, kctx):
    rep = verify_cdz(kctx, simple(kron, 2, 0), simple(kron, 2, 1))
    assert rep.equal and rep.details["eps_terms"] == 3


def test_cdz_a4_sample(a4):
    ctx = context(a4)
    mods = interval_modules(a4, 2)
    pairs = [(x, y) for x in mods for y in mods if ext_dim(x, y) >= 1]
    for x, y in pairs[:4]:
        assert verify_cdz(ctx, x, y).equal


@pytest.mark.parametrize("p", [2, 3, 5])
def test_initial_both_sides(a2, a2ctx, p):
    p1, i1 = projective(a2, p, 0), injective(a2, p, 0)
    left = verify_initial(a2ctx, p1, i1, "left")
    right = verify_initial(a2ctx, p1, i1, "right")
    assert left.equal and right.equal
    assert left.details["left"]["lambda2"] == -left.details["right"]["lambda2"]
    assert left.details["left"]["pairing2"] == -left.details["right"]["pairing2"]


def test_initial_precondition(a2, a2ctx):
    with pytest.raises(PreconditionError):
        verify_initial(a2ctx, simple(a2, 2, 1), injective(a2, 2, 0))
    with pytest.raises(PreconditionError):
        verify_initial(a2ctx, projective(a2, 2, 0), simple(a2, 2, 1))


def test_initial_literal_sign_fails(a2, a2ctx):
    literal = ConventionConfig(1, "q", 1)
    rep = verify_initial(a2ctx, projective(a2, 3, 0), injective(a2, 3, 0), "left", literal)
    assert not rep.equal


def test_initial_on_kronecker(kron, kctx):
    s, pr, inj = standard_modules(kron, 2)
    for m in [pr[0], s[0], inj[1]]:
        for i in inj:
            if hom_dim(m, i):
                for side in ("left", "right"):
                    assert verify_initial(kctx, m, i, side).equal


def test_hom_counts(a2, kron):
    assert verify_hom_counts(projective(a2, 3, 0), injective(a2, 3, 0)).equal
    assert verify_hom_counts(injective(kron, 2, 1), injective(kron, 2, 1)).equal


def test_fiber_law_examples(a2, kron, rng):
    rep = verify_fiber_law(simple(a2, 2, 0), simple(a2, 2, 1))
    assert rep.equal and rep.details["strata"] == 4
    assert verify_fiber_law(simple(kron, 3, 0), simple(kron, 3, 1)).equal
    m = random_rep(kron, 2, (1, 2), rng)
    n = random_rep(kron, 2, (2, 1), rng)
    assert verify_fiber_law(m, n).equal


def test_strata_counts(a2, kron):
    for p in (2, 3):
        assert verify_strata_counts(simple(a2, p, 0), simple(a2, p, 1)).equal
        assert verify_strata_counts(simple(kron, p, 0), simple(kron, p, 1)).equal


def test_bilinear(a2ctx, kctx):
    assert verify_bilinear(a2ctx, 300).equal
    assert verify_bilinear(kctx, 300, seed=5).equal


def test_split_product(a2, a2ctx, kctx, kron, rng):
    assert verify_split_product(a2ctx, simple(a2, 2, 0), simple(a2, 2, 1)).equal
    assert verify_split_product(a2ctx, projective(a2, 3, 0), simple(a2, 3, 1)).equal
    assert verify_split_product(a2ctx, zero_rep(a2, 3), simple(a2, 3, 1)).equal
    m = random_rep(kron, 2, (1, 1), rng)
    assert verify_split_product(kctx, m, injective(kron, 2, 1)).equal


def test_dim1(a2, a2ctx, kron, kctx):
    rep = verify_dim1_refined(a2ctx, simple(a2, 3, 0), simple(a2, 3, 1))
    assert rep.equal and rep.details["hyperplanes_tested"] == 1 and rep.details["valid_hyperplanes"] == 1
    for p in (2, 3):
        rep = verify_dim1_refined(kctx, simple(kron, p, 0), simple(kron, p, 1))
        assert rep.equal and rep.details["hyperplanes_tested"] == p + 1
        assert rep.details["valid_hyperplanes"] >= 1
    with pytest.raises(PreconditionError):
        verify_dim1_refined(kctx, simple(kron, 2, 0), simple(kron, 2, 1), eps=[[1, 0], [0, 1]])


def test_interp_motivic(a2, a2ctx):
    def runner(p):
        lhs, rhs, _ = cdz_sides(a2ctx, simple(a2, p, 0), simple(a2, p, 1))
        return lhs, rhs

    rep = interp_motivic(a2ctx, runner, [2, 3, 5, 7, 11], "cdz")
    assert rep.consistent and rep.equal
    assert rep.coefficients["lhs"]["(0,0)"] == ["(q + -1)"]

    def closed(p):
        return cdz_sides(a2ctx, simple(a2, p, 0), simple(a2, p, 1))[0], a2_closed_form(a2ctx, p)

    assert interp_motivic(a2ctx, closed, [2, 3, 5]).equal


def test_interp_detects_non_polynomial(a2, a2ctx):
    def runner(p):
        return a2ctx.torus.monomial((0, 0), 2**p), a2ctx.torus.zero()

    rep = interp_motivic(a2ctx, runner, [2, 3, 5, 7])
    assert not rep.consistent and not rep.equal


def test_calibrate():
    res = calibrate((2, 3, 5))
    assert res.config == DEFAULT_CONVENTION
    assert res.config.sigma == 1 and res.config.prefactor == "q"
    assert res.corrected and res.literal_passes == []
    assert calibrate((7,)).config == res.config
    assert json.loads(res.to_json())["config"]["sigma"] == 1


def test_reports_are_deterministic(a2, a2ctx):
    a = verify_cdz(a2ctx, simple(a2, 3, 0), simple(a2, 3, 1)).to_json()
    b = verify_cdz(a2ctx, simple(a2, 3, 0), simple(a2, 3, 1)).to_json()
    assert a == b
    assert list(json.loads(a)) == sorted(json.loads(a))
