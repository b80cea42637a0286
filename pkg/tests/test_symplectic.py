import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multigraded.algebra import degree_of, left_partial
from multigraded.calculus import apply, commutator, interior_product, squares_to_zero
from multigraded.grading import BL, DELIGNE, MultiDegree, par
from multigraded.models import coordinate_space
from multigraded.symplectic import (
    ConstantSymplecticForm,
    DegenerateFormError,
    InhomogeneousError,
    canonical_cotangent,
    check_master_consistency,
    hamiltonian_vf,
    master_equation,
    poisson_bracket,
    rational_inverse,
)

from randgen import monomials, random_poly

seeds = st.integers(0, 10**9)


def _cotangent(rng, conv=None, order=None):
    conv = conv or rng.choice([BL, DELIGNE])
    pars = [rng.randint(0, 1) for _ in range(rng.randint(1, 3))]
    M = coordinate_space([f"x{i + 1}" for i in range(len(pars))], pars, conv)
    ext, om = canonical_cotangent(M, prefix="p", order=order or rng.choice(["pq", "qp"]))
    return M, ext, om


def _homogeneous(rng, ext, pool):
    f = random_poly(rng, ext, pool=pool, nterms=3)
    parts = list(f.homogeneous_parts().values())
    return rng.choice(parts) if parts else ext.zero()


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_canonical_form_is_closed_nondegenerate_symmetric(seed):
    rng = random.Random(seed)
    _, _, om = _cotangent(rng)
    assert om.is_closed()
    assert om.is_nondegenerate()
    assert om.is_graded_symmetric()


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_hamiltonian_vf_defining_equation(seed):
    rng = random.Random(seed)
    _, ext, om = _cotangent(rng)
    f = _homogeneous(rng, ext, monomials(ext, 3))
    X = hamiltonian_vf(om, f)
    sh = om.shifted
    assert apply(interior_product(X, sh), om.omega) == apply(sh.differential(), sh.embed(f))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_bracket_symmetry_follows_interior_products(seed):
    # (f,g) = i_Xf i_Xg Omega and interior products graded-commute
    rng = random.Random(seed)
    _, ext, om = _cotangent(rng)
    pool = monomials(ext, 2)
    f, g = (_homogeneous(rng, ext, pool) for _ in range(2))
    sh = om.shifted
    deg_i = lambda p: hamiltonian_vf(om, p).degree.pad(ext.signature, sh.context.signature) - sh.shift_degree
    s = sh.context.sign(deg_i(f), deg_i(g))
    assert poisson_bracket(om, f, g) == poisson_bracket(om, g, f).scale(s)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_hamiltonian_map_is_bracket_homomorphism_up_to_sign(seed):
    rng = random.Random(seed)
    _, ext, om = _cotangent(rng)
    pool = monomials(ext, 2)
    f, g = (_homogeneous(rng, ext, pool) for _ in range(2))
    lhs = commutator(hamiltonian_vf(om, f), hamiltonian_vf(om, g))
    rhs = hamiltonian_vf(om, poisson_bracket(om, f, g))
    assert lhs == rhs or lhs == -rhs


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_master_equation_agrees_with_hamiltonian_square(seed):
    rng = random.Random(seed)
    _, ext, om = _cotangent(rng)
    pool = monomials(ext, 3)
    S = random_poly(rng, ext, pool=pool, nterms=3)
    for part in S.homogeneous_parts().values():
        X = hamiltonian_vf(om, part)
        if ext.sign(X.degree, X.degree) == -1:
            assert check_master_consistency(om, part)


def test_even_closed_form_of_hamiltonian_vf():
    # derived: on an even base with omega = sum dp dx,
    # X_f = df/dp d/dx + (-1)^|f| df/dx d/dp
    rng = random.Random(7)
    M = coordinate_space(["x1", "x2"], [0, 0], BL)
    ext, om = canonical_cotangent(M, prefix="p")
    pool = monomials(ext, 3)
    for _ in range(30):
        f = _homogeneous(rng, ext, pool)
        if not f:
            continue
        X = hamiltonian_vf(om, f)
        F = par(degree_of(f))
        for x in M.names:
            assert X.value(x) == left_partial(f, "p" + x)
            assert X.value("p" + x) == left_partial(f, x).scale((-1) ** F)


def _printed_bl_formula(ext, M, f):
    F = par(degree_of(f))
    vals = {}
    for x in M.names:
        i = par(M.degree(x))
        vals[x] = left_partial(f, "p" + x).scale((-1) ** (F * (i + 1)))
        vals["p" + x] = left_partial(f, x).scale((-1) ** ((F + 1) * (i + 1)))
    return vals


def test_printed_closed_formula_x_components_for_even_functions():
    rng = random.Random(11)
    M = coordinate_space(["x1", "x2"], [0, 0], BL)
    ext, om = canonical_cotangent(M, prefix="p")
    pool = monomials(ext, 3)
    for _ in range(30):
        f = _homogeneous(rng, ext, pool)
        if not f or par(degree_of(f)):
            continue
        X = hamiltonian_vf(om, f)
        printed = _printed_bl_formula(ext, M, f)
        assert all(X.value(x) == printed[x] for x in M.names)


@pytest.mark.xfail(strict=True, reason="printed p-component sign is opposite to the one forced by i_X Omega = df")
def test_printed_closed_formula_p_components():
    M = coordinate_space(["x1", "x2"], [0, 0], BL)
    ext, om = canonical_cotangent(M, prefix="p")
    f = ext.parse("x1^2*px1*px2")
    X = hamiltonian_vf(om, f)
    printed = _printed_bl_formula(ext, M, f)
    assert all(X.value("p" + x) == printed["p" + x] for x in M.names)


def test_basic_brackets():
    M = coordinate_space(["x"], [0], BL)
    ext, om = canonical_cotangent(M, prefix="p")
    x, p = ext.gens("x", "px")
    assert poisson_bracket(om, p, x) == ext.one()
    assert poisson_bracket(om, x, p) == ext.one()
    assert poisson_bracket(om, x, x).is_zero()


def test_darboux_plane():
    ctx = coordinate_space(["q", "p"], [0, 0], BL)
    om = ConstantSymplecticForm.from_matrix(ctx, [[0, -1], [1, 0]], MultiDegree((0,), ()))
    assert om.is_closed() and om.is_nondegenerate()
    H = ctx.parse("1/2*p^2 + 1/2*q^2")
    X = hamiltonian_vf(om, H)
    assert X.value("q") == ctx.parse("-p")
    assert X.value("p") == ctx.parse("q")
    # Omega = dp dq, so X_q = d/dp and (q, p) = X_q(p) = 1
    assert poisson_bracket(om, ctx.gen("q"), ctx.gen("p")) == ctx.one()


def test_lie_poisson_function_solves_master_equation():
    M = coordinate_space(["x1", "x2", "x3"], [0, 0, 0], BL)
    ext, om = canonical_cotangent(M, prefix="p")
    Pi = ext.parse("x3*px1*px2 + x1*px2*px3 + x2*px3*px1")
    assert master_equation(om, Pi)
    assert squares_to_zero(hamiltonian_vf(om, Pi))
    bad = ext.parse("x3*px1*px2 + x2*px2*px3")
    assert not master_equation(om, bad)
    assert poisson_bracket(om, bad, bad) == ext.parse("-2*x3*px1*px2*px3")


def test_errors():
    ctx = coordinate_space(["q", "p"], [0, 0], BL)
    with pytest.raises(ValueError):
        ConstantSymplecticForm.from_matrix(ctx, [[0, 1], [1, 0]], MultiDegree((0,), ()))
    om = ConstantSymplecticForm.from_matrix(ctx, [[0, 0], [0, 0]], MultiDegree((0,), ()))
    assert not om.is_nondegenerate()
    with pytest.raises(DegenerateFormError):
        hamiltonian_vf(om, ctx.gen("q"))
    M = coordinate_space(["x"], [0], BL)
    ext, om = canonical_cotangent(M, prefix="p")
    with pytest.raises(InhomogeneousError):
        master_equation(om, ext.parse("x + px"))


def test_rational_inverse():
    F = Fraction
    assert rational_inverse([[F(2), F(1)], [F(1), F(1)]]) == [[1, -1], [-1, 2]]
    assert rational_inverse([[F(1), F(2)], [F(2), F(4)]]) is None
    assert rational_inverse([]) == []
