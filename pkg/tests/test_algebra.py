import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multigraded.algebra import (
    INHOMOGENEOUS,
    ContextMismatch,
    DegreeMismatch,
    GradedContext,
    Polynomial,
    degree_of,
    left_partial,
    normal_form,
    substitute,
)
from multigraded.grading import BL, DELIGNE, MultiDegree, SlotSignature, koszul_exponent

from randgen import monomials, random_context, random_poly


def word_product(ctx, f, g):
    """Oracle: multiply by concatenating generator words and bubble-sorting them."""
    odd = [koszul_exponent(d, d, ctx.convention) for d in ctx.degrees]
    out = {}
    for ma, ca in f.terms.items():
        for mb, cb in g.terms.items():
            word = [i for i, e in enumerate(ma) for _ in range(e)] + [i for i, e in enumerate(mb) for _ in range(e)]
            sign = 1
            changed = True
            while changed:
                changed = False
                for k in range(len(word) - 1):
                    a, b = word[k], word[k + 1]
                    if a > b:
                        if koszul_exponent(ctx.degrees[a], ctx.degrees[b], ctx.convention):
                            sign = -sign
                        word[k], word[k + 1] = b, a
                        changed = True
            mono = [0] * len(ctx)
            for i in word:
                mono[i] += 1
            if any(o and e > 1 for o, e in zip(odd, mono)):
                continue
            key = tuple(mono)
            out[key] = out.get(key, 0) + sign * ca * cb
    return Polynomial(ctx, out)


seeds = st.integers(0, 10**9)


def _setup(seed, n=3):
    rng = random.Random(seed)
    ctx = random_context(rng, max_gens=5)
    pool = monomials(ctx, 2)
    return rng, ctx, [random_poly(rng, ctx, nterms=3, pool=pool) for _ in range(n)]


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_product_matches_word_oracle(seed):
    _, ctx, (f, g, _) = _setup(seed)
    assert f * g == word_product(ctx, f, g)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_product_is_associative(seed):
    _, ctx, (f, g, h) = _setup(seed)
    assert (f * g) * h == f * (g * h)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_graded_commutativity(seed):
    rng, ctx, _ = _setup(seed)
    pool = monomials(ctx, 2)
    a, b = rng.choice(pool), rng.choice(pool)
    f = Polynomial(ctx, {a: 2})
    g = Polynomial(ctx, {b: -3})
    s = ctx.sign(ctx.monomial_degree(a), ctx.monomial_degree(b))
    assert f * g == (g * f).scale(s)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_left_partial_is_a_graded_derivation(seed):
    rng, ctx, (f, g, _) = _setup(seed)
    name = rng.choice(ctx.names)
    for part in f.homogeneous_parts().values():
        s = ctx.sign(ctx.degree(name), degree_of(part))
        lhs = left_partial(part * g, name)
        rhs = left_partial(part, name) * g + (part * left_partial(g, name)).scale(s)
        assert lhs == rhs


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_substitution_is_an_algebra_map(seed):
    rng, ctx, (f, g, _) = _setup(seed)
    pool = monomials(ctx, 2)
    images = {}
    for n in ctx.names:
        images[n] = random_poly(rng, ctx, nterms=2, degree=ctx.degree(n), pool=pool)
    phi = lambda p: substitute(p, images, target=ctx)
    assert phi(f * g) == phi(f) * phi(g)
    assert phi(f + g) == phi(f) + phi(g)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_identity_substitution(seed):
    _, ctx, (f, _, _) = _setup(seed)
    assert substitute(f, {n: ctx.gen(n) for n in ctx.names}) == f


def _ctx(conv=BL):
    sig = SlotSignature(1, 1, ("p", "gh"))
    gens = (
        ("x", MultiDegree((0,), (0,))),
        ("y", MultiDegree((0,), (0,))),
        ("t", MultiDegree((1,), (0,))),
        ("c", MultiDegree((0,), (1,))),
    )
    return GradedContext(sig, conv, gens)


def test_odd_generator_squares_to_zero():
    ctx = _ctx()
    t, c = ctx.gens("t", "c")
    assert (t * t).is_zero()
    assert (c * c).is_zero()
    # both odd under BL; under Deligne they sit in different slots and commute
    assert (t * c) == -(c * t)
    dctx = _ctx(DELIGNE)
    t, c = dctx.gens("t", "c")
    assert (t * c) == (c * t)


def test_normal_form_of_words():
    ctx = _ctx()
    assert normal_form(ctx, ["c", "t"]) == -(ctx.gen("t") * ctx.gen("c"))
    assert normal_form(ctx, ["t", "x", "t"]).is_zero()
    assert normal_form(ctx, ["y", "x", "x"], 2) == ctx.parse("2*x^2*y")


def test_degree_of():
    ctx = _ctx()
    assert degree_of(ctx.parse("x*t + y*t")) == MultiDegree((1,), (0,))
    assert degree_of(ctx.parse("x + t")) is INHOMOGENEOUS
    assert degree_of(ctx.zero()) == ctx.zero_degree()


def test_homogeneous_parts_sum_back():
    ctx = _ctx()
    f = ctx.parse("x + t + x*c - 2*y^2 + t*c")
    parts = f.homogeneous_parts()
    assert len(parts) == 4
    assert sum(parts.values(), ctx.zero()) == f


def test_substitute_degree_check():
    ctx = _ctx()
    f = ctx.parse("x*t")
    with pytest.raises(DegreeMismatch):
        substitute(f, {"x": ctx.gen("t"), "y": ctx.gen("y"), "t": ctx.gen("t"), "c": ctx.gen("c")})
    with pytest.raises(KeyError):
        substitute(f, {"x": ctx.gen("x")})
    out = substitute(f, {"x": ctx.gen("y")}, target=ctx, keep_missing=True)
    assert out == ctx.parse("y*t")


def test_mixing_contexts_is_an_error():
    a, b = _ctx(), _ctx(DELIGNE)
    with pytest.raises(ContextMismatch):
        a.gen("x") + b.gen("x")


def test_lift_and_restrict():
    ctx = _ctx()
    small = ctx.restrict(["x", "t"])
    f = small.parse("x^2*t")
    assert f.lift(ctx) == ctx.parse("x^2*t")


def test_power_and_constants():
    ctx = _ctx()
    x, y = ctx.gens("x", "y")
    assert (x + y) ** 2 == ctx.parse("x^2 + 2*x*y + y^2")
    assert (x + 1).constant_term() == 1
    assert ctx.const(Fraction(1, 2)) * 2 == ctx.one()
    assert ctx.parse("3").is_constant()
