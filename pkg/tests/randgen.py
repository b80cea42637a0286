"""Seeded generators for random contexts, polynomials and derivations."""
import itertools
from fractions import Fraction

from multigraded.algebra import GradedContext, Polynomial
from multigraded.calculus import Derivation
from multigraded.grading import BL, DELIGNE, MultiDegree, SlotSignature


def random_signature(rng, max_z2=2, max_z=2):
    k, l = rng.randint(0, max_z2), rng.randint(0, max_z)
    if k + l == 0:
        l = 1
    return SlotSignature(k, l)


def random_degree(rng, sig, lo=-2, hi=2):
    return MultiDegree(
        tuple(rng.randint(0, 1) for _ in range(sig.z2_count)),
        tuple(rng.randint(lo, hi) for _ in range(sig.z_count)),
    )


def random_context(rng, max_gens=6, convention=None, lo=-1, hi=2):
    sig = random_signature(rng)
    conv = convention or rng.choice([BL, DELIGNE])
    n = rng.randint(1, max_gens)
    gens = tuple((f"g{i + 1}", random_degree(rng, sig, lo, hi)) for i in range(n))
    return GradedContext(sig, conv, gens)


def monomials(ctx, maxdeg):
    out = []
    for e in itertools.product(range(maxdeg + 1), repeat=len(ctx)):
        if sum(e) <= maxdeg and ctx.check_monomial(e):
            out.append(e)
    return out


def random_poly(rng, ctx, maxdeg=3, nterms=3, degree=None, pool=None):
    pool = pool if pool is not None else monomials(ctx, maxdeg)
    if degree is not None:
        pool = [m for m in pool if ctx.monomial_degree(m) == degree]
    if not pool:
        return ctx.zero()
    terms = {}
    for _ in range(nterms):
        terms[rng.choice(pool)] = Fraction(rng.choice([-2, -1, 1, 2, 3]))
    return Polynomial(ctx, terms)


def random_derivation(rng, ctx, maxdeg=3, pool=None):
    """A homogeneous derivation whose degree is fixed by one random component."""
    pool = pool if pool is not None else monomials(ctx, maxdeg)
    g = rng.choice(ctx.names)
    m = rng.choice(pool)
    deg = ctx.monomial_degree(m) - ctx.degree(g)
    vals = {}
    for n in ctx.names:
        if rng.random() < 0.7 or n == g:
            v = random_poly(rng, ctx, maxdeg, nterms=2, degree=deg + ctx.degree(n), pool=pool)
            if v:
                vals[n] = v
    return Derivation(ctx, vals, deg)
