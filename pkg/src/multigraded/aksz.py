"""Finite odd sources: Berezin integration, admissible measures, odd lifts and
superfield expansions.

Mapping spaces out of ``R^{0|m}`` are modelled by components: a target
coordinate ``q`` becomes ``sum_S theta_S q_S`` with ``theta_S`` the ordered
product of the source coordinates in ``S``.  Coefficients are extracted from
the left, which is also the Berezin orientation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GradedContext, Polynomial, substitute
from .calculus import Derivation, ShiftedContext, apply, lie_derivative, shift_parity, shift_tangent
from .grading import gh
from .models import SuperLieAlgebra, PoissonBivector, ce_differential
from .symplectic import ConstantSymplecticForm

__all__ = [
    "BerezinianMeasure",
    "Admissibility",
    "OddSourceLift",
    "SusyExpansion",
    "berezin",
    "theta_components",
    "measure_admissible",
    "top_cohomology_is_line",
    "odd_lift_step",
    "tangent_lift",
    "odd_source_lift",
    "susy_expand",
]


class NotOddError(ValueError):
    pass


@dataclass(frozen=True)
class BerezinianMeasure:
    """``int d gens[0] ... d gens[-1]``; ``deficit`` is the ghost degree it removes."""

    gens: tuple
    deficit: int | None = None

    def check(self, ctx: GradedContext) -> int:
        for g in self.gens:
            if g not in ctx:
                raise KeyError(f"measure generator {g!r} is not in the context")
            if not ctx.is_odd(g):
                raise NotOddError(f"measure generator {g!r} is not odd")
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("measure generators must be distinct")
        n = sum(gh(ctx.degree(g)) for g in self.gens)
        if self.deficit is not None and self.deficit != n:
            raise ValueError(f"declared deficit {self.deficit} but the generators carry ghost degree {n}")
        return n


def _top(ctx, names):
    """Monomial and sign of the ordered product of ``names`` in normal form."""
    mono = ctx.unit_monomial()
    sign = 1
    for n in names:
        i = ctx.index(n)
        e = tuple(1 if j == i else 0 for j in range(len(ctx)))
        s, mono = ctx.mono_mul(mono, e)
        sign *= s
    return sign, mono


def _extract(f: Polynomial, names, rest: GradedContext) -> Polynomial:
    """Left coefficient of the ordered product of ``names``, as a polynomial on ``rest``."""
    ctx = f.ctx
    idx = set(ctx.index(n) for n in names)
    keep = [ctx.index(n) for n in rest.names]
    drop = [i for i, n in enumerate(ctx.names) if n not in rest and i not in idx]
    sign, top = _top(ctx, names)
    out = {}
    for mono, c in f.terms.items():
        if any(not mono[i] for i in idx) or any(mono[i] for i in drop):
            continue
        remainder = tuple(0 if i in idx else e for i, e in enumerate(mono))
        s, _ = ctx.mono_mul(top, remainder)
        key = tuple(remainder[i] for i in keep)
        out[key] = out.get(key, 0) + c * s * sign
    return Polynomial(rest, out)


def berezin(f: Polynomial, mu: BerezinianMeasure) -> Polynomial:
    """Coefficient of ``gens[0] ... gens[-1]`` (moved to the front) in ``f``."""
    ctx = f.ctx
    mu.check(ctx)
    rest = ctx.restrict(n for n in ctx.names if n not in mu.gens)
    return _extract(f, mu.gens, rest)


def theta_components(f: Polynomial, thetas, rest: GradedContext | None = None) -> dict:
    """``{S: f_S}`` with ``f = sum_S theta_S f_S``; ``S`` runs over index tuples into ``thetas``."""
    ctx = f.ctx
    rest = rest or ctx.restrict(n for n in ctx.names if n not in thetas)
    out = {}
    for S in _subsets(len(thetas)):
        names = [thetas[i] for i in S]
        keep = set(names)
        g = Polynomial(ctx, {m: c for m, c in f.terms.items()
                             if all(bool(m[ctx.index(t)]) == (t in keep) for t in thetas)})
        v = _extract(g, names, rest)
        if v:
            out[S] = v
    return out


def _subsets(m):
    return [S for k in range(m + 1) for S in itertools.combinations(range(m), k)]


# ---------------------------------------------------------------------------
# measures


@dataclass
class Admissibility:
    ok: bool
    stage: str  # "structural", "invariance" or "" on success
    witness: object = None  # generator name or Polynomial

    def __bool__(self):
        return self.ok


def measure_admissible(Q: Derivation, mu: BerezinianMeasure | None = None) -> Admissibility:
    """Can the Berezinian over the odd positive-ghost generators be ``Q``-invariant?

    First reject any even generator of positive ghost degree (it can never be
    integrated against a Berezinian).  Then test ``int Q f = 0`` on every
    monomial ``f`` in the measure generators; the first failure is returned.
    """
    ctx = Q.ctx
    for name, deg in ctx.generators:
        if gh(deg) > 0 and not ctx.is_odd(name):
            return Admissibility(False, "structural", name)
    if mu is None:
        mu = BerezinianMeasure(tuple(n for n, d in ctx.generators if gh(d) > 0 and ctx.is_odd(n)))
    mu.check(ctx)
    gens = mu.gens
    for S in _subsets(len(gens)):
        f = ctx.one()
        for i in S:
            f = f * ctx.gen(gens[i])
        if berezin(apply(Q, f), mu):
            return Admissibility(False, "invariance", f)
    return Admissibility(True, "")


def top_cohomology_is_line(g: SuperLieAlgebra) -> bool:
    """``H^n(g) = R`` for an even Lie algebra of dimension ``n``.

    ``Q`` kills the top exterior power, so this holds exactly when no
    ``(n-1)``-cochain is mapped onto the top monomial.
    """
    if not g.is_even():
        raise ValueError("top cohomology is computed for even Lie algebras only")
    ctx, Q = ce_differential(g)
    n = len(ctx)
    top = (1,) * n
    for k in range(n):
        mono = tuple(0 if i == k else 1 for i in range(n))
        if apply(Q, Polynomial(ctx, {mono: 1})).coefficient(top):
            return False
    return True


# ---------------------------------------------------------------------------
# odd source lift


@dataclass(frozen=True)
class OddSourceLift:
    """Components of maps ``R^{0|m} -> target`` with lifted ``Q`` and ``omega``.

    ``components[(q, S)]`` names the ``theta_S`` component of the target
    coordinate ``q``; ``S`` is a tuple of 1-based source directions.
    """

    m: int
    target: GradedContext
    context: GradedContext
    components: dict
    Q: Derivation | None
    omega: ConstantSymplecticForm | None
    steps: tuple = field(default=(), repr=False)

    def name(self, q: str, S=()) -> str:
        return self.components[(q, tuple(S))]


def _ev_form(omega: ConstantSymplecticForm, sh: ShiftedContext, theta_slot: str):
    """``int dtheta ev*(omega)`` for ``ev*: q -> q + theta v_q``.

    On differentials ``ev*`` is extended theta-linearly, ``dq -> dq + theta dv_q``.
    """
    comps = sh.context
    dsh, _ = shift_tangent(comps, prefix="d")
    big = dsh.context.extend([("theta", dsh.context.signature.unit(theta_slot))])
    th = big.gen("theta")
    src = omega.shifted
    images = {}
    for q, dq in src.partners:
        v = sh.partner(q)
        images[q] = big.gen(q) + th * big.gen(v)
        images[dq] = big.gen(dsh.partner(q)) + th * big.gen(dsh.partner(v))
    pulled = substitute(omega.omega.lift(src.context), images, target=big, check_degrees=False)
    flat = berezin(pulled, BerezinianMeasure(("theta",)))
    poly = flat.lift(dsh.context)
    deg = omega.degree.pad(omega.base.signature, dsh.base.signature) + dsh.base.signature.unit(theta_slot)
    return ConstantSymplecticForm(dsh, poly, deg, comps)


def _transport(Q0: Derivation, sh: ShiftedContext, theta_slot: str) -> Derivation:
    """The derivation ``Q`` on components with ``Q(ev* q) = ev*(Q0 q)``."""
    comps = sh.context
    big = comps.extend([("theta", comps.signature.unit(theta_slot))])
    th = big.gen("theta")
    images = {q: big.gen(q) + th * big.gen(sh.partner(q)) for q in sh.base.names}
    deg = Q0.degree.pad(Q0.ctx.signature, comps.signature)
    s = comps.sign(deg, comps.signature.unit(theta_slot))
    vals = {}
    for q in sh.base.names:
        v = Q0.value(q).lift(sh.base)
        parts = theta_components(substitute(v, images, target=big, check_degrees=False), ("theta",), comps)
        if () in parts:
            vals[q] = parts[()]
        if (0,) in parts:
            vals[sh.partner(q)] = parts[(0,)].scale(s)
    return Derivation(comps, vals, deg, check=False)


def odd_lift_step(base: GradedContext, Q0=None, omega=None, prefix="v", slot_name="th", names=None):
    """One lift along ``R^{0|1}``: ``(sh, Q_ext, omega_ext)``.

    ``Q_ext`` is obtained by transporting ``Q0`` through ``ev*`` (not from the
    Lie derivative, which the tests use as the independent route).
    """
    sh = shift_parity(base, prefix=prefix, names=names, slot_name=slot_name)
    Q = _transport(Q0, sh, sh.slot) if Q0 is not None else None
    om = _ev_form(omega, sh, sh.slot) if omega is not None else None
    return sh, Q, om


def tangent_lift(Q0: Derivation, sh: ShiftedContext) -> Derivation:
    """``L_{Q0}`` on the parity-shifted tangent (the ``theta L_Q`` route)."""
    return lie_derivative(Q0, sh)


def odd_source_lift(target: GradedContext, Q0=None, omega=None, m: int = 1, prefixes=("v", "w")) -> OddSourceLift:
    """Iterate the one-direction lift ``m`` times (``m`` in {1, 2}).

    Direction ``k`` gets its own Z2 slot ``th<k>`` and partner prefix
    ``prefixes[k-1]``, so for ``m = 2`` the ``theta1 theta2`` component of ``x``
    is ``wvx``.
    """
    if m not in (1, 2):
        raise ValueError("odd source lifts are implemented for m = 1 and m = 2")
    if Q0 is not None and Q0.ctx != target:
        Q0 = Q0.lift(target)
    comps = {(q, ()): q for q in target.names}
    ctx, Q, om = target, Q0, omega
    steps = []
    for k in range(1, m + 1):
        sh, Q, om = odd_lift_step(ctx, Q, om, prefix=prefixes[k - 1], slot_name=f"th{k}")
        steps.append(sh)
        for (q, S), name in list(comps.items()):
            comps[(q, S + (k,))] = sh.partner(name)
        ctx = sh.context
    if om is not None and not om.is_nondegenerate():
        raise ValueError("lifted symplectic form is degenerate")
    return OddSourceLift(m, target, ctx, comps, Q, om, tuple(steps))


# ---------------------------------------------------------------------------
# superfield expansion


def _label(S):
    return "".join(str(i + 1) for i in S) or "0"


@dataclass(frozen=True)
class SusyExpansion:
    context: GradedContext  # components, their differentials and the thetas
    thetas: tuple
    X: dict  # (i, S) -> name, i 1-based
    A: dict
    integrand: Polynomial  # before integration
    action: Polynomial  # after integration, on the context without thetas

    def d(self, name: str) -> str:
        return "d" + name


def susy_expand(pi: PoissonBivector, m: int, placement: str = "standard") -> SusyExpansion:
    """``int dtheta^1..dtheta^m (A_i dX^i + 1/2 pi^{ij}(X) A_i A_j)`` in components.

    Components are named ``X{S}_i`` and ``A{S}_i`` with ``S`` written as ``0``,
    ``1``, ``2``, ``12``.  With ``placement="standard"`` the expansion is
    ``X = X0 + theta X1`` for ``m = 1`` and ``X = X0 + X_nu theta^nu +
    X12 theta^1 theta^2`` for ``m = 2`` (same for ``A``); ``placement="left"``
    puts every ``theta_S`` on the left.  All thetas share one Z2 slot ``th``
    and ``d`` raises the Z slot ``form``; the sign convention is that of ``pi``.
    """
    if placement not in ("standard", "left"):
        raise ValueError(f"unknown placement {placement!r}")
    if m not in (1, 2):
        raise ValueError("superfield expansions are implemented for m = 1 and m = 2")
    M = pi.ctx
    sig = M.signature
    for slot in ("th", "form"):
        if slot in sig.slot_names:
            raise ValueError(f"slot name {slot!r} is reserved")
    sig = sig.add_slot("z2", "th").add_slot("z", "form")
    th = sig.unit("th")
    form = sig.unit("form")
    subsets = _subsets(m)
    gens, Xn, An = [], {}, {}
    for i, (x, d) in enumerate(M.generators):
        d = d.pad(M.signature, sig)
        for S in subsets:
            Xn[(i + 1, S)] = f"X{_label(S)}_{i + 1}"
            gens.append((Xn[(i + 1, S)], d + th.scale(len(S))))
    for i, (x, d) in enumerate(M.generators):
        d = d.pad(M.signature, sig)
        for S in subsets:
            An[(i + 1, S)] = f"A{_label(S)}_{i + 1}"
            gens.append((An[(i + 1, S)], form - d + th.scale(len(S))))
    comps = GradedContext(sig, M.convention, tuple(gens))
    sh, d = shift_tangent(comps, slot="form", prefix="d")
    thetas = tuple(f"theta{k + 1}" for k in range(m))
    big = sh.context.extend((t, th) for t in thetas)
    d = d.lift(big)

    def theta_S(S):
        out = big.one()
        for k in S:
            out = out * big.gen(thetas[k])
        return out

    def superfield(names, i):
        out = big.zero()
        for S in subsets:
            c = big.gen(names[(i + 1, S)])
            right = placement == "standard" and m == 2 and len(S) == 1
            out = out + (c * theta_S(S) if right else theta_S(S) * c)
        return out

    X = [superfield(Xn, i) for i in range(len(M))]
    A = [superfield(An, i) for i in range(len(M))]
    integrand = big.zero()
    for i in range(len(M)):
        integrand = integrand + A[i] * apply(d, X[i])
    images = {x: X[i] for i, x in enumerate(M.names)}
    for (i, j), v in pi.components.items():
        piX = substitute(v, images, target=big, check_degrees=False)
        integrand = integrand + (piX * A[i] * A[j]).scale(Fraction(1, 2))
    action = berezin(integrand, BerezinianMeasure(thetas))
    return SusyExpansion(big, thetas, Xn, An, integrand, action)
