"""Graded derivations, shifted tangent contexts and Cartan calculus.

Differential forms are plain functions on a shifted context: every base
generator ``g`` gets a partner ``dg`` whose degree is ``deg g`` plus a unit
in the shift slot.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import (
    INHOMOGENEOUS,
    ContextMismatch,
    DegreeMismatch,
    GradedContext,
    Polynomial,
    degree_of,
    left_partial,
)
from .grading import MultiDegree, is_odd

__all__ = [
    "Derivation",
    "ShiftedContext",
    "NotOddError",
    "apply",
    "commutator",
    "squares_to_zero",
    "shift_tangent",
    "shift_parity",
    "interior_product",
    "lie_derivative",
    "euler_field",
    "partial_derivation",
]


class NotOddError(ValueError):
    pass


class Derivation:
    """A graded vector field: one polynomial value per generator, extended by Leibniz.

    ``degree`` is ``None`` for a sum of homogeneous derivations of different
    degrees (for instance ``d + L_Q`` when d and Q live in different slots).
    """

    __slots__ = ("ctx", "values", "degree")

    def __init__(self, ctx: GradedContext, values: Mapping, degree: MultiDegree | None = None, check: bool = True):
        self.ctx = ctx
        vals = {}
        for name, v in values.items():
            ctx.index(name)
            if not isinstance(v, Polynomial):
                v = ctx.const(v)
            if v.ctx != ctx:
                raise ContextMismatch(f"value on {name!r} lives in another context")
            if v:
                vals[name] = v
        self.values = vals
        if degree is None:
            degree = self._infer_degree()
        elif check:
            for name, v in vals.items():
                want = degree + ctx.degree(name)
                d = degree_of(v)
                if d is INHOMOGENEOUS or d != want:
                    raise DegreeMismatch(
                        f"value on {name!r} has degree {d}, expected {want} for a derivation of degree {degree}"
                    )
        self.degree = degree

    def _infer_degree(self):
        if not self.values:
            return self.ctx.zero_degree()
        found = set()
        for name, v in self.values.items():
            for mono in v.terms:
                found.add(self.ctx.monomial_degree(mono) - self.ctx.degree(name))
        return found.pop() if len(found) == 1 else None

    # -- protocol ---------------------------------------------------------
    def __call__(self, f: Polynomial) -> Polynomial:
        return apply(self, f)

    def value(self, name: str) -> Polynomial:
        self.ctx.index(name)
        return self.values.get(name, self.ctx.zero())

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.ctx == other.ctx and self.values == other.values

    def __hash__(self):
        return hash((self.ctx.names, frozenset(self.values.items())))

    def is_zero(self) -> bool:
        return not self.values

    def __repr__(self):
        return f"Derivation({self})"

    def __str__(self):
        if not self.values:
            return "0"
        return "; ".join(f"{n} -> {self.values[n]}" for n in self.ctx.names if n in self.values)

    def __add__(self, other: "Derivation") -> "Derivation":
        if other.ctx != self.ctx:
            raise ContextMismatch("derivations live in different contexts")
        vals = dict(self.values)
        for n, v in other.values.items():
            vals[n] = vals[n] + v if n in vals else v
        deg = self.degree if self.degree == other.degree else None
        if self.is_zero():
            deg = other.degree
        elif other.is_zero():
            deg = self.degree
        return Derivation(self.ctx, vals, deg, check=False) if deg is not None else Derivation(self.ctx, vals)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Derivation":
        c = Fraction(c)
        return Derivation(self.ctx, {n: v.scale(c) for n, v in self.values.items()}, self.degree, check=False)

    def times(self, f: Polynomial) -> "Derivation":
        """Left multiplication ``f * X`` (values multiplied by ``f`` on the left)."""
        deg = degree_of(f)
        new_deg = None if deg is INHOMOGENEOUS or self.degree is None else deg + self.degree
        vals = {n: f * v for n, v in self.values.items()}
        if new_deg is None:
            return Derivation(self.ctx, vals)
        return Derivation(self.ctx, vals, new_deg, check=False)

    def lift(self, target: GradedContext) -> "Derivation":
        """Extend to a larger context by acting as zero on the new generators."""
        deg = None if self.degree is None else self.degree.pad(self.ctx.signature, target.signature)
        vals = {n: v.lift(target) for n, v in self.values.items()}
        return Derivation(target, vals, deg, check=False)

    def homogeneous_parts(self) -> dict:
        if self.degree is not None:
            return {self.degree: self} if self.values else {}
        parts: dict = {}
        for name, v in self.values.items():
            gdeg = self.ctx.degree(name)
            for d, piece in v.homogeneous_parts().items():
                parts.setdefault(d - gdeg, {})[name] = piece
        return {d: Derivation(self.ctx, vals, d, check=False) for d, vals in parts.items()}


def partial_derivation(ctx: GradedContext, name: str) -> Derivation:
    """The coordinate derivation d/d(name) as a Derivation."""
    return Derivation(ctx, {name: ctx.one()}, -ctx.degree(name), check=False)


def apply(X: Derivation, f: Polynomial) -> Polynomial:
    """Leibniz extension: ``X(f) = sum_k X(g_k) * d_k f`` with left derivatives."""
    if X.ctx != f.ctx:
        raise ContextMismatch("derivation and polynomial live in different contexts")
    out = f.ctx.zero()
    used = f.generators_used()
    for name, v in X.values.items():
        if name in used:
            out = out + v * left_partial(f, name)
    return out


def _sign(ctx, a, b):
    return ctx.sign(a, b)


def commutator(X: Derivation, Y: Derivation) -> Derivation:
    """Graded commutator ``X Y - sign(X, Y) Y X``, computed on generators."""
    if X.ctx != Y.ctx:
        raise ContextMismatch("derivations live in different contexts")
    ctx = X.ctx
    total = Derivation(ctx, {}, ctx.zero_degree())
    for dx, Xa in X.homogeneous_parts().items():
        for dy, Yb in Y.homogeneous_parts().items():
            s = _sign(ctx, dx, dy)
            vals = {}
            for name in ctx.names:
                v = apply(Xa, Yb.value(name)) - apply(Yb, Xa.value(name)).scale(s)
                if v:
                    vals[name] = v
            total = total + Derivation(ctx, vals, dx + dy, check=False)
    return total


def squares_to_zero(X: Derivation) -> bool:
    """True iff ``X(X(g)) = 0`` on every generator; X must be odd."""
    ctx = X.ctx
    parts = list(X.homogeneous_parts())
    if X.degree is not None:
        parts = [X.degree]
    for i, a in enumerate(parts):
        if not is_odd(a, ctx.convention):
            raise NotOddError(f"derivation component of degree {a} is not odd")
        for b in parts[:i]:
            if ctx.sign(a, b) != -1:
                raise NotOddError(f"components of degree {a} and {b} do not anticommute")
    return all(not apply(X, apply(X, ctx.gen(n))) for n in ctx.names)


# ---------------------------------------------------------------------------
# shifted contexts


@dataclass(frozen=True)
class ShiftedContext:
    """A base context plus one partner generator per base generator."""

    context: GradedContext
    base: GradedContext
    partners: tuple  # (base name, partner name) pairs in base order
    shift_degree: MultiDegree
    slot: str

    _pmap: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_pmap", dict(self.partners))

    def partner(self, name: str) -> str:
        return self._pmap[name]

    def base_of(self, partner: str) -> str:
        for b, p in self.partners:
            if p == partner:
                return b
        raise KeyError(partner)

    def differential(self) -> Derivation:
        """The derivation g -> dg, dg -> 0."""
        ctx = self.context
        return Derivation(ctx, {b: ctx.gen(p) for b, p in self.partners}, self.shift_degree, check=False)

    def embed(self, f: Polynomial) -> Polynomial:
        if f.ctx != self.base and f.ctx.names != self.base.names:
            raise ContextMismatch("polynomial is not on the base context")
        return f.lift(self.context)


def _fresh_slot(ctx, wanted):
    name, k = wanted, 1
    while name in ctx.signature.slot_names:
        k += 1
        name = f"{wanted}{k}"
    return name


def _partner_names(ctx, prefix, names):
    names = dict(names or {})
    out = []
    for n in ctx.names:
        p = names.get(n, f"{prefix}{n}")
        out.append((n, p))
    taken = set(ctx.names)
    for _, p in out:
        if p in taken:
            raise ValueError(f"partner name {p!r} clashes with an existing generator")
        taken.add(p)
    return out


def _shift(ctx, kind, slot, prefix, names, slot_name):
    if slot is None:
        slot = _fresh_slot(ctx, slot_name)
        ctx = ctx.with_slot(kind, slot)
    elif ctx.signature.slot_kind(slot) != kind:
        raise ValueError(f"slot {slot!r} is not a {kind} slot")
    base = ctx
    shift = ctx.signature.unit(slot)
    pairs = _partner_names(base, prefix, names)
    new = base.extend((p, base.degree(b) + shift) for b, p in pairs)
    return ShiftedContext(new, base, tuple(pairs), shift, slot)


def shift_tangent(ctx: GradedContext, slot: str | None = None, prefix: str = "d", names=None, slot_name: str = "form"):
    """T[1]: add partners ``dg`` one unit up in a Z slot and return the de Rham derivation.

    With ``slot=None`` a fresh Z slot is appended, so that the base context of
    the result is ``ctx`` padded by a zero entry.
    """
    sh = _shift(ctx, "z", slot, prefix, names, slot_name)
    return sh, sh.differential()


def shift_parity(ctx: GradedContext, prefix: str = "v", names=None, slot_name: str = "pi") -> ShiftedContext:
    """Parity-shifted tangent: partners live one unit up in a fresh Z2 slot."""
    return _shift(ctx, "z2", None, prefix, names, slot_name)


def _check_base(X: Derivation, sh: ShiftedContext) -> Derivation:
    if X.ctx != sh.base:
        if X.ctx.names != sh.base.names:
            raise ContextMismatch("derivation is not defined on the base of the shifted context")
        X = X.lift(sh.base)
    return X


def interior_product(X: Derivation, sh: ShiftedContext) -> Derivation:
    """Contraction: ``i_X(g) = 0`` and ``i_X(dg) = X(g)``."""
    X = _check_base(X, sh)
    ctx = sh.context
    vals = {sh.partner(n): v.lift(ctx) for n, v in X.values.items()}
    deg = None if X.degree is None else X.degree - sh.shift_degree
    if deg is None:
        return Derivation(ctx, vals)
    return Derivation(ctx, vals, deg, check=False)


def lie_derivative(X: Derivation, sh: ShiftedContext) -> Derivation:
    """``L_X = i_X d - sign(i_X, d) d i_X`` evaluated on generators.

    Under Bernstein-Leites this is ``i_X d + (-1)^par(X) d i_X``.
    """
    X = _check_base(X, sh)
    ctx = sh.context
    d = sh.differential()
    total = Derivation(ctx, {}, ctx.zero_degree())
    for deg, Xa in X.homogeneous_parts().items():
        iota_deg = deg - sh.shift_degree
        s = ctx.sign(iota_deg, sh.shift_degree)
        vals = {}
        for b, p in sh.partners:
            xv = Xa.value(b).lift(ctx)
            if xv:
                vals[b] = xv
                vals[p] = -apply(d, xv).scale(s)
        total = total + Derivation(ctx, vals, deg, check=False)
    return total


def euler_field(ctx: GradedContext, slot: str) -> Derivation:
    """``g -> (slot degree of g) * g``; eigenvalues are the slot degrees."""
    if ctx.signature.slot_kind(slot) != "z":
        raise ValueError(f"slot {slot!r} is not a Z slot")
    i = ctx.signature.slot_index(slot)
    vals = {n: ctx.gen(n).scale(d.z[i]) for n, d in ctx.generators if d.z[i]}
    return Derivation(ctx, vals, ctx.zero_degree(), check=False)
