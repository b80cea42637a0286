"""Constant-coefficient graded symplectic forms, Hamiltonian vector fields and brackets.

A form lives on the tangent shift ``T[1]C`` of a coordinate context ``C``
(fresh ``form`` slot), as a quadratic polynomial in the ``dq``.  Its matrix is
the Hessian ``M[a][b] = d/d(dq_b) d/d(dq_a) Omega``, so that
``Omega = 1/2 sum_a dq_a sum_b dq_b M[a][b]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .algebra import INHOMOGENEOUS, GradedContext, Polynomial, degree_of, left_partial
from .calculus import Derivation, ShiftedContext, apply, interior_product, shift_tangent, squares_to_zero
from .grading import MultiDegree

__all__ = [
    "ConstantSymplecticForm",
    "DegenerateFormError",
    "InhomogeneousError",
    "canonical_cotangent",
    "hamiltonian_vf",
    "poisson_bracket",
    "master_equation",
    "rational_inverse",
]


class DegenerateFormError(ValueError):
    pass


class InhomogeneousError(ValueError):
    pass


def rational_inverse(rows):
    """Exact inverse of a square matrix of Fractions, or ``None`` if singular."""
    n = len(rows)
    if n == 0:
        return []
    m = sympy.Matrix(n, n, lambda i, j: sympy.Rational(rows[i][j].numerator, rows[i][j].denominator))
    if m.det() == 0:
        return None
    inv = m.inv()
    return [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class ConstantSymplecticForm:
    shifted: ShiftedContext
    omega: Polynomial
    degree: MultiDegree  # declared degree, without the two units of form degree
    coords: GradedContext | None = None  # unshifted coordinates, if known

    def __post_init__(self):
        ctx = self.shifted.context
        if self.omega.ctx != ctx:
            raise ValueError("form polynomial must live on the shifted context")
        if not self.base.signature.conforms(self.degree):
            # declared on the unshifted coordinates: pad with the form slot
            sig = self.base.signature
            unshifted = type(sig)(sig.z2_count, sig.z_count - 1, tuple(n for n in sig.slot_names if n != self.shifted.slot))
            object.__setattr__(self, "degree", self.degree.pad(unshifted, sig))
        for mono in self.omega.terms:
            if any(mono[ctx.index(b)] for b in self.base.names):
                raise ValueError("only constant-coefficient forms are supported")
            if sum(mono) != 2:
                raise ValueError("form polynomial must be quadratic in the differentials")
        if self.omega:
            want = self.degree + self.shifted.shift_degree.scale(2)
            d = degree_of(self.omega)
            if d is INHOMOGENEOUS or d != want:
                raise ValueError(f"form has degree {d}, declared {want}")

    @property
    def base(self) -> GradedContext:
        return self.shifted.base

    @property
    def d(self) -> Derivation:
        return self.shifted.differential()

    def matrix(self):
        partners = [p for _, p in self.shifted.partners]
        rows = []
        for a in partners:
            da = left_partial(self.omega, a)
            rows.append([left_partial(da, b).constant_term() for b in partners])
        return rows

    def is_closed(self) -> bool:
        return apply(self.d, self.omega).is_zero()

    def is_nondegenerate(self) -> bool:
        return rational_inverse(self.matrix()) is not None

    def is_graded_symmetric(self) -> bool:
        """The Hessian reproduces the form: ``Omega == 1/2 sum dq_a dq_b M[a][b]``."""
        return self.omega == _from_matrix(self.shifted, self.matrix())

    @classmethod
    def from_matrix(cls, coords: GradedContext, rows, degree: MultiDegree, prefix: str = "d"):
        sh, _ = shift_tangent(coords, prefix=prefix)
        rows = [[Fraction(v) for v in r] for r in rows]
        form = cls(sh, _from_matrix(sh, rows), degree, coords)
        if form.matrix() != rows:
            raise ValueError("matrix is not graded-symmetric for this context")
        return form

    @classmethod
    def from_polynomial(cls, coords: GradedContext, text_or_poly, degree: MultiDegree, prefix: str = "d"):
        sh, _ = shift_tangent(coords, prefix=prefix)
        omega = text_or_poly if isinstance(text_or_poly, Polynomial) else sh.context.parse(text_or_poly)
        return cls(sh, omega, degree, coords)


def _from_matrix(sh, rows):
    ctx = sh.context
    partners = [ctx.gen(p) for _, p in sh.partners]
    out = ctx.zero()
    for a, dqa in enumerate(partners):
        for b, dqb in enumerate(partners):
            if rows[a][b]:
                out = out + (dqa * dqb).scale(Fraction(rows[a][b]) / 2)
    return out


def canonical_cotangent(ctx: GradedContext, slot: str | None = None, prefix: str = "p_", names=None, order: str = "pq"):
    """Add momenta ``p_g`` of degree ``e_slot - deg g`` and return the form ``sum dp_g dg``.

    ``order="qp"`` gives ``sum dg dp_g`` instead.  With ``slot=None`` a fresh
    Z slot named ``gh`` is appended.
    """
    if slot is None:
        slot = "gh"
        while slot in ctx.signature.slot_names:
            slot += "_"
        ctx = ctx.with_slot("z", slot)
    unit = ctx.signature.unit(slot)
    names = dict(names or {})
    pairs = [(n, names.get(n, f"{prefix}{n}")) for n in ctx.names]
    ext = ctx.extend((p, unit - ctx.degree(n)) for n, p in pairs)
    sh, _ = shift_tangent(ext)
    c = sh.context
    omega = c.zero()
    for q, p in pairs:
        dq, dp = c.gen(sh.partner(q)), c.gen(sh.partner(p))
        omega = omega + (dp * dq if order == "pq" else dq * dp)
    return ext, ConstantSymplecticForm(sh, omega, unit, ext)


def _solver(form: ConstantSymplecticForm, deg_x: MultiDegree):
    """Inverse of the system ``sum_a sign(X^a, dq^b) M[a][b] X^a = d_b f``."""
    ctx = form.shifted.context
    base = form.base
    M = form.matrix()
    partner_degs = [ctx.degree(p) for _, p in form.shifted.partners]
    names = base.names
    pad = lambda d: d.pad(base.signature, ctx.signature)
    A = [
        [ctx.sign(pad(deg_x + base.degree(names[a])), partner_degs[b]) * M[a][b] for a in range(len(names))]
        for b in range(len(names))
    ]
    inv = rational_inverse(A)
    if inv is None:
        raise DegenerateFormError("symplectic form is degenerate")
    return inv


def _on_base(form, f):
    if f.ctx == form.base:
        return f
    if f.ctx.names == form.base.names:
        return f.lift(form.base)
    raise ValueError("function is not on the coordinate context of the form")


def hamiltonian_vf(form: ConstantSymplecticForm, f: Polynomial) -> Derivation:
    """The unique ``X_f`` with ``i_{X_f} Omega = d f``."""
    f = _on_base(form, f)
    base = form.base
    deg_f = degree_of(f)
    if deg_f is INHOMOGENEOUS:
        raise InhomogeneousError("Hamiltonian must be homogeneous")
    deg_x = deg_f - form.degree
    inv = _solver(form, deg_x)
    grads = [left_partial(f, n) for n in base.names]
    vals = {}
    for a, name in enumerate(base.names):
        v = base.zero()
        for b, g in enumerate(grads):
            if inv[a][b] and g:
                v = v + g.scale(inv[a][b])
        if v:
            vals[name] = v
    X = Derivation(base, vals, deg_x, check=False)
    return X.lift(form.coords) if form.coords is not None else X


def poisson_bracket(form: ConstantSymplecticForm, f: Polynomial, g: Polynomial) -> Polynomial:
    """``(f, g) = i_{X_f} i_{X_g} Omega`` as a function on the base."""
    xf = hamiltonian_vf(form, f)
    xg = hamiltonian_vf(form, g)
    sh = form.shifted
    inner = apply(interior_product(xg, sh), form.omega)
    value = apply(interior_product(xf, sh), inner)
    out = Polynomial(form.base, {m[: len(form.base)]: c for m, c in value.terms.items()})
    return out.lift(form.coords) if form.coords is not None else out


def master_equation(form: ConstantSymplecticForm, S: Polynomial) -> bool:
    """``(S, S) == 0``."""
    if degree_of(_on_base(form, S)) is INHOMOGENEOUS:
        raise InhomogeneousError("master equation needs a homogeneous function")
    return poisson_bracket(form, S, S).is_zero()


def check_master_consistency(form: ConstantSymplecticForm, S: Polynomial) -> bool:
    """``(S,S) == 0`` agrees with ``X_S`` squaring to zero."""
    return master_equation(form, S) == squares_to_zero(hamiltonian_vf(form, S))
