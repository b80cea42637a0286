"""Named constructions on top of the kernel.

* super Lie algebras, their Chevalley-Eilenberg differential and a brute-force
  Jacobiator used as an independent oracle;
* graded Poisson bivectors, the Hamiltonian lift to ``T*[1]M`` and an
  independent bracket-level Jacobi check;
* Q-morphism defects and gauge variations ``[Q_hat, eps_hat]`` for an
  abstract field map (fields are free generators, ``d`` is a tangent shift);
* the algebra ``g (x) Lambda(R^m)`` and the constant-``pi`` gauge fixing of
  the source-supersymmetrised Poisson sigma model.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import INHOMOGENEOUS, GradedContext, Polynomial, degree_of, left_partial, substitute
from .calculus import (
    Derivation,
    apply,
    commutator,
    interior_product,
    lie_derivative,
    shift_tangent,
)
from .grading import BL, DELIGNE, MultiDegree, SignConvention, SlotSignature, par
from .symplectic import ConstantSymplecticForm, canonical_cotangent, hamiltonian_vf, rational_inverse

__all__ = [
    "SuperLieAlgebra",
    "MalformedAlgebra",
    "MalformedBivector",
    "PoissonBivector",
    "PSMLift",
    "FieldModel",
    "GaugeFixResult",
    "abelian",
    "heisenberg",
    "so3",
    "sl2",
    "aff1",
    "gl",
    "osp12",
    "ce_context",
    "ce_differential",
    "jacobiator_oracle",
    "coordinate_space",
    "lie_poisson",
    "pi_jacobiator",
    "psm_lift",
    "q_morphism_defect",
    "gauge_variation",
    "vertical_lift",
    "field_model",
    "psm_field_model",
    "cs_field_model",
    "cs_extend_algebra",
    "source_susy_gauge_fix",
]


class MalformedAlgebra(ValueError):
    pass


class MalformedBivector(ValueError):
    pass


# ---------------------------------------------------------------------------
# super Lie algebras


def _sgn(e) -> int:
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class SuperLieAlgebra:
    """Structure constants ``C[(a, b, c)] = C^a_{bc}`` (0-based) on a graded basis.

    The table is closed under graded antisymmetry on construction.
    """

    parities: tuple
    constants: dict = field(default_factory=dict)
    names: tuple = ()

    def __post_init__(self):
        par_ = tuple(int(p) % 2 for p in self.parities)
        object.__setattr__(self, "parities", par_)
        n = len(par_)
        names = tuple(self.names) or tuple(f"e{i + 1}" for i in range(n))
        if len(names) != n:
            raise MalformedAlgebra("one name per basis element")
        object.__setattr__(self, "names", names)
        full: dict = {}

        def put(key, v):
            if full.get(key, v) != v:
                raise MalformedAlgebra(f"constant C^{key[0] + 1}_{{{key[1] + 1}{key[2] + 1}}} violates graded antisymmetry")
            full[key] = v

        for (a, b, c), v in dict(self.constants).items():
            v = Fraction(v)
            if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
                raise MalformedAlgebra(f"index out of range in C^{a + 1}_{{{b + 1}{c + 1}}}")
            if not v:
                continue
            if par_[a] != (par_[b] + par_[c]) % 2:
                raise MalformedAlgebra(f"C^{a + 1}_{{{b + 1}{c + 1}}} breaks parity")
            put((a, b, c), v)
            put((a, c, b), -_sgn(par_[b] * par_[c]) * v)
        object.__setattr__(self, "constants", full)

    @property
    def dim(self) -> int:
        return len(self.parities)

    def C(self, a, b, c) -> Fraction:
        return self.constants.get((a, b, c), Fraction(0))

    def bracket(self, u: Mapping, v: Mapping) -> dict:
        """Bracket of two homogeneous-by-component vectors given as ``{index: coeff}``."""
        out: dict = {}
        for b, x in u.items():
            for c, y in v.items():
                if not (x and y):
                    continue
                for a in range(self.dim):
                    k = self.C(a, b, c)
                    if k:
                        out[a] = out.get(a, 0) + k * x * y
        return {a: v for a, v in out.items() if v}

    def is_even(self) -> bool:
        return not any(self.parities)

    @classmethod
    def from_brackets(cls, parities, brackets: Mapping, names=()):
        """``brackets[(b, c)] = {a: C^a_{bc}}`` with 1-based indices."""
        consts = {}
        for (b, c), img in brackets.items():
            for a, v in img.items():
                consts[(a - 1, b - 1, c - 1)] = v
        return cls(tuple(parities), consts, tuple(names))


def abelian(n: int) -> SuperLieAlgebra:
    return SuperLieAlgebra((0,) * n)


def heisenberg() -> SuperLieAlgebra:
    return SuperLieAlgebra.from_brackets((0, 0, 0), {(1, 2): {3: 1}})


def so3() -> SuperLieAlgebra:
    return SuperLieAlgebra.from_brackets((0, 0, 0), {(1, 2): {3: 1}, (2, 3): {1: 1}, (3, 1): {2: 1}})


def sl2() -> SuperLieAlgebra:
    # basis h, e, f
    return SuperLieAlgebra.from_brackets(
        (0, 0, 0), {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}}, ("h", "e", "f")
    )


def aff1() -> SuperLieAlgebra:
    return SuperLieAlgebra.from_brackets((0, 0), {(1, 2): {2: 1}})


def gl(m: int, n: int) -> SuperLieAlgebra:
    """``gl(m|n)`` on elementary matrices ``E_ij`` with the supercommutator."""
    size = m + n
    deg = [0] * m + [1] * n
    basis = [(i, j) for i in range(size) for j in range(size)]
    index = {e: k for k, e in enumerate(basis)}
    parities = tuple((deg[i] + deg[j]) % 2 for i, j in basis)
    consts = {}
    for (i, j), (k, l) in itertools.product(basis, basis):
        s = _sgn(parities[index[(i, j)]] * parities[index[(k, l)]])
        b, c = index[(i, j)], index[(k, l)]
        if j == k:
            a = index[(i, l)]
            consts[(a, b, c)] = consts.get((a, b, c), 0) + 1
        if l == i:
            a = index[(k, j)]
            consts[(a, b, c)] = consts.get((a, b, c), 0) - s
    names = tuple(f"E{i + 1}{j + 1}" for i, j in basis)
    return SuperLieAlgebra(parities, {k: v for k, v in consts.items() if v}, names)


def osp12() -> SuperLieAlgebra:
    """``osp(1|2)``: basis h, e, f (even), q+, q- (odd)."""
    return SuperLieAlgebra.from_brackets(
        (0, 0, 0, 1, 1),
        {
            (1, 2): {2: 2},
            (1, 3): {3: -2},
            (2, 3): {1: 1},
            (1, 4): {4: 1},
            (1, 5): {5: -1},
            (2, 5): {4: -1},
            (3, 4): {5: -1},
            (4, 4): {2: 2},
            (5, 5): {3: -2},
            (4, 5): {1: 1},
        },
        ("h", "e", "f", "qp", "qm"),
    )


def jacobiator_oracle(g: SuperLieAlgebra) -> dict:
    """Nonzero components of ``[a,[b,c]] - [[a,b],c] - (-1)^{|a||b|} [b,[a,c]]``.

    Keys are ``(d, a, b, c)`` (0-based, ``d`` the output component).
    """
    n = g.dim
    p = g.parities
    out = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        lhs = g.bracket({a: 1}, g.bracket({b: 1}, {c: 1}))
        r1 = g.bracket(g.bracket({a: 1}, {b: 1}), {c: 1})
        r2 = g.bracket({b: 1}, g.bracket({a: 1}, {c: 1}))
        s = _sgn(p[a] * p[b])
        for d in range(n):
            v = lhs.get(d, 0) - r1.get(d, 0) - s * r2.get(d, 0)
            if v:
                out[(d, a, b, c)] = Fraction(v)
    return out


def ce_context(g: SuperLieAlgebra, convention: SignConvention = BL, prefix: str = "xi") -> GradedContext:
    """``g[1]``: generators of degree ``(|a| | 1)`` in slots ``p`` and ``gh``."""
    sig = SlotSignature(1, 1, ("p", "gh"))
    gens = tuple((f"{prefix}{i + 1}", MultiDegree((p,), (1,))) for i, p in enumerate(g.parities))
    return GradedContext(sig, convention, gens)


def ce_differential(g: SuperLieAlgebra, convention: SignConvention = BL, prefix: str = "xi"):
    """``Q(xi^a) = 1/2 sum_{b,c} (-1)^{|b|(|c|+1)} C^a_{bc} xi^b xi^c`` on ``g[1]``.

    The parity factor is what makes ``Q^2 = 0`` equivalent to the graded Jacobi
    identity once ``xi^b`` carries the extra unit of ghost degree; it is
    trivial on even algebras.
    """
    ctx = ce_context(g, convention, prefix)
    xs = [ctx.gen(n) for n in ctx.names]
    p = g.parities
    vals = {}
    for a in range(g.dim):
        v = ctx.zero()
        for b, c in itertools.product(range(g.dim), repeat=2):
            k = g.C(a, b, c)
            if k:
                v = v + (xs[b] * xs[c]).scale(k * _ce_sign(convention, p[b], p[c]) / 2)
        if v:
            vals[ctx.names[a]] = v
    return ctx, Derivation(ctx, vals, ctx.signature.unit("gh"))


def _ce_sign(convention, pb, pc):
    if convention is DELIGNE:
        return 1
    return _sgn(pb * (pc + 1))


# ---------------------------------------------------------------------------
# Poisson bivectors


def _antisym_sign(convention, pi_, pj):
    if convention is DELIGNE:
        return _sgn(pi_ * pj + 1)
    return _sgn((pi_ + 1) * (pj + 1))


@dataclass(frozen=True)
class PoissonBivector:
    """Components ``pi^{IJ}`` (0-based index pairs) of a graded bivector on ``ctx``.

    Only the entries given are checked; the rest are filled in by graded
    antisymmetry.  ``ctx`` should carry no ghost degree.
    """

    ctx: GradedContext
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        ctx = self.ctx
        n = len(ctx)
        par_ = [par(d) for d in ctx.degrees]
        full = {}
        for (i, j), v in dict(self.components).items():
            if not isinstance(v, Polynomial):
                v = ctx.parse(v) if isinstance(v, str) else ctx.const(v)
            if v.ctx != ctx:
                if v.ctx.names != ctx.names:
                    raise MalformedBivector("component lives in another context")
                v = v.lift(ctx)
            if not (0 <= i < n and 0 <= j < n):
                raise MalformedBivector(f"index ({i + 1},{j + 1}) out of range")
            if not v:
                continue
            want = ctx.degree(ctx.names[i]) + ctx.degree(ctx.names[j])
            d = degree_of(v)
            if d is INHOMOGENEOUS or d != want:
                raise MalformedBivector(
                    f"pi^{{{i + 1}{j + 1}}} = {v} has degree {d}, needs {want} (parity {(par_[i] + par_[j]) % 2})"
                )
            for key, val in (((i, j), v), ((j, i), v.scale(_antisym_sign(ctx.convention, par_[i], par_[j])))):
                if key in full and full[key] != val:
                    raise MalformedBivector(f"pi^{{{key[0] + 1}{key[1] + 1}}} violates graded antisymmetry")
                full[key] = val
        object.__setattr__(self, "components", full)

    def __getitem__(self, key) -> Polynomial:
        return self.components.get(tuple(key), self.ctx.zero())

    @property
    def dim(self) -> int:
        return len(self.ctx)

    def is_constant(self) -> bool:
        return all(v.is_constant() for v in self.components.values())

    def matrix(self):
        return [[self[(i, j)].constant_term() for j in range(self.dim)] for i in range(self.dim)]

    @classmethod
    def from_entries(cls, ctx: GradedContext, entries: Mapping):
        """Entries keyed by 1-based ``(i, j)``; values are Polynomials, numbers or text."""
        return cls(ctx, {(i - 1, j - 1): v for (i, j), v in entries.items()})


def coordinate_space(names, parities=None, convention: SignConvention = BL) -> GradedContext:
    """A target ``M`` with one Z2 slot named ``p`` and no ghost slots."""
    parities = parities or [0] * len(names)
    sig = SlotSignature(1, 0, ("p",))
    return GradedContext(sig, convention, tuple((n, MultiDegree((q,), ())) for n, q in zip(names, parities)))


def lie_poisson(g: SuperLieAlgebra, names=None) -> PoissonBivector:
    """``pi^{ij} = sum_k C^k_{ij} x^k`` on the (even) dual of an even Lie algebra."""
    if not g.is_even():
        raise MalformedAlgebra("Lie-Poisson structures are built for even algebras only")
    names = names or [f"x{i + 1}" for i in range(g.dim)]
    ctx = coordinate_space(names)
    comps = {}
    for i, j in itertools.product(range(g.dim), repeat=2):
        v = ctx.zero()
        for k in range(g.dim):
            if g.C(k, i, j):
                v = v + ctx.gen(names[k]).scale(g.C(k, i, j))
        if v:
            comps[(i, j)] = v
    return PoissonBivector(ctx, comps)


def _right_partial(f: Polynomial, name: str) -> Polynomial:
    ctx = f.ctx
    pg = par(ctx.degree(name))
    out = ctx.zero()
    for d, part in f.homogeneous_parts().items():
        dp = left_partial(part, name)
        out = out + (dp if not (pg * (par(d) + 1)) % 2 else -dp)
    return out


def pi_jacobiator(pi: PoissonBivector) -> dict:
    """Graded Jacobi of the bracket ``{x^I, x^J} = B^{IJ}``, checked on coordinate triples.

    ``B^{IJ} = (-1)^{|I|} pi^{IJ}`` under Bernstein-Leites and ``B = pi`` under
    Deligne; both are graded antisymmetric in the usual super sense.  The
    bracket is extended as a biderivation with a right derivative in the first
    slot.  This routine shares nothing with the Hamiltonian lift.
    """
    ctx = pi.ctx
    n = len(ctx)
    names = ctx.names
    p = [par(d) for d in ctx.degrees]
    if ctx.convention is DELIGNE:
        B = {k: v for k, v in pi.components.items()}
    else:
        B = {(i, j): v.scale(_sgn(p[i])) for (i, j), v in pi.components.items()}

    def br(f, g):
        out = ctx.zero()
        for (i, j), b in B.items():
            fi = _right_partial(f, names[i])
            if not fi:
                continue
            gj = left_partial(g, names[j])
            if gj:
                out = out + fi * b * gj
        return out

    xs = [ctx.gen(x) for x in names]
    out = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        v = br(xs[i], br(xs[j], xs[k])) - br(br(xs[i], xs[j]), xs[k]) - br(xs[j], br(xs[i], xs[k])).scale(_sgn(p[i] * p[j]))
        if v:
            out[(i, j, k)] = v
    return out


def _momentum_names(ctx):
    out = {}
    for n in ctx.names:
        out[n] = "p" + n[1:] if n.startswith("x") and len(n) > 1 else f"p_{n}" if n != "x" else "p"
    return out


@dataclass(frozen=True)
class PSMLift:
    context: GradedContext
    Q: Derivation
    omega: ConstantSymplecticForm
    Pi: Polynomial
    momenta: dict  # coordinate name -> momentum name
    pi: PoissonBivector


def psm_lift(pi: PoissonBivector, variant: str = "2000", momenta=None) -> PSMLift:
    """``T*[1]M`` with ``omega = sum dp dx``, ``Pi`` and ``Q = X_Pi``.

    ``variant="2000"`` uses ``Pi = 1/2 sum w_ij p_i pi^{ij} p_j`` with
    ``w_ij = (-1)^{|i|(|j|+1)}``, which is 1 except on (odd, even) pairs.
    Without the weight the mixed components of a graded antisymmetric ``pi``
    cancel in ``Pi``; that unweighted sum is ``variant="2000-literal"``.
    ``variant="1999"`` uses ``Pi = 1/2 p_i p_j pi^{ji}``.  Jacobi is not
    assumed.
    """
    if variant not in ("2000", "2000-literal", "1999"):
        raise ValueError(f"unknown variant {variant!r}")
    M = pi.ctx
    momenta = dict(momenta or _momentum_names(M))
    ext, omega = canonical_cotangent(M, names=momenta, order="pq")
    ps = [ext.gen(momenta[n]) for n in M.names]
    pars = [par(d) for d in M.degrees]
    Pi = ext.zero()
    for (i, j), v in pi.components.items():
        v = v.lift(ext)
        if variant == "2000":
            # mixed even/odd pairs would cancel against their transposes
            term = (ps[i] * v * ps[j]).scale(_sgn(pars[i] * (pars[j] + 1)))
        elif variant == "2000-literal":
            term = ps[i] * v * ps[j]
        else:
            term = ps[i] * ps[j] * pi[(j, i)].lift(ext)
        Pi = Pi + term.scale(Fraction(1, 2))
    Q = hamiltonian_vf(omega, Pi)
    return PSMLift(ext, Q, omega, Pi, momenta, pi)


# ---------------------------------------------------------------------------
# defects and gauge variations


def q_morphism_defect(images: Mapping, Q1: Derivation, Q2: Derivation, check_degrees: bool = True) -> dict:
    """``F(q) = Q1(phi* q) - phi*(Q2 q)`` for every target generator ``q``."""
    target = Q2.ctx
    source = Q1.ctx
    out = {}
    for q in target.names:
        pulled = images[q] if q in images else source.zero()
        if not isinstance(pulled, Polynomial):
            pulled = source.const(pulled)
        out[q] = apply(Q1, pulled) - substitute(Q2.value(q), images, target=source, check_degrees=check_degrees)
    return out


def gauge_variation(Q_total: Derivation, eps_hat: Derivation, slot: str = "gh") -> Derivation:
    """``[Q_total, eps_hat]``; ``eps_hat`` must have degree ``-1`` in ``slot``."""
    ctx = eps_hat.ctx
    i = ctx.signature.slot_index(slot)
    if eps_hat.degree is None or eps_hat.degree.z[i] != -1:
        raise ValueError(f"gauge parameter must have degree -1 in slot {slot!r}, got {eps_hat.degree}")
    return commutator(Q_total, eps_hat)


def vertical_lift(eps: Derivation, sh, spectators=()) -> Derivation:
    """Tangent lift ``[i_eps, d']`` where ``d'`` ignores the ``spectators``.

    The spectators are generators of the base that the de Rham differential of
    the target must treat as constants (gauge parameters living on the source).
    """
    d = sh.differential()
    d_target = Derivation(d.ctx, {n: v for n, v in d.values.items() if n not in spectators}, d.degree, check=False)
    return commutator(interior_product(eps, sh), d_target)


@dataclass
class FieldModel:
    """A field map from an abstract source into a target Q-manifold.

    The source is generated by one field per target coordinate, one gauge
    parameter per chosen coordinate, and their differentials ``d``.
    """

    target: GradedContext
    Q: Derivation
    source: object  # ShiftedContext
    d: Derivation
    fields: dict  # target generator -> field name
    signs: dict  # target generator -> +-1 (phi* q = sign * field)
    params: dict  # target generator -> gauge parameter name
    slot: str

    @property
    def images(self) -> dict:
        ctx = self.source.context
        return {q: ctx.gen(f).scale(self.signs[q]) for q, f in self.fields.items()}

    def defects(self) -> dict:
        """Defect ``F(q)`` expressed on the source."""
        imgs = dict(self.images)
        return q_morphism_defect(imgs, self.d, self.Q.lift(self.target) if self.Q.ctx != self.target else self.Q)

    def field_equations(self) -> dict:
        """``sign * F(q)`` keyed by field name: the equation written for the field itself."""
        F = self.defects()
        return {self.fields[q]: F[q].scale(self.signs[q]) for q in self.target.names}

    def total(self):
        """``(C_hat, Q_hat, eps_hat)`` on params + target + their shifts."""
        tgt = self.target
        gh_unit = tgt.signature.unit(self.slot)
        base = GradedContext(
            tgt.signature,
            tgt.convention,
            tuple((self.params[q], tgt.degree(q) - gh_unit) for q in tgt.names if q in self.params) + tgt.generators,
        )
        sh, d = shift_tangent(base, slot=self.slot, prefix="d")
        Qb = Derivation(base, {n: v.lift(base) for n, v in self.Q.values.items()}, self.Q.degree.pad(self.Q.ctx.signature, base.signature), check=False)
        Q_hat = d + lie_derivative(Qb, sh)
        eps = Derivation(base, {q: base.gen(e) for q, e in self.params.items()}, -gh_unit, check=False)
        eps_hat = vertical_lift(eps, sh, spectators=set(self.params.values()))
        return sh, Q_hat, eps_hat

    def gauge_transformations(self) -> dict:
        """``delta(field)`` for every field, through ``f*`` of ``[Q_hat, eps_hat]``."""
        sh, Q_hat, eps_hat = self.total()
        var = gauge_variation(Q_hat, eps_hat, self.slot)
        src = self.source.context
        F = self.defects()
        images = {}
        for q in self.target.names:
            images[q] = src.gen(self.fields[q]).scale(self.signs[q])
            images[sh.partner(q)] = F[q]
        for q, e in self.params.items():
            images[e] = src.gen(e)
            images[sh.partner(e)] = src.gen(self.source.partner(e))
        out = {}
        for q in self.target.names:
            v = var.value(q)
            out[self.fields[q]] = substitute(v, images, target=src).scale(self.signs[q])
        return out


def field_model(target: GradedContext, Q: Derivation, fields: Mapping, params: Mapping, signs=None, slot="gh") -> FieldModel:
    """Source context with fields, gauge parameters and ``d`` shifting ``slot``."""
    signs = {q: (signs or {}).get(q, 1) for q in target.names}
    gh_unit = target.signature.unit(slot)
    base = GradedContext(
        target.signature,
        target.convention,
        tuple((fields[q], target.degree(q)) for q in target.names)
        + tuple((params[q], target.degree(q) - gh_unit) for q in target.names if q in params),
    )
    sh, d = shift_tangent(base, slot=slot, prefix="d")
    return FieldModel(target, Q, sh, d, dict(fields), signs, dict(params), slot)


def _field_name(prefix, name):
    return prefix + name[1:] if len(name) > 1 and name[0] in "xp" else f"{prefix}_{name}"


def psm_field_model(lift: PSMLift, sign: int = -1, params: bool = True) -> FieldModel:
    """Fields ``X`` for ``x`` and ``A`` for ``p``; ``phi* x = X``, ``phi* p = sign * A``.

    With ``sign = -1`` the x-equation reads ``dX + pi A``.
    """
    fields, signs, prm = {}, {}, {}
    for x, p in lift.momenta.items():
        fields[x] = _field_name("X", x)
        fields[p] = _field_name("A", p) if p.startswith("p") else f"A_{x}"
        signs[x], signs[p] = 1, sign
        if params:
            prm[p] = _field_name("e", p) if p.startswith("p") else f"e_{x}"
    return field_model(lift.context, lift.Q, fields, prm, signs)


def cs_field_model(g: SuperLieAlgebra, sign: int = 1, convention: SignConvention = BL) -> FieldModel:
    """Target ``(g[1], d_CE)``; ``phi* xi^a = sign * A^a`` with parameters ``e^a``."""
    ctx, Q = ce_differential(g, convention)
    fields = {n: "A" + n[2:] for n in ctx.names}
    prm = {n: "e" + n[2:] for n in ctx.names}
    return field_model(ctx, Q, fields, prm, {n: sign for n in ctx.names})


# ---------------------------------------------------------------------------
# extended algebra g (x) Lambda(R^m)


def _subsets(m):
    out = []
    for k in range(m + 1):
        out.extend(itertools.combinations(range(m), k))
    return out


def _wedge(S, T):
    """Sign and support of ``eta_S eta_T`` in increasing order, or ``None``."""
    if set(S) & set(T):
        return None
    word = list(S) + list(T)
    inv = sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])
    return _sgn(inv), tuple(sorted(word))


def cs_extend_algebra(g: SuperLieAlgebra, m: int) -> SuperLieAlgebra:
    """``g (x) Lambda(R^m)`` with basis ``eta_S u_a``.

    ``[eta_S u_a, eta_T u_b] = (-1)^{|a||T|} eta_S eta_T [u_a, u_b]``; the parity
    of ``eta_S u_a`` is ``|a| + |S|``.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return g
    subsets = _subsets(m)
    basis = [(S, a) for S in subsets for a in range(g.dim)]
    index = {b: k for k, b in enumerate(basis)}
    parities = tuple((g.parities[a] + len(S)) % 2 for S, a in basis)
    consts = {}
    for (S, a), (T, b) in itertools.product(basis, basis):
        w = _wedge(S, T)
        if w is None:
            continue
        s, U = w
        s *= _sgn(g.parities[a] * len(T))
        for c in range(g.dim):
            k = g.C(c, a, b)
            if k:
                consts[(index[(U, c)], index[(S, a)], index[(T, b)])] = s * k
    names = tuple(
        g.names[a] + ("_" + "".join(str(i + 1) for i in S) if S else "") for S, a in basis
    )
    return SuperLieAlgebra(parities, consts, names)


# ---------------------------------------------------------------------------
# source supersymmetry: gauge fixing for constant pi


@dataclass
class GaugeFixResult:
    model: FieldModel
    parameters: dict  # parameter name -> Polynomial in the tilde fields
    residual: dict  # field name -> Polynomial (all zero on success)

    @property
    def ok(self) -> bool:
        return all(not v for v in self.residual.values())


def source_susy_gauge_fix(pi: PoissonBivector) -> GaugeFixResult:
    """Remove the tilde fields ``X~, A~`` by a gauge transformation.

    ``eps~_J = (pi^{-1})_{JI} X~^I`` solves ``X~ = delta X``; the remaining
    condition ``A~ = delta A`` is checked modulo the linearised equation of
    motion for ``X~``.  Only constant invertible ``pi`` is accepted.
    """
    if not pi.is_constant():
        raise ValueError("gauge fixing is implemented for constant pi only")
    inv = rational_inverse(pi.matrix())
    if inv is None:
        raise ValueError("pi is not invertible")
    lift = psm_lift(pi)
    model = psm_field_model(lift, sign=-1)
    src = model.source.context
    xs = list(pi.ctx.names)
    ps = [lift.momenta[x] for x in xs]
    # eps_J = sum_I (pi^{-1})_{JI} X^I
    eps_vals = {}
    for J, p in enumerate(ps):
        v = src.zero()
        for I, x in enumerate(xs):
            if inv[J][I]:
                v = v + src.gen(model.fields[x]).scale(inv[J][I])
        eps_vals[model.params[p]] = v
    images = {n: src.gen(n) for n in src.names}
    for e, v in eps_vals.items():
        images[e] = v
        images[model.source.partner(e)] = apply(model.d, v)
    delta = model.gauge_transformations()
    # equations of motion as rewrite rules dX -> dX - F
    eqs = model.field_equations()
    eom = {n: src.gen(n) for n in src.names}
    for x in xs:
        X = model.fields[x]
        eom[model.source.partner(X)] = src.gen(model.source.partner(X)) - eqs[X]
    residual = {}
    for q in xs + ps:
        fname = model.fields[q]
        r = src.gen(fname) - substitute(delta[fname], images, target=src)
        residual[fname] = substitute(r, eom, target=src)
    return GaugeFixResult(model, eps_vals, residual)
