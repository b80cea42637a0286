"""Free graded-commutative polynomial algebra over a graded context.

Elements are stored in canonical form: a dict from exponent tuples (one
entry per generator, in context order) to nonzero :class:`fractions.Fraction`
coefficients.  Every product is immediately normal-ordered with the Koszul
signs of the context's convention.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .grading import (
    BL,
    MultiDegree,
    SignConvention,
    SignatureMismatch,
    SlotSignature,
    is_odd,
    koszul_exponent,
)

__all__ = [
    "GradedContext",
    "Polynomial",
    "ContextMismatch",
    "UnknownGenerator",
    "DegreeMismatch",
    "INHOMOGENEOUS",
    "normal_form",
    "mul",
    "left_partial",
    "substitute",
    "degree_of",
]


class ContextMismatch(ValueError):
    pass


class UnknownGenerator(KeyError):
    pass


class DegreeMismatch(ValueError):
    pass


class _Inhomogeneous:
    def __repr__(self):
        return "INHOMOGENEOUS"


INHOMOGENEOUS = _Inhomogeneous()


@dataclass(frozen=True)
class GradedContext:
    """An ordered list of named generators with degrees, plus a sign convention.

    The generator order is the normal-ordering order for monomials and the
    printing order.
    """

    signature: SlotSignature
    convention: SignConvention = BL
    generators: tuple = ()

    _index: dict = field(default=None, compare=False, repr=False, hash=False)
    _odd: tuple = field(default=None, compare=False, repr=False, hash=False)
    _exch: tuple = field(default=None, compare=False, repr=False, hash=False)
    _mulcache: dict = field(default=None, compare=False, repr=False, hash=False)
    _degcache: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        gens = tuple((str(n), d) for n, d in self.generators)
        object.__setattr__(self, "generators", gens)
        index = {}
        for i, (name, deg) in enumerate(gens):
            if name in index:
                raise ValueError(f"duplicate generator {name!r}")
            if not self.signature.conforms(deg):
                raise SignatureMismatch(f"degree {deg} of {name!r} does not fit {self.signature}")
            index[name] = i
        degs = [d for _, d in gens]
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_odd", tuple(is_odd(d, self.convention) for d in degs))
        object.__setattr__(
            self,
            "_exch",
            tuple(tuple(koszul_exponent(a, b, self.convention) for b in degs) for a in degs),
        )
        object.__setattr__(self, "_mulcache", {})
        object.__setattr__(self, "_degcache", {})

    # -- structure -----------------------------------------------------
    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.generators)

    @property
    def degrees(self) -> tuple:
        return tuple(d for _, d in self.generators)

    def __len__(self):
        return len(self.generators)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def degree(self, name: str) -> MultiDegree:
        return self.generators[self.index(name)][1]

    def is_odd(self, name: str) -> bool:
        return self._odd[self.index(name)]

    def sign(self, a: MultiDegree, b: MultiDegree) -> int:
        return -1 if koszul_exponent(a, b, self.convention) else 1

    def zero_degree(self) -> MultiDegree:
        return self.signature.zero()

    # -- constructors --------------------------------------------------
    def gen(self, name: str) -> "Polynomial":
        i = self.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(self)))
        return Polynomial(self, {mono: Fraction(1)})

    def gens(self, *names) -> list:
        return [self.gen(n) for n in names]

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {self.unit_monomial(): c} if c else {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def unit_monomial(self) -> tuple:
        return (0,) * len(self)

    # -- derived contexts ----------------------------------------------
    def with_slot(self, kind: str, name: str) -> "GradedContext":
        sig = self.signature.add_slot(kind, name)
        gens = tuple((n, d.pad(self.signature, sig)) for n, d in self.generators)
        return GradedContext(sig, self.convention, gens)

    def extend(self, new_generators: Iterable) -> "GradedContext":
        return GradedContext(self.signature, self.convention, self.generators + tuple(new_generators))

    def restrict(self, names: Iterable[str]) -> "GradedContext":
        names = list(names)
        return GradedContext(self.signature, self.convention, tuple((n, self.degree(n)) for n in names))

    # -- monomial kernel -----------------------------------------------
    def monomial_degree(self, mono: tuple) -> MultiDegree:
        deg = self._degcache.get(mono)
        if deg is None:
            deg = self.zero_degree()
            for e, (_, d) in zip(mono, self.generators):
                if e:
                    deg = deg + d.scale(e)
            if len(self._degcache) < 200000:
                self._degcache[mono] = deg
        return deg

    def mono_mul(self, a: tuple, b: tuple):
        """Return ``(sign, monomial)`` for the normal-ordered product, or ``None`` if zero."""
        key = (a, b)
        hit = self._mulcache.get(key)
        if hit is not None:
            return hit if hit != 0 else None
        odd = self._odd
        exch = self._exch
        a_nz = [i for i, e in enumerate(a) if e]
        b_nz = [j for j, e in enumerate(b) if e]
        result = None
        for i in a_nz:
            if odd[i] and b[i]:
                break
        else:
            s = 0
            for i in a_nz:
                row = exch[i]
                ai = a[i]
                for j in b_nz:
                    if j >= i:
                        break
                    if row[j]:
                        s += ai * b[j]
            mono = tuple(x + y for x, y in zip(a, b))
            result = (-1 if s % 2 else 1, mono)
        if len(self._mulcache) < 200000:
            self._mulcache[key] = result if result is not None else 0
        return result

    def check_monomial(self, mono: tuple) -> bool:
        return all(e <= 1 for e, o in zip(mono, self._odd) if o)

    # -- text ----------------------------------------------------------
    def parse(self, text: str) -> "Polynomial":
        from .text import parse_expression

        return parse_expression(text, self)


class Polynomial:
    """An element of the free graded-commutative algebra of a context."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: GradedContext, terms: Mapping | None = None):
        self.ctx = ctx
        clean = {}
        for m, c in (terms or {}).items():
            if c:
                clean[tuple(m)] = Fraction(c)
        self.terms = clean
        self._hash = None

    # -- basic protocol ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .text import format_polynomial

        return format_polynomial(self)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextMismatch("polynomials live in different contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # -- ring operations -----------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.ctx.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ctx.zero()
        return Polynomial(self.ctx, {m: c * v for m, v in self.terms.items()})

    # -- inspection ----------------------------------------------------
    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(self.ctx.unit_monomial())

    def is_constant(self) -> bool:
        unit = self.ctx.unit_monomial()
        return all(m == unit for m in self.terms)

    def degree(self):
        return degree_of(self)

    def homogeneous_parts(self) -> dict:
        parts: dict = {}
        for m, c in self.terms.items():
            parts.setdefault(self.ctx.monomial_degree(m), {})[m] = c
        return {d: Polynomial(self.ctx, t) for d, t in parts.items()}

    def generators_used(self) -> set:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return {self.ctx.names[i] for i in used}

    def max_total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    # -- moving between contexts ----------------------------------------
    def lift(self, target: GradedContext) -> "Polynomial":
        """Re-express in a context that contains every generator used here (by name)."""
        if target == self.ctx:
            return self
        idx = [target.index(n) if any(m[i] for m in self.terms) else None
               for i, n in enumerate(self.ctx.names)]
        out = {}
        n = len(target)
        for m, c in self.terms.items():
            new = [0] * n
            for i, e in enumerate(m):
                if e:
                    new[idx[i]] = e
            out[tuple(new)] = c
        return Polynomial(target, out)


# ---------------------------------------------------------------------------
# operations


def normal_form(ctx: GradedContext, word, coeff=1) -> Polynomial:
    """Canonical element equal to ``coeff * g1^k1 * g2^k2 * ...`` (word in any order)."""
    out = ctx.const(coeff)
    for item in word:
        name, power = (item, 1) if isinstance(item, str) else item
        i = ctx.index(name)
        if power < 0:
            raise ValueError("negative powers are not allowed")
        for _ in range(power):
            mono = tuple(1 if j == i else 0 for j in range(len(ctx)))
            out = mul(out, Polynomial(ctx, {mono: 1}))
    return out


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ctx != g.ctx:
        raise ContextMismatch("cannot multiply polynomials from different contexts")
    ctx = f.ctx
    out: dict = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            r = ctx.mono_mul(a, b)
            if r is None:
                continue
            s, m = r
            v = out.get(m, 0) + s * ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Polynomial(ctx, out)


def left_partial(f: Polynomial, gen: str) -> Polynomial:
    """Left derivative: the operator is moved past preceding factors with Koszul signs."""
    ctx = f.ctx
    k = ctx.index(gen)
    row = ctx._exch[k]
    out = {}
    for m, c in f.terms.items():
        e = m[k]
        if not e:
            continue
        s = sum(m[i] for i in range(k) if row[i]) % 2
        new = m[:k] + (e - 1,) + m[k + 1:]
        out[new] = out.get(new, 0) + (-c if s else c) * e
    return Polynomial(ctx, out)


def substitute(
    f: Polynomial,
    images: Mapping,
    target: GradedContext | None = None,
    check_degrees: bool = True,
    keep_missing: bool = False,
) -> Polynomial:
    """Apply the algebra map determined by ``images`` (generator name -> Polynomial).

    Every generator needs an image unless ``keep_missing`` is set, in which
    case missing generators go to the same-named generator of ``target``.
    Degree checking can be switched off for maps that preserve only some
    gradings.
    """
    src = f.ctx
    if target is None:
        target = next((p.ctx for p in images.values() if isinstance(p, Polynomial)), src)
    imgs = []
    for name in src.names:
        if name not in images:
            if not keep_missing:
                raise KeyError(f"missing image for generator {name!r}")
            imgs.append(target.gen(name))
            continue
        img = images[name]
        if not isinstance(img, Polynomial):
            img = target.const(img)
        if img.ctx != target:
            raise ContextMismatch(f"image of {name!r} is not in the target context")
        if check_degrees and img:
            d = degree_of(img)
            want = src.degree(name)
            if d is INHOMOGENEOUS or d != want:
                raise DegreeMismatch(f"image of {name!r} has degree {d}, expected {want}")
        imgs.append(img)
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = imgs[i] if e == 1 else mul(power(i, e - 1), imgs[i])
        return powers[key]

    out = target.zero()
    for m, c in f.terms.items():
        term = target.const(c)
        for i, e in enumerate(m):
            if e:
                term = mul(term, power(i, e))
                if not term:
                    break
        out = out + term
    return out


def degree_of(f: Polynomial):
    """Common degree of all terms, the zero degree for 0, or ``INHOMOGENEOUS``."""
    degs = {f.ctx.monomial_degree(m) for m in f.terms}
    if not degs:
        return f.ctx.zero_degree()
    if len(degs) > 1:
        return INHOMOGENEOUS
    return degs.pop()
