"""Line-oriented model files.

::

    # comments run to the end of the line
    signature z2=1 z=1 convention=bl
    slot z2 p
    slot z gh
    gen x deg=(0|0)
    gen p deg=(0|1)
    der Q deg=(0|1) { x -> p; p -> 0 }
    algebra so3 parities=(0,0,0)
    const so3[3,1,2] = 1          # C^3_{12}
    bivec pi { (1,2) -> x }
    form omega matrix { 0 1; -1 0 } deg=(0|1)
    poly H = 1/2*x^2

Generator declarations come first in effect: every expression is read in the
context formed by all ``gen`` lines.  Braced bodies may span lines; entries are
separated by ``;`` or newlines.  Indices in ``const`` and ``bivec`` are
1-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import DegreeMismatch, GradedContext
from .calculus import Derivation
from .grading import MultiDegree, SignConvention, SlotSignature
from .models import MalformedAlgebra, MalformedBivector, PoissonBivector, SuperLieAlgebra
from .symplectic import ConstantSymplecticForm
from .text import ParseError, format_polynomial, format_rational, parse_expression

__all__ = ["ModelFile", "parse_model", "print_model", "load_model", "ParseError"]

_NAME = r"[^\W\d]\w*"


@dataclass
class ModelFile:
    signature: SlotSignature
    convention: SignConvention
    context: GradedContext
    derivations: dict = field(default_factory=dict)
    algebras: dict = field(default_factory=dict)
    bivectors: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)
    polynomials: dict = field(default_factory=dict)

    def lookup(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise KeyError(f"no {kind[:-1] if kind != 'polynomials' else 'polynomial'} named {name!r} (known: {known})")
        return table[name]


class _Source:
    def __init__(self, text):
        self.text = text
        self.starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self.starts.append(i + 1)

    def pos(self, offset):
        lo, hi = 0, len(self.starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, offset - self.starts[lo] + 1

    def error(self, msg, offset):
        line, col = self.pos(offset)
        return ParseError(msg, line, col)


def _strip_comment(text):
    out = []
    for line in text.split("\n"):
        i = line.find("#")
        out.append(line if i < 0 else line[:i] + " " * (len(line) - i))
    return "\n".join(out)


def _statements(src: _Source):
    """Yield ``(offset, text)``; a statement ends at a newline outside braces."""
    text = _strip_comment(src.text)
    depth = 0
    start = None
    for i, ch in enumerate(text + "\n"):
        if start is None:
            if ch.isspace():
                continue
            start = i
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise src.error("unmatched '}'", i)
        elif ch == "\n" and depth == 0:
            yield start, text[start:i]
            start = None
    if depth > 0:
        raise src.error("unclosed '{'", start if start is not None else len(text))


def _entries(src, offset, body):
    """Split a braced body at ``;`` and newlines; yield ``(offset, text)`` of non-empty parts."""
    i = 0
    for part in re.split(r"[;\n]", body):
        stripped = part.strip()
        if stripped:
            yield offset + i + (len(part) - len(part.lstrip())), stripped
        i += len(part) + 1


def _degree(src, offset, text):
    try:
        return MultiDegree.parse(text)
    except ValueError as exc:
        raise src.error(str(exc), offset) from None


def _expr(src, offset, text, ctx):
    line, col = src.pos(offset)
    return parse_expression(text, ctx, line, col)


def _rational(src, offset, text):
    m = re.fullmatch(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*", text)
    if not m or (m.group(2) is not None and int(m.group(2)) == 0):
        raise src.error(f"expected a rational number, found {text.strip()!r}", offset)
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


_HEADER = {
    "signature": re.compile(r"signature\s+z2\s*=\s*(\d+)\s+z\s*=\s*(\d+)\s+convention\s*=\s*(\w+)\s*$"),
    "slot": re.compile(rf"slot\s+(z2|z)\s+({_NAME})\s*$"),
    "gen": re.compile(rf"gen\s+({_NAME})\s+deg\s*=\s*(\([^)]*\))\s*$"),
    "der": re.compile(rf"der\s+({_NAME})\s+deg\s*=\s*(\([^)]*\))\s*\{{(.*)\}}\s*$", re.S),
    "algebra": re.compile(rf"algebra\s+({_NAME})\s+parities\s*=\s*\(([^)]*)\)(?:\s+names\s*=\s*\(([^)]*)\))?\s*$"),
    "const": re.compile(rf"const\s+({_NAME})\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(.+)$"),
    "bivec": re.compile(rf"bivec\s+({_NAME})\s*\{{(.*)\}}\s*$", re.S),
    "form": re.compile(rf"form\s+({_NAME})\s+matrix\s*\{{(.*)\}}\s*deg\s*=\s*(\([^)]*\))\s*$", re.S),
    "poly": re.compile(rf"poly\s+({_NAME})\s*=\s*(.+)$"),
}


def parse_model(text: str) -> ModelFile:
    src = _Source(text)
    stmts = []
    for off, st in _statements(src):
        kw = st.split(None, 1)[0]
        if kw not in _HEADER:
            raise src.error(f"unknown statement {kw!r}", off)
        m = _HEADER[kw].match(st)
        if not m:
            raise src.error(f"malformed {kw!r} statement", off)
        stmts.append((kw, off, m))

    # pass 1: signature, slots, generators
    sig_stmt = [s for s in stmts if s[0] == "signature"]
    if not sig_stmt:
        raise ParseError("missing 'signature' statement", 1, 1)
    if len(sig_stmt) > 1:
        raise src.error("duplicate 'signature' statement", sig_stmt[1][1])
    _, off, m = sig_stmt[0]
    if stmts[0][0] != "signature":
        raise src.error("'signature' must be the first statement", off)
    k, l = int(m.group(1)), int(m.group(2))
    try:
        convention = SignConvention.parse(m.group(3))
    except ValueError as exc:
        raise src.error(str(exc), off + m.start(3)) from None
    z2_names, z_names = [], []
    for kw, off, m in stmts:
        if kw != "slot":
            continue
        kind, name = m.group(1), m.group(2)
        bucket, cap = (z2_names, k) if kind == "z2" else (z_names, l)
        if name in z2_names or name in z_names:
            raise src.error(f"duplicate slot name {name!r}", off + m.start(2))
        if len(bucket) >= cap:
            raise src.error(f"more {kind} slots named than the signature declares", off)
        bucket.append(name)
    z2_names += [f"z2_{i + 1}" for i in range(len(z2_names), k)]
    z_names += [f"z_{i + 1}" for i in range(len(z_names), l)]
    sig = SlotSignature(k, l, tuple(z2_names + z_names))
    gens = []
    seen = set()
    for kw, off, m in stmts:
        if kw != "gen":
            continue
        name = m.group(1)
        if name in seen:
            raise src.error(f"duplicate generator {name!r}", off + m.start(1))
        deg = _degree(src, off + m.start(2), m.group(2))
        if not sig.conforms(deg):
            raise src.error(f"degree {deg} does not fit the signature ({k} z2 slots, {l} z slots)", off + m.start(2))
        seen.add(name)
        gens.append((name, deg))
    ctx = GradedContext(sig, convention, tuple(gens))
    model = ModelFile(sig, convention, ctx)

    # pass 2: named objects
    names = {}

    def claim(name, off, kind):
        if name in names and names[name] != kind:
            raise src.error(f"name {name!r} already used for a {names[name]}", off)
        if name in names and kind != "algebra":
            raise src.error(f"duplicate {kind} {name!r}", off)
        names[name] = kind

    consts = {}
    for kw, off, m in stmts:
        try:
            if kw == "der":
                name = m.group(1)
                claim(name, off + m.start(1), "derivation")
                deg = _degree(src, off + m.start(2), m.group(2))
                if not sig.conforms(deg):
                    raise src.error(f"degree {deg} does not fit the signature", off + m.start(2))
                vals = {}
                for eoff, entry in _entries(src, off + m.start(3), m.group(3)):
                    mm = re.fullmatch(rf"({_NAME})\s*->\s*(.+)", entry, re.S)
                    if not mm:
                        raise src.error("expected '<generator> -> <expression>'", eoff)
                    g = mm.group(1)
                    if g not in ctx:
                        raise src.error(f"unknown generator {g!r}", eoff)
                    if g in vals:
                        raise src.error(f"generator {g!r} assigned twice", eoff)
                    vals[g] = _expr(src, eoff + mm.start(2), mm.group(2), ctx)
                try:
                    model.derivations[name] = Derivation(ctx, vals, deg)
                except DegreeMismatch as exc:
                    raise src.error(str(exc), off) from None
            elif kw == "algebra":
                name = m.group(1)
                if name in consts and "parities" in consts[name]:
                    raise src.error(f"duplicate algebra {name!r}", off + m.start(1))
                claim(name, off + m.start(1), "algebra")
                body = m.group(2).strip()
                try:
                    pars = tuple(int(t) for t in body.split(",")) if body else ()
                except ValueError:
                    raise src.error("parities must be 0 or 1", off + m.start(2)) from None
                if any(p not in (0, 1) for p in pars):
                    raise src.error("parities must be 0 or 1", off + m.start(2))
                entry = consts.setdefault(name, {"table": {}, "off": off})
                entry["parities"] = pars
                if m.group(3):
                    entry["names"] = tuple(t.strip() for t in m.group(3).split(","))
            elif kw == "const":
                name = m.group(1)
                claim(name, off + m.start(1), "algebra")
                key = tuple(int(m.group(i)) for i in (2, 3, 4))
                if 0 in key:
                    raise src.error("structure constant indices are 1-based", off + m.start(2))
                val = _rational(src, off + m.start(5), m.group(5))
                entry = consts.setdefault(name, {"table": {}, "off": off})
                if key in entry["table"]:
                    raise src.error(f"constant {name}[{key[0]},{key[1]},{key[2]}] given twice", off)
                entry["table"][key] = (val, off)
            elif kw == "bivec":
                name = m.group(1)
                claim(name, off + m.start(1), "bivector")
                comps = {}
                for eoff, entry in _entries(src, off + m.start(2), m.group(2)):
                    mm = re.fullmatch(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*->\s*(.+)", entry, re.S)
                    if not mm:
                        raise src.error("expected '(<i>,<j>) -> <expression>'", eoff)
                    i, j = int(mm.group(1)), int(mm.group(2))
                    if not (1 <= i <= len(ctx) and 1 <= j <= len(ctx)):
                        raise src.error(f"index ({i},{j}) out of range", eoff)
                    if (i, j) in comps:
                        raise src.error(f"component ({i},{j}) given twice", eoff)
                    comps[(i, j)] = _expr(src, eoff + mm.start(3), mm.group(3), ctx)
                try:
                    model.bivectors[name] = PoissonBivector.from_entries(ctx, comps)
                except MalformedBivector as exc:
                    raise src.error(str(exc), off) from None
            elif kw == "form":
                name = m.group(1)
                claim(name, off + m.start(1), "form")
                rows = []
                for eoff, row in _entries(src, off + m.start(2), m.group(2).replace("\n", ";")):
                    rows.append([_rational(src, eoff, t) for t in re.split(r"[\s,]+", row) if t])
                n = len(ctx)
                if len(rows) != n or any(len(r) != n for r in rows):
                    raise src.error(f"form matrix must be {n} x {n}", off + m.start(2))
                deg = _degree(src, off + m.start(3), m.group(3))
                if not sig.conforms(deg):
                    raise src.error(f"degree {deg} does not fit the signature", off + m.start(3))
                try:
                    model.forms[name] = ConstantSymplecticForm.from_matrix(ctx, rows, deg)
                except ValueError as exc:
                    raise src.error(str(exc), off) from None
            elif kw == "poly":
                name = m.group(1)
                claim(name, off + m.start(1), "polynomial")
                model.polynomials[name] = _expr(src, off + m.start(2), m.group(2), ctx)
        except ParseError:
            raise
        except KeyError as exc:
            raise src.error(str(exc.args[0]), off) from None

    for name, entry in consts.items():
        table = entry["table"]
        if "parities" in entry:
            pars = entry["parities"]
        else:
            n = max((max(k) for k in table), default=0)
            pars = (0,) * n
        for (a, b, c), (_, off) in table.items():
            if max(a, b, c) > len(pars):
                raise src.error(f"index out of range for algebra {name!r} of dimension {len(pars)}", off)
        try:
            model.algebras[name] = SuperLieAlgebra(
                pars, {(a - 1, b - 1, c - 1): v for (a, b, c), (v, _) in table.items()}, entry.get("names", ())
            )
        except MalformedAlgebra as exc:
            raise src.error(str(exc), entry["off"]) from None
    return model


def load_model(path) -> ModelFile:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


# ---------------------------------------------------------------------------
# printing


def _deg(d: MultiDegree) -> str:
    return str(d)


def print_model(model: ModelFile) -> str:
    sig = model.signature
    out = [f"signature z2={sig.z2_count} z={sig.z_count} convention={model.convention.value}"]
    out += [f"slot z2 {n}" for n in sig.z2_names]
    out += [f"slot z {n}" for n in sig.z_names]
    ctx = model.context
    out += [f"gen {n} deg={_deg(d)}" for n, d in ctx.generators]
    for name, der in model.derivations.items():
        body = "; ".join(f"{g} -> {format_polynomial(der.values[g])}" for g in ctx.names if g in der.values)
        out.append(f"der {name} deg={_deg(der.degree)} {{ {body} }}" if body else f"der {name} deg={_deg(der.degree)} {{ }}")
    for name, g in model.algebras.items():
        line = f"algebra {name} parities=({','.join(map(str, g.parities))})"
        default = tuple(f"e{i + 1}" for i in range(g.dim))
        if g.names != default:
            line += f" names=({','.join(g.names)})"
        out.append(line)
        for (a, b, c), v in sorted(g.constants.items()):
            if b <= c:
                out.append(f"const {name}[{a + 1},{b + 1},{c + 1}] = {format_rational(v)}")
    for name, pi in model.bivectors.items():
        entries = [
            f"({i + 1},{j + 1}) -> {format_polynomial(v)}"
            for (i, j), v in sorted(pi.components.items())
            if i <= j
        ]
        out.append(f"bivec {name} {{ {'; '.join(entries)} }}" if entries else f"bivec {name} {{ }}")
    for name, form in model.forms.items():
        rows = "; ".join(" ".join(format_rational(v) for v in r) for r in form.matrix())
        deg = form.degree
        base_sig = form.base.signature
        deg = MultiDegree(
            tuple(deg.z2[base_sig.z2_names.index(n)] for n in sig.z2_names),
            tuple(deg.z[base_sig.z_names.index(n)] for n in sig.z_names),
        )
        out.append(f"form {name} matrix {{ {rows} }} deg={_deg(deg)}")
    for name, f in model.polynomials.items():
        out.append(f"poly {name} = {format_polynomial(f)}")
    return "\n".join(out) + "\n"
