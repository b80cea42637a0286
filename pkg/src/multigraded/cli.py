"""Command line front end: ``multigraded <command> MODEL [options]``.

Every command calls one library operation and prints a report.  Exit codes:
0 when every check passes, 1 when a mathematical check fails (a witness is
printed), 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import aksz, models
from .calculus import apply, interior_product, squares_to_zero
from .modelfile import ParseError, load_model, print_model
from .symplectic import hamiltonian_vf, master_equation, poisson_bracket
from .text import format_polynomial

SCHEMA = "multigraded.report/1"


class InputError(Exception):
    pass


class Report:
    def __init__(self, command, model, args):
        self.data = {
            "schema": SCHEMA,
            "command": command,
            "model": model,
            "args": args,
            "verdicts": [],
            "results": {},
            "witnesses": {},
        }

    def check(self, name, ok):
        self.data["verdicts"].append({"name": name, "ok": bool(ok)})
        return ok

    def result(self, name, value):
        self.data["results"][name] = _show(value)

    def witness(self, name, value):
        self.data["witnesses"][name] = _show(value)

    @property
    def ok(self):
        return all(c["ok"] for c in self.data["verdicts"])

    def finish(self, started=None):
        self.data["status"] = "pass" if self.ok else "fail"
        if started is not None:
            self.data["seconds"] = round(time.perf_counter() - started, 6)
        return self.data

    def text(self):
        lines = [f"{self.data['command']}: {self.data['status']}"]
        for c in self.data["verdicts"]:
            lines.append(f"  [{'PASS' if c['ok'] else 'FAIL'}] {c['name']}")
        for k, v in self.data["results"].items():
            lines.append(_block(k, v))
        for k, v in self.data["witnesses"].items():
            lines.append(_block("witness " + k, v))
        if "seconds" in self.data:
            lines.append(f"  time: {self.data['seconds']}s")
        return "\n".join(lines)


def _block(key, value):
    if isinstance(value, dict):
        body = "\n".join(f"    {k}: {v}" for k, v in value.items())
        return f"  {key}:\n{body}" if body else f"  {key}: {{}}"
    return f"  {key}: {value}"


def _show(value):
    if isinstance(value, dict):
        return {str(k): _show(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_show(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if hasattr(value, "terms"):
        return format_polynomial(value)
    if hasattr(value, "values") and hasattr(value, "ctx"):  # Derivation
        return {n: format_polynomial(value.values[n]) for n in value.ctx.names if n in value.values}
    return str(value)


def _der_dict(X):
    return {n: X.values[n] for n in X.ctx.names if n in X.values}


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError(f"--{n.replace('_', '-')} is required for this command")


# ---------------------------------------------------------------------------
# commands


def cmd_print(model, args, rep):
    rep.result("model", print_model(model))


def cmd_check_q(model, args, rep):
    _need(args, "der")
    Q = model.lookup("derivations", args.der)
    ok = squares_to_zero(Q)
    rep.check(f"{args.der}^2 = 0", ok)
    if not ok:
        bad = {n: apply(Q, Q.value(n)) for n in Q.ctx.names if apply(Q, Q.value(n))}
        rep.witness("Q(Q(g))", bad)


def cmd_jacobi(model, args, rep):
    _need(args, "const")
    g = model.lookup("algebras", args.const)
    jac = models.jacobiator_oracle(g)
    _, Q = models.ce_differential(g, model.convention)
    q_ok = squares_to_zero(Q)
    rep.check("Jacobiator vanishes", not jac)
    rep.check("d_CE squares to zero", q_ok)
    rep.check("the two verdicts agree", q_ok == (not jac))
    rep.result("dimension", g.dim)
    if jac:
        (d, a, b, c), v = sorted(jac.items())[0]
        rep.witness("jacobiator", f"component {d + 1} of J({g.names[a]},{g.names[b]},{g.names[c]}) = {v}")


def _bivec(model, args):
    _need(args, "bivec")
    if args.bivec == "zero" and "zero" not in model.bivectors:
        return models.PoissonBivector(model.context, {})
    return model.lookup("bivectors", args.bivec)


def cmd_psm_lift(model, args, rep):
    pi = _bivec(model, args)
    lift = models.psm_lift(pi, args.variant)
    jac = models.pi_jacobiator(pi)
    q_ok = squares_to_zero(lift.Q)
    rep.result("Pi", lift.Pi)
    rep.result("Q", _der_dict(lift.Q))
    rep.check("X_Pi squares to zero", q_ok)
    rep.check("graded Jacobi of pi", not jac)
    rep.check("the two verdicts agree", q_ok == (not jac))
    if jac:
        (i, j, k), v = sorted(jac.items(), key=lambda kv: kv[0])[0]
        names = pi.ctx.names
        rep.witness("jacobiator", f"J({names[i]},{names[j]},{names[k]}) = {format_polynomial(v)}")


def _form_poly(model, args, key="poly"):
    _need(args, "form", key)
    return model.lookup("forms", args.form), model.lookup("polynomials", getattr(args, key))


def cmd_hamiltonian(model, args, rep):
    form, f = _form_poly(model, args)
    X = hamiltonian_vf(form, f)
    rep.result("X", _der_dict(X))
    sh = form.shifted
    lhs = apply(interior_product(X, sh), form.omega)
    rhs = apply(sh.differential(), sh.embed(f))
    rep.check("i_X omega = d f", lhs == rhs)


def cmd_bracket(model, args, rep):
    form, f = _form_poly(model, args)
    _need(args, "poly2")
    g = model.lookup("polynomials", args.poly2)
    rep.result("bracket", poisson_bracket(form, f, g))


def cmd_master(model, args, rep):
    form, S = _form_poly(model, args)
    ok = master_equation(form, S)
    X = hamiltonian_vf(form, S)
    SS = poisson_bracket(form, S, S)
    rep.result("(S,S)", SS)
    rep.check("(S,S) = 0", ok)
    if not ok:
        rep.witness("(S,S)", SS)
    rep.check("agrees with X_S squaring to zero", ok == squares_to_zero(X))


def cmd_berezin(model, args, rep):
    _need(args, "poly", "over")
    f = model.lookup("polynomials", args.poly)
    gens = tuple(t for t in args.over.split(",") if t)
    rep.result("integral", aksz.berezin(f, aksz.BerezinianMeasure(gens)))


def cmd_measure_check(model, args, rep):
    if args.const is not None:
        _, Q = models.ce_differential(model.lookup("algebras", args.const), model.convention)
    else:
        _need(args, "der")
        Q = model.lookup("derivations", args.der)
    res = aksz.measure_admissible(Q)
    rep.check("Berezinian is Q-invariant", res.ok)
    if not res.ok:
        rep.witness(res.stage, res.witness)


def cmd_top_cohomology(model, args, rep):
    _need(args, "const")
    g = model.lookup("algebras", args.const)
    line = aksz.top_cohomology_is_line(g)
    _, Q = models.ce_differential(g, model.convention)
    res = aksz.measure_admissible(Q)
    rep.check("H^top = R", line)
    rep.check("agrees with measure admissibility", line == res.ok)
    if not res.ok:
        rep.witness("cochain hitting the top monomial", res.witness)


def cmd_odd_lift(model, args, rep):
    _need(args, "form")
    form = model.lookup("forms", args.form)
    Q = model.lookup("derivations", args.der) if args.der else None
    lift = aksz.odd_source_lift(model.context, Q, form, args.m)
    rep.result("components", {f"{q}[{''.join(map(str, S))}]" if S else q: n for (q, S), n in lift.components.items() if S})
    rep.result("omega_ext", lift.omega.omega)
    rep.check("omega_ext nondegenerate", lift.omega.is_nondegenerate())
    if lift.Q is not None:
        rep.result("Q_ext", _der_dict(lift.Q))
        if squares_to_zero(Q):
            rep.check("Q_ext squares to zero", squares_to_zero(lift.Q))


def cmd_susy_expand(model, args, rep):
    pi = _bivec(model, args)
    exp = aksz.susy_expand(pi, args.m, args.placement)
    rep.result("action", exp.action)


def cmd_cs_extend(model, args, rep):
    _need(args, "const")
    g = model.lookup("algebras", args.const)
    ext = models.cs_extend_algebra(g, args.m)
    rep.result("dimension", ext.dim)
    rep.result("basis", ", ".join(f"{n}({p})" for n, p in zip(ext.names, ext.parities)))
    if models.jacobiator_oracle(g):
        rep.result("note", "input algebra already violates Jacobi")
    else:
        rep.check("extension satisfies Jacobi", not models.jacobiator_oracle(ext))


def _field_model(model, args):
    if args.const is not None:
        return models.cs_field_model(model.lookup("algebras", args.const), sign=args.sign or 1, convention=model.convention)
    pi = _bivec(model, args)
    return models.psm_field_model(models.psm_lift(pi, args.variant), sign=args.sign or -1)


def cmd_defect(model, args, rep):
    fm = _field_model(model, args)
    rep.result("field equations", fm.field_equations())


def cmd_gauge_var(model, args, rep):
    fm = _field_model(model, args)
    rep.result("gauge transformations", fm.gauge_transformations())


def cmd_gauge_fix(model, args, rep):
    pi = _bivec(model, args)
    try:
        res = models.source_susy_gauge_fix(pi)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep.result("parameters", res.parameters)
    rep.result("residual", res.residual)
    rep.check("residual vanishes on shell", res.ok)


COMMANDS = {
    "check-q": cmd_check_q,
    "jacobi": cmd_jacobi,
    "psm-lift": cmd_psm_lift,
    "hamiltonian": cmd_hamiltonian,
    "bracket": cmd_bracket,
    "master": cmd_master,
    "berezin": cmd_berezin,
    "measure-check": cmd_measure_check,
    "top-cohomology": cmd_top_cohomology,
    "odd-lift": cmd_odd_lift,
    "susy-expand": cmd_susy_expand,
    "cs-extend": cmd_cs_extend,
    "defect": cmd_defect,
    "gauge-var": cmd_gauge_var,
    "gauge-fix": cmd_gauge_fix,
    "print": cmd_print,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser():
    p = _Parser(prog="multigraded", description="Exact checks on multigraded model files.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("model", help="path to a model file")
    p.add_argument("--der")
    p.add_argument("--const")
    p.add_argument("--bivec")
    p.add_argument("--form")
    p.add_argument("--poly")
    p.add_argument("--poly2")
    p.add_argument("--over", help="comma-separated odd generators for berezin")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--variant", default="2000", choices=["2000", "2000-literal", "1999"])
    p.add_argument("--placement", default="standard", choices=["standard", "left"])
    p.add_argument("--sign", type=int, choices=[1, -1])
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")
    return p


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    started = time.perf_counter() if args.timing else None
    opts = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "model", "json", "timing") and v is not None}
    rep = Report(args.command, args.model, opts)
    try:
        model = load_model(args.model)
        COMMANDS[args.command](model, args, rep)
    except OSError as exc:
        print(f"error: cannot read {args.model}: {exc.strerror}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"{args.model}:{exc}", file=sys.stderr)
        return 2
    except (InputError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    data = rep.finish(started)
    if args.json:
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    elif args.command == "print":
        out.write(data["results"]["model"])
    else:
        out.write(rep.text() + "\n")
    return 0 if rep.ok else 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
