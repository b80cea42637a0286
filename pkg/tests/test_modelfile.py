import pytest

from multigraded.calculus import squares_to_zero
from multigraded.grading import BL, MultiDegree
from multigraded.modelfile import ParseError, load_model, parse_model, print_model
from multigraded.models import PoissonBivector, coordinate_space, psm_lift, so3
from multigraded.symplectic import canonical_cotangent


def _model_paths(models_dir):
    return sorted(models_dir.glob("*.model"))


def test_enough_shipped_models(models_dir):
    assert len(_model_paths(models_dir)) >= 12


def test_round_trip_on_shipped_models(models_dir):
    for path in _model_paths(models_dir):
        model = load_model(path)
        text = print_model(model)
        again = parse_model(text)
        assert again == model, path.name
        assert print_model(again) == text, path.name


MINIMAL = """\
signature z2=0 z=1 convention=bl
gen x deg=(|0)
"""


def test_minimal_model():
    model = parse_model(MINIMAL)
    assert model.context.names == ("x",)
    assert model.context.degree("x") == MultiDegree((), (0,))
    assert model.convention is BL


def test_comments_and_multiline_bodies():
    model = parse_model(
        "# header\n"
        "signature z2=1 z=1 convention=deligne   # trailing\n"
        "slot z2 p\nslot z gh\n"
        "gen x deg=(0|0)\ngen p deg=(0|1)\n"
        "der Q deg=(0|1) {\n  x -> p\n  p -> 0\n}\n"
    )
    Q = model.derivations["Q"]
    assert Q.value("x") == model.context.gen("p")
    assert squares_to_zero(Q)


def test_cotangent_derivation_matches_programmatic_lift(models_dir):
    model = load_model(models_dir / "cotangent.model")
    M = coordinate_space(["x1", "x2"])
    lift = psm_lift(PoissonBivector.from_entries(M, {(1, 2): M.parse("x1^2")}))
    Q = model.derivations["Q"]
    assert Q.ctx.names == lift.context.names
    for name in Q.ctx.names:
        assert Q.value(name).terms == lift.Q.value(name).terms
    assert model.polynomials["Pi"].terms == lift.Pi.terms


def test_form_matches_canonical_cotangent(models_dir):
    model = load_model(models_dir / "cotangent.model")
    M = coordinate_space(["x1", "x2"])
    _, om = canonical_cotangent(M, prefix="p")
    assert model.forms["omega"].matrix() == om.matrix()


def test_algebra_tables(models_dir):
    model = load_model(models_dir / "so3.model")
    (g,) = model.algebras.values()
    assert g.constants == so3().constants
    lie = load_model(models_dir / "lie_algebras.model")
    assert {"abelian2", "h3", "aff1", "sl2"} <= set(lie.algebras)


def test_bivector_models(models_dir):
    model = load_model(models_dir / "odd.model")
    pi = model.bivectors["pi"]
    assert pi[(1, 1)] == model.context.one()


HEAD = "signature z2=1 z=0 convention=bl\nslot z2 p\ngen x deg=(0|)\ngen t deg=(1|)\n"


@pytest.mark.parametrize(
    "body, line, fragment",
    [
        ("poly p = t^2\n", 5, "cannot be raised"),
        ("poly p = x y\n", 5, "juxtaposition"),
        ("poly p = x\npoly p = x\n", 6, "duplicate polynomial"),
        ("gen x deg=(0|)\n", 5, "duplicate generator"),
        ("bivec pi { (1,2) -> 1 }\n", 5, "parity"),
        ("der Q deg=(1|) { x -> x }\n", 5, "degree"),
        ("const g[1,2,0] = 1\n", 5, "1-based"),
        ("frobnicate x\n", 5, "unknown statement"),
        ("poly p = q\n", 5, "unknown generator 'q'"),
        ("form w matrix { 0 1 } deg=(0|)\n", 5, "2 x 2"),
    ],
)
def test_diagnostics_have_positions(body, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_model(HEAD + body)
    err = info.value
    assert err.line == line
    assert err.col >= 1
    assert fragment in str(err)


def test_expression_errors_point_into_the_line():
    with pytest.raises(ParseError) as info:
        parse_model(HEAD + "poly p = x + $\n")
    assert (info.value.line, info.value.col) == (5, 14)


def test_signature_errors():
    with pytest.raises(ParseError):
        parse_model("gen x deg=(|0)\n")
    with pytest.raises(ParseError) as info:
        parse_model("signature z2=0 z=1 convention=bl\nsignature z2=0 z=1 convention=bl\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_model("signature z2=0 z=1 convention=koszul\n")
    with pytest.raises(ParseError):
        parse_model("signature z2=0 z=1 convention=bl\ngen x deg=(0|0)\n")
