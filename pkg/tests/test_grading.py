import pytest
from hypothesis import given
from hypothesis import strategies as st

from multigraded.grading import (
    BL,
    DELIGNE,
    MultiDegree,
    SignatureMismatch,
    SignConvention,
    SlotSignature,
    gh,
    is_odd,
    koszul_exponent,
    koszul_sign,
    par,
)


def oracle_sign(a, b, convention):
    """Sign from the defining formulas, written out directly."""
    if convention is BL:
        e = (sum(a.z2) + sum(a.z)) * (sum(b.z2) + sum(b.z))
    else:
        e = sum(x * y for x, y in zip(a.z2 + a.z, b.z2 + b.z))
    return (-1) ** (e % 2)


@st.composite
def degree_pairs(draw, count=2):
    k = draw(st.integers(0, 2))
    l = draw(st.integers(0, 2))
    bits = st.integers(0, 1)
    ints = st.integers(-2, 2)
    return [
        MultiDegree(tuple(draw(bits) for _ in range(k)), tuple(draw(ints) for _ in range(l)))
        for _ in range(count)
    ]


conventions = st.sampled_from([BL, DELIGNE])


@given(degree_pairs(), conventions)
def test_sign_matches_formula(ab, conv):
    a, b = ab
    assert koszul_sign(a, b, conv) == oracle_sign(a, b, conv)


@given(degree_pairs(3), conventions)
def test_sign_is_bilinear_in_exponent(abc, conv):
    a, b, c = abc
    assert koszul_exponent(a + b, c, conv) == (koszul_exponent(a, c, conv) + koszul_exponent(b, c, conv)) % 2
    assert koszul_exponent(a, b + c, conv) == (koszul_exponent(a, b, conv) + koszul_exponent(a, c, conv)) % 2


@given(degree_pairs(), conventions)
def test_sign_is_symmetric(ab, conv):
    a, b = ab
    assert koszul_sign(a, b, conv) == koszul_sign(b, a, conv)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(1, 3))
def test_conventions_agree_on_single_slot(vals, width):
    # pure Z
    a, b = MultiDegree((), (vals[0],) + (0,) * (width - 1)), MultiDegree((), (vals[1],) + (0,) * (width - 1))
    assert koszul_sign(a, b, BL) == koszul_sign(a, b, DELIGNE)
    # pure Z2
    a, b = MultiDegree((vals[0] % 2,), ()), MultiDegree((vals[1] % 2,), ())
    assert koszul_sign(a, b, BL) == koszul_sign(a, b, DELIGNE)


def test_conventions_differ_on_mixed_degrees():
    # odd in a Z2 slot against degree one in a Z slot
    a = MultiDegree((1,), (0,))
    b = MultiDegree((0,), (1,))
    assert koszul_sign(a, b, BL) == -1
    assert koszul_sign(a, b, DELIGNE) == 1


def test_oddness_under_both_conventions():
    # (1|1) has total parity 0 but is odd slot-wise
    d = MultiDegree((1,), (1,))
    assert not is_odd(d, BL)
    assert not is_odd(d, DELIGNE)
    assert is_odd(MultiDegree((1,), (0,)), DELIGNE)
    assert is_odd(MultiDegree((0,), (1,)), BL)
    d2 = MultiDegree((1, 1), ())
    assert not is_odd(d2, BL)
    assert not is_odd(d2, DELIGNE)


@given(degree_pairs(1), conventions)
def test_odd_iff_self_sign_negative(a, conv):
    (a,) = a
    assert is_odd(a, conv) == (oracle_sign(a, a, conv) == -1)


def test_par_and_gh():
    d = MultiDegree((1, 0), (2, -1))
    assert par(d) == 0
    assert gh(d) == 1
    assert par(MultiDegree((1,), (2,))) == 1


def test_degree_arithmetic():
    a = MultiDegree((1,), (2, -1))
    b = MultiDegree((1,), (0, 3))
    assert a + b == MultiDegree((0,), (2, 2))
    assert a - a == MultiDegree((0,), (0, 0))
    assert a.scale(2) == MultiDegree((0,), (4, -2))
    with pytest.raises(SignatureMismatch):
        a + MultiDegree((1,), (1,))


@given(degree_pairs(1))
def test_degree_text_round_trip(a):
    (a,) = a
    assert MultiDegree.parse(str(a)) == a


def test_degree_parse_rejects_garbage():
    for bad in ["0|1", "(0,1)", "(a|1)"]:
        with pytest.raises(ValueError):
            MultiDegree.parse(bad)


def test_signature_names_and_units():
    sig = SlotSignature(1, 2, ("p", "gh", "form"))
    assert sig.z2_names == ("p",)
    assert sig.z_names == ("gh", "form")
    assert sig.unit("form") == MultiDegree((0,), (0, 1))
    assert sig.slot_kind("p") == "z2"
    bigger = sig.add_slot("z2", "th")
    assert bigger.slot_names == ("p", "th", "gh", "form")
    d = MultiDegree((1,), (2, 3))
    assert d.pad(sig, bigger) == MultiDegree((1, 0), (2, 3))
    with pytest.raises(ValueError):
        sig.add_slot("z", "gh")
    with pytest.raises(KeyError):
        sig.unit("nope")


def test_default_slot_names():
    assert SlotSignature(2, 1).slot_names == ("p1", "p2", "gh1")


def test_convention_parse():
    assert SignConvention.parse(" BL ") is BL
    assert SignConvention.parse("deligne") is DELIGNE
    with pytest.raises(ValueError):
        SignConvention.parse("koszul")
