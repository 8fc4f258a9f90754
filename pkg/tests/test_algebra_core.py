import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra_core import (
    CDElement,
    ComplexScalar,
    basis_element,
    complex_action,
    conjugate,
    cross,
    format_element,
    imag_part,
    inner_hermitian,
    inner_real,
    is_alternative,
    join,
    multiply,
    norm,
    parse_element,
    product_rows,
    project_complex,
    real_part,
    split,
    unit_imaginary,
)
from errors import IndexOutOfRangeError, LevelError, ParseError, PreconditionError
from rng import SplitMix64, random_complex, random_perp
from strategies import complex_scalars, elements, imaginary_elements, levels, nonzero_elements, perp_elements


def e(n, k):
    return basis_element(n, k)


# ============================================================================
# Multiplication table
# ============================================================================


def test_quaternion_table():
    i, j, k = e(2, 1), e(2, 2), e(2, 3)
    assert multiply(i, j).allclose(k)
    assert multiply(j, i).allclose(-k)
    assert multiply(j, k).allclose(i)
    assert multiply(k, i).allclose(j)


def test_octonion_aliases_follow_doubling():
    i, t = parse_element("i", 3), parse_element("t", 3)
    assert multiply(i, t).allclose(parse_element("it", 3))
    assert multiply(parse_element("k", 3), t).allclose(parse_element("kt", 3))
    assert unit_imaginary(3).allclose(t)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_imaginary_basis_squares_to_minus_one(n):
    one = CDElement.one(n)
    for k in range(1, 1 << n):
        assert multiply(e(n, k), e(n, k)).allclose(-one)


def test_real_level_is_ordinary_multiplication():
    assert multiply(CDElement(0, [3.0]), CDElement(0, [-2.5])).coeffs[0] == -7.5


@given(st.data())
def test_product_rows_matches_multiply(data):
    n = data.draw(st.integers(1, 5))
    xs = [data.draw(elements(n)) for _ in range(3)]
    y = data.draw(elements(n))
    rows = product_rows(np.array([x.coeffs for x in xs]), y.coeffs)
    for x, row in zip(xs, rows):
        assert np.allclose(row, multiply(x, y).coeffs, atol=1e-9)


# ============================================================================
# Conjugation, norms, inner products
# ============================================================================


@given(st.data())
def test_conjugate_reverses_products(data):
    n = data.draw(levels)
    x, y = data.draw(elements(n)), data.draw(elements(n))
    lhs = conjugate(multiply(x, y))
    rhs = multiply(conjugate(y), conjugate(x))
    assert lhs.allclose(rhs, atol=1e-9 * (1 + norm(x) * norm(y)))


@given(st.data())
def test_norm_is_multiplicative_through_octonions(data):
    n = data.draw(st.integers(0, 3))
    x, y = data.draw(elements(n)), data.draw(elements(n))
    assert math.isclose(norm(multiply(x, y)), norm(x) * norm(y), rel_tol=1e-9, abs_tol=1e-9)


def test_sedenions_are_not_normed():
    a = join(parse_element("i", 3), parse_element("j", 3))
    b = join(parse_element("t", 3), -parse_element("kt", 3))
    assert norm(a) > 0 and norm(b) > 0
    assert norm(multiply(a, b)) == pytest.approx(0.0, abs=1e-12)


@given(st.data())
def test_inner_real_is_coordinate_dot_product(data):
    n = data.draw(levels)
    x, y = data.draw(elements(n)), data.draw(elements(n))
    assert inner_real(x, y) == pytest.approx(float(x.coeffs @ y.coeffs), abs=1e-9 * (1 + norm(x) * norm(y)))


@given(st.data())
def test_hermitian_product_extends_real_one(data):
    n = data.draw(st.integers(1, 5))
    x, y = data.draw(elements(n)), data.draw(elements(n))
    h = inner_hermitian(x, y)
    assert h.re == pytest.approx(inner_real(x, y), abs=1e-9 * (1 + norm(x) * norm(y)))
    hx = inner_hermitian(x, x)
    assert hx.im == pytest.approx(0.0, abs=1e-9 * (1 + norm(x) ** 2))
    assert hx.re == pytest.approx(norm(x) ** 2, rel=1e-9, abs=1e-9)


def test_hermitian_product_needs_level_one():
    with pytest.raises(LevelError):
        inner_hermitian(CDElement(0, [1.0]), CDElement(0, [2.0]))


@given(st.data())
def test_cross_is_imaginary_and_antisymmetric(data):
    n = data.draw(levels)
    x, y = data.draw(elements(n)), data.draw(elements(n))
    c = cross(x, y)
    assert c.coeffs[0] == pytest.approx(0.0, abs=1e-12)
    assert cross(y, x).allclose(-c, atol=1e-9 * (1 + norm(x) * norm(y)))


def test_cross_of_i_and_j():
    assert cross(e(2, 1), e(2, 2)).allclose(-e(2, 3))


@given(st.data())
def test_cross_is_orthogonal_to_imaginary_factors(data):
    n = data.draw(levels)
    x, y = data.draw(imaginary_elements(n)), data.draw(imaginary_elements(n))
    c = cross(x, y)
    scale = 1 + norm(x) * norm(y) * (norm(x) + norm(y))
    assert inner_real(c, x) == pytest.approx(0.0, abs=1e-9 * scale)
    assert inner_real(c, y) == pytest.approx(0.0, abs=1e-9 * scale)


@given(st.data())
def test_conjugate_negates_imaginary_units(data):
    n = data.draw(levels)
    x = data.draw(elements(n))
    expected = -x.coeffs.copy()
    expected[0] = x.coeffs[0]
    assert np.array_equal(conjugate(x).coeffs, expected)
    assert np.array_equal(conjugate(conjugate(x)).coeffs, x.coeffs)


@given(st.data())
def test_real_and_imaginary_parts(data):
    n = data.draw(levels)
    x = data.draw(elements(n))
    re, im = real_part(x), imag_part(x)
    assert np.array_equal((re + im).coeffs, x.coeffs)
    assert not re.coeffs[1:].any()
    assert imag_part(multiply(x, conjugate(x))).is_zero(1e-9 * (1 + norm(x) ** 2))


def test_real_and_imaginary_part_examples():
    assert real_part(parse_element("1+i", 3)).allclose(CDElement.one(3))
    assert imag_part(parse_element("t", 3)).allclose(parse_element("t", 3))


@given(st.data())
def test_x_is_orthogonal_to_x_times_imaginary(data):
    n = data.draw(levels)
    x, y = data.draw(elements(n)), data.draw(imaginary_elements(n))
    assert inner_real(x, multiply(x, y)) == pytest.approx(0.0, abs=1e-9 * (1 + norm(x) ** 2 * norm(y)))


@given(st.data())
def test_multiplication_adjoints(data):
    n = data.draw(levels)
    a, x, y = data.draw(elements(n)), data.draw(elements(n)), data.draw(elements(n))
    tol = 1e-9 * (1 + norm(a) * norm(x) * norm(y))
    a_star = conjugate(a)
    assert inner_real(multiply(a, x), y) == pytest.approx(inner_real(x, multiply(a_star, y)), abs=tol)
    assert inner_real(multiply(x, a), y) == pytest.approx(inner_real(x, multiply(y, a_star)), abs=tol)


@given(st.data())
def test_norm_ignores_order_and_conjugation(data):
    n = data.draw(levels)
    x, y = data.draw(elements(n)), data.draw(elements(n))
    # squared norms, so near-zero products compare linearly
    xy = inner_real(multiply(x, y), multiply(x, y))
    xy_star = inner_real(multiply(x, conjugate(y)), multiply(x, conjugate(y)))
    yx = inner_real(multiply(y, x), multiply(y, x))
    tol = 1e-9 * (1 + (norm(x) * norm(y)) ** 2)
    assert xy_star == pytest.approx(xy, abs=tol)
    assert yx == pytest.approx(xy, abs=tol)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_product_of_complex_multiples_of_c_orthogonal_elements(n):
    rng = SplitMix64(n)
    for _ in range(5):
        a, b = random_perp(rng, n), random_perp(rng, n)
        ia = complex_action(ComplexScalar(0.0, 1.0), a)
        b = b - (inner_real(b, a) / norm(a) ** 2) * a - (inner_real(b, ia) / norm(ia) ** 2) * ia
        h = inner_hermitian(a, b)
        assert abs(h.re) < 1e-10 * norm(a) * norm(b) and abs(h.im) < 1e-10 * norm(a) * norm(b)
        alpha, beta = random_complex(rng), random_complex(rng)
        lhs = multiply(complex_action(alpha, a), complex_action(beta, b))
        rhs = complex_action(alpha.conj() * beta.conj(), multiply(a, b))
        assert lhs.allclose(rhs, atol=1e-10 * alpha.norm() * beta.norm() * norm(a) * norm(b))


# ============================================================================
# Complex subalgebra
# ============================================================================


@given(st.data())
def test_complex_scalars_act_linearly(data):
    n = data.draw(st.integers(1, 5))
    alpha, beta = data.draw(complex_scalars), data.draw(complex_scalars)
    x = data.draw(elements(n))
    lhs = complex_action(alpha, complex_action(beta, x))
    rhs = complex_action(alpha * beta, x)
    assert lhs.allclose(rhs, atol=1e-9 * (1 + alpha.norm() * beta.norm() * norm(x)))


@given(st.data())
def test_perp_elements_are_conjugate_linear(data):
    n = data.draw(st.integers(2, 5))
    a, x = data.draw(perp_elements(n)), data.draw(elements(n))
    alpha = data.draw(complex_scalars)
    scale = 1 + alpha.norm() * norm(a) * norm(x)
    assert multiply(a, complex_action(alpha, x)).allclose(
        complex_action(alpha.conj(), multiply(a, x)), atol=1e-9 * scale
    )
    assert complex_action(alpha, a).allclose(multiply(a, alpha.conj().to_element(n)), atol=1e-9 * scale)


@given(st.data())
def test_norm_of_complex_multiple(data):
    n = data.draw(st.integers(2, 5))
    a, alpha = data.draw(perp_elements(n)), data.draw(complex_scalars)
    assert norm(complex_action(alpha, a)) == pytest.approx(alpha.norm() * norm(a), rel=1e-9, abs=1e-9)


def test_complex_scalar_arithmetic():
    alpha = ComplexScalar(1.0, 2.0)
    assert alpha * ComplexScalar(0.0, 1.0) == ComplexScalar(-2.0, 1.0)
    assert alpha.conj() == ComplexScalar(1.0, -2.0)
    assert alpha.cross(ComplexScalar(1.0, 2.0)) == 0.0
    assert ComplexScalar(1.0, 0.0).cross(ComplexScalar(0.0, 1.0)) == -1.0
    assert alpha.norm() == pytest.approx(math.sqrt(5.0))


def test_complex_scalar_element_round_trip():
    alpha = ComplexScalar(0.5, -3.0)
    x = alpha.to_element(4)
    assert x.coeffs[0] == 0.5 and x.coeffs[8] == -3.0
    assert ComplexScalar.from_element(x) == alpha
    with pytest.raises(PreconditionError):
        ComplexScalar.from_element(e(4, 1))


def test_project_complex_of_perp_element():
    d = project_complex(parse_element("i", 3))
    assert d.beta == ComplexScalar(0.0, 0.0)
    assert d.perp.allclose(parse_element("i", 3))
    assert d.theta == 0.0
    assert d.unit_beta == ComplexScalar(1.0, 0.0)


def test_project_complex_of_mixed_element():
    d = project_complex(parse_element("i+t", 3))
    assert d.theta == pytest.approx(math.pi / 4)
    assert d.scale == pytest.approx(math.sqrt(2.0))
    assert d.unit_perp.allclose(parse_element("i", 3))
    assert d.unit_beta == ComplexScalar(0.0, 1.0)


def test_project_complex_of_complex_element():
    d = project_complex(parse_element("2t", 3))
    assert d.beta == ComplexScalar(0.0, 2.0)
    assert d.perp.is_zero()
    assert d.theta == pytest.approx(math.pi / 2)
    assert d.unit_beta == ComplexScalar(0.0, 1.0)
    assert d.unit_perp.allclose(e(3, 1))


@given(st.data())
def test_project_complex_rebuilds_element(data):
    n = data.draw(st.integers(1, 5))
    x = data.draw(nonzero_elements(n))
    d = project_complex(x)
    assert (d.beta.to_element(n) + d.perp).allclose(x, atol=1e-12)
    assert 0.0 <= d.theta <= math.pi / 2
    if n >= 2:
        rebuilt = d.scale * (math.cos(d.theta) * d.unit_perp + math.sin(d.theta) * d.unit_beta.to_element(n))
        assert rebuilt.allclose(x, atol=1e-9 * (1 + norm(x)))


def test_project_complex_of_zero():
    d = project_complex(CDElement.zero(3))
    assert d.theta is None and d.unit_perp is None and d.scale == 0.0


def test_project_complex_rejects_reals():
    with pytest.raises(LevelError):
        project_complex(CDElement(0, [1.0]))


# ============================================================================
# Alternativity
# ============================================================================


@given(st.data())
def test_octonions_are_alternative(data):
    n = data.draw(st.integers(0, 3))
    assert is_alternative(data.draw(nonzero_elements(n)))


def test_sedenion_alternativity_depends_on_element():
    i, j = parse_element("i", 3), parse_element("j", 3)
    assert not is_alternative(join(i, j))
    assert is_alternative(join(i, i))


# ============================================================================
# Construction and validation
# ============================================================================


def test_split_and_join_are_inverse():
    x = CDElement(3, np.arange(8.0))
    b, c = split(x)
    assert b.level == 2 and list(c.coeffs) == [4.0, 5.0, 6.0, 7.0]
    assert np.array_equal(join(b, c).coeffs, x.coeffs)


def test_from_coeffs_infers_level():
    assert CDElement.from_coeffs([1, 2, 3, 4]).level == 2
    with pytest.raises(LevelError):
        CDElement.from_coeffs([1, 2, 3])


def test_element_validation():
    with pytest.raises(LevelError):
        CDElement(3, [1.0] * 7)
    with pytest.raises(LevelError):
        CDElement(9, np.zeros(512))
    with pytest.raises(PreconditionError):
        CDElement(1, [1.0, float("nan")])
    with pytest.raises(LevelError):
        e(3, 1) + e(4, 1)
    with pytest.raises(IndexOutOfRangeError):
        basis_element(3, 8)


def test_coefficients_are_read_only():
    x = e(2, 1)
    with pytest.raises(ValueError):
        x.coeffs[0] = 1.0


def test_json_schema():
    x = parse_element("1-2j", 2)
    assert x.as_dict() == {"level": 2, "coeffs": [1.0, 0.0, -2.0, 0.0]}
    assert CDElement.from_json(x.to_json()).allclose(x, atol=0.0)


# ============================================================================
# Expression parser
# ============================================================================


@pytest.mark.parametrize(
    "text, level, expected",
    [
        ("1+2i", 3, {0: 1.0, 1: 2.0}),
        ("(i,j)", 4, {1: 1.0, 10: 1.0}),
        ("2e3", 2, {3: 2.0}),
        ("1e-05", 1, {0: 1e-05}),
        ("2.5*e7 − t", 3, {7: 2.5, 4: -1.0}),
        ("i3", 3, {4: 1.0}),
        ("-(1, i)", 2, {0: -1.0, 3: -1.0}),
        ("((0,t),(t+it,1+i+j))", 5, {12: 1.0, 20: 1.0, 21: 1.0, 24: 1.0, 25: 1.0, 26: 1.0}),
        ("0", 3, {}),
    ],
)
def test_parse_element(text, level, expected):
    x = parse_element(text, level)
    coeffs = np.zeros(1 << level)
    for k, v in expected.items():
        coeffs[k] = v
    assert np.array_equal(x.coeffs, coeffs)


@pytest.mark.parametrize(
    "text, level, position",
    [
        ("i+", 3, 2),
        ("q", 3, 0),
        ("1 + t", 2, 4),
        ("(1,2", 1, 4),
        ("2*", 2, 2),
        ("i $ j", 3, 2),
    ],
)
def test_parse_errors_report_position(text, level, position):
    with pytest.raises(ParseError) as info:
        parse_element(text, level)
    assert info.value.position == position


@given(st.data())
def test_format_then_parse_reproduces_coefficients(data):
    n = data.draw(levels)
    x = data.draw(elements(n))
    assert np.array_equal(parse_element(format_element(x), n).coeffs, x.coeffs)
