from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from susyva.coeff import (I, Q, GrassmannLambdaValue, LambdaPoly, chi_normalize,
                          conj, integrate_gamma, mono_mul, param, render_scalar,
                          scalar_from_string, substitute_minus_nabla, to_scalar)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)


def test_imaginary_unit():
    assert I * I == -1
    assert (1 + I) * (1 - I) == 2
    assert conj(2 + 3 * I) == 2 - 3 * I
    assert 1 / I == -I


def test_rational_functions_are_canonical():
    k = param("k")
    assert (k ** 2 - 1) / (k - 1) == k + 1
    assert (k - 2) / k + 2 / k == 1
    assert render_scalar(3 * (k - 2) / k + Q(3, 2)) == "(9/2*k - 6)/k"


def test_division_by_zero_raises():
    k = param("k")
    with pytest.raises(ZeroDivisionError):
        k / (k - k)


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    x, y, z = (to_scalar(v) + to_scalar(w) * I for v, w in ((a, b), (b, c), (c, a)))
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    if x:
        assert x * (1 / x) == 1


@given(st.integers(-5, 5), st.integers(1, 5), st.integers(-5, 5))
def test_render_round_trip(a, b, c):
    k = param("k")
    x = (a * k + c) / (b * k + 1) + Q(a, b) * I
    assert scalar_from_string(render_scalar(x)) == x


def test_to_scalar_rejects_bool():
    with pytest.raises(TypeError):
        to_scalar(True)
    assert to_scalar(Fraction(1, 2)) == Q(1, 2)


# -- Grassmann monomials ------------------------------------------------------

def test_chi_squares_to_minus_lambda():
    assert mono_mul((1,), (1,)) == (-1, (), 1, 0)
    assert mono_mul((11,), (11,)) == (-1, (), 0, 1)


def test_distinct_variables_anticommute():
    assert mono_mul((2,), (1,)) == (-1, (1, 2), 0, 0)
    assert mono_mul((1,), (2,)) == (1, (1, 2), 0, 0)


variables = st.lists(st.sampled_from([1, 2, 3, 11, 12]), max_size=6)


@given(variables, variables, variables)
def test_monomial_product_is_associative(a, b, c):
    def norm(w):
        s, m, la, ga = mono_mul((), tuple(w))
        return s, m, la, ga

    def mul(x, y):
        s1, m1, l1, g1 = x
        s2, m2, l2, g2 = y
        s, m, la, ga = mono_mul(m1, m2)
        return s1 * s2 * s, m, l1 + l2 + la, g1 + g2 + ga

    A, B, C = norm(a), norm(b), norm(c)
    assert mul(mul(A, B), C) == mul(A, mul(B, C)) == norm(a + b + c)


def test_chi_normalize():
    assert chi_normalize([2, 1]) == GrassmannLambdaValue({((1, 2), 0, 0): -1})
    assert chi_normalize([1, 2, 1]) == GrassmannLambdaValue({((2,), 1, 0): 1})
    with pytest.raises(ValueError):
        chi_normalize([4])


# -- λ-polynomials --------------------------------------------------------------

@given(st.dictionaries(st.integers(0, 5), rationals, max_size=4))
def test_minus_nabla_is_an_involution_on_scalars(terms):
    p = LambdaPoly({n: to_scalar(c) for n, c in terms.items()})
    assert substitute_minus_nabla(substitute_minus_nabla(p)) == p


def test_minus_nabla_on_scalars_flips_odd_powers():
    p = LambdaPoly({0: 1, 1: 2, 3: 5})
    assert substitute_minus_nabla(p) == LambdaPoly({0: 1, 1: -2, 3: -5})


def test_integrate_gamma():
    g = LambdaPoly({0: 1, 2: 3})
    assert integrate_gamma(g) == LambdaPoly({1: 1, 3: 1})
    with pytest.raises(ValueError):
        integrate_gamma(g, "0..d")


def test_chi_normalize_two_pairs():
    # χ¹χ²χ¹χ² = −χ¹χ¹χ²χ² = −(−λ)(−λ)
    assert chi_normalize([1, 2, 1, 2]) == GrassmannLambdaValue({((), 2, 0): -1})


@given(st.dictionaries(st.integers(0, 5), rationals, min_size=1, max_size=4))
def test_integrate_gamma_is_an_antiderivative(terms):
    g = LambdaPoly({n: to_scalar(c) for n, c in terms.items()})
    G = integrate_gamma(g)
    assert LambdaPoly({n - 1: n * c for n, c in G.terms.items() if n}) == g


def test_several_parameters():
    a, b, c = param("a"), param("b"), param("c")
    x = (a * b - c) / (a + I * c)
    assert x * (a + I * c) == a * b - c
    assert scalar_from_string(render_scalar(x)) == x
