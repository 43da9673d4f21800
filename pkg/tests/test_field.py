import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from suzuki_chars.field import (
    FieldContext,
    FieldElement,
    FieldError,
    FpSubspace,
    ThetaPower,
    default_modulus,
    f_map,
    field_create,
    find_special,
    frobenius_power,
    gcd_pl1,
    is_square,
    q_form,
    solve_norm,
    trace,
)

FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)]


def ctx_of(p, m):
    return FieldContext(p, m)


field_and_elems = st.sampled_from(FIELDS).flatmap(
    lambda pm: st.tuples(st.just(pm), *(st.integers(0, pm[0] ** pm[1] - 1) for _ in range(3)))
)


# -- examples ----------------------------------------------------------------------


def test_default_moduli():
    assert default_modulus(2, 3) == (1, 0, 1, 1)  # x^3 + x + 1
    assert default_modulus(3, 2) == (1, 1, 2)  # x^2 + x + 2
    F = field_create(5, 1)
    assert F.gamma == 2


def test_frobenius_examples():
    F = field_create(2, 3)
    a = F.element(2)  # the modulus root
    assert frobenius_power(a, 1) == a * a
    for x in range(8):
        assert F.frob(x, 3) == x
    G = field_create(3, 2)
    b = G.element(3)
    assert frobenius_power(b, 1) == 2 * b + 2
    assert b**3 == 2 * b + 2


def test_trace_and_f_map_examples():
    F = field_create(2, 3)
    a = F.element(2)
    assert trace(a, 0 + 1).index == 0
    th = ThetaPower(1, 3)
    assert f_map(F.element(1), a, th) == a * a + a


def test_is_square_examples():
    F = field_create(3, 2)
    assert not is_square(F.element(2), 1)  # 2 is a non-square in F_3
    assert is_square(F.element(2), 2)  # but a square in F_9
    assert is_square(F.element(1), 1)
    with pytest.raises(FieldError):
        is_square(F.element(3), 1)
    with pytest.raises(FieldError):
        is_square(field_create(2, 2).element(1), 1)


def test_solve_norm_examples():
    F = field_create(2, 3)
    assert solve_norm(ThetaPower(1, 3), F.element(1)).index == 1
    with pytest.raises(FieldError):
        solve_norm(ThetaPower(1, 3), F.element(0))
    G = field_create(3, 2)
    assert solve_norm(ThetaPower(1, 2), G.element(2)) == G.element(3)


def test_special_elements():
    assert find_special(field_create(2, 3), "b0").index == 1
    F4 = field_create(2, 2)
    j = find_special(F4, "j", n=1)
    assert j.index == 2 and j + j * j == 1
    assert find_special(field_create(3, 1), "x0", n=1).index == 2
    with pytest.raises(FieldError):
        find_special(F4, "nope")


def test_q_form_examples():
    F = field_create(2, 3)
    a = F.element(2)
    assert q_form(a, 3) == 1
    assert q_form(a + a * a, 3) == 1


def test_gcd_examples():
    assert gcd_pl1(2, 1, 3) == 1
    assert gcd_pl1(3, 1, 3) == 2
    assert gcd_pl1(3, 1, 2) == 4


def test_image_of_f_map_is_hyperplane():
    F = field_create(2, 3)
    th = ThetaPower(1, 3)
    img = sorted({int(F.sub(F.mul(1, th(F, x)), F.mul(x, th(F, 1)))) for x in range(8)})
    assert img == [0, 2, 4, 6]


def test_bad_parameters():
    with pytest.raises(FieldError):
        FieldContext(4, 2)
    with pytest.raises(FieldError):
        FieldContext(2, 2, (1, 0, 1))  # x^2 + 1 is reducible
    with pytest.raises(FieldError):
        FieldContext(2, 4, (1, 1, 1, 1, 1))  # irreducible but not primitive
    with pytest.raises(FieldError):
        FieldContext(2, 3, (1, 1, 1))  # wrong degree


def test_user_modulus_is_respected():
    F = FieldContext(2, 3, (1, 1, 0, 1))
    a = F.element(2)
    assert a**3 == a * a + 1


# -- properties -----------------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(field_and_elems)
def test_field_axioms(data):
    (p, m), x, y, z = data
    F = ctx_of(p, m)
    assert F.add(x, F.add(y, z)) == F.add(F.add(x, y), z)
    assert F.mul(x, F.mul(y, z)) == F.mul(F.mul(x, y), z)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(x, F.neg(x)) == 0
    if x:
        assert F.mul(x, F.inv(x)) == 1
        assert F.gamma_power(F.log(x)) == x


@settings(max_examples=300, deadline=None)
@given(field_and_elems, st.integers(0, 12))
def test_frobenius_is_additive_and_multiplicative(data, j):
    (p, m), x, y, _ = data
    F = ctx_of(p, m)
    assert F.frob(F.add(x, y), j) == F.add(F.frob(x, j), F.frob(y, j))
    assert F.frob(F.mul(x, y), j) == F.mul(F.frob(x, j), F.frob(y, j))
    assert F.frob(x, j) == F.pow(x, p ** (j % m))


@settings(max_examples=200, deadline=None)
@given(field_and_elems)
def test_trace_linear_and_lands_in_subfield(data):
    (p, m), x, y, s = data
    F = ctx_of(p, m)
    for d in (d for d in range(1, m + 1) if m % d == 0):
        t = F.trace_to(x, d)
        assert F.in_subfield(t, d)
        assert F.trace_to(F.add(x, y), d) == F.add(t, F.trace_to(y, d))
        c = F.subfield(d)[s % p**d]
        assert F.trace_to(F.mul(c, x), d) == F.mul(c, t)


@pytest.mark.parametrize("p,m", FIELDS)
def test_trace_surjective(p, m):
    F = ctx_of(p, m)
    for d in (d for d in range(1, m + 1) if m % d == 0):
        img = set(F.trace_to(F.elements(), d).tolist())
        assert img == set(F.subfield(d).tolist())


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FIELDS), st.lists(st.integers(0, 10**6), max_size=5), st.integers(0, 10**6))
def test_subspace_reduce_is_least_coset_rep(pm, gens, x):
    p, m = pm
    F = ctx_of(p, m)
    gens = [g % F.q for g in gens]
    W = FpSubspace(F, gens)
    x %= F.q
    elems = set(W.elements())
    assert len(elems) == p**W.dim
    coset = {F.add(x, w) for w in elems}
    assert W.reduce(x) == min(coset)


def test_field_element_wrapper():
    F = field_create(3, 2)
    x, y = F.element(4), F.element(7)
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x.inverse() * x == 1
    assert repr(F.element(0)) == "0"
    assert isinstance(FieldElement(F, 5).coeffs, tuple)
