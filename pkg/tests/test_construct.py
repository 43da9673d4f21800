import hashlib
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from suzuki_chars.construct import character_table, parameter_sets, route
from suzuki_chars.groups import make_group
from suzuki_chars.profiles import expected_profile
from suzuki_chars.serialize import to_json

SMALL = [
    ("A", 2, 3, 1, None), ("A", 3, 2, 1, None), ("A", 2, 4, 2, None), ("A", 2, 4, 1, None),
    ("B", 2, 2, 1, 1), ("B", 2, 3, 1, 0), ("B", 2, 3, 3, 1), ("B", 3, 2, 1, 0),
    ("C", 2, 2, 1, 0), ("C", 2, 3, 1, 0), ("C", 2, 2, 1, 3), ("C", 3, 2, 1, 2),
    ("D", 2, 3, 1, 0), ("D", 2, 2, 1, 1), ("D", 3, 2, 1, 0), ("D", 2, 3, 1, 1),
]

# sha256 of the canonical JSON, frozen after every check in verify passed
FROZEN = {
    ("A", 2, 3, 1, None): "5839faba5ba237f9fe0fba18b1369800b4df278572c645908741aa8cad01f0f0",
    ("A", 2, 4, 2, None): "26f361d8961ed9cfc5a457201e1de817ca4562a0563707d7a6beb7b8bb9a7fe8",
    ("C", 3, 2, 1, 0): "a857c470f71d031b8100409ab23a577b43f7e7ba4af4bfd6dd0838fd934d8784",
    ("C", 2, 3, 1, 0): "46c139b43dadcf3f9a9187f7285be2fb478d0d12f2ba78919d501278edf2769b",
    ("B", 2, 3, 3, 1): "6bfb94f9d9dfbb3caeb1ff9239d9ab953b7d65383efe269c9a3088aceb4a03f0",
    ("D", 2, 4, 1, 0): "b6a31ef85af01840f243d66a0c6b11d36405ec6f30baff59b45308ae779ffe5d",
}

ids = lambda k: "_".join(map(str, k))  # noqa: E731


def profile(key, get_table):
    return dict(Counter(get_table(*key).degrees.tolist()))


def complex_values(T):
    N = T.N
    z = np.exp(2j * np.pi / N)
    X = np.asarray(T.values, dtype=np.float64)
    return sum(X[..., j] * z**j for j in range(X.shape[-1]))


def test_parameter_set_sizes():
    S = parameter_sets(make_group("A", 2, 4, 1))
    assert (len(S.J2), len(S.J1)) == (5, 10)
    S = parameter_sets(make_group("A", 2, 3, 1))
    assert S.J1 == [] and len(S.J2) == 7
    S = parameter_sets(make_group("D", 2, 4, 1, 0))
    assert S.intersections() == (1, 4, 2, 8)


@pytest.mark.parametrize("key,want", [
    (("A", 3, 2, 1, None), {1: 27, 3: 6}),
    (("C", 2, 2, 1, 0), {1: 32, 2: 8}),
    (("A", 2, 3, 1, None), {1: 8, 2: 14}),
    (("A", 2, 4, 1, None), {1: 16, 4: 10, 2: 20}),
    (("D", 2, 4, 1, 0), {1: 256, 16: 8, 8: 16, 4: 32, 2: 64}),
    (("B", 2, 3, 1, 0), {1: 64, 4: 28}),
    (("C", 2, 3, 1, 0), {1: 64, 2: 112}),
    (("B", 2, 4, 1, 0), {1: 256, 16: 10, 4: 80}),
], ids=lambda x: ids(x) if isinstance(x, tuple) else "")
def test_profiles(key, want, get_table):
    assert profile(key, get_table) == want


def test_expected_profile_examples():
    assert expected_profile(make_group("A", 2, 3, 1)) == [(1, 8), (2, 14)]
    assert expected_profile(make_group("D", 2, 6, 1, 0)) == [(1, 4096), (32, 168), (16, 336)]


def test_b_2_2_1_1_true_profile(get_table):
    # the closed case table predicts {1: 16, 4: 3}; the orbit oracle gives 25 classes
    assert profile(("B", 2, 2, 1, 1), get_table) == {1: 16, 2: 8, 4: 1}
    assert route(make_group("B", 2, 2, 1, 1)) == "hyperplane"


def test_routes():
    assert route(make_group("A", 2, 4, 2)) == "vz"
    assert route(make_group("A", 2, 3, 1)) == "hyperplane"
    assert route(make_group("C", 2, 3, 1, 0)) == "kernel"
    assert route(make_group("C", 2, 3, 1, 1)) in ("vz", "hyperplane")


@pytest.mark.parametrize("key", SMALL, ids=ids)
def test_basic_shape(key, get_table):
    T = get_table(*key)
    G = T.group
    assert T.num_chars == T.num_classes == G.num_classes
    assert np.array_equal(T.values[:, 0, 0], T.degrees)
    assert not T.values[:, 0, 1:].any()  # identity column is rational
    assert int(np.sum(T.degrees.astype(np.int64) ** 2)) == G.order
    assert T.degrees[0] == 1 and not T.values[0, :, 1:].any() and (T.values[0, :, 0] == 1).all()
    # no duplicate rows
    assert len({row.tobytes() for row in np.ascontiguousarray(T.values)}) == T.num_chars


@pytest.mark.parametrize("key", SMALL, ids=ids)
def test_values_bounded_by_degree(key, get_table):
    T = get_table(*key)
    V = complex_values(T)
    assert np.all(np.abs(V) <= T.degrees[:, None] + 1e-9)


@pytest.mark.parametrize("key", SMALL, ids=ids)
def test_linear_characters_are_homomorphisms(key, get_table):
    T = get_table(*key)
    G = T.group
    V = complex_values(T)
    lin = np.flatnonzero(T.degrees == 1)
    els = G.elements()
    rng = np.random.default_rng(0)
    idx = G.class_index(els)
    for _ in range(5):
        h = tuple(np.full_like(els[0], x) for x in G.decode(int(rng.integers(G.order))))
        gh = G.class_index(G.mul(els, h))
        ih = G.class_index(tuple(int(x[0]) for x in h))
        assert np.allclose(V[lin][:, gh], V[lin][:, idx] * V[lin][:, [ih]])


@pytest.mark.parametrize("key", SMALL, ids=ids)
def test_lifts_are_constant_on_central_cosets(key, get_table):
    """Multiplying by a central element z scales chi by chi(z)/chi(1)."""
    T = get_table(*key)
    G = T.group
    V = complex_values(T)
    els = G.elements()
    idx = G.class_index(els)
    zero = np.zeros_like(els[0])
    for c in range(1, G.q):
        z = tuple(zero for _ in range(G.ncoords - 1)) + (np.full_like(zero, c),)
        zi = G.class_index(tuple(int(x[0]) for x in z))
        scale = V[:, zi] / T.degrees
        assert np.allclose(V[:, G.class_index(G.mul(els, z))], V[:, idx] * scale[:, None])


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10**9), st.integers(0, 10**9))
def test_class_function(key, gi, hi):
    from suzuki_chars.acceptance import table
    T = table(key)
    G = T.group
    g, h = G.decode(gi % G.order), G.decode(hi % G.order)
    conj = G.mul(G.mul(G.inv(h), g), h)
    assert G.class_index(conj) == G.class_index(g)
    rep = tuple(int(x) for x in T.class_reps[G.class_index(g)])
    assert G.class_index(rep) == G.class_index(g)


@pytest.mark.parametrize("key", sorted(FROZEN, key=str), ids=ids)
def test_frozen_tables(key, get_table):
    text = to_json(get_table(*key))
    assert hashlib.sha256(text.encode()).hexdigest() == FROZEN[key]


def test_character_accessor(get_table):
    T = get_table("A", 2, 3, 1)
    ch = T.character(T.num_chars - 1)
    assert ch.degree == 2 and len(ch.values) == T.num_classes
    assert ch.provenance["kind"] == "lifted"
    assert T.value(0, 0) == 1
    assert T.profile() == [(1, 8), (2, 14)]
