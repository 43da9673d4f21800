import dataclasses
import json

import numpy as np
import pytest

from suzuki_chars.construct import CharacterTable
from suzuki_chars.groups import make_group
from suzuki_chars.verify import (
    ALL_CHECKS,
    FULL_PAIR_LIMIT,
    brute_force_classes,
    central_character_check,
    class_structure,
    closed_form_crosscheck,
    first_orthogonality,
    orbit_classes,
    parameter_set_counts,
    parameter_set_counts_closed,
    profile_check,
    run_checks,
    second_orthogonality,
)


def tampered(T, i, j, delta=1):
    X = np.array(T.values, copy=True)
    X[i, j, 0] += delta
    return dataclasses.replace(T, values=X)


def test_a_2_3_1_passes_everything(get_table):
    T = get_table("A", 2, 3, 1)
    reps = run_checks(T)
    assert [r.check for r in reps] == list(ALL_CHECKS)
    assert all(r.passed for r in reps), [r.line() for r in reps]
    assert reps[0].mode == "full" and reps[0].detail["pairs"] == 22 * 22
    assert json.dumps(reps[0].to_dict())


def test_inner_products_by_hand(get_table):
    T = get_table("A", 2, 3, 1)
    X = T.values[..., 0].astype(np.int64) + 1j * T.values[..., 1]
    w = T.class_sizes
    gram = (X * w) @ X.conj().T
    assert np.allclose(gram, 64 * np.eye(22))
    assert int(np.sum(T.degrees**2)) == 64
    # at a central class, sum |chi|^2 = |C_G(z)| = |G|
    assert np.isclose(np.sum(np.abs(X[:, 0]) ** 2), 64)


def test_nonlinear_count_b_2_4_1_0(get_table):
    T = get_table("B", 2, 4, 1, 0)
    assert int((T.degrees > 1).sum()) == 90
    assert profile_check(T).passed


def test_orbit_counts():
    assert orbit_classes(make_group("A", 2, 3, 1)).max() + 1 == 22
    assert orbit_classes(make_group("B", 2, 3, 1, 0)).max() + 1 == 92


def test_class_structure_constants():
    G = make_group("A", 2, 3, 1)
    A = class_structure(G)
    sizes = G.class_sizes
    for i in range(G.num_classes):
        # sum_k a_ijk |C_k| = |C_i||C_j|
        tot = A[i].toarray() @ sizes
        assert np.array_equal(tot, sizes[i] * sizes)
    # identity row
    assert np.array_equal(A[0].toarray(), np.eye(G.num_classes, dtype=np.int64))


@pytest.mark.parametrize("i,j", [(0, 0), (9, 5), (21, 13), (3, 21)])
def test_fault_injection_locates_entry(get_table, i, j):
    T = tampered(get_table("A", 2, 3, 1), i, j)
    r1, r2 = first_orthogonality(T), second_orthogonality(T)
    assert not r1.passed and not r2.passed
    assert r1.counterexample["suspect"] == i
    assert r2.counterexample["suspect"] == j
    assert set(r1.counterexample) >= {"char_i", "char_j", "got", "expected", "residual"}
    assert not central_character_check(T).passed


def test_fault_injection_swapped_classes(get_table):
    T = get_table("C", 3, 2, 1, 0)
    X = np.array(T.values, copy=True)
    j = int(np.flatnonzero(T.class_sizes > 1)[0])
    k = int(np.flatnonzero((X[:, j] != X[:, 0]).any(axis=1))[0])
    col = X[k, j].copy()
    X[k, j] = X[k, 0]
    X[k, 0] = col
    bad = dataclasses.replace(T, values=X)
    assert not first_orthogonality(bad).passed
    assert not central_character_check(bad).passed


def test_fault_injection_profile(get_table):
    T = get_table("A", 2, 3, 1)
    X = np.array(T.values, copy=True)
    X[-1] = X[-2]
    bad = dataclasses.replace(T, values=X)
    assert not first_orthogonality(bad).passed
    r = profile_check(dataclasses.replace(T, values=X[:-1]))
    assert not r.passed and r.counterexample["problems"]


def test_report_line(get_table):
    T = tampered(get_table("A", 2, 3, 1), 1, 1)
    line = first_orthogonality(T).line()
    assert line.startswith("orth1: FAIL (full) counterexample=")


def test_sampled_mode_on_large_table(get_table):
    T = get_table("D", 2, 6, 1, 0)
    assert T.num_classes > FULL_PAIR_LIMIT
    r = first_orthogonality(T, threads=2)
    assert r.passed and r.mode == "sampled"
    r = second_orthogonality(T, threads=2)
    assert r.passed and r.mode == "sampled"
    assert central_character_check(T).status == "not-run"
    assert brute_force_classes(T.group).status == "not-run"


def test_sampled_mode_catches_bad_identity_column(get_table):
    T = tampered(get_table("D", 2, 6, 1, 0), 4000, 0, delta=2)
    r = first_orthogonality(T)
    assert not r.passed and r.mode == "sampled"
    assert 4000 in (r.counterexample["char_i"], r.counterexample["char_j"])


@pytest.mark.parametrize("key", [("A", 2, 4, 1), ("A", 2, 6, 1), ("A", 3, 4, 1), ("D", 2, 4, 1, 0),
                                 ("D", 3, 4, 1, 0), ("B", 2, 8, 1, 0)],
                         ids=lambda k: "_".join(map(str, k)))
def test_parameter_set_counts(key):
    G = make_group(*key)
    got = parameter_set_counts(G)
    for k, v in parameter_set_counts_closed(G).items():
        assert got[k] == v, k


def test_closed_form_vz_part_flags_misclassified_group(get_table):
    T = get_table("B", 2, 2, 1, 1)
    r = closed_form_crosscheck(T.group, T)
    assert not r.passed and r.counterexample["part"] == "vz"
    # the table itself is a correct character table
    for c in ("orth1", "orth2", "central", "classes"):
        assert run_checks(T, [c])[0].passed


def test_unknown_check(get_table):
    with pytest.raises(ValueError):
        run_checks(get_table("A", 2, 3, 1), ["bogus"])


def test_large_amplitudes_are_exact():
    G = make_group("A", 2, 3, 1)
    from suzuki_chars.construct import character_table
    T = character_table(G)
    big = dataclasses.replace(T, values=T.values.astype(np.int64) * (1 << 26))
    r = first_orthogonality(big)
    assert not r.passed  # gram scales by 2^52, far from |G|
    assert r.counterexample["got"][0] == 64 << 52
    assert isinstance(big, CharacterTable)
