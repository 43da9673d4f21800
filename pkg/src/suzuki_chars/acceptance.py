"""The acceptance corpus and one check function per acceptance criterion.

Shared by ``suzuki-chars selftest`` and ``tests/test_acceptance.py``.  Each
criterion returns a :class:`CriterionResult`; ``line()`` is the one-line
PASS/FAIL summary.
"""

from __future__ import annotations

import os
import tempfile
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .construct import CharacterTable, character_table, kernel_classes, parameter_sets, route
from .field import FieldContext, gcd_pl1, q_form_idx
from .groups import SuzukiGroup, make_group
from .profiles import expected_profile, profile_multiset
from .quotients import HyperplaneQuotient, KernelQuotient, coset_reps_mod_prime_field, expected_center_size
from .verify import (
    brute_force_classes,
    central_character_check,
    dual_crosschecks,
    first_orthogonality,
    parameter_set_counts,
    parameter_set_counts_closed,
    second_orthogonality,
)

CORPUS = (
    ("A", 2, 2, 1, None), ("A", 2, 3, 1, None), ("A", 2, 4, 1, None), ("A", 3, 2, 1, None),
    ("A", 3, 3, 1, None), ("B", 2, 2, 1, 1), ("B", 2, 3, 1, 0), ("B", 2, 4, 1, 0),
    ("C", 2, 2, 1, 0), ("C", 2, 3, 1, 0), ("C", 2, 4, 1, 0), ("C", 3, 2, 1, 0),
    ("D", 2, 3, 1, 0), ("D", 2, 4, 1, 0), ("D", 2, 6, 1, 0),
)

CLASS_NUMBER_SPOTS = {
    ("A", 2, 3, 1, None): 22,
    ("B", 2, 3, 1, 0): 92,
    ("B", 2, 4, 1, 0): 346,
    ("D", 2, 4, 1, 0): 376,
    ("D", 2, 6, 1, 0): 4474,
}

PROFILE_SPOTS = {
    ("A", 2, 4, 1, None): {1: 16, 4: 10, 2: 20},
    ("D", 2, 4, 1, 0): {1: 256, 16: 8, 8: 16, 4: 32, 2: 64},
    ("C", 3, 2, 1, 0): {1: 243, 3: 54},
}

QUAD_SPOT = (("D", 2, 4, 1, 0), (1, 4, 2, 8))

DUAL_INSTANCES = (
    ("A", 2, 2, 1, None), ("A", 2, 3, 1, None), ("A", 2, 4, 1, None), ("A", 3, 3, 1, None),
    ("C", 2, 2, 1, 0), ("C", 3, 2, 1, 0),
)

DETERMINISM_INSTANCES = (("A", 2, 3, 1, None), ("C", 3, 2, 1, 0), ("D", 2, 4, 1, 0))


@lru_cache(maxsize=None)
def group(key) -> SuzukiGroup:
    return make_group(*key)


@lru_cache(maxsize=None)
def table(key) -> CharacterTable:
    return character_table(group(key))


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def line(self) -> str:
        head = f"criterion {self.number} ({self.title}): {'PASS' if self.passed else 'FAIL'}"
        if self.failures:
            head += " | " + "; ".join(self.failures)
        return head


def _result(number, title, failures, notes=(), t0=None):
    return CriterionResult(number, title, not failures, list(failures), list(notes),
                           0.0 if t0 is None else time.perf_counter() - t0)


def _name(key) -> str:
    return group(key).describe()


def criterion_1() -> CriterionResult:
    t0 = time.perf_counter()
    fails, notes = [], []
    for key in CORPUS:
        G = group(key)
        k, closed = G.num_classes, G.class_number()
        if k != closed:
            fails.append(f"{G.describe()}: {k} structural classes, closed form {closed}")
        if G.order <= 4096:
            rep = brute_force_classes(G)
            if not rep.passed:
                fails.append(f"{G.describe()}: orbit oracle {rep.status} {rep.counterexample}")
        notes.append(f"{G.describe()}: k(G) = {k}")
    for key, want in CLASS_NUMBER_SPOTS.items():
        k = group(key).num_classes
        if k != want:
            fails.append(f"{_name(key)}: expected {want}, got {k}")
    return _result(1, "class numbers", fails, notes, t0)


def criterion_2() -> CriterionResult:
    t0 = time.perf_counter()
    fails, notes = [], []
    for key in CORPUS:
        G, T = group(key), table(key)
        got = profile_multiset((int(d), 1) for d in T.degrees)
        want = profile_multiset(expected_profile(G))
        if got != want:
            fails.append(f"{G.describe()}: profile {sorted(got.items())} != {sorted(want.items())}")
        if sum(c * d * d for d, c in got.items()) != G.order:
            fails.append(f"{G.describe()}: squared degrees do not sum to |G|")
        notes.append(f"{G.describe()}: {sorted(got.items())}")
    for key, want in PROFILE_SPOTS.items():
        got = profile_multiset((int(d), 1) for d in table(key).degrees)
        if got != want:
            fails.append(f"{_name(key)}: spot profile {sorted(got.items())} != {sorted(want.items())}")
    return _result(2, "degree profiles", fails, notes, t0)


def criterion_3(threads: int | None = None) -> CriterionResult:
    t0 = time.perf_counter()
    fails, notes = [], []
    for key in CORPUS:
        T = table(key)
        for rep in (first_orthogonality(T, threads), second_orthogonality(T, threads)):
            want_mode = "sampled" if T.num_classes > 4096 else "full"
            if not rep.passed:
                fails.append(f"{_name(key)} {rep.check}: {rep.counterexample}")
            elif rep.mode != want_mode:
                fails.append(f"{_name(key)} {rep.check}: ran in {rep.mode} mode, expected {want_mode}")
            notes.append(f"{_name(key)} {rep.check} {rep.mode} {rep.elapsed:.2f}s")
    return _result(3, "orthogonality", fails, notes, t0)


def criterion_4() -> CriterionResult:
    t0 = time.perf_counter()
    fails, notes = [], []
    for key in CORPUS:
        G = group(key)
        if G.order > 2**13:
            continue
        rep = central_character_check(table(key))
        if not rep.passed:
            fails.append(f"{G.describe()}: {rep.status} {rep.counterexample}")
        notes.append(f"{G.describe()} central {rep.elapsed:.2f}s")
    return _result(4, "central characters", fails, notes, t0)


def criterion_5() -> CriterionResult:
    t0 = time.perf_counter()
    fails, notes = [], []
    for key in CORPUS:
        G = group(key)
        got = parameter_set_counts(G)
        want = parameter_set_counts_closed(G)
        for name, v in want.items():
            if got[name] != v:
                fails.append(f"{G.describe()}: |{name}| = {got[name]}, closed form {v}")
        fast = parameter_sets(G)
        if (len(fast.J2), len(fast.S2)) != (got["J2"], got["S2"]):
            fails.append(f"{G.describe()}: exponent test disagrees with the definition")
        notes.append(f"{G.describe()}: {got}")
    key, quad = QUAD_SPOT
    got = parameter_set_counts(group(key))["quad"]
    if tuple(got) != quad:
        fails.append(f"{_name(key)}: quadruple {got} != {quad}")
    return _result(5, "parameter sets", fails, notes, t0)


def criterion_6() -> CriterionResult:
    t0 = time.perf_counter()
    fails, notes = [], []
    for key in DUAL_INSTANCES:
        checks = dual_crosschecks(group(key))
        if not checks:
            fails.append(f"{_name(key)}: no closed form applies")
        for lab, ok in checks:
            if not ok:
                fails.append(f"{_name(key)}: {lab} differs from the generic dual")
        notes.append(f"{_name(key)}: {len(checks)} families compared")
    return _result(6, "closed forms vs generic dual", fails, notes, t0)


# -- criterion 7 pieces -------------------------------------------------------------


def vz_vanishing_failures() -> list[str]:
    """Non-linear characters of instances declared VZ must vanish off Z(G)."""
    out = []
    for key in CORPUS:
        G = group(key)
        if not G.vz:
            continue
        T = table(key)
        central = np.asarray(G.in_center(tuple(np.asarray(T.class_reps).T)), dtype=bool)
        nonlin = T.degrees > 1
        off = np.argwhere(nonlin[:, None] & ~central[None, :] & (T.values != 0).any(axis=2))
        if len(off):
            c, j = (int(x) for x in off[0])
            out.append(f"{G.describe()}: character {c} (degree {int(T.degrees[c])}) is nonzero "
                       f"at non-central class {j}")
    return out


def quotient_center_failures() -> list[str]:
    """|Z| of every quotient the construction builds, against the case table.

    The case table covers eps = 0 with k > 2; other instances either need no
    quotient or are outside its scope.
    """
    out = []
    for key in CORPUS:
        G = group(key)
        r = route(G)
        if r == "vz" or G.eps:
            continue
        if r == "kernel":
            M, reps = kernel_classes(G)
            quots = [KernelQuotient(G, M[i].reshape(G.q, G.q)) for i in reps]
        else:
            quots = [HyperplaneQuotient(G, v) for v in coset_reps_mod_prime_field(G)]
        for Q in quots:
            want = expected_center_size(G, Q.v)
            struct = int(Q.central_heads_structural().sum()) * Q.d
            if Q.center_size != want or struct != want:
                out.append(f"{G.describe()} v={Q.v}: |Z| = {Q.center_size} "
                           f"(structural {struct}), case table {want}")
    return out


def q_form_failures(rmax: int = 8) -> list[str]:
    out = []
    for r in range(1, rmax + 1):
        F = FieldContext(2, r)
        xs = F.elements()
        U = xs[F.abs_trace(xs) == 0]
        Q = q_form_idx(F, U, r)
        qmap = dict(zip(U.tolist(), Q.tolist()))
        x, y = np.meshgrid(U, U, indexing="ij")
        s = F.add(x, y)
        lhs = np.vectorize(qmap.__getitem__)(s) if s.size else s
        rhs = (Q[:, None] + Q[None, :] + F.abs_trace(F.mul(x, y))) % 2
        if not np.array_equal(lhs, rhs):
            out.append(f"r = {r}: polarization identity fails")
    return out


def gcd_failures(primes=(2, 3, 5), mmax: int = 12) -> list[str]:
    out = []
    for p in primes:
        for m in range(1, mmax + 1):
            for l in range(1, 2 * m + 1):
                if m // gcd(l, m) == 1:
                    continue
                if gcd(p**l + 1, p**m - 1) != gcd_pl1(p, l, m):
                    out.append(f"gcd(p^l+1, p^m-1) wrong for p={p}, l={l}, m={m}")
    return out


def f_image_failures(cases=None) -> list[str]:
    """Image of x -> a x^theta - x a^theta for every a != 0 and every theta != 1.

    Checks that it is the kernel of x -> Tr_{F/F_theta}((a a^theta)^(-1) x)
    and that two images agree iff a/b lies in the fixed field of theta^2.
    """
    from .field import ThetaPower, f_map_idx

    if cases is None:
        cases = [(2, m) for m in range(2, 7)] + [(3, m) for m in range(2, 7)] + [(5, m) for m in range(2, 4)]
    out = []
    for p, m in cases:
        F = FieldContext(p, m)
        xs = F.elements()
        nz = xs[1:]
        for l in range(1, m):
            th = ThetaPower(l, m)
            n = th.n
            d2 = gcd(2 * l, m)
            keys = {}
            for a in nz.tolist():
                img = np.zeros(F.q, dtype=bool)
                img[f_map_idx(F, a, xs, th)] = True
                scale = F.inv(F.mul(a, th(F, a)))
                ker = F.trace_to(F.mul(scale, xs), n) == 0
                if not np.array_equal(img, ker):
                    out.append(f"GF({p}^{m}), l={l}, a={a}: image is not the trace kernel")
                    break
                keys[a] = img.tobytes()
            label = {a: F.pow(a, p**d2 - 1) for a in nz.tolist()}
            by_img, by_sub = {}, {}
            for a in nz.tolist():
                by_img.setdefault(keys[a], []).append(a)
                by_sub.setdefault(label[a], []).append(a)
            if sorted(by_img.values()) != sorted(by_sub.values()):
                out.append(f"GF({p}^{m}), l={l}: equal images do not match fixed-field cosets")
    return out


def criterion_7() -> CriterionResult:
    t0 = time.perf_counter()
    fails = []
    parts = [("VZ vanishing", vz_vanishing_failures), ("quotient centres", quotient_center_failures),
             ("Q-form", q_form_failures), ("gcd", gcd_failures), ("f-map images", f_image_failures)]
    notes = []
    for name, fn in parts:
        bad = fn()
        notes.append(f"{name}: {'ok' if not bad else f'{len(bad)} failures'}")
        fails.extend(f"{name}: {b}" for b in bad)
    return _result(7, "property suites", fails, notes, t0)


def criterion_8() -> CriterionResult:
    from .cli import main

    t0 = time.perf_counter()
    fails = []
    with tempfile.TemporaryDirectory() as tmp:
        for key in DETERMINISM_INSTANCES:
            fam, p, m, l, eps = key
            args = ["table", "--family", fam, "--p", str(p), "--m", str(m), "--l", str(l)]
            if eps is not None:
                args += ["--epsilon", str(eps)]
            blobs = []
            for run in range(2):
                path = os.path.join(tmp, f"{fam}{p}{m}{l}_{run}.json")
                code = main(args + ["--out", path])
                if code != 0:
                    fails.append(f"{_name(key)}: table exited with {code}")
                    break
                with open(path, "rb") as fh:
                    blobs.append(fh.read())
            if len(blobs) == 2 and blobs[0] != blobs[1]:
                fails.append(f"{_name(key)}: documents differ between runs")
    return _result(8, "determinism", fails, (), t0)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8)


def run_all(threads: int | None = None, echo=print) -> list[CriterionResult]:
    out = []
    for fn in CRITERIA:
        res = fn(threads) if fn is criterion_3 else fn()
        if echo is not None:
            echo(res.line())
        out.append(res)
    return out
