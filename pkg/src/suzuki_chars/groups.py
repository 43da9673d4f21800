"""The four Suzuki p-group families A, B, C, D over GF(p^m).

An element is a tuple of field-element indices: ``(a, c)`` for family A and
``(a, b, c)`` for B, C, D.  The last coordinate is the central one; the
leading coordinates are called the *head* below.  Every product has the form

    (head, c) * (head', c') = (head + head', c + c' + beta(head, head'))

with ``beta`` biadditive, so all the group theory reduces to ``beta``.
Elements are numbered lexicographically (first coordinate most significant),
which is the order used for class representatives and enumeration.

All coordinate arguments may be ints or equally shaped numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .field import FieldContext, FpSubspace, ThetaPower, f_map_idx

FAMILIES = ("A", "B", "C", "D")


class ParameterError(ValueError):
    """Group parameters violating a validity rule."""


@dataclass(frozen=True)
class ConjClass:
    rep: tuple[int, ...]
    size: int
    commutator_image: FpSubspace


class SuzukiGroup:
    """One group A_p(m, theta), B_p(m, theta, eps), C_p(...) or D_p(...).

    ``theta`` is x -> x^(p^l).  ``eps`` is a field-element index and must be
    omitted for family A.
    """

    def __init__(self, family: str, p: int, m: int, l: int, eps: int | None = None,
                 modulus: Sequence[int] | None = None, ctx: FieldContext | None = None):
        family = family.upper()
        if family not in FAMILIES:
            raise ParameterError(f"unknown family {family!r}; expected one of A, B, C, D")
        if l < 1:
            raise ParameterError(f"l = {l} must be a positive integer")
        self.family = family
        self.ctx = ctx if ctx is not None else FieldContext(p, m, modulus)
        self.p, self.m, self.q = self.ctx.p, self.ctx.m, self.ctx.q
        self.l = l
        self.theta = ThetaPower(l, self.m)
        self.n = self.theta.n
        self.k = self.theta.k
        if family == "A":
            if eps not in (None, 0):
                raise ParameterError("family A takes no epsilon parameter")
            if self.theta.is_identity:
                raise ParameterError(
                    f"θ = 1 (l = {l} is a multiple of m = {self.m}): family A requires θ≠1")
            self.eps = 0
        else:
            if eps is None:
                raise ParameterError(f"family {family} requires an epsilon parameter")
            if not 0 <= int(eps) < self.q:
                raise ParameterError(f"epsilon index {eps} out of range for GF({p}^{m})")
            self.eps = int(eps)
            if self.theta.is_identity and self.eps == 0:
                raise ParameterError(
                    f"θ = 1 and ε = 0 make the group abelian: family {family} requires θ≠1 or ε≠0")
        self.ncoords = 2 if family == "A" else 3
        self.order = self.q**self.ncoords

    # -- parameters ------------------------------------------------------------

    @property
    def vz(self) -> bool:
        if self.family == "A":
            return self.k == 2
        return self.eps != 0 or self.k == 2

    @property
    def root_order(self) -> int:
        return 4 if self.p == 2 else self.p

    def describe(self) -> str:
        args = f"{self.m},{self.l}" + ("" if self.family == "A" else f",{self.eps}")
        return f"{self.family}_{self.p}({args})"

    def __repr__(self) -> str:
        return f"SuzukiGroup({self.describe()})"

    def _th(self, x, times: int = 1):
        return self.theta(self.ctx, x, times)

    # -- element arithmetic ----------------------------------------------------

    def beta(self, g, h):
        """Cocycle of the heads of g and h (the extra central term of g*h)."""
        F = self.ctx
        a, d = g[0], h[0]
        res = F.mul(a, self._th(d))
        if self.family == "A":
            return res
        b, e = g[1], h[1]
        if self.family == "B":
            res = F.add(res, F.mul(b, self._th(e)))
            if self.eps:
                res = F.add(res, F.mul(self.eps, F.mul(a, self._th(e))))
        elif self.family == "C":
            res = F.add(res, F.mul(b, e))
            if self.eps:
                t = F.mul(F.root_p(a), self._th(F.frob(e, 1)))
                res = F.add(res, F.mul(self.eps, t))
        else:
            res = F.add(res, F.mul(b, self._th(e, 2)))
            if self.eps:
                res = F.add(res, F.mul(self.eps, F.mul(self._th(a, 3), self._th(e))))
        return res

    def mul(self, g, h):
        F = self.ctx
        head = tuple(F.add(x, y) for x, y in zip(g[:-1], h[:-1]))
        c = F.add(F.add(g[-1], h[-1]), self.beta(g, h))
        return head + (c,)

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.ncoords

    def inv(self, g):
        F = self.ctx
        head = tuple(F.neg(x) for x in g[:-1])
        return head + (F.add(F.neg(g[-1]), self.beta(g, g)),)

    def commutator_direct(self, g, h):
        """g^-1 h^-1 g h from the multiplication alone."""
        return self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))

    def commutator(self, g, h):
        """[g, h] from the closed commutator formulas."""
        F, th = self.ctx, self.theta
        a, d = g[0], h[0]
        c = f_map_idx(F, a, d, th)
        zero = c * 0
        if self.family == "A":
            return (zero, c)
        b, e = g[1], h[1]
        eps = self.eps
        if self.family == "B":
            c = F.add(c, f_map_idx(F, b, e, th))
            if eps:
                c = F.add(c, F.mul(eps, F.sub(F.mul(a, self._th(e)), F.mul(d, self._th(b)))))
        elif self.family == "C":
            if eps:
                x = F.mul(F.root_p(a), self._th(F.frob(e, 1)))
                y = F.mul(F.root_p(d), self._th(F.frob(b, 1)))
                c = F.add(c, F.mul(eps, F.sub(x, y)))
        else:
            c = F.add(c, f_map_idx(F, b, e, th.power(2)))
            if eps:
                x = F.mul(self._th(a, 3), self._th(e))
                y = F.mul(self._th(d, 3), self._th(b))
                c = F.add(c, F.mul(eps, F.sub(x, y)))
        return (zero,) * (self.ncoords - 1) + (c,)

    # -- numbering -------------------------------------------------------------

    def encode(self, g):
        code = g[0]
        for x in g[1:]:
            code = code * self.q + x
        return code

    def decode(self, code):
        out = []
        for _ in range(self.ncoords):
            out.append(code % self.q)
            code = code // self.q
        return tuple(reversed(out))

    def elements(self) -> tuple[np.ndarray, ...]:
        """All elements as coordinate arrays, in enumeration order."""
        return self.decode(np.arange(self.order, dtype=np.int64))

    # -- spanning set for commutator images -----------------------------------

    def head_basis(self) -> list[tuple[int, ...]]:
        """{(x,0), (0,x) : x in an F_p-basis of F} (heads only)."""
        basis = self.ctx.prime_field_basis()
        out = [(x,) + (0,) * (self.ncoords - 2) for x in basis]
        if self.ncoords == 3:
            out += [(0, x) for x in basis]
        return out

    def commutator_generators(self, head) -> list:
        """Last coordinates of [g, h] for h over the spanning set (g given by head)."""
        g = tuple(head) + (0,)
        return [self.commutator(g, h + (0,))[-1] for h in self.head_basis()]

    # -- structural conjugacy classes -----------------------------------------

    @cached_property
    def _class_data(self):
        F = self.ctx
        q = self.q
        nheads = q ** (self.ncoords - 1)
        heads = self.decode(np.arange(nheads, dtype=np.int64) * q)[:-1]
        gens = np.stack(self.commutator_generators(heads), axis=1)  # (nheads, ngens)
        spaces: dict[tuple, int] = {}
        space_list: list[FpSubspace] = []
        gen_cache: dict[tuple, int] = {}
        head_space = np.empty(nheads, dtype=np.int64)
        for i, row in enumerate(gens.tolist()):
            key = tuple(sorted(set(row)))
            sid = gen_cache.get(key)
            if sid is None:
                W = FpSubspace(F, key)
                sid = spaces.setdefault(W.key(), len(space_list))
                if sid == len(space_list):
                    space_list.append(W)
                gen_cache[key] = sid
            head_space[i] = sid
        allc = F.elements()
        reduce_tab = np.empty((len(space_list), q), dtype=np.int64)
        rank_tab = np.full((len(space_list), q), -1, dtype=np.int64)
        reps_per_space = []
        for sid, W in enumerate(space_list):
            reduce_tab[sid] = _reduce_array(F, W, allc)
            reps = np.array(W.coset_reps(), dtype=np.int64)
            rank_tab[sid, reps] = np.arange(len(reps))
            reps_per_space.append(reps)
        counts = np.array([len(reps_per_space[s]) for s in head_space], dtype=np.int64)
        offsets = np.concatenate([[0], np.cumsum(counts)[:-1]])
        return heads, head_space, space_list, reduce_tab, rank_tab, reps_per_space, offsets, counts

    @cached_property
    def class_reps(self) -> np.ndarray:
        """Class representatives as an int array of shape (k(G), ncoords)."""
        heads, head_space, _, _, _, reps_per_space, _, counts = self._class_data
        idx = np.repeat(np.arange(len(head_space)), counts)
        cs = np.concatenate([reps_per_space[s] for s in head_space])
        cols = [h[idx] for h in heads] + [cs]
        return np.stack(cols, axis=1)

    @cached_property
    def class_sizes(self) -> np.ndarray:
        _, head_space, space_list, _, _, _, _, counts = self._class_data
        dims = np.array([W.dim for W in space_list], dtype=np.int64)
        return np.repeat(self.p ** dims[head_space], counts)

    @property
    def num_classes(self) -> int:
        return int(self._class_data[7].sum())

    def conjugacy_classes(self) -> list[ConjClass]:
        _, head_space, space_list, *_ = self._class_data
        counts = self._class_data[7]
        spaces = np.repeat(head_space, counts)
        return [
            ConjClass(tuple(int(x) for x in rep), int(size), space_list[s])
            for rep, size, s in zip(self.class_reps, self.class_sizes, spaces)
        ]

    def class_index(self, g):
        """Index (into :attr:`class_reps`) of the class containing g."""
        _, head_space, _, reduce_tab, rank_tab, _, offsets, _ = self._class_data
        hcode = self.encode(tuple(g[:-1]) + (0,)) // self.q
        sid = head_space[hcode]
        r = rank_tab[sid, reduce_tab[sid, g[-1]]]
        out = offsets[hcode] + r
        return int(out) if np.ndim(out) == 0 else out

    def commutator_image(self, g) -> FpSubspace:
        _, head_space, space_list, *_ = self._class_data
        hcode = self.encode(tuple(g[:-1]) + (0,)) // self.q
        return space_list[int(head_space[hcode])]

    # -- centre and derived subgroup ------------------------------------------

    def center_heads_structural(self) -> np.ndarray:
        """Head codes whose commutator image is trivial."""
        _, head_space, space_list, *_ = self._class_data
        trivial = np.array([W.dim == 0 for W in space_list])
        return np.flatnonzero(trivial[head_space])

    def derived_structural(self) -> FpSubspace:
        _, head_space, space_list, *_ = self._class_data
        W = FpSubspace(self.ctx)
        for s in set(head_space.tolist()):
            for x in space_list[s].basis():
                W.add(x)
        return W

    def is_vz_structural(self) -> bool:
        """[g, G] = G' for every non-central g, read off the commutator images."""
        _, head_space, space_list, *_ = self._class_data
        full = self.derived_structural().dim
        return all(space_list[s].dim in (0, full) for s in set(head_space.tolist()))

    def in_center(self, g):
        """Centre membership from the closed case table."""
        a = g[0]
        if self.ncoords == 2:
            return a == 0
        b = g[1]
        if self.family in ("C", "D") and self.eps == 0 and (self.family == "C" or self.k == 2):
            return a == 0
        return (a == 0) & (b == 0)

    def in_derived(self, g):
        """Derived-subgroup membership from the closed case table."""
        head_zero = g[0] == 0
        if self.ncoords == 3:
            head_zero = head_zero & (g[1] == 0)
        if self.k == 2 and self.eps == 0:
            # the image of f_{1,theta} is the kernel of the relative trace
            return head_zero & (self.ctx.trace_to(g[-1], self.n) == 0)
        return head_zero

    def center_order(self) -> int:
        if self.ncoords == 2:
            return self.q
        if self.eps == 0 and (self.family == "C" or (self.family == "D" and self.k == 2)):
            return self.q**2
        return self.q

    def derived_order(self) -> int:
        if self.k == 2 and self.eps == 0:
            return self.p ** (self.m - self.n)
        return self.q

    # -- class number ----------------------------------------------------------

    def class_number(self) -> int:
        """k(G) from the closed formulas."""
        p, m, n, k = self.p, self.m, self.n, self.k
        if self.vz:
            G, Z, D = self.order, self.center_order(), self.derived_order()
            return G // D + Z - Z // D
        fam = self.family
        if fam == "A":
            return p**m + p**n * (p**m - 1)
        if fam == "B":
            if k % 2:
                return p ** (2 * m) + p ** (2 * n) * (p**m - 1)
            return p ** (2 * m) + p**n * (p**m - 1) * (p ** (2 * n) - p**n + 1)
        if fam == "C":
            return p ** (2 * m) + p ** (m + n) * (p**m - 1)
        if k % 2:
            return p ** (2 * m) + p ** (2 * n) * (p**m - 1)
        if (k // 2) % 2:
            return p ** (2 * m) + p ** (3 * n) * (p**m - 1)
        if p == 2:
            return 2 ** (2 * m) + 2 ** (3 * n) * (2**m - 1)
        return p ** (2 * m) + (p**m - 1) * (2 * p ** (3 * n) - p ** (2 * n) - p**n + 1)


def _reduce_array(F: FieldContext, W: FpSubspace, xs: np.ndarray) -> np.ndarray:
    """Vectorized :meth:`FpSubspace.reduce`."""
    p = F.p
    out = xs.copy()
    for piv, w in W._basis.items():
        wv = F.from_coeffs(w)
        digit = (out // p**piv) % p
        for s in range(1, p):
            out = np.where(digit == s, F.sub(out, F.smul(s, wv)), out)
    return out


def make_group(family: str, p: int, m: int, l: int, eps=None, modulus=None) -> SuzukiGroup:
    """Build a group; ``eps`` may be an index or a coefficient list (low degree first)."""
    ctx = FieldContext(p, m, modulus)
    if eps is not None and not isinstance(eps, (int, np.integer)):
        eps = ctx.from_coeffs(list(eps))
    return SuzukiGroup(family, p, m, l, eps, ctx=ctx)
