"""Central quotients of the Suzuki groups, presented by cocycles.

Two kinds of quotient are used by the character construction:

* :class:`HyperplaneQuotient` ``G_v = G / H_v`` where ``H_v`` is the set of
  central elements ``(0, .., c)`` with ``Tr_m(v c) = 0``.  Its elements are
  ``head + (t,)`` with ``t = Tr_m(v c)`` in Z_p.
* :class:`KernelQuotient` ``G / Ker(alpha)`` for family C with eps = 0, where
  ``alpha`` is a linear character of Z(G) = {(0, b, c)}.  Elements are
  ``(a, t)`` with ``t`` the exponent of ``alpha(0, b, c)`` in Z_d.

Both have derived subgroup of order p (when non-abelian), hence are VZ.
:class:`Abelianization` presents G / G'.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .field import FpSubspace, ThetaPower
from .groups import SuzukiGroup


# -- the sets J_1/J_2 and S_1/S_2 -----------------------------------------------


def in_J2(G: SuzukiGroup, v):
    """v in J_2 by the subgroup-order test (no discrete logs)."""
    F = G.ctx
    if G.k % 2:
        return np.ones_like(v, dtype=bool) if np.ndim(v) else True
    return F.pow(v, (G.q - 1) // (G.p**G.n + 1)) == 1


def in_S2(G: SuzukiGroup, v):
    F = G.ctx
    if G.k % 4:
        return np.ones_like(v, dtype=bool) if np.ndim(v) else True
    return F.pow(v, (G.q - 1) // (G.p ** (2 * G.n) + 1)) == 1


def _kills_image(G: SuzukiGroup, v, x, theta: ThetaPower):
    """Whether Im(f_{x,theta}) lies in Ker(psi_v): x = 0 or v x^(theta+1) is theta-fixed."""
    F = G.ctx
    y = F.mul(v, F.mul(x, theta(F, x)))
    return (x == 0) | (theta(F, y) == y)


def in_J2_by_definition(G: SuzukiGroup, v: int) -> bool:
    xs = G.ctx.elements()[1:]
    return bool(_kills_image(G, v, xs, G.theta).any())


def in_S2_by_definition(G: SuzukiGroup, v: int) -> bool:
    xs = G.ctx.elements()[1:]
    return bool(_kills_image(G, v, xs, G.theta.power(2)).any())


def coset_reps_mod_prime_field(G: SuzukiGroup) -> list[int]:
    """T: least-index representative of each coset v F_p^* in F^*, ascending."""
    F = G.ctx
    seen = np.zeros(G.q, dtype=bool)
    reps = []
    for v in range(1, G.q):
        if seen[v]:
            continue
        reps.append(v)
        for s in range(1, G.p):
            seen[F.smul(s, v)] = True
    return reps


def expected_center_size(G: SuzukiGroup, v: int) -> int:
    """|Z| of the quotient attached to v, from the closed case table.

    For family C, v is the element with alpha(0,0,c) = psi_v(c) (resp. its
    square class for p = 2).
    """
    p, n, k = G.p, G.n, G.k
    j2 = bool(in_J2(G, v))
    fam = G.family
    if fam == "A":
        if k % 2:
            return p ** (n + 1)
        return p ** (2 * n + 1) if j2 else p
    if fam == "B":
        if k % 2:
            return p ** (2 * n + 1)
        return p ** (4 * n + 1) if j2 else p
    if fam == "C":
        two = p == 2
        if k % 2:
            return 2 ** (n + 2) if two else p ** (n + 1)
        if j2:
            return 2 ** (2 * n + 2) if two else p ** (2 * n + 1)
        return 4 if two else p
    if k % 2:
        return p ** (2 * n + 1)
    if (k // 2) % 2:
        return p ** (4 * n + 1) if j2 else p ** (2 * n + 1)
    s2 = bool(in_S2(G, v))
    return {(True, True): p ** (6 * n + 1), (True, False): p ** (2 * n + 1),
            (False, True): p ** (4 * n + 1), (False, False): p}[(j2, s2)]


# -- quotient groups -------------------------------------------------------------


class _CocycleQuotient:
    """Shared machinery: elements head + (t,), t in Z_d."""

    G: SuzukiGroup
    d: int
    nhead: int

    def cocycle(self, x, y):
        raise NotImplementedError

    def commutator_value(self, x, y):
        return (self.cocycle(x, y) - self.cocycle(y, x)) % self.d

    def mul(self, x, y):
        F = self.G.ctx
        head = tuple(F.add(a, b) for a, b in zip(x[:-1], y[:-1]))
        return head + ((x[-1] + y[-1] + self.cocycle(x, y)) % self.d,)

    def identity(self):
        return (0,) * (self.nhead + 1)

    @property
    def order(self) -> int:
        return self.G.q**self.nhead * self.d

    def heads(self) -> tuple[np.ndarray, ...]:
        q = self.G.q
        codes = np.arange(q**self.nhead, dtype=np.int64)
        out = []
        for _ in range(self.nhead):
            out.append(codes % q)
            codes = codes // q
        return tuple(reversed(out))

    def derived_generator(self):
        return (0,) * self.nhead + (self.d // self.G.p,)

    def central_heads_structural(self) -> np.ndarray:
        """Boolean mask over head codes: commutes with the spanning set."""
        hs = self.heads()
        z = np.zeros_like(hs[0])
        ok = np.ones(len(z), dtype=bool)
        basis = self.G.ctx.prime_field_basis()
        span = [(x,) + (0,) * (self.nhead - 1) for x in basis]
        if self.nhead == 2:
            span += [(0, x) for x in basis]
        for h in span:
            y = tuple(z + c for c in h) + (z,)
            ok &= self.commutator_value(hs + (z,), y) == 0
        return ok

    def central_heads(self) -> np.ndarray:
        return self.central_heads_structural()

    @cached_property
    def center_mask(self) -> np.ndarray:
        return self.central_heads()

    def center_elements(self) -> list[tuple[int, ...]]:
        """Z(Q) in enumeration order (head code, then t)."""
        hs = self.heads()
        out = []
        for i in np.flatnonzero(self.center_mask):
            head = tuple(int(h[i]) for h in hs)
            out.extend(head + (t,) for t in range(self.d))
        return out

    @property
    def center_size(self) -> int:
        return int(self.center_mask.sum()) * self.d

    @property
    def is_abelian(self) -> bool:
        return bool(self.center_mask.all())

    def head_code(self, head) -> np.ndarray:
        code = head[0]
        for h in head[1:]:
            code = code * self.G.q + h
        return code


class HyperplaneQuotient(_CocycleQuotient):
    """G / H_v with H_v = {(0,..,c) : Tr_m(v c) = 0}."""

    def __init__(self, G: SuzukiGroup, v: int):
        if v == 0:
            raise ValueError("v must be nonzero")
        self.G = G
        self.v = int(v)
        self.d = G.p
        self.nhead = G.ncoords - 1

    def cocycle(self, x, y):
        F = self.G.ctx
        return F.abs_trace(F.mul(self.v, self.G.beta(x, y)))

    def project(self, g):
        F = self.G.ctx
        return tuple(g[:-1]) + (F.abs_trace(F.mul(self.v, g[-1])),)

    def central_heads_criterion(self) -> np.ndarray:
        """Centre test via the fixed-field criterion (eps = 0, families A, B, D)."""
        G = self.G
        if G.eps or G.family == "C":
            raise ValueError("the fixed-field centre criterion needs eps = 0 and family A, B or D")
        hs = self.heads()
        ok = _kills_image(G, self.v, hs[0], G.theta)
        if self.nhead == 2:
            th_b = G.theta if G.family == "B" else G.theta.power(2)
            ok &= _kills_image(G, self.v, hs[1], th_b)
        return ok

    def central_heads(self) -> np.ndarray:
        G = self.G
        if G.eps == 0 and G.family != "C":
            return self.central_heads_criterion()
        return self.central_heads_structural()

    def expected_center_size(self) -> int:
        return expected_center_size(self.G, self.v)


class KernelQuotient(_CocycleQuotient):
    """G / Ker(alpha) for G = C_p(m, theta, 0).

    ``ind`` is a (q, q) integer array with ``alpha(0, b, c) = zeta_d^ind[b, c]``.
    """

    def __init__(self, G: SuzukiGroup, ind: np.ndarray):
        if G.family != "C" or G.eps:
            raise ValueError("kernel quotients are defined for family C with eps = 0")
        self.G = G
        self.d = G.root_order
        self.nhead = 1
        self.ind = np.asarray(ind, dtype=np.int64) % self.d
        if not self.ind[0].any():
            raise ValueError("alpha is trivial on the derived subgroup; the quotient is abelian")
        self.v = self._solve_v()

    def _solve_v(self) -> int:
        """The v with alpha(0,0,c) = zeta_p^Tr_m(v c)."""
        G = self.G
        F = G.ctx
        scale = self.d // G.p
        row = self.ind[0]
        if (row % scale).any():
            raise ValueError("alpha restricted to the last coordinate is not a p-th root character")
        basis = np.array(F.prime_field_basis())
        target = row[basis] // scale
        tp = F.abs_trace(F.mul(F.elements()[:, None], basis[None, :]))
        hits = np.flatnonzero((tp == target[None, :]).all(axis=1))
        v = int(hits[0])
        if not np.array_equal(F.abs_trace(F.mul(v, F.elements())) * scale, row):
            raise ValueError("alpha restricted to the last coordinate is not additive")
        return v

    def cocycle(self, x, y):
        F = self.G.ctx
        return self.ind[0, F.mul(x[0], self.G.theta(F, y[0]))]

    def project(self, g):
        return (g[0], self.ind[g[1], g[2]])

    def central_heads_criterion(self) -> np.ndarray:
        (a,) = self.heads()
        return _kills_image(self.G, self.v, a, self.G.theta)

    def central_heads(self) -> np.ndarray:
        return self.central_heads_criterion()

    def expected_center_size(self) -> int:
        return expected_center_size(self.G, self.v)


class Abelianization:
    """G / G' as (head, c mod G'), with the least-index coset representative for c."""

    def __init__(self, G: SuzukiGroup, derived: FpSubspace | None = None):
        self.G = G
        self.derived = derived if derived is not None else G.derived_structural()
        self.reps = self.derived.coset_reps()

    def reduce(self, c):
        from .groups import _reduce_array
        if np.ndim(c):
            return _reduce_array(self.G.ctx, self.derived, np.asarray(c))
        return self.derived.reduce(int(c))

    def project(self, g):
        return tuple(g[:-1]) + (self.reduce(g[-1]),)

    def mul(self, x, y):
        return self.project(self.G.mul(x, y))

    def identity(self):
        return self.G.identity()

    @property
    def order(self) -> int:
        return self.G.q ** (self.G.ncoords - 1) * len(self.reps)

    def elements(self) -> list[tuple[int, ...]]:
        q = self.G.q
        nh = self.G.ncoords - 1
        out = []
        for code in range(q**nh):
            head = []
            x = code
            for _ in range(nh):
                head.append(x % q)
                x //= q
            head = tuple(reversed(head))
            out.extend(head + (c,) for c in self.reps)
        return out
