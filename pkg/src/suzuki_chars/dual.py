"""Character groups of the small abelian groups met in the construction.

The generic route decomposes an enumerated abelian p-group into cyclic
factors and reads characters off exponent vectors.  The closed-form routes
evaluate the explicit formulas for Lin(G/G') (family A, k = 2), Lin(Z(G_v))
(family A, k > 2) and Lin(Z(C)); they serve as cross-checks of the generic
route and are compared as sets of value vectors.

Character values are exponents e in Z_N standing for zeta_N^e.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np

from .cyclotomic import CycloNum, root_power
from .field import FieldContext, find_special_idx, q_form_idx, solve_norm_idx
from .groups import SuzukiGroup


class AbelianBasis:
    """Independent generators of an enumerated abelian p-group.

    ``coords[x]`` is the exponent vector of element x; generator orders are
    prime powers.  Built greedily: repeatedly take the least-index element of
    largest order whose cyclic group meets the current span trivially.
    """

    def __init__(self, elements: Sequence[Hashable], mul: Callable, identity: Hashable, p: int):
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        if identity not in index:
            raise ValueError("identity is not among the elements")

        def order(x):
            o, y = 1, x
            while y != identity:
                y = mul(y, x)
                o += 1
                if o > len(elements):
                    raise ValueError("element of infinite order; not a finite group")
            return o

        orders = [order(x) for x in elements]
        by_order = sorted(range(len(elements)), key=lambda i: (-orders[i], i))
        span: dict = {identity: ()}
        gens: list = []
        gen_orders: list[int] = []
        while len(span) < len(elements):
            for i in by_order:
                x, o = elements[i], orders[i]
                if o == 1 or x in span:
                    continue
                low = x
                for _ in range(o // p - 1):
                    low = mul(low, x)
                if low in span:
                    continue
                break
            else:
                raise ValueError("greedy decomposition got stuck; input is not an abelian p-group")
            for g in gens:
                if mul(g, x) != mul(x, g):
                    raise ValueError("non-abelian input")
            new_span = {}
            for s, vec in span.items():
                y = s
                for j in range(o):
                    new_span[y] = vec + (j,)
                    y = mul(y, x)
            span = new_span
            gens.append(x)
            gen_orders.append(o)
        if int(np.prod(gen_orders, dtype=np.int64)) != len(elements) or len(span) != len(elements):
            raise ValueError("generator orders do not multiply to the group order")
        self.elements = elements
        self.index = index
        self.generators = gens
        self.orders = gen_orders
        self.coords = span

    @property
    def rank(self) -> int:
        return len(self.orders)

    def exponent_matrix(self) -> np.ndarray:
        """Exponent vectors of all elements, rows in enumeration order."""
        out = np.zeros((len(self.elements), self.rank), dtype=np.int64)
        for i, x in enumerate(self.elements):
            out[i] = self.coords[x]
        return out


@dataclass(frozen=True)
class DualCharacter:
    basis: AbelianBasis
    exponents: tuple[int, ...]
    N: int

    def exponent(self, x) -> int:
        vec = self.basis.coords[x]
        return sum(e * c * (self.N // o) for e, c, o in zip(self.exponents, vec, self.basis.orders)) % self.N

    def __call__(self, x) -> CycloNum:
        return root_power(self.N, self.exponent(x))


def abelian_basis(elements, mul, identity, p) -> AbelianBasis:
    return AbelianBasis(elements, mul, identity, p)


def characters_of(basis: AbelianBasis, N: int) -> list[DualCharacter]:
    for o in basis.orders:
        if N % o:
            raise ValueError(f"generator order {o} does not divide root order {N}")
    return [DualCharacter(basis, e, N) for e in itertools.product(*(range(o) for o in basis.orders))]


def character_matrix(basis: AbelianBasis, N: int) -> np.ndarray:
    """Exponents of every character (rows, in :func:`characters_of` order) at
    every element (columns, enumeration order)."""
    E = basis.exponent_matrix() * np.array([N // o for o in basis.orders], dtype=np.int64)
    X = np.array(list(itertools.product(*(range(o) for o in basis.orders))), dtype=np.int64)
    X = X.reshape(len(X), basis.rank)
    return (X @ E.T) % N


def restrict_nontrivial(lam: DualCharacter, z) -> bool:
    return lam.exponent(z) != 0


@dataclass(frozen=True)
class AdditiveCharacter:
    """x -> zeta_p^Tr_r(w x) on the subfield GF(p^r) (r = m gives psi_w)."""

    ctx: FieldContext
    w: int
    r: int

    def exponent(self, x):
        F = self.ctx
        return F.subfield_trace(F.mul(self.w, x), self.r)

    def __call__(self, x) -> CycloNum:
        p = self.ctx.p
        N = 4 if p == 2 else p
        return root_power(N, int(self.exponent(x)) * (N // p))


# -- closed forms ---------------------------------------------------------------


def _half(p: int) -> int:
    return (p + 1) // 2


def _scale(G: SuzukiGroup) -> int:
    return G.root_order // G.p


def _mod2_rep_classes(F: FieldContext, sub: np.ndarray) -> list[int]:
    """Least-index element of each class {w, w+1} inside a subfield."""
    return sorted({min(int(w), int(F.add(int(w), 1))) for w in sub})


def lin_abelianization_closed(G: SuzukiGroup) -> np.ndarray:
    """Linear characters of A_p(m, theta), k = 2, at every group element.

    chi(a, b) = psi_v(a) phi_w(b + b^(p^n) - a^(p^n + 1)), v in F, w in GF(p^n).
    Rows are characters, columns follow the group's enumeration order.
    """
    if G.family != "A" or G.k != 2:
        raise ValueError("this closed form needs family A with k = 2")
    F, n = G.ctx, G.n
    a, b = G.elements()
    y = F.sub(F.add(b, F.frob(b, n)), F.pow(a, G.p**n + 1))
    rows = []
    for v in range(G.q):
        ea = F.abs_trace(F.mul(v, a))
        for w in F.subfield(n):
            rows.append((ea + F.subfield_trace(F.mul(int(w), y), n)) % G.p)
    return np.array(rows, dtype=np.int64) * _scale(G)


def lin_quotient_center_closed(G: SuzukiGroup, v: int, elements: Sequence[tuple]) -> np.ndarray:
    """Linear characters of Z(G_v) for G = A_p(m, theta), k > 2.

    ``elements`` are quotient elements (a, t); returns exponents mod N, one row
    per character.
    """
    if G.family != "A" or G.k <= 2:
        raise ValueError("this closed form needs family A with k > 2")
    F, p, n, m = G.ctx, G.p, G.n, G.m
    N = G.root_order
    a = np.array([x[0] for x in elements], dtype=np.int64)
    t = np.array([x[1] for x in elements], dtype=np.int64)
    rows = []
    if G.k % 2:
        if p == 2:
            a_v = solve_norm_idx(F, G.theta, F.inv(v))
            u = F.div(a, a_v)
            u0 = find_special_idx(F, "u0", n=n)
            delta = F.subfield_trace(u, n)
            u1 = F.sub(u, F.mul(delta, u0))
            base = (q_form_idx(F, u1, n) + F.subfield_trace(F.mul(F.mul(delta, u0), u1), n)) % 2
            for w in _mod2_rep_classes(F, F.subfield(n)):
                tw = F.subfield_trace(F.mul(w, u1), n)
                for s in range(4):
                    rows.append((s * delta + 2 * (s * base + tw + s * t)) % 4)
        else:
            square = F.pow(v, (G.q - 1) // 2) == 1
            x_v = 1 if square else find_special_idx(F, "x0", n=n)
            a_v = solve_norm_idx(F, G.theta, F.div(x_v, v))
            u = F.div(a, a_v)
            quad = F.abs_trace(F.mul(x_v, F.mul(u, u)))
            h = _half(p)
            for w in F.subfield(n):
                tw = F.subfield_trace(F.mul(int(w), u), n)
                for s in range(p):
                    rows.append((-h * s * quad + tw + s * t) % p)
        return np.array(rows, dtype=np.int64)

    scale = N // p
    if not np.all(a == 0) and not bool(_j2(G, v)):
        raise ValueError("v in J_1 but the centre has nonzero heads")
    if np.all(a == 0):
        # v in J_1: the centre is the derived subgroup
        for s in range(p):
            rows.append((s * t % p) * scale)
        return np.array(rows, dtype=np.int64)
    a_v = solve_norm_idx(F, G.theta, F.inv(v))
    u = F.div(a, a_v)
    if p == 2:
        j = find_special_idx(F, "j", n=n)
        u2 = F.add(u, F.frob(u, n))
        u1 = F.add(u, F.mul(j, u2))
        cross = F.abs_trace(F.mul(j, F.mul(u1, u2)))
        sub = F.subfield(n)
        for w1 in sub:
            e1 = F.subfield_trace(F.mul(int(w1), u1), n)
            for w2 in sub:
                e2 = F.subfield_trace(F.mul(int(w2), u2), n)
                for s in range(2):
                    rows.append(2 * ((e1 + e2 + s * (t + cross)) % 2))
    else:
        h = _half(p)
        norm = F.abs_trace(F.mul(u, G.theta(F, u)))
        for w in F.subfield(2 * n):
            tw = F.subfield_trace(F.mul(int(w), u), 2 * n)
            for s in range(p):
                rows.append((tw + s * (t - h * norm)) % p)
    return np.array(rows, dtype=np.int64)


def _j2(G, v):
    from .quotients import in_J2
    return in_J2(G, v)


def lin_center_C_closed(G: SuzukiGroup) -> np.ndarray:
    """Linear characters of Z(C) = {(0, b, c)} at every (b, c), enumerated b-major."""
    if G.family != "C" or G.eps:
        raise ValueError("this closed form needs family C with eps = 0")
    F, p, m = G.ctx, G.p, G.m
    q = G.q
    codes = np.arange(q * q, dtype=np.int64)
    b, c = codes // q, codes % q
    rows = []
    if p != 2:
        h = _half(p)
        bb = F.smul(h, F.mul(b, b))
        cc = F.sub(c, bb)
        for v in range(q):
            ev = F.abs_trace(F.mul(v, cc))
            for w in range(q):
                rows.append((F.abs_trace(F.mul(w, b)) + ev) % p)
        return np.array(rows, dtype=np.int64)
    b0 = find_special_idx(F, "b0")
    reps = _mod2_rep_classes(F, F.elements())
    for v in range(1, q):
        sb = F.mul(F.root_p(v), b)
        t = F.abs_trace(sb)
        b1 = F.sub(sb, F.mul(t, b0))
        base = (q_form_idx(F, b1, m) + F.abs_trace(F.mul(F.mul(t, b0), b1))) % 2
        tc = F.abs_trace(F.mul(v, c))
        for w in reps:
            tw = F.abs_trace(F.mul(w, b1))
            for s in (1, 3):
                rows.append((s * t + 2 * (base + tw + tc)) % 4)
    for v in range(q):
        rows.append(2 * F.abs_trace(F.mul(v, b)))
    return np.array(rows, dtype=np.int64)


def same_character_set(x: np.ndarray, y: np.ndarray) -> bool:
    """Equality of two families of value vectors as sets (and in size)."""
    if x.shape != y.shape:
        return False
    sx = {r.tobytes() for r in np.ascontiguousarray(x, dtype=np.int64)}
    sy = {r.tobytes() for r in np.ascontiguousarray(y, dtype=np.int64)}
    return len(sx) == len(x) and sx == sy
