"""Exact arithmetic in GF(p^m) with a fixed primitive modulus.

Elements are identified with integers ``0 <= i < p**m``: the base-p digits of
``i`` (least significant first) are the coordinates of the element in the
power basis of the modulus root.  Element 0 is zero and element 1 is one.

All arithmetic methods of :class:`FieldContext` accept either Python ints or
numpy integer arrays of element indices, so the group code can vectorize over
whole coordinate arrays.  :class:`FieldElement` is a thin operator-overloading
wrapper for interactive use and tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np


class FieldError(ValueError):
    """Invalid field parameters or an unsatisfiable field equation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _power_sequence(p: int, m: int, modulus: Sequence[int]) -> list[int] | None:
    """Powers x^0, x^1, ..., x^(q-2) modulo ``modulus`` as element indices.

    Returns None unless x has multiplicative order exactly p^m - 1, i.e. the
    modulus is primitive (which also forces irreducibility).
    """
    q = p**m
    # modulus is descending with leading 1: x^m = -(c_{m-1} x^{m-1} + ... + c_0)
    low = [(-c) % p for c in reversed(modulus[1:])]  # ascending
    cur = [1] + [0] * (m - 1)
    seq = []
    for i in range(q - 1):
        idx = 0
        for d in reversed(cur):
            idx = idx * p + d
        if idx == 0 or (idx == 1 and i > 0):
            return None
        seq.append(idx)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [(c + top * r) % p for c, r in zip(cur, low)]
    # the order must be exactly q - 1: x^(q-1) must come back to 1
    idx = 0
    for d in reversed(cur):
        idx = idx * p + d
    return seq if idx == 1 else None


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic primitive polynomial of degree m over Z_p.

    Polynomials are compared by their descending-degree coefficient tuples
    (leading 1 excluded).  For m = 1 the modulus is ``x - g`` with g the least
    primitive root mod p.
    """
    if m == 1:
        g = least_primitive_root(p)
        return (1, (-g) % p)
    for n in range(p**m):
        tail = []
        t = n
        for _ in range(m):
            tail.append(t % p)
            t //= p
        tail.reverse()  # most significant digit first = coefficient of x^(m-1)
        cand = (1, *tail)
        if cand[-1] == 0:
            continue
        if _power_sequence(p, m, cand) is not None:
            return cand
    raise FieldError(f"no primitive polynomial of degree {m} over Z_{p}")  # unreachable


def least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fs):
            return g
    raise FieldError(f"no primitive root mod {p}")


class FieldContext:
    """The field F = GF(p^m) together with its lookup tables.

    Immutable after construction.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if m < 1:
            raise FieldError(f"extension degree m = {m} must be >= 1")
        self.p = p
        self.m = m
        self.q = q = p**m
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[0] != 1:
            raise FieldError(f"modulus must be monic of degree {m} (descending coefficients)")
        if m == 1:
            root = (-modulus[1]) % p
            if root == 0 or any(pow(root, e, p) == 1 for e in range(1, p - 1)):
                raise FieldError(f"modulus {list(modulus)} is not primitive")
            seq = [pow(root, e, p) for e in range(p - 1)]
            self.gamma = root
        else:
            seq = _power_sequence(p, m, modulus)
            if seq is None:
                raise FieldError(f"modulus {list(modulus)} is reducible or not primitive")
            self.gamma = p  # the class of x
        self.modulus = modulus

        exp = np.array(seq, dtype=np.int64)
        self._exp = np.concatenate([exp, exp])  # index up to 2(q-2) without a mod
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self._log = log
        idx = np.arange(q, dtype=np.int64)
        frob = np.empty((m, q), dtype=np.int64)
        for j in range(m):
            e = (log * (p**j)) % (q - 1)
            frob[j] = np.where(idx == 0, 0, self._exp[e])
        self._frob = frob
        tr = np.zeros(q, dtype=np.int64)
        for j in range(m):
            tr = self.add(tr, frob[j])
        self._trace = tr  # absolute trace, always < p

    def __repr__(self) -> str:
        return f"FieldContext(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldContext)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    # -- element conversion -------------------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m:
            raise FieldError(f"expected {self.m} coefficients, got {len(coeffs)}")
        x = 0
        for c in reversed(coeffs):
            x = x * self.p + int(c) % self.p
        return x

    def element(self, x: int | Sequence[int]) -> FieldElement:
        if not isinstance(x, (int, np.integer)):
            x = self.from_coeffs(x)
        x = int(x)
        if not 0 <= x < self.q:
            raise FieldError(f"element index {x} out of range for GF({self.p}^{self.m})")
        return FieldElement(self, x)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # -- additive structure -------------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        p, res, pw = self.p, 0, 1
        for _ in range(self.m):
            res = res + ((a // pw + b // pw) % p) * pw
            pw *= p
        return res

    def neg(self, a):
        if self.p == 2:
            return a
        p, res, pw = self.p, 0, 1
        for _ in range(self.m):
            res = res + ((-(a // pw)) % p) * pw
            pw *= p
        return res

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def smul(self, s: int, a):
        """Multiply by the prime-field scalar ``s``."""
        s %= self.p
        if self.p == 2:
            return a if s else a * 0
        p, res, pw = self.p, 0, 1
        for _ in range(self.m):
            res = res + ((s * (a // pw)) % p) * pw
            pw *= p
        return res

    # -- multiplicative structure -------------------------------------------

    def mul(self, a, b):
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            if a == 0 or b == 0:
                return 0
            return int(self._exp[self._log[a] + self._log[b]])
        a = np.asarray(a)
        b = np.asarray(b)
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow(self, a, e: int):
        if isinstance(a, (int, np.integer)):
            if a == 0:
                if e < 0:
                    raise ZeroDivisionError("0 has no inverse")
                return 1 if e == 0 else 0
            return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])
        a = np.asarray(a)
        out = self._exp[(self._log[a] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def inv(self, a):
        if isinstance(a, (int, np.integer)) and a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return self.pow(a, -1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("log of zero")
        return int(self._log[a])

    def gamma_power(self, e: int) -> int:
        return int(self._exp[e % (self.q - 1)])

    # -- Frobenius, traces, subfields ---------------------------------------

    def frob(self, a, j: int):
        """x -> x^(p^j); j is taken mod m."""
        t = self._frob[j % self.m]
        if isinstance(a, (int, np.integer)):
            return int(t[a])
        return t[np.asarray(a)]

    def root_p(self, a):
        """x -> x^(1/p), the inverse Frobenius."""
        return self.frob(a, self.m - 1)

    def abs_trace(self, a):
        """Absolute trace Tr_m, returned as an integer in [0, p)."""
        if isinstance(a, (int, np.integer)):
            return int(self._trace[a])
        return self._trace[np.asarray(a)]

    @cached_property
    def trace_product(self) -> np.ndarray:
        """``trace_product[v, x] = Tr_m(v x)`` for all v, x (q x q table)."""
        allx = self.elements()
        return self._trace[self.mul(allx[:, None], allx[None, :])]

    def trace_to(self, a, d: int):
        """Relative trace Tr_{F/F_{p^d}}(a) = sum_{i < m/d} a^(p^(d i))."""
        if d <= 0 or self.m % d:
            raise FieldError(f"d = {d} does not divide m = {self.m}")
        res = a * 0
        for i in range(self.m // d):
            res = self.add(res, self.frob(a, d * i))
        return res

    def subfield_trace(self, a, r: int):
        """Absolute trace Tr_r of an element of the subfield GF(p^r), as an int < p."""
        if r <= 0 or self.m % r:
            raise FieldError(f"r = {r} does not divide m = {self.m}")
        res = a * 0
        for i in range(r):
            res = self.add(res, self.frob(a, i))
        return res

    def in_subfield(self, a, d: int):
        return self.frob(a, d) == a

    def subfield(self, d: int) -> np.ndarray:
        """Indices of GF(p^d) inside F, ascending."""
        if d <= 0 or self.m % d:
            raise FieldError(f"d = {d} does not divide m = {self.m}")
        allx = self.elements()
        return allx[self._frob[d % self.m] == allx]

    def prime_field_basis(self) -> list[int]:
        """The power basis 1, x, ..., x^(m-1) as element indices."""
        return [self.p**i for i in range(self.m)]


@dataclass(frozen=True)
class ThetaPower:
    """The field automorphism x -> x^(p^l) of GF(p^m)."""

    l: int
    m: int

    def __post_init__(self):
        if self.l < 1:
            raise FieldError(f"l = {self.l} must be >= 1")

    @property
    def n(self) -> int:
        return gcd(self.l, self.m)

    @property
    def k(self) -> int:
        return self.m // self.n

    @property
    def is_identity(self) -> bool:
        return self.l % self.m == 0

    def power(self, j: int) -> ThetaPower:
        return ThetaPower(self.l * j, self.m)

    def __call__(self, ctx: FieldContext, x, times: int = 1):
        return ctx.frob(x, (self.l * times) % self.m)

    def norm_exponent(self, p: int) -> int:
        """The exponent p^l + 1 of a -> a^(theta+1)."""
        return p ** (self.l % self.m if self.l % self.m else self.m) + 1


class FieldElement:
    """An element of a :class:`FieldContext`, with arithmetic operators."""

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: FieldContext, index: int):
        self.ctx = ctx
        self.index = int(index)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.index)

    def _wrap(self, x) -> FieldElement:
        return FieldElement(self.ctx, x)

    def _other(self, o) -> int:
        if isinstance(o, FieldElement):
            if o.ctx != self.ctx:
                raise FieldError("elements of different fields")
            return o.index
        if isinstance(o, int):
            return self.ctx.smul(o, 1)
        return NotImplemented

    def __add__(self, o):
        return self._wrap(self.ctx.add(self.index, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(self.ctx.sub(self.index, self._other(o)))

    def __rsub__(self, o):
        return self._wrap(self.ctx.sub(self._other(o), self.index))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.index))

    def __mul__(self, o):
        return self._wrap(self.ctx.mul(self.index, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._wrap(self.ctx.div(self.index, self._other(o)))

    def __pow__(self, e: int):
        return self._wrap(self.ctx.pow(self.index, e))

    def inverse(self) -> FieldElement:
        return self._wrap(self.ctx.inv(self.index))

    def frobenius(self, j: int) -> FieldElement:
        return self._wrap(self.ctx.frob(self.index, j))

    def __eq__(self, o) -> bool:
        if isinstance(o, FieldElement):
            return self.ctx == o.ctx and self.index == o.index
        if isinstance(o, int):
            return self.index == self.ctx.smul(o, 1)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.m, self.index))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"


class FpSubspace:
    """An F_p-subspace of F, kept in reduced echelon form.

    Pivots are the highest nonzero digit of each basis vector, normalized to 1,
    and no basis vector has a nonzero digit at another vector's pivot.  Under
    this normalization :meth:`reduce` returns the least-index element of a
    coset ``x + W``.
    """

    def __init__(self, ctx: FieldContext, gens: Iterable[int] = ()):
        self.ctx = ctx
        self._basis: dict[int, list[int]] = {}  # pivot -> digit vector
        for g in gens:
            self.add(int(g))

    def _digits(self, x: int) -> list[int]:
        return list(self.ctx.coeffs(x))

    def _reduce_digits(self, d: list[int]) -> list[int]:
        p = self.ctx.p
        for piv, w in self._basis.items():
            c = d[piv]
            if c:
                d = [(a - c * b) % p for a, b in zip(d, w)]
        return d

    def reduce(self, x: int) -> int:
        """Least-index element of the coset x + W."""
        return self.ctx.from_coeffs(self._reduce_digits(self._digits(x)))

    def add(self, x: int) -> bool:
        p = self.ctx.p
        d = self._reduce_digits(self._digits(x))
        nz = [i for i, c in enumerate(d) if c]
        if not nz:
            return False
        piv = nz[-1]
        inv = pow(d[piv], -1, p)
        d = [(c * inv) % p for c in d]
        for q, w in list(self._basis.items()):
            c = w[piv]
            if c:
                self._basis[q] = [(a - c * b) % p for a, b in zip(w, d)]
        self._basis[piv] = d
        return True

    @property
    def dim(self) -> int:
        return len(self._basis)

    def __len__(self) -> int:
        return self.ctx.p ** self.dim

    def __contains__(self, x: int) -> bool:
        return self.reduce(x) == 0

    def basis(self) -> list[int]:
        return [self.ctx.from_coeffs(w) for _, w in sorted(self._basis.items())]

    def elements(self) -> list[int]:
        ctx = self.ctx
        out = [0]
        for b in self.basis():
            out = [ctx.add(x, ctx.smul(s, b)) for x in out for s in range(ctx.p)]
        return sorted(out)

    def coset_reps(self) -> list[int]:
        """Least-index representatives of F / W, ascending."""
        free = [i for i in range(self.ctx.m) if i not in self._basis]
        p = self.ctx.p
        reps = []
        for t in range(p ** len(free)):
            x = 0
            for i in free:
                x += (t % p) * p**i
                t //= p
            reps.append(x)
        return sorted(reps)

    def key(self) -> tuple:
        return tuple(sorted((piv, tuple(w)) for piv, w in self._basis.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, FpSubspace) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FpSubspace(dim={self.dim}, basis={self.basis()})"


# -- operations on FieldElements ---------------------------------------------


def field_create(p: int, m: int, modulus: Sequence[int] | None = None) -> FieldContext:
    return FieldContext(p, m, modulus)


def trace(x: FieldElement, d: int) -> FieldElement:
    """Relative trace of x from F down to the p^d-element subfield."""
    return FieldElement(x.ctx, x.ctx.trace_to(x.index, d))


def frobenius_power(x: FieldElement, j: int) -> FieldElement:
    return x.frobenius(j)


def f_map(a: FieldElement, x: FieldElement, theta: ThetaPower) -> FieldElement:
    """a x^theta - x a^theta."""
    ctx = a.ctx
    return FieldElement(ctx, f_map_idx(ctx, a.index, x.index, theta))


def f_map_idx(ctx: FieldContext, a, x, theta: ThetaPower):
    return ctx.sub(ctx.mul(a, theta(ctx, x)), ctx.mul(x, theta(ctx, a)))


def is_square(x: FieldElement, subfield_degree: int) -> bool:
    ctx = x.ctx
    if ctx.p == 2:
        raise FieldError("is_square is only meaningful for odd p")
    if not ctx.in_subfield(x.index, subfield_degree):
        raise FieldError(f"{x!r} is not in the subfield of degree {subfield_degree}")
    if x.index == 0:
        return True
    return ctx.pow(x.index, (ctx.p**subfield_degree - 1) // 2) == 1


def solve_norm_idx(ctx: FieldContext, theta: ThetaPower, target: int) -> int:
    """Least-index a with a^(theta+1) = target."""
    if target == 0:
        raise FieldError("solve_norm target must be nonzero")
    vals = ctx.pow(ctx.elements(), theta.norm_exponent(ctx.p))
    hits = np.flatnonzero(vals == target)
    hits = hits[hits != 0]
    if not len(hits):
        raise FieldError(f"a^(theta+1) = {target} has no solution")
    return int(hits[0])


def solve_norm(theta: ThetaPower, target: FieldElement) -> FieldElement:
    return FieldElement(target.ctx, solve_norm_idx(target.ctx, theta, target.index))


def find_special_idx(ctx: FieldContext, kind: str, n: int | None = None, r: int | None = None) -> int:
    """Least-index solution of one of the auxiliary defining equations.

    kinds: ``b0`` (Tr_m(b0) = 1, p = 2), ``u0`` (u0 in GF(2^n), Tr_n(u0) = 1),
    ``x0`` (least non-square of GF(p^n)^*, p odd), ``j`` (j in GF(p^(2n)),
    j + j^(p^n) = 1) and ``cQ`` (c in GF(2^r), c + c^(2^(r/2)) = 1, r even).
    """
    p = ctx.p
    allx = ctx.elements()
    if kind == "b0":
        if p != 2:
            raise FieldError("b0 requires p = 2")
        cand = allx[ctx.abs_trace(allx) == 1]
    elif kind == "u0":
        if p != 2 or n is None:
            raise FieldError("u0 requires p = 2 and a subfield degree n")
        sub = ctx.subfield(n)
        cand = sub[ctx.subfield_trace(sub, n) == 1]
    elif kind == "x0":
        if p == 2 or n is None:
            raise FieldError("x0 requires odd p and a subfield degree n")
        sub = ctx.subfield(n)
        sub = sub[sub != 0]
        cand = sub[ctx.pow(sub, (p**n - 1) // 2) != 1]
    elif kind == "j":
        if n is None or ctx.m % (2 * n):
            raise FieldError("j requires GF(p^(2n)) to be a subfield of F")
        sub = ctx.subfield(2 * n)
        cand = sub[ctx.add(sub, ctx.frob(sub, n)) == 1]
    elif kind == "cQ":
        if p != 2 or r is None or r % 2 or ctx.m % r:
            raise FieldError("cQ requires p = 2 and an even subfield degree r")
        sub = ctx.subfield(r)
        cand = sub[ctx.add(sub, ctx.frob(sub, r // 2)) == 1]
    else:
        raise FieldError(f"unknown special element kind {kind!r}")
    if not len(cand):
        raise FieldError(f"no element of kind {kind!r} exists")
    return int(cand[0])


def find_special(ctx: FieldContext, kind: str, n: int | None = None, r: int | None = None) -> FieldElement:
    return FieldElement(ctx, find_special_idx(ctx, kind, n=n, r=r))


def q_form_idx(ctx: FieldContext, x, r: int):
    """The F_2-valued function Q on GF(2^r) (x given as index or array)."""
    if ctx.p != 2:
        raise FieldError("Q is defined for p = 2 only")
    res = x * 0
    if r % 2:
        for i in range((r - 1) // 2 + 1):
            res = res ^ ctx.subfield_trace(ctx.pow(x, 2**i + 1), r)
    else:
        c = find_special_idx(ctx, "cQ", r=r)
        for i in range(r // 2):
            res = res ^ ctx.subfield_trace(ctx.pow(x, 2**i + 1), r)
        res = res ^ ctx.subfield_trace(ctx.mul(c, ctx.pow(x, 2 ** (r // 2) + 1)), r)
    return res


def q_form(x: FieldElement, r: int) -> int:
    if not x.ctx.in_subfield(x.index, r):
        raise FieldError(f"{x!r} is not in GF(2^{r})")
    return int(q_form_idx(x.ctx, x.index, r))


def gcd_pl1(p: int, l: int, m: int) -> int:
    """gcd(p^l + 1, p^m - 1) from the parity of k = m / gcd(l, m)."""
    n = gcd(l, m)
    k = m // n
    if k % 2 == 0:
        return p**n + 1
    return 1 if p == 2 else 2
