"""Assembly of the full irreducible character table.

Three routes, chosen per group:

* VZ groups: linear characters from the dual of G/G', non-linear ones
  ``r * lambda`` on Z(G) (zero elsewhere) for lambda in Lin(Z(G)) not
  trivial on G'.
* family C with eps = 0 and k > 2: lifts from G / Ker(alpha), one alpha per
  kernel among the characters of Z(G) that are nontrivial on G'.
* everything else: lifts from the hyperplane quotients G_v, v in T.

The VZ route is only taken when the group is VZ by the closed case table
*and* by its commutator images; otherwise the hyperplane route is used,
which is valid for every group of this shape because the last coordinate is
central.

Values are stored as canonical coordinate arrays (see
:mod:`suzuki_chars.cyclotomic`): ``values[i, j]`` is chi_i at class j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .cyclotomic import CycloNum, coord_dim, monomial_coords
from .dual import abelian_basis, character_matrix
from .groups import SuzukiGroup
from .profiles import expected_profile  # noqa: F401  (re-exported)
from .quotients import (
    Abelianization,
    HyperplaneQuotient,
    KernelQuotient,
    coset_reps_mod_prime_field,
    in_J2,
    in_J2_by_definition,
    in_S2,
    in_S2_by_definition,
)


@dataclass
class ParameterSets:
    T: list[int]
    J1: list[int]
    J2: list[int]
    S1: list[int]
    S2: list[int]

    def intersections(self) -> tuple[int, int, int, int]:
        """(|S2 & J2|, |S1 & J2|, |S2 & J1|, |S1 & J1|)."""
        s2, j2 = set(self.S2), set(self.J2)
        s1, j1 = set(self.S1), set(self.J1)
        return (len(s2 & j2), len(s1 & j2), len(s2 & j1), len(s1 & j1))


def parameter_sets(G: SuzukiGroup) -> ParameterSets:
    F = G.ctx
    vs = F.elements()[1:]
    j2 = np.asarray(in_J2(G, vs), dtype=bool)
    s2 = np.asarray(in_S2(G, vs), dtype=bool)
    return ParameterSets(
        T=coset_reps_mod_prime_field(G),
        J1=vs[~j2].tolist(), J2=vs[j2].tolist(),
        S1=vs[~s2].tolist(), S2=vs[s2].tolist(),
    )


def parameter_sets_by_definition(G: SuzukiGroup) -> ParameterSets:
    """Same sets from the defining existence conditions (slow cross-check)."""
    vs = list(range(1, G.q))
    j2 = [in_J2_by_definition(G, v) for v in vs]
    s2 = [in_S2_by_definition(G, v) for v in vs]
    return ParameterSets(
        T=coset_reps_mod_prime_field(G),
        J1=[v for v, x in zip(vs, j2) if not x], J2=[v for v, x in zip(vs, j2) if x],
        S1=[v for v, x in zip(vs, s2) if not x], S2=[v for v, x in zip(vs, s2) if x],
    )


@dataclass
class IrrChar:
    degree: int
    values: list[CycloNum]  # one per class, in class order
    provenance: dict


@dataclass
class CharacterTable:
    group: SuzukiGroup
    class_reps: np.ndarray  # (k, ncoords)
    class_sizes: np.ndarray  # (k,)
    values: np.ndarray  # (k, k, D) canonical coordinates
    provenance: list[dict] = field(default_factory=list)

    @property
    def N(self) -> int:
        return self.group.root_order

    @property
    def degrees(self) -> np.ndarray:
        return self.values[:, 0, 0].astype(np.int64)

    @property
    def num_chars(self) -> int:
        return self.values.shape[0]

    @property
    def num_classes(self) -> int:
        return self.values.shape[1]

    def value(self, i: int, j: int) -> CycloNum:
        return CycloNum.from_coords(self.N, self.values[i, j].tolist())

    def character(self, i: int) -> IrrChar:
        vals = [CycloNum.from_coords(self.N, c) for c in self.values[i].tolist()]
        prov = self.provenance[i] if i < len(self.provenance) else {}
        return IrrChar(int(self.degrees[i]), vals, prov)

    @property
    def classes(self):
        return self.group.conjugacy_classes()

    def profile(self) -> list[tuple[int, int]]:
        d, c = np.unique(self.degrees, return_counts=True)
        return [(int(x), int(y)) for x, y in zip(d, c)]


class _Builder:
    """Collects characters as (amplitude, exponent) blocks."""

    def __init__(self, G: SuzukiGroup):
        self.G = G
        self.reps = G.class_reps
        self.cols = tuple(self.reps[:, i] for i in range(G.ncoords))
        self.amps: list[np.ndarray] = []
        self.exps: list[np.ndarray] = []
        self.prov: list[dict] = []

    def add(self, amp, exp, prov):
        self.amps.append(np.asarray(amp, dtype=np.int64))
        self.exps.append(np.asarray(exp, dtype=np.int64))
        self.prov.extend(prov)

    def finish(self) -> CharacterTable:
        G = self.G
        amp = np.concatenate(self.amps)
        exp = np.concatenate(self.exps)
        top = int(amp.max()) if amp.size else 1
        dtype = np.int16 if top < 2**15 else np.int32 if top < 2**31 else np.int64
        N, D = G.root_order, coord_dim(G.root_order)
        values = np.empty(amp.shape + (D,), dtype=dtype)
        step = max(1, 2**22 // max(1, amp.shape[1]))
        for s in range(0, amp.shape[0], step):
            values[s:s + step] = monomial_coords(N, amp[s:s + step], exp[s:s + step])
        return CharacterTable(G, self.reps, G.class_sizes, values, self.prov)


def _lift_center_chars(b: _Builder, Q, central_rank, zidx_of, label: dict):
    """Lift the VZ characters of a quotient Q with |Q'| = p (or Q abelian)."""
    G = b.G
    N = G.root_order
    Z = Q.center_elements()
    basis = abelian_basis(Z, Q.mul, Q.identity(), G.p)
    M = character_matrix(basis, N)
    z = Q.derived_generator()
    keep = np.flatnonzero(M[:, basis.index[z]] != 0)
    ratio = Q.order // len(Z)
    r = isqrt(ratio)
    if r * r != ratio:
        raise AssertionError(f"|Q/Z(Q)| = {ratio} is not a square")
    central, zidx = zidx_of(central_rank)
    exp = np.where(central[None, :], M[keep][:, np.where(central, zidx, 0)], 0)
    amp = np.broadcast_to(np.where(central, r, 0), exp.shape)
    b.add(amp, exp, [dict(label, **{"lambda": int(i)}) for i in keep])


def _central_rank(mask: np.ndarray) -> np.ndarray:
    rank = np.full(len(mask), -1, dtype=np.int64)
    rank[mask] = np.arange(int(mask.sum()))
    return rank


def _linear_head_chars(b: _Builder):
    """psi_v(a) (family A) or psi_v(a) psi_w(b): the characters of G / last coordinate."""
    G = b.G
    F = G.ctx
    scale = G.root_order // G.p
    allv = F.elements()
    ta = F.abs_trace(F.mul(allv[:, None], b.cols[0][None, :]))
    if G.ncoords == 2:
        exp = ta
        prov = [{"kind": "linear", "v": int(v)} for v in allv]
    else:
        tb = F.abs_trace(F.mul(allv[:, None], b.cols[1][None, :]))
        exp = ((ta[:, None, :] + tb[None, :, :]) % G.p).reshape(G.q * G.q, -1)
        prov = [{"kind": "linear", "v": int(v), "w": int(w)} for v in allv for w in allv]
    b.add(np.ones_like(exp), exp * scale, prov)


def _vz_table(b: _Builder):
    G = b.G
    N = G.root_order
    q = G.q
    nh = G.ncoords - 1
    # linear: dual of G/G'
    ab = Abelianization(G)
    els = ab.elements()
    basis = abelian_basis(els, ab.mul, ab.identity(), G.p)
    M = character_matrix(basis, N)
    crank = np.full(q, -1, dtype=np.int64)
    crank[np.array(ab.reps, dtype=np.int64)] = np.arange(len(ab.reps))
    proj = ab.project(b.cols)
    hcode = G.encode(tuple(proj[:-1]) + (0,)) // q
    idx = hcode * len(ab.reps) + crank[proj[-1]]
    exp = M[:, idx]
    b.add(np.ones_like(exp), exp, [{"kind": "linear", "beta": i} for i in range(len(M))])
    # non-linear: lambda on Z(G), nontrivial on G'
    zheads = G.center_heads_structural()
    Z = []
    for hc in zheads:
        head = G.decode(int(hc) * q)[:-1]
        Z.extend(tuple(int(x) for x in head) + (c,) for c in range(q))
    zb = abelian_basis(Z, G.mul, G.identity(), G.p)
    MZ = character_matrix(zb, N)
    gens = [zb.index[(0,) * nh + (x,)] for x in ab.derived.basis()]
    keep = np.flatnonzero((MZ[:, gens] != 0).any(axis=1))
    ratio = G.order // len(Z)
    r = isqrt(ratio)
    if r * r != ratio:
        raise AssertionError(f"|G/Z(G)| = {ratio} is not a square")
    mask = np.zeros(q**nh, dtype=bool)
    mask[zheads] = True
    rank = _central_rank(mask)
    hcode = G.encode(tuple(b.cols[:-1]) + (0,)) // q
    central = mask[hcode]
    zidx = np.where(central, rank[hcode] * q + b.cols[-1], 0)
    exp = np.where(central[None, :], MZ[keep][:, zidx], 0)
    amp = np.broadcast_to(np.where(central, r, 0), exp.shape)
    b.add(amp, exp, [{"kind": "vz", "lambda": int(i)} for i in keep])


def _hyperplane_table(b: _Builder):
    G = b.G
    _linear_head_chars(b)
    for v in coset_reps_mod_prime_field(G):
        Q = HyperplaneQuotient(G, v)
        proj = Q.project(b.cols)
        hcode = Q.head_code(proj[:-1])

        def zidx_of(rank, hcode=hcode, proj=proj, Q=Q):
            central = Q.center_mask[hcode]
            return central, rank[hcode] * Q.d + proj[-1]

        _lift_center_chars(b, Q, _central_rank(Q.center_mask), zidx_of, {"kind": "lifted", "v": int(v)})


def kernel_classes(G: SuzukiGroup) -> tuple[np.ndarray, list[int]]:
    """Characters of Z(C) = {(0,b,c)} (rows over (b,c), b-major) and the
    indices of one representative per kernel among those nontrivial on G'."""
    F, q = G.ctx, G.q
    els = [(b, c) for b in range(q) for c in range(q)]

    def mulz(x, y):
        return (F.add(x[0], y[0]), F.add(F.add(x[1], y[1]), F.mul(x[0], y[0])))

    basis = abelian_basis(els, mulz, (0, 0), G.p)
    M = character_matrix(basis, G.root_order)
    seen = set()
    reps = []
    for i in np.flatnonzero(M[:, :q].any(axis=1)):
        key = (M[i] == 0).tobytes()
        if key not in seen:
            seen.add(key)
            reps.append(int(i))
    return M, reps


def _kernel_table(b: _Builder):
    G = b.G
    q = G.q
    _linear_head_chars(b)
    M, reps = kernel_classes(G)
    for ai in reps:
        ind = M[ai].reshape(q, q)
        Q = KernelQuotient(G, ind)
        proj = Q.project(b.cols)

        def zidx_of(rank, proj=proj, Q=Q):
            central = Q.center_mask[proj[0]]
            return central, rank[proj[0]] * Q.d + proj[1]

        _lift_center_chars(b, Q, _central_rank(Q.center_mask), zidx_of, {"kind": "lifted", "alpha": ai})


def route(G: SuzukiGroup) -> str:
    if G.vz and G.is_vz_structural():
        return "vz"
    if G.family == "C" and G.eps == 0:
        return "kernel"
    return "hyperplane"


def character_table(G: SuzukiGroup) -> CharacterTable:
    b = _Builder(G)
    {"vz": _vz_table, "kernel": _kernel_table, "hyperplane": _hyperplane_table}[route(G)](b)
    return b.finish()
