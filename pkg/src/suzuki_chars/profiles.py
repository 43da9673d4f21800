"""Closed-form degree/count rows of the irreducible characters.

These are the published degree and multiplicity rows, kept apart from the
construction so the verifier can compare a finished table against them
without touching the construction code.
"""

from __future__ import annotations

from .groups import SuzukiGroup


def expected_profile(G: SuzukiGroup) -> list[tuple[int, int]]:
    """Rows (degree, count), linear row first, in table order."""
    p, m, n, k = G.p, G.m, G.n, G.k
    P = lambda e: p**e  # noqa: E731
    fam = G.family
    if fam == "A":
        if k == 2:
            rows = [(1, P(m + n)), (P(n), P(m) - P(n))]
        elif k % 2:
            rows = [(1, P(m)), (P((m - n) // 2), P(n) * (P(m) - 1))]
        else:
            g = P(n) + 1
            rows = [(1, P(m)), (P(m // 2), P(n) * (P(m) - 1) // g),
                    (P((m - 2 * n) // 2), P(2 * n) * (P(m) - 1) // g)]
    elif G.eps:
        rows = [(1, P(2 * m)), (P(m), P(m) - 1)]
    elif k == 2 and fam == "B":
        rows = [(1, P(2 * m + n)), (P(m), P(m) - P(n))]
    elif k == 2:
        rows = [(1, P(2 * m + n)), (P(m // 2), P(m) * (P(m) - P(n)))]
    elif fam == "B":
        if k % 2:
            rows = [(1, P(2 * m)), (P(m - n), P(2 * n) * (P(m) - 1))]
        else:
            g = P(n) + 1
            rows = [(1, P(2 * m)), (P(m), P(n) * (P(m) - 1) // g),
                    (P(m - 2 * n), P(4 * n) * (P(m) - 1) // g)]
    elif fam == "C":
        if k % 2:
            rows = [(1, P(2 * m)), (P((m - n) // 2), P(m + n) * (P(m) - 1))]
        else:
            g = P(n) + 1
            rows = [(1, P(2 * m)), (P(m // 2), P(m + n) * (P(m) - 1) // g),
                    (P((m - 2 * n) // 2), P(m + 2 * n) * (P(m) - 1) // g)]
    else:
        if k % 2:
            rows = [(1, P(2 * m)), (P(m - n), P(2 * n) * (P(m) - 1))]
        elif (k // 2) % 2:
            g = P(n) + 1
            rows = [(1, P(2 * m)), (P(m - n), P(3 * n) * (P(m) - 1) // g),
                    (P(m - 2 * n), P(4 * n) * (P(m) - 1) // g)]
        else:
            g = (P(n) + 1) * (P(2 * n) + 1)
            if p == 2:
                counts = [P(3 * n), P(4 * n), P(5 * n), P(6 * n)]
            else:
                counts = [P(3 * n) + 1, (P(2 * n) - 1) * P(2 * n), (P(n) - 1) * P(4 * n), 2 * P(6 * n)]
            degs = [P(m), P(m - n), P(m - 2 * n), P(m - 3 * n)]
            rows = [(1, P(2 * m))] + [(d, c * (P(m) - 1) // g) for d, c in zip(degs, counts)]
    total = sum(c * d * d for d, c in rows)
    if total != G.order:
        raise AssertionError(f"profile rows of {G.describe()} sum to {total}, not |G| = {G.order}")
    return rows


def profile_multiset(rows) -> dict[int, int]:
    out: dict[int, int] = {}
    for d, c in rows:
        out[d] = out.get(d, 0) + c
    return out
