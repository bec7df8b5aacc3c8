"""Distance quantities for pairs of group tables.

Covers the pointwise Hamming distance with its per-row profile, the
distance-from-homomorphism count for arbitrary maps, the closed-form
stability ceiling delta0, the light-row isomorphism reconstruction, the
transposition minimum, and the analytic lower-bound machinery used to
exclude large per-row minima from the exhaustive search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    HypothesisNotMet,
    InconsistentFactorizations,
    InputError,
    MTooSmall,
    NotPrime,
    OrderTooSmall,
)
from .group_core import (
    GroupTable,
    Permutation,
    is_dihedral_twice_odd,
    is_prime,
)

MapLike = Union[Permutation, Sequence[int]]


def _images(f: MapLike) -> Sequence[int]:
    return f.image if isinstance(f, Permutation) else f


@dataclass(frozen=True)
class DistanceProfile:
    """Hamming distance between two tables, broken down by row.

    m (the minimum row distance over non-identity rows) is only defined
    when the two identities coincide; it is None otherwise.
    """

    total: int
    row: tuple[int, ...]
    m: Optional[int]
    agreement: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.row)


def dist(a: GroupTable, b: GroupTable) -> DistanceProfile:
    if a.n != b.n:
        raise DimensionMismatch(f"orders differ: {a.n} vs {b.n}")
    row = tuple(
        sum(x != y for x, y in zip(ra, rb)) for ra, rb in zip(a.cells, b.cells)
    )
    m = None
    if a.identity == b.identity and a.n > 1:
        m = min(d for g, d in enumerate(row) if g != a.identity)
    elif a.identity == b.identity:
        m = 0
    agreement = tuple(g for g, d in enumerate(row) if d == 0)
    return DistanceProfile(total=sum(row), row=row, m=m, agreement=agreement)


def hom_distance(f: MapLike, h: GroupTable, k: GroupTable) -> int:
    """Number of pairs (a, b) with f(a.b) != f(a)*f(b); f need not be bijective."""
    img = _images(f)
    if len(img) != h.n:
        raise DimensionMismatch(f"map has {len(img)} entries, table order {h.n}")
    for v in img:
        if not 0 <= v < k.n:
            raise InputError(f"map image {v} outside 0..{k.n - 1}")
    count = 0
    for a in range(h.n):
        fa_row = k.cells[img[a]]
        h_row = h.cells[a]
        for b in range(h.n):
            if img[h_row[b]] != fa_row[img[b]]:
                count += 1
    return count


def delta0(t: GroupTable) -> int:
    """The closed-form stability ceiling: 6n-18 / 6n-20 / 6n-24 by structure."""
    if t.n < 5:
        raise OrderTooSmall(f"delta0 requires order >= 5, got {t.n}")
    if t.n % 2 == 1:
        return 6 * t.n - 18
    if is_dihedral_twice_odd(t):
        return 6 * t.n - 20
    return 6 * t.n - 24


def light_set(a: GroupTable, b: GroupTable) -> list[int]:
    """Rows where the tables nearly agree: {g : d(g) < n/3}, strict."""
    prof = dist(a, b)
    return [g for g, d in enumerate(prof.row) if 3 * d < a.n]


def reconstruct_isomorphism(a: GroupTable, b: GroupTable) -> Permutation:
    """Rebuild the isomorphism fixing the light set pointwise.

    Requires |K| > 3n/4 for K = {g : d(g) < n/3}.  Every factorization
    g = x.y with x, y in K is checked for consistency rather than trusted;
    an inconsistency on valid group inputs indicates a bug.
    """
    n = a.n
    prof = dist(a, b)
    K = [g for g, d in enumerate(prof.row) if 3 * d < n]
    if 4 * len(K) <= 3 * n:
        raise HypothesisNotMet(f"|K| = {len(K)} <= 3n/4 = {3 * n / 4:g}")
    f = [-1] * n
    for x in K:
        arow, brow = a.cells[x], b.cells[x]
        for y in K:
            g, v = arow[y], brow[y]
            if f[g] == -1:
                f[g] = v
            elif f[g] != v:
                raise InconsistentFactorizations(
                    f"element {g}: factorizations disagree ({f[g]} vs {v})"
                )
    for g in range(n):
        if f[g] == -1:
            raise InconsistentFactorizations(
                f"element {g} has no factorization inside the light set"
            )
    for x in K:
        if f[x] != x:
            raise InconsistentFactorizations(f"light element {x} moved to {f[x]}")
    if sorted(f) != list(range(n)):
        raise InconsistentFactorizations("reconstructed map is not a bijection")
    perm = Permutation(tuple(f))
    if hom_distance(perm, a, b) != 0:
        raise InconsistentFactorizations("reconstructed map is not an isomorphism")
    for g, d in enumerate(prof.row):
        if 3 * d > 2 * n and f[g] == g:
            raise InconsistentFactorizations(f"heavy row {g} (d={d}) is fixed")
    return perm


def min_transposition_mf(t: GroupTable) -> tuple[int, Permutation]:
    """Exhaustive minimum of the hom-distance over all transpositions."""
    if t.n < 5:
        raise OrderTooSmall(f"need order >= 5, got {t.n}")
    cells = np.asarray(t.cells, dtype=np.int64)
    best: Optional[int] = None
    witness: Optional[tuple[int, int]] = None
    perm = np.arange(t.n)
    for u in range(t.n):
        for v in range(u + 1, t.n):
            perm[u], perm[v] = v, u
            mf = int(np.count_nonzero(perm[cells] != cells[np.ix_(perm, perm)]))
            perm[u], perm[v] = u, v
            if best is None or mf < best:
                best, witness = mf, (u, v)
    assert best is not None and witness is not None
    return best, Permutation.transposition(t.n, *witness)


def estim1_bound(n: int, m: int) -> int:
    """ceil(n/4)*ceil(n/3) + (n - ceil(n/4) - 1)*m."""
    q4, q3 = math.ceil(n / 4), math.ceil(n / 3)
    return q4 * q3 + (n - q4 - 1) * m


def estim2_bounds(n: int, m: int, l: int) -> tuple[int, Optional[int]]:
    """The two lower bounds from an l-element subset Y with Y and h.Y disjoint.

    The second bound only applies when ceil(n/4) - 2l >= 0; None otherwise.
    """
    if not 0 <= l <= m:
        raise InputError(f"need 0 <= l <= m, got l={l}, m={m}")
    bound1 = l * (n - m) + (n - 2 * l - 1) * m
    q4, q3 = math.ceil(n / 4), math.ceil(n / 3)
    bound2 = None
    if q4 - 2 * l >= 0:
        bound2 = l * (n - m) + (q4 - 2 * l) * q3 + (n - q4 - 1) * m
    return bound1, bound2


def max_disjoint_subset(
    t: GroupTable, h: int, disagree: Sequence[int]
) -> list[int]:
    """Largest Y within `disagree` with Y and h.Y disjoint; exhaustive."""
    elems = sorted(set(disagree))
    for x in elems:
        if not 0 <= x < t.n:
            raise InputError(f"element {x} outside 0..{t.n - 1}")
    hrow = t.cells[h]
    for size in range(len(elems), 0, -1):
        for sub in combinations(elems, size):
            shifted = {hrow[y] for y in sub}
            if shifted.isdisjoint(sub):
                return list(sub)
    return []


@dataclass(frozen=True)
class BoundReport:
    """Outcome of the analytic exclusion arithmetic for one (order, m) pair."""

    p_or_n: int
    m: int
    bounds: tuple[tuple[str, int], ...]
    best: int
    excluded: bool

    def to_dict(self) -> dict:
        return {
            "p_or_n": self.p_or_n,
            "m": self.m,
            "bounds": [{"name": name, "value": value} for name, value in self.bounds],
            "best": self.best,
            "excluded": self.excluded,
            "threshold": 6 * self.p_or_n - 18,
        }


# Guaranteed size of a disjoint subset Y per minimum row distance m, as used
# by the exclusion arithmetic: the power-position argument yields 3 disjoint
# elements once m >= 4 (generic case) and 2 for m = 3.
_GUARANTEED_L = {3: 2, 4: 3}


def analytic_lower_bound(p: int, m: int) -> BoundReport:
    """Aggregate every applicable lower bound on dist for prime order p.

    excluded means the best bound already reaches 6p-18, so no exhaustive
    search is needed for this m.
    """
    if not is_prime(p) or p <= 7:
        raise NotPrime(f"need a prime greater than 7, got {p}")
    if m < 3:
        raise MTooSmall(f"m = {m} cannot occur (rows differ in 0 or >= 3 places)")
    l = _GUARANTEED_L.get(m, 3)
    bound1, bound2 = estim2_bounds(p, m, l)
    bounds: list[tuple[str, int]] = [("row_floor", m * (p - 1))]
    bounds.append((f"disjoint_pairs_l{l}", bound1))
    if bound2 is not None:
        bounds.append((f"disjoint_pairs_quarter_l{l}", bound2))
    best = max(v for _, v in bounds)
    return BoundReport(
        p_or_n=p,
        m=m,
        bounds=tuple(bounds),
        best=best,
        excluded=best >= 6 * p - 18,
    )


@dataclass(frozen=True)
class LemmaViolation:
    name: str
    witness: dict

    def to_dict(self) -> dict:
        return {"name": self.name, "witness": self.witness}


def check_lemmas(a: GroupTable, b: GroupTable) -> list[LemmaViolation]:
    """Test the proved row statements on a concrete pair.

    Checks: the triple row-sum inequality at every disagreeing cell, the
    impossibility of row distance 2 at odd order (and 1 at any order), and
    identity coincidence for isomorphic pairs with total <= 6n-18 at n > 7.
    A non-empty result on valid group inputs indicates an implementation bug.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"orders differ: {a.n} vs {b.n}")
    n = a.n
    prof = dist(a, b)
    out: list[LemmaViolation] = []
    for g, d in enumerate(prof.row):
        if d == 1:
            out.append(LemmaViolation("row_distance_one", {"g": g}))
        if d == 2 and n % 2 == 1:
            out.append(LemmaViolation("row_distance_two", {"g": g}))
    for x in range(n):
        if prof.row[x] == 0:
            continue
        arow, brow = a.cells[x], b.cells[x]
        for y in range(n):
            if arow[y] != brow[y]:
                s = prof.row[x] + prof.row[y] + prof.row[arow[y]]
                if s < n:
                    out.append(
                        LemmaViolation(
                            "row_triple_sum",
                            {"a": x, "b": y, "ab": arow[y], "sum": s},
                        )
                    )
    if n > 7 and prof.total <= 6 * n - 18 and a.identity != b.identity:
        isomorphic = False
        if is_prime(n):
            isomorphic = True
        elif n <= 8:
            from .group_core import are_isomorphic

            isomorphic = are_isomorphic(a, b)[0]
        if isomorphic:
            out.append(
                LemmaViolation(
                    "identity_mismatch",
                    {
                        "identity_a": a.identity,
                        "identity_b": b.identity,
                        "total": prof.total,
                    },
                )
            )
    return out
