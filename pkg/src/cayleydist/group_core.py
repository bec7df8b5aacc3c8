"""Finite-group Cayley tables on the element set {0, ..., n-1}.

Tables are immutable dataclasses; every constructor either builds a table
that is a group by construction (make_group, transport) or runs the full
validation pass (validate_table).  Identity is located by scan -- ingested
tables need not place it at 0.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence

from .errors import (
    DimensionMismatch,
    InputError,
    InvalidPermutation,
    NoIdentity,
    NotAssociative,
    NotLatin,
    OrderTooLarge,
)

DEFAULT_MAX_BRUTE_ORDER = 8


def brute_order_cap() -> int:
    """Order cap for brute-force routines; CAYLEY_MAX_ORDER overrides."""
    raw = os.environ.get("CAYLEY_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_BRUTE_ORDER
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"CAYLEY_MAX_ORDER is not an integer: {raw!r}") from exc


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0, ..., n-1}, stored as its image tuple."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        if sorted(self.image) != list(range(n)):
            raise InvalidPermutation(f"not a bijection of 0..{n - 1}: {self.image}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.image):
            inv[v] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self . other)(x) = self(other(x))."""
        if self.n != other.n:
            raise DimensionMismatch(f"compose: {self.n} vs {other.n}")
        return Permutation(tuple(self.image[v] for v in other.image))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.image[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.image[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        flips = sum(len(c) - 1 for c in self.cycles())
        return -1 if flips % 2 else 1

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.image))

    def cycle_notation(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "id"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        return cls.from_cycles(n, [(a, b)])

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        image = list(range(n))
        touched: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < n:
                    raise InvalidPermutation(f"cycle entry {x} outside 0..{n - 1}")
                if x in touched:
                    raise InvalidPermutation(f"element {x} appears in two cycles")
                touched.add(x)
            for i, x in enumerate(cyc):
                image[x] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(image))

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "Permutation":
        """Parse either an image line "0 1 4 5 2 3 6" or cycles "(2 3)(5 7)".

        Cycle entries may be separated by spaces or commas; cycle notation
        requires n to be given.
        """
        text = text.strip()
        if not text:
            raise InvalidPermutation("empty permutation")
        if text.startswith("("):
            if n is None:
                raise InvalidPermutation("cycle notation needs the order n")
            cycles = []
            for body in re.findall(r"\(([^()]*)\)", text):
                entries = [tok for tok in re.split(r"[,\s]+", body.strip()) if tok]
                if not entries:
                    raise InvalidPermutation(f"empty cycle in {text!r}")
                try:
                    cycles.append(tuple(int(tok) for tok in entries))
                except ValueError as exc:
                    raise InvalidPermutation(f"bad cycle entry in {text!r}") from exc
            leftover = re.sub(r"\([^()]*\)", "", text).strip()
            if leftover:
                raise InvalidPermutation(f"stray token {leftover!r} in cycles")
            return cls.from_cycles(n, cycles)
        if text == "id":
            if n is None:
                raise InvalidPermutation("'id' needs the order n")
            return cls.identity(n)
        try:
            image = tuple(int(tok) for tok in re.split(r"[,\s]+", text) if tok)
        except ValueError as exc:
            raise InvalidPermutation(f"bad image entry in {text!r}") from exc
        if n is not None and len(image) != n:
            raise InvalidPermutation(f"expected {n} entries, got {len(image)}")
        return cls(image)


@dataclass(frozen=True)
class GroupTable:
    """A validated n x n Cayley table; cells[a][b] = a * b."""

    n: int
    cells: tuple[tuple[int, ...], ...]
    identity: int

    def mul(self, a: int, b: int) -> int:
        return self.cells[a][b]

    def row(self, a: int) -> tuple[int, ...]:
        return self.cells[a]

    def inverse(self, a: int) -> int:
        return self.cells[a].index(self.identity)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.cells[x][g]
            k += 1
        return k

    def order_profile(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_order(g) for g in range(self.n)))

    def is_abelian(self) -> bool:
        return all(
            self.cells[a][b] == self.cells[b][a]
            for a in range(self.n)
            for b in range(a + 1, self.n)
        )

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines.extend(" ".join(str(v) for v in row) for row in self.cells)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GroupTable":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise InputError("empty table file")
        try:
            n = int(lines[0].strip())
        except ValueError as exc:
            raise InputError(f"first line must be the order n, got {lines[0]!r}") from exc
        if len(lines) != n + 1:
            raise InputError(f"expected {n} table rows, got {len(lines) - 1}")
        cells = []
        for idx, ln in enumerate(lines[1:]):
            try:
                row = [int(tok) for tok in ln.split()]
            except ValueError as exc:
                raise InputError(f"row {idx}: non-integer token in {ln!r}") from exc
            if len(row) != n:
                raise InputError(f"row {idx}: expected {n} entries, got {len(row)}")
            cells.append(row)
        return validate_table(cells)


def validate_table(cells: Sequence[Sequence[int]]) -> GroupTable:
    """Check the Latin property, a unique two-sided identity, associativity.

    Raises NotLatin / NoIdentity / NotAssociative naming the first offender.
    """
    n = len(cells)
    if n == 0:
        raise InputError("empty table")
    grid = tuple(tuple(int(v) for v in row) for row in cells)
    for a, row in enumerate(grid):
        if len(row) != n:
            raise InputError(f"row {a} has {len(row)} entries, expected {n}")
        for b, v in enumerate(row):
            if not 0 <= v < n:
                raise InputError(f"cell ({a},{b}) = {v} outside 0..{n - 1}")
    for a, row in enumerate(grid):
        seen = [-1] * n
        for b, v in enumerate(row):
            if seen[v] >= 0:
                raise NotLatin(f"row {a} repeats value {v} at columns {seen[v]} and {b}")
            seen[v] = b
    for b in range(n):
        seen = [-1] * n
        for a in range(n):
            v = grid[a][b]
            if seen[v] >= 0:
                raise NotLatin(f"column {b} repeats value {v} at rows {seen[v]} and {a}")
            seen[v] = a
    ident = tuple(range(n))
    e = None
    for a in range(n):
        if grid[a] == ident and all(grid[b][a] == b for b in range(n)):
            e = a
            break
    if e is None:
        raise NoIdentity("no two-sided identity element")
    for a in range(n):
        for b in range(n):
            ab = grid[a][b]
            row_a = grid[a]
            for c in range(n):
                if grid[ab][c] != row_a[grid[b][c]]:
                    raise NotAssociative(f"(a,b,c)=({a},{b},{c}): ({a}*{b})*{c} != {a}*({b}*{c})")
    return GroupTable(n=n, cells=grid, identity=e)


@dataclass(frozen=True)
class GroupKind:
    """Catalog tag for the group families used by the small-order tests."""

    family: str
    param: int = 0
    factors: tuple["GroupKind", ...] = ()

    @staticmethod
    def cyclic(n: int) -> "GroupKind":
        if n < 1:
            raise InputError(f"cyclic order must be >= 1, got {n}")
        return GroupKind("cyclic", n)

    @staticmethod
    def dihedral(k: int) -> "GroupKind":
        if k < 1:
            raise InputError(f"dihedral parameter must be >= 1, got {k}")
        return GroupKind("dihedral", k)

    @staticmethod
    def elementary_abelian(k: int) -> "GroupKind":
        if k < 0:
            raise InputError(f"elementary-abelian exponent must be >= 0, got {k}")
        return GroupKind("elementary_abelian", k)

    @staticmethod
    def quaternion8() -> "GroupKind":
        return GroupKind("quaternion8")

    @staticmethod
    def direct_product(a: "GroupKind", b: "GroupKind") -> "GroupKind":
        return GroupKind("direct_product", factors=(a, b))

    @property
    def order(self) -> int:
        if self.family == "cyclic":
            return self.param
        if self.family == "dihedral":
            return 2 * self.param
        if self.family == "elementary_abelian":
            return 2 ** self.param
        if self.family == "quaternion8":
            return 8
        if self.family == "direct_product":
            return self.factors[0].order * self.factors[1].order
        raise InputError(f"unknown family {self.family!r}")

    def label(self) -> str:
        if self.family == "cyclic":
            return f"cyclic:{self.param}"
        if self.family == "dihedral":
            return f"dihedral:{self.param}"
        if self.family == "elementary_abelian":
            return f"e2:{self.param}"
        if self.family == "quaternion8":
            return "q8"
        return "*".join(f.label() for f in self.factors)

    def __str__(self) -> str:
        return self.label()

    @classmethod
    def parse(cls, text: str) -> "GroupKind":
        parts = [p.strip() for p in text.strip().split("*")]
        kinds = [cls._parse_atom(p) for p in parts]
        return reduce(cls.direct_product, kinds)

    @classmethod
    def _parse_atom(cls, text: str) -> "GroupKind":
        if text == "q8":
            return cls.quaternion8()
        m = re.fullmatch(r"(cyclic|dihedral|e2):(\d+)", text)
        if not m:
            raise InputError(f"unknown group kind {text!r} (want cyclic:N, dihedral:K, e2:K, q8)")
        k = int(m.group(2))
        if m.group(1) == "cyclic":
            return cls.cyclic(k)
        if m.group(1) == "dihedral":
            return cls.dihedral(k)
        return cls.elementary_abelian(k)


def make_group(kind: GroupKind) -> GroupTable:
    """Canonical table for a catalog kind; identity is always element 0."""
    if kind.family == "cyclic":
        n = kind.param
        cells = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return GroupTable(n=n, cells=cells, identity=0)
    if kind.family == "dihedral":
        # 0..k-1 are rotations r^i, k..2k-1 are reflections r^i s.
        k = kind.param
        n = 2 * k

        def mul(a: int, b: int) -> int:
            ai, ar = a % k, a >= k
            bi, br = b % k, b >= k
            ci = (ai - bi) % k if ar else (ai + bi) % k
            return ci + (k if ar != br else 0)

        cells = tuple(tuple(mul(a, b) for b in range(n)) for a in range(n))
        return GroupTable(n=n, cells=cells, identity=0)
    if kind.family == "elementary_abelian":
        n = 2 ** kind.param
        cells = tuple(tuple(a ^ b for b in range(n)) for a in range(n))
        return GroupTable(n=n, cells=cells, identity=0)
    if kind.family == "quaternion8":
        # index = i + 4j for a^i b^j with a^4 = 1, b^2 = a^2, b a b^-1 = a^-1.
        def mul(a: int, b: int) -> int:
            i, j = a % 4, a // 4
            k2, l = b % 4, b // 4
            exp = (i + (-k2 if j else k2) + (2 if j and l else 0)) % 4
            return exp + 4 * ((j + l) % 2)

        cells = tuple(tuple(mul(a, b) for b in range(8)) for a in range(8))
        return GroupTable(n=8, cells=cells, identity=0)
    if kind.family == "direct_product":
        t1 = make_group(kind.factors[0])
        t2 = make_group(kind.factors[1])
        n1, n2 = t1.n, t2.n
        n = n1 * n2

        def mul(a: int, b: int) -> int:
            return t1.cells[a // n2][b // n2] * n2 + t2.cells[a % n2][b % n2]

        cells = tuple(tuple(mul(a, b) for b in range(n)) for a in range(n))
        return GroupTable(n=n, cells=cells, identity=0)
    raise InputError(f"unknown family {kind.family!r}")


def transport(t: GroupTable, f: Permutation) -> GroupTable:
    """The table with a * b = f(f^-1(a) . f^-1(b)); f becomes an isomorphism."""
    if f.n != t.n:
        raise DimensionMismatch(f"table order {t.n} vs permutation size {f.n}")
    finv = f.inverse().image
    img = f.image
    cells = tuple(
        tuple(img[t.cells[finv[a]][finv[b]]] for b in range(t.n)) for a in range(t.n)
    )
    return GroupTable(n=t.n, cells=cells, identity=img[t.identity])


def power(t: GroupTable, g: int, k: int) -> int:
    """g composed with itself k times; the identity for k = 0."""
    if not 0 <= g < t.n:
        raise InputError(f"element {g} outside 0..{t.n - 1}")
    if k < 0:
        raise InputError(f"exponent must be >= 0, got {k}")
    x = t.identity
    for _ in range(k):
        x = t.cells[x][g]
    return x


def _closure(t: GroupTable, seed: set[int]) -> set[int]:
    out = set(seed)
    frontier = list(seed)
    while frontier:
        x = frontier.pop()
        for y in tuple(out):
            for z in (t.cells[x][y], t.cells[y][x]):
                if z not in out:
                    out.add(z)
                    frontier.append(z)
    return out


def generating_sequence(t: GroupTable) -> list[int]:
    """A greedy generating sequence: smallest element outside the span, repeat."""
    span = {t.identity}
    gens: list[int] = []
    for x in range(t.n):
        if x not in span:
            gens.append(x)
            span = _closure(t, span | {x})
    return gens


def _hom_from_generators(
    a: GroupTable, b: GroupTable, gens: Sequence[int], images: Sequence[int]
) -> Optional[Permutation]:
    """Extend gen -> image to a map by closure; None on any conflict."""
    f = [-1] * a.n
    f[a.identity] = b.identity
    frontier = [a.identity]
    while frontier:
        x = frontier.pop()
        fx = f[x]
        for g, im in zip(gens, images):
            y = a.cells[x][g]
            fy = b.cells[fx][im]
            if f[y] == -1:
                f[y] = fy
                frontier.append(y)
            elif f[y] != fy:
                return None
    if -1 in f or len(set(f)) != a.n:
        return None
    for x in range(a.n):
        fx = f[x]
        for y in range(a.n):
            if f[a.cells[x][y]] != b.cells[fx][f[y]]:
                return None
    return Permutation(tuple(f))


def are_isomorphic(
    a: GroupTable, b: GroupTable, cap: Optional[int] = None
) -> tuple[bool, Optional[Permutation]]:
    """Exhaustive generator-image isomorphism search; meant for small orders."""
    if cap is None:
        cap = brute_order_cap()
    if a.n != b.n:
        return False, None
    if a.n > cap:
        raise OrderTooLarge(f"isomorphism search capped at order {cap}, got {a.n}")
    if a.order_profile() != b.order_profile():
        return False, None
    gens = generating_sequence(a)
    if not gens:
        return True, Permutation.identity(a.n)
    orders = [a.element_order(g) for g in gens]
    candidates = [
        [x for x in range(b.n) if b.element_order(x) == o] for o in orders
    ]
    for images in itertools.product(*candidates):
        f = _hom_from_generators(a, b, gens, images)
        if f is not None:
            return True, f
    return False, None


def is_dihedral_twice_odd(t: GroupTable) -> bool:
    """True iff |G| = 2k with k odd >= 3 and G is dihedral of order 2k."""
    if t.n % 2 != 0:
        return False
    k = t.n // 2
    if k % 2 == 0 or k < 3:
        return False
    for r in range(t.n):
        if t.element_order(r) != k:
            continue
        rot = {power(t, r, i) for i in range(k)}
        r_inv = t.inverse(r)
        for s in range(t.n):
            if s in rot:
                continue
            if t.cells[s][s] != t.identity:
                continue
            if t.cells[t.cells[s][r]][s] == r_inv:
                return True
        return False  # every order-k element generates the same subgroup
    return False


def groups_of_order(n: int) -> list[GroupKind]:
    """All isomorphism classes of order n, for n <= 8."""
    if n < 1:
        raise InputError(f"order must be >= 1, got {n}")
    table: dict[int, list[GroupKind]] = {
        1: [GroupKind.cyclic(1)],
        2: [GroupKind.cyclic(2)],
        3: [GroupKind.cyclic(3)],
        4: [GroupKind.cyclic(4), GroupKind.elementary_abelian(2)],
        5: [GroupKind.cyclic(5)],
        6: [GroupKind.cyclic(6), GroupKind.dihedral(3)],
        7: [GroupKind.cyclic(7)],
        8: [
            GroupKind.cyclic(8),
            GroupKind.direct_product(GroupKind.cyclic(4), GroupKind.cyclic(2)),
            GroupKind.elementary_abelian(3),
            GroupKind.dihedral(4),
            GroupKind.quaternion8(),
        ],
    }
    if n not in table:
        raise OrderTooLarge(f"catalog covers orders 1..8, got {n}")
    return table[n]
