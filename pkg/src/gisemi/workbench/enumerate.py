"""Enumeration of small semigroups up to isomorphism.

Every semigroup is isomorphic to one whose squaring map ``a -> aa`` is a
fixed representative of its isomorphism class of functional graphs. So we
fix the diagonal to each representative in turn, backtrack over the other
cells with incremental associativity checks, and identify tables only up
to the automorphisms of that representative. Each class is kept as the
least table under those automorphisms.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Iterator

from ..core import Classification, FiniteSemigroup, classify
from ..errors import OrderBoundExceeded

DEFAULT_MAX_ORDER = 5
BAND_MAX_ORDER = 6


def max_order() -> int:
    return int(os.environ.get("GIS_MAX_ORDER", DEFAULT_MAX_ORDER))


def relabel(table, perm) -> tuple[int, ...]:
    """Flat table of the copy in which element ``a`` is renamed ``perm[a]``."""
    n = len(perm)
    out = [0] * (n * n)
    for a in range(n):
        row = table[a]
        pa = perm[a] * n
        for b in range(n):
            out[pa + perm[b]] = perm[row[b]]
    return tuple(out)


def squaring_representatives(n: int) -> list[tuple[tuple[int, ...], list[tuple[int, ...]]]]:
    """One function per isomorphism class of maps ``n -> n`` with its automorphisms."""
    perms = list(permutations(range(n)))
    seen = set()
    reps = []
    for f in product(range(n), repeat=n):
        if f in seen:
            continue
        orbit = set()
        for p in perms:
            g = [0] * n
            for a in range(n):
                g[p[a]] = p[f[a]]
            orbit.add(tuple(g))
        seen |= orbit
        rep = min(orbit)
        auts = [p for p in perms if all(p[rep[a]] == rep[p[a]] for a in range(n))]
        reps.append((rep, auts))
    return sorted(reps)


def _tables_with_diagonal(n: int, diag: tuple[int, ...]) -> Iterator[list[list[int]]]:
    T = [[-1] * n for _ in range(n)]
    holders: list[list[tuple[int, int]]] = [[] for _ in range(n)]  # value -> cells
    for a in range(n):
        T[a][a] = diag[a]
        holders[diag[a]].append((a, a))
    cells = [(a, b) for a in range(n) for b in range(n) if a != b]
    rng = range(n)

    def consistent(a: int, b: int) -> bool:
        c = T[a][b]
        # (a b) z = a (b z)
        Tc, Tb, Ta = T[c], T[b], T[a]
        for z in rng:
            u = Tc[z]
            if u < 0:
                continue
            v = Tb[z]
            if v < 0:
                continue
            w = Ta[v]
            if w >= 0 and w != u:
                return False
        # (x a) b = x (a b)
        for x in rng:
            Tx = T[x]
            u = Tx[a]
            if u < 0:
                continue
            v = T[u][b]
            if v < 0:
                continue
            w = Tx[c]
            if w >= 0 and w != v:
                return False
        # (x y) b = x (y b) where xy = a
        for x, y in holders[a]:
            v = T[y][b]
            if v < 0:
                continue
            w = T[x][v]
            if w >= 0 and w != c:
                return False
        # (a y) z = a (y z) where yz = b
        for y, z in holders[b]:
            u = Ta[y]
            if u < 0:
                continue
            w = T[u][z]
            if w >= 0 and w != c:
                return False
        return True

    if not all(consistent(a, a) for a in range(n)):
        return

    def fill(i: int):
        if i == len(cells):
            yield T
            return
        a, b = cells[i]
        for c in rng:
            T[a][b] = c
            holders[c].append((a, b))
            if consistent(a, b):
                yield from fill(i + 1)
            holders[c].pop()
        T[a][b] = -1

    yield from fill(0)


def _enumerate(n: int, diagonals) -> list[tuple[int, ...]]:
    found = []
    for diag, auts in diagonals:
        classes = set()
        for T in _tables_with_diagonal(n, diag):
            classes.add(min(relabel(T, p) for p in auts))
        found.extend(sorted(classes))
    return found


@lru_cache(maxsize=None)
def semigroup_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """Flat tables, one per isomorphism class of semigroups of order ``n``."""
    return tuple(_enumerate(n, squaring_representatives(n)))


@lru_cache(maxsize=None)
def band_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """Bands only: the diagonal is the identity and every relabelling applies."""
    ident = tuple(range(n))
    return tuple(_enumerate(n, [(ident, list(permutations(range(n))))]))


def naive_class_count(n: int) -> int:
    """Isomorphism classes by brute force over every table; no pruning."""
    perms = list(permutations(range(n)))
    classes = set()
    for flat in product(range(n), repeat=n * n):
        T = [flat[i * n:(i + 1) * n] for i in range(n)]
        if all(T[T[a][b]][c] == T[a][T[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            classes.add(min(relabel(T, p) for p in perms))
    return len(classes)


def naive_classes(n: int) -> set[tuple[int, ...]]:
    perms = list(permutations(range(n)))
    classes = set()
    for flat in product(range(n), repeat=n * n):
        T = [flat[i * n:(i + 1) * n] for i in range(n)]
        if all(T[T[a][b]][c] == T[a][T[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            classes.add(min(relabel(T, p) for p in perms))
    return classes


def canonical_form(S: FiniteSemigroup) -> tuple[int, ...]:
    """Least flat table over all relabellings."""
    return min(relabel(S.table, p) for p in permutations(range(S.order)))


# ---------------------------------------------------------------- corpus


CLASS_FILTERS: dict[str, Callable[[Classification], bool]] = {
    "all": lambda c: True,
    "regular": lambda c: c.regular,
    "orthodox": lambda c: c.orthodox,
    "inverse": lambda c: c.inverse,
    "band": lambda c: c.is_band,
    "normal_band": lambda c: c.is_band and c.normal,
    "right_normal_band": lambda c: c.is_band and c.right_normal,
    "left_normal_band": lambda c: c.is_band and c.left_normal,
    "semilattice": lambda c: c.is_band and c.commutative,
    "generalized_inverse": lambda c: c.generalized_inverse,
    "right_gi": lambda c: c.right_generalized_inverse,
    "left_gi": lambda c: c.left_generalized_inverse,
}

BAND_CLASSES = {"band", "normal_band", "right_normal_band", "left_normal_band", "semilattice"}


@dataclass(frozen=True)
class CorpusMember:
    name: str
    semigroup: FiniteSemigroup
    classification: Classification
    provenance: str = "enumerated"


@dataclass(frozen=True)
class Corpus:
    members: tuple[CorpusMember, ...]
    description: str = ""

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def semigroups(self) -> list[FiniteSemigroup]:
        return [m.semigroup for m in self.members]


def _unflatten(flat: tuple[int, ...], n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(flat[i * n:(i + 1) * n] for i in range(n))


@lru_cache(maxsize=None)
def _members(n: int, bands_only: bool) -> tuple[CorpusMember, ...]:
    flats = band_tables(n) if bands_only else semigroup_tables(n)
    prefix = "b" if bands_only else "s"
    out = []
    for i, flat in enumerate(flats):
        S = FiniteSemigroup(_unflatten(flat, n))
        out.append(CorpusMember(f"{prefix}{n}-{i:04d}", S, classify(S)))
    return tuple(out)


def enumerate_semigroups(order: int, filter: str | Callable[[Classification], bool] = "all") -> Corpus:
    """Semigroups of exactly ``order`` elements, one per isomorphism class."""
    name = filter if isinstance(filter, str) else getattr(filter, "__name__", "custom")
    pred = CLASS_FILTERS[filter] if isinstance(filter, str) else filter
    bands_only = isinstance(filter, str) and filter in BAND_CLASSES
    cap = max(max_order(), BAND_MAX_ORDER) if bands_only else max_order()
    if order < 1 or order > cap:
        raise OrderBoundExceeded(f"order {order} is outside 1..{cap} for class {name!r}")
    members = tuple(m for m in _members(order, bands_only) if pred(m.classification))
    return Corpus(members, f"{name} semigroups of order {order}")


def corpus_upto(max_order_: int, filter: str | Callable[[Classification], bool] = "all") -> Corpus:
    members = []
    for n in range(1, max_order_ + 1):
        members.extend(enumerate_semigroups(n, filter).members)
    name = filter if isinstance(filter, str) else "custom"
    return Corpus(tuple(members), f"{name} semigroups of order <= {max_order_}")
