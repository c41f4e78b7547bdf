"""Finite semigroups given by Cayley tables.

Elements are the integers ``0 .. n-1`` and ``table[a][b]`` is the product
``ab``. Everything here is a pure function of immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    InternalTheoremViolation,
    NotAssociative,
    NotClosed,
    NotHomomorphism,
    NotIdempotent,
    NotRegular,
)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on ``range(carrier_size)``.

    Class identifiers are ``0 .. k-1`` numbered in order of least member.
    """

    class_of: tuple[int, ...]

    def __post_init__(self):
        seen = -1
        for c in self.class_of:
            if c > seen + 1 or c < 0:
                raise ValueError(f"class identifiers not canonical: {self.class_of}")
            seen = max(seen, c)

    @classmethod
    def from_key(cls, n: int, key: Callable[[int], object]) -> Partition:
        ids: dict[object, int] = {}
        return cls(tuple(ids.setdefault(key(a), len(ids)) for a in range(n)))

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> Partition:
        label = [-1] * n
        for i, block in enumerate(classes):
            for a in block:
                if label[a] != -1:
                    raise ValueError(f"element {a} in two classes")
                label[a] = i
        if -1 in label:
            raise ValueError(f"element {label.index(-1)} in no class")
        return cls.from_key(n, label.__getitem__)

    @classmethod
    def from_union_find(cls, uf: UnionFind) -> Partition:
        return cls.from_key(len(uf.parent), uf.find)

    @classmethod
    def equality(cls, n: int) -> Partition:
        return cls(tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> Partition:
        return cls((0,) * n)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Partition:
        blocks = [[int(tok) for tok in part.split()] for part in text.split("|")]
        blocks = [b for b in blocks if b]
        if n is None:
            n = sum(len(b) for b in blocks)
        return cls.from_classes(n, blocks)

    @property
    def carrier_size(self) -> int:
        return len(self.class_of)

    @property
    def num_classes(self) -> int:
        return max(self.class_of, default=-1) + 1

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for a, c in enumerate(self.class_of):
            out[c].append(a)
        return out

    def same(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def is_equality(self) -> bool:
        return self.num_classes == self.carrier_size

    def is_full(self) -> bool:
        return self.num_classes <= 1

    def meet(self, other: Partition) -> Partition:
        return Partition.from_key(self.carrier_size, lambda a: (self.class_of[a], other.class_of[a]))

    def join(self, other: Partition) -> Partition:
        uf = UnionFind(self.carrier_size)
        for part in (self, other):
            for block in part.classes():
                for a in block[1:]:
                    uf.union(block[0], a)
        return Partition.from_union_find(uf)

    def refines(self, other: Partition) -> bool:
        """True iff every class of ``self`` lies inside a class of ``other``."""
        image: dict[int, int] = {}
        for a, c in enumerate(self.class_of):
            if image.setdefault(c, other.class_of[a]) != other.class_of[a]:
                return False
        return True

    def __le__(self, other: Partition) -> bool:
        return self.refines(other)

    def __str__(self) -> str:
        return " | ".join(" ".join(map(str, block)) for block in self.classes())


@dataclass(frozen=True)
class FiniteSemigroup:
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(a for a in self.elements if self.table[a][a] == a)

    @cached_property
    def inverse_sets(self) -> tuple[frozenset[int], ...]:
        t = self.table
        return tuple(
            frozenset(b for b in self.elements if t[t[a][b]][a] == a and t[t[b][a]][b] == b)
            for a in self.elements
        )

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.table]


def validate(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> FiniteSemigroup:
    """Check closure and associativity, returning the semigroup.

    Raises NotClosed for a non-square table or an out-of-range entry, and
    NotAssociative with the first failing triple ``(a, b, c)``.
    """
    n = len(table)
    if n == 0:
        raise NotClosed("empty table")
    rows = []
    for a, row in enumerate(table):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise NotClosed(f"row {a} has {len(row)} entries, expected {n}", witness=(a,))
        for b, x in enumerate(row):
            if not 0 <= x < n:
                raise NotClosed(f"entry {a}*{b} = {x} is not an element", witness=(a, b, x))
        rows.append(row)
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise NotClosed(f"{len(labels)} labels for {n} elements")
    S = FiniteSemigroup(tuple(rows), labels)
    witness = associativity_witness(S)
    if witness is not None:
        a, b, c = witness
        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", witness=witness)
    return S


def associativity_witness(S: FiniteSemigroup) -> tuple[int, int, int] | None:
    T = S.array
    bad = np.argwhere(T[T] != T[:, T])
    if len(bad) == 0:
        return None
    return tuple(int(x) for x in bad[0])


def idempotents(S: FiniteSemigroup) -> frozenset[int]:
    return frozenset(S.idempotents)


def inverses_of(S: FiniteSemigroup, s: int) -> frozenset[int]:
    return S.inverse_sets[s]


def opposite(S: FiniteSemigroup) -> FiniteSemigroup:
    n = S.order
    return FiniteSemigroup(tuple(tuple(S.table[b][a] for b in range(n)) for a in range(n)), S.labels)


def direct_product(S1: FiniteSemigroup, S2: FiniteSemigroup) -> FiniteSemigroup:
    """Element ``(a, b)`` gets identifier ``a * S2.order + b``."""
    n2 = S2.order
    pairs = list(product(S1.elements, S2.elements))
    table = tuple(
        tuple(S1.table[a][c] * n2 + S2.table[b][d] for (c, d) in pairs) for (a, b) in pairs
    )
    return FiniteSemigroup(table)


def induced(S: FiniteSemigroup, subset: Iterable[int]) -> tuple[FiniteSemigroup, tuple[int, ...]]:
    """The subsemigroup on ``subset`` (which must be closed) with its embedding."""
    emb = tuple(sorted(set(subset)))
    index = {a: i for i, a in enumerate(emb)}
    try:
        table = tuple(tuple(index[S.table[a][b]] for b in emb) for a in emb)
    except KeyError as exc:
        raise NotClosed(f"subset not closed under multiplication, product {exc.args[0]}") from None
    labels = tuple(S.label(a) for a in emb) if S.labels else None
    return FiniteSemigroup(table, labels), emb


# ---------------------------------------------------------------- classification


def _identity_holds(S: FiniteSemigroup, elems: Sequence[int], arity: int, lhs, rhs):
    t = S.table
    for args in product(elems, repeat=arity):
        if lhs(t, *args) != rhs(t, *args):
            return False, args
    return True, None


# Each identity is a pair of evaluators over the table ``t``.
BAND_IDENTITIES = {
    "normal": (4, lambda t, e, f, g, h: t[t[t[e][f]][g]][h], lambda t, e, f, g, h: t[t[t[e][g]][f]][h]),
    "right_normal": (3, lambda t, e, f, g: t[t[e][f]][g], lambda t, e, f, g: t[t[f][e]][g]),
    "left_normal": (3, lambda t, e, f, g: t[t[e][f]][g], lambda t, e, f, g: t[t[e][g]][f]),
    "right_regular": (2, lambda t, e, f: t[t[e][f]][e], lambda t, e, f: t[f][e]),
    "left_regular": (2, lambda t, e, f: t[t[e][f]][e], lambda t, e, f: t[e][f]),
}


def identity_witness(S: FiniteSemigroup, name: str, elems: Sequence[int] | None = None):
    """First tuple of ``elems`` (default: the idempotents) violating a band identity."""
    arity, lhs, rhs = BAND_IDENTITIES[name]
    ok, witness = _identity_holds(S, S.idempotents if elems is None else elems, arity, lhs, rhs)
    return witness


@dataclass(frozen=True)
class Classification:
    regular: bool
    orthodox: bool
    inverse: bool
    is_band: bool
    idempotents_closed: bool
    commutative: bool
    normal: bool
    left_normal: bool
    right_normal: bool
    left_regular: bool
    right_regular: bool
    generalized_inverse: bool
    left_generalized_inverse: bool
    right_generalized_inverse: bool

    def as_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def summary(self) -> str:
        flags = [
            name.replace("_", " ")
            for name in ("left_normal", "right_normal", "left_regular", "right_regular")
            if getattr(self, name)
        ]
        if not flags and self.normal:
            flags = ["normal"]
        head = ("band: " if self.is_band else "idempotents: ") + (", ".join(flags) or "no band identities")
        for name in (
            "inverse",
            "right_generalized_inverse",
            "left_generalized_inverse",
            "generalized_inverse",
            "orthodox",
            "regular",
        ):
            if getattr(self, name):
                return f"{head}; {name.replace('_', ' ')}"
        return f"{head}; not regular"


def classify(S: FiniteSemigroup) -> Classification:
    t = S.table
    E = S.idempotents
    regular = all(S.inverse_sets)
    closed = all(t[e][f] in E for e in E for f in E)
    band_flags = {name: identity_witness(S, name) is None for name in BAND_IDENTITIES}
    orthodox = regular and closed
    return Classification(
        regular=regular,
        orthodox=orthodox,
        inverse=regular and all(len(v) == 1 for v in S.inverse_sets),
        is_band=len(E) == S.order,
        idempotents_closed=closed,
        commutative=all(t[a][b] == t[b][a] for a in S.elements for b in S.elements),
        generalized_inverse=orthodox and band_flags["normal"],
        left_generalized_inverse=orthodox and band_flags["left_normal"],
        right_generalized_inverse=orthodox and band_flags["right_normal"],
        **band_flags,
    )


# ---------------------------------------------------------------- Green's relations


@dataclass(frozen=True)
class GreenRelations:
    L: Partition
    R: Partition
    H: Partition
    D: Partition
    J: Partition

    def as_dict(self) -> dict[str, Partition]:
        return {"L": self.L, "R": self.R, "H": self.H, "D": self.D, "J": self.J}


def left_ideal(S: FiniteSemigroup, a: int) -> frozenset[int]:
    return frozenset(S.table[s][a] for s in S.elements) | {a}


def right_ideal(S: FiniteSemigroup, a: int) -> frozenset[int]:
    return frozenset(S.table[a]) | {a}


def two_sided_ideal(S: FiniteSemigroup, a: int) -> frozenset[int]:
    T = S.array
    inner = np.unique(T[T[:, a]])
    return frozenset(int(x) for x in inner) | left_ideal(S, a) | right_ideal(S, a)


def green(S: FiniteSemigroup) -> GreenRelations:
    n = S.order
    L = Partition.from_key(n, lambda a: left_ideal(S, a))
    R = Partition.from_key(n, lambda a: right_ideal(S, a))
    return GreenRelations(
        L=L,
        R=R,
        H=L.meet(R),
        D=L.join(R),
        J=Partition.from_key(n, lambda a: two_sided_ideal(S, a)),
    )


# ---------------------------------------------------------------- natural order


@dataclass(frozen=True)
class NaturalOrder:
    leq: tuple[tuple[bool, ...], ...]

    def __call__(self, a: int, b: int) -> bool:
        return self.leq[a][b]


def _require_regular(S: FiniteSemigroup):
    for s in S.elements:
        if not S.inverse_sets[s]:
            raise NotRegular(f"element {s} has no inverse", witness=(s,))


def natural_order(S: FiniteSemigroup) -> NaturalOrder:
    _require_regular(S)
    t, E = S.table, S.idempotents
    leq = tuple(
        tuple(
            any(t[e][b] == a for e in E) and any(t[b][f] == a for f in E)
            for b in S.elements
        )
        for a in S.elements
    )
    return NaturalOrder(leq)


def local_submonoid(S: FiniteSemigroup, e: int) -> tuple[FiniteSemigroup, tuple[int, ...]]:
    if S.table[e][e] != e:
        raise NotIdempotent(f"{e} is not idempotent", witness=(e,))
    t = S.table
    return induced(S, {t[t[e][s]][e] for s in S.elements})


def is_l_unipotent(S: FiniteSemigroup) -> bool:
    """Each L-class holds exactly one idempotent."""
    return _unipotent(S, green(S).L)


def is_r_unipotent(S: FiniteSemigroup) -> bool:
    return _unipotent(S, green(S).R)


def _unipotent(S: FiniteSemigroup, part: Partition) -> bool:
    counts = [0] * part.num_classes
    for e in S.idempotents:
        counts[part.class_of[e]] += 1
    return all(c == 1 for c in counts)


@dataclass(frozen=True)
class CompatibilityReport:
    right_compatible: bool
    left_compatible: bool
    compatible: bool
    locally_L_unipotent: bool
    locally_R_unipotent: bool
    locally_inverse: bool

    def as_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def order_compatibility_report(S: FiniteSemigroup) -> CompatibilityReport:
    """Compatibility of the natural order against local unipotency.

    Raises InternalTheoremViolation when one of the three equivalences
    (right compatible / locally L-unipotent, left / locally R-unipotent,
    two-sided / locally inverse) fails.
    """
    leq = natural_order(S).leq
    t, n = S.table, S.order
    below = [(a, b) for a in range(n) for b in range(n) if leq[a][b] and a != b]
    right = all(leq[t[a][c]][t[b][c]] for a, b in below for c in range(n))
    left = all(leq[t[c][a]][t[c][b]] for a, b in below for c in range(n))
    locals_ = [local_submonoid(S, e)[0] for e in S.idempotents]
    report = CompatibilityReport(
        right_compatible=right,
        left_compatible=left,
        compatible=right and left,
        locally_L_unipotent=all(is_l_unipotent(M) for M in locals_),
        locally_R_unipotent=all(is_r_unipotent(M) for M in locals_),
        locally_inverse=all(classify(M).inverse for M in locals_),
    )
    pairs = [
        ("right_compatible", "locally_L_unipotent"),
        ("left_compatible", "locally_R_unipotent"),
        ("compatible", "locally_inverse"),
    ]
    for x, y in pairs:
        if getattr(report, x) != getattr(report, y):
            raise InternalTheoremViolation(f"{x} != {y}", witness=report.as_dict())
    return report


def band_clause_report(B: FiniteSemigroup) -> dict[str, bool]:
    """Evaluate the band characterisations clause by clause.

    Each value is True when both sides of the stated equivalence agree on
    ``B``; the left and right sides are computed independently (identities
    by exhaustive evaluation, unipotency and Green's relations from ideals).
    """
    from .congruence import gamma

    c = classify(B)
    if not c.is_band:
        raise NotIdempotent("not a band")
    g = green(B)
    l_uni, r_uni = is_l_unipotent(B), is_r_unipotent(B)
    locally_inverse = all(classify(local_submonoid(B, e)[0]).inverse for e in B.elements)
    gam = gamma(B).partition
    return {
        "L_unipotent_iff_right_regular": l_uni == c.right_regular,
        "right_regular_iff_L_equality": c.right_regular == g.L.is_equality(),
        "right_regular_gamma_is_R": (not c.right_regular) or gam == g.R,
        "R_unipotent_iff_left_regular": r_uni == c.left_regular,
        "left_regular_iff_R_equality": c.left_regular == g.R.is_equality(),
        "left_regular_gamma_is_L": (not c.left_regular) or gam == g.L,
        "locally_inverse_iff_normal": locally_inverse == c.normal,
        "right_normal_iff_normal_and_L_unipotent": c.right_normal == (c.normal and l_uni),
        "left_normal_iff_normal_and_R_unipotent": c.left_normal == (c.normal and r_uni),
    }


# ---------------------------------------------------------------- maps between semigroups


def homomorphism_witness(S1: FiniteSemigroup, S2: FiniteSemigroup, h: Sequence[int]):
    t1, t2 = S1.table, S2.table
    for a in S1.elements:
        for b in S1.elements:
            if h[t1[a][b]] != t2[h[a]][h[b]]:
                return (a, b)
    return None


def is_homomorphism(S1: FiniteSemigroup, S2: FiniteSemigroup, h: Sequence[int]) -> bool:
    return len(h) == S1.order and homomorphism_witness(S1, S2, h) is None


def require_homomorphism(S1: FiniteSemigroup, S2: FiniteSemigroup, h: Sequence[int]):
    if len(h) != S1.order or any(not 0 <= x < S2.order for x in h):
        raise NotHomomorphism("map is not a function between the carriers")
    w = homomorphism_witness(S1, S2, h)
    if w is not None:
        raise NotHomomorphism(f"h({w[0]}*{w[1]}) != h({w[0]})*h({w[1]})", witness=w)


def _element_invariant(S: FiniteSemigroup, a: int):
    t = S.table
    powers = [a]
    while (nxt := t[powers[-1]][a]) not in powers:
        powers.append(nxt)
    index = powers.index(nxt)
    return (
        index,
        len(powers) - index,
        len(set(t[a])),
        len({t[s][a] for s in S.elements}),
        sum(1 for s in S.elements if t[a][s] == s),
        sum(1 for s in S.elements if t[s][a] == s),
    )


def find_isomorphism(S1: FiniteSemigroup, S2: FiniteSemigroup) -> tuple[int, ...] | None:
    """Backtracking search for an isomorphism ``S1 -> S2``.

    Images are propagated through products of already mapped elements, so a
    choice for a generator fixes everything it generates.
    """
    if S1.order != S2.order:
        return None
    n = S1.order
    inv1 = [_element_invariant(S1, a) for a in range(n)]
    inv2 = [_element_invariant(S2, a) for a in range(n)]
    if sorted(inv1) != sorted(inv2):
        return None
    t1, t2 = S1.table, S2.table
    candidates = [[b for b in range(n) if inv2[b] == inv1[a]] for a in range(n)]

    def extend(h, used, a, b):
        h, used = dict(h), set(used)
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            if x in h:
                if h[x] != y:
                    return None
                continue
            if y in used or inv1[x] != inv2[y]:
                return None
            h[x] = y
            used.add(y)
            for z in list(h):
                stack.append((t1[x][z], t2[y][h[z]]))
                stack.append((t1[z][x], t2[h[z]][y]))
        return h, used

    def search(h, used):
        if len(h) == n:
            return h
        a = min((x for x in range(n) if x not in h), key=lambda x: len(candidates[x]))
        for b in candidates[a]:
            if b in used:
                continue
            nxt = extend(h, used, a, b)
            if nxt is not None:
                found = search(*nxt)
                if found is not None:
                    return found
        return None

    found = search({}, set())
    if found is None:
        return None
    return tuple(found[a] for a in range(n))


def is_isomorphic(S1: FiniteSemigroup, S2: FiniteSemigroup) -> bool:
    return find_isomorphism(S1, S2) is not None
