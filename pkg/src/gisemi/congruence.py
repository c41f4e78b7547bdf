"""Congruences: gamma, lambda, rho, quotients and exhaustive enumeration."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import (
    FiniteSemigroup,
    Partition,
    UnionFind,
    classify,
    direct_product,
    green,
    homomorphism_witness,
)
from .errors import (
    InternalTheoremViolation,
    NotACongruence,
    NotGeneralizedInverse,
    NotOrthodox,
    OrderBoundExceeded,
)

DEFAULT_BOUND = 8


def compatibility_witness(S: FiniteSemigroup, part: Partition):
    """A pair ``(a, b, c)`` with a ~ b but ca !~ cb or ac !~ bc, else None."""
    t, cls = S.table, part.class_of
    for block in part.classes():
        first = block[0]
        for a in block[1:]:
            for c in S.elements:
                if cls[t[c][a]] != cls[t[c][first]] or cls[t[a][c]] != cls[t[first][c]]:
                    return (first, a, c)
    return None


@dataclass(frozen=True)
class Congruence:
    base: FiniteSemigroup
    partition: Partition

    def __post_init__(self):
        if self.partition.carrier_size != self.base.order:
            raise NotACongruence("partition size does not match the semigroup")
        w = compatibility_witness(self.base, self.partition)
        if w is not None:
            raise NotACongruence(f"{w[0]} ~ {w[1]} is not preserved by multiplication with {w[2]}", witness=w)

    def related(self, a: int, b: int) -> bool:
        return self.partition.same(a, b)

    def __le__(self, other: Congruence) -> bool:
        return self.partition.refines(other.partition)

    def __str__(self) -> str:
        return str(self.partition)


def generate(S: FiniteSemigroup, pairs: Iterable[tuple[int, int]], start: Partition | None = None) -> Congruence:
    """Least congruence containing ``start`` and the given pairs."""
    uf = UnionFind(S.order)
    todo = []
    if start is not None:
        for block in start.classes():
            todo.extend((block[0], a) for a in block[1:])
    todo.extend(pairs)
    t = S.table
    while todo:
        a, b = todo.pop()
        if uf.union(a, b):
            for c in S.elements:
                todo.append((t[c][a], t[c][b]))
                todo.append((t[a][c], t[b][c]))
    return Congruence(S, Partition.from_union_find(uf))


def equality(S: FiniteSemigroup) -> Congruence:
    return Congruence(S, Partition.equality(S.order))


def universal(S: FiniteSemigroup) -> Congruence:
    return Congruence(S, Partition.full(S.order))


def quotient(S: FiniteSemigroup, c: Congruence | Partition) -> tuple[FiniteSemigroup, tuple[int, ...]]:
    """The quotient table on classes and the projection ``S -> S/c``."""
    if isinstance(c, Partition):
        c = Congruence(S, c)
    cls = c.partition.class_of
    reps = [block[0] for block in c.partition.classes()]
    table = tuple(tuple(cls[S.table[a][b]] for b in reps) for a in reps)
    return FiniteSemigroup(table), cls


def gamma(S: FiniteSemigroup) -> Congruence:
    """The minimum inverse congruence of an orthodox semigroup."""
    info = classify(S)
    if not info.orthodox:
        raise NotOrthodox("gamma needs an orthodox semigroup")
    V = S.inverse_sets
    uf = UnionFind(S.order)
    for a in S.elements:
        for b in S.elements:
            if a < b and V[a] & V[b]:
                uf.union(a, b)
    part = Partition.from_union_find(uf)
    for block in part.classes():
        for a in block[1:]:
            if V[a] != V[block[0]]:
                raise InternalTheoremViolation(
                    "overlapping inverse sets are not equal", witness=(block[0], a)
                )
    try:
        g = Congruence(S, part)
    except NotACongruence as exc:
        raise InternalTheoremViolation(f"gamma is not a congruence: {exc}", witness=exc.witness) from None
    if not classify(quotient(S, g)[0]).inverse:
        raise InternalTheoremViolation("S/gamma is not inverse")
    return g


def lambda_rho(S: FiniteSemigroup) -> tuple[Congruence, Congruence]:
    info = classify(S)
    if not info.generalized_inverse:
        raise NotGeneralizedInverse("lambda and rho need a generalized inverse semigroup")
    g, gr = gamma(S).partition, green(S)
    try:
        lam = Congruence(S, g.meet(gr.L))
        rho = Congruence(S, g.meet(gr.R))
    except NotACongruence as exc:
        raise InternalTheoremViolation(str(exc), witness=exc.witness) from None
    if not classify(quotient(S, lam)[0]).right_generalized_inverse:
        raise InternalTheoremViolation("S/lambda is not right generalized inverse")
    if not classify(quotient(S, rho)[0]).left_generalized_inverse:
        raise InternalTheoremViolation("S/rho is not left generalized inverse")
    if not lam.partition.meet(rho.partition).is_equality():
        raise InternalTheoremViolation("lambda and rho intersect non-trivially")
    return lam, rho


def all_congruences(S: FiniteSemigroup, bound: int = DEFAULT_BOUND) -> list[Congruence]:
    """Every congruence on ``S``, sorted by number of classes (descending) then class map.

    Each congruence is a join of principal ones, so closing the equality
    relation under joins with principal congruences reaches all of them.
    """
    if S.order > bound:
        raise OrderBoundExceeded(f"order {S.order} exceeds the enumeration bound {bound}")
    n = S.order
    principal = []
    for a in range(n):
        for b in range(a + 1, n):
            principal.append((a, b))
    found = {Partition.equality(n)}
    frontier = [Partition.equality(n)]
    while frontier:
        nxt = []
        for part in frontier:
            for a, b in principal:
                if part.same(a, b):
                    continue
                joined = generate(S, [(a, b)], start=part).partition
                if joined not in found:
                    found.add(joined)
                    nxt.append(joined)
        frontier = nxt
    ordered = sorted(found, key=lambda p: (-p.num_classes, p.class_of))
    return [Congruence(S, p) for p in ordered]


def quotient_is_inverse(Q: FiniteSemigroup) -> bool:
    return classify(Q).inverse


def quotient_is_right_gi(Q: FiniteSemigroup) -> bool:
    return classify(Q).right_generalized_inverse


def quotient_is_left_gi(Q: FiniteSemigroup) -> bool:
    return classify(Q).left_generalized_inverse


PREDICATES: dict[str, Callable[[FiniteSemigroup], bool]] = {
    "inverse": quotient_is_inverse,
    "right_gi": quotient_is_right_gi,
    "left_gi": quotient_is_left_gi,
}


def minimality_witness(
    S: FiniteSemigroup,
    c: Congruence,
    predicate: Callable[[FiniteSemigroup], bool] | str,
    bound: int = DEFAULT_BOUND,
) -> Congruence | None:
    """A congruence with a qualifying quotient that does not contain ``c``."""
    if isinstance(predicate, str):
        predicate = PREDICATES[predicate]
    for sigma in all_congruences(S, bound):
        if predicate(quotient(S, sigma)[0]) and not c <= sigma:
            return sigma
    return None


def is_minimum_with(
    S: FiniteSemigroup,
    c: Congruence,
    predicate: Callable[[FiniteSemigroup], bool] | str,
    bound: int = DEFAULT_BOUND,
) -> bool:
    return minimality_witness(S, c, predicate, bound) is None


@dataclass(frozen=True)
class SubdirectEmbedding:
    left: FiniteSemigroup  # S/rho
    right: FiniteSemigroup  # S/lambda
    product: FiniteSemigroup
    rho_map: tuple[int, ...]
    lambda_map: tuple[int, ...]
    embedding: tuple[int, ...]

    def pair(self, s: int) -> tuple[int, int]:
        return self.rho_map[s], self.lambda_map[s]


def subdirect_embed(S: FiniteSemigroup) -> SubdirectEmbedding:
    """``s -> (rho(s), lambda(s))`` into ``S/rho x S/lambda``, fully verified."""
    lam, rho = lambda_rho(S)
    left, rmap = quotient(S, rho)
    right, lmap = quotient(S, lam)
    prod = direct_product(left, right)
    emb = tuple(rmap[s] * right.order + lmap[s] for s in S.elements)
    if len(set(emb)) != S.order:
        raise InternalTheoremViolation("s -> (rho(s), lambda(s)) is not injective")
    w = homomorphism_witness(S, prod, emb)
    if w is not None:
        raise InternalTheoremViolation("subdirect map is not a homomorphism", witness=w)
    if set(rmap) != set(left.elements) or set(lmap) != set(right.elements):
        raise InternalTheoremViolation("a coordinate projection is not surjective")
    return SubdirectEmbedding(left, right, prod, rmap, lmap, emb)


def impure_witness(S: FiniteSemigroup, c: Congruence) -> tuple[int, int] | None:
    """An idempotent ``e`` and a non-idempotent in its class, if any."""
    E = set(S.idempotents)
    for block in c.partition.classes():
        idem = [a for a in block if a in E]
        other = [a for a in block if a not in E]
        if idem and other:
            return idem[0], other[0]
    return None


def idempotent_pure_check(S: FiniteSemigroup, c: Congruence) -> bool:
    return impure_witness(S, c) is None


def restricts_to(S: FiniteSemigroup, c: Congruence, rel: Partition) -> bool:
    """``c`` and ``rel`` agree on pairs of idempotents."""
    E: Sequence[int] = S.idempotents
    return all(c.related(e, f) == rel.same(e, f) for e in E for f in E)
