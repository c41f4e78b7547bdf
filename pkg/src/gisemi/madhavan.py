"""Madhavan's symmetric right generalized inverse semigroup ``M_rho(X)``.

Functions are written on the right of their arguments: ``(x)(ab)`` is
``((x)a)b``, so the product ``ab`` applies ``a`` first. A partial function
on ``X = {0, .., n-1}`` is a tuple of images with ``-1`` for undefined.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .core import FiniteSemigroup, Partition, _element_invariant, classify, homomorphism_witness, validate
from .errors import InternalTheoremViolation, SizeBoundExceeded

DEFAULT_BOUND = 4
EMBED_BOUND = 16

PartialFunction = tuple[int, ...]


def compose(a: PartialFunction, b: PartialFunction) -> PartialFunction:
    """``a`` then ``b``."""
    return tuple(b[y] if y >= 0 else -1 for y in a)


def domain(a: PartialFunction) -> frozenset[int]:
    return frozenset(x for x, y in enumerate(a) if y >= 0)


def admissible(a: PartialFunction, rho: Partition) -> bool:
    """The three compatibility conditions with ``rho``."""
    n = len(a)
    for x in range(n):
        for y in range(n):
            related = rho.same(x, y)
            if related and a[x] != a[y]:
                return False
            if a[x] >= 0 and a[y] >= 0 and rho.same(a[x], a[y]) and not related:
                return False
            if a[x] >= 0 and related and a[y] < 0:
                return False
    return True


def _sort_key(a: PartialFunction):
    return (sum(1 << x for x in domain(a)), a)


def describe(a: PartialFunction) -> str:
    """1-based legend such as ``{1:2,2:2}``; the empty map is ``{}``."""
    return "{" + ",".join(f"{x + 1}:{y + 1}" for x, y in enumerate(a) if y >= 0) + "}"


@dataclass(frozen=True)
class MadhavanSemigroup:
    rho: Partition
    functions: tuple[PartialFunction, ...]
    semigroup: FiniteSemigroup

    @property
    def size(self) -> int:
        return self.rho.carrier_size


def build_M_rho(n: int, rho: Partition | None = None, bound: int = DEFAULT_BOUND) -> MadhavanSemigroup:
    """All admissible partial functions on ``n`` points under composition.

    ``rho`` defaults to equality, which yields the symmetric inverse monoid.
    """
    if n < 1:
        raise ValueError("X must be non-empty")
    if n > bound:
        raise SizeBoundExceeded(f"|X| = {n} exceeds the bound {bound}")
    rho = rho or Partition.equality(n)
    if rho.carrier_size != n:
        raise ValueError("rho is not a partition of X")
    funcs = sorted(
        (a for a in product(range(-1, n), repeat=n) if admissible(a, rho)),
        key=_sort_key,
    )
    index = {a: i for i, a in enumerate(funcs)}
    table = []
    for a in funcs:
        row = []
        for b in funcs:
            ab = compose(a, b)
            if ab not in index:
                raise InternalTheoremViolation(f"{describe(a)}{describe(b)} is not admissible", witness=(a, b))
            row.append(index[ab])
        table.append(row)
    S = validate(table, [describe(a) for a in funcs])
    if not classify(S).right_generalized_inverse:
        raise InternalTheoremViolation("M_rho(X) is not right generalized inverse")
    return MadhavanSemigroup(rho, tuple(funcs), S)


def idempotent_characterization_check(M: MadhavanSemigroup) -> bool:
    """Table idempotents are exactly the maps with ``x rho (x)a`` on the domain."""
    described = {
        i for i, a in enumerate(M.functions) if all(M.rho.same(x, y) for x, y in enumerate(a) if y >= 0)
    }
    return described == set(M.semigroup.idempotents)


def embedding_search(
    S: FiniteSemigroup,
    n: int,
    rho: Partition | None = None,
    bound: int = DEFAULT_BOUND,
    max_order: int = EMBED_BOUND,
) -> tuple[int, ...] | None:
    """An injective homomorphism ``S -> M_rho(X)``, or None when there is none.

    None for one choice of ``(X, rho)`` says nothing about other choices.
    """
    if S.order > max_order:
        raise SizeBoundExceeded(f"|S| = {S.order} exceeds the search bound {max_order}")
    M = build_M_rho(n, rho, bound).semigroup
    if S.order > M.order or len(S.idempotents) > len(M.idempotents):
        return None
    inv_s = [_element_invariant(S, a)[:2] for a in S.elements]
    inv_m = [_element_invariant(M, b)[:2] for b in M.elements]
    candidates = [[b for b in M.elements if inv_m[b] == inv_s[a]] for a in S.elements]
    if any(not c for c in candidates):
        return None
    ts, tm = S.table, M.table

    def extend(h, used, a, b):
        h, used = dict(h), set(used)
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            if x in h:
                if h[x] != y:
                    return None
                continue
            if y in used or inv_s[x] != inv_m[y]:
                return None
            h[x] = y
            used.add(y)
            for z in list(h):
                stack.append((ts[x][z], tm[y][h[z]]))
                stack.append((ts[z][x], tm[h[z]][y]))
        return h, used

    def search(h, used):
        if len(h) == S.order:
            return h
        a = min((x for x in S.elements if x not in h), key=lambda x: len(candidates[x]))
        for b in candidates[a]:
            if b not in used:
                nxt = extend(h, used, a, b)
                if nxt is not None and (found := search(*nxt)) is not None:
                    return found
        return None

    found = search({}, set())
    if found is None:
        return None
    emb = tuple(found[a] for a in S.elements)
    if len(set(emb)) != S.order or homomorphism_witness(S, M, emb) is not None:
        raise InternalTheoremViolation("embedding search returned a non-embedding")
    return emb


def all_partitions(n: int) -> list[Partition]:
    """Every equivalence relation on ``n`` points."""
    out: list[list[int]] = [[]]
    for x in range(n):
        nxt = []
        for labels in out:
            for c in range(max(labels, default=-1) + 2):
                nxt.append(labels + [c])
        out = nxt
    return [Partition(tuple(p)) for p in out]
