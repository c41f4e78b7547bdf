"""Presheaves of sets over finite meet semilattices and right normal bands.

A presheaf is stored flat: carrier elements are ``0 .. n-1``, ``support[x]``
is the semilattice index of the fiber containing ``x`` and ``res[x][f]`` is
the restriction of ``x`` to ``f`` (``-1`` unless ``f <= support[x]``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .congruence import quotient
from .core import FiniteSemigroup, Partition, classify, find_isomorphism, green, require_homomorphism, validate
from .errors import (
    CompositionLawViolated,
    IdentityLawViolated,
    InternalTheoremViolation,
    InvalidPresheaf,
    MissingRestriction,
    NotASemilattice,
    NotRightNormalBand,
)


@dataclass(frozen=True)
class MeetSemilattice:
    meet: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.meet)
        m = self.meet
        for e in range(k):
            if m[e][e] != e:
                raise NotASemilattice(f"{e} is not idempotent", witness=(e,))
            for f in range(k):
                if m[e][f] != m[f][e]:
                    raise NotASemilattice(f"{e} and {f} do not commute", witness=(e, f))
        validate(m)

    @classmethod
    def from_semigroup(cls, S: FiniteSemigroup) -> MeetSemilattice:
        return cls(S.table)

    @property
    def order(self) -> int:
        return len(self.meet)

    def leq(self, e: int, f: int) -> bool:
        return self.meet[e][f] == e

    def as_semigroup(self) -> FiniteSemigroup:
        return FiniteSemigroup(self.meet)

    @cached_property
    def covers(self) -> tuple[tuple[int, ...], ...]:
        """``covers[e]``: the elements immediately below ``e``."""
        k = self.order
        below = [[f for f in range(k) if f != e and self.leq(f, e)] for e in range(k)]
        return tuple(
            tuple(f for f in below[e] if not any(self.leq(f, g) and g != f for g in below[e]))
            for e in range(k)
        )


@dataclass(frozen=True)
class Presheaf:
    base: MeetSemilattice
    support: tuple[int, ...]
    res: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.support)

    @cached_property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.base.order)]
        for x, e in enumerate(self.support):
            out[e].append(x)
        return tuple(tuple(f) for f in out)

    @property
    def global_support(self) -> bool:
        return all(self.fibers)

    def restrict(self, x: int, f: int) -> int:
        y = self.res[x][f]
        if y < 0:
            raise ValueError(f"{f} is not below p({x}) = {self.support[x]}")
        return y

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def restriction_map(self, e: int, f: int) -> list[int]:
        return [self.res[x][f] for x in self.fibers[e]]


def validate_presheaf(
    base: MeetSemilattice | Sequence[Sequence[int]],
    fibers: Sequence[Sequence[int]],
    restrictions: Mapping[tuple[int, int], Sequence[int]],
    labels: Sequence[str] | None = None,
) -> Presheaf:
    """Build a presheaf from fibers and restriction maps.

    ``restrictions[(e, f)]`` lists the images of the members of fiber ``e``
    (in fiber order) in fiber ``f``. Covering pairs are mandatory for
    nonempty fibers; other pairs are derived by composition and any given
    ones are checked against the composite.
    """
    if not isinstance(base, MeetSemilattice):
        base = MeetSemilattice(tuple(tuple(r) for r in base))
    k = base.order
    if len(fibers) != k:
        raise InvalidPresheaf(f"{len(fibers)} fibers for a semilattice of order {k}")
    n = sum(len(f) for f in fibers)
    support = [-1] * n
    for e, fiber in enumerate(fibers):
        for x in fiber:
            if not 0 <= x < n or support[x] != -1:
                raise InvalidPresheaf(f"fibers do not partition 0..{n - 1} (element {x})", witness=(x,))
            support[x] = e
    given: dict[tuple[int, int], dict[int, int]] = {}
    for (e, f), images in restrictions.items():
        if not base.leq(f, e):
            raise InvalidPresheaf(f"restriction {e}>{f} but {f} is not below {e}", witness=(e, f))
        if len(images) != len(fibers[e]):
            raise InvalidPresheaf(f"restriction {e}>{f} has {len(images)} images for {len(fibers[e])} elements")
        mapping = {}
        for x, y in zip(fibers[e], images):
            if not 0 <= y < n or support[y] != f:
                raise InvalidPresheaf(f"restriction {e}>{f} sends {x} outside fiber {f}", witness=(e, f, x))
            mapping[x] = y
        if e == f and any(mapping[x] != x for x in mapping):
            x = next(x for x in mapping if mapping[x] != x)
            raise IdentityLawViolated(f"restriction {e}>{e} moves {x}", witness=(e, x))
        given[(e, f)] = mapping

    full: dict[tuple[int, int], dict[int, int]] = {}

    def resolve(e: int, f: int) -> dict[int, int]:
        if (e, f) in full:
            return full[(e, f)]
        if e == f:
            out = {x: x for x in fibers[e]}
        elif not fibers[e]:
            out = {}
        else:
            via = [g for g in base.covers[e] if base.leq(f, g) and (e, g) in given]
            if not via:
                missing = next(g for g in base.covers[e] if base.leq(f, g))
                raise MissingRestriction(f"no restriction for covering pair {e}>{missing}", witness=(e, missing))
            g = via[0]
            step, rest = given[(e, g)], resolve(g, f)
            out = {x: rest[step[x]] for x in fibers[e]}
        full[(e, f)] = out
        return out

    res = [[-1] * k for _ in range(n)]
    for e in range(k):
        for f in range(k):
            if base.leq(f, e):
                for x, y in resolve(e, f).items():
                    res[x][f] = y
    for e, f, g in product(range(k), repeat=3):
        if base.leq(f, e) and base.leq(g, f):
            for x in fibers[e]:
                if res[res[x][f]][g] != res[x][g]:
                    raise CompositionLawViolated(
                        f"restricting {x} along {e}>{f}>{g} differs from {e}>{g}", witness=(e, f, g, x)
                    )
    for (e, f), mapping in given.items():
        for x, y in mapping.items():
            if res[x][f] != y:
                raise CompositionLawViolated(
                    f"given restriction {e}>{f} of {x} disagrees with the composite", witness=(e, f, x)
                )
    return Presheaf(base, tuple(support), tuple(tuple(r) for r in res), tuple(labels) if labels else None)


def singleton_presheaf(base: MeetSemilattice) -> Presheaf:
    """One point per index; the terminal presheaf."""
    k = base.order
    res = tuple(tuple(f if base.leq(f, e) else -1 for f in range(k)) for e in range(k))
    return Presheaf(base, tuple(range(k)), res)


def to_band(P: Presheaf) -> FiniteSemigroup:
    """The right normal band ``x o y = y|_{p(x) meet p(y)}`` on the carrier."""
    m, p = P.base.meet, P.support
    table = [[P.res[y][m[p[x]][p[y]]] for y in range(P.size)] for x in range(P.size)]
    B = validate(table, P.labels)
    info = classify(B)
    if not (info.is_band and info.right_normal):
        raise InternalTheoremViolation("presheaf product is not a right normal band")
    return B


def band_to_presheaf(B: FiniteSemigroup) -> Presheaf:
    """Fibers are the R-classes, restriction along ``[f] <= [e]`` is ``x -> fx``."""
    info = classify(B)
    if not (info.is_band and info.right_normal):
        raise NotRightNormalBand("expected a right normal band")
    R = green(B).R
    E, cls = quotient(B, R)
    base = MeetSemilattice(E.table)
    t = B.table
    k = base.order
    blocks = R.classes()
    res = [[-1] * k for _ in B.elements]
    for x in B.elements:
        for f in range(k):
            if not base.leq(f, cls[x]):
                continue
            images = {t[b][x] for b in blocks[f]}
            if len(images) != 1:
                raise InternalTheoremViolation(f"restriction of {x} depends on the representative", witness=(x, f))
            (y,) = images
            if cls[y] != f:
                raise InternalTheoremViolation(f"restriction of {x} leaves fiber {f}", witness=(x, f))
            res[x][f] = y
    return Presheaf(base, tuple(cls), tuple(tuple(r) for r in res), B.labels)


@dataclass(frozen=True)
class PresheafMorphism:
    alpha: tuple[int, ...]  # carrier map
    beta: tuple[int, ...]  # semilattice map


def presheaf_morphism_witness(P: Presheaf, Q: Presheaf, alpha: Sequence[int], beta: Sequence[int]):
    """First violated morphism axiom as ``(axiom, detail)``, or None."""
    if len(alpha) != P.size or len(beta) != P.base.order:
        return ("shape", None)
    mP, mQ = P.base.meet, Q.base.meet
    for e in range(P.base.order):
        for f in range(P.base.order):
            if beta[mP[e][f]] != mQ[beta[e]][beta[f]]:
                return ("beta_meet", (e, f))
    for x in range(P.size):
        if Q.support[alpha[x]] != beta[P.support[x]]:
            return ("support", (x,))
        for f in range(P.base.order):
            y = P.res[x][f]
            if y >= 0 and alpha[y] != Q.res[alpha[x]][beta[f]]:
                return ("restriction", (x, f))
    return None


def is_presheaf_isomorphism(P: Presheaf, Q: Presheaf, alpha: Sequence[int], beta: Sequence[int]) -> bool:
    return (
        sorted(alpha) == list(range(Q.size))
        and sorted(beta) == list(range(Q.base.order))
        and presheaf_morphism_witness(P, Q, alpha, beta) is None
    )


def presheaf_isomorphism(P: Presheaf, Q: Presheaf) -> PresheafMorphism | None:
    """An isomorphism of presheaves with global support, verified axiom by axiom.

    Candidates come from isomorphisms of the associated bands.
    """
    if not (P.global_support and Q.global_support) or P.size != Q.size or P.base.order != Q.base.order:
        return None
    h = find_isomorphism(to_band(P), to_band(Q))
    if h is None:
        return None
    beta = [-1] * P.base.order
    for x in range(P.size):
        beta[P.support[x]] = Q.support[h[x]]
    if is_presheaf_isomorphism(P, Q, h, beta):
        return PresheafMorphism(tuple(h), tuple(beta))
    return None


@dataclass(frozen=True)
class RoundTrip:
    ok: bool
    alpha: tuple[int, ...] | None = None
    beta: tuple[int, ...] | None = None
    counterexample: object = None


def band_roundtrip(B: FiniteSemigroup) -> RoundTrip:
    """band -> presheaf -> band must reproduce the table exactly."""
    B2 = to_band(band_to_presheaf(B))
    for a in B.elements:
        for b in B.elements:
            if B.table[a][b] != B2.table[a][b]:
                return RoundTrip(False, counterexample=(a, b))
    return RoundTrip(True, alpha=tuple(B.elements))


def presheaf_roundtrip(P: Presheaf) -> RoundTrip:
    """presheaf -> band -> presheaf, compared by the canonical isomorphism."""
    if not P.global_support:
        return RoundTrip(False, counterexample="no global support")
    Q = band_to_presheaf(to_band(P))
    alpha = tuple(range(P.size))
    beta = [-1] * P.base.order
    for x in range(P.size):
        beta[P.support[x]] = Q.support[x]
    if is_presheaf_isomorphism(P, Q, alpha, beta):
        return RoundTrip(True, alpha, tuple(beta))
    return RoundTrip(False, alpha, tuple(beta), presheaf_morphism_witness(P, Q, alpha, beta))


def roundtrip_check(obj: FiniteSemigroup | Presheaf) -> RoundTrip:
    if isinstance(obj, Presheaf):
        return presheaf_roundtrip(obj)
    return band_roundtrip(obj)


def morphism_transport(h: Sequence[int], B1: FiniteSemigroup, B2: FiniteSemigroup) -> PresheafMorphism:
    """The presheaf morphism ``(h, h')`` induced by a band homomorphism."""
    require_homomorphism(B1, B2, h)
    P1, P2 = band_to_presheaf(B1), band_to_presheaf(B2)
    beta = [-1] * P1.base.order
    for b in B1.elements:
        img = P2.support[h[b]]
        if beta[P1.support[b]] not in (-1, img):
            raise InternalTheoremViolation("homomorphism does not preserve R", witness=(b,))
        beta[P1.support[b]] = img
    w = presheaf_morphism_witness(P1, P2, h, beta)
    if w is not None:
        raise InternalTheoremViolation(f"transported pair violates {w[0]}", witness=w)
    return PresheafMorphism(tuple(h), tuple(beta))


@dataclass(frozen=True)
class OrderCompat:
    leq: tuple[tuple[bool, ...], ...]
    compatible: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]  # -1 where no meet exists


def order_and_compat(P: Presheaf) -> OrderCompat:
    """The order ``x <= y`` and compatibility relation, cross-checked.

    Both relations are computed from restrictions alone and then compared
    with their characterisations through the band product, together with
    the two triple conditions (common upper bound implies compatible;
    common upper bound and ``p(x) <= p(y)`` implies ``x <= y``).
    """
    n, p, E = P.size, P.support, P.base
    leq = [[E.leq(p[x], p[y]) and P.res[y][p[x]] == x for y in range(n)] for x in range(n)]
    meet = [[-1] * n for _ in range(n)]
    compat = [[False] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            lower = [u for u in range(n) if leq[u][x] and leq[u][y]]
            glb = [u for u in lower if all(leq[v][u] for v in lower)]
            if glb:
                meet[x][y] = glb[0]
                compat[x][y] = p[glb[0]] == E.meet[p[x]][p[y]]

    t = to_band(P).table
    for x in range(n):
        for y in range(n):
            if leq[x][y] != (x == t[x][y]):
                raise InternalTheoremViolation("x <= y disagrees with x = x o y", witness=(x, y))
            if compat[x][y] != (t[x][y] == t[y][x]):
                raise InternalTheoremViolation("x ~ y disagrees with x o y = y o x", witness=(x, y))
            if compat[x][y] and E.leq(p[x], p[y]) and not leq[x][y]:
                raise InternalTheoremViolation("compatible with smaller support but not below", witness=(x, y))
    for z in range(n):
        below = [x for x in range(n) if leq[x][z]]
        for x in below:
            for y in below:
                if not compat[x][y]:
                    raise InternalTheoremViolation("common upper bound but incompatible", witness=(x, y, z))
                if E.leq(p[x], p[y]) and not leq[x][y]:
                    raise InternalTheoremViolation("order corollary fails", witness=(x, y, z))
    return OrderCompat(
        tuple(map(tuple, leq)), tuple(map(tuple, compat)), tuple(map(tuple, meet))
    )


def presheaf_from_dict(doc: Mapping) -> Presheaf:
    sl = doc["semilattice"]
    meet = sl["meet"]
    if "order" in sl and sl["order"] != len(meet):
        raise InvalidPresheaf("semilattice order does not match its meet table")
    restrictions = {}
    for key, images in doc.get("restrictions", {}).items():
        e, f = (int(s) for s in key.split(">"))
        restrictions[(e, f)] = images
    return validate_presheaf(meet, doc["fibers"], restrictions, doc.get("labels"))


def presheaf_to_dict(P: Presheaf, covers_only: bool = True) -> dict:
    E = P.base
    restrictions = {}
    for e in range(E.order):
        targets = E.covers[e] if covers_only else [f for f in range(E.order) if E.leq(f, e) and f != e]
        for f in targets:
            restrictions[f"{e}>{f}"] = P.restriction_map(e, f)
    doc = {
        "semilattice": {"order": E.order, "meet": [list(r) for r in E.meet]},
        "fibers": [list(f) for f in P.fibers],
        "restrictions": restrictions,
    }
    if P.labels:
        doc["labels"] = list(P.labels)
    return doc


def r_partition_matches_support(P: Presheaf) -> bool:
    """In the associated band, ``x R y`` exactly when ``p(x) = p(y)``."""
    R = green(to_band(P)).R
    return R == Partition.from_key(P.size, P.support.__getitem__)
