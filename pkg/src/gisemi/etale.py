"""Etale actions of inverse semigroups and free etale sets."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .core import FiniteSemigroup, classify
from .errors import (
    BaseMismatch,
    E1Violated,
    E2Violated,
    NotAnAction,
    NotAPresheafMorphism,
    AxiomViolation,
    NotInverse,
)
from .presheaf import MeetSemilattice, Presheaf, presheaf_morphism_witness, validate_presheaf

MORPHISM_SEARCH_BOUND = 12


@dataclass(frozen=True)
class InverseSemigroup:
    base: FiniteSemigroup
    inv: tuple[int, ...]

    @classmethod
    def from_semigroup(cls, S: FiniteSemigroup) -> InverseSemigroup:
        if not classify(S).inverse:
            raise NotInverse("semigroup is not inverse")
        return cls(S, tuple(next(iter(v)) for v in S.inverse_sets))

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def table(self):
        return self.base.table

    def mul(self, a: int, b: int) -> int:
        return self.base.table[a][b]

    def d(self, s: int) -> int:
        return self.base.table[self.inv[s]][s]

    def r(self, s: int) -> int:
        return self.base.table[s][self.inv[s]]

    @property
    def idempotents(self) -> tuple[int, ...]:
        return self.base.idempotents

    @cached_property
    def eindex(self) -> dict[int, int]:
        """Idempotent element id -> index in :attr:`semilattice`."""
        return {e: i for i, e in enumerate(self.idempotents)}

    @cached_property
    def semilattice(self) -> MeetSemilattice:
        E, t = self.idempotents, self.base.table
        return MeetSemilattice(tuple(tuple(self.eindex[t[e][f]] for f in E) for e in E))


def inverse_semigroup(S: FiniteSemigroup | InverseSemigroup) -> InverseSemigroup:
    return S if isinstance(S, InverseSemigroup) else InverseSemigroup.from_semigroup(S)


def require_base(S: InverseSemigroup, P: Presheaf) -> None:
    if P.base.meet != S.semilattice.meet:
        raise BaseMismatch("presheaf base is not the semilattice of idempotents of the actor")


@dataclass(frozen=True)
class EtaleAction:
    actor: InverseSemigroup
    support: tuple[int, ...]  # idempotent element ids of the actor
    act: tuple[tuple[int, ...], ...]  # act[s][x] = s.x
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.support)

    @property
    def global_support(self) -> bool:
        return set(self.support) == set(self.actor.idempotents)


def etale_witness(actor: InverseSemigroup, support: Sequence[int], act: Sequence[Sequence[int]]):
    """First failing axiom as an exception instance, or None."""
    n, S = len(support), actor
    t = S.table
    if len(act) != S.order or any(len(row) != n for row in act):
        return NotAnAction("action table has the wrong shape")
    for x, e in enumerate(support):
        if t[e][e] != e:
            return AxiomViolation(f"support of {x} is not idempotent", witness=(x,))
    for row in act:
        for y in row:
            if not 0 <= y < n:
                return NotAnAction(f"action value {y} outside the carrier")
    for s in range(S.order):
        for u in range(S.order):
            su = t[s][u]
            for x in range(n):
                if act[su][x] != act[s][act[u][x]]:
                    return NotAnAction(f"({s}{u}).{x} != {s}.({u}.{x})", witness=(s, u, x))
    for x in range(n):
        if act[support[x]][x] != x:
            return E1Violated(f"p({x}).{x} != {x}", witness=(x,))
    for s in range(S.order):
        for x in range(n):
            if support[act[s][x]] != t[t[s][support[x]]][S.inv[s]]:
                return E2Violated(f"p({s}.{x}) != {s} p({x}) {s}^-1", witness=(s, x))
    return None


def validate_etale(
    actor: InverseSemigroup | FiniteSemigroup,
    support: Sequence[int],
    act: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
) -> EtaleAction:
    actor = inverse_semigroup(actor)
    err = etale_witness(actor, support, act)
    if err is not None:
        raise err
    return EtaleAction(actor, tuple(support), tuple(tuple(r) for r in act), tuple(labels) if labels else None)


def translation_action(S: InverseSemigroup | FiniteSemigroup) -> EtaleAction:
    """``S`` acting on itself on the left with ``p(x) = r(x)``."""
    S = inverse_semigroup(S)
    return validate_etale(S, [S.r(x) for x in range(S.order)], S.table)


def presheaf_of(A: EtaleAction) -> Presheaf:
    """The underlying presheaf over E(S): restriction to ``f`` is ``f.x``."""
    S = A.actor
    E, k = S.semilattice, S.semilattice.order
    idem = S.idempotents
    fibers = [[] for _ in range(k)]
    for x, e in enumerate(A.support):
        fibers[S.eindex[e]].append(x)
    restrictions = {}
    for e in range(k):
        for f in range(k):
            if E.leq(f, e) and e != f:
                restrictions[(e, f)] = [A.act[idem[f]][x] for x in fibers[e]]
    return validate_presheaf(E, fibers, restrictions, A.labels)


def semilattice_action(P: Presheaf) -> EtaleAction:
    """The base semilattice acting by ``e.x = x|_{e meet p(x)}``."""
    E = P.base
    S = InverseSemigroup(E.as_semigroup(), tuple(range(E.order)))
    act = [[P.res[x][E.meet[e][P.support[x]]] for x in range(P.size)] for e in range(E.order)]
    return validate_etale(S, P.support, act, P.labels)


# ---------------------------------------------------------------- actions on presheaves


@dataclass(frozen=True)
class PresheafAction:
    actor: InverseSemigroup
    presheaf: Presheaf
    act: tuple[tuple[int, ...], ...]  # -1 off the domain d(s) = p(x)

    def defined(self, s: int, x: int) -> bool:
        return self.actor.d(s) == self.actor.idempotents[self.presheaf.support[x]]


def presheaf_action_witness(PA: PresheafAction):
    S, X, act = PA.actor, PA.presheaf, PA.act
    t, idem, eidx = S.table, S.idempotents, S.eindex
    n = X.size
    p = [idem[i] for i in X.support]
    for s in range(S.order):
        for x in range(n):
            defined = S.d(s) == p[x]
            if defined != (act[s][x] >= 0):
                return AxiomViolation(f"domain mismatch at ({s}, {x})", witness=(s, x))
            if defined and p[act[s][x]] != S.r(s):
                return AxiomViolation(f"AP2 fails at ({s}, {x})", witness=("AP2", s, x))
    for e in idem:
        for x in range(n):
            if p[x] == e and act[e][x] != x:
                return AxiomViolation(f"AP1 fails at ({e}, {x})", witness=("AP1", e, x))
    for s in range(S.order):
        for u in range(S.order):
            if S.d(s) != S.r(u):
                continue
            su = t[s][u]
            for x in range(n):
                if act[u][x] < 0:
                    continue
                left = act[s][act[u][x]] >= 0
                right = act[su][x] >= 0
                if left != right or (left and act[s][act[u][x]] != act[su][x]):
                    return AxiomViolation(f"AP3 fails at ({s}, {u}, {x})", witness=("AP3", s, u, x))
    for s in range(S.order):
        for f in idem:
            if t[f][S.d(s)] != f:
                continue
            sf = t[s][f]
            for x in range(n):
                if act[s][x] < 0:
                    continue
                lhs = X.res[act[s][x]][eidx[S.r(sf)]]
                rhs = act[sf][X.res[x][eidx[f]]]
                if lhs != rhs:
                    return AxiomViolation(f"AP4 fails at ({s}, {f}, {x})", witness=("AP4", s, f, x))
    return None


def validate_presheaf_action(actor, presheaf: Presheaf, act: Sequence[Sequence[int]]) -> PresheafAction:
    actor = inverse_semigroup(actor)
    require_base(actor, presheaf)
    PA = PresheafAction(actor, presheaf, tuple(tuple(r) for r in act))
    err = presheaf_action_witness(PA)
    if err is not None:
        raise err
    return PA


def etale_to_presheaf_action(A: EtaleAction) -> PresheafAction:
    S = A.actor
    P = presheaf_of(A)
    act = [[A.act[s][x] if S.d(s) == A.support[x] else -1 for x in range(A.size)] for s in range(S.order)]
    return validate_presheaf_action(S, P, act)


def presheaf_action_to_etale(PA: PresheafAction) -> EtaleAction:
    """Totalise by ``s.x = (s p(x)) . (x|_{d(s) p(x)})``."""
    S, X = PA.actor, PA.presheaf
    t, idem, eidx = S.table, S.idempotents, S.eindex
    act = []
    for s in range(S.order):
        row = []
        for x in range(X.size):
            px = idem[X.support[x]]
            row.append(PA.act[t[s][px]][X.res[x][eidx[t[S.d(s)][px]]]])
        act.append(row)
    support = [idem[i] for i in X.support]
    A = validate_etale(S, support, act, X.labels)
    for s in range(S.order):
        for x in range(X.size):
            if PA.act[s][x] >= 0 and A.act[s][x] != PA.act[s][x]:
                raise AxiomViolation("totalised action disagrees on S*X", witness=(s, x))
    return A


# ---------------------------------------------------------------- morphisms


def etale_morphism_witness(A: EtaleAction, B: EtaleAction, phi: Sequence[int]):
    if len(phi) != A.size:
        return ("shape", None)
    for x in range(A.size):
        if B.support[phi[x]] != A.support[x]:
            return ("support", (x,))
    for s in range(A.actor.order):
        for x in range(A.size):
            if phi[A.act[s][x]] != B.act[s][phi[x]]:
                return ("equivariance", (s, x))
    return None


def etale_morphisms(A: EtaleAction, B: EtaleAction, fixed: dict[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """All etale morphisms ``A -> B`` extending ``fixed``, by propagation and backtracking."""
    n, S = A.size, A.actor

    def assign(phi, x, y):
        phi = dict(phi)
        stack = [(x, y)]
        while stack:
            u, v = stack.pop()
            if u in phi:
                if phi[u] != v:
                    return None
                continue
            if B.support[v] != A.support[u]:
                return None
            phi[u] = v
            for s in range(S.order):
                stack.append((A.act[s][u], B.act[s][v]))
        return phi

    start: dict[int, int] | None = {}
    for x, y in (fixed or {}).items():
        start = assign(start, x, y)
        if start is None:
            return

    def search(phi):
        if len(phi) == n:
            yield tuple(phi[x] for x in range(n))
            return
        x = next(u for u in range(n) if u not in phi)
        for y in range(B.size):
            nxt = assign(phi, x, y)
            if nxt is not None:
                yield from search(nxt)

    yield from search(start)


def etale_isomorphism_witness(A: EtaleAction, B: EtaleAction, phi: Sequence[int], psi: Sequence[int]):
    """Check an isomorphism of actions over different but isomorphic actors.

    ``psi`` maps the actor of ``A`` to the actor of ``B``; ``phi`` maps
    carriers. Returns None on success.
    """
    if sorted(phi) != list(range(B.size)) or sorted(psi) != list(range(B.actor.order)):
        return ("not bijective", None)
    tA, tB = A.actor.table, B.actor.table
    for a in range(A.actor.order):
        for b in range(A.actor.order):
            if psi[tA[a][b]] != tB[psi[a]][psi[b]]:
                return ("actor map not a homomorphism", (a, b))
    for x in range(A.size):
        if B.support[phi[x]] != psi[A.support[x]]:
            return ("support", (x,))
    for s in range(A.actor.order):
        for x in range(A.size):
            if phi[A.act[s][x]] != B.act[psi[s]][phi[x]]:
                return ("equivariance", (s, x))
    return None


# ---------------------------------------------------------------- free etale sets


@dataclass(frozen=True)
class FreeEtale:
    action: EtaleAction
    pairs: tuple[tuple[int, int], ...]  # carrier element -> (s, a), lexicographic
    unit: tuple[int, ...]  # a -> (q(a), a)
    presheaf: Presheaf

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {pair: i for i, pair in enumerate(self.pairs)}


def free_etale(S: InverseSemigroup | FiniteSemigroup, A: Presheaf) -> FreeEtale:
    """``S * A = {(s, a) : d(s) = q(a)}`` with ``s.(t, a) = (st, d(st).a)``."""
    S = inverse_semigroup(S)
    require_base(S, A)
    idem, eidx, t = S.idempotents, S.eindex, S.table
    pairs = tuple((s, a) for s in range(S.order) for a in range(A.size) if S.d(s) == idem[A.support[a]])
    index = {pair: i for i, pair in enumerate(pairs)}
    act = [
        [index[(t[s][u], A.res[a][eidx[S.d(t[s][u])]])] for (u, a) in pairs]
        for s in range(S.order)
    ]
    support = [S.r(s) for s, _ in pairs]
    labels = [f"({S.base.label(s)},{A.label(a)})" for s, a in pairs]
    action = validate_etale(S, support, act, labels)
    unit = tuple(index[(idem[A.support[a]], a)] for a in range(A.size))
    return FreeEtale(action, pairs, unit, A)


def presheaf_morphisms(P: Presheaf, Q: Presheaf) -> Iterator[tuple[int, ...]]:
    """Presheaf morphisms over the identity of a shared base."""
    n = P.size
    order = sorted(range(n), key=lambda x: -sum(P.base.leq(f, P.support[x]) for f in range(P.base.order)))
    identity = tuple(range(P.base.order))

    def consistent(alpha):
        for x, y in alpha.items():
            for f in range(P.base.order):
                r = P.res[x][f]
                if r >= 0 and r in alpha and alpha[r] != Q.res[y][f]:
                    return False
        return True

    def search(i, alpha):
        if i == n:
            yield tuple(alpha[x] for x in range(n))
            return
        x = order[i]
        for y in Q.fibers[P.support[x]]:
            alpha[x] = y
            if consistent(alpha):
                yield from search(i + 1, alpha)
            del alpha[x]

    if P.base.meet != Q.base.meet:
        return
    for alpha in search(0, {}):
        if presheaf_morphism_witness(P, Q, alpha, identity) is None:
            yield alpha


@dataclass(frozen=True)
class UniversalResult:
    theta: tuple[int, ...]
    unique: bool | None  # None when the carrier is above the search bound
    mediating_count: int | None


def universal_property_check(
    S: InverseSemigroup | FiniteSemigroup,
    A: Presheaf,
    target: EtaleAction,
    beta: Sequence[int],
    bound: int = MORPHISM_SEARCH_BOUND,
) -> UniversalResult:
    """The mediating morphism ``theta(s, a) = s.beta(a)`` and its uniqueness.

    ``beta`` must be a presheaf morphism from ``A`` to the underlying
    presheaf of ``target``.
    """
    S = inverse_semigroup(S)
    if target.actor.base.table != S.base.table:
        raise BaseMismatch("target is an action of a different semigroup")
    under = presheaf_of(target)
    identity = tuple(range(S.semilattice.order))
    w = presheaf_morphism_witness(A, under, beta, identity)
    if w is not None:
        raise NotAPresheafMorphism(f"beta violates {w[0]}", witness=w)
    F = free_etale(S, A)
    theta = tuple(target.act[s][beta[a]] for s, a in F.pairs)
    w = etale_morphism_witness(F.action, target, theta)
    if w is not None:
        raise AxiomViolation(f"theta is not an etale morphism ({w[0]})", witness=w)
    if any(theta[F.unit[a]] != beta[a] for a in range(A.size)):
        raise AxiomViolation("theta does not extend beta")
    if F.action.size > bound:
        return UniversalResult(theta, None, None)
    count = 0
    for phi in etale_morphisms(F.action, target):
        if all(phi[F.unit[a]] == beta[a] for a in range(A.size)):
            count += 1
    return UniversalResult(theta, count == 1, count)
