"""Right generalized inverse semigroups as free etale sets.

``build_right_yamada`` turns an inverse semigroup ``T`` and a presheaf over
``E(T)`` into a right generalized inverse semigroup on ``T * X``;
``kappa_decompose`` goes back, producing the isomorphism
``s -> ([s], s's)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .congruence import gamma, quotient
from .core import (
    FiniteSemigroup,
    Partition,
    classify,
    green,
    homomorphism_witness,
    opposite,
    require_homomorphism,
    validate,
)
from .errors import (
    InternalTheoremViolation,
    NoGlobalSupport,
    NotRightGeneralizedInverse,
    NotSurjective,
)
from .etale import (
    EtaleAction,
    FreeEtale,
    InverseSemigroup,
    etale_isomorphism_witness,
    free_etale,
    inverse_semigroup,
    require_base,
    validate_etale,
)
from .presheaf import Presheaf, validate_presheaf


@dataclass(frozen=True)
class RightYamada:
    actor: InverseSemigroup
    presheaf: Presheaf
    pairs: tuple[tuple[int, int], ...]
    semigroup: FiniteSemigroup
    free: FreeEtale

    @property
    def index(self) -> dict[tuple[int, int], int]:
        return self.free.index


def build_right_yamada(T: InverseSemigroup | FiniteSemigroup, X: Presheaf) -> RightYamada:
    """``(s, x)(t, y) = (st, d(st).y)`` on ``T * X``, with its structure verified."""
    T = inverse_semigroup(T)
    require_base(T, X)
    if not X.global_support:
        raise NoGlobalSupport("the presheaf has an empty fiber")
    F = free_etale(T, X)
    pairs, act = F.pairs, F.action.act
    table = [[act[s][j] for j in range(len(pairs))] for (s, _) in pairs]
    labels = [f"({T.base.label(s)},{X.label(x)})" for s, x in pairs]
    S = validate(table, labels)
    Y = RightYamada(T, X, pairs, S, F)
    _verify_right_yamada(Y)
    return Y


def _verify_right_yamada(Y: RightYamada) -> None:
    T, X, pairs, S = Y.actor, Y.presheaf, Y.pairs, Y.semigroup
    if not classify(S).right_generalized_inverse:
        raise InternalTheoremViolation("right Yamada semigroup is not right generalized inverse")
    expected = {Y.index[(T.idempotents[X.support[x]], x)] for x in range(X.size)}
    if set(S.idempotents) != expected:
        raise InternalTheoremViolation("idempotents are not the pairs (p(x), x)")
    for i, (s, _) in enumerate(pairs):
        described = {j for j, (u, _) in enumerate(pairs) if u == T.inv[s]}
        if S.inverse_sets[i] != described:
            raise InternalTheoremViolation(f"inverses of {pairs[i]} differ from (s^-1, y)", witness=(i,))
    g = gamma(S).partition
    first = Partition.from_key(S.order, lambda i: pairs[i][0])
    if g != first:
        raise InternalTheoremViolation("gamma classes are not the fibers of the first coordinate")
    Q, proj = quotient(S, g)
    psi = [-1] * Q.order
    for i, (s, _) in enumerate(pairs):
        psi[proj[i]] = s
    if sorted(psi) != list(range(T.order)) or homomorphism_witness(Q, T.base, psi) is not None:
        raise InternalTheoremViolation("S/gamma is not isomorphic to T via the first coordinate")


def build_left_yamada(T: InverseSemigroup | FiniteSemigroup, X: Presheaf) -> RightYamada:
    """Left Yamada semigroup as the opposite of a right one over ``T^op``.

    Pairs are stored ``(t, x)`` with ``r(t) = p(x)``; the product is
    ``(t, x)(u, y) = (tu, x.r(tu))``.
    """
    T = inverse_semigroup(T)
    Top = InverseSemigroup(opposite(T.base), T.inv)
    R = build_right_yamada(Top, X)
    return RightYamada(T, X, R.pairs, opposite(R.semigroup), R.free)


@dataclass(frozen=True)
class EtaleStructure:
    action: EtaleAction
    quotient: FiniteSemigroup  # S/gamma
    projection: tuple[int, ...]


def _require_right_gi(S: FiniteSemigroup) -> None:
    if not classify(S).right_generalized_inverse:
        raise NotRightGeneralizedInverse("expected a right generalized inverse semigroup")


def etale_structure(S: FiniteSemigroup) -> EtaleStructure:
    """``S/gamma`` acting on ``S`` by ``[a].s = as`` with ``p(s) = [ss']``."""
    _require_right_gi(S)
    Q, proj = quotient(S, gamma(S))
    T = InverseSemigroup.from_semigroup(Q)
    t = S.table
    classes = [[a for a in S.elements if proj[a] == c] for c in range(Q.order)]
    act = []
    for c, members in enumerate(classes):
        row = []
        for s in S.elements:
            images = {t[a][s] for a in members}
            if len(images) != 1:
                raise InternalTheoremViolation(f"[a].{s} depends on the representative of class {c}", witness=(c, s))
            row.append(images.pop())
        act.append(row)
    support = []
    for s in S.elements:
        images = {proj[t[s][v]] for v in S.inverse_sets[s]}
        if len(images) != 1:
            raise InternalTheoremViolation(f"p({s}) depends on the chosen inverse", witness=(s,))
        support.append(images.pop())
    A = validate_etale(T, support, act, S.labels)
    if not A.global_support:
        raise InternalTheoremViolation("etale structure lacks global support")
    return EtaleStructure(A, Q, tuple(proj))


def l_cover_check(S: FiniteSemigroup, T: FiniteSemigroup, theta: Sequence[int]) -> bool:
    """Surjective homomorphism bijective from each idempotent's L-class onto its image's."""
    require_homomorphism(S, T, theta)
    if set(theta) != set(T.elements):
        raise NotSurjective("map is not onto")
    LS, LT = green(S).L, green(T).L
    for e in S.idempotents:
        source = [a for a in S.elements if LS.same(a, e)]
        target = {b for b in T.elements if LT.same(b, theta[e])}
        image = [theta[a] for a in source]
        if len(set(image)) != len(image) or set(image) != target:
            return False
    return True


@dataclass(frozen=True)
class KappaDecomposition:
    T: InverseSemigroup
    presheaf: Presheaf  # carrier: E(S) in increasing order
    idempotents: tuple[int, ...]
    yamada: RightYamada
    kappa: tuple[int, ...]  # S -> yamada.semigroup
    projection: tuple[int, ...]  # S -> T


def kappa_decompose(S: FiniteSemigroup) -> KappaDecomposition:
    _require_right_gi(S)
    st = etale_structure(S)
    T, proj = st.action.actor, st.projection
    t = S.table
    E = S.idempotents
    eidx = {e: i for i, e in enumerate(E)}
    R = green(S).R
    for e in E:
        for f in E:
            if R.same(e, f) != (proj[e] == proj[f]):
                raise InternalTheoremViolation("E(S)/R does not match E(S/gamma)", witness=(e, f))
    if {proj[e] for e in E} != set(T.idempotents):
        raise InternalTheoremViolation("idempotents of S/gamma are not all images of idempotents")

    base = T.semilattice
    k = base.order
    fibers = [[] for _ in range(k)]
    for i, e in enumerate(E):
        fibers[T.eindex[proj[e]]].append(i)
    restrictions = {}
    for ei in range(k):
        for fi in range(k):
            if ei == fi or not base.leq(fi, ei):
                continue
            lifts = [a for a in E if proj[a] == T.idempotents[fi]]
            images = []
            for i in fibers[ei]:
                options = {t[a][E[i]] for a in lifts}
                if len(options) != 1:
                    raise InternalTheoremViolation("restriction depends on the lifted idempotent", witness=(i, fi))
                images.append(eidx[options.pop()])
            restrictions[(ei, fi)] = images
    X = validate_presheaf(base, fibers, restrictions, [S.label(e) for e in E] if S.labels else None)
    Y = build_right_yamada(T, X)

    kappa = []
    for s in S.elements:
        images = {Y.index[(proj[s], eidx[t[v][s]])] for v in S.inverse_sets[s]}
        if len(images) != 1:
            raise InternalTheoremViolation(f"kappa({s}) depends on the chosen inverse", witness=(s,))
        kappa.append(images.pop())
    if sorted(kappa) != list(range(Y.semigroup.order)):
        raise InternalTheoremViolation("kappa is not a bijection")
    w = homomorphism_witness(S, Y.semigroup, kappa)
    if w is not None:
        raise InternalTheoremViolation("kappa is not a homomorphism", witness=w)
    return KappaDecomposition(T, X, E, Y, tuple(kappa), proj)


@dataclass(frozen=True)
class FreeRoundTrip:
    ok: bool
    phi: tuple[int, ...]
    psi: tuple[int, ...]
    witness: object = None


def free_roundtrip_check(T: InverseSemigroup | FiniteSemigroup, X: Presheaf) -> FreeRoundTrip:
    """The etale structure of ``build_right_yamada(T, X)`` against ``T * X``.

    The carrier bijection is the identity on pairs and the actor map sends a
    gamma-class to the shared first coordinate of its members.
    """
    T = inverse_semigroup(T)
    Y = build_right_yamada(T, X)
    st = etale_structure(Y.semigroup)
    F = free_etale(T, X)
    psi = [-1] * st.quotient.order
    for i, (s, _) in enumerate(Y.pairs):
        psi[st.projection[i]] = s
    phi = tuple(F.index[pair] for pair in Y.pairs)
    w = etale_isomorphism_witness(st.action, F.action, phi, psi)
    return FreeRoundTrip(w is None, phi, tuple(psi), w)
