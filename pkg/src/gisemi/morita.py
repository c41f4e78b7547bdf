"""Yamada semigroups, tensor products of S-sets and Morita semigroups.

A Yamada semigroup is built from an inverse semigroup ``T`` and two
presheaves over ``E(T)``: ``X`` read on the left (``x.e`` restricts ``x``
to ``e``) and ``Y`` on the right. Its elements are triples ``(x, t, y)`` with
``p(x) = r(t)`` and ``q(y) = d(t)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

from .congruence import gamma, lambda_rho, quotient
from .core import FiniteSemigroup, Partition, UnionFind, classify, green, homomorphism_witness, validate
from .errors import (
    ActorMismatch,
    IllDefinedProduct,
    InternalTheoremViolation,
    NoGlobalSupport,
    NotAnAction,
    NotBilinear,
    NotGeneralizedInverse,
)
from .etale import InverseSemigroup, inverse_semigroup, require_base
from .presheaf import Presheaf, validate_presheaf
from .yamada import RightYamada, build_right_yamada


@dataclass(frozen=True)
class YamadaSemigroup:
    T: InverseSemigroup
    X: Presheaf
    Y: Presheaf
    triples: tuple[tuple[int, int, int], ...]
    semigroup: FiniteSemigroup

    @cached_property
    def index(self) -> dict[tuple[int, int, int], int]:
        return {tr: i for i, tr in enumerate(self.triples)}

    @property
    def order(self) -> int:
        return len(self.triples)


def _restrict_to(T: InverseSemigroup, P: Presheaf, x: int, e: int) -> int:
    """Restriction of ``x`` to the idempotent element ``e`` of ``T``."""
    return P.res[x][T.eindex[e]]


def build_yamada(T: InverseSemigroup | FiniteSemigroup, X: Presheaf, Y: Presheaf) -> YamadaSemigroup:
    """``(x, s, y)(u, t, v) = (x.r(st), st, d(st).v)``, with the structure verified."""
    T = inverse_semigroup(T)
    require_base(T, X)
    require_base(T, Y)
    if not (X.global_support and Y.global_support):
        raise NoGlobalSupport("both presheaves need global support")
    idem = T.idempotents
    triples = tuple(
        (x, t, y)
        for x in range(X.size)
        for t in range(T.order)
        for y in range(Y.size)
        if idem[X.support[x]] == T.r(t) and idem[Y.support[y]] == T.d(t)
    )
    index = {tr: i for i, tr in enumerate(triples)}
    tt = T.table
    table = []
    for x, s, _ in triples:
        row = []
        for _, t, v in triples:
            st = tt[s][t]
            row.append(index[(_restrict_to(T, X, x, T.r(st)), st, _restrict_to(T, Y, v, T.d(st)))])
        table.append(row)
    labels = [f"({X.label(x)},{T.base.label(t)},{Y.label(y)})" for x, t, y in triples]
    Ys = YamadaSemigroup(T, X, Y, triples, validate(table, labels))
    _verify_yamada(Ys)
    return Ys


def _verify_yamada(Ys: YamadaSemigroup) -> None:
    S, T, triples = Ys.semigroup, Ys.T, Ys.triples
    n = S.order
    if not classify(S).generalized_inverse:
        raise InternalTheoremViolation("Yamada semigroup is not generalized inverse")
    E = set(T.idempotents)
    if set(S.idempotents) != {i for i, (_, t, _) in enumerate(triples) if t in E}:
        raise InternalTheoremViolation("idempotents are not the triples (x, e, y)")
    for i, (_, t, _) in enumerate(triples):
        described = {j for j, (_, u, _) in enumerate(triples) if u == T.inv[t]}
        if S.inverse_sets[i] != described:
            raise InternalTheoremViolation(f"inverse set of {triples[i]} differs from its description", witness=(i,))
    g = gamma(S).partition
    if g != Partition.from_key(n, lambda i: triples[i][1]):
        raise InternalTheoremViolation("gamma is not the middle coordinate")
    lam, rho = lambda_rho(S)
    if lam.partition != Partition.from_key(n, lambda i: triples[i][1:]):
        raise InternalTheoremViolation("lambda is not (middle, right) equality")
    if rho.partition != Partition.from_key(n, lambda i: triples[i][:2]):
        raise InternalTheoremViolation("rho is not (left, middle) equality")
    LT, L = green(T.base).L, green(S).L
    for i, (_, s, y) in enumerate(triples):
        for j, (_, t, v) in enumerate(triples):
            if L.same(i, j) != (LT.same(s, t) and y == v):
                raise InternalTheoremViolation("L-relation differs from its coordinate description", witness=(i, j))


@dataclass(frozen=True)
class LeftPairs:
    """Pairs ``(x, t)`` with ``p(x) = r(t)`` and ``(x, s)(u, t) = (x.r(st), st)``."""

    pairs: tuple[tuple[int, int], ...]
    semigroup: FiniteSemigroup

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {pr: i for i, pr in enumerate(self.pairs)}


def left_pairs(T: InverseSemigroup, X: Presheaf) -> LeftPairs:
    idem, tt = T.idempotents, T.table
    pairs = tuple((x, t) for x in range(X.size) for t in range(T.order) if idem[X.support[x]] == T.r(t))
    index = {pr: i for i, pr in enumerate(pairs)}
    table = [
        [index[(_restrict_to(T, X, x, T.r(tt[s][t])), tt[s][t])] for (_, t) in pairs]
        for (x, s) in pairs
    ]
    return LeftPairs(pairs, validate(table))


@dataclass(frozen=True)
class Projections:
    right: RightYamada  # S/lambda as pairs (t, y)
    left: LeftPairs  # S/rho as pairs (x, t)
    lambda_map: tuple[int, ...]  # triple -> index in right
    rho_map: tuple[int, ...]  # triple -> index in left


def lambda_rho_projections(Ys: YamadaSemigroup) -> Projections:
    """Identify ``S/lambda`` with pairs ``(t, y)`` and ``S/rho`` with ``(x, t)``.

    The quotients are computed abstractly and matched against the pair
    semigroups through the coordinate maps, which must be isomorphisms.
    """
    S = Ys.semigroup
    lam, rho = lambda_rho(S)
    right = build_right_yamada(Ys.T, Ys.Y)
    left = left_pairs(Ys.T, Ys.X)
    lmap = tuple(right.index[(t, y)] for _, t, y in Ys.triples)
    rmap = tuple(left.index[(x, t)] for x, t, _ in Ys.triples)
    for cong, target, coord in ((lam, right.semigroup, lmap), (rho, left.semigroup, rmap)):
        Q, proj = quotient(S, cong)
        bij = [-1] * Q.order
        for i in S.elements:
            if bij[proj[i]] not in (-1, coord[i]):
                raise InternalTheoremViolation("coordinate map is not constant on classes", witness=(i,))
            bij[proj[i]] = coord[i]
        if sorted(bij) != list(range(target.order)):
            raise InternalTheoremViolation("quotient and pair semigroup differ in size")
        w = homomorphism_witness(Q, target, bij)
        if w is not None:
            raise InternalTheoremViolation("quotient is not isomorphic to the pair semigroup", witness=w)
    return Projections(right, left, lmap, rmap)


# ---------------------------------------------------------------- S-sets and tensors


@dataclass(frozen=True)
class SSet:
    """A left or right action; ``act[s][x]`` is ``s.x`` or ``x.s``."""

    side: str
    actor: FiniteSemigroup
    act: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.act[0]) if self.act else 0


def validate_sset(side: str, actor: FiniteSemigroup, act: Sequence[Sequence[int]], labels=None) -> SSet:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    t = actor.table
    n = len(act[0]) if act else 0
    if len(act) != actor.order or any(len(r) != n or any(not 0 <= v < n for v in r) for r in act):
        raise NotAnAction("action table has the wrong shape")
    for s in actor.elements:
        for u in actor.elements:
            for x in range(n):
                if side == "left":
                    ok = act[t[s][u]][x] == act[s][act[u][x]]
                else:
                    ok = act[t[s][u]][x] == act[u][act[s][x]]
                if not ok:
                    raise NotAnAction(f"action law fails at ({s}, {u}, {x})", witness=(s, u, x))
    return SSet(side, actor, tuple(tuple(r) for r in act), tuple(labels) if labels else None)


@dataclass(frozen=True)
class Tensor:
    Q: SSet  # right set
    P: SSet  # left set
    partition: Partition  # over pairs, pair (q, p) has id q * |P| + p

    def pair_id(self, q: int, p: int) -> int:
        return q * self.P.size + p

    def class_of(self, q: int, p: int) -> int:
        return self.partition.class_of[self.pair_id(q, p)]

    @property
    def num_classes(self) -> int:
        return self.partition.num_classes

    @cached_property
    def representatives(self) -> tuple[tuple[int, int], ...]:
        """Least pair of each class, lexicographically."""
        m = self.P.size
        return tuple(divmod(block[0], m) for block in self.partition.classes())


def tensor(Q: SSet, P: SSet) -> Tensor:
    """``Q x P`` modulo the equivalence generated by ``(q.s, p) ~ (q, s.p)``."""
    if Q.side != "right" or P.side != "left":
        raise ActorMismatch("tensor needs a right set and a left set")
    if Q.actor.table != P.actor.table:
        raise ActorMismatch("the two sets have different actors")
    m = P.size
    uf = UnionFind(Q.size * m)
    for s in Q.actor.elements:
        qs, sp = Q.act[s], P.act[s]
        for q in range(Q.size):
            for p in range(m):
                uf.union(qs[q] * m + p, q * m + sp[p])
    return Tensor(Q, P, Partition.from_union_find(uf))


def balanced_witness(f: Callable[[int, int], object], Q: SSet, P: SSet):
    for s in Q.actor.elements:
        for q in range(Q.size):
            for p in range(P.size):
                if f(Q.act[s][q], p) != f(q, P.act[s][p]):
                    return (q, s, p)
    return None


def balanced_check(f: Callable[[int, int], object], Q: SSet, P: SSet) -> bool:
    """Whether ``f(q.s, p) = f(q, s.p)`` for every ``q``, ``s``, ``p``."""
    return balanced_witness(f, Q, P) is None


def bilinear_witness(pairing: Callable[[int, int], int], Q: SSet, P: SSet):
    """``<r p, q> = r <p, q>`` and ``<p, q s> = <p, q> s`` over all arguments."""
    t = P.actor.table
    for r in P.actor.elements:
        for p in range(P.size):
            for q in range(Q.size):
                v = pairing(p, q)
                if pairing(P.act[r][p], q) != t[r][v]:
                    return ("left", r, p, q)
                if pairing(p, Q.act[r][q]) != t[v][r]:
                    return ("right", r, p, q)
    return None


@dataclass(frozen=True)
class Morita:
    tensor: Tensor
    semigroup: FiniteSemigroup  # on tensor classes


def morita_product(Q: SSet, P: SSet, pairing: Callable[[int, int], int], T: Tensor | None = None) -> Morita:
    """``(q (x) p)(q' (x) p') = q (x) <p, q'> p'`` on ``Q (x) P``.

    The product is evaluated on every pair of representatives, so a
    representative-dependent result raises IllDefinedProduct.
    """
    w = bilinear_witness(pairing, Q, P)
    if w is not None:
        raise NotBilinear(f"pairing fails {w[0]} linearity", witness=w)
    T = T or tensor(Q, P)
    k = T.num_classes
    blocks = [[divmod(i, P.size) for i in block] for block in T.partition.classes()]
    table = [[-1] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            values = {
                T.class_of(q, P.act[pairing(p, q2)][p2])
                for (q, p) in blocks[a]
                for (q2, p2) in blocks[b]
            }
            if len(values) != 1:
                raise IllDefinedProduct(f"product of classes {a} and {b} depends on representatives", witness=(a, b))
            table[a][b] = values.pop()
    return Morita(T, validate(table))


# ---------------------------------------------------------------- Yamada = Morita


@dataclass(frozen=True)
class YamadaTensor:
    yamada: YamadaSemigroup
    left: LeftPairs  # S_L, a right T-set
    right: RightYamada  # S_R, a left T-set
    Q: SSet
    P: SSet
    morita: Morita

    @property
    def tensor(self) -> Tensor:
        return self.morita.tensor

    def pairing(self, p: int, q: int) -> int:
        s, _ = self.right.pairs[p]
        _, t = self.left.pairs[q]
        return self.yamada.T.table[s][t]


def yamada_tensor(Ys: YamadaSemigroup) -> YamadaTensor:
    """``S_L (x) S_R`` over ``T`` with the pairing ``<(s, y), (x, t)> = st``."""
    T = Ys.T
    tt = T.table
    left = left_pairs(T, Ys.X)
    right = build_right_yamada(T, Ys.Y)
    q_act = [
        [left.index[(_restrict_to(T, Ys.X, x, T.r(tt[s][t])), tt[s][t])] for (x, s) in left.pairs]
        for t in range(T.order)
    ]
    Q = validate_sset("right", T.base, q_act)
    P = validate_sset("left", T.base, right.free.action.act)

    def pairing(p: int, q: int) -> int:
        return tt[right.pairs[p][0]][left.pairs[q][1]]

    return YamadaTensor(Ys, left, right, Q, P, morita_product(Q, P, pairing))


def normalize(yt: YamadaTensor, q: int, p: int) -> tuple[int, int]:
    """Rewrite ``xs (x) ty`` as ``(x.r(st)) r(st) (x) st (d(st).y)``.

    Returns indices into ``S_L`` and ``S_R``; the result is checked to lie in
    the class of the input.
    """
    T, X, Y = yt.yamada.T, yt.yamada.X, yt.yamada.Y
    x, s = yt.left.pairs[q]
    t, y = yt.right.pairs[p]
    st = T.table[s][t]
    nq = yt.left.index[(_restrict_to(T, X, x, T.r(st)), T.r(st))]
    np_ = yt.right.index[(st, _restrict_to(T, Y, y, T.d(st)))]
    if yt.tensor.class_of(nq, np_) != yt.tensor.class_of(q, p):
        raise InternalTheoremViolation("normalised tensor left its class", witness=(q, p))
    return nq, np_


def is_normalized(yt: YamadaTensor, q: int, p: int) -> bool:
    """``q = x r(s)`` and ``p = s y`` for the same ``s``."""
    _, e = yt.left.pairs[q]
    s, _ = yt.right.pairs[p]
    return e == yt.yamada.T.r(s)


@dataclass(frozen=True)
class ThetaResult:
    theta: tuple[int, ...]  # triple index -> tensor class
    yt: YamadaTensor


def theta_iso_check(Ys: YamadaSemigroup) -> ThetaResult:
    """``theta(x, s, y) = x r(s) (x) s y`` as an isomorphism onto ``S_L (x) S_R``."""
    yt = yamada_tensor(Ys)
    T = Ys.T
    theta = tuple(
        yt.tensor.class_of(yt.left.index[(x, T.r(s))], yt.right.index[(s, y)]) for x, s, y in Ys.triples
    )
    M = yt.morita.semigroup
    if M.order != Ys.order:
        raise InternalTheoremViolation(f"{M.order} tensor classes for {Ys.order} triples")
    if sorted(theta) != list(range(M.order)):
        raise InternalTheoremViolation("theta is not a bijection onto the tensor classes")
    w = homomorphism_witness(Ys.semigroup, M, theta)
    if w is not None:
        raise InternalTheoremViolation("theta is not a homomorphism", witness=w)
    return ThetaResult(theta, yt)


# ---------------------------------------------------------------- decomposition


@dataclass(frozen=True)
class YamadaDecomposition:
    yamada: YamadaSemigroup
    iso: tuple[int, ...]  # S -> yamada.semigroup


def yamada_decompose(S: FiniteSemigroup) -> YamadaDecomposition:
    """Present a generalized inverse semigroup as ``Y(X, S/gamma, Y)``.

    ``X`` is the set of R-classes of idempotents and ``Y`` the set of
    L-classes, both over ``E(S/gamma)``; ``s`` goes to
    ``([ss']_R, [s], [s's]_L)``.
    """
    if not classify(S).generalized_inverse:
        raise NotGeneralizedInverse("expected a generalized inverse semigroup")
    Qg, proj = quotient(S, gamma(S))
    T = InverseSemigroup.from_semigroup(Qg)
    gr = green(S)
    t, E = S.table, S.idempotents
    base = T.semilattice

    def side(rel: Partition, left: bool) -> tuple[Presheaf, dict[int, int]]:
        cls = Partition.from_key(len(E), lambda i: rel.class_of[E[i]])
        of = {e: cls.class_of[i] for i, e in enumerate(E)}
        reps = [E[block[0]] for block in cls.classes()]
        fibers = [[] for _ in range(base.order)]
        for c, e in enumerate(reps):
            fibers[T.eindex[proj[e]]].append(c)
        restrictions = {}
        for ei in range(base.order):
            for fi in range(base.order):
                if ei == fi or not base.leq(fi, ei):
                    continue
                lifts = [a for a in E if proj[a] == T.idempotents[fi]]
                images = []
                for c in fibers[ei]:
                    members = [e for e in E if of[e] == c]
                    options = {of[t[e][a]] if left else of[t[a][e]] for e in members for a in lifts}
                    if len(options) != 1:
                        raise InternalTheoremViolation("restriction of an idempotent class is not well defined")
                    images.append(options.pop())
                restrictions[(ei, fi)] = images
        return validate_presheaf(base, fibers, restrictions), of

    X, xof = side(gr.R, left=True)
    Y, yof = side(gr.L, left=False)
    Ys = build_yamada(T, X, Y)
    iso = []
    for s in S.elements:
        images = {Ys.index[(xof[t[s][v]], proj[s], yof[t[v][s]])] for v in S.inverse_sets[s]}
        if len(images) != 1:
            raise InternalTheoremViolation(f"image of {s} depends on the chosen inverse", witness=(s,))
        iso.append(images.pop())
    if sorted(iso) != list(range(Ys.order)):
        raise InternalTheoremViolation("decomposition map is not a bijection")
    w = homomorphism_witness(S, Ys.semigroup, iso)
    if w is not None:
        raise InternalTheoremViolation("decomposition map is not a homomorphism", witness=w)
    return YamadaDecomposition(Ys, tuple(iso))
