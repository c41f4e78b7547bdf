"""Property suites: each theorem check run over every member of a corpus.

A check either passes, fails with a witness, or is skipped (with a reason
in the witness slot). Library bug sentinels and domain errors raised while
checking count as failures and carry the error name and witness.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations, permutations
from typing import Callable, Iterable

from ..congruence import (
    idempotent_pure_check,
    impure_witness,
    lambda_rho,
    minimality_witness,
    restricts_to,
    subdirect_embed,
)
from ..core import FiniteSemigroup, Partition, band_clause_report, classify, find_isomorphism, green, order_compatibility_report
from ..errors import SemigroupError, UnknownSuite
from ..etale import (
    etale_to_presheaf_action,
    etale_witness,
    free_etale,
    presheaf_action_to_etale,
    presheaf_morphisms,
    presheaf_of,
    semilattice_action,
    translation_action,
    universal_property_check,
    MORPHISM_SEARCH_BOUND,
)
from ..madhavan import all_partitions, build_M_rho, idempotent_characterization_check
from ..morita import build_yamada, theta_iso_check, yamada_decompose
from ..presheaf import band_roundtrip, band_to_presheaf, order_and_compat, presheaf_roundtrip, singleton_presheaf
from ..yamada import etale_structure, free_roundtrip_check, kappa_decompose, l_cover_check
from .enumerate import Corpus, CorpusMember, corpus_upto

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass(frozen=True)
class CheckResult:
    check: str
    subject: str
    status: str
    witness: object = None

    def as_dict(self) -> dict:
        d = {"check": self.check, "subject": self.subject, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class RunReport:
    suite: str
    corpus: str
    results: list[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIP: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    def as_dict(self, timing: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "corpus": self.corpus,
            "ok": self.ok,
            "counts": self.counts(),
            "results": [r.as_dict() for r in self.results],
        }
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=True, default=_jsonable)


def _jsonable(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, Partition):
        return str(obj)
    if isinstance(obj, SemigroupError):
        return {"error": obj.name, "message": str(obj)}
    return repr(obj)


def _error_witness(exc: SemigroupError) -> dict:
    return {"error": exc.name, "message": str(exc), "witness": exc.witness}


# ---------------------------------------------------------------- checks
# A check takes a corpus member and yields (check name, status, witness).

Outcome = tuple[str, str, object]


def _bool(name: str, ok: bool, witness=None) -> Outcome:
    return (name, PASS if ok else FAIL, None if ok else (witness if witness is not None else "false"))


def _prop11(m: CorpusMember):
    for clause, ok in band_clause_report(m.semigroup).items():
        yield _bool(clause, ok)
    order_compatibility_report(m.semigroup)  # raises when a biconditional fails
    yield "order_compatibility", PASS, None


def _prop12(m: CorpusMember):
    S = m.semigroup
    lam, rho = lambda_rho(S)  # raises if a quotient has the wrong class
    yield "lambda_rho_congruences", PASS, None
    yield _bool("meet_is_equality", lam.partition.meet(rho.partition).is_equality())
    g = green(S)
    yield _bool("lambda_restricts_to_L", restricts_to(S, lam, g.L))
    yield _bool("rho_restricts_to_R", restricts_to(S, rho, g.R))
    w = minimality_witness(S, lam, "right_gi")
    yield _bool("lambda_minimum", w is None, None if w is None else str(w.partition))
    w = minimality_witness(S, rho, "left_gi")
    yield _bool("rho_minimum", w is None, None if w is None else str(w.partition))
    yield _bool("lambda_idempotent_pure", idempotent_pure_check(S, lam), impure_witness(S, lam))
    yield _bool("rho_idempotent_pure", idempotent_pure_check(S, rho), impure_witness(S, rho))


def _thm13(m: CorpusMember):
    emb = subdirect_embed(m.semigroup)  # verifies injectivity, homomorphism, surjective projections
    yield "subdirect_embedding", PASS, None
    yield _bool("left_factor_left_gi", classify(emb.left).left_generalized_inverse)
    yield _bool("right_factor_right_gi", classify(emb.right).right_generalized_inverse)


def _thm21(m: CorpusMember):
    rt = band_roundtrip(m.semigroup)
    yield _bool("band_presheaf_band", rt.ok, rt.counterexample)
    rt = presheaf_roundtrip(band_to_presheaf(m.semigroup))
    yield _bool("presheaf_band_presheaf", rt.ok, rt.counterexample)


def _lemma22(m: CorpusMember):
    order_and_compat(band_to_presheaf(m.semigroup))  # cross-checks raise on disagreement
    yield "order_and_compatibility", PASS, None


def _corpus_actions(m: CorpusMember) -> list[tuple[str, object]]:
    """Etale actions attached to a right generalized inverse semigroup.

    The action of ``S/gamma`` on ``S``, the semilattice action of the
    associated presheaf when ``S`` is a band, and free actions on the points
    and on the underlying presheaf, all with carriers within the search bound.
    """
    S = m.semigroup
    A = etale_structure(S).action
    T = A.actor
    out = [("structure", A)]
    if m.classification.is_band:
        out.append(("semilattice", semilattice_action(band_to_presheaf(S))))
    for label, P in (("free_on_points", singleton_presheaf(T.semilattice)), ("free_on_structure", presheaf_of(A))):
        F = free_etale(T, P)
        if F.action.size <= MORPHISM_SEARCH_BOUND:
            out.append((label, F.action))
    return out


def _prop32(m: CorpusMember):
    for label, A in _corpus_actions(m):
        PA = etale_to_presheaf_action(A)
        B = presheaf_action_to_etale(PA)
        yield _bool(f"{label}:etale_roundtrip", B.act == A.act and B.support == A.support)
        PB = etale_to_presheaf_action(B)
        yield _bool(f"{label}:presheaf_action_roundtrip", PB.act == PA.act and PB.presheaf == PA.presheaf)


def _prop33(m: CorpusMember):
    structure = etale_structure(m.semigroup).action
    T = structure.actor
    targets = (("translation", translation_action(T)), ("structure", structure))
    sources = (("points", singleton_presheaf(T.semilattice)), ("structure", presheaf_of(structure)))
    for a_label, A in sources:
        F = free_etale(T, A)
        err = etale_witness(T, F.action.support, F.action.act)
        yield _bool(f"{a_label}:free_axioms", err is None, None if err is None else _error_witness(err))
        if F.action.size > MORPHISM_SEARCH_BOUND:
            yield f"{a_label}:universal", SKIP, f"carrier {F.action.size} above {MORPHISM_SEARCH_BOUND}"
            continue
        for t_label, target in targets:
            if target.size > MORPHISM_SEARCH_BOUND:
                yield f"{a_label}->{t_label}:universal", SKIP, f"target carrier {target.size} above bound"
                continue
            bad, count = None, 0
            for beta in presheaf_morphisms(A, presheaf_of(target)):
                res = universal_property_check(T, A, target, beta)
                count += 1
                if not res.unique:
                    bad = {"beta": beta, "mediating": res.mediating_count}
                    break
            # with no presheaf morphism there is nothing to mediate
            yield (f"{a_label}->{t_label}:universal", PASS if bad is None else FAIL, bad if bad else None)


def _prop42(m: CorpusMember):
    S = m.semigroup
    st = etale_structure(S)  # raises when [a].s or p is ill defined
    yield "free_etale_structure", PASS, None
    yield _bool("l_cover", l_cover_check(S, st.quotient, st.projection))


def _thm45(m: CorpusMember):
    kappa_decompose(m.semigroup)
    yield "kappa_isomorphism", PASS, None


def _prop46(m: CorpusMember):
    dec = kappa_decompose(m.semigroup)
    rt = free_roundtrip_check(dec.T, dec.presheaf)
    yield _bool("free_roundtrip", rt.ok, rt.witness)


def _thm51(m: CorpusMember):
    dec = yamada_decompose(m.semigroup)
    yield "yamada_decomposition", PASS, None
    res = theta_iso_check(dec.yamada)
    yield _bool("tensor_class_count", res.yt.tensor.num_classes == dec.yamada.order)
    yield "theta_isomorphism", PASS, None


def _madhavan(m: CorpusMember):
    n = m.semigroup.order  # members here are placeholders carrying |X|
    for rho in all_partitions(n):
        M = build_M_rho(n, rho)
        yield _bool(f"{rho}:idempotents", idempotent_characterization_check(M))
        yield _bool(f"{rho}:right_gi", classify(M.semigroup).right_generalized_inverse)
    M = build_M_rho(n)
    iso = find_isomorphism(M.semigroup, symmetric_inverse_monoid(n))
    yield _bool("equality_is_symmetric_inverse_monoid", iso is not None)


def symmetric_inverse_monoid(n: int) -> FiniteSemigroup:
    """Partial injections of ``n`` points, built directly as dicts."""
    maps = []
    for k in range(n + 1):
        for dom in _subsets(n, k):
            for img in permutations(range(n), k):
                maps.append(dict(zip(dom, img)))
    keys = [tuple(sorted(m.items())) for m in maps]
    index = {k: i for i, k in enumerate(keys)}
    table = []
    for a in maps:
        row = []
        for b in maps:
            ab = {x: b[y] for x, y in a.items() if y in b}
            row.append(index[tuple(sorted(ab.items()))])
        table.append(row)
    return FiniteSemigroup(tuple(tuple(r) for r in table))


def _subsets(n: int, k: int):
    return combinations(range(n), k)


# ---------------------------------------------------------------- suite table


@dataclass(frozen=True)
class Suite:
    check: Callable[[CorpusMember], Iterable[Outcome]]
    filter: str
    default_order: int


SUITES: dict[str, Suite] = {
    "prop1.1": Suite(_prop11, "band", 4),
    "prop1.2": Suite(_prop12, "generalized_inverse", 5),
    "thm1.3": Suite(_thm13, "generalized_inverse", 5),
    "thm2.1": Suite(_thm21, "right_normal_band", 5),
    "lemma2.2": Suite(_lemma22, "right_normal_band", 4),
    "prop3.2": Suite(_prop32, "right_gi", 5),
    "prop3.3": Suite(_prop33, "right_gi", 5),
    "prop4.2": Suite(_prop42, "right_gi", 5),
    "thm4.5": Suite(_thm45, "right_gi", 5),
    "prop4.6": Suite(_prop46, "right_gi", 5),
    "thm5.1": Suite(_thm51, "generalized_inverse", 5),
    "madhavan": Suite(_madhavan, "all", 3),
}


def _madhavan_corpus(order: int) -> Corpus:
    members = []
    for n in range(1, order + 1):
        S = FiniteSemigroup(tuple(tuple(0 for _ in range(n)) for _ in range(n)))
        members.append(CorpusMember(f"X{n}", S, classify(S), provenance="carrier size"))
    return Corpus(tuple(members), f"carriers of size <= {order}")


def default_corpus(name: str, order: int | None = None) -> Corpus:
    suite = _suite(name)
    order = suite.default_order if order is None else order
    if name == "madhavan":
        return _madhavan_corpus(order)
    return corpus_upto(order, suite.filter)


def _suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None


def applicable(name: str, m: CorpusMember) -> bool:
    suite = _suite(name)
    if name == "madhavan":
        return True
    from .enumerate import CLASS_FILTERS

    return CLASS_FILTERS[suite.filter](m.classification)


def run_suite(name: str, corpus: Corpus | None = None, order: int | None = None) -> RunReport:
    """Run suite ``name`` over ``corpus`` (by default the enumerated corpus of its class)."""
    suite = _suite(name)
    if corpus is None:
        corpus = default_corpus(name, order)
    report = RunReport(name, corpus.description)
    start = time.perf_counter()
    for m in corpus:
        if not applicable(name, m):
            report.results.append(CheckResult("*", m.name, SKIP, "outside the suite's class"))
            continue
        try:
            for check, status, witness in suite.check(m):
                report.results.append(CheckResult(check, m.name, status, witness))
        except SemigroupError as exc:
            report.results.append(CheckResult(exc.name, m.name, FAIL, _error_witness(exc)))
    report.seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------- fixtures


FIXTURES = ("rz2", "lz2", "sl2", "y3", "i2", "m_full2")


def fixture_path(name: str):
    return resources.files("gisemi") / "fixtures" / name


def fixture_corpus() -> Corpus:
    from .io import read_semigroup

    members = []
    for name in FIXTURES:
        S = read_semigroup(fixture_path(f"{name}.sgp"))
        members.append(CorpusMember(name, S, classify(S), provenance="fixture"))
    return Corpus(tuple(members), "shipped fixtures")


def yamada_fixtures():
    """Yamada semigroups built from the shipped spec files."""
    from .io import read_yamada_spec

    out = []
    for name in ("yamada5.json",):
        T, X, Y = read_yamada_spec(fixture_path(name))
        out.append((name, build_yamada(T, X, Y if Y is not None else X)))
    return out
