"""Command line front end.

Exit status is 0 on success, 1 when the library rejects the input (the
error class name is printed), and 2 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from ..congruence import gamma, lambda_rho, quotient
from ..core import Partition, classify, green
from ..errors import SemigroupError
from ..madhavan import build_M_rho, describe
from ..morita import build_yamada, theta_iso_check, yamada_decompose
from ..presheaf import presheaf_to_dict
from .enumerate import CLASS_FILTERS, enumerate_semigroups
from .io import format_sgp, read_semigroup, read_yamada_spec, semigroup_to_dict
from .suites import SUITES, run_suite


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_classify(args) -> None:
    S = read_semigroup(args.file)
    c = classify(S)
    _emit(args, {"order": S.order, "summary": c.summary(), **c.as_dict()}, c.summary())


def cmd_green(args) -> None:
    S = read_semigroup(args.file)
    g = green(S).as_dict()
    text = "\n".join(f"{k}: {p}" for k, p in g.items())
    _emit(args, {k: [list(b) for b in p.classes()] for k, p in g.items()}, text)


def cmd_quotient(args) -> None:
    S = read_semigroup(args.file)
    if args.rel == "gamma":
        c = gamma(S)
    else:
        lam, rho = lambda_rho(S)
        c = lam if args.rel == "lambda" else rho
    Q, proj = quotient(S, c)
    doc = {"classes": [list(b) for b in c.partition.classes()], "projection": list(proj), "quotient": semigroup_to_dict(Q)}
    text = f"# {args.rel} classes: {c.partition}\n" + format_sgp(Q).rstrip()
    _emit(args, doc, text)


def cmd_yamada_build(args) -> None:
    T, X, Y = read_yamada_spec(args.spec)
    Ys = build_yamada(T, X, Y if Y is not None else X)
    labels = [f"({Ys.X.label(x)},{Ys.T.base.label(s)},{Ys.Y.label(y)})" for x, s, y in Ys.triples]
    S = Ys.semigroup
    doc = {"triples": [list(t) for t in Ys.triples], "semigroup": semigroup_to_dict(S), "labels": labels}
    _emit(args, doc, format_sgp(S, "triples: " + " ".join(labels)).rstrip())


def cmd_yamada_decompose(args) -> None:
    S = read_semigroup(args.file)
    dec = yamada_decompose(S)
    Ys = dec.yamada
    doc = {
        "T": semigroup_to_dict(Ys.T.base),
        "X": presheaf_to_dict(Ys.X),
        "Y": presheaf_to_dict(Ys.Y),
        "triples": [list(t) for t in Ys.triples],
        "iso": list(dec.iso),
    }
    lines = [f"S/gamma has order {Ys.T.order}; |X| = {Ys.X.size}, |Y| = {Ys.Y.size}"]
    lines += [f"{S.label(s)} -> {Ys.triples[i]}" for s, i in enumerate(dec.iso)]
    _emit(args, doc, "\n".join(lines))


def cmd_tensor_verify(args) -> None:
    T, X, Y = read_yamada_spec(args.spec)
    Ys = build_yamada(T, X, Y if Y is not None else X)
    res = theta_iso_check(Ys)
    ten = res.yt.tensor
    classes = [[] for _ in range(ten.num_classes)]
    for q in range(res.yt.Q.size):
        for p in range(res.yt.P.size):
            classes[ten.class_of(q, p)].append([q, p])
    doc = {
        "yamada_order": Ys.order,
        "tensor_classes": ten.num_classes,
        "representatives": [list(r) for r in ten.representatives],
        "classes": classes,
        "theta": list(res.theta),
        "isomorphism": True,
    }
    text = (
        f"|Y| = {Ys.order}, tensor classes = {ten.num_classes}; theta is an isomorphism\n"
        + "\n".join(f"{c}: {ten.representatives[c]} ~ {len(members)} pairs" for c, members in enumerate(classes))
    )
    _emit(args, doc, text)


def cmd_madhavan(args) -> None:
    n = args.size
    rho = None
    if args.partition:
        try:
            blocks = [[int(t) - 1 for t in part.split()] for part in args.partition.split("|")]
        except ValueError:
            raise _Usage(f"bad partition {args.partition!r}") from None
        if sorted(x for b in blocks for x in b) != list(range(n)):
            raise _Usage(f"partition must cover 1..{n} exactly once")
        rho = Partition.from_classes(n, blocks)
    M = build_M_rho(n, rho)
    S = M.semigroup
    legend = [f"{i} = {describe(a)}" for i, a in enumerate(M.functions)]
    doc = {"semigroup": semigroup_to_dict(S), "legend": [describe(a) for a in M.functions]}
    head = f"M_rho on {{1..{n}}}, rho = {args.partition or 'equality'}; ab applies a first\n" + "\n".join(legend)
    _emit(args, doc, format_sgp(S, head).rstrip())


def cmd_enumerate(args) -> None:
    corpus = enumerate_semigroups(args.order, args.cls)
    doc = {
        "order": args.order,
        "class": args.cls,
        "count": len(corpus),
        "members": [{"name": m.name, "table": m.semigroup.as_lists(), "summary": m.classification.summary()} for m in corpus],
    }
    if args.json:
        _emit(args, doc, "")
        return
    print(f"{len(corpus)} {args.cls} semigroups of order {args.order}")
    for m in corpus:
        print(f"# {m.name}: {m.classification.summary()}")
        print(format_sgp(m.semigroup).rstrip())


def cmd_suite(args) -> int:
    report = run_suite(args.name, order=args.order)
    if args.json:
        print(report.to_json())
    else:
        c = report.counts()
        print(f"{report.suite} over {report.corpus}: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped")
        for r in report.failures():
            print(f"FAIL {r.subject} {r.check}: {r.witness}")
    return 0 if report.ok else 1


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gisemi", description="Finite generalized inverse semigroup workbench")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(func=func)
        return sp

    add("classify", cmd_classify, help="classify a semigroup").add_argument("file")
    add("green", cmd_green, help="Green's relations").add_argument("file")
    q = add("quotient", cmd_quotient, help="quotient by gamma, lambda or rho")
    q.add_argument("--rel", choices=["gamma", "lambda", "rho"], required=True)
    q.add_argument("file")

    y = sub.add_parser("yamada", help="Yamada semigroups")
    ysub = y.add_subparsers(dest="action", required=True, parser_class=_Parser)
    yb = ysub.add_parser("build")
    yb.add_argument("spec")
    yb.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    yb.set_defaults(func=cmd_yamada_build)
    yd = ysub.add_parser("decompose")
    yd.add_argument("file")
    yd.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    yd.set_defaults(func=cmd_yamada_decompose)

    t = sub.add_parser("tensor", help="tensor products")
    tsub = t.add_subparsers(dest="action", required=True, parser_class=_Parser)
    tv = tsub.add_parser("verify")
    tv.add_argument("spec")
    tv.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    tv.set_defaults(func=cmd_tensor_verify)

    m = add("madhavan", cmd_madhavan, help="build M_rho(X)")
    m.add_argument("--size", type=int, required=True)
    m.add_argument("--partition", help='1-based blocks, e.g. "1 2|3"; default equality')

    e = add("enumerate", cmd_enumerate, help="semigroups of a given order up to isomorphism")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--class", dest="cls", default="all", choices=sorted(CLASS_FILTERS))

    s = add("suite", cmd_suite, help="run a property suite")
    s.add_argument("name", choices=list(SUITES))
    s.add_argument("--order", type=int)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        status = args.func(args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SemigroupError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
