"""Command-line front end: validate, classify, construct, verify, search, corpus."""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .algebra import DEFAULT_MAX_RING_ORDER, max_ring_order, ring_from_json
from .classify import DEFAULT_IDEAL_CAP, classify
from .constructions import DEFAULT_SIMILARITY_BUDGET, similarity_to_good_form
from .corpus import CorpusSpec, build_corpus, corpus_recipes
from .errors import GraderingError, IdealLatticeCap, OrderCapExceeded
from .graded import graded_from_json
from .harness import (
    REGISTRY,
    VIOLATED,
    Budget,
    in_scope_ids,
    render_markdown,
    replay,
    report_header,
    report_json,
    search_counterexample,
    verify_all,
)
from .laurent import Kind, symbolic_is_graded_nil_good, symbolic_laurent_nil_good_counterwitness
from .recipes import build, build_symbolic, is_symbolic

EXIT_OK, EXIT_ERROR, EXIT_FOUND = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text: str) -> None:
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{path}: top-level value must be an object")
    return data


def _budget(args) -> Budget:
    return Budget(derived_max_order=args.derived_max_order, ideal_cap=args.ideal_cap)


def _caps(args) -> dict:
    return {
        "max_ring_order": max_ring_order(),
        "ideal_cap": args.ideal_cap,
        "derived_max_order": args.derived_max_order,
        "similarity_budget": args.similarity_budget,
    }


def _header(args, **extra) -> dict:
    h = {"tool": "gradering", "version": __version__, "command": args.command, "caps": _caps(args)}
    h.update(extra)
    return h


def _markdown_kv(title: str, data: dict) -> str:
    lines = [f"# {title}", ""]
    for k, v in sorted(data.items()):
        if isinstance(v, dict):
            lines.append(f"## {k}")
            lines += [f"- {kk}: {json.dumps(vv, ensure_ascii=False)}" for kk, vv in sorted(v.items())]
            lines.append("")
        else:
            lines.append(f"- {k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    data = _load(args.input)
    if "grading" in data:
        GR = graded_from_json(data)
        out = {
            "valid": True,
            "kind": "graded_ring",
            "order": GR.ring.order,
            "group_order": GR.group.order,
            "support": sorted(GR.support()),
        }
    else:
        R = ring_from_json(data.get("ring", data))
        out = {"valid": True, "kind": "ring", "order": R.order, "degenerate": R.degenerate}
    out = {"header": _header(args), "result": out}
    _emit(args, _dump(out) if args.format == "json" else _markdown_kv("Validation", out["result"]))
    return EXIT_OK


def cmd_classify(args) -> int:
    data = _load(args.input)
    GR = build(data) if "construct" in data else graded_from_json(data)
    rep = classify(GR, args.ideal_cap).to_json()
    rep["name"] = GR.name
    if args.good_form and GR.meta.get("construction") == "matrix":
        x = rep["counterexamples"]["graded_nil_good"]
        if x is not None:
            res = similarity_to_good_form(GR, x, budget=args.similarity_budget)
            rep["good_form"] = None if res is None else {"V": res.V, "conjugate": res.conjugate}
    out = {"header": _header(args, input=os.path.basename(args.input)), "report": rep}
    if args.format == "json":
        _emit(args, _dump(out))
    else:
        lines = [f"# Classification of {GR.name}", ""]
        lines += [f"- {k}: {v}" for k, v in sorted(rep["flags"].items())]
        lines += ["", "Counterexamples:"]
        lines += [f"- {k}: {v}" for k, v in sorted(rep["counterexamples"].items())]
        lines += ["", f"Radical J: {rep['radical']}", f"Graded radical J^g: {rep['graded_radical']}", ""]
        lines += ["Caps: " + ", ".join(f"{k}={v}" for k, v in sorted(_caps(args).items()))]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_construct(args) -> int:
    spec = _load(args.input)
    if is_symbolic(spec):
        S = build_symbolic(spec)
        verdict = symbolic_is_graded_nil_good(S)
        out = {
            "header": _header(args),
            "symbolic": spec,
            "graded_nil_good": verdict.holds,
            "trace": verdict.trace,
            "witness": None if verdict.witness is None else [list(verdict.witness[0]), verdict.witness[1]],
        }
        if S.kind is Kind.LAURENT:
            try:
                cw = symbolic_laurent_nil_good_counterwitness(S)
                out["nil_good"] = cw.nil_good
                out["nil_good_witness"] = {"element": cw.element, "justification": list(cw.justification)}
            except GraderingError as exc:
                out["nil_good"] = None
                out["nil_good_note"] = str(exc)
    else:
        GR = build(spec)
        out = GR.to_json()
        out["recipe"] = spec
    _emit(args, _dump(out) if args.format == "json" else _markdown_kv("Construction", out))
    return EXIT_OK


def _corpus_spec(args) -> CorpusSpec:
    if args.corpus in (None, "default"):
        spec = CorpusSpec()
    else:
        try:
            spec = CorpusSpec.from_json(_load(args.corpus))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"{args.corpus}: {exc}") from None
    if args.seed is not None:
        spec = CorpusSpec.from_json({**spec.to_json(), "seed": args.seed})
    return spec


def cmd_verify(args) -> int:
    budget = _budget(args)
    if args.replay:
        outcome = replay(_load(args.replay), budget)
        _emit(args, _dump(outcome))
        return EXIT_FOUND if outcome["outcome"] == VIOLATED else EXIT_OK
    if args.theorem == "all":
        ids = list(REGISTRY)
    elif args.theorem == "in-scope":
        ids = in_scope_ids()
    else:
        ids = [t.strip() for t in args.theorem.split(",")]
        for t in ids:
            if t not in REGISTRY:
                raise UsageError(f"unknown theorem id {t!r}")
    spec = _corpus_spec(args)
    skipped: list = []
    corpus = build_corpus(spec, skipped)
    reports = verify_all(corpus, ids, budget, workers=args.workers)
    header = report_header(spec.to_json(), budget)
    header.update(_header(args))
    header["caps"].update(_caps(args))
    header["corpus_size"] = len(corpus)
    header["corpus_skipped"] = [list(s) for s in skipped]
    if args.format == "json":
        _emit(args, _dump(report_json(reports, header, timings=args.timings)))
    else:
        _emit(args, render_markdown(reports, header))
    if args.markdown:
        write_atomic(args.markdown, render_markdown(reports, header))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FOUND


def cmd_search(args) -> int:
    imp = _load(args.implication)
    corpus = build_corpus(_corpus_spec(args))
    res = search_counterexample(imp, corpus)
    out = {"header": _header(args), "result": res}
    _emit(args, _dump(out) if args.format == "json" else _markdown_kv("Counterexample search", res))
    return EXIT_FOUND if res["found"] else EXIT_OK


def cmd_corpus(args) -> int:
    spec = _corpus_spec(args)
    skipped: list = []
    corpus = build_corpus(spec, skipped)
    index = []
    names = {name: recipe for name, recipe in corpus_recipes(spec)}
    for i, GR in enumerate(corpus):
        fname = f"{i:03d}.json"
        data = GR.to_json()
        data["recipe"] = names[GR.name]
        if args.emit:
            write_atomic(Path(args.emit) / fname, _dump(data))
        index.append({"file": fname, "name": GR.name, "order": GR.ring.order, "group": GR.group.name})
    out = {"header": _header(args, corpus=spec.to_json()), "instances": index, "skipped": [list(s) for s in skipped]}
    if args.emit:
        write_atomic(Path(args.emit) / "index.json", _dump(out))
    _emit(args, _dump(out))
    return EXIT_OK


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", help="write the report here (atomically) instead of stdout")
    common.add_argument("--format", choices=["json", "markdown"], default="json")
    common.add_argument("--max-order", type=int, help=f"ring order cap (default {DEFAULT_MAX_RING_ORDER}, "
                        "or GRADERING_MAX_ORDER)")
    common.add_argument("--ideal-cap", type=int, default=DEFAULT_IDEAL_CAP, help="homogeneous ideal lattice cap")
    common.add_argument("--derived-max-order", type=int, default=Budget().derived_max_order,
                        help="cap for group and matrix rings built while verifying")
    common.add_argument("--similarity-budget", type=int, default=DEFAULT_SIMILARITY_BUDGET,
                        help="number of conjugating matrices tried by the good-form search")

    p = _Parser(prog="gradering", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="validate a ring or graded ring JSON")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", parents=[common], help="classify a graded ring")
    s.add_argument("input")
    s.add_argument("--good-form", action="store_true",
                   help="for matrix rings, search a good-form conjugate of the counterexample")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("construct", parents=[common], help="build a ring from a construction spec")
    s.add_argument("input")
    s.set_defaults(func=cmd_construct)

    corpus_args = _Parser(add_help=False)
    corpus_args.add_argument("--corpus", default="default", help="'default' or a corpus spec JSON")
    corpus_args.add_argument("--seed", type=int, help="override the corpus seed")

    s = sub.add_parser("verify", parents=[common, corpus_args], help="check registered theorems on a corpus")
    s.add_argument("--theorem", default="all", help="id, comma list, 'in-scope' or 'all'")
    s.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    s.add_argument("--replay", help="re-evaluate a VIOLATED witness bundle")
    s.add_argument("--timings", action="store_true", help="include runtimes in the JSON report")
    s.add_argument("--markdown", help="also write a Markdown rendering here")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common, corpus_args], help="search a counterexample to an implication")
    s.add_argument("--implication", required=True)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("corpus", parents=[common, corpus_args], help="list or emit the corpus")
    s.add_argument("--emit", help="directory for one JSON file per instance")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"gradering: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    saved = os.environ.get("GRADERING_MAX_ORDER")
    if args.max_order is not None:
        if args.max_order < 1:
            print("gradering: error: --max-order must be positive", file=sys.stderr)
            return EXIT_ERROR
        # the cap is read from the environment so worker processes inherit it
        os.environ["GRADERING_MAX_ORDER"] = str(args.max_order)
    try:
        return _run(args)
    finally:
        if saved is None:
            os.environ.pop("GRADERING_MAX_ORDER", None)
        else:
            os.environ["GRADERING_MAX_ORDER"] = saved


def _run(args) -> int:
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gradering: error: {exc}", file=sys.stderr)
    except (OrderCapExceeded, IdealLatticeCap) as exc:
        print(f"gradering: error: {exc}", file=sys.stderr)
    except (GraderingError, ValueError, TypeError) as exc:
        print(f"gradering: error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except KeyError as exc:
        print(f"gradering: error: missing field {exc.args[0]!r}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
