"""Command-line front end: ``insep <command> ...`` prints JSON on standard out.

Exit codes: 0 verdict computed, 1 usage or parse error, 2 unsupported
fragment or inconsistent input, 3 resource cap.  Verdicts live in the JSON.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .config import RunConfig, witness_cap
from .errors import InsepError

COMMANDS = ("parse", "diff", "safety", "locality", "module", "chase", "sim", "kb-entail",
            "kb-insep", "tbox-entail-dllite", "corpus")


class UsageError(InsepError):
    exit_code = 1


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _doc(path: Optional[str]):
    from .syntax import Document, parse_document
    return Document() if path is None else parse_document(_read(path))


def _sigma(spec: Optional[str]):
    from .syntax import Signature, load_signature
    return Signature() if spec is None else load_signature(spec)


def _kb(tpath: str, apath: Optional[str]):
    """A KB from a TBox file (which may carry assertions) plus an optional ABox file."""
    from .syntax import KB
    d = _doc(tpath)
    abox = d.abox
    if apath is not None:
        abox = abox | _doc(apath).abox
    return KB(d.tbox, abox)


# ------------------------------------------------------------------ commands

def cmd_parse(a) -> dict:
    from .syntax import detect_fragment, print_document
    d = _doc(a.file)
    return {
        "fragment": detect_fragment(d.tbox).value,
        "axioms": [str(x) for x in d.tbox.axioms],
        "assertions": [str(x) for x in d.abox.assertions()],
        "signature": {"concepts": sorted(d.signature.concepts), "roles": sorted(d.signature.roles)},
        "printed": print_document(d.tbox, d.abox),
    }


def cmd_diff(a) -> dict:
    from .eldiff import el_diff
    return el_diff(_doc(a.t1).tbox, _doc(a.t2).tbox, _sigma(a.sigma), examples=a.examples).to_json()


def cmd_safety(a) -> dict:
    from .safety import model_insep_empty
    return model_insep_empty(_doc(a.tbox).tbox, _sigma(a.sigma)).to_json()


def cmd_locality(a) -> dict:
    from .safety import (bot_local_axiom, semantic_empty_local_axiom, semantic_empty_locality,
                         top_local_axiom)
    from .syntax import detect_fragment
    t = _doc(a.tbox).tbox
    sigma = _sigma(a.sigma)
    if a.kind == "semantic-empty":
        local = semantic_empty_locality(t, sigma)
        test = semantic_empty_local_axiom
    else:
        test = bot_local_axiom if a.kind == "syntactic-bot" else top_local_axiom
        local = all(test(ax, sigma) for ax in t.axioms)
    bad = [i for i, ax in enumerate(t.axioms) if not test(ax, sigma)]
    return {"local": local, "kind": a.kind, "variant": a.kind, "nonLocal": bad,
            "nonLocalAxioms": [str(t.axioms[i]) for i in bad],
            "fragment": detect_fragment(t).value}


def cmd_module(a) -> dict:
    from .safety import extract_module, is_depleting
    from .syntax import detect_fragment
    t = _doc(a.tbox).tbox
    sigma = _sigma(a.sigma)
    res = extract_module(t, sigma, a.kind)
    out = res.to_json()
    out.update({"depleting": is_depleting(t, res, sigma), "variant": res.kind,
                "fragment": detect_fragment(t).value})
    return out


def cmd_chase(a) -> dict:
    from .chase import build_generating_structure, certain_answer_report, parse_cq, role_label, unravel
    from .interp import print_interpretation
    from .syntax import detect_fragment
    kb = _kb(a.tbox, a.abox)
    out: dict = {"fragment": detect_fragment(kb.tbox).value, "variant": "generating-structure"}
    if a.query is not None:
        q = parse_cq(_read(a.query) if Path(a.query).is_file() else a.query)
        tup = tuple(x for x in (a.answer or "").split(",") if x)
        rep = certain_answer_report(kb, q, tup)
        out.update({"query": str(q), "tuple": list(tup), "certain": rep.answer,
                    "inconsistent": rep.inconsistent})
        return out
    g = build_generating_structure(kb)
    gens = tuple(sorted(f"(gen {x} {role_label(r)} {w})" for x, r, w in g.generating))
    out.update({"individuals": sorted(g.abox_elements), "witnesses": sorted(g.witnesses),
                "structure": print_interpretation(g.base, extra=gens)})
    if a.depth is not None:
        p = unravel(g, a.depth)
        out["prefix"] = print_interpretation(p.interpretation, namer=p.name)
        out["depth"] = a.depth
    return out


def cmd_sim(a) -> dict:
    from .interp import (check_bisimulation, check_simulation, greatest_bisimulation,
                         greatest_simulation, parse_interpretation)
    i1 = parse_interpretation(_read(a.i1))
    i2 = parse_interpretation(_read(a.i2))
    sigma = _sigma(a.sigma)
    d1 = i1.individuals.get(a.d1, a.d1) if a.d1 else None
    d2 = i2.individuals.get(a.d2, a.d2) if a.d2 else None
    if (d1 is None) != (d2 is None):
        raise UsageError("--d1 and --d2 go together")
    if d1 is not None:
        for d, i, flag in ((d1, i1, "--d1"), (d2, i2, "--d2")):
            if d not in i.domain:
                raise UsageError(f"{flag}: no element {d!r}")
        check = check_bisimulation if a.kind == "bisim" else check_simulation
        w = check(i1, d1, i2, d2, sigma)
        pairs = None if w is None else w.pairs
    else:
        rel = (greatest_bisimulation if a.kind == "bisim" else greatest_simulation)(i1, i2, sigma)
        pairs = rel or None
    return {"kind": a.kind, "variant": "greatest-fixpoint",
            "witness": "none" if pairs is None else sorted([str(x), str(y)] for x, y in pairs)}


def cmd_kb_entail(a) -> dict:
    from .qgames import kb_cq_entails
    return kb_cq_entails(_kb(a.t1, a.a1), _kb(a.t2, a.a2), _sigma(a.sigma), a.rooted,
                         a.variant).to_json()


def cmd_kb_insep(a) -> dict:
    from .qgames import kb_cq_inseparable
    return kb_cq_inseparable(_kb(a.t1, a.a1), _kb(a.t2, a.a2), _sigma(a.sigma), a.rooted,
                             a.variant).to_json()


def cmd_tbox_entail(a) -> dict:
    from .qgames import tbox_cq_entails_dllite
    return tbox_cq_entails_dllite(_doc(a.t1).tbox, _doc(a.t2).tbox, _sigma(a.sigma1),
                                  _sigma(a.sigma2), a.rooted).to_json()


# ------------------------------------------------------------------ corpus

@dataclass
class CaseResult:
    name: str
    passed: bool
    code: int
    detail: str = ""


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run_case(case_dir: str) -> CaseResult:
    """Run one golden case: case.json holds argv (paths relative to the case)."""
    d = Path(case_dir)
    name = d.name
    try:
        spec = json.loads((d / "case.json").read_text())
        expected = json.loads((d / "expected.json").read_text())
    except (OSError, ValueError) as e:
        return CaseResult(name, False, 1, f"bad case files: {e}")
    cwd = os.getcwd()
    try:
        os.chdir(d)
        code, out = run(spec["argv"])
    finally:
        os.chdir(cwd)
    want_code = spec.get("exit", 0)
    if code != want_code:
        return CaseResult(name, False, code, f"exit {code}, expected {want_code}: {out.get('error', '')}")
    if canonical(out) != canonical(expected):
        return CaseResult(name, False, code, "output differs from expected.json")
    return CaseResult(name, True, code)


def cmd_corpus(a) -> dict:
    root = Path(a.dir)
    if not root.is_dir():
        raise UsageError(f"not a directory: {a.dir}")
    cases = sorted(str(p.parent) for p in root.glob("*/case.json"))
    if a.jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as pool:
            results = list(pool.map(run_case, cases))
    else:
        results = [run_case(c) for c in cases]
    if a.update:
        for c, r in zip(cases, results):
            if not r.passed:
                spec = json.loads((Path(c) / "case.json").read_text())
                cwd = os.getcwd()
                os.chdir(c)
                try:
                    _, out = run(spec["argv"])
                finally:
                    os.chdir(cwd)
                (Path(c) / "expected.json").write_text(canonical(out))
    return {
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "cases": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "variant": "golden-corpus",
    }


def _corpus_text(out: dict) -> str:
    width = max([len(c["name"]) for c in out["cases"]] + [4])
    lines = [f"{'case'.ljust(width)}  result"]
    for c in out["cases"]:
        mark = "pass" if c["passed"] else f"FAIL  {c['detail']}"
        lines.append(f"{c['name'].ljust(width)}  {mark}")
    lines.append(f"{out['passed']} passed, {out['failed']} failed")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="insep", description="Inseparability checks for description-logic ontologies.")
    p.add_argument("--format", choices=("json", "text"), default="json", help="output format")
    p.add_argument("--witness-cap", type=int, default=None,
                   help="cap on generated witnesses (default: INSEP_WITNESS_CAP or 65536)")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)  # type: ignore[method-assign]

    s = sub.add_parser("parse", help="parse a document and report its fragment")
    s.add_argument("file")
    s.set_defaults(fn=cmd_parse)

    s = sub.add_parser("diff", help="EL concept difference")
    s.add_argument("--t1", required=True)
    s.add_argument("--t2", required=True)
    s.add_argument("--sigma", required=True)
    s.add_argument("--examples", type=int, default=1)
    s.set_defaults(fn=cmd_diff)

    s = sub.add_parser("safety", help="safety for a signature (acyclic EL)")
    s.add_argument("--tbox", required=True)
    s.add_argument("--sigma", required=True)
    s.set_defaults(fn=cmd_safety)

    s = sub.add_parser("locality", help="locality of a TBox")
    s.add_argument("--tbox", required=True)
    s.add_argument("--sigma", required=True)
    s.add_argument("--kind", choices=("semantic-empty", "syntactic-bot", "syntactic-top"),
                   default="syntactic-bot")
    s.set_defaults(fn=cmd_locality)

    s = sub.add_parser("module", help="locality-based module")
    s.add_argument("--tbox", required=True)
    s.add_argument("--sigma", required=True)
    s.add_argument("--kind", choices=("bot-syntactic", "empty-semantic", "top-syntactic"),
                   default="bot-syntactic")
    s.set_defaults(fn=cmd_module)

    s = sub.add_parser("chase", help="generating structure, prefix or certain answer")
    s.add_argument("--tbox", required=True)
    s.add_argument("--abox")
    s.add_argument("--depth", type=int)
    s.add_argument("--query", help="CQ S-expression or file")
    s.add_argument("--answer", help="comma-separated answer tuple")
    s.set_defaults(fn=cmd_chase)

    s = sub.add_parser("sim", help="Σ-simulation or Σ-bisimulation")
    s.add_argument("--i1", required=True)
    s.add_argument("--i2", required=True)
    s.add_argument("--sigma", required=True)
    s.add_argument("--kind", choices=("sim", "bisim"), default="sim")
    s.add_argument("--d1")
    s.add_argument("--d2")
    s.set_defaults(fn=cmd_sim)

    for name, fn, helptext in (("kb-entail", cmd_kb_entail, "Σ-CQ entailment of K2 by K1"),
                               ("kb-insep", cmd_kb_insep, "Σ-CQ inseparability of KBs")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--t1", required=True)
        s.add_argument("--a1")
        s.add_argument("--t2", required=True)
        s.add_argument("--a2")
        s.add_argument("--sigma", required=True)
        s.add_argument("--rooted", action="store_true")
        s.add_argument("--variant", choices=("forward", "set_state"))
        s.set_defaults(fn=fn)

    s = sub.add_parser("tbox-entail-dllite", help="DL-Lite TBox query entailment")
    s.add_argument("--t1", required=True)
    s.add_argument("--t2", required=True)
    s.add_argument("--sigma1", required=True)
    s.add_argument("--sigma2", required=True)
    s.add_argument("--rooted", action="store_true")
    s.set_defaults(fn=cmd_tbox_entail)

    s = sub.add_parser("corpus", help="golden-example corpus")
    csub = s.add_subparsers(dest="action", required=True)
    r = csub.add_parser("run", help="run every case under DIR", parents=[common])
    r.add_argument("dir")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--update", action="store_true", help="rewrite expected.json of failing cases")
    r.set_defaults(fn=cmd_corpus)
    return p


def run(argv: Sequence[str]) -> tuple[int, dict]:
    """Dispatch argv; returns (exit code, JSON-able report)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return (int(e.code or 0), {}) if e.code in (0, None) else (1, {"error": "usage"})
    try:
        cfg = RunConfig(witness_cap=args.witness_cap or witness_cap(),
                        parallelism=getattr(args, "jobs", 1) or 1, output=args.format)
    except ValueError as e:
        return 1, {"error": str(e)}
    saved = os.environ.get("INSEP_WITNESS_CAP")
    if args.witness_cap:
        _set_cap(str(cfg.witness_cap))
    try:
        return 0, args.fn(args)
    except InsepError as e:
        return e.exit_code, {"error": str(e), "kind": type(e).__name__}
    except RecursionError:
        return 3, {"error": "input nesting too deep", "kind": "ResourceCap"}
    finally:
        if args.witness_cap:
            _set_cap(saved)


def _set_cap(value: Optional[str]) -> None:
    """Scope a witness cap to one invocation; cached reasoners were built under the old cap."""
    from .reasoner.api import reasoner_for
    if value is None:
        os.environ.pop("INSEP_WITNESS_CAP", None)
    else:
        os.environ["INSEP_WITNESS_CAP"] = value
    reasoner_for.cache_clear()


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, out = run(argv)
    if not out:
        return code
    if "error" in out:
        print(f"insep: {out['error']}", file=sys.stderr)
        return code
    fmt = build_parser().parse_args(argv).format
    if fmt == "text" and "cases" in out:
        sys.stdout.write(_corpus_text(out))
    elif fmt == "text":
        for k, v in sorted(out.items()):
            sys.stdout.write(f"{k}: {v if isinstance(v, str) else json.dumps(v, sort_keys=True)}\n")
    else:
        sys.stdout.write(canonical(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
