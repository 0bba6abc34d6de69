"""Command-line front door: text by default, JSON envelopes with --json.

Exit codes: 0 on success, 1 on a domain error (reported with its machine
code), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import core, fixpoint, godel, lawvere, reflexive, smullyan
from .errors import DomainError, InvalidDefinition, InvalidSymbol


def _pair_from_args(args) -> core.CategoricalPair:
    if getattr(args, "category", None):
        pair = core.load_pair(args.category)
    else:
        pair = core.BUILTIN_PAIRS[args.base]()
    if getattr(args, "lambda_pair", False):
        pair = replace(pair, is_lambda_pair=True)
    if getattr(args, "two_category", False):
        pair = replace(pair, two_category=True)
    if getattr(args, "fuel", None):
        pair = replace(pair, base=replace(pair.base, rewrite_budget=args.fuel))
    return pair


def _default_arrow(pair: core.CategoricalPair) -> core.RefArrow:
    objects = sorted(pair.base.objects)
    if len(objects) != 1:
        raise InvalidDefinition("--arrow is required when the base has several objects")
    ident = pair.base.identity(objects[0])
    return core.RefArrow(ident, ident)


def _load_model(path) -> smullyan.MachineModel:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh]
    strings = [s for s in lines if s]
    for s in strings:
        for ch in s:
            if ch not in smullyan.ALPHABET:
                raise InvalidSymbol(f"model string {s!r} uses {ch!r}, outside {smullyan.ALPHABET}")
    return smullyan.MachineModel(frozenset(strings))


def _load_table(path) -> lawvere.CurriedMap:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        dom = lawvere.FinSet(tuple(data["elements"]))
        cod = lawvere.FinSet(tuple(data["z_elements"]))
        rows = tuple(tuple(row) for row in data["rows"])
    except (KeyError, TypeError) as exc:
        raise InvalidDefinition("table file needs elements, z_elements, rows") from exc
    return lawvere.CurriedMap(dom, cod, rows)


def _parse_alpha(spec: str, z: lawvere.FinSet) -> lawvere.FinMap:
    if spec == "identity":
        return lawvere.identity_map(z)
    if spec == "negation":
        if z == lawvere.BOOL:
            return lawvere.bool_negation()
        if z == lawvere.TRI:
            return lawvere.tri_negation()
        raise InvalidDefinition("named negation exists only for {0,1} and {0,1,J}")
    mapping = {}
    for part in spec.split(","):
        src, _, dst = part.partition(":")
        if not dst:
            raise InvalidDefinition(f"bad alpha entry {part!r}; expected src:dst")
        mapping[src.strip()] = dst.strip()
    return lawvere.FinMap.from_dict(z, z, mapping)


def _parse_definition(spec: str) -> tuple[str, str, fixpoint.Term]:
    head, _, body = spec.partition("=")
    if not body:
        raise InvalidDefinition(f"definition {spec!r} needs the form 'name var = body'")
    parts = head.split()
    if len(parts) != 2:
        raise InvalidDefinition(f"definition head {head!r} needs exactly 'name var'")
    name, var = parts
    return name, var, fixpoint.parse_term(body.strip(), var=var)


# --- handlers: each returns (result dict, text lines, optional derivation) ---


def _handle_shift(args):
    pair = _pair_from_args(args)
    arrow = core.parse_arrow(pair, args.arrow)
    shifted, rule = core.shift_step(pair, arrow)
    trace = core.Derivation(
        (core.DerivationStep("axiom", arrow), core.DerivationStep(rule, shifted))
    )
    result = {"arrow": str(shifted), "src": str(shifted.src), "dst": str(shifted.dst), "rule": rule}
    return result, [str(shifted)], trace


def _handle_srt1(args):
    pair = _pair_from_args(args)
    derivation = core.srt1(pair, core.parse_arrow(pair, args.arrow))
    steps = derivation.to_json()["steps"]
    lines = [f"{i}. [{s['rule']}] {s['src_word']} -> {s['dst_word']}" for i, s in enumerate(steps, 1)]
    return {"final": str(derivation.final), "steps": steps}, lines, derivation


def _handle_iterate(args):
    pair = _pair_from_args(args)
    arrow = core.parse_arrow(pair, args.arrow) if args.arrow else _default_arrow(pair)
    seq = core.iterate_shift(pair, arrow, args.n)
    result = {
        "arrows": [str(a) for a in seq.arrows],
        "rules": list(seq.rules),
        "stop_reason": seq.stop_reason,
    }
    lines = [str(a) for a in seq.arrows]
    if seq.stop_reason:
        lines.append(f"stopped early: {seq.stop_reason}")
    return result, lines, None


def _handle_smullyan(args):
    if args.action == "report":
        derivation = smullyan.goedel_miniature_report()
        notes = [s.note for s in derivation.steps]
        lines = [f"{i}. {note}" for i, note in enumerate(notes, 1)]
        return {"steps": notes, "final_claim": notes[-1]}, lines, derivation
    if args.string is None:
        raise InvalidDefinition(f"smullyan {args.action} needs a string argument")
    s = args.string
    if args.action == "classify":
        c = smullyan.classify(s)
        result = {
            "string": s,
            "interpretable": c is not None,
            "kind": c.kind if c else None,
            "body": c.body if c else None,
        }
        line = f"{s}: {c.kind} with remainder {c.body!r}" if c else f"{s}: not interpretable"
        return result, [line], None
    if args.action == "arrow":
        arrow = smullyan.reference_arrow(s)
        result = {"arrow": str(arrow) if arrow else None}
        return result, [str(arrow) if arrow else "no arrow (not interpretable)"], None
    if args.action == "semantics":
        if not args.model:
            raise InvalidDefinition("smullyan semantics needs --model FILE")
        value = smullyan.semantics(s, _load_model(args.model))
        text = {True: "true", False: "false", None: "no-meaning"}[value]
        return {"string": s, "value": value}, [text], None
    raise InvalidDefinition(f"unknown smullyan action {args.action!r}")


def _handle_violations(args):
    model = _load_model(args.model)
    bad = sorted(smullyan.truthfulness_violations(model))
    lines = bad if bad else ["no violations: the model is truthful"]
    return {"violations": bad, "truthful": not bad}, lines, None


def _handle_godel_encode(args):
    number = godel.encode(godel.parse_compact(args.text))
    return {"number": number.wire(), "digit_length": number.digit_length}, [number.wire()], None


def _handle_godel_decode(args):
    number = godel.GodelNumber.from_wire(" ".join(args.number))
    formula = godel.decode(number)
    result = {"formula": str(formula), "length": formula.length}
    lines = [str(formula)]
    if args.materialize:
        result["text"] = formula.text()
        lines = [result["text"]]
    return result, lines, None


def _handle_godel_sharp(args):
    number = godel.GodelNumber.from_wire(" ".join(args.number))
    sharped = godel.sharp_decimal(number)
    result = {"number": sharped.wire(), "digit_length": sharped.digit_length}
    lines = [sharped.wire()]
    if args.materialize:
        result["digits"] = sharped.digits()
        lines = [result["digits"]]
    return result, lines, None


def _handle_godel_compose(args):
    left = godel.GodelNumber.from_wire(args.left)
    right = godel.GodelNumber.from_wire(args.right)
    composed = godel.compose_numbers(left, right)
    return {"number": composed.wire(), "digit_length": composed.digit_length}, [composed.wire()], None


def _handle_self_refuter(args):
    number, formula = godel.build_self_refuter()
    result = {
        "number": number.wire(),
        "formula": str(formula),
        "digit_length": number.digit_length,
        "verified": True,
    }
    lines = [
        f"number:  {number.wire()}",
        f"formula: {formula}",
        "verified: the formula's code is the number it talks about",
    ]
    return result, lines, None


def _handle_lawvere(args):
    F = _load_table(args.table)
    alpha = _parse_alpha(args.alpha, F.cod_base)
    diagonal = lawvere.cantor_diagonal(F, alpha)
    rep = lawvere.find_representation(F, diagonal)
    result = {
        "diagonal": list(diagonal.table),
        "representation": rep,
        "fixed_point": None,
        "not_surjective": False,
    }
    try:
        value, witness = lawvere.lawvere_fixed_point(F, alpha)
        result["fixed_point"] = {"value": value, "witness": witness}
    except lawvere.NotSurjective:
        result["not_surjective"] = True
    lines = [f"diagonal: {' '.join(diagonal.table)}"]
    if result["fixed_point"]:
        lines.append(f"represented by {rep}; alpha fixes {result['fixed_point']['value']}")
    else:
        lines.append("diagonal not represented: no surjection onto the map set")
    return result, lines, None


def _handle_threeval(args):
    F = _load_table(args.table)
    report = lawvere.three_valued_diagonal_analysis(F)
    result = {
        "diagonal": list(report.diagonal.table),
        "representations": list(report.representations),
        "witnessed": report.witnessed,
    }
    lines = [f"diagonal: {' '.join(report.diagonal.table)}"]
    if report.witnessed:
        lines.append(
            "represented by " + ", ".join(report.representations) + "; diagonal value J at each"
        )
    else:
        lines.append("no representation for this table")
    return result, lines, None


def _handle_lambda(args):
    rewriter = fixpoint.Rewriter(fuel=args.fuel)
    for spec in args.define or []:
        name, var, body = _parse_definition(spec)
        rewriter.define(name, var, body)
    if args.action == "define":
        if not args.term:
            raise InvalidDefinition("lambda define needs a 'name var = body' argument")
        name, var, body = _parse_definition(args.term)
        rewriter.define(name, var, body)
        result = {"name": name, "var": var, "body": str(body)}
        return result, [f"{name} {var} = {body}"], None
    if args.action == "fixpoint":
        if not args.term:
            raise InvalidDefinition("lambda fixpoint needs a term argument")
        F = fixpoint.parse_term(args.term)
        t = fixpoint.fixed_point(F, rewriter)
        g = t.left.name
        d = rewriter.defs[g]
        stages = [str(t)]
        current = t
        for _ in range(args.steps):
            step = fixpoint.reduce(current, rewriter, 1)
            if step.steps_used == 0:
                break
            current = step.term
            stages.append(str(current))
        result = {
            "definition": {"name": g, "var": d.var, "body": str(d.body)},
            "fixpoint": str(t),
            "stages": stages,
        }
        lines = [f"{g} {d.var} = {d.body}"] + stages
        return result, lines, None
    if args.action == "reduce":
        if not args.term:
            raise InvalidDefinition("lambda reduce needs a term argument")
        term = fixpoint.parse_term(args.term)
        outcome = fixpoint.reduce(term, rewriter, args.steps)
        result = {
            "term": str(outcome.term),
            "steps_used": outcome.steps_used,
            "exhausted": outcome.exhausted,
        }
        return result, [str(outcome.term)], None
    raise InvalidDefinition(f"unknown lambda action {args.action!r}")


def _handle_reflexive(args):
    if args.builtin:
        table = {"trefoil": reflexive.TREFOIL, "link": reflexive.LINK}[args.builtin]
    elif args.table:
        with open(args.table, "r", encoding="utf-8") as fh:
            table = reflexive.parse_arc_table(fh.read())
    else:
        raise InvalidDefinition("reflexive needs --builtin or --table")
    diagram = reflexive.build(table)
    if args.action == "build":
        gens = [
            {"name": g.name, "dom": g.dom, "cod": g.cod} for g in diagram.category.generators
        ]
        result = {
            "objects": sorted(diagram.category.objects),
            "generators": gens,
            "reflexive": reflexive.is_reflexive(diagram),
        }
        lines = [f"{g['name']}: {g['dom']} -> {g['cod']}" for g in gens]
        lines.append(f"reflexive: {result['reflexive']}")
        return result, lines, None
    if args.action == "check":
        ok = reflexive.is_reflexive(diagram)
        return {"reflexive": ok}, [f"reflexive: {ok}"], None
    if args.action == "enumerate":
        words = sorted(reflexive.enumerate_composites(diagram, args.max_len), key=lambda w: (len(w), str(w)))
        shown = [str(w) for w in words]
        return {"count": len(shown), "words": shown}, shown, None
    raise InvalidDefinition(f"unknown reflexive action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refshift",
        description="Categorical pairs, the indicative shift, and four self-reference engines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", action="store_true", help="emit a JSON envelope")
    output.add_argument("--trace", action="store_true", help="include the derivation trace")

    base = argparse.ArgumentParser(add_help=False)
    base.add_argument("--base", choices=sorted(core.BUILTIN_PAIRS), default="simplest",
                      help="built-in base pair")
    base.add_argument("--category", metavar="FILE", help="load the base pair from a file")
    base.add_argument("--lambda-pair", action="store_true", dest="lambda_pair",
                      help="treat self-morphisms a with #a = aa")
    base.add_argument("--two-category", action="store_true", dest="two_category",
                      help="enable horizontal composition")
    base.add_argument("--fuel", type=int, default=None, help="rewrite step budget")

    p = sub.add_parser("shift", parents=[output, base], help="apply the shift to one arrow")
    p.add_argument("arrow", help="reference arrow, e.g. 'g -> F'")
    p.set_defaults(handler=_handle_shift)

    p = sub.add_parser("srt1", parents=[output, base], help="derive (#g -> F#g) from (g -> F#)")
    p.add_argument("arrow")
    p.set_defaults(handler=_handle_srt1)

    p = sub.add_parser("iterate", parents=[output, base], help="iterate the shift")
    p.add_argument("--arrow", default=None, help="starting arrow; defaults to 1 -> 1")
    p.add_argument("--n", type=int, required=True, help="number of shifts")
    p.set_defaults(handler=_handle_iterate)

    p = sub.add_parser("smullyan", parents=[output], help="printing-machine analysis")
    p.add_argument("action", choices=["classify", "arrow", "semantics", "report"])
    p.add_argument("string", nargs="?", default=None)
    p.add_argument("--model", metavar="FILE", help="printable set, one string per line")
    p.set_defaults(handler=_handle_smullyan)

    p = sub.add_parser("violations", parents=[output], help="printed falsehoods of a model")
    p.add_argument("--model", metavar="FILE", required=True)
    p.set_defaults(handler=_handle_violations)

    p = sub.add_parser("godel-encode", parents=[output], help="formula text to code number")
    p.add_argument("text")
    p.set_defaults(handler=_handle_godel_encode)

    p = sub.add_parser("godel-decode", parents=[output], help="code number to formula")
    p.add_argument("number", nargs="+", help="run-length tokens, e.g. 341 6x34152 2")
    p.add_argument("--materialize", action="store_true", help="print the full symbol string")
    p.set_defaults(handler=_handle_godel_decode)

    p = sub.add_parser("godel-sharp", parents=[output], help="self-substitution on a code number")
    p.add_argument("number", nargs="+")
    p.add_argument("--materialize", action="store_true", help="print the full digit string")
    p.set_defaults(handler=_handle_godel_sharp)

    p = sub.add_parser("godel-compose", parents=[output], help="compose two code numbers")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_handle_godel_compose)

    p = sub.add_parser("self-refuter", parents=[output],
                       help="the formula asserting its own code's unprintability")
    p.set_defaults(handler=_handle_self_refuter)

    p = sub.add_parser("lawvere", parents=[output], help="diagonal and fixed-point report")
    p.add_argument("--table", metavar="FILE", required=True,
                   help='JSON {"elements", "z_elements", "rows"}')
    p.add_argument("--alpha", default="identity",
                   help="'identity', 'negation', or src:dst pairs separated by commas")
    p.set_defaults(handler=_handle_lawvere)

    p = sub.add_parser("threeval", parents=[output], help="three-valued diagonal analysis")
    p.add_argument("--table", metavar="FILE", required=True)
    p.set_defaults(handler=_handle_threeval)

    p = sub.add_parser("lambda", parents=[output], help="named maps and fixed points")
    p.add_argument("action", choices=["define", "fixpoint", "reduce"])
    p.add_argument("term", nargs="?", default=None)
    p.add_argument("--define", action="append", metavar="'name var = body'")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--fuel", type=int, default=10_000)
    p.set_defaults(handler=_handle_lambda)

    p = sub.add_parser("reflexive", parents=[output], help="categories from arc tables")
    p.add_argument("action", choices=["build", "check", "enumerate"])
    p.add_argument("--table", metavar="FILE", help="lines 'name: dom -> cod'")
    p.add_argument("--builtin", choices=["trefoil", "link"])
    p.add_argument("--max-len", type=int, default=2, dest="max_len")
    p.set_defaults(handler=_handle_reflexive)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        result, lines, trace = args.handler(args)
    except DomainError as exc:
        if args.json:
            envelope = {"status": "error", "result": {"code": exc.code, "message": str(exc)}}
            print(json.dumps(envelope, sort_keys=True))
        else:
            print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1
    if args.json:
        envelope = {"status": "ok", "result": result}
        if args.trace and trace is not None:
            envelope["trace"] = trace.to_json()
        print(json.dumps(envelope, sort_keys=True))
    else:
        for line in lines:
            print(line)
        if args.trace and trace is not None:
            for i, step in enumerate(trace.steps, 1):
                suffix = f"  ({step.note})" if step.note else ""
                print(f"trace {i}. [{step.rule}] {step.arrow}{suffix}")
    return 0


def main():
    sys.exit(run())
