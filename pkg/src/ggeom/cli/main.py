"""``gg`` command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys

from .. import __version__
from ..calculus import Chart
from ..ggcore import (
    GVector,
    PreconditionError,
    check_classical_axioms,
    check_gacs_axioms,
    check_gcs_axioms,
    courant_bracket,
    neutral_pairing,
)
from ..integrability import (
    NonIsotropicFrame,
    classify_gacs,
    default_seed,
    is_integrable_gcs,
    kernel_pairing_report,
    reduce_frame,
    nijenhuis,
)
from ..products import normality_correspondence, verify_product_gcs, verify_product_gacs
from ..properties import run_suites
from ..report import EXIT_INPUT, Report
from .model import Model, ModelError, ProductEntry, StructureEntry, evaluate, expression_identifiers, parse_model

COMMANDS = ("axioms", "bracket", "classify", "nijenhuis", "product-verify", "normality", "properties")


class UsageError(Exception):
    """Missing subject, wrong kind of subject, or a bad expression argument."""


def _pick(model: Model, name: str | None, command: str, kinds: tuple[str, ...], products_only=False):
    """Resolve the subject; with no name, accept the unique candidate."""
    if name is not None:
        try:
            entry = model.subject(name)
        except KeyError:
            raise UsageError(f"no structure or product named {name!r}") from None
        if products_only and not isinstance(entry, ProductEntry):
            raise UsageError(f"{command} needs a product, {name!r} is a structure")
        if entry.ok and entry.kind not in kinds:
            raise UsageError(f"{command} does not apply to {name!r} ({_kind_label(entry.kind)})")
        return entry
    pool = list(model.products.values()) if products_only else [*model.structures.values(), *model.products.values()]
    candidates = [e for e in pool if not e.ok or e.kind in kinds]
    if len(candidates) != 1:
        raise UsageError(f"{command} needs -s NAME ({len(candidates)} candidates in the model)")
    return candidates[0]


def _kind_label(kind: str) -> str:
    return {"gcs": "generalized almost complex", "gacs": "generalized almost contact"}.get(kind, kind)


def _failed(command: str, entry) -> Report:
    report = Report(command, entry.name)
    if entry.error_report is not None:
        report.extend(entry.error_report, "construct_")
    report.add("construct", "structure constructor preconditions hold", False, entry.error)
    return report


def _structure_of(entry):
    return entry.value.result if isinstance(entry, ProductEntry) else entry.value


def cmd_axioms(model: Model, args) -> Report:
    if args.subject is None:
        entries = [*model.structures.values(), *model.products.values()]
        report = Report("axioms", "*")
        for e in entries:
            report.extend(_axioms_one(e), f"{e.name}.")
        return report
    entry = _pick(model, args.subject, "axioms", ("gacs", "gcs"))
    return _axioms_one(entry)


def _axioms_one(entry) -> Report:
    if not entry.ok:
        return _failed("axioms", entry)
    s = _structure_of(entry)
    report = Report("axioms", entry.name)
    if isinstance(entry, StructureEntry) and entry.classical is not None:
        report.extend(check_classical_axioms(entry.classical), "classical_")
    if entry.kind == "gcs":
        report.extend(check_gcs_axioms(s))
    else:
        report.extend(check_gacs_axioms(s))
        report.extend(kernel_pairing_report(s))
    return report


def _expression_chart(model: Model, args) -> tuple[Chart, str | None]:
    if args.subject is not None:
        try:
            chart = model.chart_of(args.subject)
        except KeyError:
            raise UsageError(f"no manifold, structure or product named {args.subject!r}") from None
        return chart, args.subject if args.subject in model.manifolds else None
    used = expression_identifiers(args.a) | expression_identifiers(args.b)
    options = [(c, n) for n, c in model.manifolds.items()] + [(p.chart, None) for p in model.products.values()]
    for chart, mname in options:
        names = set(chart.coords)
        names |= {"D" + c for c in chart.coords} | {"d" + c for c in chart.coords}
        if mname is not None:
            names |= {o.name for o in model.objects.values() if o.manifold == mname}
        if used <= names | {"i", "zero"}:
            return chart, mname
    raise UsageError("cannot infer a chart for the expressions; pass -s MANIFOLD")


def _section(model, text, chart, mname) -> GVector:
    try:
        value = evaluate(text, chart, model, mname)
    except ModelError as exc:
        raise UsageError(f"in expression {text!r}: {exc}") from None
    if isinstance(value, GVector):
        return value
    if hasattr(value, "is_zero") and value.is_zero() and not hasattr(value, "m"):
        return GVector.zero(chart)
    raise UsageError(f"expression {text!r} is not a section of TM + T*M")


def cmd_bracket(model: Model, args) -> Report:
    if args.a is None or args.b is None:
        raise UsageError("bracket needs -a EXPR and -b EXPR")
    chart, mname = _expression_chart(model, args)
    a = _section(model, args.a, chart, mname)
    b = _section(model, args.b, chart, mname)
    ab, ba = courant_bracket(a, b), courant_bracket(b, a)
    report = Report("bracket", f"{a}, {b}")
    report.add("bracket", "Courant bracket [[a, b]]", True, f"[[{a}, {b}]] = {ab}", always=True)
    report.add("pairing", "neutral pairing <a, b>", True, f"<{a}, {b}> = {neutral_pairing(a, b)}", always=True)
    report.add("antisymmetry", "[[a, b]] + [[b, a]] = 0", (ab + ba).is_zero(), f"sum = {ab + ba}", violation=True)
    report.data["bracket"] = ab
    return report


def cmd_classify(model: Model, args) -> Report:
    entry = _pick(model, args.subject, "classify", ("gacs",))
    if not entry.ok:
        return _failed("classify", entry)
    result = classify_gacs(_structure_of(entry))
    report = result.report(entry.name)
    report.add("E10", "generators of the sqrt(-1) eigenbundle of Phi", True,
               ", ".join(str(g) for g in reduce_frame(result.e10).generators) or "(empty)", always=True)
    return report


def cmd_nijenhuis(model: Model, args) -> Report:
    entry = _pick(model, args.subject, "nijenhuis", ("gcs",))
    if not entry.ok:
        return _failed("nijenhuis", entry)
    j = _structure_of(entry)
    report = is_integrable_gcs(j, seed=default_seed())
    report.subject = entry.name
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise UsageError("give both -a and -b to evaluate N(a, b)")
        mname = entry.manifold if isinstance(entry, StructureEntry) else None
        a = _section(model, args.a, j.chart, mname)
        b = _section(model, args.b, j.chart, mname)
        n = nijenhuis(j, a, b)
        report.add("N(a,b)", "N(a, b) = 0 for the given sections", n.is_zero(), f"N({a}, {b}) = {n}",
                   soft=True, always=True)
    return report


def cmd_product_verify(model: Model, args) -> Report:
    entry = _pick(model, args.subject, "product-verify", ("gacs", "gcs"), products_only=True)
    if not entry.ok:
        return _failed("product-verify", entry)
    prod = entry.value
    if entry.kind == "gcs":
        report = verify_product_gcs(prod.left, prod.right, seed=default_seed())
    else:
        report = verify_product_gacs(prod.left, prod.right, seed=default_seed())
    report.subject = entry.name
    return report


def cmd_normality(model: Model, args) -> Report:
    if args.subject is None:
        pool = [s for s in model.structures.values() if s.constructor == "almost_contact"]
        if len(pool) != 1:
            raise UsageError(f"normality needs -s NAME ({len(pool)} candidates in the model)")
        entry = pool[0]
    else:
        entry = model.structures.get(args.subject)
        if entry is None or entry.constructor != "almost_contact":
            raise UsageError(f"normality needs an almost_contact structure, {args.subject!r} is not one")
    if not entry.ok:
        return _failed("normality", entry)
    coord = "t"
    while coord in entry.classical.chart.coords:
        coord += "_"
    report = normality_correspondence(entry.classical, coord=coord, seed=default_seed())
    report.subject = entry.name
    return report


def cmd_properties(model: Model | None, args) -> Report:
    return run_suites(seed=default_seed(), cases=args.cases)


DISPATCH = {
    "axioms": cmd_axioms,
    "bracket": cmd_bracket,
    "classify": cmd_classify,
    "nijenhuis": cmd_nijenhuis,
    "product-verify": cmd_product_verify,
    "normality": cmd_normality,
    "properties": cmd_properties,
}


def run(command: str, model: Model | None, args) -> Report:
    return DISPATCH[command](model, args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gg", description="Verify generalized complex and contact structures.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", nargs="?", help="model file (.ggm)")
    p.add_argument("name", nargs="?", help="subject (same as -s)")
    p.add_argument("-s", "--subject", help="structure, product or manifold name")
    p.add_argument("-a", help="first section expression")
    p.add_argument("-b", help="second section expression")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--cases", type=int, default=100, help="cases per property suite")
    p.add_argument("--version", action="version", version=f"gg {__version__}")
    return p


def _render(report: Report, as_json: bool) -> str:
    if as_json:
        body = {"header": {"tool": "gg", "version": __version__}}
        body.update(report.to_dict())
        return json.dumps(body, indent=2, ensure_ascii=False)
    return report.to_text()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.name is not None:
        if args.subject is not None and args.subject != args.name:
            parser.error("subject given twice")
        args.subject = args.name
    model = None
    if args.command != "properties":
        if args.file is None:
            parser.error(f"{args.command} needs a model file")
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"gg: error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        try:
            model = parse_model(text)
        except ModelError as exc:
            print(f"{args.file}:{exc.line}:{exc.col}: error: {exc.message}", file=sys.stderr)
            return EXIT_INPUT
    try:
        report = run(args.command, model, args)
    except UsageError as exc:
        print(f"gg: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, NonIsotropicFrame) as exc:
        report = Report(args.command, args.subject or "")
        report.add("precondition", "command preconditions hold", False, str(exc))
    print(_render(report, args.json))
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
