import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from datetime import date
from functools import reduce
from typing import List, Optional

# Add the current directory to path so imports work easily
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from core import competency as cq
from core.errors import RssError, UnknownPrefixError
from core.graph import Graph, Term, is_absolute_iri, merge_graphs
from core.reasoner import materialize
from core.series import AnchorConfig, build_all_views, build_series_view
from core.temporal import BAND_MODE_ALIASES, BandMode, measured_period_graph
from core.turtle import load_turtle, serialize_turtle
from core.validator import CATALOG, NUMBERING_DENSE, VIOLATION, ValidatorConfig, validate
from core.vocabulary import NAMESPACES

logger = logging.getLogger("rss")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATIONS = 2
EXIT_EMPTY = 3


@dataclass
class CliConfig:
    input_paths: List[str]
    anchor_predicate: str = "rss:hasStartDate"
    band_mode: BandMode = BandMode.TOLERANT
    output: str = "json"
    asserted_only: bool = False
    # validate
    numbering: str = NUMBERING_DENSE
    severities: dict = field(default_factory=dict)
    # infer
    delta_only: bool = False
    measure: bool = False
    # cq
    series: Optional[str] = None
    factor: Optional[str] = None
    situation: Optional[str] = None
    immediate: bool = False
    today: Optional[date] = None
    # report
    plot_dir: Optional[str] = None

    def __post_init__(self):
        if not self.input_paths:
            raise ValueError("At least one input file is required")
        if self.output not in ("json", "turtle", "text"):
            raise ValueError(f"Unknown output format {self.output!r}")


# --- shared plumbing ---

def resolve_term(text, prefixes):
    """'ex:x', '<http://...>' or 'http://...' -> IRI term, using the data's prefixes first."""
    text = text.strip()
    if text.startswith("<") and text.endswith(">"):
        text = text[1:-1]
    prefix, sep, local = text.partition(":")
    known = dict(NAMESPACES)
    known.update(prefixes)
    if sep and prefix in known and not local.startswith("//"):
        return Term.iri(known[prefix] + local)
    if is_absolute_iri(text) and (local.startswith("//") or prefix == "urn"):
        return Term.iri(text)
    raise UnknownPrefixError(f"Cannot resolve {text!r}: unknown prefix")


def load_inputs(config):
    graphs = [load_turtle(path) for path in config.input_paths]
    asserted = reduce(merge_graphs, graphs, Graph())
    logger.info("Loaded %d triples from %d file(s)", len(asserted), len(graphs))
    return asserted


def prepare(config):
    """Load, merge and (unless asserted-only) materialize the inputs."""
    asserted = load_inputs(config)
    graph = asserted
    if not config.asserted_only:
        delta = materialize(asserted)
        graph = merge_graphs(asserted, delta.as_graph())
        logger.info("Materialized %d triples in %d rounds", len(delta), delta.iterations)
    anchors = AnchorConfig(predicate=resolve_term(config.anchor_predicate, graph.prefixes))
    return asserted, graph, anchors


def compact(term, prefixes):
    for prefix, namespace in sorted(prefixes.items(), key=lambda item: -len(item[1])):
        if term.value.startswith(namespace):
            return f"{prefix}:{term.value[len(namespace):]}"
    return term.value


def emit_json(data):
    print(json.dumps(data, indent=2, ensure_ascii=False))


# --- commands ---

def cmd_validate(config):
    _, graph, anchors = prepare(config)
    report = validate(graph, ValidatorConfig(config.severities, config.numbering), anchors)

    if config.output == "turtle":
        sys.stdout.write(serialize_turtle(report.constructed.with_prefixes(graph.prefixes)))
    elif config.output == "text":
        print(f"Conforms: {report.conforms}")
        for f in report.findings:
            others = " ".join(compact(o, graph.prefixes) for o in f.others)
            print(f"[{f.severity}] {f.code} {compact(f.focus, graph.prefixes)} {others}".rstrip()
                  + f": {f.message}")
    else:
        emit_json(report.to_json())
    return EXIT_OK if report.conforms else EXIT_VIOLATIONS


def cmd_infer(config):
    asserted = load_inputs(config)
    delta = materialize(asserted)
    output = delta.as_graph(asserted.prefixes) if config.delta_only else merge_graphs(asserted, delta.as_graph())

    if config.measure:
        anchors = AnchorConfig(predicate=resolve_term(config.anchor_predicate, asserted.prefixes))
        full = merge_graphs(asserted, delta.as_graph())
        for view in build_all_views(full, anchors):
            answer = cq.cq2_time_period(view, config.band_mode)
            if answer.measured is not None:
                output = merge_graphs(output, measured_period_graph(view.series, answer.measured))

    sys.stdout.write(serialize_turtle(output.with_prefixes(NAMESPACES)))
    return EXIT_OK


def answer_cq(cq_id, graph, view, config):
    prefixes = graph.prefixes
    if cq_id == 1:
        return cq.cq1_members(view)
    if cq_id == 2:
        return cq.cq2_time_period(view, config.band_mode)
    if cq_id == 3:
        return cq.cq3_next_scheduled(view, config.today or date.today())
    if cq_id == 4:
        return cq.cq4_unifying_factors(view)
    if cq_id == 5:
        if config.factor:
            return cq.cq5_factor_validity(view, resolve_term(config.factor, prefixes))
        return [{"factor": f, "validity": cq.cq5_factor_validity(view, f)} for f in sorted(view.unifying_factors)]
    if cq_id == 6:
        return cq.cq6_unifying_description(view)

    ask = cq.cq7_next if cq_id == 7 else cq.cq8_previous
    if config.situation:
        return ask(graph, resolve_term(config.situation, prefixes), config.immediate)
    return [{"situation": m, "answer": ask(graph, m, config.immediate)} for m in view.members]


def _cq_is_empty(answer):
    if isinstance(answer, list) and answer and isinstance(answer[0], dict) and "answer" in answer[0]:
        return all(cq.is_empty(item["answer"]) for item in answer)
    return cq.is_empty(answer)


def _item_to_json(item):
    if isinstance(item, dict):
        return {key: _item_to_json(value) for key, value in item.items()}
    return cq.to_json(item)


def cmd_cq(config, cq_id):
    _, graph, anchors = prepare(config)
    if not config.series:
        raise RssError("cq needs --series")
    view = build_series_view(graph, resolve_term(config.series, graph.prefixes), anchors)
    answer = answer_cq(cq_id, graph, view, config)

    data = {"cq": cq_id, "series": view.series.value,
            "answer": [_item_to_json(a) for a in answer] if isinstance(answer, list) else cq.to_json(answer)}
    if config.output == "text":
        print(f"CQ{cq_id}: {cq.QUESTIONS[cq_id]}")
        print(json.dumps(data["answer"], indent=2, ensure_ascii=False))
    else:
        emit_json(data)
    return EXIT_EMPTY if _cq_is_empty(answer) else EXIT_OK


def series_report(graph, view, report, config):
    """One JSON document: view summary, the eight answers, findings, period assessment."""
    involved = {view.series, *view.members, *(u.situation for u in view.unifying_situations)}
    findings = [f for f in report.findings if f.focus in involved or view.series in f.others]

    answers = {}
    for cq_id in range(1, 9):
        try:
            answer = answer_cq(cq_id, graph, view, config)
            answers[f"cq{cq_id}"] = ([_item_to_json(a) for a in answer] if isinstance(answer, list)
                                     else cq.to_json(answer))
        except RssError as e:
            answers[f"cq{cq_id}"] = {"error": type(e).__name__, "message": str(e)}

    period = cq.cq2_time_period(view, config.band_mode)
    return {
        "series": view.series.value,
        "view": {
            "members": [m.value for m in view.members],
            "unifyingFactors": cq.to_json(view.unifying_factors),
            "descriptions": cq.to_json(view.descriptions),
            "estimated": cq.period_to_json(view.estimated),
            "lastFlagged": view.last_flagged.value if view.last_flagged else None,
            "parts": cq.to_json(view.parts),
        },
        "answers": answers,
        "conforms": not any(f.severity == VIOLATION for f in findings),
        "findings": [f.to_json() for f in findings],
        "period": cq.assessment_to_json(period.measured),
    }


def cmd_report(config):
    _, graph, anchors = prepare(config)
    views = build_all_views(graph, anchors)
    if config.series:
        wanted = resolve_term(config.series, graph.prefixes)
        views = [v for v in views if v.series == wanted]
    report = validate(graph, ValidatorConfig(config.severities, config.numbering), anchors)

    documents = [series_report(graph, view, report, config) for view in views]
    if config.output == "text":
        for doc in documents:
            print(f"{doc['series']}: {len(doc['view']['members'])} members, conforms={doc['conforms']}")
            for f in doc["findings"]:
                print(f"  [{f['severity']}] {f['code']} {f['focus']}")
    else:
        emit_json({"conforms": report.conforms, "reports": documents})

    if config.plot_dir:
        # matplotlib only loads for --plot
        from utils.visualizer import plot_series_timeline
        os.makedirs(config.plot_dir, exist_ok=True)
        for view in views:
            assessment = cq.cq2_time_period(view, config.band_mode).measured
            out = os.path.join(config.plot_dir, f"{view.series.local_name or 'series'}.png")
            plot_series_timeline(view, assessment, out)
    return EXIT_OK if report.conforms else EXIT_VIOLATIONS


# --- argument parsing ---

class CliParser(argparse.ArgumentParser):
    """Usage errors exit with 1, keeping 2 for validation failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _parse_severity(text):
    code, sep, level = text.partition("=")
    if not sep or code not in CATALOG or level not in ("violation", "warning"):
        raise argparse.ArgumentTypeError(f"Expected CODE=violation|warning, got {text!r}")
    return code, level


def build_parser():
    parser = CliParser(
        prog="rss", description="Recurrent Situation Series toolkit: infer, validate and query RDF datasets")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    parser.add_argument("-q", "--quiet", action="store_true", help="Only errors on stderr")

    # Flags shared by every command; input files are added per command, after `cq`'s number
    common = CliParser(add_help=False)
    common.add_argument("--anchor-predicate", default="rss:hasStartDate",
                        help="Predicate giving member start dates (default: rss:hasStartDate)")
    common.add_argument("--band-mode", choices=[m.value for m in BandMode] + sorted(BAND_MODE_ALIASES),
                        default=BandMode.TOLERANT.value,
                        help="Tolerance of the estimated period (default: tolerant)")
    common.add_argument("--output", choices=["json", "turtle", "text"], default="json")
    common.add_argument("--asserted-only", action="store_true", help="Skip materialization")
    common.add_argument("--numbering", choices=["dense", "increasing"], default=NUMBERING_DENSE,
                        help="Situation number check along immediate links (default: dense)")
    common.add_argument("--severity", action="append", type=_parse_severity, default=[],
                        metavar="CODE=LEVEL", help="Override the severity of a finding code")

    sub = parser.add_subparsers(dest="command", required=True)

    def add_inputs(command):
        command.add_argument("inputs", nargs="+", help="Turtle files (merged before processing)")

    add_inputs(sub.add_parser("validate", parents=[common], help="Check axioms and sequence integrity"))

    infer = sub.add_parser("infer", parents=[common], help="Write asserted plus derived triples")
    add_inputs(infer)
    infer.add_argument("--delta-only", action="store_true", help="Write only the derived triples")
    infer.add_argument("--measure", action="store_true", help="Also assert measured time periods")

    cq_parser = sub.add_parser("cq", parents=[common], help="Answer a competency question (1-8)")
    cq_parser.add_argument("cq_id", type=int, choices=range(1, 9), metavar="CQ")
    add_inputs(cq_parser)
    cq_parser.add_argument("--series", required=True, help="Series IRI or prefixed name")
    cq_parser.add_argument("--factor", help="Unifying factor (CQ5)")
    cq_parser.add_argument("--situation", help="Situation to ask about (CQ7/CQ8)")
    cq_parser.add_argument("--immediate", action="store_true", help="Immediate links only (CQ7/CQ8)")
    cq_parser.add_argument("--today", type=date.fromisoformat, help="Reference date YYYY-MM-DD (CQ3)")

    report = sub.add_parser("report", parents=[common], help="Combined JSON report per series")
    add_inputs(report)
    report.add_argument("--series", help="Only this series")
    report.add_argument("--today", type=date.fromisoformat, help="Reference date YYYY-MM-DD (CQ3)")
    report.add_argument("--plot", dest="plot_dir", help="Directory for timeline charts")
    return parser


def config_from_args(args):
    return CliConfig(
        input_paths=args.inputs,
        anchor_predicate=args.anchor_predicate,
        band_mode=BandMode(args.band_mode),
        output=args.output,
        asserted_only=args.asserted_only,
        numbering=args.numbering,
        severities=dict(args.severity),
        delta_only=getattr(args, "delta_only", False),
        measure=getattr(args, "measure", False),
        series=getattr(args, "series", None),
        factor=getattr(args, "factor", None),
        situation=getattr(args, "situation", None),
        immediate=getattr(args, "immediate", False),
        today=getattr(args, "today", None),
        plot_dir=getattr(args, "plot_dir", None),
    )


def main(argv=None):
    # 1. Parse Command Line Arguments
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s: %(message)s")

    # 2. Run the command; every failure becomes exit code 1 with a message on stderr
    try:
        config = config_from_args(args)
        if args.command == "validate":
            return cmd_validate(config)
        if args.command == "infer":
            return cmd_infer(config)
        if args.command == "cq":
            return cmd_cq(config, args.cq_id)
        return cmd_report(config)
    except (RssError, OSError, ValueError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        logger.debug("Traceback", exc_info=True)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
