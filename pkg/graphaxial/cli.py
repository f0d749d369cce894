"""
Command-line interface for graphaxial.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

from graphaxial.config.loader import ToolkitConfig, load_config
from graphaxial.core.algebra import AlgebraElement, GraphAlgebra, Side
from graphaxial.core.autgrp import automorphism_group, check_theorem_hypotheses
from graphaxial.core.exactfield import FieldCtx
from graphaxial.core.frucht import LabelScheme, build_algebra_with_aut
from graphaxial.core.fusion import FusionLaw, check_fusion
from graphaxial.core.graph import (
    GraphDocument,
    LabeledDigraph,
    PartialLinearSpace,
    PLSDocument,
    cayley_graph,
    incidence_graph,
    profile,
    validate,
)
from graphaxial.core.idempotents import SearchMode, enumerate_idempotents, rank_support_analysis, verify_axes_recoverable
from graphaxial.core.structure import (
    Verdict,
    cross_check_simplicity,
    find_ideal_subgraphs,
    is_complete_graph_case,
    matches_contraction,
    quotient_algebra,
    simplicity_verdict,
)
from graphaxial.errors import (
    BudgetExceeded,
    ConfigError,
    DivisionByZero,
    FieldTooSmall,
    GraphAxialError,
    IdentityGenerator,
    InfiniteField,
    InvalidGraph,
    InvalidGroup,
    InvalidLabel,
    NotGenerating,
    NotWeaklyConnected,
    ParseError,
)
from graphaxial.generators.groups import CayleyTable
from graphaxial.generators.providers import geometry, geometry_names
from graphaxial.outputs import FORMATS, FileOutputHandler, create_output_handler

logger = logging.getLogger("graphaxial")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

INPUT_ERRORS = (
    ParseError,
    DivisionByZero,
    InvalidGraph,
    InvalidLabel,
    InvalidGroup,
    NotGenerating,
    IdentityGenerator,
    NotWeaklyConnected,
    FieldTooSmall,
    BudgetExceeded,
    InfiniteField,
    ConfigError,
    FileNotFoundError,
)


class UsageError(Exception):
    """Bad combination of command-line options."""


def setup_parser() -> argparse.ArgumentParser:
    """Set up the command-line argument parser."""
    parser = argparse.ArgumentParser(
        prog="graphaxial",
        description="graphaxial - axial algebras of edge-labeled digraphs",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="Path to a YAML toolkit configuration")
    common.add_argument("-o", "--out", help="Write the report to this file instead of standard output")
    common.add_argument("-f", "--format", choices=FORMATS, default="json", help="Report format")
    common.add_argument("--emit-dot", metavar="PATH", help="Also write the graph as DOT with labels")
    common.add_argument("-v", "--verbose", action="store_true", help="Enable verbose logging")

    graph_input = argparse.ArgumentParser(add_help=False)
    graph_input.add_argument("-i", "--in", dest="input", required=True, help="Graph JSON file")

    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    subparsers.add_parser("validate", parents=[common, graph_input], help="Check the graph rules")
    subparsers.add_parser("profile", parents=[common, graph_input], help="Symmetry, connectivity, girth and degrees")
    simplicity_parser = subparsers.add_parser(
        "simplicity", parents=[common, graph_input], help="Decide whether the algebra is simple"
    )
    simplicity_parser.add_argument(
        "--oracle", action="store_true", help="Cross-check the verdict against brute-force ideal closures"
    )

    fusion_parser = subparsers.add_parser("fusion", parents=[common, graph_input], help="Check the fusion law")
    fusion_parser.add_argument("--law", help="Comma separated eigenvalues, e.g. 0,1,3 (default: from the graph)")
    fusion_parser.add_argument("--axes", help="Comma separated axes (default: all vertices)")
    fusion_parser.add_argument("--side", choices=["left", "right", "both"], default="left")

    aut_parser = subparsers.add_parser("aut", parents=[common, graph_input], help="Automorphism group and theorem hypotheses")
    aut_parser.add_argument("--hypotheses", action="store_true", help="Include the theorem hypothesis checks")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=int, help="Largest number of candidate vectors (overrides the config)")
    budget.add_argument("--threads", type=int, help="Worker processes for sweeps (overrides the config)")
    budget.add_argument("--support", type=int, help="Only idempotents with at most this many basis vectors")

    idem_parser = subparsers.add_parser("idempotents", parents=[common, graph_input, budget], help="Enumerate idempotents")
    idem_parser.add_argument("--analyze", action="store_true", help="Attach the rank/support analysis of each idempotent")
    subparsers.add_parser(
        "recover-axes", parents=[common, graph_input, budget], help="Check that axes are recovered from idempotents"
    )

    field_opts = argparse.ArgumentParser(add_help=False)
    field_opts.add_argument("--field", default="Q", help="Q or a prime such as F7")
    field_opts.add_argument("--labels", help="Comma separated labels")

    inc_parser = subparsers.add_parser("incidence", parents=[common, field_opts], help="Directed incidence graph")
    source = inc_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("-i", "--in", dest="input", help="Partial linear space JSON file")
    source.add_argument("--geometry", choices=geometry_names(), help="Named geometry")

    group_input = argparse.ArgumentParser(add_help=False)
    group_source = group_input.add_mutually_exclusive_group(required=True)
    group_source.add_argument("-g", "--group", help="Group JSON file (table or permutation generators)")
    group_source.add_argument("--family", help="cyclic:N or symmetric:N")

    subparsers.add_parser("cayley", parents=[common, field_opts, group_input], help="Labeled Cayley graph")

    frucht_parser = subparsers.add_parser(
        "frucht", parents=[common, field_opts, group_input], help="Simple algebra with a prescribed automorphism group"
    )
    frucht_parser.add_argument("--scheme", choices=[s.value for s in LabelScheme], default=LabelScheme.COMMUTATIVE.value)
    frucht_parser.add_argument("--tag-offset", type=int, default=0, help="Raise every tag height by this amount")

    quotient_parser = subparsers.add_parser("quotient", parents=[common, graph_input], help="Quotient by an ideal")
    quotient_parser.add_argument("--ideal", help="JSON file with a list of elements spanning the ideal")

    return parser


# -- input helpers --------------------------------------------------------------


def _read_text(path: str) -> str:
    with open(path, "r") as f:
        return f.read()


def _read_json(path: str) -> Any:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}")


def _load_graph(path: str) -> LabeledDigraph:
    logger.info(f"Loading graph from: {path}")
    return LabeledDigraph.from_json(_read_text(path))


def _load_group(args: argparse.Namespace) -> Tuple[CayleyTable, List[str]]:
    if args.group:
        data = _read_json(args.group)
        if not isinstance(data, dict):
            raise ParseError("group document must be an object")
        return CayleyTable.from_json(data)
    name, _, order = args.family.partition(":")
    if not order.isdigit() or int(order) < 1:
        raise UsageError(f"--family needs NAME:N with N >= 1, got {args.family!r}")
    if name == "cyclic":
        return CayleyTable.cyclic(int(order))
    if name == "symmetric":
        return CayleyTable.symmetric(int(order))
    raise UsageError(f"unknown group family {name!r}")


def _labels(field_ctx: FieldCtx, text: Optional[str]) -> List:
    if not text:
        return []
    return [field_ctx.parse(part.strip()) for part in text.split(",") if part.strip()]


def _budget(args: argparse.Namespace, config: ToolkitConfig) -> Dict[str, Any]:
    settings = config.enumeration
    return {
        "mode": SearchMode.SUPPORT_BOUNDED if args.support is not None else SearchMode.EXHAUSTIVE,
        "support_size": args.support,
        "cap": args.budget if args.budget is not None else settings.cap,
        "workers": args.threads if args.threads is not None else settings.workers,
        "split_depth": settings.split_depth,
    }


# -- commands ---------------------------------------------------------------------
# each returns (report, exit code, graph for --emit-dot)


def validate_command(args, config):
    doc = GraphDocument.parse(_read_text(args.input))
    report = validate(doc)
    if not report.valid:
        logger.error(f"Graph is invalid: {report.summary()}")
        return report.model_dump(mode="json"), EXIT_USAGE, None
    g = LabeledDigraph.from_document(doc)
    logger.info(f"Graph is valid: {len(g)} vertices, {len(g.edges)} edges")
    return report.model_dump(mode="json"), EXIT_OK, g


def profile_command(args, config):
    g = _load_graph(args.input)
    return profile(g).model_dump(mode="json"), EXIT_OK, g


def simplicity_command(args, config):
    g = _load_graph(args.input)
    report = simplicity_verdict(g)
    code = EXIT_OK if report.verdict == Verdict.SIMPLE else EXIT_CHECK_FAILED
    data = report.model_dump(mode="json")
    if args.oracle:
        check = cross_check_simplicity(g, config.oracle.random_samples, config.oracle.seed)
        data["oracle"] = {**check.model_dump(mode="json"), "agrees": check.agrees}
        if not check.agrees:
            code = EXIT_CHECK_FAILED
    return data, code, g


def fusion_command(args, config):
    g = _load_graph(args.input)
    algebra = GraphAlgebra(g)
    law = FusionLaw.from_option(g.field, args.law) if args.law else None
    axes = [a.strip() for a in args.axes.split(",")] if args.axes else None
    sides = (Side.LEFT, Side.RIGHT) if args.side == "both" else (Side(args.side),)
    report = check_fusion(algebra, axes=axes, law=law, sides=sides, enforce_zero=config.fusion.enforce_zero)
    ok = report.law_satisfied and not (config.fusion.enforce_zero and report.missing_zero)
    return report.model_dump(mode="json"), EXIT_OK if ok else EXIT_CHECK_FAILED, g


def aut_command(args, config):
    g = _load_graph(args.input)
    group = automorphism_group(g)
    report: Dict[str, Any] = group.to_json()
    if args.hypotheses:
        report["hypotheses"] = check_theorem_hypotheses(g).model_dump(mode="json")
    return report, EXIT_OK, g


def idempotents_command(args, config):
    g = _load_graph(args.input)
    algebra = GraphAlgebra(g)
    budget = _budget(args, config)
    found = enumerate_idempotents(algebra, **budget)
    order = list(algebra.basis)
    report: Dict[str, Any] = {
        "mode": budget["mode"].value,
        "count": len(found),
        "idempotents": [a.to_json(order) for a in found],
    }
    code = EXIT_OK
    if args.analyze:
        analyses = [rank_support_analysis(algebra, a) for a in found if not a.is_zero()]
        report["analyses"] = [a.model_dump(mode="json") for a in analyses]
        if not all(a.passed for a in analyses):
            code = EXIT_CHECK_FAILED
    return report, code, g


def recover_axes_command(args, config):
    g = _load_graph(args.input)
    report = verify_axes_recoverable(GraphAlgebra(g), **_budget(args, config))
    data = report.model_dump(mode="json")
    data["recoverable"] = report.recoverable
    return data, EXIT_OK if report.recoverable else EXIT_CHECK_FAILED, g


def incidence_command(args, config):
    field_ctx = FieldCtx.from_option(args.field)
    if args.geometry:
        space = geometry(args.geometry)
    else:
        try:
            space = PartialLinearSpace.from_document(PLSDocument.model_validate(_read_json(args.input)))
        except ValueError as e:
            raise ParseError(f"Invalid partial linear space: {e}")
    labels = _labels(field_ctx, args.labels)
    if len(labels) not in (1, 2):
        raise UsageError("incidence needs --labels ALPHA or ALPHA,BETA")
    alpha, beta = labels[0], labels[-1]
    g = incidence_graph(space, alpha, beta, field_ctx)
    return json.loads(g.to_json()), EXIT_OK, g


def cayley_command(args, config):
    field_ctx = FieldCtx.from_option(args.field)
    group, gens = _load_group(args)
    labels = _labels(field_ctx, args.labels)
    if len(labels) == 1:
        labels = labels * len(gens)
    if len(labels) != len(gens):
        raise UsageError(f"cayley needs one label or one per generator ({len(gens)})")
    g = cayley_graph(group, gens, dict(zip(gens, labels)), field_ctx)
    return json.loads(g.to_json()), EXIT_OK, g


def frucht_command(args, config):
    field_ctx = FieldCtx.from_option(args.field)
    group, gens = _load_group(args)
    labels = _labels(field_ctx, args.labels)
    settings = config.frucht
    result = build_algebra_with_aut(
        group,
        gens,
        field_ctx,
        LabelScheme(args.scheme),
        alpha=labels[0] if labels else None,
        beta=labels[1] if len(labels) > 1 else None,
        base_tag_height=settings.base_tag_height,
        retry_bound=settings.retry_bound,
        pendant_gadget=settings.pendant_gadget,
        tag_offset=args.tag_offset,
    )
    report = {"certificate": result.certificate(), "graph": json.loads(result.gamma.to_json())}
    return report, EXIT_OK, result.gamma


def quotient_command(args, config):
    g = _load_graph(args.input)
    algebra = GraphAlgebra(g)
    report: Dict[str, Any] = {}
    if args.ideal:
        data = _read_json(args.ideal)
        if not isinstance(data, list):
            raise ParseError("ideal file must hold a list of elements")
        ideal = [AlgebraElement.from_json(g.field, item) for item in data]
        ideal = [algebra.element(a.coeffs) for a in ideal]
    else:
        witnesses = find_ideal_subgraphs(g)
        if witnesses:
            ideal = witnesses[0].ideal_basis(algebra)
            report["ideal_subgraph"] = witnesses[0].to_json(g)
            report["matches_contraction"] = matches_contraction(algebra, witnesses[0])
        elif is_complete_graph_case(g):
            ideal = [algebra.element({x: g.field.one for x in g.vertices})]
        else:
            logger.error("The algebra has no ideal to divide by")
            return {"quotient": None, "note": "no ideal subgraph and not the complete-graph case"}, EXIT_CHECK_FAILED, g
    report["ideal"] = [a.to_json(list(algebra.basis)) for a in ideal]
    report["quotient"] = quotient_algebra(algebra, ideal).to_json()
    code = EXIT_CHECK_FAILED if report.get("matches_contraction") is False else EXIT_OK
    return report, code, g


COMMANDS = {
    "validate": validate_command,
    "profile": profile_command,
    "simplicity": simplicity_command,
    "fusion": fusion_command,
    "aut": aut_command,
    "idempotents": idempotents_command,
    "recover-axes": recover_axes_command,
    "incidence": incidence_command,
    "cayley": cayley_command,
    "frucht": frucht_command,
    "quotient": quotient_command,
}


def _emit(args: argparse.Namespace, report: Dict[str, Any], g: Optional[LabeledDigraph]):
    dot = g.to_dot() if g is not None else None
    fmt = args.format
    if fmt == "dot" and dot is None:
        logger.warning("No graph to render as DOT, writing JSON")
        fmt = "json"
    create_output_handler(args.out, fmt).emit(report, dot)
    if args.emit_dot:
        if dot is None:
            logger.warning("No graph to write as DOT")
        else:
            FileOutputHandler(args.emit_dot, "dot").emit_dot(dot, args.emit_dot)


def run(args: argparse.Namespace) -> int:
    """Dispatch one parsed command; return its exit code."""
    if args.verbose:
        logging.getLogger("graphaxial").setLevel(logging.DEBUG)
    try:
        config = load_config(args.config)
        report, code, g = COMMANDS[args.command](args, config)
    except (UsageError, *INPUT_ERRORS) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except GraphAxialError as e:
        logger.error(f"{args.command}: {e}")
        _emit(args, {"error": type(e).__name__, "message": str(e), "witness": e.witness}, None)
        return EXIT_CHECK_FAILED
    _emit(args, report, g)
    return code


def main(args: Optional[List[str]] = None):
    """Main entry point for the CLI."""
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )
    parser = setup_parser()
    parsed_args = parser.parse_args(args)

    if not parsed_args.command:
        parser.print_help()
        sys.exit(EXIT_USAGE)

    sys.exit(run(parsed_args))


if __name__ == "__main__":
    main()
