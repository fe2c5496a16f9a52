"""
hofer-bounds - exact Hofer-norm lower bounds for surface braid types

Commands:
    bound            half-maximum lower bound for a braid word (or a distance bound with --word-psi)
    eval             f_{v1,v2} at an explicit weight pair
    maximize         closed-form maximum next to the vertex-enumeration oracle
    expand           spell c_i through b_i, free-reduce, print the last puncture loop
    check-relations  consistency suite on random exact weight pairs
    intersect        signed diagonal intersections of a homotopy in Sym^2(C)

Exit codes: 0 success, 1 failed check, oracle mismatch or intersection analysis failure,
2 usage or input error.
"""
import argparse
import json
import logging
import sys
from typing import Optional, Sequence, TextIO

from rich.console import Console

from utils.braids.braid_core import (
    expand_restricted,
    exponent_summary,
    free_reduce,
    z_last_word,
)
from utils.braids.braid_types import GroupSignature
from utils.braids.word_parser import format_word, parse_word
from utils.hofer.config_manager import ConfigManager, load_link_params_file
from utils.hofer.helpers import parse_rational, parse_rational_list, setup_logging
from utils.hofer.hofer_functionals import (
    OracleMismatchError,
    disc_lk_bound,
    f_max_closed,
    f_max_lp,
    f_value,
    hofer_distance_bound,
    hofer_lower_bound,
    summary_terms,
    vertex_sweep,
)
from utils.hofer.link_params import (
    LinkParams,
    WeightPair,
    WeightVector,
    validate,
    validate_weights,
)
from utils.hofer.relation_checks import run_relation_checks
from utils.hofer.report_exporter import (
    checks_to_dict,
    eval_to_dict,
    intersections_to_dict,
    maximize_to_dict,
    render_checks,
    render_intersections,
    render_maximize,
    render_report,
    render_value,
    render_vertex_sweep,
    report_to_json,
    summary_to_dict,
)
from utils.symprod.homotopy_models import (
    elementary_model,
    load_homotopy,
    mirrored_elementary_model,
    sigma_contraction_model,
)
from utils.symprod.sym_product import HomotopyError, boundary_winding, signed_intersections

logger = logging.getLogger("hofer_bounds")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

MODELS = {
    "elementary": elementary_model,
    "sigma": sigma_contraction_model,
    "mirror": mirrored_elementary_model,
}


class UsageError(Exception):
    """Bad command line"""


class _ChecksFailed(Exception):
    """A consistency check did not hold"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _grid_size(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"grid must be >= 2, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="Write canonical JSON instead of tables")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")

    link = _Parser(add_help=False)
    link.add_argument("--k", type=int, help="Number of contractible circles (>= 2)")
    link.add_argument("--g", type=int, help="Number of non-contractible circles (default 0)")
    link.add_argument("--p", type=int, help="Number of boundary components (default 1)")
    link.add_argument("--lambda", dest="lam", type=str, help="Disc area, e.g. 2/5")
    link.add_argument("--area", type=str, help="Total surface area (default 1)")
    link.add_argument("--config", type=str, help="JSON file with k, g, p, lambda, area")
    link.add_argument("--strict", action="store_true", help="Require lambda strictly above A/(k+1)")

    parser = _Parser(prog="hofer-bounds", description="Hofer-norm lower bounds for surface braid types")
    parser.add_argument("--show-config", action="store_true", help="Print and check the tool settings")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    bound = sub.add_parser("bound", parents=[common, link], help="Lower bound for a braid word")
    bound.add_argument("--word", required=True, help='Braid word, e.g. "s1 z1^2 a1"')
    bound.add_argument("--word-psi", help="Second word; bounds the Hofer distance d(phi, psi)")

    evaluate = sub.add_parser("eval", parents=[common, link], help="f at an explicit weight pair")
    evaluate.add_argument("--word", required=True)
    evaluate.add_argument("--v1", required=True, help='Weights, e.g. "1/5,0"')
    evaluate.add_argument("--v2", required=True)

    maximize = sub.add_parser("maximize", parents=[common, link], help="Closed form vs vertex oracle")
    maximize.add_argument("--word", required=True)
    maximize.add_argument("--show-vertices", action="store_true", help="List f at every vertex pair")

    expand = sub.add_parser("expand", parents=[common, link], help="Expand c_i and print z_p")
    expand.add_argument("--word", default="")

    checks = sub.add_parser("check-relations", parents=[common, link], help="Run the consistency suite")
    checks.add_argument("--samples", type=int, help="Random weight pairs (default from settings)")
    checks.add_argument("--seed", type=int, help="Sampler seed (default from settings)")

    intersect = sub.add_parser("intersect", parents=[common], help="Signed diagonal intersections")
    intersect.add_argument("--homotopy", help="Homotopy JSON file")
    intersect.add_argument("--model", choices=sorted(MODELS), help="Built-in homotopy")
    intersect.add_argument("--grid", type=_grid_size, help="Grid size for built-in models")
    intersect.add_argument("--tol", type=_positive_float, help="Final cell diameter")

    return parser


def _link_params(args, settings: ConfigManager) -> LinkParams:
    overrides = {"k": args.k, "g": args.g, "p": args.p, "lambda": args.lam, "area": args.area}
    if args.config:
        params = load_link_params_file(args.config, overrides)
    else:
        if args.k is None or args.lam is None:
            raise UsageError("--k and --lambda are required (or --config FILE)")
        params = LinkParams(
            k=args.k,
            g=0 if args.g is None else args.g,
            p=1 if args.p is None else args.p,
            lam=parse_rational(args.lam),
            ambient_area=parse_rational(args.area) if args.area is not None else 1,
        )
    validate(params, strict=args.strict or settings.get("bounds.strict_lambda", False))
    logger.debug("link parameters %s", params)
    return params


def _signature(args) -> GroupSignature:
    if args.config:
        params = load_link_params_file(args.config, {"k": args.k, "g": args.g, "p": args.p})
        return GroupSignature.for_link(params.k, params.g, params.p)
    if args.k is None:
        raise UsageError("--k is required (or --config FILE)")
    return GroupSignature.for_link(args.k, args.g or 0, 1 if args.p is None else args.p)


def _write_json(out: TextIO, data) -> None:
    out.write(json.dumps(data, indent=2) + "\n")


def cmd_bound(args, settings, console, out) -> int:
    params = _link_params(args, settings)
    signature = GroupSignature.for_link(params.k, params.g, params.p)
    word = parse_word(args.word, signature)
    if args.word_psi is not None:
        psi = parse_word(args.word_psi, signature)
        report = hofer_distance_bound(params, word, psi)
        label = f"({format_word(word)}) ({format_word(psi)})^-1"
        disc = None
    else:
        report = hofer_lower_bound(params, word)
        label = format_word(word)
        disc = disc_lk_bound(params, word) if word.is_sigma_only() else None

    if args.json:
        out.write(report_to_json(report) + "\n")
    else:
        render_report(console, params, label, report, disc_bound=disc)
    return EXIT_OK


def cmd_eval(args, settings, console, out) -> int:
    params = _link_params(args, settings)
    signature = GroupSignature.for_link(params.k, params.g, params.p)
    word = parse_word(args.word, signature)
    pair = WeightPair(
        WeightVector(tuple(parse_rational_list(args.v1))),
        WeightVector(tuple(parse_rational_list(args.v2))),
    )
    validate_weights(params, pair.v1)
    validate_weights(params, pair.v2)
    summary = exponent_summary(word)
    data = eval_to_dict(f_value(params, pair, summary), pair, summary)
    if args.json:
        _write_json(out, data)
    else:
        render_value(console, format_word(word), data)
    return EXIT_OK


def cmd_maximize(args, settings, console, out) -> int:
    params = _link_params(args, settings)
    signature = GroupSignature.for_link(params.k, params.g, params.p)
    summary = exponent_summary(parse_word(args.word, signature))
    sweep = vertex_sweep(params, summary) if args.show_vertices else None
    data = maximize_to_dict(
        f_max_closed(params, summary),
        f_max_lp(params, summary),
        summary_terms(params, summary),
        sweep,
    )
    if args.json:
        _write_json(out, data)
    else:
        render_maximize(console, data)
        if sweep is not None:
            render_vertex_sweep(console, sweep)

    if not data["agree"]:
        raise OracleMismatchError(
            f"closed form {data['f_max_closed']} != vertex oracle {data['f_max_lp']}"
        )
    return EXIT_OK


def cmd_expand(args, settings, console, out) -> int:
    signature = _signature(args)
    word = parse_word(args.word, signature)
    z_last = z_last_word(signature)
    data = {
        "word": format_word(word),
        "reduced": format_word(free_reduce(word)),
        "expanded": format_word(expand_restricted(word)),
        "z_last": format_word(z_last),
        "z_last_summary": summary_to_dict(exponent_summary(z_last)),
    }
    if args.json:
        _write_json(out, data)
    else:
        for key, value in data.items():
            if key == "z_last_summary":
                value = f"k_gen={value['k_gen']} k_sigma={value['k_sigma']} k={value['k']}"
            console.print(f"[cyan]{key:>15}[/cyan]  {value or '(identity)'}")
    return EXIT_OK


def cmd_check_relations(args, settings, console, out) -> int:
    params = _link_params(args, settings)
    samples = args.samples if args.samples is not None else settings.get("relations.samples")
    seed = args.seed if args.seed is not None else settings.get("relations.seed")
    if samples < 1:
        raise UsageError(f"--samples must be positive, got {samples}")
    results = run_relation_checks(
        params, samples=samples, seed=seed,
        max_denominator=settings.get("relations.max_weight_denominator", 50),
    )
    if args.json:
        _write_json(out, checks_to_dict(results))
    else:
        render_checks(console, results)

    failed = [r for r in results if not r.passed]
    if failed:
        raise _ChecksFailed(f"{len(failed)} of {len(results)} relation checks failed: "
                            + ", ".join(r.name for r in failed))
    return EXIT_OK


def cmd_intersect(args, settings, console, out) -> int:
    if (args.homotopy is None) == (args.model is None):
        raise UsageError("intersect needs exactly one of --homotopy FILE or --model NAME")
    if args.homotopy is not None:
        h = load_homotopy(args.homotopy)
    else:
        grid = args.grid or settings.get("intersections.grid")
        h = MODELS[args.model](grid, grid)

    options = settings.intersection_settings()
    if args.tol is not None:
        options["tol"] = args.tol
    try:
        records, total = signed_intersections(h, **options)
        winding = boundary_winding(h, zero_eps=options["zero_eps"])
    except HomotopyError as e:
        # the input parsed; the analysis itself failed
        raise _ChecksFailed(f"intersection analysis failed: {e}") from e

    data = intersections_to_dict(records, total, winding)
    if args.json:
        _write_json(out, data)
    else:
        render_intersections(console, data)

    if total != winding:
        raise _ChecksFailed(f"signed total {total} differs from boundary winding {winding}")
    return EXIT_OK


COMMANDS = {
    "bound": cmd_bound,
    "eval": cmd_eval,
    "maximize": cmd_maximize,
    "expand": cmd_expand,
    "check-relations": cmd_check_relations,
    "intersect": cmd_intersect,
}


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None) -> int:
    """
    Parse argv, run one command and return the exit code

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])
        stdout: Stream for results
        stderr: Stream for logs and "error:" lines
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def error(message: str) -> None:
        stderr.write(f"error: {message}\n")

    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        error(str(e))
        return EXIT_USAGE
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK

    console = Console(file=stdout, width=160) if stdout is not sys.stdout else Console()
    try:
        settings = ConfigManager(console=console)
        if not settings.should_use_rich_output():
            # plain text tables, no colour codes
            console = Console(file=stdout, width=160, no_color=True, highlight=False)
            settings.console = console
        setup_logging(
            verbose=getattr(args, "verbose", False) or settings.is_debug_mode(),
            console=Console(file=stderr, width=160),
        )
        if args.show_config:
            ok = settings.test_config()
            if args.command is None:
                return EXIT_OK if ok else EXIT_FAILED
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        return COMMANDS[args.command](args, settings, console, stdout)
    except (OracleMismatchError, _ChecksFailed) as e:
        error(str(e))
        return EXIT_FAILED
    except (UsageError, ValueError, FileNotFoundError) as e:
        error(str(e))
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
