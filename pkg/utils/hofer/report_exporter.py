"""
Report Export Utility
Canonical JSON for bound reports and rich tables for human-readable output
"""
import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from utils.braids.braid_types import ExponentSummary

from .helpers import format_rational, format_rational_list, parse_rational
from .hofer_functionals import BoundReport
from .link_params import LinkParams, WeightPair, WeightVector

TERM_ORDER = ("R", "S", "T", "D")


def pair_to_dict(pair: WeightPair) -> Dict[str, List[str]]:
    return {
        "v1": format_rational_list(pair.v1.s),
        "v2": format_rational_list(pair.v2.s),
    }


def summary_to_dict(summary: ExponentSummary) -> Dict:
    return {"k_gen": summary.k_gen, "k_sigma": summary.k_sigma, "k": list(summary.k)}


def report_to_dict(report: BoundReport) -> Dict:
    """Canonical field order: f_max, half_bound, asymptotic_bound, argmax, summary, terms"""
    return {
        "f_max": format_rational(report.f_max),
        "half_bound": format_rational(report.half_bound),
        "asymptotic_bound": format_rational(report.asymptotic_bound),
        "argmax": pair_to_dict(report.argmax_pair),
        "summary": summary_to_dict(report.summary),
        "terms": {name: format_rational(report.per_term[name]) for name in TERM_ORDER},
    }


def report_to_json(report: BoundReport) -> str:
    return json.dumps(report_to_dict(report), indent=2)


def report_from_dict(data: Dict) -> BoundReport:
    """
    Rebuild a report from its JSON form

    Raises:
        ValueError: If a field is missing, malformed, or the derived bounds are inconsistent
    """
    try:
        f_max = parse_rational(data["f_max"])
        pair = WeightPair(
            WeightVector(tuple(parse_rational(x) for x in data["argmax"]["v1"])),
            WeightVector(tuple(parse_rational(x) for x in data["argmax"]["v2"])),
        )
        summary = ExponentSummary(
            int(data["summary"]["k_gen"]),
            int(data["summary"]["k_sigma"]),
            tuple(int(x) for x in data["summary"]["k"]),
        )
        terms = {name: parse_rational(data["terms"][name]) for name in TERM_ORDER}
        half_bound = parse_rational(data["half_bound"])
        asymptotic_bound = parse_rational(data["asymptotic_bound"])
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed bound report: {e}") from e

    report = BoundReport(f_max=f_max, argmax_pair=pair, summary=summary, per_term=terms)
    if report.half_bound != half_bound or report.asymptotic_bound != asymptotic_bound:
        raise ValueError("bound report half_bound/asymptotic_bound do not equal f_max/2")
    return report


def report_from_json(text: str) -> BoundReport:
    return report_from_dict(json.loads(text))


def _vector_text(v: WeightVector) -> str:
    return "(" + ", ".join(format_rational_list(v.s)) + ")"


def render_report(console: Console, params: LinkParams, word_text: str,
                  report: BoundReport, disc_bound: Optional[Fraction] = None) -> None:
    """Human-readable bound report including the witness weight pair"""
    table = Table(title="Hofer lower bound", show_header=True, header_style="bold magenta")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="white")

    table.add_row("word", word_text or "(identity)")
    table.add_row("link", f"k={params.k} g={params.g} p={params.p} "
                          f"lambda={format_rational(params.lam)} "
                          f"area={format_rational(params.ambient_area)}")
    table.add_row("s_max", format_rational(params.s_max))
    table.add_row("k_gen / k_sigma", f"{report.summary.k_gen} / {report.summary.k_sigma}")
    table.add_row("k_j", ", ".join(str(x) for x in report.summary.k))
    for name in TERM_ORDER:
        table.add_row(name, format_rational(report.per_term[name]))
    table.add_row("max |f|", format_rational(report.f_max))
    table.add_row("witness v1", _vector_text(report.argmax_pair.v1))
    table.add_row("witness v2", _vector_text(report.argmax_pair.v2))
    table.add_row("[bold]Hofer norm >=[/bold]", f"[bold green]{format_rational(report.half_bound)}[/bold green]")
    table.add_row("asymptotic norm >=", format_rational(report.asymptotic_bound))
    table.add_row("braid pseudonorm >=", format_rational(report.half_bound))
    if disc_bound is not None:
        table.add_row("disc bound from lk", format_rational(disc_bound))
    console.print(table)


def render_vertex_sweep(console: Console, sweep: Sequence[Tuple[WeightPair, Fraction]]) -> None:
    table = Table(title="Vertex sweep", show_header=True, header_style="bold magenta")
    table.add_column("#", style="cyan", width=4)
    table.add_column("v1", style="yellow")
    table.add_column("v2", style="yellow")
    table.add_column("f", style="white")
    for i, (pair, value) in enumerate(sweep, 1):
        table.add_row(str(i), _vector_text(pair.v1), _vector_text(pair.v2), format_rational(value))
    console.print(table)


def render_checks(console: Console, results) -> None:
    table = Table(title="Relation checks", show_header=True, header_style="bold magenta")
    table.add_column("Check", style="cyan")
    table.add_column("Status", justify="center", width=8)
    table.add_column("Detail", style="white")
    for result in results:
        status = "[green]✓[/green]" if result.passed else "[red]✗[/red]"
        table.add_row(result.name, status, result.detail)
    passed = all(r.passed for r in results)
    console.print(table)
    console.print(Panel(
        "[bold green]all checks passed[/bold green]" if passed else "[bold red]some checks failed[/bold red]",
        border_style="green" if passed else "red",
    ))


def eval_to_dict(value: Fraction, pair: WeightPair, summary: ExponentSummary) -> Dict:
    return {
        "f": format_rational(value),
        **pair_to_dict(pair),
        "summary": summary_to_dict(summary),
    }


def maximize_to_dict(closed: Tuple[Fraction, WeightPair], oracle: Tuple[Fraction, WeightPair],
                     terms: Dict[str, Fraction],
                     sweep: Optional[Sequence[Tuple[WeightPair, Fraction]]] = None) -> Dict:
    data = {
        "f_max_closed": format_rational(closed[0]),
        "f_max_lp": format_rational(oracle[0]),
        "agree": closed[0] == oracle[0],
        "argmax_closed": pair_to_dict(closed[1]),
        "argmax_lp": pair_to_dict(oracle[1]),
        "terms": {name: format_rational(terms[name]) for name in TERM_ORDER},
    }
    if sweep is not None:
        data["vertices"] = [
            {**pair_to_dict(pair), "f": format_rational(value)} for pair, value in sweep
        ]
    return data


def checks_to_dict(results) -> Dict:
    return {
        "passed": all(r.passed for r in results),
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }


def intersections_to_dict(records, total: int, winding: int) -> Dict:
    return {
        "records": [
            {
                "cell": list(r.cell),
                "location": [r.location_estimate[0], r.location_estimate[1]],
                "sign": r.sign,
            }
            for r in records
        ],
        "total": total,
        "boundary_winding": winding,
    }


def render_maximize(console: Console, data: Dict) -> None:
    table = Table(title="Maximum of |f| over V x V", show_header=True, header_style="bold magenta")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="white")
    for name in TERM_ORDER:
        table.add_row(name, data["terms"][name])
    table.add_row("closed form", data["f_max_closed"])
    table.add_row("vertex oracle", data["f_max_lp"])
    table.add_row("closed-form witness", f"v1=({', '.join(data['argmax_closed']['v1'])}) "
                                         f"v2=({', '.join(data['argmax_closed']['v2'])})")
    table.add_row("oracle argmax", f"v1=({', '.join(data['argmax_lp']['v1'])}) "
                                   f"v2=({', '.join(data['argmax_lp']['v2'])})")
    agree = "[green]yes[/green]" if data["agree"] else "[red]no[/red]"
    table.add_row("agree", agree)
    console.print(table)


def render_value(console: Console, word_text: str, data: Dict) -> None:
    table = Table(title="f at a weight pair", show_header=True, header_style="bold magenta")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="white")
    table.add_row("word", word_text or "(identity)")
    table.add_row("v1", "(" + ", ".join(data["v1"]) + ")")
    table.add_row("v2", "(" + ", ".join(data["v2"]) + ")")
    table.add_row("k_gen / k_sigma", f"{data['summary']['k_gen']} / {data['summary']['k_sigma']}")
    table.add_row("f", f"[bold green]{data['f']}[/bold green]")
    console.print(table)


def render_intersections(console: Console, data: Dict) -> None:
    table = Table(title="Intersections with the diagonal", show_header=True, header_style="bold magenta")
    table.add_column("#", style="cyan", width=4)
    table.add_column("Cell", style="yellow")
    table.add_column("(s, t)", style="white")
    table.add_column("Sign", justify="center", width=6)
    for i, record in enumerate(data["records"], 1):
        s, t = record["location"]
        table.add_row(str(i), f"({record['cell'][0]}, {record['cell'][1]})",
                      f"({s:.9f}, {t:.9f})", f"{record['sign']:+d}")
    console.print(table)
    console.print(f"signed total: [bold]{data['total']:+d}[/bold]   "
                  f"boundary winding: [bold]{data['boundary_winding']:+d}[/bold]")
