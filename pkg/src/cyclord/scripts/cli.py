"""Command line front end.

Every command prints a JSON document (a report, or the built object) on stdout,
or a table with ``--human``. Exit codes: 0 success, 1 semantic failure, 2 input
error.
"""

import pathlib
import time
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import click
import rich.console
import rich.table
from returns.result import Success

import cyclord as core
from cyclord.groups.action import GroupAction
from cyclord.groups.group import GroupTable
from cyclord.groups.orderability import (
    GroupOrder,
    NoTorsion,
    TorsionWitness,
    finite_lcord_decide,
    torsion_obstruction,
)
from cyclord.limits.cover import build_cycle_cover, induced_quotient_action
from cyclord.limits.tower import build_tower, tower_to_dot
from cyclord.orders.cop import cop_check
from cyclord.orders.core import (
    CircOrder,
    LinOrder,
    TernaryRelation,
    verify_circular_axioms,
    verify_cut,
)
from cyclord.orders.lex import FiberedLift, lex_circ_lin
from cyclord.scripts import selftest
from cyclord.utils import io
from cyclord.utils.errors import CyclordError, InputError, ParseError
from cyclord.utils.labels import parse_label
from cyclord.utils.log import get_logger, set_verbosity
from cyclord.utils.report import Report, digest

logger = get_logger(__name__)

stdout = rich.console.Console()


@dataclass
class Options:
    human: bool
    seed: int
    budget: int | None
    max_size: int | None


def _emit(opts: Options, report: Report) -> None:
    if not opts.human:
        click.echo(report.to_json())
        return
    table = rich.table.Table(title=report.command)
    table.add_column("check")
    table.add_column("status")
    table.add_column("details")
    for name, result in report.results.items():
        if not isinstance(result, dict):
            table.add_row(name, "", str(result))
            continue
        details = {k: v for k, v in result.items() if k != "passed"}
        status = "[green]pass" if result.get("passed", True) else "[red]fail"
        table.add_row(name, status, ", ".join(f"{k}={v}" for k, v in details.items()))
    stdout.print(table)
    if report.seed is not None:
        stdout.print(f"seed {report.seed}")


def _exit_code(err: CyclordError) -> int:
    return 2 if isinstance(err, InputError) else 1


def _run(ctx: click.Context, command: str, inputs: Any, body: Callable[[Report], None]) -> None:
    """Fill a report through `body`, emit it and exit with the contract's code."""
    opts: Options = ctx.obj
    report = Report(command, inputs=digest(inputs), seed=opts.seed)
    start = time.perf_counter()
    code = 0
    try:
        body(report)
    except CyclordError as err:
        report.add("error", False, kind=type(err).__name__, message=str(err))
        code = _exit_code(err)
    report.timed(command, start)
    if code == 0 and not report.passed:
        code = 1
    _emit(opts, report)
    ctx.exit(code)


def _artifact(opts: Options, payload: dict[str, Any], output: pathlib.Path | None) -> None:
    if output is not None:
        io.write_document(payload, output)
        logger.info("Wrote %s", output)
    elif opts.human:
        stdout.print_json(io.write_document(payload))
    else:
        click.echo(io.write_document(payload), nl=False)


def _parse_cycle(text: str) -> tuple:
    return tuple(parse_label(t) for t in text.split(",") if t.strip())


@click.group()
@click.option("--human", is_flag=True, help="Print tables instead of JSON.")
@click.option("--seed", type=int, default=None, help="Seed for sampled checks.")
@click.option("--budget", type=int, default=None, help="Budget for tower join closure.")
@click.option("--max-size", type=int, default=None, help="Size bound for exhaustive checks.")
@click.option("-v", "--verbose", count=True, help="Log more (repeat for debug).")
@click.version_option(package_name="cyclord")
@click.pass_context
def main(
    ctx: click.Context,
    human: bool,
    seed: int | None,
    budget: int | None,
    max_size: int | None,
    verbose: int,
) -> None:
    """Circular orders, order-preserving actions and their enveloping semigroups."""
    set_verbosity(verbose)
    ctx.obj = Options(human, core.config.SEED if seed is None else seed, budget, max_size)


VERIFY_KINDS = ("auto", "axioms", "cut", "cop", "invariance", "group", "lift", "scenario")


@main.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(path_type=pathlib.Path))
@click.option("--kind", type=click.Choice(VERIFY_KINDS), default="auto", show_default=True)
@click.pass_context
def verify(ctx: click.Context, paths: tuple[pathlib.Path, ...], kind: str) -> None:
    """Verify an order, a cut, an action, a group order, a lift or a scenario."""
    opts: Options = ctx.obj

    def body(report: Report) -> None:
        if len(paths) > 2:
            raise ParseError("verify takes one document, or two for cut and invariance.")
        objects = [io.load(p)[1] for p in paths]
        check = _detect(objects)
        if kind != "auto" and kind != check:
            raise ParseError(f"The documents describe a {check} check, not {kind}.")
        VERIFIERS[check](report, opts, *objects)

    _run(ctx, "verify", [str(p) for p in paths], body)


def _detect(objects: list[Any]) -> str:
    match objects:
        case [TernaryRelation() | CircOrder() | LinOrder()]:
            return "axioms"
        case [CircOrder(), LinOrder()]:
            return "cut"
        case [GroupTable(), CircOrder() | LinOrder()]:
            return "invariance"
        case [GroupTable()]:
            return "group"
        case [GroupAction()]:
            return "cop"
        case [FiberedLift()]:
            return "lift"
        case [dict()]:
            return "scenario"
    raise ParseError("No verifier for this combination of documents.")


def _verify_axioms(report: Report, opts: Options, obj: Any) -> None:
    if isinstance(obj, LinOrder):
        report.add("linear_order", True, size=len(obj))
        return
    rel = obj.relation() if isinstance(obj, CircOrder) else obj
    verdict = verify_circular_axioms(rel, max_size=opts.max_size)
    if isinstance(verdict, Success):
        report.add("axioms", True, canonical=list(verdict.unwrap().labels))
    else:
        failure = verdict.failure()
        report.add("axioms", False, axiom=failure.axiom, witness=list(failure.witness))


def _verify_cut(report: Report, opts: Options, C: CircOrder, L: LinOrder) -> None:
    report.add("cut", verify_cut(C, L), order=list(L.labels))


def _verify_invariance(report: Report, opts: Options, G: GroupTable, order: Any) -> None:
    go = GroupOrder.of(G, order)
    report.add("left_invariance", go.left, right=go.right, bi=go.bi, group=G.name)


def _verify_group(report: Report, opts: Options, G: GroupTable) -> None:
    report.add("group_axioms", True, name=G.name, order=len(G), cyclic=G.is_cyclic())


def _verify_action(report: Report, opts: Options, act: GroupAction) -> None:
    found = act.non_preserving()
    if found is None:
        report.add("order_preserving", True, effective=act.is_effective())
    else:
        g, witness = found
        report.add("order_preserving", False, element=g, witness=repr(witness))


def _verify_lift(report: Report, opts: Options, lift: FiberedLift) -> None:
    lifted = lift.to_circ_order()
    verdict = cop_check(lift.q, lifted, lift.base)
    report.add("axioms", True, canonical=list(lifted.labels))
    report.add(
        "projection_cop",
        isinstance(verdict, Success),
        witness=None if isinstance(verdict, Success) else repr(verdict.failure()),
    )


def _verify_scenario(report: Report, opts: Options, scenario: dict[str, Any]) -> None:
    seed = opts.seed if "seed" not in scenario else None
    report.add(scenario["family"], **selftest.run_scenario(scenario, seed))


VERIFIERS: dict[str, Callable[..., None]] = {
    "axioms": _verify_axioms,
    "cut": _verify_cut,
    "invariance": _verify_invariance,
    "group": _verify_group,
    "cop": _verify_action,
    "lift": _verify_lift,
    "scenario": _verify_scenario,
}


@main.group()
def build() -> None:
    """Construct lexicographic products, lifts, covers, towers and quotient actions."""


_output = click.option(
    "-o", "--output", type=click.Path(path_type=pathlib.Path), default=None, help="Write here."
)


def _build(ctx: click.Context, name: str, inputs: Any, make: Callable[[], dict]) -> None:
    opts: Options = ctx.obj
    try:
        payload = make()
    except CyclordError as err:
        report = Report(f"build {name}", inputs=digest(inputs), seed=opts.seed)
        report.add("error", False, kind=type(err).__name__, message=str(err))
        _emit(opts, report)
        ctx.exit(_exit_code(err))
    _artifact(opts, payload, ctx.params.get("output"))


@build.command()
@click.argument("circle", type=click.Path(path_type=pathlib.Path))
@click.argument("chain", type=click.Path(path_type=pathlib.Path))
@_output
@click.pass_context
def lex(ctx: click.Context, circle: pathlib.Path, chain: pathlib.Path, output: pathlib.Path | None) -> None:
    """Lexicographic product of a circular order with a chain."""

    def make() -> dict:
        C = io.load(circle, ("corder",))[1]
        L = io.load(chain, ("linorder",))[1]
        return io.to_document(lex_circ_lin(C, L))

    _build(ctx, "lex", [str(circle), str(chain)], make)


@build.command()
@click.argument("path", type=click.Path(path_type=pathlib.Path))
@_output
@click.pass_context
def lift(ctx: click.Context, path: pathlib.Path, output: pathlib.Path | None) -> None:
    """Circular order lifted along a quotient map with ordered fibers."""
    _build(
        ctx,
        "lift",
        str(path),
        lambda: io.to_document(io.load(path, ("lift",))[1].to_circ_order()),
    )


@build.command()
@click.argument("host", type=click.Path(path_type=pathlib.Path))
@click.option("--cycle", "cycle", required=True, help="Comma separated labels.")
@_output
@click.pass_context
def cover(ctx: click.Context, host: pathlib.Path, cycle: str, output: pathlib.Path | None) -> None:
    """Cycle cover of a circular order and its quotient."""

    def make() -> dict:
        C = io.load(host, ("corder",))[1]
        return build_cycle_cover(C, _parse_cycle(cycle)).to_dict()

    _build(ctx, "cover", [str(host), cycle], make)


@build.command()
@click.argument("host", type=click.Path(path_type=pathlib.Path))
@click.option("--cycle", "cycles", multiple=True, required=True, help="Repeat per cycle.")
@click.option("--dot", type=click.Path(path_type=pathlib.Path), default=None, help="DOT file.")
@_output
@click.pass_context
def tower(
    ctx: click.Context,
    host: pathlib.Path,
    cycles: tuple[str, ...],
    dot: pathlib.Path | None,
    output: pathlib.Path | None,
) -> None:
    """Tower of cycle covers closed under joins, optionally drawn as DOT."""
    opts: Options = ctx.obj

    def make() -> dict:
        C = io.load(host, ("corder",))[1]
        t = build_tower(C, [_parse_cycle(c) for c in cycles], opts.budget)
        if dot is not None:
            dot.write_text(tower_to_dot(t), encoding="utf-8")
            logger.info("Wrote %s", dot)
        return t.to_dict()

    _build(ctx, "tower", [str(host), *cycles], make)


@build.command()
@click.argument("action", type=click.Path(path_type=pathlib.Path))
@click.option("--cycle", "cycle", required=True, help="Comma separated labels.")
@_output
@click.pass_context
def quotient(ctx: click.Context, action: pathlib.Path, cycle: str, output: pathlib.Path | None) -> None:
    """Action induced on the quotient of a cycle cover by every group element."""

    def make() -> dict:
        act = io.load(action, ("action",))[1]
        if not isinstance(act.space, CircOrder):
            raise ParseError("Quotient actions need a circular space.")
        c = build_cycle_cover(act.space, _parse_cycle(cycle))
        return {
            "kind": "quotient",
            "cover": c.to_dict(),
            "maps": [
                [g, [[list(b), list(induced_quotient_action(m, c)(b))] for b in c.blocks]]
                for g, m in act.maps().items()
            ],
        }

    _build(ctx, "quotient", [str(action), cycle], make)


@main.command()
@click.argument("path", type=click.Path(path_type=pathlib.Path))
@click.pass_context
def orderable(ctx: click.Context, path: pathlib.Path) -> None:
    """Decide left c-orderability of a finite group and look for torsion."""

    def body(report: Report) -> None:
        G = io.load(path, ("group",))[1]
        decision = finite_lcord_decide(G)
        if decision.orderable:
            report.results["certificate"] = {
                "order": list(decision.certificate.labels),
                "generator": decision.generator,
            }
        else:
            report.results["obstruction"] = {
                "reason": "not cyclic",
                "transcript": list(decision.transcript),
            }
        match torsion_obstruction(G):
            case TorsionWitness(element, order):
                report.results["left_orderable"] = {"torsion": [element, order]}
            case NoTorsion():
                report.results["left_orderable"] = {"torsion": None}

    _run(ctx, "orderable", str(path), body)


@main.command(name="selftest")
@click.option(
    "--suite",
    type=click.Choice(["all", *selftest.SUITES]),
    default="all",
    show_default=True,
)
@click.pass_context
def selftest_command(ctx: click.Context, suite: str) -> None:
    """Run the self-test battery."""
    opts: Options = ctx.obj
    names = list(selftest.SUITES) if suite == "all" else [suite]
    report = selftest.run_suites(names, opts.seed)
    _emit(opts, report)
    ctx.exit(0 if report.passed else 1)


if __name__ == "__main__":
    main()
