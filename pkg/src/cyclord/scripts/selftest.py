"""Self-test battery: exhaustive and seeded checks of every construction at desk scale.

Each suite returns a dict with a ``passed`` flag, counts and the first witness of a
failure. `run_suites` collects them into a `Report`, one timing entry per suite.
"""

import itertools
import math
import pathlib
import random
import time
from collections.abc import Callable
from typing import Any

from returns.result import Success

import cyclord as core
from cyclord.ellis.cascade import (
    Trans,
    cascade_elements,
    cascade_system,
    cascade_table_mismatches,
)
from cyclord.ellis.finite import (
    TransformationSemigroup,
    ellis_linear_order,
    finite_ellis,
    finite_ellis_order,
)
from cyclord.ellis.quadirr import QuadIrr, interval_sign, qi_sign
from cyclord.ellis.sturmian import (
    ALPHA,
    P,
    Side,
    Sigma,
    random_element,
    random_triples,
    sturmian_etriple,
    verify_composition_laws,
    verify_minimal_ideal,
    verify_translation_cop,
)
from cyclord.groups.group import corpus
from cyclord.groups.orderability import finite_lcord_decide, left_invariance_check
from cyclord.limits.cover import bonding_map, normalize_cycle
from cyclord.limits.tower import build_tower, induced_action_commutes, verify_tower
from cyclord.orders.cop import condition_one_witness, condition_two_witness, cop_check, rotations
from cyclord.orders.core import (
    CircOrder,
    LinOrder,
    circularize,
    cut_order,
    enumerate_circ_orders,
    enumerate_oriented_relations,
    verify_circular_axioms,
    verify_cut,
)
from cyclord.orders.lex import build_fibered_lift
from cyclord.utils import io
from cyclord.utils.errors import CyclordError, ParseError
from cyclord.utils.log import get_logger, progress_bar
from cyclord.utils.report import Report

logger = get_logger(__name__)

Outcome = dict[str, Any]


def _ok(**details: Any) -> Outcome:
    return {"passed": True, **details}


def _bad(witness: Any, **details: Any) -> Outcome:
    logger.warning("Suite failed, witness %s", witness)
    return {"passed": False, "witness": witness, **details}


def suite_axioms(seed: int) -> Outcome:
    """Canonical sequences and axiom-valid relations are in bijection for n <= 5."""
    for n in range(6):
        orders = list(enumerate_circ_orders(range(n)))
        for C in orders:
            if verify_circular_axioms(C.relation()) != Success(C):
                return _bad(list(C.labels), n=n)
        if n < 3:
            continue
        realized = []
        for rel in enumerate_oriented_relations(range(n)):
            verdict = verify_circular_axioms(rel)
            if isinstance(verdict, Success):
                realized.append(verdict.unwrap())
        if sorted(o.labels for o in realized) != sorted(o.labels for o in orders):
            return _bad(f"{len(realized)} valid relations on {n} labels", n=n)
    return _ok(max_n=5)


def suite_cuts(seed: int) -> Outcome:
    """circularize(cut_order(C, z)) == C for every C with at most 6 labels and every z."""
    checked = 0
    for n in range(1, 7):
        for C in enumerate_circ_orders(range(n)):
            for z in C.labels:
                L = cut_order(C, z)
                if not verify_cut(C, L) or circularize(L) != C:
                    return _bad([list(C.labels), z])
                checked += 1
    return _ok(checked=checked)


def suite_cop(seed: int) -> Outcome:
    """Condition (1) implies condition (2) for every map C_m -> C_n with image size >= 3."""
    checked = 0
    for m, n in itertools.product(range(1, 6), repeat=2):
        X1, X2 = CircOrder.standard(m), CircOrder.standard(n)
        for images in itertools.product(range(n), repeat=m):
            if len(set(images)) < 3:
                continue
            f = dict(enumerate(images))
            checked += 1
            if condition_one_witness(f, X1, X2) is None and condition_two_witness(f, X1):
                return _bad([m, n, list(images)])
    return _ok(checked=checked)


def _surjections(nx: int, ny: int) -> list[dict[int, int]]:
    return [
        dict(enumerate(images))
        for images in itertools.product(range(ny), repeat=nx)
        if len(set(images)) == ny
    ]


def suite_lift(seed: int) -> Outcome:
    """Every fibered lift with |X| <= 5, |Y| <= 3 is a circular order compatible with q."""
    checked = 0
    for nx, ny in itertools.product(range(1, 6), range(1, 4)):
        base = CircOrder.standard(ny)
        for q in _surjections(nx, ny):
            preimages = [[x for x in q if q[x] == y] for y in range(ny)]
            for choice in itertools.product(*(itertools.permutations(p) for p in preimages)):
                fibers = {y: LinOrder(choice[y]) for y in range(ny)}
                lifted = build_fibered_lift(q, base, fibers).to_circ_order()
                for y, L in fibers.items():
                    if len(L) >= 3 and lifted.restrict(L.labels) != circularize(L):
                        return _bad({"q": q, "fiber": y})
                if not isinstance(cop_check(q, lifted, base), Success):
                    return _bad({"q": q, "lift": list(lifted.labels)})
                checked += 1
    return _ok(checked=checked)


def suite_lcord(seed: int) -> Outcome:
    """Finite left c-orderability is cyclicity, and every certificate is left invariant."""
    for name, G in corpus().items():
        decision = finite_lcord_decide(G)
        if decision.orderable != G.is_cyclic():
            return _bad(name)
        if decision.orderable and not left_invariance_check(G, decision.certificate):
            return _bad(name, certificate=list(decision.certificate.labels))
    return _ok(groups=len(corpus()))


def _random_cycle_pair(host: CircOrder, rng: random.Random) -> tuple[tuple, tuple]:
    k = rng.randint(1, len(host))
    F2 = sorted(rng.sample(host.labels, k), key=host.index)
    F1 = sorted(rng.sample(F2, rng.randint(1, k)), key=host.index)
    return normalize_cycle(host, F1), normalize_cycle(host, F2)


def suite_limits(seed: int, pairs_per_host: int = 25) -> Outcome:
    """Coherence of covers and bonding maps on random cycle pairs of hosts up to 10 labels."""
    rng = random.Random(seed)
    checked = 0
    for n in range(3, 11):
        host = CircOrder.standard(n)
        autos = rotations(host)
        for _ in range(pairs_per_host):
            F1, F2 = _random_cycle_pair(host, rng)
            tower = build_tower(host, [F1, F2])
            if problems := verify_tower(tower):
                return _bad({"host": n, "cycles": [F1, F2], "problems": problems})
            if F1 != F2 and not bonding_map(tower.covers[F2], tower.covers[F1]).is_cop:
                return _bad({"host": n, "cycles": [F1, F2], "problems": ["bonding not COP"]})
            for p in autos.elements:
                if not induced_action_commutes(tower, autos.as_map(p)):
                    return _bad({"host": n, "cycles": [F1, F2], "rotation": p})
            checked += 1
    return _ok(checked=checked)


def run_scenario(scenario: dict[str, Any], seed: int | None = None) -> Outcome:
    """Run an enveloping semigroup scenario document."""
    base = pathlib.Path(scenario.get("_dir", "."))
    match scenario["family"]:
        case "finite":
            return _finite_scenario(scenario, base)
        case "cascade":
            return _cascade_scenario(scenario.get("n_max", 10), scenario.get("radius", 100))
        case "sturmian":
            return _sturmian_scenario(
                seed=scenario.get("seed", 0) if seed is None else seed,
                samples=scenario.get("samples", 500),
                n_range=scenario.get("n_range", 50),
                ideal_sample=scenario.get("ideal_sample", 40),
                triples=scenario.get("triples", 100),
            )
    raise ParseError(f"Unknown scenario family {scenario['family']!r}.")


def _finite_scenario(scenario: dict[str, Any], base: pathlib.Path) -> Outcome:
    if "action" in scenario:
        act = io.resolve(scenario["action"], base, ("action",))
        if not isinstance(act.space, LinOrder):
            raise ParseError("A finite scenario acts on a linorder.")
        E = finite_ellis(act)
        group_order = scenario.get("group_order")
        verdict = finite_ellis_order(
            E, act.space, None if group_order is None else LinOrder(tuple(group_order))
        )
    else:
        carrier = tuple(scenario["carrier"])
        index = {x: i for i, x in enumerate(carrier)}
        try:
            gens = [tuple(index[y] for y in images) for images in scenario["maps"]]
        except KeyError as err:
            raise ParseError(f"Image {err.args[0]!r} is not in the carrier.") from None
        E = TransformationSemigroup.generated(carrier, gens)
        verdict = ellis_linear_order(E.elements, E.system(LinOrder(carrier)))
    if isinstance(verdict, Success):
        return _ok(elements=len(E), claims=dict(verdict.unwrap().claims))
    failure = verdict.failure()
    return _bad([failure.claim, failure.witness], elements=len(E))


def _cascade_scenario(n_max: int, radius: int) -> Outcome:
    if (mismatch := next(cascade_table_mismatches(n_max, radius), None)) is not None:
        return _bad(["composition table", repr(mismatch)])
    group_order = list(range(-n_max, n_max + 1))
    verdict = ellis_linear_order(
        cascade_elements(n_max),
        cascade_system(radius),
        group_order,
        {n: Trans(n) for n in group_order},
    )
    if not isinstance(verdict, Success):
        failure = verdict.failure()
        return _bad([failure.claim, repr(failure.witness)])
    return _ok(
        elements=2 * n_max + 3,
        order=[repr(e) for e in verdict.unwrap().order.labels],
        claims=dict(verdict.unwrap().claims),
    )


def suite_ellis(seed: int) -> Outcome:
    """The pointwise order on the cascade and the finite fixtures; the broken fixture fails."""
    outcomes = {"cascade": _cascade_scenario(10, 100)}
    outcomes["trivial"] = run_scenario(io.convert(io.read_document(io.FIXTURES / "ellis_trivial.json")))
    broken = run_scenario(io.convert(io.read_document(io.FIXTURES / "ellis_broken.json")))
    if not all(o["passed"] for o in outcomes.values()):
        failed = next(k for k, o in outcomes.items() if not o["passed"])
        return _bad(outcomes[failed].get("witness"), instance=failed)
    if broken["passed"] or broken["witness"][0] != "totality":
        return _bad("broken fixture accepted", instance="broken")
    return _ok(instances=sorted(outcomes), broken_rejected=broken["witness"])


def _sturmian_scenario(
    seed: int, samples: int = 500, n_range: int = 50, ideal_sample: int = 40, triples: int = 100
) -> Outcome:
    rng = random.Random(seed)
    laws = verify_composition_laws(samples, rng=rng, seed=seed)
    if failed := [r for r in laws if not r.passed]:
        return _bad([failed[0].law, repr(failed[0].witness)])
    for n in range(-n_range, n_range + 1):
        gamma = n * ALPHA
        if not sturmian_etriple(P(gamma, Side.MINUS), Sigma(n), P(gamma, Side.PLUS)):
            return _bad(["isolated point", n])
    sample = [random_element(rng, n_range) for _ in range(ideal_sample // 2)]
    sample += [P(ALPHA * k, s) for k in range(ideal_sample // 4) for s in (Side.MINUS, Side.PLUS)]
    ideal = verify_minimal_ideal(sample)
    if not ideal.passed:
        return _bad(["minimal ideal", repr(ideal.witness), *ideal.messages])
    tested = random_triples(rng, triples, n_range)
    translations = [Sigma(0), Sigma(1), Sigma(-3), random_element(rng), P(ALPHA, Side.PLUS)]
    for u in translations:
        if not verify_translation_cop(u, tested):
            return _bad(["translation", repr(u)])
    return _ok(
        samples_per_law=samples,
        laws=[r.law for r in laws],
        ideal_size=len(sample),
        translations=len(translations),
    )


def suite_sturmian(seed: int) -> Outcome:
    return _sturmian_scenario(seed)


def suite_qisign(seed: int, samples: int = 10**5) -> Outcome:
    """Exact signs agree with 128-bit interval arithmetic wherever the latter decides."""
    rng = random.Random(seed)
    ambiguous = 0
    if qi_sign(QuadIrr(0, 0)) != 0:
        return _bad([0, 0])
    for _ in range(samples):
        p, q = rng.randint(-(10**6), 10**6), rng.randint(-(10**6), 10**6)
        x = QuadIrr(p, q)
        exact = qi_sign(x)
        if (exact == 0) != (p == 0 and q == 0):
            return _bad([p, q])
        approx = interval_sign(x, 128)
        if approx is None:
            ambiguous += 1
        elif approx != exact:
            return _bad([p, q], exact=exact, interval=approx)
    return _ok(samples=samples, ambiguous=ambiguous)


# Fixture name -> expected exit code of ``cyclord verify``.
FIXTURE_EXIT_CODES = {
    "c5.json": 0,
    "c5_ternary.json": 0,
    "asymmetry.json": 1,
    "z6.json": 0,
    "z8.json": 0,
    "d4.json": 0,
    "trivial.json": 0,
    "z3_c3.json": 0,
    "trivial_chain.json": 0,
    "c6_lift.json": 0,
    "chain2.json": 0,
    "c3.json": 0,
    "z6_order.json": 0,
    "cascade.json": 0,
    "ellis_trivial.json": 0,
    "ellis_broken.json": 1,
    "sturmian.json": 0,
}


def suite_cli(seed: int) -> Outcome:
    """Every fixture survives parse -> serialize -> parse and exits as expected."""
    from click.testing import CliRunner

    from cyclord.scripts.cli import main

    runner = CliRunner()
    for path in sorted(io.FIXTURES.glob("*.json")):
        obj = io.convert(io.read_document(path))
        once = io.to_document(obj)
        twice = io.to_document(io.convert(dict(once, _dir=str(path.parent))))
        if core.utils.report.digest(once) != core.utils.report.digest(twice):
            return _bad(["round trip", path.name])
        if path.name not in FIXTURE_EXIT_CODES:
            return _bad(["unlisted fixture", path.name])
        result = runner.invoke(main, ["verify", str(path)])
        if result.exit_code != FIXTURE_EXIT_CODES[path.name]:
            return _bad(["exit code", path.name, result.exit_code])
    result = runner.invoke(
        main, ["verify", str(io.FIXTURES / "z6.json"), str(io.FIXTURES / "z6_order.json")]
    )
    if result.exit_code != 0:
        return _bad(["exit code", "z6 invariance", result.exit_code])
    result = runner.invoke(main, ["verify", str(io.FIXTURES / "missing.json")])
    if result.exit_code != 2:
        return _bad(["exit code", "missing file", result.exit_code])
    return _ok(fixtures=len(FIXTURE_EXIT_CODES))


SUITES: dict[str, Callable[[int], Outcome]] = {
    "axioms": suite_axioms,
    "cuts": suite_cuts,
    "cop": suite_cop,
    "lift": suite_lift,
    "lcord": suite_lcord,
    "limits": suite_limits,
    "ellis": suite_ellis,
    "sturmian": suite_sturmian,
    "qisign": suite_qisign,
    "cli": suite_cli,
}


def run_suites(names: list[str], seed: int) -> Report:
    """Run the named suites in order and collect their outcomes."""
    report = Report("selftest", inputs=core.utils.report.digest(names), seed=seed)
    with progress_bar() as progress:
        task = progress.add_task("Self-test", total=len(names))
        for name in names:
            progress.update(task, description=f"Suite {name}")
            start = time.perf_counter()
            try:
                outcome = SUITES[name](seed)
            except CyclordError as err:
                outcome = _bad([type(err).__name__, str(err)])
            report.add(name, **outcome)
            report.timed(name, start)
            progress.advance(task)
    logger.info("Self-test finished in %.2f s", math.fsum(report.timing.values()))
    return report
