"""Test the command line front end and the document layer on the bundled fixtures."""

import json
import pathlib

import pytest
from click.testing import CliRunner, Result

from cyclord.orders.cop import find_isomorphism
from cyclord.orders.core import CircOrder
from cyclord.scripts import selftest
from cyclord.scripts.cli import main
from cyclord.scripts.selftest import FIXTURE_EXIT_CODES
from cyclord.utils import io
from cyclord.utils.errors import InvariantViolation, ParseError
from cyclord.utils.report import Report, digest

FIXTURES = io.FIXTURES


def _invoke(*args: str) -> Result:
    return CliRunner().invoke(main, [str(a) for a in args])


def _json(result: Result) -> dict:
    text = result.stdout
    return json.loads(text[text.index("{") :])


@pytest.fixture
def c6(tmp_path: pathlib.Path) -> pathlib.Path:
    path = tmp_path / "c6.json"
    io.write_document({"kind": "corder", "cycle": list(range(6))}, path)
    return path


@pytest.mark.parametrize("name", sorted(FIXTURE_EXIT_CODES))
def test_fixture_exit_codes(name: str) -> None:
    """Every bundled fixture verifies with its documented exit code."""
    assert _invoke("verify", FIXTURES / name).exit_code == FIXTURE_EXIT_CODES[name]


def test_fixture_round_trip() -> None:
    """Parse, serialize and parse again gives the same document."""
    for path in sorted(FIXTURES.glob("*.json")):
        once = io.to_document(io.convert(io.read_document(path)))
        twice = io.to_document(io.convert(dict(once, _dir=str(path.parent))))
        assert digest(once) == digest(twice), path.name


def test_verify_c5_ternary() -> None:
    """The C5 relation passes and reports its canonical sequence."""
    result = _invoke("verify", FIXTURES / "c5_ternary.json")
    assert result.exit_code == 0
    assert _json(result)["results"]["axioms"]["canonical"] == [0, 1, 2, 3, 4]


def test_verify_asymmetry() -> None:
    """The asymmetry violation exits 1 with a witness."""
    result = _invoke("verify", FIXTURES / "asymmetry.json")
    assert result.exit_code == 1
    axioms = _json(result)["results"]["axioms"]
    assert axioms["axiom"] == "Asymmetry"
    assert len(axioms["witness"]) == 3


def test_verify_invariance() -> None:
    """Z6 with the order of its generator is left invariant."""
    result = _invoke("verify", FIXTURES / "z6.json", FIXTURES / "z6_order.json")
    assert result.exit_code == 0
    assert _json(result)["results"]["left_invariance"]["bi"] is True


def test_input_errors(tmp_path: pathlib.Path) -> None:
    """Unreadable, malformed and mismatched inputs exit 2."""
    assert _invoke("verify", tmp_path / "missing.json").exit_code == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    assert _invoke("verify", broken).exit_code == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text('{"kind": "spiral"}', encoding="utf-8")
    assert _invoke("verify", unknown).exit_code == 2
    assert _invoke("verify", FIXTURES / "c5.json", "--kind", "cut").exit_code == 2
    with pytest.raises(ParseError):
        io.read_document(unknown)


def test_human_output() -> None:
    """--human renders a table instead of JSON."""
    result = _invoke("--human", "verify", FIXTURES / "c5.json")
    assert result.exit_code == 0
    assert "axioms" in result.output
    assert '"kind": "report"' not in result.output


def test_scenario_reproducible() -> None:
    """Result sections do not depend on the run."""
    runs = [_invoke("--seed", "5", "verify", FIXTURES / "cascade.json") for _ in range(2)]
    assert all(r.exit_code == 0 for r in runs)
    sections = [Report.from_json(json.dumps(_json(r))).result_section() for r in runs]
    assert sections[0] == sections[1]
    assert sections[0]["seed"] == 5


def test_build_lex() -> None:
    """C3 times a 2-chain is a six point cycle."""
    result = _invoke("build", "lex", FIXTURES / "c3.json", FIXTURES / "chain2.json")
    assert result.exit_code == 0
    product = io.convert(_json(result))
    assert len(product) == 6
    assert find_isomorphism(CircOrder.standard(6), product) is not None


def test_build_lift() -> None:
    """The bundled lift lays its fibers out in base order."""
    result = _invoke("build", "lift", FIXTURES / "c6_lift.json")
    assert result.exit_code == 0
    assert _json(result)["cycle"] == [0, 1, 2, 3, 4, 5]


def test_build_cover(c6: pathlib.Path, tmp_path: pathlib.Path) -> None:
    """Cover of C6 by (0, 3) has four blocks; a bad cycle exits 2."""
    out = tmp_path / "cover.json"
    result = _invoke("build", "cover", c6, "--cycle", "0,3", "-o", out)
    assert result.exit_code == 0
    assert len(json.loads(out.read_text(encoding="utf-8"))["blocks"]) == 4
    assert _invoke("build", "cover", c6, "--cycle", "3,1,0").exit_code == 2


def test_build_tower_dot(c6: pathlib.Path, tmp_path: pathlib.Path) -> None:
    """The DOT drawing has one cluster per level and the bonding edges."""
    dot = tmp_path / "tower.dot"
    result = _invoke("build", "tower", c6, "--cycle", "0", "--cycle", "0,3", "--dot", dot)
    assert result.exit_code == 0
    assert len(_json(result)["levels"]) == 2
    text = dot.read_text(encoding="utf-8")
    assert text.count("subgraph cluster_") == 2
    assert text.count("->") == 4


def test_build_tower_budget(c6: pathlib.Path) -> None:
    """--budget bounds the join closure."""
    args = ["--cycle", "0", "--cycle", "1", "--cycle", "2", "--cycle", "3"]
    assert _invoke("--budget", "3", "build", "tower", c6, *args).exit_code == 2


def test_build_quotient() -> None:
    """Every element of Z3 acts on the quotient by (0,)."""
    result = _invoke("build", "quotient", FIXTURES / "z3_c3.json", "--cycle", "0")
    assert result.exit_code == 0
    doc = _json(result)
    assert doc["kind"] == "quotient"
    assert len(doc["maps"]) == 3


@pytest.mark.parametrize(
    "name, key",
    [("z8.json", "certificate"), ("d4.json", "obstruction"), ("trivial.json", "certificate")],
)
def test_orderable(name: str, key: str) -> None:
    """Cyclic groups get a certificate, others the reason they have none."""
    result = _invoke("orderable", FIXTURES / name)
    assert result.exit_code == 0
    results = _json(result)["results"]
    assert key in results
    if key == "obstruction":
        assert results["obstruction"]["reason"] == "not cyclic"


def test_selftest_suite() -> None:
    """A single suite runs through the command line."""
    assert _invoke("selftest", "--suite", "axioms").exit_code == 0


def test_selftest_suite_raising(monkeypatch: pytest.MonkeyPatch) -> None:
    """A suite that raises is reported as failed with the error as witness."""

    def broken(seed: int) -> dict:
        raise InvariantViolation("lift is not circular")

    monkeypatch.setitem(selftest.SUITES, "axioms", broken)
    result = _invoke("selftest", "--suite", "axioms")
    assert result.exit_code == 1
    axioms = _json(result)["results"]["axioms"]
    assert axioms["passed"] is False
    assert axioms["witness"] == ["InvariantViolation", "lift is not circular"]


def test_every_fixture_has_exit_code() -> None:
    """No bundled fixture is left out of the exit code table."""
    assert sorted(p.name for p in FIXTURES.glob("*.json")) == sorted(FIXTURE_EXIT_CODES)


if __name__ == "__main__":
    test_fixture_round_trip()
