"""Machine readable reports emitted by the verifiers and the command line."""

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Self


def digest(payload: Any) -> str:
    """Return the sha256 digest of the canonical JSON form of `payload`.

    Examples
    --------
    >>> digest({"b": 1, "a": 2}) == digest({"a": 2, "b": 1})
    True
    """
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Report:
    """Outcome of a command, a verification suite or a single check.

    Parameters
    ----------
    command : str
        Name of the command or suite that produced the report.
    inputs : str
        Digest of the inputs, see `digest`.
    results : dict[str, Any]
        Per-check status and witnesses. Must be JSON serializable.
    seed : int | None
        Seed of the random generator used for sampled checks.
    timing : dict[str, float]
        Wall clock seconds, per suite or per step.
    """

    command: str
    inputs: str = ""
    results: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Return True when every entry in `results` that carries a status passed."""
        return all(
            r.get("passed", True) for r in self.results.values() if isinstance(r, dict)
        )

    def add(self, name: str, passed: bool, **details: Any) -> Self:
        """Record the outcome of one named check."""
        self.results[name] = {"passed": passed, **details}
        return self

    def timed(self, name: str, start: float) -> Self:
        """Store the time spent since `start` (from `time.perf_counter`)."""
        self.timing[name] = round(time.perf_counter() - start, 6)
        return self

    def result_section(self) -> dict[str, Any]:
        """Return everything except the timing, for reproducibility comparisons."""
        out = asdict(self)
        out.pop("timing")
        return out

    def to_json(self, indent: int | None = 2) -> str:
        """Serialize the report."""
        return json.dumps(
            {"kind": "report", **asdict(self)}, indent=indent, sort_keys=True, default=str
        )

    @classmethod
    def from_json(cls, text: str) -> Self:
        """Read a report written by `to_json`."""
        raw = json.loads(text)
        raw.pop("kind", None)
        return cls(**raw)
