"""Configuration file for `cyclord`."""

import os
import pathlib
import tomllib
from typing import Any

_DEFAULTS: dict[str, int] = {
    "max_size": 64,
    "perm_bound": 8,
    "enumeration_budget": 10**7,
    "join_budget": 256,
    "probe_budget": 1000,
    "seed": 0,
}


def find_project_root() -> pathlib.Path | None:
    """Return the repository root when running from a source checkout."""
    HERE = pathlib.Path(__file__)
    for i, parents in enumerate(HERE.parents):
        if parents.name == "src":
            project_root = HERE.parents[i + 1]
            if (project_root / "pyproject.toml").exists():
                return project_root
            break
    return None


def _write_default(cfg_file: pathlib.Path) -> None:
    with open(cfg_file, mode="w") as cfg:
        cfg.write("[cyclord]\n")
        cfg.write("# Largest label set the exhaustive verifiers accept\n")
        cfg.write(f"max_size = {_DEFAULTS['max_size']}\n")
        cfg.write("# Largest label set for which all permutations are filtered\n")
        cfg.write(f"perm_bound = {_DEFAULTS['perm_bound']}\n")
        cfg.write("# Raw candidate maps allowed in COP map enumeration\n")
        cfg.write(f"enumeration_budget = {_DEFAULTS['enumeration_budget']}\n")
        cfg.write("# Largest number of cycles a tower may be closed up to\n")
        cfg.write(f"join_budget = {_DEFAULTS['join_budget']}\n")
        cfg.write("# Probes allowed per oracle-backed comparison\n")
        cfg.write(f"probe_budget = {_DEFAULTS['probe_budget']}\n")
        cfg.write("# Seed used by sampling verifiers unless --seed is given\n")
        cfg.write(f"seed = {_DEFAULTS['seed']}")


def load_config(cfg_file: pathlib.Path | None) -> dict[str, Any]:
    """Read the config file on top of the defaults.

    Parameters
    ----------
    cfg_file : pathlib.Path | None
        Location of a `cyclord.toml` file. Missing files give the defaults.

    Returns
    -------
    dict[str, Any]
        The merged settings, with the ``CYCLORD_MAX_SIZE`` environment variable
        applied last.
    """
    out: dict[str, Any] = dict(_DEFAULTS)
    if cfg_file is not None and cfg_file.exists():
        with cfg_file.open(mode="rb") as cfg:
            out.update(tomllib.load(cfg).get("cyclord", {}))
    if (env := os.environ.get("CYCLORD_MAX_SIZE")) is not None:
        out["max_size"] = int(env)
    return out


_root = find_project_root()
_cfg = None if _root is None else _root / "cyclord.toml"
if _cfg is not None and not _cfg.exists():
    _write_default(_cfg)

_settings = load_config(_cfg)
MAX_SIZE: int = int(_settings["max_size"])
PERM_BOUND: int = int(_settings["perm_bound"])
ENUMERATION_BUDGET: int = int(_settings["enumeration_budget"])
JOIN_BUDGET: int = int(_settings["join_budget"])
PROBE_BUDGET: int = int(_settings["probe_budget"])
SEED: int = int(_settings["seed"])
