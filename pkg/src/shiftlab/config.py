"""Experiment configuration: a JSON document describing shifts, codes,
groups, and the runs to execute over them.

The document round-trips (parse, serialize, parse) to an identical value,
every reference failure names the offending element, and all budgets are
explicit so reruns are reproducible byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .blockcode import (
    DEFAULT_TABLE_BUDGET,
    BlockCode,
    code_from_table,
    compose,
    power,
    shift_power_code,
    symbol_map_code,
)
from .errors import ConfigError
from .grouplab import (
    DEFAULT_BFS_STATES,
    DEFAULT_RADIUS,
    BS1nModel,
    GeneratingSet,
    GroupModel,
    HeisenbergModel,
    ZdModel,
)
from .shiftlang import (
    Alphabet,
    FullShift,
    PeriodicOrbit,
    SftForbidden,
    ShiftPresentation,
    SubstitutionShift,
)

RUN_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-")


@dataclass(frozen=True)
class Budgets:
    """Resource ceilings shared by every run of one experiment."""

    table_rows: int = DEFAULT_TABLE_BUDGET
    bfs_states: int = DEFAULT_BFS_STATES
    radius_cap: int = DEFAULT_RADIUS

    def __post_init__(self):
        for name in ("table_rows", "bfs_states", "radius_cap"):
            if getattr(self, name) < 1:
                raise ConfigError(f"budget {name} must be positive")


@dataclass(frozen=True)
class RunSpec:
    """One operation invocation: a unique name, the operation, its params.

    fabricated marks runs whose inputs are deliberately corrupted detector
    probes; their Violations are expected and do not fail the experiment.
    """

    name: str
    operation: str
    params: dict = field(default_factory=dict)
    fabricated: bool = False

    def __post_init__(self):
        if not self.name or not set(self.name) <= RUN_NAME_CHARS:
            raise ConfigError(
                f"run name {self.name!r} must be nonempty and use only "
                "letters, digits, '_' or '-'"
            )
        if not self.operation:
            raise ConfigError(f"run {self.name!r} needs an operation")


@dataclass(frozen=True)
class ExperimentConfig:
    shifts: dict = field(default_factory=dict)
    codes: dict = field(default_factory=dict)
    groups: dict = field(default_factory=dict)
    runs: tuple = ()
    out_dir: str = "results"
    budgets: Budgets = field(default_factory=Budgets)


_TOP_LEVEL_KEYS = {"shifts", "codes", "groups", "runs", "out_dir", "budgets"}
_RUN_KEYS = {"name", "operation", "params", "fabricated"}

# params under these keys must name a defined shift / code / group
_SHIFT_REF_KEYS = ("shift",)
_CODE_REF_KEYS = ("code", "element_code")
_GROUP_REF_KEYS = ("group",)


def _require_object(value, what: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{what} must be a JSON object")
    return value


def parse_config(text: str, builtin_names: Mapping[str, frozenset] | None = None) -> ExperimentConfig:
    """Parse and validate a configuration document.

    builtin_names optionally maps each section ("shifts", "codes",
    "groups") to the names predefined by the runner; run references may
    use those in addition to the names defined in the document.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
    raw = _require_object(raw, "configuration")
    unknown = set(raw) - _TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")

    sections = {}
    for section in ("shifts", "codes", "groups"):
        entries = _require_object(raw.get(section, {}), section)
        for name, spec in entries.items():
            spec = _require_object(spec, f"{section} entry {name!r}")
            if "kind" not in spec:
                raise ConfigError(f"{section} entry {name!r} needs a 'kind'")
        sections[section] = dict(entries)

    budgets_raw = _require_object(raw.get("budgets", {}), "budgets")
    unknown = set(budgets_raw) - {"table_rows", "bfs_states", "radius_cap"}
    if unknown:
        raise ConfigError(f"unknown budget keys: {sorted(unknown)}")
    budgets = Budgets(**budgets_raw)

    out_dir = raw.get("out_dir", "results")
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError("out_dir must be a nonempty string")

    known = {
        section: set(sections[section])
        | set((builtin_names or {}).get(section, frozenset()))
        for section in ("shifts", "codes", "groups")
    }

    runs = []
    seen_names = set()
    for i, entry in enumerate(raw.get("runs", [])):
        entry = _require_object(entry, f"runs[{i}]")
        unknown = set(entry) - _RUN_KEYS
        if unknown:
            raise ConfigError(f"runs[{i}]: unknown keys {sorted(unknown)}")
        try:
            run = RunSpec(
                entry.get("name", ""),
                entry.get("operation", ""),
                _require_object(entry.get("params", {}), f"runs[{i}] params"),
                bool(entry.get("fabricated", False)),
            )
        except ConfigError as exc:
            raise ConfigError(f"runs[{i}]: {exc}") from exc
        if run.name in seen_names:
            raise ConfigError(f"duplicate run name {run.name!r}")
        seen_names.add(run.name)
        _check_references(run, known)
        runs.append(run)

    return ExperimentConfig(
        sections["shifts"], sections["codes"], sections["groups"],
        tuple(runs), out_dir, budgets,
    )


def _check_references(run: RunSpec, known: Mapping[str, set]) -> None:
    def check(kind: str, name) -> None:
        if not isinstance(name, str) or name not in known[kind]:
            raise ConfigError(
                f"run {run.name!r} references unknown {kind[:-1]} {name!r}"
            )

    for key in _SHIFT_REF_KEYS:
        if key in run.params:
            check("shifts", run.params[key])
    for key in _CODE_REF_KEYS:
        if key in run.params:
            check("codes", run.params[key])
    for key in _GROUP_REF_KEYS:
        if key in run.params:
            check("groups", run.params[key])
    if "codes" in run.params:
        refs = _require_object(run.params["codes"], f"run {run.name!r} codes")
        for name in refs.values():
            check("codes", name)


def serialize_config(config: ExperimentConfig) -> str:
    """Canonical JSON text; parse(serialize(parse(t))) == parse(t)."""
    doc = {
        "shifts": config.shifts,
        "codes": config.codes,
        "groups": config.groups,
        "runs": [
            {
                "name": run.name,
                "operation": run.operation,
                "params": run.params,
                **({"fabricated": True} if run.fabricated else {}),
            }
            for run in config.runs
        ],
        "out_dir": config.out_dir,
        "budgets": {
            "table_rows": config.budgets.table_rows,
            "bfs_states": config.budgets.bfs_states,
            "radius_cap": config.budgets.radius_cap,
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- rule tables -------------------------------------------------------------


def load_rule_table(text: str, origin: str = "rule table") -> dict:
    """Parse `window symbol` lines into a table, with row diagnostics.

    Blank lines and lines starting with '#' are skipped.
    """
    table = {}
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise ConfigError(
                f"{origin} line {lineno}: expected 'window symbol', got {line!r}"
            )
        window, symbol = fields
        if len(symbol) != 1:
            raise ConfigError(
                f"{origin} line {lineno}: output {symbol!r} must be one symbol"
            )
        if width is None:
            width = len(window)
            if width % 2 == 0:
                raise ConfigError(
                    f"{origin} line {lineno}: window length must be odd, "
                    f"got {width}"
                )
        elif len(window) != width:
            raise ConfigError(
                f"{origin} line {lineno}: window {window!r} has length "
                f"{len(window)}, earlier rows have {width}"
            )
        if window in table:
            raise ConfigError(f"{origin} line {lineno}: duplicate window {window!r}")
        table[window] = symbol
    if not table:
        raise ConfigError(f"{origin}: no rules found")
    return table


# -- object builders ----------------------------------------------------------


def build_shift(name: str, spec: dict) -> ShiftPresentation:
    kind = spec.get("kind")
    try:
        if kind == "full":
            return FullShift(Alphabet.of(spec["alphabet"]))
        if kind == "sft":
            return SftForbidden(Alphabet.of(spec["alphabet"]), spec["forbidden"])
        if kind == "substitution":
            return SubstitutionShift(Alphabet.of(spec["alphabet"]), spec["rules"])
        if kind == "periodic":
            return PeriodicOrbit(spec["seed"])
    except KeyError as exc:
        raise ConfigError(f"shift {name!r} is missing field {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"shift {name!r}: {exc}") from exc
    raise ConfigError(f"shift {name!r} has unknown kind {kind!r}")


def build_code(
    name: str,
    spec: dict,
    shifts: Mapping[str, ShiftPresentation],
    built: Mapping[str, BlockCode],
    base_dir: Path | None = None,
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> BlockCode:
    """Build one code; compose/power may reference earlier built codes."""
    kind = spec.get("kind")

    def domain() -> ShiftPresentation:
        ref = spec.get("domain")
        if ref not in shifts:
            raise ConfigError(f"code {name!r} references unknown shift {ref!r}")
        return shifts[ref]

    def code_ref(key: str) -> BlockCode:
        ref = spec.get(key)
        if ref not in built:
            raise ConfigError(
                f"code {name!r} references code {ref!r} which is not defined "
                "earlier in the document"
            )
        return built[ref]

    try:
        if kind == "table":
            if "file" in spec:
                path = Path(spec["file"])
                if base_dir is not None and not path.is_absolute():
                    path = base_dir / path
                try:
                    text = path.read_text()
                except OSError as exc:
                    raise ConfigError(f"code {name!r}: cannot read {path}: {exc}")
                table = load_rule_table(text, origin=str(path))
            else:
                table = dict(spec["table"])
                if not table:
                    raise ConfigError(f"code {name!r}: empty table")
            width = len(next(iter(table)))
            radius = spec.get("radius", (width - 1) // 2)
            return code_from_table(domain(), radius, table)
        if kind == "shift_power":
            return shift_power_code(domain(), spec["exponent"])
        if kind == "symbol_map":
            return symbol_map_code(domain(), spec["image"])
        if kind == "compose":
            return compose(code_ref("outer"), code_ref("inner"), table_budget)
        if kind == "power":
            return power(code_ref("base"), spec["exponent"], table_budget)
    except ConfigError:
        raise
    except KeyError as exc:
        raise ConfigError(f"code {name!r} is missing field {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"code {name!r}: {exc}") from exc
    raise ConfigError(f"code {name!r} has unknown kind {kind!r}")


def _parse_group_element(name: str, kind: str, value, rank: int):
    if not isinstance(value, list):
        raise ConfigError(f"group {name!r}: generator values must be lists")
    if kind == "baumslag_solitar":
        if len(value) != 2:
            raise ConfigError(f"group {name!r}: elements are [power, translation]")
        k, m = value
        if isinstance(m, str):
            m = Fraction(m)
        return (k, m)
    expected = 3 if kind == "heisenberg" else rank
    if len(value) != expected or not all(isinstance(v, int) for v in value):
        raise ConfigError(
            f"group {name!r}: elements are lists of {expected} integers"
        )
    return tuple(value)


def build_group(name: str, spec: dict) -> tuple[GroupModel, GeneratingSet]:
    kind = spec.get("kind")
    try:
        if kind == "free_abelian":
            model: GroupModel = ZdModel(spec["rank"])
        elif kind == "heisenberg":
            model = HeisenbergModel()
        elif kind == "baumslag_solitar":
            model = BS1nModel(spec["base"])
        else:
            raise ConfigError(f"group {name!r} has unknown kind {kind!r}")
        if "generators" in spec:
            named = _require_object(spec["generators"], f"group {name!r} generators")
            rank = spec.get("rank", 0)
            elements = {
                gen: _parse_group_element(name, kind, value, rank)
                for gen, value in named.items()
            }
            gens = GeneratingSet.from_named(model, elements)
        else:
            gens = GeneratingSet.standard(model)
        return model, gens
    except ConfigError:
        raise
    except KeyError as exc:
        raise ConfigError(f"group {name!r} is missing field {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"group {name!r}: {exc}") from exc
