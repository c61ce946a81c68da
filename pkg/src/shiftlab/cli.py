"""Batch experiment runner.

`shiftlab run config.json` executes every run in the document and writes
one output file per run plus a summary table; `validate` checks a document
without running it; `list-builtins` prints the built-in catalog.  Logs go
to standard error, data to files and standard output, and repeated runs of
one configuration produce byte-identical output trees.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .audit import (
    VIOLATION,
    entropy_bound_audit,
    polynomial_bound_audit,
    range_vs_wordlength_audit,
    sigma_power_range_audit,
)
from .blockcode import (
    SUBLINEAR_TREND,
    BlockCode,
    RangeProfile,
    endomorphism_check,
    inverse_search,
    minimal_range,
    range_profile,
)
from .config import (
    Budgets,
    ExperimentConfig,
    RunSpec,
    build_code,
    build_group,
    build_shift,
    parse_config,
)
from .corpus import (
    BUILTIN_GROUP_SPECS,
    BUILTIN_SHIFT_SPECS,
    auto_certifier,
    builtin_code_specs,
    builtin_groups,
    builtin_shifts,
)
from .errors import BudgetExceededError, ConfigError
from .grouplab import (
    WordExpr,
    ball_growth,
    base_q_certificate,
    bass_guivarch_degree,
    bfs_word_length,
    bs_horner_certificate,
    bs_horner_length_bound,
    distortion_profile,
    embedding_step_bound,
    heisenberg_square_certificate,
    min_growth_degree,
    BS1nModel,
    HeisenbergModel,
)
from .shiftlang import entropy_profile, morse_hedlund_test, special_words
from .spacetime import (
    build_patches,
    coding_check,
    cyr_kra_audit,
    rectangle_complexity,
    uniform_vertical_period,
)

log = logging.getLogger("shiftlab")

SUMMARY_HEADER = ("name", "operation", "result", "verdict")


def builtin_names() -> dict[str, frozenset]:
    return {
        "shifts": frozenset(BUILTIN_SHIFT_SPECS),
        "codes": frozenset(builtin_code_specs()),
        "groups": frozenset(BUILTIN_GROUP_SPECS),
    }


# -- run context ---------------------------------------------------------------


class RunContext:
    """Catalogs for one run, built fresh so parallel runs share nothing."""

    def __init__(self, config: ExperimentConfig, base_dir: Path):
        self.config = config
        self.base_dir = base_dir
        self.budgets = config.budgets
        self._shifts = None
        self._codes = None
        self._groups = None

    @property
    def shifts(self) -> dict:
        if self._shifts is None:
            catalog = builtin_shifts()
            for name, spec in self.config.shifts.items():
                catalog[name] = build_shift(name, spec)
            self._shifts = catalog
        return self._shifts

    @property
    def codes(self) -> dict:
        if self._codes is None:
            built: dict[str, BlockCode] = {}
            for name, spec in builtin_code_specs().items():
                built[name] = build_code(name, spec, self.shifts, built)
            for name, spec in self.config.codes.items():
                built[name] = build_code(
                    name, spec, self.shifts, built,
                    self.base_dir, self.budgets.table_rows,
                )
            self._codes = built
        return self._codes

    @property
    def groups(self) -> dict:
        if self._groups is None:
            catalog = builtin_groups()
            for name, spec in self.config.groups.items():
                catalog[name] = build_group(name, spec)
            self._groups = catalog
        return self._groups

    def shift(self, run: RunSpec, name) -> object:
        if name not in self.shifts:
            raise ConfigError(f"run {run.name!r} references unknown shift {name!r}")
        return self.shifts[name]

    def code(self, run: RunSpec, name) -> BlockCode:
        if name not in self.codes:
            raise ConfigError(f"run {run.name!r} references unknown code {name!r}")
        return self.codes[name]

    def group(self, run: RunSpec, name):
        if name not in self.groups:
            raise ConfigError(f"run {run.name!r} references unknown group {name!r}")
        return self.groups[name]


# -- parameter access -----------------------------------------------------------


_MISSING = object()


def _param(run: RunSpec, key: str, expected, default=_MISSING):
    if key not in run.params:
        if default is _MISSING:
            raise ConfigError(f"run {run.name!r} needs parameter {key!r}")
        return default
    value = run.params[key]
    if expected is int and isinstance(value, bool):
        raise ConfigError(f"run {run.name!r}: parameter {key!r} must be an integer")
    if not isinstance(value, expected):
        kind = expected.__name__ if isinstance(expected, type) else "value"
        raise ConfigError(f"run {run.name!r}: parameter {key!r} must be a {kind}")
    return value


def _positive(run: RunSpec, key: str, default=_MISSING) -> int:
    value = _param(run, key, int, default)
    if value < 1:
        raise ConfigError(f"run {run.name!r}: parameter {key!r} must be >= 1")
    return value


# -- output helpers --------------------------------------------------------------


def _csv_text(header, rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def _record_text(pairs) -> str:
    return "".join(f"{key}: {value}\n" for key, value in pairs)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return "none"
    return str(value)


@dataclass(frozen=True)
class RunResult:
    """What one run produced: file content plus its summary row."""

    key: str
    verdict: str
    extension: str
    body: str


# -- shift operations --------------------------------------------------------------


def _op_complexity(ctx: RunContext, run: RunSpec) -> RunResult:
    shift = ctx.shift(run, _param(run, "shift", str))
    depth = _positive(run, "depth")
    prof = entropy_profile(shift, depth)
    rows = [
        (n, p, repr(est))
        for n, (p, est) in enumerate(zip(prof.values, prof.entropy_estimates), 1)
    ]
    return RunResult(
        repr(prof.entropy_upper_estimate), "ok",
        "csv", _csv_text(("n", "P", "entropy_estimate"), rows),
    )


def _op_morse_hedlund(ctx: RunContext, run: RunSpec) -> RunResult:
    shift = ctx.shift(run, _param(run, "shift", str))
    limit = _positive(run, "limit")
    verdict = morse_hedlund_test(shift, limit)
    body = _record_text(
        (
            ("test", "morse_hedlund"),
            ("limit", verdict.limit),
            ("witness", _fmt(verdict.witness)),
            ("certifies_periodic", _fmt(verdict.certifies_periodic)),
        )
    )
    return RunResult(_fmt(verdict.witness), "ok", "txt", body)


def _op_special_words(ctx: RunContext, run: RunSpec) -> RunResult:
    shift = ctx.shift(run, _param(run, "shift", str))
    length = _positive(run, "length")
    side = _param(run, "side", str, "right")
    words = special_words(shift, length, side)
    body = _record_text((("side", side), ("length", length), ("count", len(words))))
    body += "".join(f"{w}\n" for w in words)
    return RunResult(str(len(words)), "ok", "txt", body)


# -- code operations ----------------------------------------------------------------


def _op_range_profile(ctx: RunContext, run: RunSpec) -> RunResult:
    code = ctx.code(run, _param(run, "code", str))
    depth = _positive(run, "depth")
    prof = range_profile(code, depth, ctx.budgets.table_rows)
    rows = [
        (n, r, str(Fraction(r, n)))
        for n, r in enumerate(prof.entries, 1)
    ]
    verdict = "ok"
    if prof.truncated_at is not None:
        verdict = f"partial: table budget reached at power {prof.truncated_at}"
    return RunResult(
        prof.classification, verdict,
        "csv", _csv_text(("n", "min_range", "ratio"), rows),
    )


def _op_minimal_range(ctx: RunContext, run: RunSpec) -> RunResult:
    code = ctx.code(run, _param(run, "code", str))
    r = minimal_range(code)
    body = _record_text(
        (("declared_range", code.rule.radius), ("minimal_range", r))
    )
    return RunResult(str(r), "ok", "txt", body)


def _op_inverse_search(ctx: RunContext, run: RunSpec) -> RunResult:
    code = ctx.code(run, _param(run, "code", str))
    cap = _positive(run, "radius_cap", ctx.budgets.radius_cap)
    found = inverse_search(code, cap, ctx.budgets.table_rows)
    pairs = [("radius_cap", cap)]
    if found is None:
        pairs.append(("inverse", "none"))
        key = "none"
    else:
        pairs.append(("inverse_radius", found.rule.radius))
        key = f"radius {found.rule.radius}"
    return RunResult(key, "ok", "txt", _record_text(pairs))


def _op_endomorphism_check(ctx: RunContext, run: RunSpec) -> RunResult:
    code = ctx.code(run, _param(run, "code", str))
    ok = endomorphism_check(code)
    return RunResult(_fmt(ok), "ok", "txt", _record_text((("endomorphism", _fmt(ok)),)))


# -- spacetime operations --------------------------------------------------------------


def _op_rectangle_complexity(ctx: RunContext, run: RunSpec) -> RunResult:
    shift = ctx.shift(run, _param(run, "shift", str))
    code = ctx.code(run, _param(run, "code", str))
    cols = _positive(run, "cols")
    height = _positive(run, "rows")
    rows = []
    last = 0
    for k in range(1, height + 1):
        for n in range(1, cols + 1):
            last = rectangle_complexity(shift, code, n, k, ctx.budgets.table_rows)
            rows.append((n, k, last))
    return RunResult(str(last), "ok", "csv", _csv_text(("n", "k", "count"), rows))


def _op_cyr_kra(ctx: RunContext, run: RunSpec) -> RunResult:
    shift = ctx.shift(run, _param(run, "shift", str))
    code = ctx.code(run, _param(run, "code", str))
    n = _positive(run, "length")
    k = _positive(run, "height")
    patches = build_patches(shift, code, n, k, ctx.budgets.table_rows)
    verdict = cyr_kra_audit(patches, n, k)
    pairs = [
        ("status", verdict.status),
        ("patch_count", verdict.patch_count),
        ("threshold_doubled", verdict.threshold_doubled),
        ("vector", _fmt(verdict.vector)),
    ]
    return RunResult(verdict.status, "ok", "txt", _record_text(pairs))


def _op_vertical_period(ctx: RunContext, run: RunSpec) -> RunResult:
    shift = ctx.shift(run, _param(run, "shift", str))
    code = ctx.code(run, _param(run, "code", str))
    n = _positive(run, "length")
    k = _positive(run, "height")
    patches = build_patches(shift, code, n, k, ctx.budgets.table_rows)
    period = uniform_vertical_period(patches)
    return RunResult(
        _fmt(period), "ok", "txt", _record_text((("vertical_period", _fmt(period)),))
    )


def _cells(run: RunSpec, key: str):
    raw = _param(run, key, list)
    cells = []
    for cell in raw:
        if not isinstance(cell, list) or len(cell) != 2:
            raise ConfigError(f"run {run.name!r}: {key} entries are [col, row] pairs")
        cells.append(tuple(cell))
    return tuple(cells)


def _op_coding_check(ctx: RunContext, run: RunSpec) -> RunResult:
    shift = ctx.shift(run, _param(run, "shift", str))
    code = ctx.code(run, _param(run, "code", str))
    n = _positive(run, "length")
    k = _positive(run, "height")
    patches = build_patches(shift, code, n, k, ctx.budgets.table_rows)
    codes = coding_check(patches, _cells(run, "cells_a"), _cells(run, "cells_b"))
    return RunResult(
        _fmt(codes), "ok", "txt", _record_text((("codes", _fmt(codes)),))
    )


# -- group operations ---------------------------------------------------------------


def _op_ball_growth(ctx: RunContext, run: RunSpec) -> RunResult:
    model, gens = ctx.group(run, _param(run, "group", str))
    radius = _positive(run, "radius")
    growth = ball_growth(model, gens, radius, ctx.budgets.bfs_states)
    rows = list(enumerate(growth.sizes))
    key = f"degree {growth.fitted_degree!r} superpolynomial {_fmt(growth.superpolynomial)}"
    return RunResult(key, "ok", "csv", _csv_text(("r", "size"), rows))


def _op_word_length(ctx: RunContext, run: RunSpec) -> RunResult:
    model, gens = ctx.group(run, _param(run, "group", str))
    word = WordExpr.parse(_param(run, "element", str))
    g = word.evaluate(model, gens.binding())
    radius = _positive(run, "radius", ctx.budgets.radius_cap)
    length = bfs_word_length(model, gens, g, radius, ctx.budgets.bfs_states)
    body = _record_text(
        (("element", str(word)), ("radius", radius), ("length", _fmt(length)))
    )
    return RunResult(_fmt(length), "ok", "txt", body)


def _resolve_certifier(run: RunSpec, model, word: WordExpr):
    choice = _param(run, "certificate", str, "auto")
    if choice == "none":
        return None
    if choice == "auto":
        return auto_certifier(model, word)
    raise ConfigError(
        f"run {run.name!r}: certificate must be 'auto' or 'none', got {choice!r}"
    )


def _op_distortion(ctx: RunContext, run: RunSpec) -> RunResult:
    model, gens = ctx.group(run, _param(run, "group", str))
    word = WordExpr.parse(_param(run, "element", str))
    g = word.evaluate(model, gens.binding())
    depth = _positive(run, "depth")
    prof = distortion_profile(
        model, gens, g, depth,
        radius_max=_positive(run, "radius", ctx.budgets.radius_cap),
        state_budget=ctx.budgets.bfs_states,
        certifier=_resolve_certifier(run, model, word),
    )
    rows = [(e.n, "" if e.value is None else e.value, e.kind) for e in prof.entries]
    return RunResult(
        prof.trend_class, "ok",
        "csv", _csv_text(("n", "length", "exact_or_bound"), rows),
    )


def _op_certificate(ctx: RunContext, run: RunSpec) -> RunResult:
    kind = _param(run, "kind", str)
    if kind == "bs_horner":
        m = _positive(run, "m")
        base = _positive(run, "base")
        word = bs_horner_certificate(m, base)
        model = BS1nModel(base)
        target = (0, m)
        pairs = [("kind", kind), ("m", m), ("base", base)]
        bound = bs_horner_length_bound(m, base)
    elif kind == "heisenberg_square":
        n = _positive(run, "n")
        word = heisenberg_square_certificate(n)
        model = HeisenbergModel()
        target = (0, 0, n * n)
        pairs = [("kind", kind), ("n", n)]
        bound = 4 * n
    elif kind == "heisenberg_base_q":
        n = _positive(run, "n")
        word = base_q_certificate(n)
        model = HeisenbergModel()
        target = (0, 0, n)
        pairs = [("kind", kind), ("n", n)]
        bound = None
    else:
        raise ConfigError(f"run {run.name!r}: unknown certificate kind {kind!r}")
    value = word.evaluate(model, model.generators())
    if value != target:
        raise ValueError(f"certificate evaluates to {value!r}, expected {target!r}")
    pairs += [("word", str(word)), ("length", word.length)]
    if bound is not None:
        pairs.append(("length_bound", bound))
    pairs.append(("verified", "true"))
    return RunResult(str(word.length), "ok", "txt", _record_text(pairs))


def _op_growth_formula(ctx: RunContext, run: RunSpec) -> RunResult:
    formula = _param(run, "formula", str)
    if formula == "bass_guivarch":
        ranks = _param(run, "ranks", list)
        value = bass_guivarch_degree(tuple(ranks))
        pairs = [("formula", formula), ("ranks", " ".join(map(str, ranks)))]
    elif formula == "min_growth_degree":
        step = _positive(run, "step")
        value = min_growth_degree(step)
        pairs = [("formula", formula), ("step", step)]
    elif formula == "embedding_step_bound":
        exponent = run.params.get("complexity_exponent")
        if isinstance(exponent, bool) or not isinstance(exponent, (int, float)):
            raise ConfigError(
                f"run {run.name!r}: complexity_exponent must be a number"
            )
        value = embedding_step_bound(exponent)
        pairs = [("formula", formula), ("complexity_exponent", exponent)]
    else:
        raise ConfigError(f"run {run.name!r}: unknown formula {formula!r}")
    pairs.append(("value", value))
    return RunResult(str(value), "ok", "txt", _record_text(pairs))


# -- audit operations ----------------------------------------------------------------


def _literal_range_profile(run: RunSpec, key: str) -> RangeProfile:
    entries = _param(run, key, list)
    if not entries or not all(isinstance(v, int) and v >= 0 for v in entries):
        raise ConfigError(
            f"run {run.name!r}: {key} must be a nonempty list of ranges >= 0"
        )
    try:
        return RangeProfile.from_entries(entries)
    except ValueError as exc:
        if not run.fabricated:
            raise ConfigError(f"run {run.name!r}: {exc}") from exc
        # fabricated detector probes may break the subadditivity law on
        # purpose; the classification is irrelevant for them
        entries = tuple(entries)
        upper = min(Fraction(v, n) for n, v in enumerate(entries, 1))
        return RangeProfile(entries, upper, SUBLINEAR_TREND)


def _range_profile_input(ctx: RunContext, run: RunSpec, depth_key: str) -> RangeProfile:
    if "range_entries" in run.params:
        return _literal_range_profile(run, "range_entries")
    code = ctx.code(run, _param(run, "code", str))
    depth = _positive(run, depth_key)
    return range_profile(code, depth, ctx.budgets.table_rows)


def _report_result(report) -> RunResult:
    return RunResult(report.verdict, report.verdict, "txt", report.to_text())


def _op_audit_range_word(ctx: RunContext, run: RunSpec) -> RunResult:
    model, gens = ctx.group(run, _param(run, "group", str))
    word = WordExpr.parse(_param(run, "element", str))
    g = word.evaluate(model, gens.binding())
    depth = _positive(run, "depth")
    refs = _param(run, "codes", dict)
    generator_profiles = {
        label: range_profile(ctx.code(run, name), depth, ctx.budgets.table_rows)
        for label, name in refs.items()
    }
    if "range_entries" in run.params:
        element_profile = _literal_range_profile(run, "range_entries")
    else:
        element_profile = range_profile(
            ctx.code(run, _param(run, "element_code", str)),
            depth, ctx.budgets.table_rows,
        )
    words = distortion_profile(
        model, gens, g, depth,
        radius_max=_positive(run, "radius", ctx.budgets.radius_cap),
        state_budget=ctx.budgets.bfs_states,
        certifier=_resolve_certifier(run, model, word),
    )
    return _report_result(
        range_vs_wordlength_audit(generator_profiles, element_profile, words)
    )


def _op_audit_entropy(ctx: RunContext, run: RunSpec) -> RunResult:
    prof = _range_profile_input(ctx, run, "depth_range")
    shift = ctx.shift(run, _param(run, "shift", str))
    complexity = entropy_profile(shift, _positive(run, "depth_complexity"))
    tolerance = _param(run, "tolerance", float, 0.05)
    return _report_result(entropy_bound_audit(prof, complexity, tolerance))


def _op_audit_polynomial(ctx: RunContext, run: RunSpec) -> RunResult:
    prof = _range_profile_input(ctx, run, "depth_range")
    shift = ctx.shift(run, _param(run, "shift", str))
    depth = _positive(run, "depth")
    complexity = entropy_profile(shift, depth)
    root = run.params.get("root")
    if root is not None and (isinstance(root, bool) or not isinstance(root, int)):
        raise ConfigError(f"run {run.name!r}: root must be an integer")
    report = polynomial_bound_audit(
        prof, complexity, depth,
        root=root,
        require_sublinear=_param(run, "require_sublinear", bool, True),
    )
    return _report_result(report)


def _op_audit_shift_power(ctx: RunContext, run: RunSpec) -> RunResult:
    shift = ctx.shift(run, _param(run, "shift", str))
    exponent = _param(run, "exponent", int)
    depth = _positive(run, "depth")
    report = sigma_power_range_audit(exponent, shift, depth, ctx.budgets.table_rows)
    return _report_result(report)


OPERATIONS = {
    "complexity": _op_complexity,
    "morse_hedlund": _op_morse_hedlund,
    "special_words": _op_special_words,
    "range_profile": _op_range_profile,
    "minimal_range": _op_minimal_range,
    "inverse_search": _op_inverse_search,
    "endomorphism_check": _op_endomorphism_check,
    "rectangle_complexity": _op_rectangle_complexity,
    "cyr_kra": _op_cyr_kra,
    "vertical_period": _op_vertical_period,
    "coding_check": _op_coding_check,
    "ball_growth": _op_ball_growth,
    "word_length": _op_word_length,
    "distortion": _op_distortion,
    "certificate": _op_certificate,
    "growth_formula": _op_growth_formula,
    "audit_range_word": _op_audit_range_word,
    "audit_entropy": _op_audit_entropy,
    "audit_polynomial": _op_audit_polynomial,
    "audit_shift_power": _op_audit_shift_power,
}


# -- execution ---------------------------------------------------------------------


def _execute_run(config: ExperimentConfig, base_dir: Path, run: RunSpec) -> RunResult:
    handler = OPERATIONS.get(run.operation)
    if handler is None:
        return RunResult("-", f"error: unknown operation {run.operation!r}", "txt", "")
    try:
        return handler(RunContext(config, base_dir), run)
    except BudgetExceededError as exc:
        log.error("run %s: %s", run.name, exc)
        return RunResult("-", f"error: {exc}", "txt", "")
    except (ConfigError, ValueError, LookupError) as exc:
        log.error("run %s: %s", run.name, exc)
        return RunResult("-", f"error: {exc}", "txt", "")


def execute_config(
    config: ExperimentConfig, base_dir: Path, parallel: bool = False
) -> tuple[int, str]:
    """Run every run spec; returns (exit status, summary CSV text).

    Output files land in config.out_dir.  The exit status is nonzero
    exactly when some run errored or an audit on non-fabricated data
    reported a Violation.
    """
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if parallel and len(config.runs) > 1:
        with ThreadPoolExecutor(max_workers=min(8, len(config.runs))) as pool:
            results = list(
                pool.map(lambda r: _execute_run(config, base_dir, r), config.runs)
            )
    else:
        results = [_execute_run(config, base_dir, run) for run in config.runs]

    failed = False
    rows = []
    for run, result in zip(config.runs, results):
        if result.body:
            path = out_dir / f"{run.name}.{result.extension}"
            path.write_text(result.body)
            log.info("run %s -> %s", run.name, path)
        rows.append((run.name, run.operation, result.key, result.verdict))
        if result.verdict.startswith("error"):
            failed = True
        elif result.verdict == VIOLATION and not run.fabricated:
            log.error("run %s: Violation on non-fabricated data", run.name)
            failed = True

    summary = _csv_text(SUMMARY_HEADER, rows)
    (out_dir / "summary.csv").write_text(summary)
    return (1 if failed else 0), summary


# -- commands ------------------------------------------------------------------------


def _load_config(path: Path) -> tuple[ExperimentConfig, Path]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
    config = parse_config(text, builtin_names())
    for section, builtin in (
        ("shifts", BUILTIN_SHIFT_SPECS),
        ("codes", builtin_code_specs()),
        ("groups", BUILTIN_GROUP_SPECS),
    ):
        clashes = set(getattr(config, section)) & set(builtin)
        if clashes:
            raise ConfigError(
                f"{section} {sorted(clashes)} shadow built-in names"
            )
    return config, path.resolve().parent


def _apply_overrides(config: ExperimentConfig, args) -> ExperimentConfig:
    budgets = config.budgets
    if args.budget_tables is not None:
        budgets = dataclasses.replace(budgets, table_rows=args.budget_tables)
    if args.budget_bfs is not None:
        budgets = dataclasses.replace(budgets, bfs_states=args.budget_bfs)
    updates = {"budgets": budgets}
    if args.out_dir is not None:
        updates["out_dir"] = args.out_dir
    return dataclasses.replace(config, **updates)


def _cmd_run(args) -> int:
    config, base_dir = _load_config(Path(args.config))
    config = _apply_overrides(config, args)
    status, summary = execute_config(config, base_dir, parallel=args.parallel)
    sys.stdout.write(summary)
    return status


def _cmd_validate(args) -> int:
    config, base_dir = _load_config(Path(args.config))
    ctx = RunContext(config, base_dir)
    # building the catalogs is the point: it surfaces bad element specs
    ctx.shifts
    ctx.codes
    ctx.groups
    for run in config.runs:
        if run.operation not in OPERATIONS:
            raise ConfigError(
                f"run {run.name!r} uses unknown operation {run.operation!r}"
            )
    sys.stdout.write(
        "ok: %d shifts, %d codes, %d groups, %d runs\n"
        % (
            len(config.shifts),
            len(config.codes),
            len(config.groups),
            len(config.runs),
        )
    )
    return 0


def _cmd_list_builtins(_args) -> int:
    lines = ["shifts:"]
    lines += [f"  {name}" for name in BUILTIN_SHIFT_SPECS]
    lines.append("codes:")
    lines += [f"  {name}" for name in builtin_code_specs()]
    lines.append("code constructors: table shift_power symbol_map compose power")
    lines.append("groups:")
    lines += [f"  {name}" for name in BUILTIN_GROUP_SPECS]
    lines.append("operations:")
    lines += [f"  {name}" for name in OPERATIONS]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="shiftlab",
        description="Deterministic batch runner for shift, code, and group experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a configuration document")
    run_p.add_argument("config", help="path to the JSON configuration")
    run_p.add_argument("--out-dir", help="override the configured output directory")
    run_p.add_argument("--budget-tables", type=int, help="override the table-row budget")
    run_p.add_argument("--budget-bfs", type=int, help="override the BFS state budget")
    run_p.add_argument(
        "--parallel", action="store_true", help="run independent runs on threads"
    )
    run_p.set_defaults(func=_cmd_run)

    val_p = sub.add_parser("validate", help="check a configuration without running it")
    val_p.add_argument("config", help="path to the JSON configuration")
    val_p.set_defaults(func=_cmd_validate)

    lb_p = sub.add_parser("list-builtins", help="print the built-in catalog")
    lb_p.set_defaults(func=_cmd_list_builtins)

    args = parser.parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
