"""Configuration parsing, serialization, and object building."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from shiftlab.blockcode import apply_to_word, codes_equal, shift_power_code
from shiftlab.config import (
    Budgets,
    ExperimentConfig,
    RunSpec,
    build_code,
    build_group,
    build_shift,
    load_rule_table,
    parse_config,
    serialize_config,
)
from shiftlab.errors import ConfigError
from shiftlab.grouplab import BS1nModel, HeisenbergModel, ZdModel
from shiftlab.shiftlang import (
    Alphabet,
    FullShift,
    PeriodicOrbit,
    SftForbidden,
    SubstitutionShift,
)


def parse(doc, builtins=None):
    return parse_config(json.dumps(doc), builtins)


class TestParse:
    def test_empty_document_gets_defaults(self):
        config = parse({})
        assert config.shifts == {} and config.codes == {} and config.groups == {}
        assert config.runs == ()
        assert config.out_dir == "results"
        assert config.budgets == Budgets()

    def test_full_document(self):
        config = parse(
            {
                "shifts": {"evens": {"kind": "sft", "alphabet": "01", "forbidden": ["101"]}},
                "codes": {"step": {"kind": "shift_power", "domain": "evens", "exponent": 2}},
                "groups": {"lattice": {"kind": "free_abelian", "rank": 3}},
                "runs": [
                    {"name": "a", "operation": "complexity", "params": {"shift": "evens", "depth": 4}},
                    {"name": "b", "operation": "minimal_range", "params": {"code": "step"}, "fabricated": True},
                ],
                "out_dir": "exp",
                "budgets": {"table_rows": 1000},
            }
        )
        assert set(config.shifts) == {"evens"}
        assert config.runs[0].params["depth"] == 4
        assert config.runs[1].fabricated is True
        assert config.out_dir == "exp"
        assert config.budgets.table_rows == 1000
        assert config.budgets.bfs_states == Budgets().bfs_states

    def test_not_json_rejected(self):
        with pytest.raises(ConfigError, match="not valid JSON"):
            parse_config("{nope")

    def test_non_object_rejected(self):
        with pytest.raises(ConfigError, match="JSON object"):
            parse_config("[1, 2]")

    def test_unknown_top_level_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown configuration keys"):
            parse({"rnus": []})

    def test_unknown_run_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown keys"):
            parse({"runs": [{"name": "a", "operation": "x", "fabrikated": True}]})

    def test_run_name_charset_enforced(self):
        with pytest.raises(ConfigError, match="letters, digits"):
            parse({"runs": [{"name": "a b", "operation": "x"}]})
        with pytest.raises(ConfigError, match="nonempty"):
            parse({"runs": [{"operation": "x"}]})

    def test_duplicate_run_names_rejected(self):
        with pytest.raises(ConfigError, match="duplicate run name 'a'"):
            parse(
                {
                    "runs": [
                        {"name": "a", "operation": "x"},
                        {"name": "a", "operation": "y"},
                    ]
                }
            )

    def test_missing_operation_rejected(self):
        with pytest.raises(ConfigError, match="needs an operation"):
            parse({"runs": [{"name": "a"}]})

    def test_section_entry_needs_kind(self):
        with pytest.raises(ConfigError, match="entry 'x' needs a 'kind'"):
            parse({"shifts": {"x": {"alphabet": "01"}}})

    def test_unknown_budget_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown budget keys"):
            parse({"budgets": {"tables": 5}})

    def test_nonpositive_budget_rejected(self):
        with pytest.raises(ConfigError, match="must be positive"):
            parse({"budgets": {"radius_cap": 0}})

    def test_empty_out_dir_rejected(self):
        with pytest.raises(ConfigError, match="out_dir"):
            parse({"out_dir": ""})

    def test_references_checked_against_document(self):
        with pytest.raises(ConfigError, match="references unknown shift 'ghost'"):
            parse({"runs": [{"name": "a", "operation": "x", "params": {"shift": "ghost"}}]})

    def test_references_accept_builtin_names(self):
        builtins = {"shifts": frozenset({"ghost"})}
        config = parse(
            {"runs": [{"name": "a", "operation": "x", "params": {"shift": "ghost"}}]},
            builtins,
        )
        assert config.runs[0].params["shift"] == "ghost"

    def test_code_map_values_are_references(self):
        with pytest.raises(ConfigError, match="references unknown code 'nope'"):
            parse(
                {
                    "runs": [
                        {
                            "name": "a",
                            "operation": "x",
                            "params": {"codes": {"left": "nope"}},
                        }
                    ]
                }
            )


class TestSerialize:
    DOC = {
        "shifts": {"x": {"kind": "full", "alphabet": "ab"}},
        "runs": [
            {"name": "r1", "operation": "complexity", "params": {"shift": "x", "depth": 3}},
            {"name": "r2", "operation": "complexity", "params": {"shift": "x", "depth": 3}, "fabricated": True},
        ],
    }

    def test_round_trip_is_identity(self):
        first = parse(self.DOC)
        text = serialize_config(first)
        second = parse_config(text)
        assert second == first
        assert serialize_config(second) == text

    def test_canonical_form_is_stable(self):
        text = serialize_config(parse(self.DOC))
        assert text.endswith("\n")
        # fabricated appears only where it is true
        runs = json.loads(text)["runs"]
        assert "fabricated" not in runs[0]
        assert runs[1]["fabricated"] is True


class TestRuleTable:
    def test_parses_rows_and_skips_comments(self):
        table = load_rule_table("# parity\n000 0\n 001 1 \n\n010 1\n")
        assert table == {"000": "0", "001": "1", "010": "1"}

    def test_bad_field_count_names_origin_and_line(self):
        with pytest.raises(ConfigError, match=r"rules\.txt line 2: expected"):
            load_rule_table("000 0\n001\n", origin="rules.txt")

    def test_multicharacter_output_rejected(self):
        with pytest.raises(ConfigError, match="must be one symbol"):
            load_rule_table("000 01\n")

    def test_even_width_rejected(self):
        with pytest.raises(ConfigError, match="must be odd"):
            load_rule_table("00 0\n")

    def test_inconsistent_width_rejected(self):
        with pytest.raises(ConfigError, match="earlier rows have 3"):
            load_rule_table("000 0\n00000 1\n")

    def test_duplicate_window_rejected(self):
        with pytest.raises(ConfigError, match="line 2: duplicate window"):
            load_rule_table("000 0\n000 1\n")

    def test_empty_table_rejected(self):
        with pytest.raises(ConfigError, match="no rules found"):
            load_rule_table("# nothing here\n")


class TestBuildShift:
    def test_all_kinds(self):
        assert isinstance(build_shift("a", {"kind": "full", "alphabet": "01"}), FullShift)
        assert isinstance(
            build_shift("b", {"kind": "sft", "alphabet": "01", "forbidden": ["11"]}),
            SftForbidden,
        )
        assert isinstance(
            build_shift(
                "c",
                {"kind": "substitution", "alphabet": "01", "rules": {"0": "01", "1": "0"}},
            ),
            SubstitutionShift,
        )
        assert isinstance(build_shift("d", {"kind": "periodic", "seed": "001"}), PeriodicOrbit)

    def test_unknown_kind_names_shift(self):
        with pytest.raises(ConfigError, match="shift 'bad' has unknown kind 'sofic'"):
            build_shift("bad", {"kind": "sofic"})

    def test_missing_field_names_shift(self):
        with pytest.raises(ConfigError, match="shift 'bad' is missing field"):
            build_shift("bad", {"kind": "full"})

    def test_domain_error_names_shift(self):
        with pytest.raises(ConfigError, match="shift 'bad':"):
            build_shift("bad", {"kind": "sft", "alphabet": "01", "forbidden": ["0", "1"]})


class TestBuildCode:
    SHIFTS = {"bits": FullShift(Alphabet.of("01"))}

    def test_inline_table_with_default_radius(self):
        code = build_code(
            "maj",
            {
                "kind": "table",
                "domain": "bits",
                "table": {w: str(int(w.count("1") >= 2)) for w in ["000", "001", "010", "011", "100", "101", "110", "111"]},
            },
            self.SHIFTS,
            {},
        )
        assert code.rule.radius == 1
        assert apply_to_word(code, "0110") == "11"

    def test_table_from_file_relative_to_base_dir(self, tmp_path):
        rules = tmp_path / "sub" / "rule.txt"
        rules.parent.mkdir()
        rules.write_text("".join(f"{w} {w[1]}\n" for w in ["000", "001", "010", "011", "100", "101", "110", "111"]))
        code = build_code(
            "copy",
            {"kind": "table", "domain": "bits", "file": "sub/rule.txt"},
            self.SHIFTS,
            {},
            base_dir=tmp_path,
        )
        assert apply_to_word(code, "0110") == "11"

    def test_missing_file_names_code(self, tmp_path):
        with pytest.raises(ConfigError, match="code 'x': cannot read"):
            build_code(
                "x",
                {"kind": "table", "domain": "bits", "file": "gone.txt"},
                self.SHIFTS,
                {},
                base_dir=tmp_path,
            )

    def test_shift_power_symbol_map_compose_power(self):
        built = {}
        built["step"] = build_code(
            "step", {"kind": "shift_power", "domain": "bits", "exponent": 1}, self.SHIFTS, built
        )
        built["swap"] = build_code(
            "swap",
            {"kind": "symbol_map", "domain": "bits", "image": {"0": "1", "1": "0"}},
            self.SHIFTS,
            built,
        )
        composed = build_code(
            "both", {"kind": "compose", "outer": "step", "inner": "swap"}, self.SHIFTS, built
        )
        assert apply_to_word(composed, "0110") == "01"
        squared = build_code(
            "sq", {"kind": "power", "base": "step", "exponent": 2}, self.SHIFTS, built
        )
        assert codes_equal(squared, shift_power_code(self.SHIFTS["bits"], 2))

    def test_forward_reference_rejected(self):
        with pytest.raises(ConfigError, match="not defined earlier"):
            build_code(
                "x", {"kind": "compose", "outer": "later", "inner": "later"}, self.SHIFTS, {}
            )

    def test_unknown_shift_reference_rejected(self):
        with pytest.raises(ConfigError, match="references unknown shift 'ghost'"):
            build_code(
                "x", {"kind": "shift_power", "domain": "ghost", "exponent": 1}, self.SHIFTS, {}
            )

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigError, match="code 'x' has unknown kind"):
            build_code("x", {"kind": "wavelet"}, self.SHIFTS, {})

    def test_empty_inline_table_rejected(self):
        with pytest.raises(ConfigError, match="empty table"):
            build_code("x", {"kind": "table", "domain": "bits", "table": {}}, self.SHIFTS, {})


class TestBuildGroup:
    def test_standard_groups(self):
        model, gens = build_group("z", {"kind": "free_abelian", "rank": 2})
        assert isinstance(model, ZdModel)
        assert set(gens.binding()) >= {"e1", "e2"}
        model, gens = build_group("h", {"kind": "heisenberg"})
        assert isinstance(model, HeisenbergModel)
        model, gens = build_group("bs", {"kind": "baumslag_solitar", "base": 2})
        assert isinstance(model, BS1nModel) and model.n == 2

    def test_named_generators(self):
        _, gens = build_group(
            "h",
            {
                "kind": "heisenberg",
                "generators": {"u": [1, 0, 0], "t": [0, 1, 0], "s": [0, 0, 1]},
            },
        )
        assert gens.binding()["s"] == (0, 0, 1)

    def test_bs_fraction_translation(self):
        _, gens = build_group(
            "bs",
            {
                "kind": "baumslag_solitar",
                "base": 2,
                "generators": {"a": [0, "1/2"], "b": [1, 0]},
            },
        )
        assert gens.binding()["a"] == (0, Fraction(1, 2))

    def test_errors_name_group(self):
        with pytest.raises(ConfigError, match="group 'g' has unknown kind"):
            build_group("g", {"kind": "braid"})
        with pytest.raises(ConfigError, match="group 'g' is missing field"):
            build_group("g", {"kind": "free_abelian"})
        with pytest.raises(ConfigError, match="group 'g': elements are lists of 3"):
            build_group("g", {"kind": "heisenberg", "generators": {"u": [1, 0]}})
        with pytest.raises(ConfigError, match=r"elements are \[power, translation\]"):
            build_group(
                "g", {"kind": "baumslag_solitar", "base": 2, "generators": {"a": [1]}}
            )


class TestSpecGuards:
    def test_runspec_validates_on_construction(self):
        with pytest.raises(ConfigError):
            RunSpec("bad name", "op")
        with pytest.raises(ConfigError):
            RunSpec("ok", "")

    def test_budgets_validate_on_construction(self):
        with pytest.raises(ConfigError):
            Budgets(table_rows=0)

    def test_experiment_config_is_plain_data(self):
        config = ExperimentConfig(runs=(RunSpec("a", "complexity"),))
        assert config.runs[0].operation == "complexity"
