"""
Tests for input validators
"""
import json

import pytest

from app.exceptions import InvalidSpec
from app.validators import (
    ColumnNameValidator,
    EffectSpecEntry,
    PartitionValidator,
    PointValidator,
    WeightVectorValidator,
    load_effect_specs,
    load_points,
    parse_effect_specs,
    parse_points,
)


class TestColumnNameValidator:
    """Test column name validation"""

    def test_valid_names(self):
        assert ColumnNameValidator.validate("x1") == "x1"
        assert ColumnNameValidator.validate("  tricalcium_silicate ") == "tricalcium_silicate"

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="cannot be empty"):
            ColumnNameValidator.validate("   ")

    @pytest.mark.parametrize("name", ["x 1", "x1,x2", "{x1}", "f(x)"])
    def test_rejects_separators(self, name):
        with pytest.raises(ValueError, match="Invalid column name"):
            ColumnNameValidator.validate(name)

    def test_rejects_too_long(self):
        with pytest.raises(ValueError, match="too long"):
            ColumnNameValidator.validate("x" * 65)


class TestWeightVectorValidator:

    def test_keywords(self):
        assert WeightVectorValidator.validate("avg") == "avg"
        assert WeightVectorValidator.validate("vwa") == "vwa"

    def test_unknown_keyword(self):
        with pytest.raises(ValueError, match="Unknown weight keyword"):
            WeightVectorValidator.validate("mean")

    def test_list(self):
        assert WeightVectorValidator.validate([1, -0.5], size=2) == [1.0, -0.5]

    def test_wrong_size(self):
        with pytest.raises(ValueError, match="Expected 3 weights"):
            WeightVectorValidator.validate([0.5, 0.5], size=3)

    def test_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            WeightVectorValidator.validate([float("nan"), 1.0])


class TestPointAndPartition:

    def test_point(self):
        assert PointValidator.validate([1, 2.5]) == (1.0, 2.5)

    def test_point_size(self):
        with pytest.raises(ValueError):
            PointValidator.validate([1.0], size=2)

    def test_partition_disjoint(self):
        with pytest.raises(ValueError, match="more than one group"):
            PartitionValidator.validate([["x1", "x2"], ["x2", "x3"]])

    def test_partition_cleaned(self):
        assert PartitionValidator.validate([[" x1", "x2 "]]) == [["x1", "x2"]]


class TestEffectSpecEntry:

    def test_group_defaults_to_vwa(self):
        entry = EffectSpecEntry(group=["x1", "x2"])
        assert entry.weights == "vwa"
        assert entry.members == ["x1", "x2"]

    def test_needs_exactly_one_target(self):
        with pytest.raises(ValueError):
            EffectSpecEntry(group=["x1"], columns=["x2"], weights=[1.0])
        with pytest.raises(ValueError):
            EffectSpecEntry(weights=[1.0])

    def test_columns_need_explicit_weights(self):
        with pytest.raises(ValueError, match="explicit weights"):
            EffectSpecEntry(columns=["x5", "x6"])

    def test_weight_count_checked(self):
        with pytest.raises(ValueError):
            EffectSpecEntry(group=["x1", "x2"], weights=[1.0])

    def test_delta_needs_two_members(self):
        with pytest.raises(ValueError, match="two members"):
            EffectSpecEntry(group=["x5"], weights="avg", delta=0.05)


class TestLoaders:
    """Files and payloads; every failure is InvalidSpec"""

    def test_bare_effect_list(self):
        spec = parse_effect_specs([{"group": ["x1", "x2"], "weights": "avg"}])
        assert spec.groups is None
        assert len(spec.effects) == 1

    def test_effects_with_groups(self):
        spec = parse_effect_specs({"groups": [["x1", "x3"]], "effects": [{"group": ["x1", "x3"]}]})
        assert spec.groups == [["x1", "x3"]]

    def test_empty_effects(self):
        with pytest.raises(InvalidSpec):
            parse_effect_specs({"effects": []})

    def test_invalid_entry(self):
        with pytest.raises(InvalidSpec):
            parse_effect_specs([{"group": ["x1"], "weights": "median"}])

    def test_bare_point_vectors(self):
        points = parse_points([[1, 2], [3, 4]])
        assert points.as_pairs() == [("x1", (1.0, 2.0)), ("x2", (3.0, 4.0))]

    def test_labelled_points(self):
        points = parse_points({"points": [{"label": "centre", "values": [0, 0]}]})
        assert points.as_pairs() == [("centre", (0.0, 0.0))]

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidSpec, match="not found"):
            load_effect_specs(tmp_path / "absent.json")

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(InvalidSpec, match="not valid JSON"):
            load_points(path)

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"effects": [{"label": "c", "columns": ["x5", "x6"], "weights": [0.5, -0.5]}]}))
        entry = load_effect_specs(path).effects[0]
        assert entry.columns == ["x5", "x6"]
        assert entry.weights == [0.5, -0.5]
