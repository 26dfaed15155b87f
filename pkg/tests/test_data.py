"""Tests for CSV ingestion and the standardized model transforms"""
import numpy as np
import pytest

from app.exceptions import (
    DimensionMismatch,
    DuplicateName,
    EmptyDataset,
    InputError,
    MissingColumn,
    ParseError,
    ZeroVariance,
)
from app.models import Dataset
from app.services import data


def write_csv(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadCsv:

    def test_reads_header_and_rows(self, tmp_path):
        path = write_csv(tmp_path, "y,a,b\n1,2,3\n4,5,6\n7,8,10\n")
        d = data.load_csv(path)
        assert d.predictor_names == ("a", "b")
        assert d.n == 3
        np.testing.assert_array_equal(d.y, [1.0, 4.0, 7.0])
        np.testing.assert_array_equal(d.column("b"), [3.0, 6.0, 10.0])

    def test_response_column_need_not_be_first(self, tmp_path):
        path = write_csv(tmp_path, "a,resp,b\n1,10,2\n2,20,5\n")
        d = data.load_csv(path, response_column="resp")
        assert d.response_name == "resp"
        assert d.predictor_names == ("a", "b")
        np.testing.assert_array_equal(d.y, [10.0, 20.0])

    def test_blank_lines_are_skipped(self, tmp_path):
        path = write_csv(tmp_path, "y,a\n1,2\n\n3,4\n")
        assert data.load_csv(path).n == 2

    def test_non_numeric_cell_reports_file_line(self, tmp_path):
        path = write_csv(tmp_path, "y,a,b\n1,2,3\n4,abc,6\n")
        with pytest.raises(ParseError) as exc:
            data.load_csv(path)
        assert exc.value.row == 3
        assert exc.value.col == "a"

    def test_blank_cell_is_a_parse_error(self, tmp_path):
        path = write_csv(tmp_path, "y,a\n1,\n2,3\n")
        with pytest.raises(ParseError):
            data.load_csv(path)

    def test_missing_response(self, tmp_path):
        path = write_csv(tmp_path, "a,b\n1,2\n")
        with pytest.raises(MissingColumn):
            data.load_csv(path)

    def test_duplicate_header(self, tmp_path):
        path = write_csv(tmp_path, "y,a,a\n1,2,3\n")
        with pytest.raises(DuplicateName):
            data.load_csv(path)

    def test_header_only(self, tmp_path):
        path = write_csv(tmp_path, "y,a\n")
        with pytest.raises(EmptyDataset):
            data.load_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            data.load_csv(tmp_path / "nope.csv")

    def test_frame_round_trip_keeps_order(self, hald):
        frame = data.to_frame(hald)
        assert list(frame.columns) == ["y", "x1", "x2", "x3", "x4"]
        back = data.load_frame(frame)
        np.testing.assert_array_equal(back.X, hald.X)


class TestDataset:

    def test_arrays_are_read_only(self, hald):
        with pytest.raises(ValueError):
            hald.X[0, 0] = 1.0

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            Dataset(predictor_names=("a",), X=[[1.0], [2.0]], y=[1.0])

    def test_subset_reorders(self, hald):
        sub = hald.subset(["x3", "x1"])
        np.testing.assert_array_equal(sub.X[:, 0], hald.column("x3"))

    def test_with_signs_flips_columns(self, hald):
        flipped = hald.with_signs([1, -1, 1, -1])
        np.testing.assert_array_equal(flipped.column("x2"), -hald.column("x2"))

    def test_renamed_hald_is_a_relabelled_augmented_hald(self, hald, hald_aug):
        # renaming: x2 <- -x3, x3 <- x2, x4 <- -x4
        relabelled = hald_aug.subset(["x1", "x3", "x2", "x4"]).with_signs([1, -1, 1, -1])
        np.testing.assert_array_equal(relabelled.X, hald.X)
        np.testing.assert_array_equal(relabelled.y, hald.y)

    def test_with_response_keeps_predictors(self, hald):
        other = hald.with_response(np.arange(hald.n, dtype=float))
        np.testing.assert_array_equal(other.X, hald.X)
        assert other.y[-1] == hald.n - 1

    def test_unknown_column(self, hald):
        with pytest.raises(MissingColumn):
            hald.column("x9")


class TestStandardize:
    """Length-one scaling"""

    def test_unit_length_zero_mean(self, hald):
        std, info = data.standardize(hald)
        np.testing.assert_allclose(std.X.mean(axis=0), 0.0, atol=1e-12)
        np.testing.assert_allclose(np.sum(std.X ** 2, axis=0), 1.0, rtol=1e-12)
        assert std.y.mean() == pytest.approx(0.0, abs=1e-12)
        assert info.response_mean == pytest.approx(95.42308, abs=1e-5)

    def test_gram_is_correlation(self, hald):
        std, _ = data.standardize(hald)
        np.testing.assert_allclose(std.X.T @ std.X, np.corrcoef(hald.X, rowvar=False), atol=1e-12)

    def test_constant_column(self):
        d = Dataset(predictor_names=("a", "b"), X=[[1, 5], [2, 5], [3, 5]], y=[1, 2, 3])
        with pytest.raises(ZeroVariance, match="b"):
            data.scaling_info(d)

    def test_back_transform(self, hald):
        _, info = data.standardize(hald)
        std_coefs = np.array([0.5, -0.2, 0.1, 0.3])
        coefs = data.back_transform(std_coefs, info)
        np.testing.assert_allclose(coefs[1:], std_coefs / info.scales)
        assert coefs[0] == pytest.approx(info.response_mean - np.dot(info.means, coefs[1:]))

    def test_back_transform_length(self, hald):
        _, info = data.standardize(hald)
        with pytest.raises(DimensionMismatch):
            data.back_transform([1.0, 2.0], info)

    def test_standardize_point_of_mean_is_zero(self, hald):
        _, info = data.standardize(hald)
        np.testing.assert_allclose(data.standardize_point(info.means, info), 0.0, atol=1e-12)

    def test_unstandardize_inverts_standardize(self, hald):
        _, info = data.standardize(hald)
        point = np.array([7.46153, -11.76923, 48.15385, -30.0])
        np.testing.assert_allclose(data.unstandardize_point(data.standardize_point(point, info), info), point)
        with pytest.raises(DimensionMismatch):
            data.unstandardize_point([0.0, 0.0], info)
