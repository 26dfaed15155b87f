"""Tests for least squares fitting, VIFs and nested F tests"""
import numpy as np
import pytest

from app.exceptions import InsufficientRows, MissingColumn, NotNested, SingularDesign
from app.models import Dataset
from app.models.fit import INTERCEPT
from app.services import ols


class TestHaldFit:
    """Reference values for the Hald cement regression"""

    def test_coefficients(self, hald):
        f = ols.fit(hald)
        np.testing.assert_allclose(
            f.coefficients, [62.4054, 1.5511, -0.1019, 0.5102, 0.1441], atol=1e-4
        )
        assert f.term_names == (INTERCEPT, "x1", "x2", "x3", "x4")

    def test_summary_statistics(self, hald):
        f = ols.fit(hald)
        assert f.df_residual == 8
        assert f.sigma_hat == pytest.approx(2.446, abs=1e-3)
        assert f.r2 == pytest.approx(0.9824, abs=1e-4)
        assert f.adj_r2 == pytest.approx(0.9736, abs=1e-4)
        assert f.f_stat == pytest.approx(111.5, abs=0.1)
        assert f.f_p == pytest.approx(4.756e-07, rel=1e-3)

    def test_sums_of_squares_add_up(self, hald):
        f = ols.fit(hald)
        assert f.ess + f.rss == pytest.approx(f.tss, rel=1e-10)

    def test_residuals_orthogonal_to_design(self, hald):
        f = ols.fit(hald)
        np.testing.assert_allclose(hald.X.T @ f.residuals, 0.0, atol=1e-8)
        assert f.residuals.sum() == pytest.approx(0.0, abs=1e-8)

    def test_augmented_fit(self, hald_aug):
        f = ols.fit(hald_aug)
        assert f.df_residual == 7
        assert f.sigma_hat == pytest.approx(2.554, abs=1e-3)

    def test_column_subset(self, hald):
        f = ols.fit(hald, ["x1", "x3"])
        assert f.column_ids == ("x1", "x3")
        assert f.p == 3
        assert f.df_residual == 10

    def test_unknown_column(self, hald):
        with pytest.raises(MissingColumn):
            ols.fit(hald, ["x1", "x7"])


class TestCoefTests:

    def test_t_is_estimate_over_se(self, hald):
        rows = ols.coef_tests(ols.fit(hald))
        assert [r.term for r in rows] == [INTERCEPT, "x1", "x2", "x3", "x4"]
        for r in rows:
            assert r.t == pytest.approx(r.estimate / r.se, rel=1e-12)
            assert 0.0 <= r.p <= 1.0
            assert r.ci_low < r.estimate < r.ci_high

    def test_individual_slopes_are_not_significant(self, hald):
        # the classic symptom: a strong overall fit with weak individual terms
        rows = {r.term: r for r in ols.coef_tests(ols.fit(hald))}
        assert rows["x1"].p < 0.1
        assert all(rows[name].p > 0.3 for name in ("x2", "x3", "x4"))


class TestNoIntercept:
    """Sums of squares about zero"""

    def test_uncentered_total(self):
        d = Dataset(predictor_names=("a",), X=[[1.0], [2.0], [3.0], [4.0]], y=[1.1, 1.9, 3.2, 3.9])
        f = ols.fit(d, intercept=False)
        assert f.term_names == ("a",)
        assert f.df_residual == 3
        assert f.tss == pytest.approx(float(np.sum(d.y ** 2)))
        assert f.adj_r2 == pytest.approx(1 - (1 - f.r2) * 4 / 3)

    def test_exact_fit(self):
        d = Dataset(predictor_names=("a",), X=[[1.0], [2.0], [3.0]], y=[2.0, 4.0, 6.0])
        f = ols.fit(d, intercept=False)
        assert f.rss == pytest.approx(0.0, abs=1e-20)
        assert f.r2 == 1.0


class TestFailures:

    def test_singular_design(self):
        d = Dataset(
            predictor_names=("a", "b"),
            X=[[1.0, 2.0], [2.0, 4.0], [3.0, 6.0], [4.0, 8.0]],
            y=[1.0, 2.0, 2.5, 4.0],
        )
        with pytest.raises(SingularDesign) as exc:
            ols.fit(d)
        assert exc.value.columns == ("a", "b")
        assert exc.value.exit_code == 3

    def test_too_few_rows(self):
        d = Dataset(predictor_names=("a", "b"), X=[[1.0, 2.0], [2.0, 1.0], [3.0, 5.0]], y=[1.0, 2.0, 3.0])
        with pytest.raises(InsufficientRows):
            ols.fit(d)


class TestVif:

    def test_augmented_hald_reference(self, hald_aug):
        v = ols.vif(hald_aug)
        expected = {
            "x1": 38.813024, "x2": 255.921343, "x3": 46.925426,
            "x4": 283.268026, "x5": 1.330137,
        }
        for name, value in expected.items():
            assert v[name] == pytest.approx(value, rel=1e-6)

    def test_hald_renamed_reference(self, hald):
        v = ols.vif(hald)
        expected = {"x1": 38.49621, "x2": 46.86839, "x3": 254.42317, "x4": 282.51286}
        for name, value in expected.items():
            assert v[name] == pytest.approx(value, rel=1e-5)

    def test_lone_column(self, hald):
        assert ols.vif(hald, ["x2"]) == {"x2": 1.0}

    def test_perfect_collinearity_explodes(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal(10)
        b = rng.standard_normal(10)
        d = Dataset(predictor_names=("a", "b", "c"), X=np.column_stack([a, b, a + b]), y=rng.standard_normal(10))
        assert ols.vif(d)["c"] > 1e10


class TestPartialF:

    def test_dropping_one_column_matches_t_squared(self, hald):
        full = ols.fit(hald)
        reduced = ols.fit(hald, ["x1", "x2", "x3"])
        test = ols.partial_f_test(full, reduced)
        t = {r.term: r.t for r in ols.coef_tests(full)}["x4"]
        assert test.dropped == ("x4",)
        assert test.df_num == 1
        assert test.df_den == 8
        assert test.f == pytest.approx(t * t, rel=1e-8)

    def test_same_model(self, hald):
        f = ols.fit(hald)
        test = ols.partial_f_test(f, f)
        assert test.f == 0.0
        assert test.p == 1.0

    def test_not_nested(self, hald):
        with pytest.raises(NotNested):
            ols.partial_f_test(ols.fit(hald, ["x1", "x2"]), ols.fit(hald, ["x1", "x3"]))

    def test_intercept_mismatch(self, hald):
        with pytest.raises(NotNested):
            ols.partial_f_test(ols.fit(hald), ols.fit(hald, ["x1"], intercept=False))
