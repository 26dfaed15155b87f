"""
Integration tests for the full analysis pipeline

Tests cover:
- Fit, group detection, selection, effects and prediction on one dataset
- CSV ingestion feeding the same pipeline
- Metrics tracking across the pipeline
"""
import numpy as np
import pytest

from app.fixtures import HALD_AUGMENTED_EFFECTS, HALD_EFFECTS, HALD_POINTS
from app.models import SelectionMethod
from app.services import analysis, metrics
from app.services.data import load_csv, to_frame


@pytest.mark.integration
class TestHaldPipeline:
    """Renamed Hald data end to end"""

    def test_report_sections(self, hald):
        assert [s.name for s in analysis.run_fit(hald).sections] == ["coefficients", "summary", "residuals", "vif"]
        assert [s.name for s in analysis.run_groups(hald).sections] == ["correlation", "groups"]
        assert [s.name for s in analysis.run_effects(hald, HALD_EFFECTS).sections] == ["effects", "summary"]

    def test_effects_and_predictions_agree_on_groups(self, hald):
        effects = analysis.run_effects(hald, HALD_EFFECTS)
        members = effects.column("effects", "members")
        assert set(members) == {"{x1, x2}", "{x3, x4}"}
        predictions = analysis.run_predict(hald, HALD_POINTS)
        spreads = predictions.column("predictions", "spreads")
        assert all(set(s) == {"{x1, x2}", "{x3, x4}"} for s in spreads)

    def test_residual_summary(self, hald):
        values = analysis.run_fit(hald).section("residuals").values
        assert values["min"] <= values["q1"] <= values["median"] <= values["q3"] <= values["max"]

    def test_selection_respects_groups(self, hald):
        doc = analysis.run_select(hald, method=SelectionMethod.ALL_SUBSETS)
        assert all(doc.column("candidates", "group_based"))
        assert doc.section("chosen").values["candidates"] == 3


@pytest.mark.integration
class TestAugmentedPipeline:

    def test_sign_flipped_effects(self, hald_aug):
        doc = analysis.run_effects(hald_aug, HALD_AUGMENTED_EFFECTS)
        raw = dict(zip(doc.column("effects", "label"), doc.column("effects", "raw_weights")))
        assert raw["avg{x1,x3}"] == (0.5, -0.5)
        assert raw["beta5"] == (1.0,)

    def test_csv_round_trip(self, hald_aug, tmp_path):
        path = tmp_path / "hald.csv"
        to_frame(hald_aug).to_csv(path, index=False, float_format="%.10g")
        loaded = load_csv(path)
        np.testing.assert_allclose(loaded.X, hald_aug.X)
        a = analysis.run_fit(hald_aug).column("coefficients", "estimate")
        b = analysis.run_fit(loaded).column("coefficients", "estimate")
        np.testing.assert_allclose(a, b, rtol=1e-9)


@pytest.mark.integration
def test_pipeline_updates_metrics(hald):
    before = metrics.fits_total.labels(intercept="true")._value.get()
    analysis.run_select(hald, method=SelectionMethod.BACKWARD)
    assert metrics.fits_total.labels(intercept="true")._value.get() > before
