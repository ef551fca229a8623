"""Tests for the analysis pipeline orchestrator."""

import pytest

from equidist.errors import PrecisionExhausted
from equidist.harness import AnalysisPipeline
from equidist.sequences import SequenceSpec


class TestAnalysisPipeline:
    """Tests for AnalysisPipeline.process."""

    @pytest.fixture
    def pipeline(self, settings):
        return AnalysisPipeline(settings, threshold=0.05, h_max=3)

    def test_all_stages(self, pipeline, three_halves):
        result = pipeline.process(three_halves, 4096)
        assert result["sample"].n == 4096
        assert result["discrepancy"].n == 4096
        assert len(result["weyl"].entries) == 3
        assert result["passed"] is True

    def test_integer_beta_fails(self, pipeline):
        result = pipeline.process(SequenceSpec("1", "2"), 256)
        assert result["discrepancy"].d_star == 1.0
        assert result["passed"] is False

    def test_golden_ratio_fails(self, pipeline, golden):
        """{phi^n} tends to 0 and 1, so the sample is far from uniform."""
        result = pipeline.process(golden, 500)
        assert result["passed"] is False

    def test_disabled_stages(self, settings, three_halves):
        pipeline = AnalysisPipeline(settings, enable_discrepancy=False, enable_weyl=False)
        result = pipeline.process(three_halves, 100)
        assert result["discrepancy"] is None
        assert result["weyl"] is None
        assert result["passed"] is None

    def test_default_h_max(self, settings):
        assert AnalysisPipeline(settings).h_max == settings.default_h_max

    def test_checkpoints(self, settings, three_halves):
        pipeline = AnalysisPipeline(settings, h_max=1, checkpoints=[100, 200])
        assert pipeline.process(three_halves, 200)["weyl"].checkpoints == [100, 200]

    def test_precision_exhausted_propagates(self, settings, golden):
        pipeline = AnalysisPipeline(settings.model_copy(update={"precision_cap_bits": 128}))
        with pytest.raises(PrecisionExhausted):
            pipeline.process(golden, 1000)
