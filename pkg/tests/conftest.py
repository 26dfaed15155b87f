"""Test configuration and fixtures"""
import os
import sys

import pytest

# Set test environment variables BEFORE importing app
os.environ["COLLINEAR_SEED"] = "20180917"
os.environ["COLLINEAR_LOG_LEVEL"] = "WARNING"
os.environ["COLLINEAR_METRICS_TEXTFILE"] = ""
os.environ["COLLINEAR_DOCS_ENABLED"] = "true"

from loguru import logger  # noqa: E402

from app.fixtures import XD, hald_augmented, hald_renamed, sim_xd  # noqa: E402
from app.services import numerics  # noqa: E402
from app.services.groups import detect_groups, response_correlations  # noqa: E402


@pytest.fixture(autouse=True)
def reset_logging():
    """CLI runs swap stderr; point loguru back at the real one afterwards"""
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


@pytest.fixture
def hald():
    """Renamed Hald data: both correlated pairs already in APC arrangement"""
    return hald_renamed()


@pytest.fixture
def hald_aug():
    return hald_augmented()


@pytest.fixture
def xd_data():
    return sim_xd()


@pytest.fixture
def xd():
    return XD


@pytest.fixture
def hald_structure(hald):
    return detect_groups(numerics.correlation_matrix(hald.X), hald.predictor_names, 0.8, response_correlations(hald))


@pytest.fixture
def xd_structure(xd_data):
    return detect_groups(
        numerics.correlation_matrix(xd_data.X), xd_data.predictor_names, 0.8, response_correlations(xd_data)
    )


@pytest.fixture
def captured_logs():
    """Messages logged at WARNING or above while the test runs"""
    messages = []
    sink = logger.add(messages.append, level="WARNING", format="{message}")
    yield messages
    logger.remove(sink)
