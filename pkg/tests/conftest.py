import os

import pytest
from click.testing import CliRunner

import vlsfbec.util.log as log
from vlsfbec.channel import ChannelParams, trial_streams
from vlsfbec.codec import DecodingSchedule, EncoderSpec
from vlsfbec.types import Scheme

FIXTURES = f"{os.path.dirname(__file__)}/fixtures"


@pytest.fixture(autouse=True)
def reset_log_level():
    """Reset log level to ERROR after each test"""
    log.log_level = log.LogLevel.ERROR
    yield
    log.log_level = log.LogLevel.ERROR


@pytest.fixture(scope="function")
def fixture_path():
    """Resolve a file under tests/fixtures"""

    def _path(name: str) -> str:
        return f"{FIXTURES}/{name}"

    return _path


@pytest.fixture(scope="function")
def streams():
    """The streams of trial 0 under a fixed seed"""
    return trial_streams(1234, 0)


@pytest.fixture(scope="function")
def half_erasure():
    """BEC(0.5) with a fixed seed"""
    return ChannelParams(p=0.5, seed=99)


@pytest.fixture(scope="function")
def st_spec():
    """A three bit systematic encoder"""
    return EncoderSpec(k=3, scheme=Scheme.ST_RLFC)


@pytest.fixture(scope="function")
def unbounded():
    return DecodingSchedule.unbounded()


@pytest.fixture(scope="function")
def runner():
    """A click test runner working in a temporary directory"""
    return CliRunner()
