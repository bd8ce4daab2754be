import logging

import pytest

from qep.core.config import get_settings
from qep.core.entropy import SystemContext


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def ctx2() -> SystemContext:
    return SystemContext.default(2)


@pytest.fixture
def ctx3() -> SystemContext:
    return SystemContext.default(3)


@pytest.fixture
def ctx4() -> SystemContext:
    return SystemContext.default(4)


@pytest.fixture
def ctx5() -> SystemContext:
    return SystemContext.default(5)


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    logger = logging.getLogger("qep")
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True
