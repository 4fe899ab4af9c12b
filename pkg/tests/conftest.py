import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cyclopack.cyclotomic import CyclotomicContext

_CTX_CACHE: dict[int, CyclotomicContext] = {}


def get_ctx(m: int) -> CyclotomicContext:
    if m not in _CTX_CACHE:
        _CTX_CACHE[m] = CyclotomicContext(m)
    return _CTX_CACHE[m]


@pytest.fixture
def ctx4() -> CyclotomicContext:
    return get_ctx(4)


@pytest.fixture
def ctx3() -> CyclotomicContext:
    return get_ctx(3)


@pytest.fixture
def ctx12() -> CyclotomicContext:
    return get_ctx(12)
