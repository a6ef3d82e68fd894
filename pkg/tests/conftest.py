import sys
from functools import lru_cache

import pytest

from eqcartan.lie import preset
from eqcartan.weilmodel import build_tensor

ID3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@lru_cache(maxsize=None)
def tensor_for(name: str, module: str = "point", twist=None, cap: int = 6):
    spec = preset(name)
    if twist is not None:
        spec = spec.with_twist(twist)
    return build_tensor(spec, module, cap)


@pytest.fixture
def make_tensor():
    return tensor_for


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
