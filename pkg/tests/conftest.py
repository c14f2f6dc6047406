import pytest

from symparikh.errors import SolverError
from symparikh.solver import resolve_solver


def pytest_collection_modifyitems(config, items):
    try:
        resolve_solver()
    except SolverError as exc:
        skip = pytest.mark.skip(reason=str(exc))
        for item in items:
            if "needs_solver" in item.keywords or "slow" in item.keywords:
                item.add_marker(skip)
