import pytest

from k3mirror.suites import ModelContext


@pytest.fixture(scope="session")
def contexts():
    """Per-model cached contexts at the default working order."""
    return {label: ModelContext(label, order=10, qmax=30) for label in ("E6", "E7", "E8")}
