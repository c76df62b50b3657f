"""Shared fixtures for the horolab test-suite."""

import pytest

from horolab.sampling import stream_rng


@pytest.fixture
def rng(request):
    """Deterministic per-test generator keyed by the test's own id."""
    return stream_rng(20260822, request.node.name)
