"""Shared fixtures: canonical parameter pools and showcase groups.

The pools are built once per session from the same enumerator the CLI scan
uses, so property tests draw from exactly the tuples the tool accepts.
"""

from __future__ import annotations

import pytest

from metasum.cli import valid_tuples
from metasum.core import MetacyclicParams, validate


@pytest.fixture(scope="session")
def pool_48() -> tuple[MetacyclicParams, ...]:
    """Every valid parameter tuple with group order at most 48."""
    return valid_tuples(48)


@pytest.fixture(scope="session")
def pool_100() -> tuple[MetacyclicParams, ...]:
    """Every valid parameter tuple with group order at most 100."""
    return valid_tuples(100)


@pytest.fixture(scope="session")
def pool_200() -> tuple[MetacyclicParams, ...]:
    """Every valid parameter tuple with group order at most 200."""
    return valid_tuples(200)


# Small named groups used as frozen-value anchors throughout the suite.


@pytest.fixture()
def s3() -> MetacyclicParams:
    """Symmetric group on three letters: split extension C3 by C2."""
    return validate(3, 2, 0, 2)


@pytest.fixture()
def q8() -> MetacyclicParams:
    """Quaternion group of order 8."""
    return validate(4, 2, 2, 3)


@pytest.fixture()
def q12() -> MetacyclicParams:
    """Dicyclic group of order 12."""
    return validate(6, 2, 3, 5)


@pytest.fixture()
def negative_control() -> MetacyclicParams:
    """Order-16 group whose generator family is regular but not independent."""
    return validate(8, 2, 2, 5)
