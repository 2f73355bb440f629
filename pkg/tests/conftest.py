import functools
import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from stautilt.algebra import (
    brauer_line,
    brauer_star,
    brauer_tree_algebra,
    condense_basic,
    linear_quiver,
    truncated_polynomial,
)
from stautilt.exactla import GF
from stautilt.grouprep import dihedral, kG, symmetric

settings.register_profile("suite", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60)
settings.load_profile("suite")

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
sys.path.insert(0, os.path.dirname(__file__))


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


@functools.cache
def field(p: int, m: int = 1) -> GF:
    return GF(p, m)


@functools.cache
def trunc(p: int, m: int):
    return truncated_polynomial(field(p), m)


@functools.cache
def a2(p: int = 3):
    return linear_quiver(field(p), 2)


@functools.cache
def a3(p: int = 3):
    return linear_quiver(field(p), 3)


@functools.cache
def line(e: int, mult: int = 1, p: int = 3):
    return brauer_tree_algebra(brauer_line(e, mult), field(p))


@functools.cache
def star(e: int, mult: int = 1, p: int = 3):
    return brauer_tree_algebra(brauer_star(e, mult), field(p))


@functools.cache
def group_alg(name: str, n: int, p: int, m: int = 1):
    G = {"S": symmetric, "D": dihedral}[name](n)
    return kG(G, field(p, m))


@functools.cache
def basic_dihedral(n: int, p: int):
    """Basic algebra of kD_n in characteristic p (D_n of order 2n)."""
    return condense_basic(group_alg("D", n, p)).basic


@pytest.fixture
def rng():
    return np.random.default_rng(20250)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
