from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from extensia.syntax import compile_surface, parse_surface

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def compile_text(text: str, wadge: bool = False):
    return compile_surface(parse_surface(text), wadge_mode=wadge)


@pytest.fixture
def intro_program():
    return compile_text(fixture_text("intro.pl"))


@pytest.fixture
def wadge_program():
    return compile_text(fixture_text("wadge.pl"), wadge=True)


@pytest.fixture
def band_program():
    return compile_text(fixture_text("band.pl"))
