"""Shared fixtures: the committed sample projects, parsed and graphed."""

from __future__ import annotations

from pathlib import Path

import pytest

from refd.graph import build_graph
from refd.jsub import load_project

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def write_project(tmp_path: Path, files: dict[str, str]) -> Path:
    root = tmp_path / "proj"
    root.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        target = root / name
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    return root


def graph_of(source_root: Path):
    return build_graph(load_project(source_root))


@pytest.fixture(scope="session")
def move_method_project():
    return load_project(fixture_path("move_method_basic"))


@pytest.fixture()
def move_method_graph(move_method_project):
    return build_graph(move_method_project)


@pytest.fixture(scope="session")
def pull_up_project():
    return load_project(fixture_path("pull_up_salary"))


@pytest.fixture()
def pull_up_graph(pull_up_project):
    return build_graph(pull_up_project)


@pytest.fixture()
def override_graph():
    return graph_of(fixture_path("override_removal"))


@pytest.fixture()
def double_definition_graph():
    return graph_of(fixture_path("double_definition"))


@pytest.fixture()
def combine_graph():
    return graph_of(fixture_path("combine_tostring"))


@pytest.fixture()
def overload_graph():
    return graph_of(fixture_path("overload_widening"))


ALL_FIXTURE_DIRS = [
    "move_method_basic",
    "pull_up_salary",
    "override_removal",
    "double_definition",
    "combine_tostring",
    "overload_widening",
]


@pytest.fixture(params=ALL_FIXTURE_DIRS)
def each_fixture_graph(request):
    return graph_of(fixture_path(request.param))
