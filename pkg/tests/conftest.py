import pytest

from pathlib import Path

from skysr.harness import load_dataset

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

ACCEPTANCE_RESULTS: list[tuple[str, bool]] = []


@pytest.fixture(scope="session")
def fixture_a():
    return load_dataset(DATA / "fixture-a")


@pytest.fixture(scope="session")
def fixture_b():
    return load_dataset(DATA / "fixture-b")


@pytest.fixture(scope="session")
def fixture_c():
    return load_dataset(DATA / "fixture-c")


def write_dataset(tmp: Path, nodes: str, edges: str, pois: str, cats: str) -> Path:
    """Drop a four-file dataset into ``tmp`` and return the directory."""
    tmp.mkdir(parents=True, exist_ok=True)
    (tmp / "nodes.txt").write_text(nodes)
    (tmp / "edges.txt").write_text(edges)
    (tmp / "pois.txt").write_text(pois)
    (tmp / "categories.txt").write_text(cats)
    return tmp


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}")
