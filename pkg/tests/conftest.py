import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from amalgam.ideals import ideal_from_text  # noqa: E402
from amalgam.parser import parse_ideal, parse_ring_expr, resolve  # noqa: E402


def ring(text: str, **kwargs):
    return resolve(parse_ring_expr(text), **kwargs)


def ideal(R, text: str):
    return ideal_from_text(R, parse_ideal(text))


@pytest.fixture
def make_ring():
    return ring


@pytest.fixture
def make_ideal():
    return ideal


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        lines.append((number, f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f"  ({detail})" if detail else "")))

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
