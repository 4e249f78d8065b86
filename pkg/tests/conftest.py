"""Shared fixtures plus the acceptance-criteria reporting hook."""
from contextlib import contextmanager

_CRITERIA: dict[int, tuple[str, bool, str]] = {}


@contextmanager
def criterion(num: int, desc: str):
    """Record a one-line PASS/FAIL verdict for an acceptance criterion."""
    try:
        yield
    except BaseException as exc:
        _CRITERIA[num] = (desc, False, f"{type(exc).__name__}: {exc}")
        raise
    _CRITERIA[num] = (desc, True, "")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        desc, ok, detail = _CRITERIA[num]
        line = f"criterion {num} ({desc}): {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
