import pytest

from softclass import Context, validate_mapping, validate_soft_set


@pytest.fixture
def ctx1():
    return Context(["a", "b", "c"], ["e1", "e2", "e3", "e4"])


@pytest.fixture
def ctx2():
    return Context(["x", "y", "z"], ["e1p", "e2p", "e3p"])


@pytest.fixture
def m1(ctx1, ctx2):
    return validate_mapping(
        ctx1,
        ctx2,
        {"a": "y", "b": "z", "c": "y"},
        {"e1": "e3p", "e2": "e3p", "e3": "e2p", "e4": "e3p"},
    )


@pytest.fixture
def fa(ctx1):
    """(F, A) from the worked image example."""
    return validate_soft_set(ctx1, {"e2": [], "e3": ["a"], "e4": ["a", "b", "c"]})


@pytest.fixture
def gc(ctx2):
    """(G, C) from the worked inverse-image example."""
    return validate_soft_set(ctx2, {"e1p": ["x", "z"], "e2p": ["y"]})


@pytest.fixture
def pair(ctx1):
    """The pair used to show the intersection inclusion is strict."""
    f = validate_soft_set(ctx1, {"e1": ["c"], "e2": ["b", "c"], "e3": ["a", "b", "c"]})
    g = validate_soft_set(ctx1, {"e1": ["a"], "e2": ["a", "c"], "e3": ["b"], "e4": ["b", "c"]})
    return f, g


def pytest_terminal_summary(terminalreporter):
    results = [
        r for key in ("passed", "failed")
        for r in terminalreporter.stats.get(key, [])
        if r.when == "call" and "test_acceptance.py" in r.nodeid
    ]
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for r in sorted(results, key=lambda r: r.nodeid):
        name = r.nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if r.passed else 'FAIL'}  {name}")
