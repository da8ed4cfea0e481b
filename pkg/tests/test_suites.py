import pytest

from ccakit.catalog import CATALOG, catalog_group, random_connected_graphs
from ccakit.suites import SUITES, Check, run_suite


def _ok(checks):
    bad = [c.line() for c in checks if not c.passed]
    assert not bad, bad
    return checks


def test_suite_names():
    assert SUITES == ("lemmas", "classif", "decomposition", "d12", "normal-search")
    with pytest.raises(ValueError):
        run_suite("nope")


def test_check_line():
    assert Check("x", True).line() == "[PASS] x"
    assert Check("y", False, "why").line() == "[FAIL] y: why"


def test_small_suites_pass():
    _ok(run_suite("lemmas", max_order=8, random_order=8, random_count=4))
    _ok(run_suite("classif", max_order=16))
    _ok(run_suite("decomposition", max_order=8))
    _ok(run_suite("normal-search", max_order=8))


def test_log_lines_are_sorted():
    lines = []
    run_suite("classif", log=lines.append, max_order=8)
    body = lines[:-1]
    assert body == sorted(body)
    assert lines[-1].startswith("classif: ") and "passed in" in lines[-1]


@pytest.mark.parametrize("spec", [s for s in CATALOG if catalog_group(s).order <= 16])
def test_random_graphs_are_connected_and_distinct(spec):
    G = catalog_group(spec)
    graphs = random_connected_graphs(G, 20, seed=0)
    sets = [X.S for X in graphs]
    assert len(set(sets)) == len(sets) <= 20
    full = frozenset(G.elements) - {0}
    assert all(S != full for S in sets)
    assert [X.S for X in random_connected_graphs(G, 20, seed=0)] == sets
