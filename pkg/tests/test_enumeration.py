"""Basis enumeration: oracle agreement, frozen counts, caps, determinism."""

import pytest

import oracles
from graphcoh.enumeration import (
    DEFAULT_CAP,
    enumerate_by_counts,
    enumerate_grading,
    enumerate_trivalent,
    resolve_cap,
)
from graphcoh.errors import BasisTooLarge
from graphcoh.graphs import SymmetryMode, grading, k4_graph, theta_graph

MODES = (SymmetryMode.LITERAL, SymmetryMode.EDGE_RENUMBERING)

# Small enough for the exhaustive oracle, large enough to be interesting.
ORACLE_CELLS = [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (4, 3), (4, 4), (4, 5)]


# ---------------------------------------------------------------------------
# Worked examples and frozen counts.
# ---------------------------------------------------------------------------


def test_order_one_is_exactly_the_theta_class():
    for mode in MODES:
        classes = enumerate_trivalent(1, connected=True, mode=mode)
        assert [cls.skeleton for cls in classes] == [theta_graph()]


def test_order_two_connected_counts():
    assert len(enumerate_trivalent(2, connected=True, mode=SymmetryMode.LITERAL)) == 75
    assert (
        len(enumerate_trivalent(2, connected=True, mode=SymmetryMode.EDGE_RENUMBERING))
        == 2
    )


def test_order_two_full_counts():
    assert len(enumerate_trivalent(2, connected=False, mode=SymmetryMode.LITERAL)) == 85
    assert (
        len(enumerate_trivalent(2, connected=False, mode=SymmetryMode.EDGE_RENUMBERING))
        == 3
    )


def test_order_two_edge_renumbering_classes_are_k4_and_the_ladder():
    classes = enumerate_trivalent(2, connected=True, mode=SymmetryMode.EDGE_RENUMBERING)
    skeletons = {cls.skeleton.edges for cls in classes}
    ladder = ((1, 2), (1, 2), (1, 3), (2, 4), (3, 4), (3, 4))
    assert skeletons == {k4_graph().edges, ladder}


def test_trivalent_subset_of_the_full_cell():
    full = {cls.skeleton for cls in enumerate_by_counts(4, 6, mode=SymmetryMode.LITERAL)}
    tri = {cls.skeleton for cls in enumerate_trivalent(2, connected=False)}
    assert tri <= full
    assert len(full) == 1831


# ---------------------------------------------------------------------------
# Exhaustive oracle agreement.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("cell", ORACLE_CELLS)
def test_cells_match_oracle(mode, cell):
    v, e = cell
    # The package's connected=False means "no restriction".
    all_expected = oracles.enumerate_classes(v, e, mode.value, connected=None)
    all_got = [cls.skeleton.edges for cls in enumerate_by_counts(v, e, mode=mode)]
    assert all_got == all_expected
    conn_expected = oracles.enumerate_classes(v, e, mode.value, connected=True)
    conn_got = [
        cls.skeleton.edges
        for cls in enumerate_by_counts(v, e, mode=mode, connected=True)
    ]
    assert conn_got == conn_expected


def test_trivalent_cell_matches_oracle_in_edge_renumbering_mode():
    expected = oracles.enumerate_classes(4, 6, "edge-renumbering", connected=None)
    got = [
        cls.skeleton.edges
        for cls in enumerate_by_counts(4, 6, mode=SymmetryMode.EDGE_RENUMBERING)
    ]
    assert got == expected


# ---------------------------------------------------------------------------
# Structural guarantees.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("mode", MODES)
def test_results_are_sorted_canonical_nonvanishing(mode):
    classes = enumerate_by_counts(4, 5, mode=mode)
    assert classes == sorted(classes, key=lambda c: c.sort_key())
    for cls in classes:
        assert cls.sign_state == 1
        assert not cls.is_zero
        assert grading(cls.skeleton) == (1, -2)


def test_enumerate_grading_translates_the_cell():
    for mode in MODES:
        by_grading = enumerate_grading(2, 0, mode=mode)
        by_counts = enumerate_by_counts(4, 6, mode=mode)
        assert by_grading == by_counts


def test_degenerate_cells_are_empty():
    assert enumerate_by_counts(4, 1) == []
    assert enumerate_grading(1, 1) == []  # forces one vertex, two edges: loops
    assert enumerate_trivalent(0) == []
    assert enumerate_by_counts(4, 6, trivalent=True, mode=SymmetryMode.LITERAL) != []
    assert enumerate_by_counts(4, 5, trivalent=True) == []


def test_determinism():
    a = enumerate_trivalent(2, connected=True)
    b = enumerate_trivalent(2, connected=True)
    assert a == b


# ---------------------------------------------------------------------------
# Caps.
# ---------------------------------------------------------------------------


def test_huge_universe_is_rejected_up_front():
    with pytest.raises(BasisTooLarge):
        enumerate_by_counts(4, 6, mode=SymmetryMode.LITERAL, cap=1)


def test_class_count_above_cap_is_rejected():
    with pytest.raises(BasisTooLarge):
        enumerate_trivalent(2, connected=True, mode=SymmetryMode.LITERAL, cap=50)


def test_resolve_cap_precedence(monkeypatch):
    monkeypatch.delenv("GRAPHCOH_CAP", raising=False)
    assert resolve_cap() == DEFAULT_CAP
    monkeypatch.setenv("GRAPHCOH_CAP", "123")
    assert resolve_cap() == 123
    assert resolve_cap(77) == 77
    with pytest.raises(ValueError):
        resolve_cap(0)
