"""Resource caps and error surfaces."""

import pytest

from gl2lab.errors import ResourceLimit, check_cap, max_elems
from gl2lab.padic import get_context
from gl2lab.tree import enumerate_vertices


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("GL2LAB_MAX_ELEMS", "100")
    assert max_elems() == 100
    with pytest.raises(ResourceLimit):
        check_cap(101, "test enumeration")
    check_cap(100, "test enumeration")
    monkeypatch.delenv("GL2LAB_MAX_ELEMS")
    assert max_elems(500) == 500


def test_tree_enumeration_respects_cap(monkeypatch):
    ctx = get_context(2, 1, 8)
    monkeypatch.setenv("GL2LAB_MAX_ELEMS", "5")
    with pytest.raises(ResourceLimit):
        enumerate_vertices(ctx, 3)
    monkeypatch.delenv("GL2LAB_MAX_ELEMS")
    assert len(enumerate_vertices(ctx, 3)) == 22


def test_census_cap(monkeypatch):
    from gl2lab.curves import enumerate_curves
    with pytest.raises(ResourceLimit):
        enumerate_curves(17)          # default cap is q <= 16
