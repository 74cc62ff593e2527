import pytest

from hpk.kan import KanConditionFailed, is_kan, kan_report, pi_n_kan
from hpk.sset import standard_complex


def test_point_is_kan_and_all_pi_trivial():
    pt = standard_complex("point", depth=4)
    assert is_kan(pt, 4)
    for n in (1, 2, 3):
        table = pi_n_kan(pt, "*", n)
        assert table.order == 1


def test_circle_is_not_kan():
    s1 = standard_complex("sphere", 1, depth=2)
    failures = kan_report(s1, 2)
    assert failures
    with pytest.raises(KanConditionFailed):
        pi_n_kan(s1, "*", 1)


def test_pi_needs_depth():
    pt = standard_complex("point", depth=2)
    from hpk.sset import InsufficientDepth

    with pytest.raises(InsufficientDepth):
        pi_n_kan(pt, "*", 2)


def test_pi_rejects_n_zero():
    pt = standard_complex("point", depth=2)
    with pytest.raises(ValueError):
        pi_n_kan(pt, "*", 0)
