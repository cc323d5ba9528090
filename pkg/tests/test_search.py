import pytest

from gridmovie.errors import BudgetExhausted, EndpointMismatch, NetTurnMismatch, ObstructedByOtherArcs
from gridmovie.grid import GridDiagram
from gridmovie.moves import Commute, Destab, Stab, apply, planar_moves
from gridmovie.search import (
    IsotopyCertificate, SearchBudget, align_arcs, bfs_equivalent, search_isotopy,
    verify_certificate,
)

from conftest import (
    P_AFTER, P_BEFORE, R2_PAIR, TRANSFER, TRANSFER_BASE, TRANSFER_STAB, TREFOIL, UNKNOT,
)

LR_GRID = GridDiagram((0, 1, 3, 2), (1, 3, 2, 0))
RL_GRID = GridDiagram((1, 0, 2, 3), (2, 1, 3, 0))


def test_identical_diagrams():
    cert = bfs_equivalent(TREFOIL, TREFOIL)
    assert cert.moves == ()
    assert verify_certificate(cert)


def test_p_move_certificate():
    cert = bfs_equivalent(P_BEFORE, P_AFTER)
    assert cert.moves == (Commute("cols", 1),)
    assert verify_certificate(cert)


def test_invariant_screen():
    assert bfs_equivalent(UNKNOT, TREFOIL) is None
    assert search_isotopy(UNKNOT, TREFOIL) == {"status": "distinct", "reason": "crossings differ"}


def test_kinked_unknot_returns_to_unknot():
    b = apply(apply(UNKNOT, Stab("X", (0, 0), "NW")), Stab("O", (0, 2), "NW"))
    cert = bfs_equivalent(b, UNKNOT, SearchBudget(5, 4))
    assert len(cert.moves) == 2
    assert all(isinstance(m, Destab) for m in cert.moves)
    assert verify_certificate(cert)


def test_search_is_deterministic():
    b = apply(apply(UNKNOT, Stab("X", (0, 0), "NW")), Stab("O", (0, 2), "NW"))
    runs = {bfs_equivalent(UNKNOT, b, SearchBudget(5, 4)).moves for _ in range(3)}
    assert len(runs) == 1


def test_budget_exhaustion_and_states():
    b = apply(apply(UNKNOT, Stab("X", (0, 0), "NW")), Stab("O", (0, 2), "NW"))
    with pytest.raises(BudgetExhausted):
        bfs_equivalent(UNKNOT, b, SearchBudget(5, 1))
    with pytest.raises(BudgetExhausted):
        bfs_equivalent(UNKNOT, b, SearchBudget(5, 4, max_states=3))
    assert search_isotopy(UNKNOT, b, SearchBudget(5, 1))["status"] == "exhausted"


def test_index_bound_proves_absence():
    # same invariants, but no planar step stays within index 2
    mirror_unknot = GridDiagram((1, 0), (0, 1))
    assert bfs_equivalent(UNKNOT, mirror_unknot, SearchBudget(2, 6)) is None


def test_bad_budget():
    with pytest.raises(ValueError):
        SearchBudget(0, 3)


def test_certificate_with_bare_r2_fails():
    cert = IsotopyCertificate(R2_PAIR, apply(R2_PAIR, Commute("cols", 1)), (Commute("cols", 1),))
    v = verify_certificate(cert)
    assert not v and v.index == 0


def test_certificate_from_wrong_start_fails():
    cert = bfs_equivalent(P_BEFORE, P_AFTER)
    v = verify_certificate(IsotopyCertificate(P_AFTER, P_AFTER, cert.moves))
    assert not v and v.index == 1


def test_transfer_certificate_verifies():
    d = apply(TRANSFER_BASE, TRANSFER_STAB)
    cert = IsotopyCertificate(d, apply(d, TRANSFER), (TRANSFER,))
    assert verify_certificate(cert)


def test_planar_moves_respect_index_bound():
    assert planar_moves(UNKNOT, max_index=2) == []


# arc alignment -----------------------------------------------------------

def test_identical_arcs():
    assert align_arcs(UNKNOT, ((0, 0), (0, 1)), UNKNOT, ((0, 0), (0, 1))) == []


def test_straight_arc_against_kink():
    kinked = apply(UNKNOT, Stab("X", (0, 0), "NW"))
    moves = align_arcs(UNKNOT, ((0, 0), (0, 1)), kinked, ((2, 2), (1, 0)))
    assert moves == [Stab("X", (0, 0), "NW")]


def test_mismatched_turn_direction():
    moves = align_arcs(LR_GRID, ((0, 1), (2, 3)), RL_GRID, ((0, 1), (2, 3)))
    assert moves == [Stab("X", (0, 0), "SW"), Destab((2, 3), "SW")]


def test_net_turn_mismatch():
    with pytest.raises(NetTurnMismatch):
        align_arcs(UNKNOT, ((0, 0), (0, 1)), UNKNOT, ((0, 0), (1, 1)))


def test_endpoint_mismatch():
    with pytest.raises(EndpointMismatch):
        align_arcs(UNKNOT, ((0, 0), (0, 1)), UNKNOT, ((1, 1), (1, 0)))


def test_alignment_budget():
    with pytest.raises(ObstructedByOtherArcs):
        align_arcs(LR_GRID, ((0, 1), (2, 3)), RL_GRID, ((0, 1), (2, 3)), SearchBudget(5, 1))
