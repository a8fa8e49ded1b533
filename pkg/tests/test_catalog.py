"""Builtin game catalog: shapes, constraints, and defining properties."""

import pytest

from nfgkit.catalog import (
    battle_of_sexes,
    builtin_game,
    builtin_names,
    matching_pennies,
    prisoners_dilemma,
    public_goods,
    random_game,
    rock_paper_scissors,
    zero_sum,
)
from nfgkit.model import GameError, payoff
from nfgkit.solvers import enumerate_pure_nash, is_best_strategy


def test_prisoners_dilemma_defaults():
    g = prisoners_dilemma()
    # row payoffs [[R,S],[T,P]] = [[3,0],[5,1]] in (C,D) order
    assert [payoff(g, 1, p) for p in g.profiles()] == [3, 0, 5, 1]
    assert [payoff(g, 2, p) for p in g.profiles()] == [3, 5, 0, 1]
    assert g.labels == (("C", "D"), ("C", "D"))


def test_prisoners_dilemma_rejects_bad_ordering():
    with pytest.raises(GameError):
        prisoners_dilemma(T=1, R=5, P=1, S=0)
    with pytest.raises(GameError):
        prisoners_dilemma(T=5, R=3, P=3, S=0)


def test_prisoners_dilemma_defection_dominates():
    g = prisoners_dilemma()
    assert is_best_strategy(g, 1, 2)
    assert is_best_strategy(g, 2, 2)
    assert not is_best_strategy(g, 1, 1)


def test_matching_pennies_is_zero_sum():
    g = matching_pennies()
    for profile in g.profiles():
        assert payoff(g, 1, profile) + payoff(g, 2, profile) == 0.0
    assert payoff(g, 1, (1, 1)) == 1.0


def test_rock_paper_scissors_structure():
    g = rock_paper_scissors()
    assert g.strategy_counts == (3, 3)
    for profile in g.profiles():
        assert payoff(g, 1, profile) + payoff(g, 2, profile) == 0.0
    assert payoff(g, 1, (1, 1)) == 0.0  # rock ties rock
    assert payoff(g, 1, (1, 3)) == 1.0  # rock beats scissors
    assert payoff(g, 1, (1, 2)) == -1.0  # rock loses to paper
    assert enumerate_pure_nash(g) == []


def test_battle_of_sexes_tables():
    g = battle_of_sexes()
    assert [payoff(g, 1, p) for p in g.profiles()] == [2, 0, 0, 1]
    assert [payoff(g, 2, p) for p in g.profiles()] == [1, 0, 0, 2]
    assert enumerate_pure_nash(g) == [(1, 1), (2, 2)]


def test_public_goods_payoff_formula():
    g = public_goods(players=3, rate=0.6, cost=1.0)
    # strategy 1 = contribute; payoff_i = rate * contributions - own cost
    for profile in g.profiles():
        contributions = sum(1 for s in profile if s == 1)
        for i in range(1, 4):
            own = 1.0 if profile[i - 1] == 1 else 0.0
            expected = 0.6 * contributions - own
            assert payoff(g, i, profile) == expected


def test_public_goods_all_defect_is_unique_pure_nash():
    g = public_goods()
    assert enumerate_pure_nash(g) == [(2, 2, 2)]


def test_public_goods_constraint_violations():
    with pytest.raises(GameError):
        public_goods(players=3, rate=1.2, cost=1.0)  # rate >= cost
    with pytest.raises(GameError):
        public_goods(players=2, rate=0.4, cost=1.0)  # cost >= players * rate


def test_zero_sum_builder():
    g = zero_sum([[3, 1], [0, 2]])
    assert payoff(g, 1, (1, 1)) == 3.0
    assert payoff(g, 2, (1, 1)) == -3.0
    with pytest.raises(GameError):
        zero_sum([[1, 2], [3]])


def test_random_game_deterministic_and_bounded():
    a = random_game(2, [3, 3], seed=42)
    b = random_game(2, [3, 3], seed=42)
    assert a.payoffs == b.payoffs
    c = random_game(2, [3, 3], seed=43)
    assert a.payoffs != c.payoffs
    for table in a.payoffs:
        assert all(-1.0 <= v < 1.0 for v in table)


def test_builtin_game_dispatch():
    assert builtin_game("prisoners_dilemma") == prisoners_dilemma()
    g = builtin_game("prisoners_dilemma", {"T": 10})
    assert payoff(g, 1, (2, 1)) == 10.0
    assert builtin_game("random", {"players": 2, "sizes": [2, 2], "seed": 1}).payoffs


def test_builtin_game_errors():
    with pytest.raises(GameError, match="unknown builtin"):
        builtin_game("nope")
    with pytest.raises(GameError, match="prisoners_dilemma"):
        builtin_game("prisoners_dilemma", {"bogus": 1})


def test_builtin_names_sorted_and_complete():
    names = builtin_names()
    assert names == sorted(names)
    assert {"prisoners_dilemma", "matching_pennies", "public_goods", "random"} <= set(
        names
    )
