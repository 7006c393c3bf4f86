import json
import random

import pytest

from mveff.chain import Chain
from mveff.corpus import random_game_form
from mveff.errors import BudgetExceeded, EmptyProfileSet
from mveff.formulas import Coalition
from mveff.games import (
    GameForm,
    boolean_effectivity,
    effectivity_table,
    from_social_choice,
    mv_effectivity,
)
from mveff.tables import enumerate_assessments


def _matching_pennies():
    # two players, two strategies, outcome decided by parity
    return GameForm(
        strategy_counts=(2, 2),
        outcomes=("s0", "s1"),
        outcome_map=(0, 1, 1, 0),
    )


def test_shape_validation():
    with pytest.raises(ValueError):
        GameForm((2,), ("a", "b"), (0, 1))
    with pytest.raises(ValueError):
        GameForm((2, 2), ("a", "b"), (0, 1, 0))
    with pytest.raises(ValueError):
        GameForm((2, 2), ("a", "b"), (0, 1, 0, 2))


def test_profiles_and_outcomes():
    g = _matching_pennies()
    assert g.num_profiles == 4
    assert list(g.profiles()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert g.outcome_of((1, 0)) == 1
    assert g.range_of_outcomes() == frozenset({0, 1})


def test_boolean_effectivity_matching_pennies():
    g = _matching_pennies()
    k = 2
    # neither player alone can force a single outcome
    for player in (1, 2):
        c = Coalition.of([player], k)
        assert not boolean_effectivity(g, c, {0})
        assert not boolean_effectivity(g, c, {1})
        assert boolean_effectivity(g, c, {0, 1})
    # the grand coalition forces anything in the range
    grand = Coalition.grand(k)
    assert boolean_effectivity(g, grand, {0})
    assert boolean_effectivity(g, grand, {1})
    # the empty coalition forces only supersets of the range
    empty = Coalition.empty(k)
    assert not boolean_effectivity(g, empty, {0})
    assert boolean_effectivity(g, empty, {0, 1})


def test_mv_effectivity_is_max_min():
    rng = random.Random(0)
    chain = Chain(3)
    for _ in range(20):
        g = random_game_form(rng, 2, 2)
        for mask in range(4):
            c = Coalition(mask, 2)
            for f in enumerate_assessments(3, 2):
                # brute-force the displayed max-min directly
                best = 0
                inside = [i for i in range(2) if mask >> i & 1]
                outside = [i for i in range(2) if not mask >> i & 1]
                import itertools

                for joint_in in itertools.product(
                    *(range(g.strategy_counts[i]) for i in inside)
                ):
                    worst = 3
                    for joint_out in itertools.product(
                        *(range(g.strategy_counts[i]) for i in outside)
                    ):
                        profile = [0, 0]
                        for i, s in zip(inside, joint_in):
                            profile[i] = s
                        for i, s in zip(outside, joint_out):
                            profile[i] = s
                        worst = min(worst, f[g.outcome_of(profile)])
                    best = max(best, worst)
                assert mv_effectivity(g, chain, c, f).num == best


def test_effectivity_table_matches_pointwise():
    rng = random.Random(1)
    chain = Chain(2)
    for _ in range(10):
        g = random_game_form(rng, 2, 3)
        E = effectivity_table(g, chain)
        for mask in range(4):
            c = Coalition(mask, 2)
            for fi, f in enumerate(enumerate_assessments(2, 3)):
                assert E.table[mask][fi] == mv_effectivity(g, chain, c, f).num


def test_empty_coalition_single_empty_joint_strategy():
    g = _matching_pennies()
    chain = Chain(2)
    empty = Coalition.empty(2)
    # E(emptyset, f) = min over all profiles of f(o(profile))
    assert mv_effectivity(g, chain, empty, (1, 2)).num == 1
    assert mv_effectivity(g, chain, empty, (2, 2)).num == 2


def test_cell_budget():
    g = _matching_pennies()
    with pytest.raises(BudgetExceeded):
        effectivity_table(g, Chain(2), cell_budget=10)


def test_document_round_trip():
    g = random_game_form(random.Random(2), 2, 2)
    doc = json.loads(g.to_json())
    assert doc["kind"] == "game-form"
    assert GameForm.from_doc(doc) == g


def test_from_social_choice():
    profiles = ["ab", "ba"]

    def correspondence(declared):
        # pick the top outcome of player 1's declared ranking
        return {declared[0][0]}

    g = from_social_choice(["a", "b"], profiles, correspondence)
    assert g.strategy_counts == (2, 2)
    assert g.outcomes == ("{}", "{a}", "{b}", "{a,b}")
    assert g.outcome_of((0, 1)) == g.outcomes.index("{a}")
    assert g.outcome_of((1, 0)) == g.outcomes.index("{b}")
    with pytest.raises(EmptyProfileSet):
        from_social_choice(["a"], [], correspondence)
