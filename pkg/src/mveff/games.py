"""Finite strategic game forms and their effectivity functions.

A game form is players, per-player strategy counts, an ordered outcome set
and a total outcome map stored flat in row-major profile order (player 1
varies slowest).  Both the Boolean and the chain-valued effectivity of a
coalition are computed by exhaustive max-min enumeration over joint
strategies, which is the entire algorithmic content of the definition.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .chain import Chain, TruthValue
from .errors import BudgetExceeded, EmptyProfileSet
from .formulas import Coalition

DEFAULT_CELL_BUDGET = 1 << 20


@dataclass(frozen=True)
class GameForm:
    """An immutable finite game form."""

    strategy_counts: tuple[int, ...]
    outcomes: tuple[str, ...]
    outcome_map: tuple[int, ...]  # outcome index per profile, row-major

    def __post_init__(self):
        k = len(self.strategy_counts)
        if k < 2:
            raise ValueError("a game form needs at least 2 players")
        if len(self.outcomes) < 1:
            raise ValueError("a game form needs at least 1 outcome")
        if any(m < 1 for m in self.strategy_counts):
            raise ValueError("strategy sets must be nonempty")
        expected = int(np.prod(self.strategy_counts))
        if len(self.outcome_map) != expected:
            raise ValueError(
                f"outcome map has {len(self.outcome_map)} entries, expected {expected}"
            )
        if any(not 0 <= o < len(self.outcomes) for o in self.outcome_map):
            raise ValueError("outcome map points outside the outcome set")

    @property
    def k(self) -> int:
        return len(self.strategy_counts)

    @property
    def num_profiles(self) -> int:
        return len(self.outcome_map)

    def profiles(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.strategy_counts))

    def profile_index(self, profile: Sequence[int]) -> int:
        idx = 0
        for m, s in zip(self.strategy_counts, profile):
            idx = idx * m + s
        return idx

    def outcome_of(self, profile: Sequence[int]) -> int:
        return self.outcome_map[self.profile_index(profile)]

    def range_of_outcomes(self) -> frozenset[int]:
        return frozenset(self.outcome_map)

    def outcome_array(self) -> np.ndarray:
        """Outcome indices reshaped with one axis per player."""
        return np.asarray(self.outcome_map, dtype=np.int64).reshape(
            self.strategy_counts
        )

    # -- documents ----------------------------------------------------------

    def to_doc(self) -> dict:
        return {
            "kind": "game-form",
            "players": self.k,
            "strategies": list(self.strategy_counts),
            "outcomes": list(self.outcomes),
            "o": [self.outcomes[o] for o in self.outcome_map],
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "GameForm":
        if doc.get("kind", "game-form") != "game-form":
            raise ValueError(f"not a game-form document: kind={doc.get('kind')!r}")
        outcomes = tuple(doc["outcomes"])
        index = {name: i for i, name in enumerate(outcomes)}
        return cls(
            strategy_counts=tuple(doc["strategies"]),
            outcomes=outcomes,
            outcome_map=tuple(index[name] for name in doc["o"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), indent=2, sort_keys=True)


def _joint_strategies(form: GameForm, mask: int):
    """All joint strategies of the coalition given by the bitmask."""
    players = [i for i in range(form.k) if mask >> i & 1]
    return players, list(
        itertools.product(*(range(form.strategy_counts[i]) for i in players))
    )


def boolean_effectivity(form: GameForm, coalition: Coalition, target: Iterable[int]) -> bool:
    """Whether the coalition can force the outcome into the target set."""
    target = frozenset(target)
    inside, inside_joints = _joint_strategies(form, coalition.mask)
    outside, outside_joints = _joint_strategies(form, coalition.complement().mask)
    profile = [0] * form.k
    for joint_in in inside_joints:
        for i, s in zip(inside, joint_in):
            profile[i] = s
        forced = True
        for joint_out in outside_joints:
            for i, s in zip(outside, joint_out):
                profile[i] = s
            if form.outcome_of(profile) not in target:
                forced = False
                break
        if forced:
            return True
    return False


def mv_effectivity(
    form: GameForm, chain: Chain, coalition: Coalition, f: Sequence[int]
) -> TruthValue:
    """Exact max-min value of the coalition for the assessment f.

    f lists numerators over the outcome set.  For the empty coalition the
    outer max ranges over the single empty joint strategy; for the grand
    coalition the inner min does.
    """
    if len(f) != len(form.outcomes):
        raise ValueError("assessment length does not match the outcome set")
    inside, inside_joints = _joint_strategies(form, coalition.mask)
    outside, outside_joints = _joint_strategies(form, coalition.complement().mask)
    profile = [0] * form.k
    best = 0
    for joint_in in inside_joints:
        for i, s in zip(inside, joint_in):
            profile[i] = s
        worst = chain.n
        for joint_out in outside_joints:
            for i, s in zip(outside, joint_out):
                profile[i] = s
            worst = min(worst, f[form.outcome_of(profile)])
            if worst == 0:
                break
        best = max(best, worst)
        if best == chain.n:
            break
    return TruthValue(best, chain)


def effectivity_table(
    form: GameForm, chain: Chain, cell_budget: int = DEFAULT_CELL_BUDGET
):
    """Full chain-valued effectivity table of the game form.

    Evaluates every (coalition, assessment) cell by the max-min rule, done
    as vectorized axis reductions over the profile hypercube.
    """
    from .tables import EffFn, enumerate_assessments

    n = chain.n
    num_outcomes = len(form.outcomes)
    cells = (n + 1) ** num_outcomes * (1 << form.k)
    if cells > cell_budget:
        raise BudgetExceeded(f"{cells} table cells exceed budget {cell_budget}")

    assessments = np.asarray(list(enumerate_assessments(n, num_outcomes)), dtype=np.int64)
    outcome_cube = form.outcome_array()
    # value cube: one row per assessment, one axis per player
    values = assessments[:, outcome_cube.reshape(-1)].reshape(
        (len(assessments),) + outcome_cube.shape
    )
    table = []
    all_axes = range(1, form.k + 1)
    for mask in range(1 << form.k):
        out_axes = tuple(ax for ax in all_axes if not mask >> (ax - 1) & 1)
        reduced = values.min(axis=out_axes) if out_axes else values
        in_axes = tuple(range(1, reduced.ndim))
        reduced = reduced.max(axis=in_axes) if in_axes else reduced
        table.append([int(v) for v in reduced])
    return EffFn(chain=chain, k=form.k, outcomes=form.outcomes, table=table)


def from_social_choice(
    base_outcomes: Sequence[str],
    profiles: Sequence,
    correspondence,
    k: int = 2,
) -> GameForm:
    """Game form of a social choice correspondence.

    Every player's strategy set is the supplied list of preference profiles;
    the outcome set is the powerset of the base outcomes; the outcome map
    applies the correspondence to the declared profile tuple.
    """
    if not profiles:
        raise EmptyProfileSet("need at least one preference profile")
    subsets = []
    for size in range(len(base_outcomes) + 1):
        for combo in itertools.combinations(range(len(base_outcomes)), size):
            subsets.append(frozenset(base_outcomes[i] for i in combo))
    names = tuple(
        "{" + ",".join(sorted(s)) + "}" for s in subsets
    )
    index = {s: i for i, s in enumerate(subsets)}
    outcome_map = []
    for declared in itertools.product(profiles, repeat=k):
        chosen = frozenset(correspondence(declared))
        if chosen not in index:
            raise ValueError(f"correspondence returned a non-subset: {chosen!r}")
        outcome_map.append(index[chosen])
    return GameForm(
        strategy_counts=(len(profiles),) * k,
        outcomes=names,
        outcome_map=tuple(outcome_map),
    )
