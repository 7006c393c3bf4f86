"""
From a game form to a graded effectivity table
==============================================

"""

from mveff import Chain, GameForm, check_playability, effectivity_table
from mveff.formulas import Coalition

# matching pennies as a bare game form: two players, two strategies each,
# outcome "win" when the choices agree
pennies = GameForm(
    strategy_counts=(2, 2),
    outcomes=("win", "lose"),
    outcome_map=(0, 1, 1, 0),
)

chain = Chain(2)
E = effectivity_table(pennies, chain)

# E(C, f) grades how strongly coalition C can force the assessment f.
# Assessments are tuples of chain values over the outcomes.
C1 = Coalition.of({1}, 2)
print("E({1}, win=1, lose=0)  =", E.value_num(C1.mask, (2, 0)))
print("E({1}, win=1/2, lose=1/2) =", E.value_num(C1.mask, (1, 1)))
print("E(N, win=1, lose=0)    =", E.value_num(Coalition.grand(2).mask, (2, 0)))

# tables coming from game forms are always truly playable
report = check_playability(E)
print("playable:", report.playable, " truly playable:", report.truly_playable)

# the JSON document round-trips through the CLI commands
#   mveff effectivity form.json --n 2   and   mveff check eff.json
print(E.to_json()[:120], "...")
