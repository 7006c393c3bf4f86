"""
Theorem certificates and bounded countermodel search
====================================================

"""

import random

from mveff import Chain, parse, search_countermodel, soundness_suite
from mveff.corpus import random_playable_model
from mveff.decide import LOGIC_PN
from mveff.models import eval_vector

# superadditivity is a theorem: no playable model refutes it, and the
# state bound certifies this for all models, not just the searched ones
phi = parse("([{1}]p1 & [{2}]p2) -> [N](p1 & p2)", 2)
verdict = search_countermodel(phi, max_states=10 ** 9, chain=Chain(1))
print(phi, "->", verdict.status, " bound", verdict.bound)

# [{}]p -> p is not a theorem; the empty coalition's box is not reflexive
psi = parse("[{}]p1 -> p1", 2)
verdict = search_countermodel(psi, max_states=2, chain=Chain(1))
print(psi, "->", verdict.status)
print("countermodel states:", verdict.model.states, " refuted at", verdict.state)
print("values:", eval_vector(verdict.model, psi))

# soundness suite: axioms and rules over a seeded corpus
rng = random.Random(3)
models = [random_playable_model(rng, Chain(2), 2) for _ in range(20)]
report = soundness_suite(LOGIC_PN, models, Chain(2))
print("axioms checked:", len(report["axioms"]), " failures:", report["failures"])
