"""
Graded coalition formulas over neighborhood models
==================================================

"""

import random

from mveff import Chain, eval_formula, eval_vector, is_valid, parse
from mveff.corpus import random_playable_model
from mveff.models import b_family, check_axiom_schema, pn_axioms

chain = Chain(2)
rng = random.Random(7)
M = random_playable_model(rng, chain, 3)

# [C]phi reads "coalition C can enforce phi to the degree shown"
phi = parse("[{1}](p1 (+) p2) -> [N]p1", 2)
print("formula:", phi)
print("values: ", eval_vector(M, phi))
print("at s0:  ", eval_formula(M, "s0", phi))

# validity on a model quantifies over all valuations of the propositions
holds, witness = is_valid(M, parse("[{}]p1 -> p1", 2))
print("[{}]p1 -> p1 valid here:", holds, " witness:", witness)

# the axiom schemata hold on every playable model
for name, schema in pn_axioms(2, chain) + b_family(2, chain):
    ok, w = check_axiom_schema(M, schema)
    assert ok, (name, w)
print("all axiom schemata valid on this model")
