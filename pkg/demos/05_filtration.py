"""
Filtration: collapsing a model without changing truth
=====================================================

"""

import random

from mveff import (
    Chain,
    enriched_filtration,
    eval_vector,
    parse,
    playable_filtration,
    standardize,
)
from mveff.corpus import random_playable_model
from mveff.formulas import subformulas
from mveff.models import is_standard

chain = Chain(2)
rng = random.Random(11)
M = random_playable_model(rng, chain, 4)
mu = parse("[{1}]p1 -> (p2 (+) p2)", 2)

result = playable_filtration(M, mu)
q = result.quotient
print("states before:", M.num_states, " classes after:", q.num_classes)

# truth of every subformula of the generator transfers to the quotient
for phi in subformulas(mu):
    src = eval_vector(M, phi)
    dst = eval_vector(result.model, phi)
    assert all(dst[q.class_map[j]] == src[j] for j in range(M.num_states))
print("truth transfer verified on", len(subformulas(mu)), "subformulas")

# the enriched pipeline also carries the outcome modality's relation
S = standardize(M)
nu = parse("[O]p1 -> [{}]p1", 2, dialect="L+")
enriched = enriched_filtration(S, nu)
print("filtered model standard:", is_standard(enriched.model))
print("enriched classes:", enriched.quotient.num_classes)
