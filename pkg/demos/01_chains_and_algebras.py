"""
Finite Lukasiewicz chains and MV-algebras
=========================================

"""

# values on the chain with n+1 elements are stored as integer numerators
from mveff import Chain, FiniteMVAlgebra, synthesize_tau_term

chain = Chain(4)
print("chain:", [str(chain.value(i)) for i in range(5)])

half = chain.value(2)
print("1/2 (+) 3/4 =", half.oplus(chain.value(3)))
print("1/2 (.) 3/4 =", half.odot(chain.value(3)))
print("1/2 -> 1/4  =", half.implies(chain.value(1)))

# the same chain viewed as an abstract algebra, with tables
alg = FiniteMVAlgebra.from_chain(chain)
print("odot via tables:", alg.odot(2, 3))

# threshold maps are compositions of the two doubling maps x(+)x and x(.)x;
# the synthesizer finds a shortest composition by breadth-first search
for i in range(1, 5):
    term = synthesize_tau_term(chain, i)
    print(f"tau_{i}/4 = {' . '.join(term.ops) or 'id'}  table {term.table(chain)}")
