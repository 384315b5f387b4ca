"""Inducing approximate representations along finite-index coset data.

Given coset data g g_i = g_{j(i)} h_i for each generator g of the big group
and an assignment pi of unitaries to the subgroup's generators, the induced
block matrix puts pi(h_i) into block (j(i), i).  Two facts demonstrated:

1. The classical sanity checks: index-1 induction is the identity
   construction, and for G = Z with H = 2Z (index 2, table t g1 = g2,
   t g2 = g1 h) the square of the induced generator is diag(pi(h), pi(h)).

2. Lower bounds transport: the subgroup block sits in the corner of the
   induced matrices, so the BS(2,3) commutator gap sqrt(3) survives
   induction to any group containing BS(2,3) with finite index.
"""

import numpy as np

from stability_lab.induce import CosetAction, induce_element, induce_generator
from stability_lab.linalg import UnitaryTuple, evaluate_word
from stability_lab.relators import Generator, Word, parse_word
from stability_lab.zoo import bs23, voiculescu

h_gens = (Generator("h"),)

print("Z inside Z at index 2 (h plays t^2):")
omega, _ = voiculescu(5)
rep = UnitaryTuple((omega,), ("h",), 1e-12)
action = CosetAction(
    index=2,
    g_generators=(Generator("t"),),
    h_generators=h_gens,
    table=(((1, Word((), 1)), (0, Word(((0, 1),), 1))),),
)
ind_t = induce_generator(rep, action, 0)
print("  Ind(t) block pattern (magnitudes):")
print(np.round(np.abs(ind_t), 2))
square = induce_element(rep, action, parse_word("t^2", action.g_generators))
want = np.block([[omega, np.zeros((5, 5))], [np.zeros((5, 5)), omega]])
print("  || Ind(t)^2 - diag(pi(h), pi(h)) || =", np.linalg.norm(square - want, 2))

print()
print("Gap transport for BS(2,3) inside a hypothetical index-2 supergroup:")
con = bs23(4)
empty = Word((), 2)
lift = CosetAction(
    index=2,
    g_generators=(Generator("a"), Generator("b"), Generator("s")),
    h_generators=con.presentation.generators,
    table=(
        ((0, Word(((0, 1),), 2)), (1, Word(((0, 1),), 2))),
        ((0, Word(((1, 1),), 2)), (1, Word(((1, 1),), 2))),
        ((1, empty), (0, empty)),
    ),
)
h0 = parse_word("a b a^-1 b a b^-1 a^-1 b^-1", lift.g_generators)
ind = induce_element(con.unitaries, lift, h0)
direct = evaluate_word(parse_word("a b a^-1 b a b^-1 a^-1 b^-1", con.presentation.generators),
                       con.unitaries)
dim = ind.shape[0]
print("  subgroup gap   :", np.linalg.norm(direct - np.eye(con.unitaries.dim), 2))
print("  induced gap    :", np.linalg.norm(ind - np.eye(dim), 2))
print("  sqrt(3)        :", 3 ** 0.5)
