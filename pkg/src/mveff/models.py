"""Neighborhood models over a Lukasiewicz chain, and model checking.

A model attaches one effectivity table to every state plus a chain-valued
valuation of finitely many propositions.  The enriched variant adds a
relation R for the outcome modality [O].  Evaluation is bottom-up over the
formula DAG and batched over candidate valuations, so validity checks run
one vectorized pass instead of one recursion per valuation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .chain import Chain, TruthValue
from .errors import BudgetExceeded, DialectViolation, UnknownProposition
from .formulas import (
    Box,
    BoxO,
    Coalition,
    Formula,
    Implies,
    Neg,
    Prop,
    Top,
    iff,
    meet,
    odot,
    oplus,
    propositions,
    tau_formula,
)
from .tables import EffFn

DEFAULT_VALUATION_BUDGET = 1 << 20


def char_vector(members, size: int, n: int) -> tuple[int, ...]:
    """Characteristic assessment of a state subset, valued in {0, 1}."""
    member_set = set(members)
    return tuple(n if j in member_set else 0 for j in range(size))


@dataclass(frozen=True)
class LnModel:
    """States, one effectivity table per state, and a valuation."""

    chain: Chain
    states: tuple[str, ...]
    eff: tuple[EffFn, ...]  # indexed like states, outcomes = states
    valuation: tuple[tuple[int, tuple[int, ...]], ...]  # (prop index, per-state row)

    def __init__(self, chain, states, eff, valuation):
        object.__setattr__(self, "chain", chain)
        object.__setattr__(self, "states", tuple(states))
        object.__setattr__(self, "eff", tuple(eff))
        if isinstance(valuation, dict):
            valuation = tuple(sorted((p, tuple(row)) for p, row in valuation.items()))
        else:
            valuation = tuple(sorted((p, tuple(row)) for p, row in valuation))
        object.__setattr__(self, "valuation", valuation)
        if len(self.eff) != len(self.states):
            raise ValueError("need one effectivity table per state")
        for E in self.eff:
            if E.chain != chain or E.outcomes != self.states:
                raise ValueError("every table must share the model's chain and states")
        for p, row in self.valuation:
            if len(row) != len(self.states):
                raise ValueError(f"valuation row for p{p} has wrong length")
            if any(not 0 <= v <= chain.n for v in row):
                raise ValueError(f"valuation of p{p} leaves the chain")

    @property
    def n(self) -> int:
        return self.chain.n

    @property
    def k(self) -> int:
        return self.eff[0].k

    @property
    def num_states(self) -> int:
        return len(self.states)

    def state_index(self, u) -> int:
        return u if isinstance(u, int) else self.states.index(u)

    def prop_row(self, index: int) -> tuple[int, ...]:
        for p, row in self.valuation:
            if p == index:
                return row
        raise UnknownProposition(f"p{index} has no valuation in this model")

    def declared_props(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.valuation)

    def with_valuation(self, valuation) -> "LnModel":
        return LnModel(self.chain, self.states, self.eff, valuation)

    # -- documents ----------------------------------------------------------

    def to_doc(self) -> dict:
        return {
            "kind": "model",
            "n": self.n,
            "players": self.k,
            "states": list(self.states),
            "E": {u: self.eff[j].to_doc() for j, u in enumerate(self.states)},
            "val": {
                u: {f"p{p}": row[j] for p, row in self.valuation}
                for j, u in enumerate(self.states)
            },
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "LnModel":
        kind = doc.get("kind", "model")
        if kind not in ("model", "enriched-model"):
            raise ValueError(f"not a model document: kind={kind!r}")
        states = tuple(doc["states"])
        eff = tuple(EffFn.from_doc(doc["E"][u]) for u in states)
        props = sorted(
            {int(name[1:]) for per_state in doc["val"].values() for name in per_state}
        )
        valuation = {
            p: tuple(doc["val"][u].get(f"p{p}", 0) for u in states) for p in props
        }
        model = cls(Chain(doc["n"]), states, eff, valuation)
        if kind == "enriched-model" or "R" in doc:
            pairs = frozenset(
                (states.index(u), states.index(v)) for u, v in doc.get("R", [])
            )
            return EnrichedLnModel(model.chain, states, eff, valuation, pairs)
        return model

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class EnrichedLnModel(LnModel):
    """An LnModel with an accessibility relation for the [O] modality."""

    R: frozenset = field(default=frozenset())

    def __init__(self, chain, states, eff, valuation, R):
        LnModel.__init__(self, chain, states, eff, valuation)
        pairs = frozenset(
            (self.state_index(u), self.state_index(v)) for u, v in R
        )
        for u, v in pairs:
            if not (0 <= u < len(self.states) and 0 <= v < len(self.states)):
                raise ValueError(f"relation pair ({u}, {v}) outside the state set")
        object.__setattr__(self, "R", pairs)

    def successors(self, u: int) -> tuple[int, ...]:
        return tuple(v for (w, v) in sorted(self.R) if w == u)

    def with_valuation(self, valuation) -> "EnrichedLnModel":
        return EnrichedLnModel(self.chain, self.states, self.eff, valuation, self.R)

    def to_doc(self) -> dict:
        doc = super().to_doc()
        doc["kind"] = "enriched-model"
        doc["R"] = [
            [self.states[u], self.states[v]] for u, v in sorted(self.R)
        ]
        return doc


# -- evaluation --------------------------------------------------------------


def _eval_batch(model: LnModel, phi: Formula, prop_arrays: dict) -> np.ndarray:
    """Value arrays of shape (num_valuations, num_states), bottom-up.

    prop_arrays maps proposition indices to such arrays; propositions not
    listed fall back to the model's own valuation, broadcast across rows.
    """
    n = model.n
    size = model.num_states
    batch = next(iter(prop_arrays.values())).shape[0] if prop_arrays else 1
    powers = (n + 1) ** np.arange(size - 1, -1, -1, dtype=np.int64)
    cache: dict[Formula, np.ndarray] = {}

    def walk(node: Formula) -> np.ndarray:
        hit = cache.get(node)
        if hit is not None:
            return hit
        if isinstance(node, Top):
            out = np.full((batch, size), n, dtype=np.int64)
        elif isinstance(node, Prop):
            if node.index in prop_arrays:
                out = prop_arrays[node.index]
            else:
                row = np.asarray(model.prop_row(node.index), dtype=np.int64)
                out = np.broadcast_to(row, (batch, size))
        elif isinstance(node, Neg):
            out = n - walk(node.sub)
        elif isinstance(node, Implies):
            out = np.minimum(n, n - walk(node.left) + walk(node.right))
        elif isinstance(node, Box):
            sub = walk(node.sub)
            idx = sub @ powers
            out = np.empty((batch, size), dtype=np.int64)
            for j in range(size):
                row = np.asarray(model.eff[j].table[node.coalition.mask])
                out[:, j] = row[idx]
        elif isinstance(node, BoxO):
            if not isinstance(model, EnrichedLnModel):
                raise DialectViolation("[O] needs an enriched model")
            sub = walk(node.sub)
            out = np.full((batch, size), n, dtype=np.int64)
            for u, v in model.R:
                np.minimum(out[:, u], sub[:, v], out=out[:, u])
        else:
            raise TypeError(f"unknown formula node {node!r}")
        cache[node] = out
        return out

    return walk(phi)


def eval_vector(model: LnModel, phi: Formula) -> tuple[int, ...]:
    """Numerator of the value of phi at every state."""
    return tuple(int(v) for v in _eval_batch(model, phi, {})[0])


def eval_formula(model: LnModel, u, phi: Formula) -> TruthValue:
    return TruthValue(eval_vector(model, phi)[model.state_index(u)], model.chain)


def is_true(model: LnModel, phi: Formula) -> bool:
    return all(v == model.n for v in eval_vector(model, phi))


def _valuation_grid(n: int, size: int, props, budget: int) -> dict:
    """One array per proposition covering every joint valuation."""
    props = list(props)
    cells = len(props) * size
    total = (n + 1) ** cells
    if total > budget:
        raise BudgetExceeded(
            f"{total} candidate valuations exceed budget {budget}"
        )
    grid = np.asarray(
        list(itertools.product(range(n + 1), repeat=cells)), dtype=np.int64
    )
    return {
        p: grid[:, i * size : (i + 1) * size] for i, p in enumerate(props)
    }


def is_valid(
    model: LnModel,
    phi: Formula,
    prop_support=None,
    budget: int = DEFAULT_VALUATION_BUDGET,
):
    """Truth of phi under every valuation of the supported propositions.

    Returns (verdict, counterexample); the counterexample is the first
    falsifying (valuation dict, state index) in enumeration order.
    """
    if prop_support is None:
        prop_support = propositions(phi)
    prop_support = list(prop_support)
    if not prop_support:
        values = _eval_batch(model, phi, {})
    else:
        arrays = _valuation_grid(model.n, model.num_states, prop_support, budget)
        values = _eval_batch(model, phi, arrays)
    bad = np.nonzero(values < model.n)
    if bad[0].size == 0:
        return True, None
    row, state = int(bad[0][0]), int(bad[1][0])
    if not prop_support:
        return False, ({}, state)
    witness = {
        p: tuple(int(v) for v in arrays[p][row]) for p in prop_support
    }
    return False, (witness, state)


# -- standard frames ---------------------------------------------------------


def standard_relation(model: LnModel) -> frozenset:
    """The relation induced by the empty coalition's effectivity."""
    n = model.n
    size = model.num_states
    pairs = set()
    for u in range(size):
        for v in range(size):
            neg_char = tuple(0 if j == v else n for j in range(size))
            if model.eff[u].value_num(0, neg_char) == 0:
                pairs.add((u, v))
    return frozenset(pairs)


def is_standard(model: EnrichedLnModel) -> bool:
    return model.R == standard_relation(model)


def standardize(model: LnModel) -> EnrichedLnModel:
    return EnrichedLnModel(
        model.chain,
        model.states,
        model.eff,
        model.valuation,
        standard_relation(model),
    )


# -- axiom schemata ----------------------------------------------------------

_P = Prop(1)
_Q = Prop(2)


def pn_axioms(k: int, chain: Chain):
    """Named instances of the playable-logic axiom schemata for k players."""
    out = []
    for mask in range(1 << k):
        C = Coalition(mask, k)
        out.append(
            (f"ax1[{C}]", iff(Box(C, odot(_P, _P)), odot(Box(C, _P), Box(C, _P))))
        )
        out.append(
            (f"ax2[{C}]", iff(Box(C, oplus(_P, _P)), oplus(Box(C, _P), Box(C, _P))))
        )
        out.append((f"ax3[{C}]", Neg(Box(C, Neg(Top())))))
    for m1 in range(1 << k):
        for m2 in range(1 << k):
            if m1 & m2:
                continue
            C1, C2 = Coalition(m1, k), Coalition(m2, k)
            out.append(
                (
                    f"ax4[{C1},{C2}]",
                    Implies(
                        meet(Box(C1, _P), Box(C2, _Q)),
                        Box(C1.union(C2), meet(_P, _Q)),
                    ),
                )
            )
    out.append(
        (
            "ax5",
            Implies(Box(Coalition.empty(k), _P), Neg(Box(Coalition.grand(k), Neg(_P)))),
        )
    )
    return out


def b_family(k: int, chain: Chain):
    """The threshold-commutation schemata, one per coalition and index."""
    out = []
    for mask in range(1 << k):
        C = Coalition(mask, k)
        for i in range(1, chain.n + 1):
            out.append(
                (
                    f"B[{C},{i}]",
                    iff(Box(C, tau_formula(i, chain, _P)), tau_formula(i, chain, Box(C, _P))),
                )
            )
    return out


def tpn_axioms(k: int, chain: Chain):
    empty = Coalition.empty(k)
    return [
        ("ax6", BoxO(Top())),
        ("ax7", iff(BoxO(_P), Box(empty, _P))),
        (
            "ax8",
            Implies(
                Box(empty, Implies(_P, _Q)),
                Implies(Box(empty, _P), Box(empty, _Q)),
            ),
        ),
    ]


def check_axiom_schema(model: LnModel, schema: Formula, budget=DEFAULT_VALUATION_BUDGET):
    """Validate one schema on one model, quantifying its variables.

    The schema's propositions play the role of schema variables; validity
    over every valuation of them is exactly schema validity on the model.
    """
    return is_valid(model, schema, propositions(schema), budget)
