import pytest

from mveff.chain import Chain
from mveff.errors import DialectViolation, FormulaSyntaxError, UnknownPlayer
from mveff.formulas import (
    Box,
    BoxO,
    Coalition,
    Implies,
    Neg,
    Prop,
    TOP,
    bottom,
    iff,
    meet,
    nfold_oplus,
    odot,
    oplus,
    parse,
    print_formula,
    propositions,
    subformulas,
    substitute,
    tau_formula,
    uses_outcome_modality,
)


def test_coalition_basics():
    c = Coalition.of([1, 3], 3)
    assert c.members() == (1, 3)
    assert str(c) == "{1,3}"
    assert str(Coalition.grand(3)) == "N"
    assert str(Coalition.empty(3)) == "{}"
    assert c.complement().members() == (2,)
    assert c.union(Coalition.of([2], 3)).is_grand()
    with pytest.raises(UnknownPlayer):
        Coalition.of([4], 3)


def test_parse_kernel():
    assert parse("1", 2) == TOP
    assert parse("0", 2) == bottom()
    assert parse("p7", 2) == Prop(7)
    assert parse("~p1", 2) == Neg(Prop(1))
    assert parse("p1 -> p2", 2) == Implies(Prop(1), Prop(2))
    assert parse("[{1}]p1", 2) == Box(Coalition.of([1], 2), Prop(1))
    assert parse("[N]p1", 2) == Box(Coalition.grand(2), Prop(1))
    assert parse("[{}]p1", 2) == Box(Coalition.empty(2), Prop(1))


def test_parse_desugaring():
    p, q = Prop(1), Prop(2)
    assert parse("p1 (+) p2", 2) == oplus(p, q)
    assert parse("p1 (.) p2", 2) == odot(p, q)
    assert parse("p1 & p2", 2) == meet(p, q)
    assert parse("p1 <-> p2", 2) == iff(p, q)
    assert parse("3.p1", 2) == nfold_oplus(3, p)
    c = Chain(2)
    assert parse("tau(2)p1", 2, chain=c) == tau_formula(2, c, p)


def test_parse_precedence_and_associativity():
    # (.) binds tighter than (+) tighter than & | -> <->, all right-assoc
    assert parse("p1 -> p2 -> p3", 2) == Implies(Prop(1), Implies(Prop(2), Prop(3)))
    assert parse("p1 (+) p2 (.) p3", 2) == oplus(Prop(1), odot(Prop(2), Prop(3)))
    assert parse("p1 | p2 -> p3", 2) == Implies(
        parse("p1 | p2", 2), Prop(3)
    )


def test_parse_errors():
    with pytest.raises(FormulaSyntaxError):
        parse("p1 ->", 2)
    with pytest.raises(FormulaSyntaxError):
        parse("(p1", 2)
    with pytest.raises(FormulaSyntaxError) as err:
        parse("p1 $ p2", 2)
    assert err.value.position is not None
    with pytest.raises(UnknownPlayer):
        parse("[{3}]p1", 2)


def test_dialect_enforcement():
    with pytest.raises(DialectViolation):
        parse("[O]p1", 2)
    phi = parse("[O]p1", 2, dialect="L+")
    assert phi == BoxO(Prop(1))
    assert uses_outcome_modality(phi)
    assert not uses_outcome_modality(parse("[{1}]p1", 2))


def test_tau_formula_semantics_via_tables():
    # the desugared tau formula must compute the threshold on every input
    from mveff.chain import synthesize_tau_term

    c = Chain(4)
    for i in range(1, 5):
        term = synthesize_tau_term(c, i)
        phi = tau_formula(i, c, Prop(1))

        def value(num, node):
            if node == Prop(1):
                return num
            if isinstance(node, Neg):
                return c.n - value(num, node.sub)
            left = value(num, node.left)
            right = value(num, node.right)
            return min(c.n, c.n - left + right)

        for num in range(5):
            assert value(num, phi) == term.apply_num(num, c.n)


def test_subformulas_children_first():
    phi = parse("[{1}](p1 -> p2) -> ~p1", 2)
    subs = list(subformulas(phi))
    assert subs[-1] == phi
    for i, f in enumerate(subs):
        from mveff.formulas import children

        for child in children(f):
            assert child in subs[:i]


def test_substitute_and_props():
    phi = parse("[{1}]p1 -> p2", 2)
    assert propositions(phi) == (1, 2)
    psi = substitute(phi, Prop(2), Prop(1))
    assert propositions(psi) == (1,)
    assert psi == parse("[{1}]p1 -> p1", 2)


def test_print_round_trip():
    for text in ("[{1}](p1 -> ~p2)", "~(p1 -> p2)", "[N]p1 -> [{}]p2"):
        phi = parse(text, 2)
        assert parse(print_formula(phi), 2) == phi
    enriched = parse("[O](p1 -> p2)", 2, dialect="L+")
    assert parse(print_formula(enriched), 2, dialect="L+") == enriched
