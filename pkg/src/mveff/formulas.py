"""Formula language for coalition modalities over a finite Lukasiewicz chain.

The kernel AST has five constructors (top, proposition, negation,
implication, coalition box) plus the outcome modality [O] of the enriched
dialect.  Everything else in the surface syntax -- 0, oplus, odot, meet,
join, iff, n-fold sums and threshold maps -- is desugared at parse time.

Surface grammar (whitespace insignificant, unary binds tightest, binary
connectives are right-associative with `(.)` > `(+)` > `&` > `|` > `->` >
`<->`):

    1  0  p<digits>  ~F  (F)  F -> F  F & F  F | F  F (+) F  F (.) F
    F <-> F  [<coalition>]F  [O]F  tau(i)F  <digits>.F

Coalition literals: ``{1,3}``, ``{}`` for the empty coalition, ``N`` for the
grand coalition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .chain import TAU_OPLUS, Chain, synthesize_tau_term
from .errors import DialectViolation, FormulaSyntaxError, UnknownPlayer

DIALECT_L = "L"
DIALECT_LPLUS = "L+"


@dataclass(frozen=True)
class Coalition:
    """A subset of the player set {1, ..., k}, stored as a bitmask."""

    mask: int
    k: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.k):
            raise UnknownPlayer(f"mask {self.mask} does not fit {self.k} players")

    @classmethod
    def of(cls, players, k: int) -> "Coalition":
        mask = 0
        for p in players:
            if not 1 <= p <= k:
                raise UnknownPlayer(f"player {p} outside 1..{k}")
            mask |= 1 << (p - 1)
        return cls(mask, k)

    @classmethod
    def empty(cls, k: int) -> "Coalition":
        return cls(0, k)

    @classmethod
    def grand(cls, k: int) -> "Coalition":
        return cls((1 << k) - 1, k)

    def members(self) -> tuple[int, ...]:
        return tuple(p for p in range(1, self.k + 1) if self.mask >> (p - 1) & 1)

    def complement(self) -> "Coalition":
        return Coalition(((1 << self.k) - 1) ^ self.mask, self.k)

    def union(self, other: "Coalition") -> "Coalition":
        return Coalition(self.mask | other.mask, self.k)

    def is_grand(self) -> bool:
        return self.mask == (1 << self.k) - 1

    def __str__(self):
        if self.is_grand():
            return "N"
        return "{" + ",".join(str(p) for p in self.members()) + "}"


class Formula:
    """Base class of the kernel AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    __slots__ = ()

    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Prop(Formula):
    index: int

    def __str__(self):
        return f"p{self.index}"


@dataclass(frozen=True)
class Neg(Formula):
    sub: Formula

    def __str__(self):
        return f"~{_atomic(self.sub)}"


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} -> {self.right})"


@dataclass(frozen=True)
class Box(Formula):
    coalition: Coalition
    sub: Formula

    def __str__(self):
        return f"[{self.coalition}]{_atomic(self.sub)}"


@dataclass(frozen=True)
class BoxO(Formula):
    sub: Formula

    def __str__(self):
        return f"[O]{_atomic(self.sub)}"


def _atomic(phi: Formula) -> str:
    text = str(phi)
    if isinstance(phi, Implies):
        return text  # already parenthesized
    return text


TOP = Top()


def bottom() -> Formula:
    return Neg(TOP)


# -- derived connectives (desugared forms) ----------------------------------


def oplus(a: Formula, b: Formula) -> Formula:
    return Implies(Neg(a), b)


def odot(a: Formula, b: Formula) -> Formula:
    return Neg(Implies(a, Neg(b)))


def join(a: Formula, b: Formula) -> Formula:
    return Implies(Implies(a, b), b)


def meet(a: Formula, b: Formula) -> Formula:
    return Neg(join(Neg(a), Neg(b)))


def iff(a: Formula, b: Formula) -> Formula:
    return odot(Implies(a, b), Implies(b, a))


def nfold_oplus(count: int, phi: Formula) -> Formula:
    out = phi
    for _ in range(count - 1):
        out = oplus(out, phi)
    return out


def tau_formula(i: int, chain: Chain, phi: Formula) -> Formula:
    """Expand the threshold map at i/n into doubling maps on the formula."""
    term = synthesize_tau_term(chain, i)
    out = phi
    for op in term.ops:
        out = oplus(out, out) if op == TAU_OPLUS else odot(out, out)
    return out


# -- structural utilities ---------------------------------------------------


def children(phi: Formula) -> tuple[Formula, ...]:
    if isinstance(phi, (Neg, Box, BoxO)):
        return (phi.sub,)
    if isinstance(phi, Implies):
        return (phi.left, phi.right)
    return ()


@dataclass(frozen=True)
class ClosureSet:
    """The finite subformula set of a generator formula.

    Closure under negation, implication and the doubling maps is kept
    implicit: two states agreeing on every member agree on any such
    combination, which is what every consumer of this set relies on.
    """

    generator: Formula
    formulas: tuple[Formula, ...]

    def __contains__(self, phi):
        return phi in self.formulas

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self):
        return len(self.formulas)


def subformulas(phi: Formula) -> ClosureSet:
    """All distinct subformulas of phi, children before parents."""
    seen: dict[Formula, None] = {}

    def walk(node):
        if node in seen:
            return
        for child in children(node):
            walk(child)
        seen[node] = None

    walk(phi)
    return ClosureSet(phi, tuple(seen))


def substitute(phi: Formula, prop: Prop, repl: Formula) -> Formula:
    """Replace every occurrence of the proposition in phi by repl."""
    if phi == prop:
        return repl
    if isinstance(phi, Neg):
        return Neg(substitute(phi.sub, prop, repl))
    if isinstance(phi, Implies):
        return Implies(
            substitute(phi.left, prop, repl), substitute(phi.right, prop, repl)
        )
    if isinstance(phi, Box):
        return Box(phi.coalition, substitute(phi.sub, prop, repl))
    if isinstance(phi, BoxO):
        return BoxO(substitute(phi.sub, prop, repl))
    return phi


def propositions(phi: Formula) -> tuple[int, ...]:
    """Sorted indices of the propositions occurring in phi."""
    return tuple(sorted({f.index for f in subformulas(phi) if isinstance(f, Prop)}))


def uses_outcome_modality(phi: Formula) -> bool:
    return any(isinstance(f, BoxO) for f in subformulas(phi))


def print_formula(phi: Formula) -> str:
    return str(phi)


# -- parser -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<tau>tau\(\s*\d+\s*\))
      | (?P<nfold>\d+\.)
      | (?P<oplus>\(\+\))
      | (?P<odot>\(\.\))
      | (?P<iff><->)
      | (?P<implies>->)
      | (?P<coal>\[\s*(?:O|N|\{[\d\s,]*\})\s*\])
      | (?P<prop>p\d+)
      | (?P<one>1)
      | (?P<zero>0)
      | (?P<neg>~)
      | (?P<and>&)
      | (?P<or>\|)
      | (?P<lpar>\()
      | (?P<rpar>\))
    )""",
    re.VERBOSE,
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == match.start():
            if text[pos:].strip() == "":
                break
            raise FormulaSyntaxError(f"unexpected input {text[pos:pos + 8]!r}", pos)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


# binding strength, loosest first; all right-associative
_BINARY = {"iff": 1, "implies": 2, "or": 3, "and": 4, "oplus": 5, "odot": 6}

_BINARY_BUILD = {
    "iff": iff,
    "implies": Implies,
    "or": join,
    "and": meet,
    "oplus": oplus,
    "odot": odot,
}


class _Parser:
    def __init__(self, tokens, k, dialect, chain):
        self.tokens = tokens
        self.i = 0
        self.k = k
        self.dialect = dialect
        self.chain = chain

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        phi = self.binary(1)
        kind, _, pos = self.peek()
        if kind != "end":
            raise FormulaSyntaxError("trailing input", pos)
        return phi

    def binary(self, level: int) -> Formula:
        if level > max(_BINARY.values()):
            return self.unary()
        left = self.binary(level + 1)
        kind, _, _ = self.peek()
        if kind in _BINARY and _BINARY[kind] == level:
            self.advance()
            right = self.binary(level)  # right-associative
            return _BINARY_BUILD[kind](left, right)
        return left

    def unary(self) -> Formula:
        kind, text, pos = self.advance()
        if kind == "one":
            return TOP
        if kind == "zero":
            return bottom()
        if kind == "prop":
            return Prop(int(text[1:]))
        if kind == "neg":
            return Neg(self.unary())
        if kind == "lpar":
            phi = self.binary(1)
            kind, _, pos = self.advance()
            if kind != "rpar":
                raise FormulaSyntaxError("expected ')'", pos)
            return phi
        if kind == "coal":
            body = text[1:-1].strip()
            if body == "O":
                if self.dialect != DIALECT_LPLUS:
                    raise DialectViolation("[O] is not part of the O-free language")
                return BoxO(self.unary())
            if body == "N":
                coalition = Coalition.grand(self.k)
            else:
                inner = body[1:-1].strip()
                players = [int(p) for p in inner.split(",")] if inner else []
                coalition = Coalition.of(players, self.k)
            return Box(coalition, self.unary())
        if kind == "tau":
            i = int(text[4:-1])
            if self.chain is None:
                raise FormulaSyntaxError("tau(i) needs a chain parameter", pos)
            return tau_formula(i, self.chain, self.unary())
        if kind == "nfold":
            count = int(text[:-1])
            if count < 1:
                raise FormulaSyntaxError("n-fold sum needs a positive count", pos)
            return nfold_oplus(count, self.unary())
        raise FormulaSyntaxError(f"unexpected token {text!r}", pos)


def parse(
    text: str,
    players: int,
    dialect: str = DIALECT_L,
    chain: Chain | None = None,
) -> Formula:
    """Parse surface syntax into the kernel AST, desugaring on the way.

    The chain is only needed when the text uses tau(i); everything else is
    chain-independent.
    """
    if dialect not in (DIALECT_L, DIALECT_LPLUS):
        raise ValueError(f"unknown dialect {dialect!r}")
    return _Parser(_tokenize(text), players, dialect, chain).parse()
