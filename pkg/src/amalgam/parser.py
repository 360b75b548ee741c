"""Recursive-descent parser for ring expressions, ideals and element literals."""

from __future__ import annotations

import re

from .descriptor import KEYWORDS, Literal, Product, RingDescriptor, ZMod, Amalgamation, Localization
from .errors import ImproperIdeal, NotPrime, ParseError
from .ring import DEFAULT_MAX_SIZE, FiniteRing

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<word>[A-Za-z]+)|(?P<punct>[(),/]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def position(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def expect(self, value: str) -> None:
        tok = self.peek()
        if tok is None or tok[1] != value:
            got = "end of input" if tok is None else repr(tok[1])
            raise ParseError(f"unexpected {got}", self.position(), (repr(value),))
        self.i += 1

    def integer(self) -> int:
        tok = self.peek()
        if tok is None or tok[0] != "int":
            raise ParseError("expected an integer", self.position(), ("INT",))
        self.i += 1
        return int(tok[1])

    def done(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()[1]!r}", self.position(), ("end of input",))

    def expr(self) -> RingDescriptor:
        tok = self.peek()
        expected = ("'Z/'", "'product('") + tuple(f"'{k}('" for k in KEYWORDS)
        if tok is None or tok[0] != "word":
            raise ParseError("expected a ring expression", self.position(), expected)
        word = tok[1]
        if word == "Z":
            self.i += 1
            self.expect("/")
            at = self.position()
            n = self.integer()
            if n < 1:
                raise ParseError("Z/n needs n >= 1", at, ("positive INT",))
            return ZMod(n)
        if word == "product":
            self.i += 1
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return Product(left, right)
        if word in KEYWORDS:
            self.i += 1
            self.expect("(")
            base = self.expr()
            self.expect(",")
            gens = self.ideal()
            self.expect(")")
            return KEYWORDS[word](base, gens)
        raise ParseError(f"unknown constructor {word!r}", tok[2], expected)

    def ideal(self) -> tuple:
        self.expect("(")
        gens = []
        tok = self.peek()
        if tok is not None and tok[1] == ")":
            self.i += 1
            return ()
        gens.append(self.elem())
        while (tok := self.peek()) is not None and tok[1] == ",":
            self.i += 1
            gens.append(self.elem())
        self.expect(")")
        return tuple(gens)

    def elem(self) -> Literal:
        tok = self.peek()
        if tok is not None and tok[1] == "(":
            self.i += 1
            a = self.elem()
            self.expect(",")
            b = self.elem()
            self.expect(")")
            return (a, b)
        return self.integer()


def parse_ring_expr(text: str) -> RingDescriptor:
    """Parse a ring expression into its construction tree (syntax only)."""
    p = _Parser(text)
    desc = p.expr()
    p.done()
    return desc


def parse_ideal(text: str) -> tuple:
    p = _Parser(text)
    gens = p.ideal()
    p.done()
    return gens


def parse_literal(text: str) -> Literal:
    p = _Parser(text)
    lit = p.elem()
    p.done()
    return lit


def resolve(desc: RingDescriptor, allow_improper: bool = False, max_size: int = DEFAULT_MAX_SIZE, cache=None) -> FiniteRing:
    """Semantic checks on a parsed expression, then realization.

    Raises for generators outside the ring, non-prime localizations and, unless
    ``allow_improper``, duplications along the unit ideal.
    """
    from .constructions import realize
    from .ideals import ideal_generated, is_prime

    if isinstance(desc, Product):
        resolve(desc.left, allow_improper, max_size, cache)
        resolve(desc.right, allow_improper, max_size, cache)
    elif not isinstance(desc, ZMod):
        base = resolve(desc.base, allow_improper, max_size, cache)
        ideal = ideal_generated(base, [base.element(g) for g in desc.gens])
        if isinstance(desc, Localization) and not is_prime(ideal):
            raise NotPrime(f"cannot localize {desc.base} at the non-prime ideal {ideal.gens_text()}")
        if isinstance(desc, Amalgamation) and not allow_improper and not ideal.is_proper:
            raise ImproperIdeal(
                f"bowtie along the unit ideal of {desc.base} (the ideal must be proper; pass --allow-improper)"
            )
    return realize(desc, max_size, cache)
