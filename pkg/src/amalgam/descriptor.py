"""Construction trees for finite rings and their canonical text form.

The text form is exactly the CLI expression grammar::

    expr  := "Z/" INT | "product(" expr "," expr ")" | "quotient(" expr "," ideal ")"
           | "trivext(" expr "," ideal ")" | "bowtie(" expr "," ideal ")"
           | "localize(" expr "," ideal ")"
    ideal := "(" [elem {"," elem}] ")"
    elem  := INT | "(" elem "," elem ")"
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

# An element literal: an integer or a nested pair of literals.
Literal = Union[int, tuple]


def format_literal(lit: Literal) -> str:
    if isinstance(lit, tuple):
        return f"({format_literal(lit[0])},{format_literal(lit[1])})"
    return str(lit)


def format_ideal(gens: tuple) -> str:
    return "(" + ",".join(format_literal(g) for g in gens) + ")"


@dataclass(frozen=True)
class ZMod:
    n: int

    def __str__(self) -> str:
        return f"Z/{self.n}"


@dataclass(frozen=True)
class Product:
    left: "RingDescriptor"
    right: "RingDescriptor"

    def __str__(self) -> str:
        return f"product({self.left},{self.right})"


@dataclass(frozen=True)
class _OverIdeal:
    base: "RingDescriptor"
    gens: tuple = ()

    keyword = ""

    def __str__(self) -> str:
        return f"{self.keyword}({self.base},{format_ideal(self.gens)})"


@dataclass(frozen=True)
class Quotient(_OverIdeal):
    keyword = "quotient"


@dataclass(frozen=True)
class TrivialExt(_OverIdeal):
    keyword = "trivext"


@dataclass(frozen=True)
class Amalgamation(_OverIdeal):
    keyword = "bowtie"


@dataclass(frozen=True)
class Localization(_OverIdeal):
    keyword = "localize"


RingDescriptor = Union[ZMod, Product, Quotient, TrivialExt, Amalgamation, Localization]

KEYWORDS = {
    "quotient": Quotient,
    "trivext": TrivialExt,
    "bowtie": Amalgamation,
    "localize": Localization,
}


def canonical(desc: RingDescriptor) -> str:
    return str(desc)
