"""Finite commutative rings with unity, realized as explicit operation tables."""

from __future__ import annotations

import threading
from typing import Iterable

import numpy as np

from .descriptor import Literal, RingDescriptor, ZMod, Product, Amalgamation, TrivialExt, format_literal
from .errors import CapExceeded, ElementError

DEFAULT_MAX_SIZE = 4096
EXHAUSTIVE_AXIOM_LIMIT = 64


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def check_size(size: int, max_size: int) -> None:
    if size > max_size:
        raise CapExceeded(f"ring of size {size} exceeds the size cap {max_size}")


class FiniteRing:
    """A commutative ring on element ids ``0..size-1``.

    ``labels[i]`` is the canonical literal of element ``i``; ``factors`` are the
    rings the literals are interpreted in, and ``canonical_map`` sends ids of the
    base ring to ids of this one for quotients and localizations.
    """

    def __init__(
        self,
        add: np.ndarray,
        mul: np.ndarray,
        zero: int,
        one: int,
        labels: Iterable[Literal],
        descriptor: RingDescriptor,
        factors: tuple["FiniteRing", ...] = (),
        canonical_map: np.ndarray | None = None,
    ):
        self.add = _frozen(np.asarray(add, dtype=np.int32))
        self.mul = _frozen(np.asarray(mul, dtype=np.int32))
        self.size = int(self.add.shape[0])
        self.zero = int(zero)
        self.one = int(one)
        self.labels = tuple(labels)
        self.descriptor = descriptor
        self.factors = factors
        self.canonical_map = None if canonical_map is None else _frozen(np.asarray(canonical_map, dtype=np.int32))
        neg = np.argmax(self.add == self.zero, axis=1)
        self.neg = _frozen(neg.astype(np.int32))
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._memo: dict = {}
        self._memo_lock = threading.Lock()

    # memoization with idempotent insert semantics
    def memo(self, key, compute):
        try:
            return self._memo[key]
        except KeyError:
            pass
        value = compute()
        with self._memo_lock:
            return self._memo.setdefault(key, value)

    def __repr__(self) -> str:
        return f"FiniteRing({self.descriptor}, size={self.size})"

    def __len__(self) -> int:
        return self.size

    @property
    def ids(self) -> np.ndarray:
        return np.arange(self.size)

    @property
    def is_zero_ring(self) -> bool:
        return self.size == 1

    # -- elements -----------------------------------------------------------

    def label(self, x: int) -> Literal:
        return self.labels[x]

    def fmt(self, x: int) -> str:
        return format_literal(self.labels[x])

    def element(self, lit: Literal) -> int:
        """Resolve an element literal to an id."""
        desc = self.descriptor
        if isinstance(desc, ZMod):
            if not isinstance(lit, int):
                raise ElementError(f"{format_literal(lit)} is not an element of {desc}")
            return lit % desc.n
        if self.canonical_map is not None:
            return int(self.canonical_map[self.factors[0].element(lit)])
        if isinstance(desc, (Product, Amalgamation, TrivialExt)):
            if not isinstance(lit, tuple) or len(lit) != 2:
                raise ElementError(f"{format_literal(lit)} is not a pair, as {desc} requires")
            left = self.factors[0]
            right = self.factors[1] if isinstance(desc, Product) else left
            key = (left.label(left.element(lit[0])), right.label(right.element(lit[1])))
            try:
                return self._index[key]
            except KeyError:
                raise ElementError(f"{format_literal(lit)} is not an element of {desc}") from None
        try:
            return self._index[lit]
        except KeyError:
            raise ElementError(f"{format_literal(lit)} is not an element of {desc}") from None

    @property
    def coords(self) -> np.ndarray:
        """Component ids (in the factor rings) of each element of a pair ring."""

        def build():
            left = self.factors[0]
            right = self.factors[1] if len(self.factors) > 1 else left
            out = np.array([(left.element(a), right.element(b)) for a, b in self.labels], dtype=np.int64)
            return _frozen(out)

        return self.memo("coords", build)

    def pair_id(self, x: int, y: int) -> int:
        """Id of the pair with component ids (x, y); -1 when it is not an element."""

        def build():
            left = self.factors[0]
            right = self.factors[1] if len(self.factors) > 1 else left
            table = np.full((left.size, right.size), -1, dtype=np.int64)
            c = self.coords
            table[c[:, 0], c[:, 1]] = np.arange(self.size)
            return _frozen(table)

        return int(self.memo("pair_index", build)[x, y])

    # -- arithmetic helpers -------------------------------------------------

    def sub(self, x: int, y: int) -> int:
        return int(self.add[x, self.neg[y]])

    def power(self, x: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = int(self.mul[r, x])
        return r

    def check_axioms(self, samples: int = 20000, seed: int = 0) -> bool:
        """Commutative ring axioms on the tables; exhaustive up to 64 elements."""
        n = self.size
        A, M = self.add, self.mul
        if n <= EXHAUSTIVE_AXIOM_LIMIT:
            a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
            a, b, c = a.ravel(), b.ravel(), c.ravel()
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, samples))
        ok = (
            np.array_equal(A, A.T)
            and np.array_equal(M, M.T)
            and np.all(A[A[a, b], c] == A[a, A[b, c]])
            and np.all(M[M[a, b], c] == M[a, M[b, c]])
            and np.all(M[a, A[b, c]] == A[M[a, b], M[a, c]])
            and np.all(A[self.zero] == np.arange(n))
            and np.all(M[self.one] == np.arange(n))
            and np.all(A[np.arange(n), self.neg] == self.zero)
        )
        if n > 1 and self.zero == self.one:
            return False
        return bool(ok)

    # -- table dumps --------------------------------------------------------

    def dump_tables(self) -> str:
        lines = ["ring-tables v1", f"descriptor {self.descriptor}", f"size {self.size}",
                 f"zero {self.zero}", f"one {self.one}", "add"]
        lines += [" ".join(map(str, row)) for row in self.add.tolist()]
        lines.append("mul")
        lines += [" ".join(map(str, row)) for row in self.mul.tolist()]
        lines.append("labels " + " ".join(format_literal(lab) for lab in self.labels))
        if self.canonical_map is not None:
            lines.append("map " + " ".join(map(str, self.canonical_map.tolist())))
        lines.append("end")
        return "\n".join(lines) + "\n"


def load_tables(text: str, descriptor: RingDescriptor, factors: tuple[FiniteRing, ...]) -> FiniteRing:
    """Inverse of :meth:`FiniteRing.dump_tables`."""
    from .parser import parse_literal

    lines = text.splitlines()
    if not lines or lines[0].strip() != "ring-tables v1":
        raise ValueError("not a ring-tables v1 dump")
    fields: dict[str, str] = {}
    i = 1
    add = mul = None
    while i < len(lines):
        head, _, rest = lines[i].partition(" ")
        if head in ("add", "mul"):
            n = int(fields["size"])
            rows = [list(map(int, lines[i + 1 + r].split())) for r in range(n)]
            if head == "add":
                add = rows
            else:
                mul = rows
            i += n + 1
            continue
        if head == "end":
            break
        fields[head] = rest
        i += 1
    if fields.get("descriptor") != str(descriptor):
        raise ValueError("dump belongs to a different descriptor")
    labels = [parse_literal(tok) for tok in fields["labels"].split()]
    cmap = np.array(list(map(int, fields["map"].split()))) if "map" in fields else None
    return FiniteRing(add, mul, int(fields["zero"]), int(fields["one"]), labels, descriptor, factors, cmap)


def make_zmod(n: int, max_size: int = DEFAULT_MAX_SIZE) -> FiniteRing:
    """Integers modulo ``n``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"Z/n needs a positive integer n, got {n!r}")
    check_size(n, max_size)
    r = np.arange(n)
    add = (r[:, None] + r[None, :]) % n
    mul = (r[:, None] * r[None, :]) % n
    return FiniteRing(add, mul, 0, 1 % n, range(n), ZMod(n))


class RingHom:
    """A map of finite rings given by its image table."""

    def __init__(self, source: FiniteRing, target: FiniteRing, images):
        self.source = source
        self.target = target
        self.images = _frozen(np.asarray(images, dtype=np.int64))
        if self.images.shape != (source.size,):
            raise ValueError("image table must have one entry per source element")

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def check(self) -> bool:
        """Exhaustively verify that 0, 1, addition and multiplication are preserved."""
        s, t, f = self.source, self.target, self.images
        if f[s.zero] != t.zero or f[s.one] != t.one:
            return False
        return bool(
            np.array_equal(f[s.add], t.add[f[:, None], f[None, :]])
            and np.array_equal(f[s.mul], t.mul[f[:, None], f[None, :]])
        )

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(np.unique(self.images)) == self.target.size

    def compose(self, other: "RingHom") -> "RingHom":
        """``self ∘ other``."""
        return RingHom(other.source, self.target, self.images[other.images])
