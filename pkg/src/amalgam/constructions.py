"""Ring constructions: products, quotients, idealizations, amalgamated duplications
and localizations, plus descriptor realization and table caching."""

from __future__ import annotations

import hashlib
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .descriptor import (
    Amalgamation,
    Localization,
    Product,
    Quotient,
    RingDescriptor,
    TrivialExt,
    ZMod,
)
from .errors import CapExceeded, ImproperIdeal, NotAnIdeal, NotPrime
from .ideals import Ideal, ideal_generated, is_prime
from .ring import DEFAULT_MAX_SIZE, FiniteRing, RingHom, check_size, load_tables, make_zmod

# -- caches ------------------------------------------------------------------

_RINGS: dict[RingDescriptor, FiniteRing] = {}
_LOCALIZATIONS: dict[RingDescriptor, "LocalizedRing"] = {}
_LOCK = threading.Lock()


def _remember(table: dict, key, value):
    with _LOCK:
        return table.setdefault(key, value)


def _lookup(desc: RingDescriptor, factors: tuple) -> FiniteRing | None:
    """A memoized ring for ``desc`` built over these very factor objects."""
    hit = _RINGS.get(desc)
    if hit is not None and len(hit.factors) == len(factors) and all(a is b for a, b in zip(hit.factors, factors)):
        return hit
    return None


def _store(desc: RingDescriptor, ring: FiniteRing) -> FiniteRing:
    with _LOCK:
        hit = _lookup(desc, ring.factors)
        if hit is not None:
            return hit
        _RINGS[desc] = ring
        return ring


class TableCache:
    """On-disk cache of ``ring-tables v1`` dumps keyed by descriptor hash."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def path(self, desc: RingDescriptor) -> Path:
        digest = hashlib.sha256(str(desc).encode()).hexdigest()
        return self.directory / f"{digest}.tables"

    def get(self, desc: RingDescriptor, factors: tuple[FiniteRing, ...]) -> FiniteRing | None:
        p = self.path(desc)
        if not p.exists():
            return None
        try:
            return load_tables(p.read_text(), desc, factors)
        except (ValueError, KeyError):
            return None

    def put(self, ring: FiniteRing) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(ring.dump_tables())
        os.replace(tmp, self.path(ring.descriptor))


# -- realization ---------------------------------------------------------------


def realize(desc: RingDescriptor, max_size: int = DEFAULT_MAX_SIZE, cache: TableCache | None = None) -> FiniteRing:
    """The finite ring denoted by a construction tree.

    Equal descriptors always return the same ring object within a process.
    """
    if isinstance(desc, ZMod):
        hit = _RINGS.get(desc)
        if hit is not None:
            check_size(hit.size, max_size)
            return hit
        return _remember(_RINGS, desc, make_zmod(desc.n, max_size))
    if isinstance(desc, Product):
        left = realize(desc.left, max_size, cache)
        right = realize(desc.right, max_size, cache)
        check_size(left.size * right.size, max_size)
        factors = (left, right)
    else:
        base = realize(desc.base, max_size, cache)
        factors = (base,)
    hit = _lookup(desc, factors)
    if hit is not None:
        check_size(hit.size, max_size)
        if cache is not None and not cache.path(desc).exists():
            cache.put(hit)
        return hit
    if cache is not None:
        ring = cache.get(desc, factors)
        if ring is not None:
            check_size(ring.size, max_size)
            return _store(desc, ring)
    if isinstance(desc, Product):
        ring = _product(*factors, desc, max_size)
    else:
        base = factors[0]
        ideal = ideal_generated(base, [base.element(g) for g in desc.gens])
        if isinstance(desc, Quotient):
            ring = _quotient(base, ideal, desc)[0]
        elif isinstance(desc, TrivialExt):
            ring = _trivial_ext(base, ideal, desc, max_size)
        elif isinstance(desc, Amalgamation):
            ring = _amalgamation(base, ideal, desc, max_size)
        elif isinstance(desc, Localization):
            ring = _localization(base, ideal, desc).ring
        else:
            raise TypeError(f"unknown descriptor {desc!r}")
    if cache is not None:
        cache.put(ring)
    return _store(desc, ring)


def _gens(I: Ideal) -> tuple:
    return tuple(I.ring.label(g) for g in I.generators)


def _checked_ideal(R: FiniteRing, I: Ideal) -> None:
    if I.ring is not R:
        raise NotAnIdeal("ideal belongs to a different ring")


# -- constructions -------------------------------------------------------------


def _product(R: FiniteRing, S: FiniteRing, desc: Product, max_size: int) -> FiniteRing:
    m = S.size
    n = R.size * m
    check_size(n, max_size)
    ids = np.arange(n)
    a, b = ids // m, ids % m
    add = R.add[a[:, None], a[None, :]] * m + S.add[b[:, None], b[None, :]]
    mul = R.mul[a[:, None], a[None, :]] * m + S.mul[b[:, None], b[None, :]]
    labels = [(R.label(x), S.label(y)) for x, y in zip(a.tolist(), b.tolist())]
    return FiniteRing(add, mul, R.zero * m + S.zero, R.one * m + S.one, labels, desc, (R, S))


def make_product(R: FiniteRing, S: FiniteRing, max_size: int = DEFAULT_MAX_SIZE) -> FiniteRing:
    """Componentwise product ring ``R x S``."""
    desc = Product(R.descriptor, S.descriptor)
    hit = _lookup(desc, (R, S))
    if hit is not None:
        return hit
    return _store(desc, _product(R, S, desc, max_size))


def _pair_tables(R: FiniteRing, coords: np.ndarray, add_parts, mul_parts):
    n = R.size
    index = np.full((n, n), -1, dtype=np.int64)
    index[coords[:, 0], coords[:, 1]] = np.arange(len(coords))
    add = index[add_parts]
    mul = index[mul_parts]
    if (add < 0).any() or (mul < 0).any():
        raise NotAnIdeal("construction is not closed; the generating set is not an ideal")
    return index, add, mul


def _amalgamation(R: FiniteRing, I: Ideal, desc: Amalgamation, max_size: int) -> FiniteRing:
    check_size(R.size * I.size, max_size)
    coords = np.array([(a, b) for a in range(R.size) for b in sorted(R.add[a, I.elements].tolist())], dtype=np.int64)
    A, B = coords[:, 0], coords[:, 1]
    index, add, mul = _pair_tables(
        R,
        coords,
        (R.add[A[:, None], A[None, :]], R.add[B[:, None], B[None, :]]),
        (R.mul[A[:, None], A[None, :]], R.mul[B[:, None], B[None, :]]),
    )
    labels = [(R.label(a), R.label(b)) for a, b in coords.tolist()]
    return FiniteRing(add, mul, index[R.zero, R.zero], index[R.one, R.one], labels, desc, (R,))


def make_amalgamation(R: FiniteRing, I: Ideal, max_size: int = DEFAULT_MAX_SIZE) -> FiniteRing:
    """Amalgamated duplication: the subring ``{(a, a+i)}`` of ``R x R``."""
    _checked_ideal(R, I)
    desc = Amalgamation(R.descriptor, _gens(I))
    hit = _lookup(desc, (R,))
    if hit is not None:
        return hit
    return _store(desc, _amalgamation(R, I, desc, max_size))


def _trivial_ext(R: FiniteRing, I: Ideal, desc: TrivialExt, max_size: int) -> FiniteRing:
    check_size(R.size * I.size, max_size)
    coords = np.array([(a, e) for a in range(R.size) for e in I.elements.tolist()], dtype=np.int64)
    A, E = coords[:, 0], coords[:, 1]
    cross = R.add[R.mul[A[:, None], E[None, :]], R.mul[E[:, None], A[None, :]]]
    index, add, mul = _pair_tables(
        R,
        coords,
        (R.add[A[:, None], A[None, :]], R.add[E[:, None], E[None, :]]),
        (R.mul[A[:, None], A[None, :]], cross),
    )
    labels = [(R.label(a), R.label(e)) for a, e in coords.tolist()]
    return FiniteRing(add, mul, index[R.zero, R.zero], index[R.one, R.zero], labels, desc, (R,))


def make_trivial_extension(R: FiniteRing, I: Ideal, max_size: int = DEFAULT_MAX_SIZE) -> FiniteRing:
    """Idealization ``R ⋉ I`` with ``(a,e)(b,f) = (ab, af+be)``."""
    _checked_ideal(R, I)
    desc = TrivialExt(R.descriptor, _gens(I))
    hit = _lookup(desc, (R,))
    if hit is not None:
        return hit
    return _store(desc, _trivial_ext(R, I, desc, max_size))


def _quotient(R: FiniteRing, J: Ideal, desc: Quotient) -> tuple[FiniteRing, RingHom]:
    rep = R.add[:, J.elements].min(axis=1)
    reps = np.unique(rep)
    cmap = np.searchsorted(reps, rep)
    add = cmap[R.add[reps[:, None], reps[None, :]]]
    mul = cmap[R.mul[reps[:, None], reps[None, :]]]
    labels = [R.label(int(x)) for x in reps]
    Q = FiniteRing(add, mul, cmap[R.zero], cmap[R.one], labels, desc, (R,), cmap)
    return Q, RingHom(R, Q, cmap)


def make_quotient(R: FiniteRing, J: Ideal) -> tuple[FiniteRing, RingHom]:
    """Quotient ring ``R/J`` and the canonical surjection."""
    _checked_ideal(R, J)
    desc = Quotient(R.descriptor, _gens(J))
    hit = _lookup(desc, (R,))
    if hit is None:
        hit = _store(desc, _quotient(R, J, desc)[0])
    return hit, RingHom(R, hit, hit.canonical_map)


@dataclass(frozen=True)
class LocalizedRing:
    """A ring of fractions ``R_P`` with its canonical map from ``R``.

    ``fractions[c]`` is the least ``(numerator, denominator)`` id pair in class ``c``.
    """

    ring: FiniteRing
    source: FiniteRing
    prime: Ideal
    hom: RingHom
    fractions: tuple[tuple[int, int], ...]


def _localization(R: FiniteRing, P: Ideal, desc: Localization) -> LocalizedRing:
    hit = _LOCALIZATIONS.get(desc)
    if hit is not None and hit.source is R:
        return hit
    if not is_prime(P):
        raise NotPrime(f"{P.gens_text()} is not a prime ideal of {R.descriptor}")
    S = np.flatnonzero(~P.mask)
    # kernel of R -> R_P: elements killed by some denominator
    N = np.any(R.mul[S, :] == R.zero, axis=0)
    repN = R.add[:, np.flatnonzero(N)].min(axis=1)
    one_class = repN[R.one]
    # u_s inverts s modulo N; it exists because s is regular in the finite ring R/N
    U = np.array([int(np.flatnonzero(repN[R.mul[s]] == one_class)[0]) for s in S])
    keys = repN[R.mul[:, U]]  # keys[r, k] = class of r / S[k]
    canon: dict[int, tuple[int, int]] = {}
    for r in range(R.size):
        for k in range(len(S)):
            canon.setdefault(int(keys[r, k]), (r, int(S[k])))
    order = sorted(canon, key=lambda c: canon[c])
    class_of_key = {c: i for i, c in enumerate(order)}
    cmap = np.array([class_of_key[int(c)] for c in repN])
    reps = np.array(order)  # each key is itself the least element of its class
    add = cmap[R.add[reps[:, None], reps[None, :]]]
    mul = cmap[R.mul[reps[:, None], reps[None, :]]]
    labels = [R.label(int(x)) for x in reps]
    L = FiniteRing(add, mul, cmap[R.zero], cmap[R.one], labels, desc, (R,), cmap)
    L = _store(desc, L)
    loc = LocalizedRing(L, R, P, RingHom(R, L, L.canonical_map), tuple(canon[c] for c in order))
    with _LOCK:
        hit = _LOCALIZATIONS.get(desc)
        if hit is not None and hit.source is R:
            return hit
        _LOCALIZATIONS[desc] = loc
        return loc


def localize(R: FiniteRing, P: Ideal) -> tuple[LocalizedRing, RingHom]:
    """Ring of fractions with denominators outside the prime ``P``."""
    _checked_ideal(R, P)
    loc = _localization(R, P, Localization(R.descriptor, _gens(P)))
    return loc, loc.hom


def require_proper(I: Ideal) -> None:
    if not I.is_proper:
        raise ImproperIdeal(f"{I.gens_text()} is the unit ideal of {I.ring.descriptor}")


# -- isomorphism (tests on tiny rings) -----------------------------------------


def _additive_order(R: FiniteRing, x: int) -> int:
    k, y = 1, x
    while y != R.zero:
        y = int(R.add[y, x])
        k += 1
    return k


def find_isomorphism(R: FiniteRing, S: FiniteRing, max_size: int = 64) -> RingHom | None:
    """Exhaustive search for a ring isomorphism ``R -> S``."""
    if R.size != S.size:
        return None
    if R.size > max_size:
        raise CapExceeded(f"isomorphism search is limited to rings of size {max_size}")
    n = R.size
    if n == 1:
        return RingHom(R, S, [S.zero])
    r_order = [_additive_order(R, x) for x in range(n)]
    s_order = [_additive_order(S, x) for x in range(n)]
    if sorted(r_order) != sorted(s_order):
        return None
    gens: list[int] = []
    span = {R.zero}
    for x in [R.one] + list(range(n)):
        if x not in span:
            gens.append(x)
            new = set(span)
            frontier = list(span)
            while frontier:
                nxt = []
                for y in frontier:
                    z = int(R.add[y, x])
                    if z not in new:
                        new.add(z)
                        nxt.append(z)
                frontier = nxt
            span = new

    def extend(partial: dict[int, int], g: int, h: int) -> dict[int, int] | None:
        out = dict(partial)
        frontier = list(partial.items())
        while frontier:
            nxt = []
            for x, fx in frontier:
                y, fy = int(R.add[x, g]), int(S.add[fx, h])
                if y in out:
                    if out[y] != fy:
                        return None
                else:
                    out[y] = fy
                    nxt.append((y, fy))
            frontier = nxt
        return out

    def search(i: int, partial: dict[int, int]) -> RingHom | None:
        if i == len(gens):
            images = [partial[x] for x in range(n)]
            if len(set(images)) != n:
                return None
            f = RingHom(R, S, images)
            return f if f.check() else None
        g = gens[i]
        cands = [S.one] if g == R.one else [y for y in range(n) if s_order[y] == r_order[g]]
        for h in cands:
            nxt = extend(partial, g, h)
            if nxt is not None:
                found = search(i + 1, nxt)
                if found is not None:
                    return found
        return None

    return search(0, {R.zero: S.zero})
