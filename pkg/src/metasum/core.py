"""Exact arithmetic in finite metacyclic groups.

A parameter tuple ``(m, s, t, r)`` with ``r**s = 1 (mod m)`` and
``m | t*(r-1)`` presents the group

    G = < a, b | a**m = 1,  b**s = a**t,  b**-1 * a * b = a**r >

of order ``m*s``.  Those two congruences are exactly what is needed for the
presented group to have order ``m*s``; every element then has a unique normal
form ``a**i * b**j`` with ``0 <= i < m`` and ``0 <= j < s``, represented here
as the plain tuple ``(i, j)``.

Multiplication folds products back into normal form.  Conjugation by ``b``
sends ``a`` to ``a**r``, so moving ``a**k`` leftward through ``b**j`` twists
the exponent by ``r**-j`` (the inverse exists because ``r**s = 1 (mod m)``
forces ``gcd(r, m) = 1``).  Overflow of the ``b`` exponent past ``s``
contributes ``b**s = a**t``, and ``a**t`` is central because ``m | t*(r-1)``,
so it can be absorbed into the ``a`` exponent:

    (i, j) * (k, l) = ((i + k*r**-j + t*((j + l) // s)) % m,  (j + l) % s)

The module has two layers:

* element-level functions (``mul``, ``inverse``, ``power``, ``conjugate``,
  ``element_order``, ``generate_subgroup``) that work on normal-form tuples
  and are used by all structural constructions; and
* a dense :class:`CayleyTable` built by independent vectorised arithmetic,
  which backs the brute-force oracles (``bruteforce_center``,
  ``bruteforce_derived``, ``normalizer``, ``commutator_span``).  The oracles
  scan the full multiplication table with no structural shortcuts, so they
  can cross-check every closed-form formula in :mod:`metasum.structure`.

The element-enumeration cap (default ``10**6``, overridable through the
``METASUM_CAP`` environment variable or per-call arguments) bounds every
operation that would materialise the whole group.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

import numpy as np

from .errors import CapExceeded, ConstraintViolation, NotAPower

Element = tuple[int, int]

DEFAULT_CAP = 10**6
CAP_ENV_VAR = "METASUM_CAP"


def default_cap() -> int:
    """Element-enumeration cap, honouring the METASUM_CAP environment variable."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ConstraintViolation(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ConstraintViolation(f"{CAP_ENV_VAR} must be positive, got {cap}")
    return cap


@dataclass(frozen=True)
class MetacyclicParams:
    """Canonicalised presentation parameters (m, s, t, r).

    Instances always satisfy the presentation constraints; construct via
    :func:`validate` for friendly canonicalisation of out-of-range t and r.
    """

    m: int
    s: int
    t: int
    r: int

    def __post_init__(self) -> None:
        m, s, t, r = self.m, self.s, self.t, self.r
        if m < 1 or s < 1:
            raise ConstraintViolation(f"m and s must be positive, got m={m}, s={s}")
        if not 0 <= t < m:
            raise ConstraintViolation(f"t must lie in [0, m), got t={t} with m={m}")
        if not 1 <= r <= m:
            raise ConstraintViolation(f"r must lie in [1, m], got r={r} with m={m}")
        if pow(r, s, m) != 1 % m:
            raise ConstraintViolation(f"r**s = {r}**{s} is not 1 modulo {m}")
        if (t * (r - 1)) % m != 0:
            raise ConstraintViolation(f"{m} does not divide t*(r-1) = {t}*({r}-1)")

    @property
    def order(self) -> int:
        """Order of the presented group."""
        return self.m * self.s

    @cached_property
    def rinv(self) -> int:
        """Inverse of r modulo m (exists since r**s = 1 mod m)."""
        return pow(self.r, -1, self.m)

    @cached_property
    def _rinv_pows(self) -> tuple[int, ...]:
        """r**-j mod m for 0 <= j < s, the twist factors used by mul."""
        m, s = self.m, self.s
        pows = [1 % m]
        for _ in range(s - 1):
            pows.append(pows[-1] * self.rinv % m)
        return tuple(pows)


def validate(m: int, s: int, t: int, r: int) -> MetacyclicParams:
    """Canonicalise and validate a parameter tuple.

    t is reduced modulo m; r is reduced modulo m into [1, m] (so r and
    r + m present the same group).  Raises ConstraintViolation naming the
    failed congruence otherwise.
    """
    if m < 1 or s < 1:
        raise ConstraintViolation(f"m and s must be positive, got m={m}, s={s}")
    return MetacyclicParams(m=m, s=s, t=t % m, r=(r - 1) % m + 1)


def identity(p: MetacyclicParams) -> Element:
    return (0, 0)


def mul(p: MetacyclicParams, x: Element, y: Element) -> Element:
    """Product of two normal forms."""
    i, j = x
    k, l = y
    jl = j + l
    return ((i + k * p._rinv_pows[j] + p.t * (jl // p.s)) % p.m, jl % p.s)


def inverse(p: MetacyclicParams, x: Element) -> Element:
    """Inverse of a normal form.

    With l = -j mod s the b-exponents fold exactly once unless j = 0, so the
    a-exponent must cancel i plus that central contribution, pre-twisted by
    r**j to survive the move through b**j.
    """
    i, j = x
    carry = p.t if j else 0
    k = (-(i + carry) * pow(p.r, j, p.m)) % p.m
    return (k, (-j) % p.s)


def power(p: MetacyclicParams, x: Element, n: int) -> Element:
    """n-th power by binary exponentiation; negative n inverts first."""
    if n < 0:
        return power(p, inverse(p, x), -n)
    acc = (0, 0)
    base = x
    while n:
        if n & 1:
            acc = mul(p, acc, base)
        base = mul(p, base, base)
        n >>= 1
    return acc


def conjugate(p: MetacyclicParams, g: Element, h: Element) -> Element:
    """h**-1 * g * h."""
    hi = inverse(p, h)
    return mul(p, mul(p, hi, g), h)


def commutator(p: MetacyclicParams, x: Element, y: Element) -> Element:
    """[x, y] = x**-1 * y**-1 * x * y."""
    return mul(p, mul(p, inverse(p, x), inverse(p, y)), mul(p, x, y))


def element_order(p: MetacyclicParams, x: Element) -> int:
    """Multiplicative order of x (at most m*s steps)."""
    e = (0, 0)
    cur = x
    n = 1
    while cur != e:
        cur = mul(p, cur, x)
        n += 1
    return n


def enumerate_elements(p: MetacyclicParams, cap: int | None = None) -> list[Element]:
    """All m*s normal forms in lexicographic order; CapExceeded if too many."""
    limit = default_cap() if cap is None else cap
    if p.order > limit:
        raise CapExceeded(f"group order {p.order} exceeds enumeration cap {limit}")
    return [(i, j) for i in range(p.m) for j in range(p.s)]


def element_log(p: MetacyclicParams, base: Element, target: Element) -> int:
    """Least e >= 0 with base**e == target, or NotAPower.

    Walks the cyclic group generated by ``base``; cost is bounded by the
    order of ``base``, which is tiny for every use in this package.
    """
    cur = (0, 0)
    for e in range(element_order(p, base)):
        if cur == target:
            return e
        cur = mul(p, cur, base)
    raise NotAPower(f"{target} is not a power of {base}")


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as an immutable element set.

    Equality and hashing consider only the element set; ``generator`` is a
    bookkeeping witness (set exactly when the subgroup was produced from a
    single generator) and never participates in identity.
    """

    elements: frozenset[Element]
    generator: Element | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def key(self) -> tuple[Element, ...]:
        """Canonical sort key: the sorted element tuple."""
        return tuple(sorted(self.elements))

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __contains__(self, x: Element) -> bool:
        return x in self.elements

    def __iter__(self) -> Iterator[Element]:
        return iter(self.key)

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements


def trivial_subgroup(p: MetacyclicParams) -> Subgroup:
    return Subgroup(frozenset({(0, 0)}), generator=(0, 0))


def generate_subgroup(
    p: MetacyclicParams, generators: Iterable[Element], cap: int | None = None
) -> Subgroup:
    """Subgroup generated by the given elements (orbit closure).

    Closure under right multiplication by the generators suffices in a finite
    group, and costs O(result size * number of generators) products.  The
    ``generator`` field of the result is set exactly when a single generator
    was supplied.
    """
    gens = list(generators)
    limit = default_cap() if cap is None else cap
    seen: set[Element] = {(0, 0)}
    frontier: list[Element] = [(0, 0)]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = mul(p, x, g)
            if y not in seen:
                if len(seen) >= limit:
                    raise CapExceeded(f"subgroup closure exceeds cap {limit}")
                seen.add(y)
                frontier.append(y)
    gen = gens[0] if len(gens) == 1 else None
    return Subgroup(frozenset(seen), generator=gen)


def cyclic_subgroup(p: MetacyclicParams, g: Element, cap: int | None = None) -> Subgroup:
    """Cyclic subgroup generated by g (generator field always set)."""
    return generate_subgroup(p, [g], cap=cap)


def conjugate_subgroup(p: MetacyclicParams, sub: Subgroup, h: Element) -> Subgroup:
    """h**-1 * sub * h, conjugating the generator witness along."""
    elems = frozenset(conjugate(p, x, h) for x in sub.elements)
    gen = conjugate(p, sub.generator, h) if sub.generator is not None else None
    return Subgroup(elems, generator=gen)


# --------------------------------------------------------------------------
# Dense Cayley-table layer: brute-force oracles.
# --------------------------------------------------------------------------


class CayleyTable:
    """Dense multiplication table over element indices ``i*s + j``.

    Built by vectorised modular arithmetic (independent of :func:`mul`; the
    two are cross-checked in the test suite).  All arrays are frozen after
    construction.  Intended for desk-scale groups; memory grows with the
    square of the group order.
    """

    def __init__(self, p: MetacyclicParams, cap: int | None = None):
        limit = default_cap() if cap is None else cap
        n = p.order
        if n > limit:
            raise CapExceeded(f"group order {n} exceeds enumeration cap {limit}")
        self.params = p
        self.n = n
        m, s, t = p.m, p.s, p.t
        iv = np.repeat(np.arange(m, dtype=np.int64), s)
        jv = np.tile(np.arange(s, dtype=np.int64), m)
        twist = np.array(p._rinv_pows, dtype=np.int64)[jv]  # r**-j per row element
        jsum = jv[:, None] + jv[None, :]
        i2 = (iv[:, None] + iv[None, :] * twist[:, None] + t * (jsum // s)) % m
        self.table = i2 * s + jsum % s
        self.inv = np.argmax(self.table == 0, axis=1)
        self.table.setflags(write=False)
        self.inv.setflags(write=False)

    # -- element/index conversions ------------------------------------------

    def idx(self, x: Element) -> int:
        return x[0] * self.params.s + x[1]

    def el(self, i: int) -> Element:
        return divmod(int(i), self.params.s)

    def idx_array(self, elems: Iterable[Element]) -> np.ndarray:
        s = self.params.s
        return np.array(sorted(i * s + j for i, j in elems), dtype=np.int64)

    def subgroup(self, idxs: np.ndarray, generator: Element | None = None) -> Subgroup:
        return Subgroup(frozenset(self.el(i) for i in np.asarray(idxs).ravel()), generator=generator)

    # -- cached whole-group structures ---------------------------------------

    @cached_property
    def conj(self) -> np.ndarray:
        """conj[h, x] = h**-1 * x * h."""
        tab = self.table
        left = tab[self.inv[:, None], np.arange(self.n)[None, :]]
        out = tab[left, np.arange(self.n)[:, None]]
        out.setflags(write=False)
        return out

    @cached_property
    def orders(self) -> np.ndarray:
        """Multiplicative order of every element."""
        tab = self.table
        out = np.zeros(self.n, dtype=np.int64)
        alive = np.arange(self.n)
        cur = alive.copy()
        k = 1
        while alive.size:
            done = cur == 0
            out[alive[done]] = k
            alive = alive[~done]
            cur = cur[~done]
            cur = tab[cur, alive]
            k += 1
        out.setflags(write=False)
        return out

    # -- brute-force computations ---------------------------------------------

    def closure_idx(self, seed: np.ndarray) -> np.ndarray:
        """Subgroup generated by the seed indices: iterate pairwise products."""
        cur = np.union1d(np.asarray(seed, dtype=np.int64), np.array([0], dtype=np.int64))
        while True:
            prod = self.table[np.ix_(cur, cur)].ravel()
            nxt = np.union1d(cur, prod)
            if nxt.size == cur.size:
                return nxt
            cur = nxt

    @cached_property
    def center_idx(self) -> np.ndarray:
        mask = (self.table == self.table.T).all(axis=1)
        out = np.nonzero(mask)[0]
        out.setflags(write=False)
        return out

    @cached_property
    def derived_idx(self) -> np.ndarray:
        tab = self.table
        xy = tab
        x1y1 = tab[self.inv[:, None], self.inv[None, :]]
        comms = np.unique(tab[x1y1, xy])
        out = self.closure_idx(comms)
        out.setflags(write=False)
        return out

    def normalizer_idx(self, members: np.ndarray) -> np.ndarray:
        member_mask = np.zeros(self.n, dtype=bool)
        member_mask[members] = True
        ok = member_mask[self.conj[:, members]].all(axis=1)
        return np.nonzero(ok)[0]

    def commutator_span_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        tab = self.table
        xy = tab[np.ix_(a, b)]
        x1y1 = tab[self.inv[a][:, None], self.inv[b][None, :]]
        comms = np.unique(tab[x1y1, xy])
        return self.closure_idx(comms)

    def commute(self, a: np.ndarray, b: np.ndarray) -> bool:
        """True iff every element of a commutes with every element of b."""
        return bool((self.table[np.ix_(a, b)] == self.table[np.ix_(b, a)].T).all())


@lru_cache(maxsize=64)
def _cached_table(p: MetacyclicParams) -> CayleyTable:
    return CayleyTable(p, cap=p.order)


def cayley_table(p: MetacyclicParams, cap: int | None = None) -> CayleyTable:
    """Shared dense table for p (cached; respects the enumeration cap)."""
    limit = default_cap() if cap is None else cap
    if p.order > limit:
        raise CapExceeded(f"group order {p.order} exceeds enumeration cap {limit}")
    return _cached_table(p)


def bruteforce_center(p: MetacyclicParams, cap: int | None = None) -> Subgroup:
    """Center by scanning the full multiplication table for commuting rows."""
    tab = cayley_table(p, cap)
    return tab.subgroup(tab.center_idx)


def bruteforce_derived(p: MetacyclicParams, cap: int | None = None) -> Subgroup:
    """Derived subgroup: closure of the set of all n**2 commutators."""
    tab = cayley_table(p, cap)
    return tab.subgroup(tab.derived_idx)


def normalizer(p: MetacyclicParams, sub: Subgroup, cap: int | None = None) -> Subgroup:
    """N_G(sub) = {g : sub**g = sub} by scanning all group elements."""
    tab = cayley_table(p, cap)
    return tab.subgroup(tab.normalizer_idx(tab.idx_array(sub.elements)))


def commutator_span(
    p: MetacyclicParams, a: Subgroup, b: Subgroup, cap: int | None = None
) -> Subgroup:
    """Subgroup generated by all commutators [x, y], x in a, y in b."""
    tab = cayley_table(p, cap)
    return tab.subgroup(
        tab.commutator_span_idx(tab.idx_array(a.elements), tab.idx_array(b.elements))
    )
