"""Active-sum presentations, their enumeration, and the isomorphism verdict.

The *active sum* S of a conjugation-closed family of subgroups is the free
product of the members modulo all relators ``h**-1 g h (g**h)**-1`` with h in
F1, g in F2 (the inner conjugation action made internal).  For families of
cyclic subgroups, S is presented on one generator ``x_F`` per member F with

* a power relator  ``x_F**|F|``, and
* one conjugation relator per ordered pair (F1, F2): writing h = g_F1 and
  g = g_F2 for the chosen generators, locate F2**h in the family and the
  exponent e with  g**h = (g_{F2**h})**e; the relator is
  ``x_F1**-1 x_F2 x_F1 (x_{F2**h})**-e``.

Generator-level relators suffice; the elementwise relators follow:

* Powers of g.  Conjugation by a fixed h is a homomorphism, so from
  x_F1**-1 x_F2 x_F1 = y**e  (y the symbol of F2**h) we get
  x_F1**-1 x_F2**l x_F1 = y**(e*l) for every l, which is exactly the relator
  for the pair (h, g**l): discrete logarithms compose along the isomorphism
  F2 -> F2**h, g |-> g**h.
* Powers of h.  Conjugating the generator relation by x_F1 again rewrites
  x_F1**-2 x_F2 x_F1**2 through the relator of the pair (h, -) followed by
  the relator of (h, -) at the member F2**h, and the composite exponent is
  the discrete log of g**(h**2) because conjugation maps compose; induction
  extends this to every power h**k.  Since every element of the cyclic F1 is
  a power of h, all pairs (h', g') are covered.

The exhaustive mode emits the relator of every element pair directly (each
element written as a power of its member's generator) and exists solely as a
correctness oracle for the reduction above; both presentations must
enumerate to the same order.

``verdict`` ties everything together: family checks (generating, regular,
independent), the Ganea criterion, the coset-enumerated |S|, and the
abelianizations of both sides.  It also asserts the two implications the
theory guarantees — (generating and regular and independent and Ganea)
implies |S| = |G|, and failed independence implies a visible discrepancy
(either |S^ab| != |G^ab| or |S| != |G|) — raising InternalCheckError on any
violation, since those would signal an implementation bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import (
    Element,
    MetacyclicParams,
    Subgroup,
    conjugate,
    conjugate_subgroup,
    element_log,
    power,
)
from .coset import todd_coxeter as _enumerate_raw
from .errors import (
    CosetLimitExceeded,
    DiscreteLogFailure,
    InternalCheckError,
    NotAPower,
)
from .families import (
    Family,
    abelianized_group,
    is_generating,
    is_independent,
    is_regular,
)
from .lattice import AbelianStructure, IntMatrix, abelian_quotient
from .structure import ganea_check

DEFAULT_COSET_FACTOR = 10  # max_cosets defaults to this multiple of |G|


def discrete_log(p: MetacyclicParams, target: Element, base: Element) -> int:
    """Least e >= 0 with base**e == target; NotAPower when target is outside <base>."""
    return element_log(p, base, target)


@dataclass(frozen=True)
class PresentationGenerator:
    """One presentation symbol: the member's order and chosen generator."""

    symbol: str
    order: int
    element: Element


@dataclass(frozen=True)
class FpPresentation:
    """Finite presentation with freely reduced relators over signed symbols.

    Words are tuples of nonzero integers: ``k`` stands for the k-th generator
    (1-based) and ``-k`` for its inverse.  ``relators`` contains the power
    relator of every generator followed by the conjugation relators in
    ordered-pair order; freely trivial words (the self-pairs) are dropped.
    """

    generators: tuple[PresentationGenerator, ...]
    relators: tuple[tuple[int, ...], ...]

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def dump(self) -> str:
        """Stable text form: ``gen x0 order 3`` lines, then one relator per
        line as a word in ``x0`` / ``X0`` (capital = inverse)."""
        lines = [f"gen {g.symbol} order {g.order}" for g in self.generators]
        for word in self.relators:
            lines.append(
                " ".join(
                    f"x{k - 1}" if k > 0 else f"X{-k - 1}" for k in word
                )
            )
        return "\n".join(lines)


def _free_reduce_signed(word: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for k in word:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def _conjugation_relator(
    p: MetacyclicParams,
    index_of: dict[tuple[Subgroup, int], int],
    family: Family,
    i1: int,
    i2: int,
    h_exp: int,
    g_exp: int,
) -> tuple[int, ...]:
    """Relator of the pair (h, g) = (g_F1**h_exp, g_F2**g_exp).

    Expresses g**h inside the family member F2**h:  the relator says
    x1**-h_exp x2**g_exp x1**h_exp equals the image written in the symbol of
    F2**h.  Conjugation acts within F2's own component, which disambiguates
    coincident members from different components.  Raises DiscreteLogFailure
    if the image misses the target's cyclic generator — impossible for a
    valid family, so it signals a bug.
    """
    members = family.subgroups
    f1, f2 = members[i1], members[i2]
    h = power(p, f1.generator, h_exp)
    g = power(p, f2.generator, g_exp)
    target = conjugate_subgroup(p, f2, h)
    try:
        i_target = index_of[(target, family.components[i2])]
    except KeyError:
        raise ValueError("family is not conjugation closed") from None
    image = conjugate(p, g, h)
    try:
        e = element_log(p, members[i_target].generator, image)
    except NotAPower as exc:
        raise DiscreteLogFailure(
            f"conjugate {image} of {g} by {h} is not a power of the "
            f"generator of the target member {members[i_target].key}"
        ) from exc
    word = (
        [-(i1 + 1)] * h_exp
        + [i2 + 1] * g_exp
        + [i1 + 1] * h_exp
        + [-(i_target + 1)] * e
    )
    return _free_reduce_signed(word)


def build_active_sum_presentation(
    p: MetacyclicParams, family: Family, exhaustive: bool = False
) -> FpPresentation:
    """Present the active sum of a conjugation-closed family of cyclic subgroups.

    Default mode emits one conjugation relator per ordered member pair (the
    generator-level relators); ``exhaustive=True`` emits one per element pair
    instead, as an oracle.  Member order (and hence generator numbering) is
    the family's canonical order, so output is reproducible byte for byte.
    """
    members = family.subgroups
    for sub in members:
        if sub.generator is None:
            raise ValueError(
                "active-sum presentations need cyclic members with generator witnesses"
            )
    index_of = {pair: i for i, pair in enumerate(family.indexed_members())}
    gens = tuple(
        PresentationGenerator(symbol=f"x{i}", order=sub.order, element=sub.generator)
        for i, sub in enumerate(members)
    )
    relators: list[tuple[int, ...]] = [
        (i + 1,) * sub.order for i, sub in enumerate(members)
    ]
    for i1 in range(len(members)):
        for i2 in range(len(members)):
            if exhaustive:
                pairs = (
                    (h_exp, g_exp)
                    for h_exp in range(members[i1].order)
                    for g_exp in range(members[i2].order)
                )
            else:
                pairs = ((1, 1),)
            for h_exp, g_exp in pairs:
                word = _conjugation_relator(p, index_of, family, i1, i2, h_exp, g_exp)
                if word:
                    relators.append(word)
    return FpPresentation(generators=gens, relators=tuple(relators))


def todd_coxeter(
    pres: FpPresentation, max_cosets: int, strategy: str = "hlt"
) -> int:
    """Order of the presented group; CosetLimitExceeded when it cannot close."""
    return _enumerate_raw(pres.ngens, pres.relators, max_cosets, strategy=strategy)


def abelianized_order(pres: FpPresentation) -> AbelianStructure:
    """Invariant factors of the presentation's abelianization (exponent sums + SNF)."""
    n = pres.ngens
    if n == 0:
        return abelian_quotient(IntMatrix(entries=()))
    rows = []
    for word in pres.relators:  # never empty: every generator has a power relator
        row = [0] * n
        for k in word:
            row[abs(k) - 1] += 1 if k > 0 else -1
        rows.append(row)
    return abelian_quotient(IntMatrix.from_rows(rows))


@dataclass(frozen=True)
class Verdict:
    """All checks for one (group, family) pair plus the enumerated order.

    ``active_sum_order`` is None when enumeration hit the coset limit; then
    ``isomorphic`` is False and the caller should treat the verdict as
    partial.
    """

    params: MetacyclicParams
    generating: bool
    regular: bool
    independent: bool
    ganea_surjective: bool
    group_order: int
    active_sum_order: int | None
    abelianized_order_s: int | None
    abelianized_order_g: int
    isomorphic: bool


def verdict(
    p: MetacyclicParams,
    family: Family,
    max_cosets: int | None = None,
    cap: int | None = None,
    strategy: str = "hlt",
) -> Verdict:
    """Assemble the isomorphism verdict for a family.

    The coset limit defaults to 10x the group order (the expected answer is
    exactly the group order).  A limit hit yields a partial verdict rather
    than an exception, so scans can flag the row and continue.
    """
    limit = DEFAULT_COSET_FACTOR * p.order if max_cosets is None else max_cosets
    generating = is_generating(p, family)
    regular = is_regular(p, family, cap=cap).regular
    independent = is_independent(p, family, cap=cap).independent
    ganea = ganea_check(p).surjective
    pres = build_active_sum_presentation(p, family)
    ab_s = abelianized_order(pres).order
    ab_g = abelianized_group(p).structure.order
    if ab_g is None:
        raise InternalCheckError("G/G' of a finite group must be finite")
    try:
        order_s: int | None = todd_coxeter(pres, limit, strategy=strategy)
    except CosetLimitExceeded:
        order_s = None
    isomorphic = order_s == p.order
    if generating and regular and independent and ganea and order_s is not None:
        if not isomorphic:
            raise InternalCheckError(
                f"family passes every criterion yet |S| = {order_s} != {p.order}"
            )
    if not independent and order_s is not None:
        if ab_s == ab_g and order_s == p.order:
            raise InternalCheckError(
                "failed independence must leave a visible discrepancy, but "
                f"|S^ab| = {ab_s} = |G^ab| and |S| = {order_s} = |G|"
            )
    return Verdict(
        params=p,
        generating=generating,
        regular=regular,
        independent=independent,
        ganea_surjective=ganea,
        group_order=p.order,
        active_sum_order=order_s,
        abelianized_order_s=ab_s,
        abelianized_order_g=ab_g,
        isomorphic=isomorphic,
    )
