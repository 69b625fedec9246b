"""Buchberger engine and ideal-theoretic primitives.

The S-pair queue is pruned with the Gebauer-Moller update and pairs are
selected by (sugar, leading-term key), so runs are deterministic; the final
basis is inter-reduced and monic, hence the unique reduced Groebner basis
of the ideal for the given order.  Elimination, colon, saturation and
intersection all reduce to Groebner runs, the last three through a
degree-0 helper variable that is removed before returning.
"""

from __future__ import annotations

import heapq
import os
from typing import Iterable, Optional, Sequence

from .errors import NotMultihomogeneousError, PairBudgetExceeded
from .rings import (
    DEGREE_ANY,
    Polynomial,
    RingSpec,
    TermOrder,
    degrevlex_order,
    elimination_order,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
)

DEFAULT_PAIR_BUDGET = 200000

_budget_override: Optional[int] = None


def set_pair_budget(n: Optional[int]) -> None:
    """Set (or with None, clear) the process-wide S-pair budget override."""
    global _budget_override
    if n is not None and n <= 0:
        raise ValueError("pair budget must be positive")
    _budget_override = n


def resolve_pair_budget(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return explicit
    if _budget_override is not None:
        return _budget_override
    env = os.environ.get("MM_PAIR_BUDGET")
    if env:
        try:
            val = int(env)
        except ValueError:
            raise ValueError(f"MM_PAIR_BUDGET must be an integer, got {env!r}")
        if val <= 0:
            raise ValueError("MM_PAIR_BUDGET must be positive")
        return val
    return DEFAULT_PAIR_BUDGET


class Ideal:
    """Finitely generated ideal, optionally carrying a module shift.

    Generators keep their given order (zero generators dropped, duplicates
    removed); ``shift`` decorates the cyclic module B/J(-shift) and plays no
    role in set-theoretic operations.  Structural equality; use
    ``same_ideal`` for mathematical equality.
    """

    __slots__ = ("ring", "generators", "shift", "_hash")

    def __init__(
        self,
        ring: RingSpec,
        generators: Iterable[Polynomial],
        shift: Optional[tuple[int, ...]] = None,
    ):
        self.ring = ring
        seen = set()
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators = tuple(gens)
        if shift is not None:
            shift = tuple(shift)
            if len(shift) != ring.r:
                raise ValueError("shift length must equal the number of blocks")
        self.shift = shift
        self._hash = None

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and self.generators == other.generators
            and self.shift == other.shift
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.generators, self.shift))
        return self._hash

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        tail = f", shift={self.shift}" if self.shift is not None else ""
        return f"Ideal(({gens}){tail})"

    def with_shift(self, shift: Optional[tuple[int, ...]]) -> "Ideal":
        return Ideal(self.ring, self.generators, shift)

    def multidegrees(self) -> tuple:
        return tuple(g.multidegree() for g in self.generators)

    def require_multihomogeneous(self) -> None:
        for g in self.generators:
            if g.multidegree() is None:
                raise NotMultihomogeneousError(
                    f"generator {g} is not multihomogeneous"
                )

    def is_monomial_ideal(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, groebner_basis(self)).is_zero()

    def same_ideal(self, other: "Ideal") -> bool:
        """Mathematical equality via reduced-basis uniqueness."""
        if self.ring != other.ring:
            return False
        return groebner_basis(self).elements == groebner_basis(other).elements

    def is_unit_ideal(self) -> bool:
        g = groebner_basis(self).elements
        return len(g) == 1 and g[0].is_constant() and not g[0].is_zero()


class GroebnerBasis:
    """Reduced Groebner basis: monic, autoreduced, sorted by leading term."""

    __slots__ = ("ring", "order", "elements", "leading_exps")

    def __init__(self, ring: RingSpec, order: TermOrder, elements: Sequence[Polynomial]):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self.leading_exps = tuple(
            g.lead_exps(order) for g in self.elements
        )

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def lt_ideal_exps(self) -> tuple[tuple[int, ...], ...]:
        """Minimal generating exponents of the leading-term ideal."""
        return self.leading_exps

    def __repr__(self):
        return f"GroebnerBasis({list(self.elements)!r})"


# ---------------------------------------------------------------------------
# Reduction


def _neg_key(k: tuple) -> tuple:
    """Componentwise negation of an order key, for min-heap max extraction."""
    return tuple(
        -c if isinstance(c, int) else tuple(-x for x in c) for c in k
    )


def _full_reduce(
    work: dict,
    entries: list,
    order: TermOrder,
    p: int,
    sugar: Optional[int] = None,
    sugars: Optional[list] = None,
):
    """Tail-complete reduction of ``work`` (dict exps -> coeff) by ``entries``.

    Each entry is (lead_exps, tail_terms); entries are monic.  Returns
    (remainder dict, sugar).  Deterministic: the current largest term is
    reduced by the first entry (in list order) whose lead divides it.
    """
    key = order.key
    heap = [(_neg_key(key(e)), e) for e in work]
    heapq.heapify(heap)
    remainder: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        if e not in work:
            continue
        c = work.pop(e)
        reducer = None
        for idx, (lead, tail) in enumerate(entries):
            if mono_divides(lead, e):
                reducer = (idx, lead, tail)
                break
        if reducer is None:
            remainder[e] = c
            continue
        idx, lead, tail = reducer
        q = mono_div(e, lead)
        if sugar is not None and sugars is not None:
            s = sugars[idx] + sum(q)
            if s > sugar:
                sugar = s
        for te, tc in tail:
            ne = tuple(x + y for x, y in zip(q, te))
            prev = work.get(ne)
            if prev is None:
                v = (-c * tc) % p
                if v:
                    work[ne] = v
                    heapq.heappush(heap, (_neg_key(key(ne)), ne))
            else:
                v = (prev - c * tc) % p
                if v:
                    work[ne] = v
                else:
                    del work[ne]
    return remainder, sugar


def _entry_from_poly(g: Polynomial, order: TermOrder):
    """(lead_exps, tail_terms) for a monic polynomial under ``order``."""
    lead = g.lead_exps(order)
    tail = tuple((e, c) for e, c in g.terms if e != lead)
    return (lead, tail)


# ---------------------------------------------------------------------------
# Buchberger with Gebauer-Moller pruning and sugar selection

_gb_cache: dict = {}


def groebner_basis(
    J: Ideal | Sequence[Polynomial],
    order: Optional[TermOrder] = None,
    budget: Optional[int] = None,
) -> GroebnerBasis:
    if isinstance(J, Ideal):
        ring = J.ring
        gens = J.generators
    else:
        gens = tuple(J)
        if not gens:
            raise ValueError("cannot infer ring from an empty generator list")
        ring = gens[0].ring
    if order is None:
        order = degrevlex_order(ring)
    cache_key = (ring, frozenset(g.terms for g in gens), order.signature())
    hit = _gb_cache.get(cache_key)
    if hit is not None:
        return hit
    result = _buchberger(ring, gens, order, resolve_pair_budget(budget))
    _gb_cache[cache_key] = result
    return result


def _buchberger(
    ring: RingSpec, gens: Sequence[Polynomial], order: TermOrder, budget: int
) -> GroebnerBasis:
    p = ring.characteristic
    work_gens = sorted(
        (g.monic(order) for g in gens if not g.is_zero()),
        key=lambda g: (order.key(g.lead_exps(order)), g.terms),
    )
    if not work_gens:
        return GroebnerBasis(ring, order, ())
    if any(g.is_constant() for g in work_gens):
        return GroebnerBasis(ring, order, (Polynomial.one(ring),))

    entries: list = []  # (lead, tail) per basis element
    sugars: list[int] = []
    leads: list[tuple[int, ...]] = []
    pairs: list = []  # (sugar, lcm_key, i, j, lcm)
    processed = 0

    def add_element(g: Polynomial, sugar: int):
        """Gebauer-Moller update of the pair set, then append g."""
        t = len(entries)
        lead_t = g.lead_exps(order)
        lcms = [mono_lcm(leads[i], lead_t) for i in range(t)]
        # New pairs: scan candidates in index order, keep survivors (B-W Update).
        candidates = list(range(t))
        kept: list[int] = []
        removed = [False] * t
        for i in candidates:
            li = lcms[i]
            cop = mono_coprime(leads[i], lead_t)
            if not cop:
                dominated = False
                for j in candidates:
                    if j != i and not removed[j] and lcms[j] != li and mono_divides(lcms[j], li):
                        dominated = True
                        break
                if not dominated:
                    for j in kept:
                        if mono_divides(lcms[j], li) and lcms[j] != li:
                            dominated = True
                            break
                if dominated:
                    removed[i] = True
                    continue
                duplicate = any(lcms[j] == li for j in kept)
                if duplicate:
                    removed[i] = True
                    continue
            kept.append(i)
            removed[i] = False
        # Among kept pairs, drop those with coprime leads (product criterion),
        # and drop same-lcm partners of a coprime pair.
        coprime_lcms = {
            lcms[i] for i in kept if mono_coprime(leads[i], lead_t)
        }
        new_pairs = []
        for i in kept:
            if mono_coprime(leads[i], lead_t):
                continue
            if lcms[i] in coprime_lcms:
                continue
            li = lcms[i]
            s = max(
                sugars[i] + sum(li) - sum(leads[i]),
                sugar + sum(li) - sum(lead_t),
            )
            new_pairs.append((s, order.key(li), i, t, li))
        # Prune old pairs killed by the new lead (chain criterion).
        surviving = []
        for entry in pairs:
            _, _, i, j, lij = entry
            if (
                mono_divides(lead_t, lij)
                and mono_lcm(leads[i], lead_t) != lij
                and mono_lcm(leads[j], lead_t) != lij
            ):
                continue
            surviving.append(entry)
        surviving.extend(new_pairs)
        pairs[:] = surviving
        entries.append(_entry_from_poly(g, order))
        sugars.append(sugar)
        leads.append(lead_t)

    for g in work_gens:
        red, sg = _full_reduce(
            g.as_dict(), entries, order, p, sugar=g.total_degree(), sugars=sugars
        )
        if red:
            gg = Polynomial(ring, red.items()).monic(order)
            add_element(gg, sg)

    while pairs:
        best = min(pairs)
        pairs.remove(best)
        processed += 1
        if processed > budget:
            raise PairBudgetExceeded(
                f"S-pair budget {budget} exceeded",
                {
                    "pairs_processed": processed,
                    "basis_size": len(entries),
                    "pairs_remaining": len(pairs),
                    "budget": budget,
                },
            )
        s_sugar, _, i, j, lij = best
        li, tail_i = entries[i]
        lj, tail_j = entries[j]
        qi = mono_div(lij, li)
        qj = mono_div(lij, lj)
        work: dict = {}
        for te, tc in tail_i:
            e = tuple(x + y for x, y in zip(qi, te))
            work[e] = work.get(e, 0) + tc
        for te, tc in tail_j:
            e = tuple(x + y for x, y in zip(qj, te))
            work[e] = work.get(e, 0) - tc
        work = {e: c % p for e, c in work.items() if c % p}
        red, sg = _full_reduce(work, entries, order, p, sugar=s_sugar, sugars=sugars)
        if red:
            g = Polynomial(ring, red.items()).monic(order)
            if g.is_constant():
                return GroebnerBasis(ring, order, (Polynomial.one(ring),))
            add_element(g, sg)

    # Inter-reduce to the unique reduced basis.
    idx_by_lead = sorted(range(len(entries)), key=lambda i: order.key(leads[i]))
    minimal: list[int] = []
    for i in idx_by_lead:
        if not any(mono_divides(leads[j], leads[i]) for j in minimal):
            minimal.append(i)
    reduced: list[Polynomial] = []
    for i in minimal:
        others = [entries[j] for j in minimal if j != i]
        lead_i, tail_i = entries[i]
        red, _ = _full_reduce(dict(tail_i), others, order, p)
        red[lead_i] = 1
        reduced.append(Polynomial(ring, red.items()))
    reduced.sort(key=lambda g: order.key(g.lead_exps(order)))
    return GroebnerBasis(ring, order, reduced)


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Unique remainder of p modulo G under G's order."""
    if p.ring != G.ring:
        raise ValueError("polynomial and basis over different rings")
    if p.is_zero() or not G.elements:
        return p
    entries = [_entry_from_poly(g, G.order) for g in G.elements]
    red, _ = _full_reduce(p.as_dict(), entries, G.order, p.ring.characteristic)
    return Polynomial(p.ring, red.items())


# ---------------------------------------------------------------------------
# Elimination and the derived ideal operations


def elimination_ideal(J: Ideal, drop_names: Iterable[str]) -> Ideal:
    """Generators of J intersected with the subring omitting ``drop_names``."""
    drop = tuple(dict.fromkeys(drop_names))
    if not drop:
        return J
    ring = J.ring
    indices = [ring.var_index(n) for n in drop]
    order = elimination_order(ring, drop)
    G = groebner_basis(J, order)
    kept = [
        g
        for g in G.elements
        if all(all(e[i] == 0 for i in indices) for e, _ in g.terms)
    ]
    return Ideal(ring, kept)


def _lift(p: Polynomial, ext: RingSpec) -> Polynomial:
    return Polynomial(ext, ((e + (0,), c) for e, c in p.terms))


def _project(p: Polynomial, ring: RingSpec) -> Polynomial:
    for e, _ in p.terms:
        if e[-1] != 0:
            raise AssertionError("projection of a polynomial involving the helper")
    return Polynomial(ring, ((e[:-1], c) for e, c in p.terms))


def ideal_intersection(J1: Ideal, J2: Ideal) -> Ideal:
    """J1 ∩ J2 via w·J1 + (1−w)·J2, eliminating the helper w."""
    if J1.ring != J2.ring:
        raise ValueError("ideals over different rings")
    ring = J1.ring
    if not J1.generators or not J2.generators:
        return Ideal(ring, ())
    ext = ring.extended("_w")
    wname = ext.variables[-1]
    w = Polynomial.variable(ext, wname)
    one_minus_w = Polynomial.one(ext) - w
    gens = [w * _lift(g, ext) for g in J1.generators]
    gens += [one_minus_w * _lift(g, ext) for g in J2.generators]
    eliminated = elimination_ideal(Ideal(ext, gens), (wname,))
    return Ideal(ring, [_project(g, ring) for g in eliminated.generators])


def _exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f when f divides g exactly (leading terms cancel stepwise)."""
    ring = g.ring
    p = ring.characteristic
    lf = f.lead_exps()
    cf_inv = pow(f.lead_coeff(), p - 2, p)
    quotient: dict = {}
    rest = g
    while not rest.is_zero():
        lg = rest.lead_exps()
        if not mono_divides(lf, lg):
            raise ArithmeticError("inexact polynomial division")
        q = mono_div(lg, lf)
        c = rest.lead_coeff() * cf_inv % p
        quotient[q] = c
        rest = rest - Polynomial(ring, ((q, c),)) * f
    return Polynomial(ring, quotient.items())


def ideal_quotient(J: Ideal, f: Polynomial) -> Ideal:
    """(J : f) = {g : g·f ∈ J}."""
    if f.ring != J.ring:
        raise ValueError("polynomial over a different ring")
    if f.is_zero():
        raise ValueError("colon by zero")
    if f.is_constant():
        return Ideal(J.ring, groebner_basis(J).elements)
    if not J.generators:
        return Ideal(J.ring, ())
    inter = ideal_intersection(J, Ideal(J.ring, (f,)))
    gens = [_exact_divide(g, f) for g in inter.generators]
    return Ideal(J.ring, groebner_basis(Ideal(J.ring, gens)).elements)


def _saturate_by_element(J: Ideal, k: Polynomial) -> Ideal:
    """(J : k^∞) via J + (1 − w·k), eliminating the helper w."""
    ring = J.ring
    if k.is_constant():
        return Ideal(ring, groebner_basis(J).elements)
    ext = ring.extended("_w")
    wname = ext.variables[-1]
    w = Polynomial.variable(ext, wname)
    gens = [_lift(g, ext) for g in J.generators]
    gens.append(Polynomial.one(ext) - w * _lift(k, ext))
    eliminated = elimination_ideal(Ideal(ext, gens), (wname,))
    return Ideal(ring, [_project(g, ring) for g in eliminated.generators])


def saturation(J: Ideal, K: Ideal) -> Ideal:
    """(J : K^∞) as the intersection of per-generator saturations."""
    if J.ring != K.ring:
        raise ValueError("ideals over different rings")
    if not K.generators:
        raise ValueError("saturation by the zero ideal")
    result: Optional[Ideal] = None
    for k in K.generators:
        part = _saturate_by_element(J, k)
        if result is None:
            result = part
        elif part.generators == result.generators:
            continue
        elif part.is_unit_ideal():
            continue
        elif result.is_unit_ideal():
            result = part
        else:
            inter = ideal_intersection(result, part)
            result = Ideal(J.ring, groebner_basis(inter).elements)
    assert result is not None
    return Ideal(J.ring, groebner_basis(result).elements)
