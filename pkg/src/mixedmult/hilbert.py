"""Hilbert series numerators, mixed multiplicities, Hilbert polynomials.

The series of B/J over the full denominator prod_i (1-t_i)^(d_i+1) has a
unique Laurent numerator (the K-polynomial), computed by reducing to the
leading-term ideal and running the colon recursion
K(J' + (m)) = K(J') - t^deg(m) * K(J' : m) on minimal monomial generators.
Mixed multiplicities are read off the substitution t_i = 1 - s_i: every
component of K(1-s) of total degree below codim vanishes (asserted), and
the codim-degree coefficients are the multiplicities, indexed by type
n = D - exponent - 1.  The Hilbert polynomial comes from the same
numerator through the binomial expansion of 1/(1-t)^D, with exact
rational coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .errors import EnumerationGuardError, InvariantViolation
from .groebner import GroebnerBasis, Ideal, groebner_basis
from .rings import LaurentPolyZ, RingSpec, mono_divides

DIMENSION_GUARD_VARS = 16
PIECE_GUARD = 10**7


@dataclass(frozen=True)
class HilbertSeriesRep:
    """Numerator over the fixed full denominator prod (1-t_i)^(D_i)."""

    ring: RingSpec
    numerator: LaurentPolyZ
    denominator_exponents: tuple[int, ...]
    shift: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class MixedMultTable:
    """Type-indexed multiplicities with the governing dimension.

    Series route: keys n >= -1 componentwise with |n+1| = dimension (Krull
    dimension of the quotient).  Polynomial route: keys n >= 0 with
    |n| = dimension (dim of the relevant support); an empty polynomial
    table carries dimension None (support empty, polynomial zero).  Only
    positive values are stored; ``value`` applies the |n+1| > d convention.
    """

    dimension: Optional[int]
    route: str
    entries: dict[tuple[int, ...], int] = field(default_factory=dict)

    def value(self, n: tuple[int, ...]) -> int:
        return self.entries.get(tuple(n), 0)

    def total(self) -> int:
        return sum(self.entries.values())


@dataclass(frozen=True)
class HilbertPolynomialRep:
    """Exact rational polynomial in the block coordinates.

    Agrees with graded piece dimensions at every point componentwise >=
    validity_threshold.  ``coefficients`` maps exponent vectors to nonzero
    Fractions; the zero polynomial is the empty map.
    """

    ring: RingSpec
    coefficients: dict[tuple[int, ...], Fraction]
    validity_threshold: tuple[int, ...]

    def total_degree(self) -> Optional[int]:
        if not self.coefficients:
            return None
        return max(sum(e) for e in self.coefficients)

    def evaluate(self, nu: tuple[int, ...]) -> Fraction:
        acc = Fraction(0)
        for e, c in self.coefficients.items():
            term = c
            for x, k in zip(nu, e):
                term *= Fraction(x) ** k
            acc += term
        return acc

    def evaluate_int(self, nu: tuple[int, ...]) -> int:
        v = self.evaluate(nu)
        if v.denominator != 1:
            raise InvariantViolation(
                f"Hilbert polynomial non-integral at {nu}: {v}"
            )
        return int(v)

    def leading_table(self) -> MixedMultTable:
        """Polynomial-route multiplicities n! * (coefficient of X^n)."""
        deg = self.total_degree()
        if deg is None:
            return MixedMultTable(dimension=None, route="polynomial")
        entries: dict[tuple[int, ...], int] = {}
        for e, c in self.coefficients.items():
            if sum(e) != deg:
                continue
            v = c * math.prod(math.factorial(k) for k in e)
            if v.denominator != 1:
                raise InvariantViolation(f"non-integral multiplicity at {e}: {v}")
            vi = int(v)
            if vi < 0:
                raise InvariantViolation(f"negative multiplicity at {e}: {vi}")
            if vi:
                entries[e] = vi
        if not entries:
            raise InvariantViolation("leading form vanished identically")
        return MixedMultTable(dimension=deg, route="polynomial", entries=entries)


# ---------------------------------------------------------------------------
# Dimension of a monomial quotient


def _minimalize(gens: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


def _min_hitting_set(supports: tuple[frozenset[int], ...], memo: dict) -> int:
    """Minimum number of variables meeting every support set."""
    if not supports:
        return 0
    key = supports
    hit = memo.get(key)
    if hit is not None:
        return hit
    pivot = min(supports, key=lambda s: (len(s), sorted(s)))
    best = None
    for v in sorted(pivot):
        rest = tuple(s for s in supports if v not in s)
        sub = 1 + _min_hitting_set(rest, memo)
        if best is None or sub < best:
            best = sub
    memo[key] = best
    return best


def _dimension_from_exps(gens: tuple[tuple[int, ...], ...], nvars: int) -> int:
    """Krull dimension of the quotient by a monomial ideal; -1 for the zero ring."""
    if nvars > DIMENSION_GUARD_VARS:
        raise EnumerationGuardError(
            f"{nvars} variables exceeds the dimension search guard "
            f"({DIMENSION_GUARD_VARS})"
        )
    gens = _minimalize(list(gens))
    if any(sum(g) == 0 for g in gens):
        return -1
    supports = tuple(
        sorted(
            {frozenset(i for i, e in enumerate(g) if e) for g in gens},
            key=lambda s: (len(s), sorted(s)),
        )
    )
    return nvars - _min_hitting_set(supports, {})


def monomial_dimension(I: Ideal) -> int:
    """Dimension of the quotient by a monomial ideal.

    Works on the ideal's own generators, which must all be monomials; the
    dimension of a general quotient is this applied to the leading-term
    ideal of a Groebner basis.
    """
    for g in I.generators:
        if not g.is_monomial():
            raise ValueError(f"non-monomial generator {g}")
    return _dimension_from_exps(
        tuple(g.terms[0][0] for g in I.generators), I.ring.nvars
    )


def _lt_exps(J: Ideal) -> tuple[tuple[int, ...], ...]:
    """Minimal monomial generators of the leading-term ideal (degrevlex)."""
    return groebner_basis(J).lt_ideal_exps()


def quotient_dimension(J: Ideal) -> int:
    """Krull dimension of B/J (via the leading-term ideal)."""
    return _dimension_from_exps(_lt_exps(J), J.ring.nvars)


# ---------------------------------------------------------------------------
# K-polynomial recursion

PIVOT_RULES = ("default", "antipodal")

_knum_cache: dict = {}


def _select_pivot(gens: tuple[tuple[int, ...], ...], rule: str) -> tuple[int, ...]:
    if rule == "default":
        nvars = len(gens[0])
        counts = [0] * nvars
        for g in gens:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
        v = max(range(nvars), key=lambda i: (counts[i], -i))
        carriers = [g for g in gens if g[v] > 0]
        return min(carriers, key=lambda g: (sum(g), _neg_grevlex(g)))
    if rule == "antipodal":
        return max(gens, key=lambda g: (sum(g), _neg_grevlex(g)))
    raise ValueError(f"unknown pivot rule {rule!r}")


def _neg_grevlex(e: tuple[int, ...]):
    return tuple(-x for x in reversed(e))


def _knum(
    gens: tuple[tuple[int, ...], ...], ring: RingSpec, rule: str
) -> dict[tuple[int, ...], int]:
    """Numerator of the series of a minimal monomial ideal, as a dict over
    multidegrees."""
    r = ring.r
    if not gens:
        return {(0,) * r: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    key = (gens, ring, rule)
    hit = _knum_cache.get(key)
    if hit is not None:
        return hit
    pairwise_coprime = all(
        all(a == 0 or b == 0 for a, b in zip(gens[i], gens[j]))
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    )
    if pairwise_coprime:
        acc = {(0,) * r: 1}
        for g in gens:
            deg = ring.multidegree_of(g)
            out: dict[tuple[int, ...], int] = {}
            for e, c in acc.items():
                out[e] = out.get(e, 0) + c
                shifted = tuple(x + y for x, y in zip(e, deg))
                out[shifted] = out.get(shifted, 0) - c
            acc = {e: c for e, c in out.items() if c}
        _knum_cache[key] = acc
        return acc
    pivot = _select_pivot(gens, rule)
    rest = tuple(g for g in gens if g != pivot)
    colon = _minimalize([tuple(max(x - y, 0) for x, y in zip(g, pivot)) for g in rest])
    left = _knum(rest, ring, rule)
    right = _knum(colon, ring, rule)
    deg = ring.multidegree_of(pivot)
    acc = dict(left)
    for e, c in right.items():
        shifted = tuple(x + y for x, y in zip(e, deg))
        v = acc.get(shifted, 0) - c
        if v:
            acc[shifted] = v
        else:
            acc.pop(shifted, None)
    _knum_cache[key] = acc
    return acc


_kpoly_cache: dict = {}


def k_polynomial(J: Ideal, pivot_rule: str = "default") -> HilbertSeriesRep:
    """Laurent numerator of Hilb_{B/J(-shift)} over the full denominator."""
    if pivot_rule not in PIVOT_RULES:
        raise ValueError(f"unknown pivot rule {pivot_rule!r}")
    key = (J, pivot_rule)
    hit = _kpoly_cache.get(key)
    if hit is not None:
        return hit
    J.require_multihomogeneous()
    ring = J.ring
    gens = _minimalize(list(_lt_exps(J)))
    num_dict = _knum(tuple(sorted(gens, key=lambda e: (sum(e), e))), ring, pivot_rule)
    numerator = LaurentPolyZ(ring.r, num_dict.items())
    if J.shift is not None:
        numerator = numerator.shifted(J.shift)
    rep = HilbertSeriesRep(
        ring=ring,
        numerator=numerator,
        denominator_exponents=ring.block_sizes,
        shift=J.shift,
    )
    _kpoly_cache[key] = rep
    return rep


def series_coefficient(rep: HilbertSeriesRep, nu: tuple[int, ...]) -> int:
    """Exact coefficient of t^nu in numerator / prod (1-t_i)^(D_i)."""
    D = rep.denominator_exponents
    acc = 0
    for a, c in rep.numerator.terms:
        term = c
        for x, ai, Di in zip(nu, a, D):
            m = x - ai + Di - 1
            if m < Di - 1:
                term = 0
                break
            term *= math.comb(m, Di - 1)
        acc += term
    return acc


# ---------------------------------------------------------------------------
# Mixed multiplicities from the series


def mixed_mult_series(J: Ideal, pivot_rule: str = "default") -> MixedMultTable:
    """Table of e_n over all types with |n+1| = dim, from K(1-s)."""
    rep = k_polynomial(J, pivot_rule)
    d = quotient_dimension(J)
    if d < 0:
        return MixedMultTable(dimension=-1, route="series")
    return series_table(rep, d)


def series_table(rep: HilbertSeriesRep, dimension: int) -> MixedMultTable:
    """Extract the type-indexed table from a series of known dimension."""
    ring = rep.ring
    d = dimension
    D = rep.denominator_exponents
    codim = sum(D) - d
    num = rep.numerator
    mins = num.min_exponents()
    clear = tuple(max(0, -m) for m in mins)
    if any(clear):
        num = num.shifted(clear)
    support = num.terms
    maxexp = num.max_exponents()
    r = ring.r

    def kappa(beta: tuple[int, ...]) -> int:
        acc = 0
        for a, c in support:
            term = c
            for ai, bi in zip(a, beta):
                if bi > ai:
                    term = 0
                    break
                term *= math.comb(ai, bi)
            acc += term
        return acc if sum(beta) % 2 == 0 else -acc

    box = [range(0, min(m, codim) + 1) for m in maxexp]
    entries: dict[tuple[int, ...], int] = {}
    for beta in product(*box):
        total = sum(beta)
        if total > codim:
            continue
        k = kappa(beta)
        if total < codim:
            if k != 0:
                raise InvariantViolation(
                    f"nonzero component of K(1-s) below codimension: "
                    f"s^{beta} -> {k}"
                )
            continue
        if k == 0:
            continue
        if k < 0:
            raise InvariantViolation(f"negative multiplicity {k} at s^{beta}")
        if any(b > Di for b, Di in zip(beta, D)):
            raise InvariantViolation(
                f"multiplicity support exceeds block bound at s^{beta}"
            )
        n = tuple(Di - b - 1 for b, Di in zip(beta, D))
        entries[n] = k
    if not entries:
        raise InvariantViolation("no positive multiplicity for a nonzero quotient")
    return MixedMultTable(dimension=d, route="series", entries=entries)


# ---------------------------------------------------------------------------
# Hilbert polynomial


def _binomial_poly(shift: int, k: int) -> list[Fraction]:
    """Coefficients (ascending) of C(X + shift, k) as a polynomial in X."""
    coeffs = [Fraction(1)]
    for j in range(1, k + 1):
        # multiply by (X + shift - k + j)
        const = Fraction(shift - k + j)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * const
            nxt[i + 1] += c
        coeffs = nxt
    inv = Fraction(1, math.factorial(k))
    return [c * inv for c in coeffs]


def hilbert_polynomial(J: Ideal) -> HilbertPolynomialRep:
    """Exact multivariate Hilbert polynomial of B/J(-shift)."""
    rep = k_polynomial(J)
    ring = J.ring
    D = ring.block_sizes
    r = ring.r
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for a, c in rep.numerator.terms:
        factors = [_binomial_poly(D[i] - 1 - a[i], D[i] - 1) for i in range(r)]
        partial: dict[tuple[int, ...], Fraction] = {(): Fraction(c)}
        for i in range(r):
            nxt: dict[tuple[int, ...], Fraction] = {}
            for e, v in partial.items():
                for k, fc in enumerate(factors[i]):
                    if fc == 0:
                        continue
                    ne = e + (k,)
                    nxt[ne] = nxt.get(ne, Fraction(0)) + v * fc
            partial = nxt
        for e, v in partial.items():
            if v:
                cur = coeffs.get(e, Fraction(0)) + v
                if cur:
                    coeffs[e] = cur
                else:
                    coeffs.pop(e, None)
    threshold = rep.numerator.max_exponents()
    return HilbertPolynomialRep(
        ring=ring, coefficients=coeffs, validity_threshold=threshold
    )


# ---------------------------------------------------------------------------
# Graded piece dimensions and coarsening


def graded_piece_dim(J: Ideal, nu: tuple[int, ...]) -> int:
    """dim_k of the multidegree-nu piece of B/J(-shift), by direct count."""
    ring = J.ring
    nu = tuple(nu)
    if len(nu) != ring.r:
        raise ValueError("multidegree length mismatch")
    if any(x < 0 for x in nu):
        raise ValueError("multidegree must be componentwise nonnegative")
    if J.shift is not None:
        nu = tuple(x - s for x, s in zip(nu, J.shift))
        if any(x < 0 for x in nu):
            return 0
    sizes = ring.block_sizes
    count_bound = math.prod(
        math.comb(x + sz - 1, sz - 1) for x, sz in zip(nu, sizes)
    )
    if count_bound > PIECE_GUARD:
        raise EnumerationGuardError(
            f"graded piece at {nu} has {count_bound} monomials (guard {PIECE_GUARD})"
        )
    lt = _lt_exps(J)
    per_block = [
        list(_compositions(x, sz)) for x, sz in zip(nu, sizes)
    ]
    count = 0
    for pieces in product(*per_block):
        exps = tuple(e for piece in pieces for e in piece)
        if not any(mono_divides(g, exps) for g in lt):
            count += 1
    return count


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def coarsened_multiplicity(J: Ideal) -> int:
    """Multiplicity of the total-degree coarsening of B/J."""
    d = quotient_dimension(J)
    if d < 0:
        return 0
    rep = k_polynomial(J)
    u = rep.numerator.coarsened()
    m = u.min_exponents()[0]
    if m < 0:
        u = u.shifted((-m,))
    coeffs: dict[int, int] = {e[0]: c for e, c in u.terms}
    codim = sum(rep.denominator_exponents) - d
    top = max(coeffs) if coeffs else 0
    for _ in range(codim):
        # divide by (1 - t): w_i = v_i + w_{i-1}, remainder must vanish
        out: dict[int, int] = {}
        running = 0
        for i in range(top + 1):
            running += coeffs.get(i, 0)
            if running:
                out[i] = running
        if running != 0:
            raise InvariantViolation(
                "numerator not divisible by (1-t)^codim in coarsening"
            )
        out.pop(top, None)
        coeffs = out
        top -= 1
    e = sum(coeffs.values())
    if e < 1:
        raise InvariantViolation(f"coarsened multiplicity {e} < 1 for nonzero quotient")
    return e
