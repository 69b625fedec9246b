"""Shared ring and ideal builders used across the test suite."""

from mixedmult import Ideal, Polynomial, Prng, RingSpec, parse_polynomial

CHAR = 32003


def ring_blocks(*blocks) -> RingSpec:
    return RingSpec(CHAR, tuple(tuple(b) for b in blocks))


def p1xp1() -> RingSpec:
    return ring_blocks(("x0", "x1"), ("y0", "y1"))


def mk(ring: RingSpec, *exprs: str, shift=None) -> Ideal:
    gens = tuple(parse_polynomial(e, ring) for e in exprs)
    return Ideal(ring, gens, shift=shift)


def pp(ring: RingSpec, expr: str) -> Polynomial:
    return parse_polynomial(expr, ring)


def random_monomial_ideal(seed: int) -> Ideal:
    """Seeded monomial ideal in at most 6 variables across 2 blocks.

    Exponents stay small so the whole property corpus runs in seconds.
    """
    rng = Prng(seed)
    n1 = 1 + rng.below(3)
    n2 = 1 + rng.below(3)
    ring = ring_blocks(
        tuple(f"x{i}" for i in range(n1)),
        tuple(f"y{i}" for i in range(n2)),
    )
    nvars = n1 + n2
    count = 1 + rng.below(4)
    gens = []
    for _ in range(count):
        exps = [0] * nvars
        support = 1 + rng.below(min(3, nvars))
        for _ in range(support):
            exps[rng.below(nvars)] += 1 + rng.below(2)
        gens.append(Polynomial(ring, ((tuple(exps), 1),)))
    return Ideal(ring, tuple(gens))
