"""Rational maps between projective spaces: graphs, degrees, formulas.

A map P^d -> P^n is given by n+1 forms of one degree.  Its graph lives in
P^d x P^n with bigraded defining ideal obtained by eliminating t from
(y_i - t f_i); the projective degrees are the multidegrees of the graph
at types (i, d-i).  For maps presented by a Hilbert-Burch matrix or by an
odd alternating matrix there are closed formulas for the whole degree
vector, implemented here next to the elimination route so the two can be
played against each other.  The saturated-fiber probe estimates d_0 from
the growth of saturated power pieces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, combinations_with_replacement
from operator import mul

from .errors import InvariantViolation, NotMultihomogeneousError, PresentationMismatch
from .groebner import Ideal, elimination_ideal, saturation
from .hilbert import graded_piece_dim, hilbert_polynomial, quotient_dimension
from .multigraded import block_ideal, random_block_form, slice_degree
from .prng import Prng
from .rings import Polynomial, RingSpec, parse_polynomial

_Y_BASES = ("y", "u", "v", "z", "w")


def _fresh_names(base_candidates, count: int, taken: set[str]) -> tuple[str, ...]:
    for base in base_candidates:
        names = tuple(f"{base}{i}" for i in range(count))
        if not taken.intersection(names):
            return names
    k = 0
    while True:
        names = tuple(f"yy{k}_{i}" for i in range(count))
        if not taken.intersection(names):
            return names
        k += 1


@dataclass(frozen=True)
class RationalMapSpec:
    """A rational map P^d -> P^n, d = #source_vars - 1, n = #generators - 1."""

    source_ring: RingSpec
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        ring = self.source_ring
        if ring.r != 1:
            raise ValueError("source must be a single-block ring")
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if len(gens) < ring.nvars:
            raise ValueError("need at least as many forms as source variables")
        degs = set()
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator outside the source ring")
            if g.is_zero():
                continue
            deg = g.multidegree()
            if deg is None:
                raise ValueError(f"generator {g} is not homogeneous")
            degs.add(deg[0])
        if not degs:
            raise ValueError("generators must not all be zero")
        if len(degs) != 1:
            raise ValueError(f"generators of mixed degrees {sorted(degs)}")
        delta = degs.pop()
        if delta < 1:
            raise ValueError("constant maps are not rational maps of P^d")
        object.__setattr__(self, "_delta", delta)

    @staticmethod
    def make(
        characteristic: int, variables: tuple[str, ...], exprs
    ) -> "RationalMapSpec":
        ring = RingSpec(characteristic, (tuple(variables),))
        gens = tuple(
            e if isinstance(e, Polynomial) else parse_polynomial(e, ring)
            for e in exprs
        )
        return RationalMapSpec(ring, gens)

    @property
    def source_vars(self) -> tuple[str, ...]:
        return self.source_ring.variables

    @property
    def target_count(self) -> int:
        return len(self.generators)

    @property
    def delta(self) -> int:
        return self._delta

    @property
    def d(self) -> int:
        return self.source_ring.nvars - 1

    @property
    def n(self) -> int:
        return len(self.generators) - 1

    def target_names(self) -> tuple[str, ...]:
        return _fresh_names(
            _Y_BASES, len(self.generators), set(self.source_vars)
        )

    def graph_ring(self) -> RingSpec:
        return RingSpec(
            self.source_ring.characteristic,
            (self.source_vars, self.target_names()),
        )


# ---------------------------------------------------------------------------
# Rees ideal and projective degrees

_rees_cache: dict[RationalMapSpec, Ideal] = {}


def _pad(exps: tuple[int, ...], before: int, after: int) -> tuple[int, ...]:
    return (0,) * before + exps + (0,) * after


def rees_ideal(F: RationalMapSpec) -> Ideal:
    """Bigraded defining ideal of the graph of F in P^d x P^n.

    Computed by eliminating t from (y_0 - t f_0, ..., y_n - t f_n); every
    returned generator is checked to vanish under y_i -> t f_i.
    """
    hit = _rees_cache.get(F)
    if hit is not None:
        return hit
    graph = F.graph_ring()
    xs = F.source_vars
    ys = F.target_names()
    tname = _fresh_names(("t", "s", "tt"), 1, set(xs) | set(ys))[0]
    work = RingSpec(
        F.source_ring.characteristic, (xs, ys, (tname,))
    )
    nx, ny = len(xs), len(ys)
    t_poly = Polynomial.variable(work, tname)
    lifted: list[Polynomial] = []
    work_gens: list[Polynomial] = []
    for i, f in enumerate(F.generators):
        fw = Polynomial(work, ((_pad(e, 0, ny + 1), c) for e, c in f.terms))
        lifted.append(fw)
        yw = Polynomial.variable(work, ys[i])
        work_gens.append(yw - t_poly * fw)
    elim = elimination_ideal(Ideal(work, tuple(work_gens)), (tname,))
    images = (
        [Polynomial.variable(work, x) for x in xs]
        + [t_poly * fw for fw in lifted]
        + [t_poly]
    )
    projected: list[Polynomial] = []
    for g in elim.generators:
        if not g.substitute(work, images).is_zero():
            raise InvariantViolation(
                f"Rees generator {g} does not vanish on the graph"
            )
        projected.append(
            Polynomial(graph, ((e[: nx + ny], c) for e, c in g.terms))
        )
    result = Ideal(graph, tuple(projected))
    try:
        result.require_multihomogeneous()
    except NotMultihomogeneousError as e:
        raise InvariantViolation(f"Rees ideal not bigraded: {e}") from e
    _rees_cache[F] = result
    return result


@dataclass(frozen=True)
class ProjectiveDegreeVector:
    degrees: tuple[int, ...]
    method: str


def projective_degrees(
    F: RationalMapSpec,
    method: str = "elimination",
    matrix: "PresentationMatrix | None" = None,
    seed: int = 0,
    trials: int = 10,
) -> ProjectiveDegreeVector:
    """The degree vector (d_0, ..., d_d) of the graph of F.

    method "elimination" reads the Hilbert-polynomial table of the Rees
    ideal at types (i, d-i); "slicing" counts points in randomized
    verified slices; "formula" evaluates the closed formula matching the
    supplied presentation matrix.
    """
    d = F.d
    if method == "elimination":
        table = hilbert_polynomial(rees_ideal(F)).leading_table()
        degrees = tuple(table.value((i, d - i)) for i in range(d + 1))
        return ProjectiveDegreeVector(degrees=degrees, method=method)
    if method == "slicing":
        J = rees_ideal(F)
        out = []
        for i in range(d + 1):
            rep = slice_degree(J, (i, d - i), seed=seed, trials=trials)
            if rep.point_count is None:
                raise InvariantViolation(
                    f"no verified slicing trial at type {(i, d - i)}"
                )
            out.append(rep.point_count)
        return ProjectiveDegreeVector(degrees=tuple(out), method=method)
    if method == "formula":
        if matrix is None:
            raise ValueError("formula method needs a presentation matrix")
        if matrix.kind == "hilbert-burch":
            return formula_perfect_ht2(d, matrix.column_degrees)
        return formula_gorenstein_ht3(
            d, len(F.generators) - 1, matrix.entry_degree, F.delta
        )
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Presentation matrices


@dataclass(frozen=True)
class PresentationMatrix:
    """A presentation of the map's base ideal, Hilbert-Burch or alternating."""

    entries: tuple[tuple[Polynomial, ...], ...]
    kind: str

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged matrix")
        ring = rows[0][0].ring
        if any(e.ring != ring for row in rows for e in row):
            raise ValueError("entries from mixed rings")
        if self.kind == "hilbert-burch":
            if len(rows) != width + 1:
                raise ValueError(
                    f"hilbert-burch matrix must be (n+1) x n, got "
                    f"{len(rows)} x {width}"
                )
            cols: list[int] = []
            for j in range(width):
                degs = set()
                for i in range(len(rows)):
                    e = rows[i][j]
                    if e.is_zero():
                        continue
                    deg = e.multidegree()
                    if deg is None:
                        raise ValueError(f"column {j} is not homogeneous")
                    degs.add(sum(deg))
                if len(degs) != 1:
                    raise ValueError(f"column {j} is not homogeneous")
                cols.append(degs.pop())
            object.__setattr__(self, "_column_degrees", tuple(cols))
        elif self.kind == "alternating":
            if len(rows) != width:
                raise ValueError("alternating matrix must be square")
            if width % 2 == 0:
                raise ValueError("alternating presentation must have odd size")
            degs = set()
            for i in range(width):
                if not rows[i][i].is_zero():
                    raise ValueError("alternating matrix needs a zero diagonal")
                for j in range(i + 1, width):
                    if rows[i][j] + rows[j][i] != Polynomial.zero(ring):
                        raise ValueError(
                            f"entries ({i},{j}) and ({j},{i}) are not opposite"
                        )
                    if rows[i][j].is_zero():
                        continue
                    deg = rows[i][j].multidegree()
                    if deg is None:
                        raise ValueError(f"entry ({i},{j}) is not homogeneous")
                    degs.add(sum(deg))
            if len(degs) > 1:
                raise ValueError(f"mixed entry degrees {sorted(degs)}")
            object.__setattr__(
                self, "_entry_degree", degs.pop() if degs else 0
            )
        else:
            raise ValueError(f"unknown presentation kind {self.kind!r}")

    @property
    def ring(self) -> RingSpec:
        return self.entries[0][0].ring

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]))

    @property
    def column_degrees(self) -> tuple[int, ...]:
        if self.kind != "hilbert-burch":
            raise ValueError("column degrees apply to hilbert-burch matrices")
        return self._column_degrees

    @property
    def entry_degree(self) -> int:
        if self.kind != "alternating":
            raise ValueError("entry degree applies to alternating matrices")
        return self._entry_degree


def _det(rows: tuple[tuple[Polynomial, ...], ...], ring: RingSpec) -> Polynomial:
    k = len(rows)
    if k == 0:
        return Polynomial.one(ring)
    if k == 1:
        return rows[0][0]
    acc = Polynomial.zero(ring)
    rest = rows[1:]
    for j in range(k):
        a = rows[0][j]
        if a.is_zero():
            continue
        sub = tuple(tuple(r[c] for c in range(k) if c != j) for r in rest)
        term = a * _det(sub, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def determinant(rows, ring: RingSpec | None = None) -> Polynomial:
    rows = tuple(tuple(r) for r in rows)
    if ring is None:
        ring = rows[0][0].ring
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("determinant needs a square matrix")
    return _det(rows, ring)


def maximal_minors(M: PresentationMatrix) -> list[Polynomial]:
    """Signed maximal minors of a Hilbert-Burch matrix, in row order.

    The i-th output is (-1)^i times the minor omitting row i, which is the
    convention under which the minors are the map's generators in order.
    """
    if M.kind != "hilbert-burch":
        raise ValueError("maximal minors expect a hilbert-burch matrix")
    rows, ring = M.entries, M.ring
    out: list[Polynomial] = []
    for i in range(len(rows)):
        sub = tuple(rows[k] for k in range(len(rows)) if k != i)
        minor = _det(sub, ring)
        out.append(minor if i % 2 == 0 else -minor)
    return out


def _pf(rows: tuple[tuple[Polynomial, ...], ...], ring: RingSpec) -> Polynomial:
    k = len(rows)
    if k == 0:
        return Polynomial.one(ring)
    if k % 2 == 1:
        return Polynomial.zero(ring)
    acc = Polynomial.zero(ring)
    for j in range(1, k):
        a = rows[0][j]
        if a.is_zero():
            continue
        keep = tuple(i for i in range(1, k) if i != j)
        sub = tuple(tuple(rows[r][c] for c in keep) for r in keep)
        term = a * _pf(sub, ring)
        acc = acc + term if j % 2 == 1 else acc - term
    return acc


def pfaffian(rows, ring: RingSpec | None = None) -> Polynomial:
    """Pfaffian of an even alternating matrix, by first-row expansion."""
    rows = tuple(tuple(r) for r in rows)
    if ring is None:
        ring = rows[0][0].ring
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise ValueError("pfaffian needs a square matrix")
    if k % 2 == 1:
        raise ValueError("pfaffian of an odd matrix is zero; expected even size")
    for i in range(k):
        if not rows[i][i].is_zero():
            raise ValueError("pfaffian needs a zero diagonal")
        for j in range(i + 1, k):
            if rows[i][j] + rows[j][i] != Polynomial.zero(ring):
                raise ValueError("pfaffian needs an alternating matrix")
    return _pf(rows, ring)


def submaximal_pfaffians(M: PresentationMatrix) -> list[Polynomial]:
    """Signed pfaffians of the principal submatrices omitting one index."""
    if M.kind != "alternating":
        raise ValueError("submaximal pfaffians expect an alternating matrix")
    rows, ring = M.entries, M.ring
    k = len(rows)
    out: list[Polynomial] = []
    for i in range(k):
        keep = tuple(r for r in range(k) if r != i)
        sub = tuple(tuple(rows[r][c] for c in keep) for r in keep)
        pf = _pf(sub, ring)
        out.append(pf if i % 2 == 0 else -pf)
    return out


def random_alternating_matrix(
    ring: RingSpec, size: int, rng: Prng | int, entry_degree: int = 1
) -> PresentationMatrix:
    """Seeded random alternating matrix with linear entries."""
    if entry_degree != 1:
        raise ValueError("only linear entries are generated")
    if not isinstance(rng, Prng):
        rng = Prng(rng)
    zero = Polynomial.zero(ring)
    rows = [[zero for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            h = random_block_form(ring, 0, rng)
            rows[i][j] = h
            rows[j][i] = -h
    return PresentationMatrix(
        entries=tuple(tuple(r) for r in rows), kind="alternating"
    )


# ---------------------------------------------------------------------------
# Fitting heights and the G condition


def _scalar_multiple(f: Polynomial, g: Polynomial) -> bool:
    """True when f = c g for a nonzero field scalar c."""
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    p = f.ring.characteristic
    c = (f.lead_coeff() * pow(g.lead_coeff(), p - 2, p)) % p
    return f == Polynomial.constant(f.ring, c) * g


def fitting_ideal(M: PresentationMatrix, i: int) -> Ideal:
    """Fitt_i of the presented ideal: minors of size (rows - i)."""
    rows, ring = M.entries, M.ring
    m, w = len(rows), len(rows[0])
    k = m - i
    if k <= 0:
        return Ideal(ring, (Polynomial.one(ring),))
    if k > m or k > w:
        return Ideal(ring, ())
    minors: list[Polynomial] = []
    for rsel in combinations(range(m), k):
        for csel in combinations(range(w), k):
            sub = tuple(tuple(rows[r][c] for c in csel) for r in rsel)
            det = _det(sub, ring)
            if not det.is_zero():
                minors.append(det)
    return Ideal(ring, tuple(minors))


def ideal_height(J: Ideal) -> int:
    """Height in a polynomial ring: nvars minus quotient dimension."""
    return J.ring.nvars - quotient_dimension(J)


def check_G_condition(F, M: PresentationMatrix, s: int) -> bool:
    """ht Fitt_i > i for 1 <= i < s, after verifying M presents F.

    F is a RationalMapSpec or a plain sequence of generators (the height
    test makes sense for ideals with fewer generators than variables,
    which are not maps onto a larger target).  The generators regenerated
    from M (signed minors or pfaffians) must match F's in order up to
    nonzero scalars.
    """
    if isinstance(F, RationalMapSpec):
        declared = F.generators
        source = F.source_ring
    else:
        declared = tuple(F)
        if not declared:
            raise ValueError("no generators")
        source = declared[0].ring
    regen = (
        maximal_minors(M)
        if M.kind == "hilbert-burch"
        else submaximal_pfaffians(M)
    )
    if len(regen) != len(declared):
        raise PresentationMismatch(
            f"matrix presents {len(regen)} forms, map has {len(declared)}"
        )
    if M.ring != source:
        raise PresentationMismatch("matrix ring differs from the source ring")
    for i, (f, g) in enumerate(zip(declared, regen)):
        if not _scalar_multiple(f, g):
            raise PresentationMismatch(
                f"generator {i}: {f} is not a scalar multiple of the "
                f"regenerated {g}"
            )
    for i in range(1, s):
        if ideal_height(fitting_ideal(M, i)) <= i:
            return False
    return True


# ---------------------------------------------------------------------------
# Closed formulas


def elementary_symmetric(values) -> list[int]:
    """All e_0..e_len coefficients, by convolving (1 + v z) factors."""
    es = [1]
    for v in values:
        es = [a + v * b for a, b in zip(es + [0], [0] + es)]
    return es


def formula_perfect_ht2(d: int, mu) -> ProjectiveDegreeVector:
    """Degree vector of a map presented by a Hilbert-Burch matrix with
    column degrees mu: d_i is the elementary symmetric e_{d-i}(mu)."""
    mu = tuple(mu)
    if d < 0:
        raise ValueError("d must be nonnegative")
    if any(not isinstance(m, int) or m < 1 for m in mu):
        raise ValueError("column degrees must be positive integers")
    es = elementary_symmetric(mu)
    degrees = tuple(
        es[d - i] if 0 <= d - i < len(es) else 0 for i in range(d + 1)
    )
    return ProjectiveDegreeVector(degrees=degrees, method="formula")


def _binom(a: int, b: int) -> int:
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


def formula_gorenstein_ht3(
    d: int, n: int, D: int, delta: int
) -> ProjectiveDegreeVector:
    """Degree vector of a map presented by an odd alternating matrix of
    uniform entry degree D: trailing degrees are powers of delta, the
    early ones a binomial sum scaled by powers of D."""
    if d < 1:
        raise ValueError("d must be positive")
    if n % 2 != 0:
        raise ValueError("need n+1 odd")
    if D < 1:
        raise ValueError("entry degree must be positive")
    if 2 * delta != D * n:
        raise ValueError(
            f"delta {delta} inconsistent with entry degree {D} and n {n}"
        )
    degrees = []
    for i in range(d + 1):
        if i >= d - 2:
            degrees.append(delta ** (d - i))
            continue
        top = n - d + i
        if top < 0:
            degrees.append(0)
            continue
        acc = sum(_binom(n - 1 - 2 * k, d - i - 1) for k in range(top // 2 + 1))
        degrees.append(D ** (d - i) * acc)
    return ProjectiveDegreeVector(degrees=tuple(degrees), method="formula")


# ---------------------------------------------------------------------------
# Saturated special fiber probe


@dataclass(frozen=True)
class SatFiberTable:
    dims: tuple[int, ...]
    difference_profile: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SatFiberCheck:
    stabilized: bool
    inferred_e: int
    d0_elimination: int
    agree: bool
    table: SatFiberTable


def _differences(seq) -> list[int]:
    return [b - a for a, b in zip(seq, seq[1:])]


def satfiber_dims(F: RationalMapSpec, q_max: int) -> SatFiberTable:
    """dims[q] = dim of the degree-q*delta piece of (I^q : m^inf)."""
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    ring = F.source_ring
    m = block_ideal(ring, 0)
    d = F.d
    delta = F.delta
    nonzero = tuple(g for g in F.generators if not g.is_zero())
    dims: list[int] = []
    for q in range(q_max + 1):
        if q == 0:
            dims.append(1)
            continue
        gens_q = tuple(
            reduce(mul, sel, Polynomial.one(ring))
            for sel in combinations_with_replacement(nonzero, q)
        )
        sat = saturation(Ideal(ring, gens_q), m)
        total = math.comb(q * delta + d, d)
        dims.append(total - graded_piece_dim(sat, (q * delta,)))
    levels = []
    cur = dims
    for _ in range(max(1, d)):
        cur = _differences(cur)
        levels.append(tuple(cur))
    return SatFiberTable(dims=tuple(dims), difference_profile=tuple(levels))


def satfiber_d0_check(F: RationalMapSpec, q_max: int) -> SatFiberCheck:
    """Probe d_0 from growth of the saturated fiber dims.

    The d-th finite differences must be constant over the last
    ceil(q_max/2) values; the stabilized value is compared against the
    elimination d_0.  Non-stabilization is reported, not raised.
    """
    d = F.d
    if q_max < d + 2:
        raise ValueError(f"q_max must be at least d + 2 = {d + 2}")
    table = satfiber_dims(F, q_max)
    diffs = list(table.dims)
    for _ in range(d):
        diffs = _differences(diffs)
    window = diffs[-min(len(diffs), (q_max + 1) // 2):]
    stabilized = len(set(window)) == 1
    inferred = window[-1]
    d0 = projective_degrees(F, "elimination").degrees[0]
    return SatFiberCheck(
        stabilized=stabilized,
        inferred_e=inferred,
        d0_elimination=d0,
        agree=stabilized and inferred == d0,
        table=table,
    )
