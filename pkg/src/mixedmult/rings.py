"""Multigraded polynomial rings over prime fields.

A ring is a tensor product of standard graded polynomial blocks,
k[x_{1,0..d_1}] (x) ... (x) k[x_{r,0..d_r}] over F_p, graded by N^r with
every variable of block i sitting in multidegree e_i.  Monomials are bare
exponent tuples over the flattened variable list; polynomials are sparse
term tuples with coefficients in [1, p).  This module also carries the
integer Laurent polynomials used for Hilbert numerators, the two term
orders (degrevlex and block elimination), and the expression parser.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .errors import ExponentOverflow, ParseError

MAX_EXPONENT = 2**31 - 1

#: Sentinel multidegree of the zero polynomial (homogeneous of every degree).
DEGREE_ANY = "any"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """Block structure and characteristic of the ambient ring."""

    characteristic: int
    blocks: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p!r}")
        if p >= 2**63:
            raise ValueError("characteristic must fit a machine word")
        blocks = tuple(tuple(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks or any(not b for b in blocks):
            raise ValueError("need at least one block and every block nonempty")
        flat: list[str] = []
        for b in blocks:
            flat.extend(b)
        if len(set(flat)) != len(flat):
            raise ValueError("variable names must be globally unique")
        for name in flat:
            if not name or not (name[0].isalpha() or name[0] == "_"):
                raise ValueError(f"bad variable name {name!r}")
            if not all(c.isalnum() or c == "_" for c in name):
                raise ValueError(f"bad variable name {name!r}")
        object.__setattr__(self, "_vars", tuple(flat))
        index = {name: i for i, name in enumerate(flat)}
        object.__setattr__(self, "_index", index)
        block_of: list[int] = []
        slices: list[tuple[int, int]] = []
        start = 0
        for bi, b in enumerate(blocks):
            block_of.extend([bi] * len(b))
            slices.append((start, start + len(b)))
            start += len(b)
        object.__setattr__(self, "_block_of", tuple(block_of))
        object.__setattr__(self, "_slices", tuple(slices))

    @property
    def r(self) -> int:
        return len(self.blocks)

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def nvars(self) -> int:
        return len(self._vars)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        """D = (d_1+1, ..., d_r+1)."""
        return tuple(len(b) for b in self.blocks)

    @property
    def block_slices(self) -> tuple[tuple[int, int], ...]:
        return self._slices

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown identifier {name!r}") from None

    def block_of_var(self, index: int) -> int:
        return self._block_of[index]

    def multidegree_of(self, exps: tuple[int, ...]) -> tuple[int, ...]:
        """Per-block exponent sums of a monomial."""
        return tuple(sum(exps[a:b]) for a, b in self._slices)

    def zero_exps(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    def extended(self, extra: str) -> "RingSpec":
        """Same ring with one fresh degree-irrelevant helper block appended."""
        name = extra
        k = 0
        while name in self._index:
            name = f"{extra}{k}"
            k += 1
        return RingSpec(self.characteristic, self.blocks + ((name,),))


# ---------------------------------------------------------------------------
# Term orders

LESS, EQUAL, GREATER = -1, 0, 1


class TermOrder:
    """Global multiplicative monomial order.

    kind "degrevlex": graded reverse lexicographic over all variables,
    earlier declared variables largest.  kind "elim": block elimination
    order, degrevlex on the drop variables first, ties broken by degrevlex
    on the kept variables; every monomial involving a drop variable beats
    every monomial free of them.
    """

    __slots__ = ("kind", "nvars", "drop", "_drop_list", "_keep_list")

    def __init__(self, kind: str, nvars: int, drop: Iterable[int] = ()):
        if kind not in ("degrevlex", "elim"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.nvars = nvars
        self.drop = tuple(sorted(set(drop)))
        if kind == "degrevlex" and self.drop:
            raise ValueError("degrevlex takes no drop set")
        if kind == "elim" and not self.drop:
            raise ValueError("elimination order needs a nonempty drop set")
        if any(i < 0 or i >= nvars for i in self.drop):
            raise ValueError("drop index out of range")
        dropset = set(self.drop)
        self._drop_list = self.drop
        self._keep_list = tuple(i for i in range(nvars) if i not in dropset)

    def key(self, exps: tuple[int, ...]):
        """Sort key: larger key = larger monomial, injective on exponents."""
        if self.kind == "degrevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        d = tuple(exps[i] for i in self._drop_list)
        k = tuple(exps[i] for i in self._keep_list)
        return (
            sum(d),
            tuple(-e for e in reversed(d)),
            sum(k),
            tuple(-e for e in reversed(k)),
        )

    def compare(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return LESS
        if ka > kb:
            return GREATER
        return EQUAL

    def signature(self):
        return (self.kind, self.nvars, self.drop)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        if self.kind == "degrevlex":
            return "TermOrder(degrevlex)"
        return f"TermOrder(elim, drop={self.drop})"


def degrevlex_order(ring: RingSpec) -> TermOrder:
    return TermOrder("degrevlex", ring.nvars)


def elimination_order(ring: RingSpec, drop_names: Iterable[str]) -> TermOrder:
    return TermOrder("elim", ring.nvars, (ring.var_index(n) for n in drop_names))


def term_order_compare(order: TermOrder, a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """-1 / 0 / +1 for a < b, a == b, a > b under ``order``."""
    if len(a) != order.nvars or len(b) != order.nvars:
        raise ValueError("monomials not over the order's ring")
    return order.compare(a, b)


# ---------------------------------------------------------------------------
# Monomial helpers (monomials are plain exponent tuples)


def mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = tuple(x + y for x, y in zip(a, b))
    for e in out:
        if e > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {e} exceeds cap {MAX_EXPONENT}")
    return out


def mono_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_coprime(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Sparse polynomial over F_p with canonically sorted terms.

    ``terms`` is a tuple of (exponents, coefficient) pairs, coefficients in
    [1, characteristic), sorted descending under degrevlex.  The zero
    polynomial has an empty term tuple.  Instances are immutable and
    hashable.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Iterable[tuple[tuple[int, ...], int]]):
        self.ring = ring
        p = ring.characteristic
        acc: dict[tuple[int, ...], int] = {}
        for exps, c in terms:
            c %= p
            if c == 0:
                continue
            exps = tuple(exps)
            if len(exps) != ring.nvars:
                raise ValueError("exponent vector length mismatch")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in polynomial")
            if any(e > MAX_EXPONENT for e in exps):
                raise ExponentOverflow("exponent exceeds cap")
            v = (acc.get(exps, 0) + c) % p
            if v:
                acc[exps] = v
            else:
                acc.pop(exps, None)
        key = _grevlex_key
        self.terms = tuple(
            (e, acc[e]) for e in sorted(acc, key=key, reverse=True)
        )
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ring: RingSpec) -> "Polynomial":
        return Polynomial(ring, ())

    @staticmethod
    def constant(ring: RingSpec, c: int) -> "Polynomial":
        return Polynomial(ring, ((ring.zero_exps(), c),))

    @staticmethod
    def variable(ring: RingSpec, name: str) -> "Polynomial":
        i = ring.var_index(name)
        exps = tuple(1 if j == i else 0 for j in range(ring.nvars))
        return Polynomial(ring, ((exps, 1),))

    @staticmethod
    def one(ring: RingSpec) -> "Polynomial":
        return Polynomial.constant(ring, 1)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (
            len(self.terms) == 1 and self.terms[0][0] == self.ring.zero_exps()
        )

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    def lead_exps(self, order: Optional[TermOrder] = None) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if order is None or order.kind == "degrevlex":
            return self.terms[0][0]
        return max((e for e, _ in self.terms), key=order.key)

    def lead_coeff(self, order: Optional[TermOrder] = None) -> int:
        le = self.lead_exps(order)
        for e, c in self.terms:
            if e == le:
                return c
        raise AssertionError("unreachable")

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def monic(self, order: Optional[TermOrder] = None) -> "Polynomial":
        if not self.terms:
            return self
        p = self.ring.characteristic
        inv = pow(self.lead_coeff(order), p - 2, p)
        if inv == 1:
            return self
        return Polynomial(self.ring, ((e, c * inv) for e, c in self.terms))

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("mixed rings")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, ((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, self.terms + tuple((e, -c) for e, c in o.terms))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.ring.characteristic
        acc: dict[tuple[int, ...], int] = {}
        for ea, ca in self.terms:
            for eb, cb in o.terms:
                e = mono_mul(ea, eb)
                v = (acc.get(e, 0) + ca * cb) % p
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        return Polynomial(self.ring, acc.items())

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    # -- grading -------------------------------------------------------------

    def multidegree(self) -> Union[tuple[int, ...], str, None]:
        """Common multidegree of all terms, DEGREE_ANY for 0, None if mixed."""
        if not self.terms:
            return DEGREE_ANY
        degs = {self.ring.multidegree_of(e) for e, _ in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    # -- evaluation ----------------------------------------------------------

    def substitute(self, ring: RingSpec, images: list["Polynomial"]) -> "Polynomial":
        """Image under the ring map sending variable i to images[i]."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        out = Polynomial.zero(ring)
        for exps, c in self.terms:
            term = Polynomial.constant(ring, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * images[i] ** e
            out = out + term
        return out

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _grevlex_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def is_multihomogeneous(p: Polynomial) -> Union[tuple[int, ...], str, None]:
    """Common multidegree, DEGREE_ANY for the zero polynomial, None otherwise."""
    return p.multidegree()


# ---------------------------------------------------------------------------
# Integer Laurent polynomials in r series variables


class LaurentPolyZ:
    """Laurent polynomial over Z in the r series variables t_1..t_r.

    Exponents may be negative (module shifts); coefficients are unbounded
    Python integers.  Canonical form: terms sorted lexicographically by
    exponent vector, no zero coefficients.
    """

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Iterable[tuple[tuple[int, ...], int]]):
        self.r = r
        acc: dict[tuple[int, ...], int] = {}
        for exps, c in terms:
            if c == 0:
                continue
            exps = tuple(exps)
            if len(exps) != r:
                raise ValueError("exponent vector length mismatch")
            v = acc.get(exps, 0) + c
            if v:
                acc[exps] = v
            else:
                acc.pop(exps, None)
        self.terms = tuple((e, acc[e]) for e in sorted(acc))

    @staticmethod
    def zero(r: int) -> "LaurentPolyZ":
        return LaurentPolyZ(r, ())

    @staticmethod
    def one(r: int) -> "LaurentPolyZ":
        return LaurentPolyZ(r, (((0,) * r, 1),))

    @staticmethod
    def monomial(r: int, exps: tuple[int, ...], c: int = 1) -> "LaurentPolyZ":
        return LaurentPolyZ(r, ((exps, c),))

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    def __add__(self, other: "LaurentPolyZ") -> "LaurentPolyZ":
        return LaurentPolyZ(self.r, self.terms + other.terms)

    def __sub__(self, other: "LaurentPolyZ") -> "LaurentPolyZ":
        return LaurentPolyZ(
            self.r, self.terms + tuple((e, -c) for e, c in other.terms)
        )

    def __neg__(self) -> "LaurentPolyZ":
        return LaurentPolyZ(self.r, ((e, -c) for e, c in self.terms))

    def __mul__(self, other: "LaurentPolyZ") -> "LaurentPolyZ":
        acc: dict[tuple[int, ...], int] = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                e = tuple(x + y for x, y in zip(ea, eb))
                v = acc.get(e, 0) + ca * cb
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        return LaurentPolyZ(self.r, acc.items())

    def shifted(self, by: tuple[int, ...]) -> "LaurentPolyZ":
        """Multiply by the monomial t^by."""
        return LaurentPolyZ(
            self.r,
            ((tuple(x + y for x, y in zip(e, by)), c) for e, c in self.terms),
        )

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.r
        return tuple(min(e[i] for e, _ in self.terms) for i in range(self.r))

    def max_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.r
        return tuple(max(e[i] for e, _ in self.terms) for i in range(self.r))

    def coarsened(self) -> "LaurentPolyZ":
        """Substitute every t_i by a single t (total-degree coarsening)."""
        return LaurentPolyZ(1, (((sum(e),), c) for e, c in self.terms))

    def at_one(self) -> int:
        """Evaluate every variable at 1."""
        return sum(c for _, c in self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPolyZ)
            and self.r == other.r
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.r, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms, key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(
                f"t{i + 1}" + (f"^{x}" if x != 1 else "")
                for i, x in enumerate(e)
                if x != 0
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPolyZ({self})"


# ---------------------------------------------------------------------------
# Parser and renderer

_TOKEN_OPS = set("+-*^()")


def _tokenize(text: str) -> Iterator[tuple[str, str]]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_OPS:
            yield ("op", ch)
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("int", text[i:j])
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("name", text[i:j])
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    yield ("end", "")


class _Parser:
    """Recursive descent over: expr := term (('+'|'-') term)*,
    term := factor ('*' factor)*, factor := '-' factor | atom ('^' int)?,
    atom := int | name | '(' expr ')'.  Implicit multiplication is an error.
    """

    def __init__(self, text: str, ring: RingSpec):
        self.tokens = list(_tokenize(text))
        self.pos = 0
        self.ring = ring

    def peek(self) -> tuple[str, str]:
        return self.tokens[self.pos]

    def next(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}")

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing {val!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = p * self.factor()
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                raise ParseError(
                    f"implicit multiplication before {val!r} is not allowed"
                )
            else:
                return p

    def factor(self) -> Polynomial:
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.factor()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val = self.next()
            if kind == "op" and val == "-":
                kind2, val2 = self.next()
                if kind2 == "int":
                    raise ParseError(f"negative exponent -{val2}")
                raise ParseError("malformed exponent")
            if kind != "int":
                raise ParseError(f"exponent must be an integer literal, found {val!r}")
            e = int(val)
            if e > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {e} exceeds cap {MAX_EXPONENT}")
            return base**e
        return base

    def atom(self) -> Polynomial:
        kind, val = self.next()
        if kind == "int":
            return Polynomial.constant(self.ring, int(val))
        if kind == "name":
            return Polynomial.variable(self.ring, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected {val or 'end of input'!r}")


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    """Parse an expression over the ring's variables into canonical form."""
    return _Parser(text, ring).parse()


def render_polynomial(p: Polynomial) -> str:
    """Canonical rendering: '*' and '^', descending terms, no unary plus.

    Coefficients above characteristic/2 are shown balanced, e.g. p-1 shows
    as a subtracted term, so small integer identities read naturally.
    """
    if not p.terms:
        return "0"
    ph = p.ring.characteristic
    parts: list[str] = []
    for exps, c in p.terms:
        balanced = c if c <= ph // 2 else c - ph
        mono = "*".join(
            p.ring.variables[i] + (f"^{e}" if e != 1 else "")
            for i, e in enumerate(exps)
            if e != 0
        )
        mag = abs(balanced)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if balanced > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if balanced > 0 else f" - {body}")
    return "".join(parts)
