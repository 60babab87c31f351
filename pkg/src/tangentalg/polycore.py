"""Exact coefficient fields, monomial orders, polynomials and polynomial matrices.

Monomials are packed into a single Python integer (a *key*) such that

* multiplying monomials is adding keys,
* comparing keys as integers is comparing monomials in the ring's order,
* divisibility is one subtraction and one mask test.

Each exponent lives in a fixed-width bit field whose top bit is a guard
bit.  Orders are "grading rows followed by a (reverse) lexicographic
tie-break"; the rows sit above the exponent fields so the key is a linear
function of the exponent vector.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_CHARACTERISTIC = 32003
DEFAULT_MAX_DEGREE = 64

_ROW_BITS = 24


class RingMismatch(ValueError):
    """Operands live in different rings."""


class DegreeCapExceeded(ArithmeticError):
    """A monomial of too large a degree was produced."""

    def __init__(self, degree: int, cap: int):
        super().__init__(f"degree {degree} exceeds the cap {cap}")
        self.degree = degree
        self.cap = cap


def _is_prime(p: int) -> bool:
    if p < 4:
        return p in (2, 3)
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


class GroundField:
    """GF(p) for a prime p < 2**31, or the rationals when characteristic is 0."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = DEFAULT_CHARACTERISTIC):
        characteristic = int(characteristic)
        if characteristic != 0 and (characteristic >= 2**31 or not _is_prime(characteristic)):
            raise ValueError(f"characteristic must be 0 or a prime below 2^31, got {characteristic}")
        self.characteristic = characteristic

    def __eq__(self, other):
        return isinstance(other, GroundField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GroundField", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __call__(self, value) -> int | Fraction:
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            value = Fraction(value)
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return Fraction(1) / a

    def to_json(self, a) -> str | int:
        if isinstance(a, Fraction):
            return str(a) if a.denominator != 1 else a.numerator
        return int(a)

    def random(self, rng) -> int | Fraction:
        if self.characteristic:
            return rng.randrange(self.characteristic)
        return Fraction(rng.randint(-20, 20))


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order description.

    kind is one of ``degrevlex``, ``lex``, ``elim`` (block elimination of
    the first ``block`` variables, degrevlex-like inside) or ``wdegrevlex``
    (weighted degree then reverse lexicographic; ``weights`` default to the
    ring grading).
    """

    kind: str = "degrevlex"
    block: int = 0
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim", "wdegrevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("block elimination needs block >= 1")

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip()
        m = re.fullmatch(r"elim\((\d+)\)", text)
        if m:
            return cls("elim", int(m.group(1)))
        return cls(text)

    def __str__(self):
        if self.kind == "elim":
            return f"elim({self.block})"
        if self.kind == "wdegrevlex" and self.weights:
            return f"wdegrevlex{self.weights}"
        return self.kind


class PolyRing:
    """Graded polynomial ring k[x_1..x_n] with a monomial order.

    Rings are immutable and compare equal when field, variables, order,
    grading and degree cap agree.
    """

    def __init__(
        self,
        variables: Sequence[str],
        field: GroundField | int | None = None,
        order: MonomialOrder | str = "degrevlex",
        weights: Sequence[int] | None = None,
        max_degree: int = DEFAULT_MAX_DEGREE,
    ):
        if field is None:
            field = GroundField()
        elif not isinstance(field, GroundField):
            field = GroundField(field)
        if isinstance(order, str):
            order = MonomialOrder.parse(order)
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        if not variables:
            raise ValueError("a ring needs at least one variable")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        n = len(variables)
        weights = tuple(int(w) for w in (weights or (1,) * n))
        if len(weights) != n or min(weights) < 1:
            raise ValueError("grading weights must be positive, one per variable")
        if order.kind == "elim" and order.block >= n:
            raise ValueError("elimination block must leave some variables")
        self.field = field
        self.variables = variables
        self.order = order
        self.weights = weights
        self.max_degree = int(max_degree)
        self.nvars = n
        self.index = {v: i for i, v in enumerate(variables)}
        self._setup_encoding()

    # -- encoding ---------------------------------------------------------

    def _setup_encoding(self):
        n = self.nvars
        w = max(8, self.max_degree.bit_length() + 1)
        self.field_bits = w
        B = 1 << w
        self._exp_mask = (1 << (w * n)) - 1
        self._guard = sum(1 << (w * i + w - 1) for i in range(n))
        order = self.order
        ones = (1,) * n
        if order.kind == "degrevlex":
            rows, mode = [ones], "revlex"
        elif order.kind == "lex":
            rows, mode = [], "lex"
        elif order.kind == "elim":
            b = order.block
            rows = [(1,) * b + (0,) * (n - b), (0,) * b + (1,) * (n - b)]
            mode = "revlex"
        else:
            wts = order.weights or self.weights
            if len(wts) != n:
                raise ValueError("wdegrevlex weights must match the number of variables")
            rows, mode = [tuple(wts)], "revlex"
        self._rows = rows
        self._revlex = mode == "revlex"
        S = w * n + 2
        self._low_mask = (1 << S) - 1
        self._bad = (self._low_mask ^ self._exp_mask) | self._guard
        k = len(rows)
        self.key_bits = S + _ROW_BITS * k
        keys = []
        for i in range(n):
            pos = B**i if self._revlex else B ** (n - 1 - i)
            key = -pos if self._revlex else pos
            for j, row in enumerate(rows):
                key += row[i] << (S + _ROW_BITS * (k - 1 - j))
            keys.append(key)
        self._var_keys = tuple(keys)
        self._positions = tuple(
            (w * i) if self._revlex else (w * (n - 1 - i)) for i in range(n)
        )
        self._field_mask = B - 1
        self.decode = lru_cache(maxsize=1 << 18)(self._decode)

    def encode(self, exps: Sequence[int]) -> int:
        if sum(exps) > self.max_degree or (exps and max(exps) >= (1 << (self.field_bits - 1))):
            raise DegreeCapExceeded(sum(exps), self.max_degree)
        return sum(e * k for e, k in zip(exps, self._var_keys))

    def _decode(self, key: int) -> tuple[int, ...]:
        P = (-key if self._revlex else key) & self._low_mask
        fm = self._field_mask
        return tuple((P >> s) & fm for s in self._positions)

    def divides_key(self, a: int, b: int) -> bool:
        """True when monomial a divides monomial b."""
        if self._revlex:
            return not ((a - b) & self._bad)
        return not ((b - a) & self._bad)

    def lcm_key(self, a: int, b: int) -> int:
        return self.encode(tuple(map(max, self.decode(a), self.decode(b))))

    def key_degree(self, key: int) -> int:
        return sum(e * w for e, w in zip(self.decode(key), self.weights))

    def key_total_degree(self, key: int) -> int:
        return sum(self.decode(key))

    def var_key(self, name: str) -> int:
        return self._var_keys[self.index[name]]

    # -- identity ---------------------------------------------------------

    def signature(self) -> tuple:
        return (self.field.characteristic, self.variables, str(self.order), self.weights, self.max_degree)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"PolyRing({self.field!r}[{', '.join(self.variables)}], order={self.order})"

    # -- derived rings and constructors ---------------------------------

    def with_order(self, order: MonomialOrder | str) -> "PolyRing":
        return PolyRing(self.variables, self.field, order, self.weights, self.max_degree)

    def with_field(self, field: GroundField | int) -> "PolyRing":
        return PolyRing(self.variables, field, self.order, self.weights, self.max_degree)

    def extend(self, names: Sequence[str], weights: Sequence[int] | None = None,
               order: MonomialOrder | str | None = None, front: bool = False) -> "PolyRing":
        """Ring with extra variables appended (or prepended when front=True)."""
        names = tuple(names)
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        if front:
            variables, wts = names + self.variables, weights + self.weights
        else:
            variables, wts = self.variables + names, self.weights + weights
        return PolyRing(variables, self.field, order or self.order, wts, self.max_degree)

    def subring(self, names: Sequence[str], order: MonomialOrder | str = "degrevlex") -> "PolyRing":
        names = tuple(names)
        return PolyRing(names, self.field, order, tuple(self.weights[self.index[v]] for v in names),
                        self.max_degree)

    def fresh_name(self, stem: str) -> str:
        if stem not in self.index:
            return stem
        for i in itertools.count(1):
            cand = f"{stem}{i}_"
            if cand not in self.index:
                return cand

    def gens(self) -> list["Polynomial"]:
        one = self.field(1)
        return [Polynomial(self, {k: one}) for k in self._var_keys]

    def gen(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.var_key(name): self.field(1)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {0: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {self.encode(exps): c} if c else {})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], object]]) -> "Polynomial":
        acc: dict[int, object] = {}
        f = self.field
        for exps, c in terms:
            k = self.encode(exps)
            acc[k] = f(acc.get(k, 0) + f(c))
        return Polynomial(self, {k: c for k, c in acc.items() if c})

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value.to_ring(self)
        if isinstance(value, str):
            return parse_polynomial(value, self)
        return self.constant(value)

    def convert_terms(self, other: "PolyRing", terms: dict) -> dict:
        """Re-encode a term dict from ring ``other`` into this ring by variable name."""
        if other is self or other == self:
            return dict(terms)
        idx = [self.index.get(v) for v in other.variables]
        n = self.nvars
        f = self.field
        out = {}
        same_field = f == other.field
        for k, c in terms.items():
            src = other.decode(k)
            exps = [0] * n
            for v, i, e in zip(other.variables, idx, src):
                if i is None:
                    if e:
                        raise RingMismatch(f"variable {v} not in {self!r}")
                    continue
                exps[i] = e
            out[self.encode(exps)] = c if same_field else f(c)
        return {k: c for k, c in out.items() if c}


class Polynomial:
    """Immutable polynomial: a map from monomial keys to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lead_key(self) -> int:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lead = max(self.terms)
        return self._lead

    def lead_coeff(self):
        return self.terms[self.lead_key()]

    def lead_exponents(self) -> tuple[int, ...]:
        return self.ring.decode(self.lead_key())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """(exponents, coefficient) pairs, largest monomial first."""
        dec = self.ring.decode
        return [(dec(k), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def degree(self) -> int:
        """Weighted degree (ring grading); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.key_degree(k) for k in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.key_total_degree(k) for k in self.terms)

    def min_total_degree(self) -> int:
        if not self.terms:
            return -1
        return min(self.ring.key_total_degree(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.key_degree(k) for k in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d: int, total: bool = True) -> "Polynomial":
        deg = self.ring.key_total_degree if total else self.ring.key_degree
        return Polynomial(self.ring, {k: c for k, c in self.terms.items() if deg(k) == d})

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.terms)

    def constant_coeff(self):
        return self.terms.get(0, self.ring.field(0))

    def variables_used(self) -> set[str]:
        used = set()
        for k in self.terms:
            for v, e in zip(self.ring.variables, self.ring.decode(k)):
                if e:
                    used.add(v)
        return used

    def degree_in(self, names: Iterable[str]) -> int:
        """Largest total degree in the given variables over all terms."""
        idx = [self.ring.index[v] for v in names]
        best = -1
        for k in self.terms:
            e = self.ring.decode(k)
            best = max(best, sum(e[i] for i in idx))
        return best

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{other.ring!r} vs {self.ring!r}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _add_terms(self.terms, other.terms, 1, self.ring.field))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _add_terms(self.terms, other.terms, -1, self.ring.field))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {k: f(-c) for k, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _mul_terms(self.terms, other.terms, self.ring))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {k: f(v * c) for k, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff()))

    def mul_monomial(self, key: int, coeff=1) -> "Polynomial":
        f = self.ring.field
        coeff = f(coeff)
        return Polynomial(self.ring, {k + key: f(c * coeff) for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                return False
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def derivative(self, var: str | int) -> "Polynomial":
        ring = self.ring
        if isinstance(var, str):
            if var not in ring.index:
                raise KeyError(f"unknown variable {var!r}")
            i = ring.index[var]
        else:
            i = var
        vk = ring._var_keys[i]
        f = ring.field
        out = {}
        for k, c in self.terms.items():
            e = ring.decode(k)[i]
            if e:
                v = f(c * e)
                if v:
                    out[k - vk] = v
        return Polynomial(ring, out)

    def substitute(self, values: dict[str, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials of the same ring."""
        ring = self.ring
        idx = {ring.index[v]: p for v, p in values.items()}
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i, e):
            if (i, e) not in powers:
                powers[(i, e)] = idx[i] ** e
            return powers[(i, e)]

        acc = ring.zero()
        for k, c in self.terms.items():
            e = list(ring.decode(k))
            factor = ring.one()
            for i in idx:
                if e[i]:
                    factor = factor * power(i, e[i])
                    e[i] = 0
            acc = acc + factor.mul_monomial(ring.encode(e), c)
        return acc

    def evaluate(self, point: dict[str, object] | Sequence):
        """Evaluate at a point given as a sequence or name->value map."""
        ring = self.ring
        f = ring.field
        if isinstance(point, dict):
            vals = [f(point[v]) for v in ring.variables]
        else:
            vals = [f(v) for v in point]
        total = f(0)
        p = f.characteristic
        for k, c in self.terms.items():
            term = c
            for x, e in zip(vals, ring.decode(k)):
                if e:
                    term = term * (pow(x, e, p) if p else x**e)
            total = f(total + term)
        return total

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        if ring is self.ring:
            return self
        return Polynomial(ring, ring.convert_terms(self.ring, self.terms))

    # -- printing --------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _add_terms(a: dict, b: dict, sign: int, field: GroundField) -> dict:
    out = dict(a)
    p = field.characteristic
    for k, c in b.items():
        v = out.get(k, 0) + (c if sign > 0 else -c)
        if p:
            v %= p
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _mul_terms(a: dict, b: dict, ring: PolyRing) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    p = ring.field.characteristic
    if a and b:
        top = max(ring.key_total_degree(k) for k in a) + max(ring.key_total_degree(k) for k in b)
        if top > ring.max_degree:
            raise DegreeCapExceeded(top, ring.max_degree)
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    if p:
        return {k: v % p for k, v in out.items() if v % p}
    return {k: (v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v)
            for k, v in out.items() if v}


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    ring = f.ring
    p = ring.field.characteristic
    parts = []
    for exps, c in f.sorted_terms():
        if p and c > p // 2:
            c = c - p
        mono = "*".join(
            (v if e == 1 else f"{v}^{e}") for v, e in zip(ring.variables, exps) if e
        )
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        parts.append(("-" if neg else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, body in parts[1:]:
        text += f" {s} {body}"
    return text


# -- parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.message = message


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` such as ``2*x^2*y - 3/2*T1 + (x+y)^2`` into ``ring``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        num, name, op = m.groups()
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if num is not None:
            tokens.append(("num", int(num), start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        sign = 1
        if peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        acc = term()
        if sign < 0:
            acc = -acc
        while peek()[:2] in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = factor()
        while True:
            tok = peek()
            if tok[:2] == ("op", "*"):
                take()
                acc = acc * factor()
            elif tok[:2] == ("op", "/"):
                take()
                den = factor()
                if not den.is_constant() or den.is_zero():
                    raise PolynomialSyntaxError("division only by nonzero constants", tok[2])
                acc = acc.scale(ring.field.inv(den.constant_coeff()))
            elif tok[0] in ("num", "name") or tok[:2] == ("op", "("):
                acc = acc * factor()  # implicit multiplication
            else:
                return acc

    def factor():
        base = atom()
        if peek()[:2] == ("op", "^"):
            take()
            tok = take()
            if tok[0] != "num":
                raise PolynomialSyntaxError("exponent must be a nonnegative integer", tok[2])
            base = base ** tok[1]
        return base

    def atom():
        tok = take()
        kind, val, where = tok
        if kind == "num":
            return ring.constant(val)
        if kind == "name":
            if val not in ring.index:
                raise PolynomialSyntaxError(f"unknown variable {val!r}", where)
            return ring.gen(val)
        if tok[:2] == ("op", "("):
            inner = expr()
            if take()[:2] != ("op", ")"):
                raise PolynomialSyntaxError("missing ')'", where)
            return inner
        if tok[:2] == ("op", "-"):
            return -factor()
        raise PolynomialSyntaxError("expected a term", where)

    if peek()[0] == "end":
        raise PolynomialSyntaxError("empty polynomial", 0)
    result = expr()
    if peek()[0] != "end":
        raise PolynomialSyntaxError(f"unexpected {peek()[1]!r}", peek()[2])
    return result


# -- matrices ------------------------------------------------------------

class PolyMatrix:
    """Rectangular matrix of polynomials over one ring (row-major)."""

    __slots__ = ("ring", "rows", "_ncols")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence[Polynomial]], ncols: int | None = None):
        rows = [list(r) for r in rows]
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        for r in rows:
            for e in r:
                if e.ring != ring:
                    raise RingMismatch("matrix entries must share the ring")
        self.ring = ring
        self.rows = rows
        self._ncols = len(rows[0]) if rows else (ncols or 0)

    @classmethod
    def from_columns(cls, ring: PolyRing, columns: Sequence[Sequence[Polynomial]], nrows: int | None = None):
        columns = [list(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        if not columns:
            return cls.zeros(ring, nrows, 0)
        return cls(ring, [[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def zeros(cls, ring: PolyRing, nrows: int, ncols: int):
        m = cls.__new__(cls)
        m.ring = ring
        m.rows = [[ring.zero() for _ in range(ncols)] for _ in range(nrows)]
        m._ncols = ncols
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self._ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[Polynomial]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_columns(self.ring, self.rows, self.ncols) if self.rows else PolyMatrix.zeros(self.ring, self.ncols, 0)

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} x {other.shape}")
        ring = self.ring
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = ring.zero()
                for a, i in zip(r, range(len(r))):
                    if a.terms and other.rows[i][j].terms:
                        acc = acc + a * other.rows[i][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(ring, out, other.ncols)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in col_perm] for i in row_perm], len(col_perm))

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[fn(e) for e in r] for r in self.rows], self.ncols)

    def to_ring(self, ring: PolyRing) -> "PolyMatrix":
        return PolyMatrix(ring, [[e.to_ring(ring) for e in r] for r in self.rows], self.ncols)

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.ring == other.ring and self.shape == other.shape
                and self.rows == other.rows)

    def __repr__(self):
        return f"PolyMatrix({self.shape[0]}x{self.shape[1]})"

    def __str__(self):
        cells = [[str(e) for e in r] for r in self.rows]
        if not cells:
            return "[]"
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)


def build_matrix(kind: str, ring: PolyRing, *args: int) -> PolyMatrix:
    """Structured matrices of ring variables.

    ``generic`` r c: r x c filled row-major with x_1..x_rc;
    ``symmetric`` s: s x s symmetric, upper triangle filled row by row;
    ``catalecticant`` r: the 2 x 4 matrix with rows x_1..x_4 and x_{r+1}..x_{r+4}.
    """
    v = ring.gens()
    if kind == "generic":
        r, c = args
        need = r * c
    elif kind == "symmetric":
        (s,) = args
        need = s * (s + 1) // 2
    elif kind == "catalecticant":
        (r,) = args
        if r < 1:
            raise ValueError("catalecticant needs r >= 1")
        need = r + 4
    else:
        raise ValueError(f"unknown matrix kind {kind!r}")
    if len(v) < need:
        raise ValueError(f"{kind} matrix needs {need} variables, ring has {len(v)}")
    if kind == "generic":
        return PolyMatrix(ring, [[v[i * c + j] for j in range(c)] for i in range(r)])
    if kind == "symmetric":
        idx = {}
        it = iter(range(need))
        for i in range(s):
            for j in range(i, s):
                idx[(i, j)] = idx[(j, i)] = next(it)
        return PolyMatrix(ring, [[v[idx[(i, j)]] for j in range(s)] for i in range(s)])
    return PolyMatrix(ring, [v[0:4], v[r:r + 4]])


def minors(M: PolyMatrix, t: int) -> list[Polynomial]:
    """All t x t minors by Laplace expansion, zeros and duplicates dropped.

    Order: row subsets lexicographically, then column subsets.
    """
    nr, nc = M.shape
    if t < 1 or t > min(nr, nc):
        raise ValueError(f"minor size {t} out of range for a {nr}x{nc} matrix")
    out, seen = [], set()
    for _, _, d in minors_indexed(M, t):
        if d.terms:
            key = frozenset(d.terms.items())
            if key not in seen:
                seen.add(key)
                out.append(d)
    return out


def minors_indexed(M: PolyMatrix, t: int):
    """Yield (rows, cols, determinant) for every t x t submatrix, zeros included."""
    nr, nc = M.shape
    ring = M.ring
    cache: dict[tuple[tuple[int, ...], tuple[int, ...]], Polynomial] = {}

    def det(rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        if len(rows) == 1:
            return M.rows[rows[0]][cols[0]]
        key = (rows, cols)
        if key in cache:
            return cache[key]
        acc = ring.zero()
        r0, rest = rows[0], rows[1:]
        for j, c in enumerate(cols):
            a = M.rows[r0][c]
            if a.terms:
                sub = det(rest, cols[:j] + cols[j + 1:])
                if sub.terms:
                    term = a * sub
                    acc = acc + term if j % 2 == 0 else acc - term
        cache[key] = acc
        return acc

    for rows in itertools.combinations(range(nr), t):
        for cols in itertools.combinations(range(nc), t):
            yield rows, cols, det(rows, cols)


def row_echelon(rows: Sequence[Sequence], field: GroundField) -> list[list]:
    """Reduced row echelon form of a matrix of field elements (rows copied)."""
    p = field.characteristic
    mat = [[field(v) for v in row] for row in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field(v * inv) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [field(a - f * b) for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return mat[:r]


def matrix_rank(rows: Sequence[Sequence], field: GroundField) -> int:
    return len(row_echelon(rows, field))
