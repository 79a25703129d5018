"""Exact arithmetic in a Euclidean ordered field: the rationals closed under
square roots of nonnegative elements.

Representation
--------------
A value is a finite sum ``sum_M c_M * prod(sqrt(a) for a in M)`` with rational
coefficients ``c_M``, where each radical atom ``a`` is either a prime integer
or a canonicalized non-rational element (a nested radical).  Monomials ``M``
are frozensets of atom keys: a prime ``p`` is keyed by ``p`` itself, a nested
atom by a negative registry id.

This representation is canonical: square roots of distinct primes are linearly
independent over the rationals, rational radicands are reduced to prime sets
through integer factorization, and nested radicands are only adjoined after a
symbolic square test (including products with already-adjoined nested atoms).
Equal values therefore have structurally equal term dictionaries, which makes
equality, hashing and zero tests exact and cheap.

Sign determination first tries interval refinement (dyadic enclosures with
outward rounding, at increasing precision) and falls back to an exact
recursive criterion that splits off one radical at a time; the fallback always
terminates, so comparisons are total and never approximate.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Union

from sympy import factorint

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    LiteralParseError,
    NegativeRadicand,
    ResourceExceeded,
)

Monomial = frozenset
_RATIONAL_MONO: Monomial = frozenset()

DEFAULT_MAX_RADICAL_DEPTH = 64
_DEPTH_ENV_VAR = "WORKBENCH_MAX_RADICAL_DEPTH"


def max_radical_depth() -> int:
    raw = os.environ.get(_DEPTH_ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_RADICAL_DEPTH
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_RADICAL_DEPTH


class _NestedAtomRegistry:
    """Append-only registry of non-rational radicands.

    Atom ids are negative and never reused, so monomials stored inside
    existing FieldElem values stay canonical forever.  All mutation happens
    under one lock; lookups of registered data are safe without it because
    entries are write-once.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._by_key = {}        # canonical signature -> atom id
        self._radicands = {}     # atom id -> FieldElem
        self._depths = {}        # atom id -> nesting depth
        self._next_id = -1
        self._enclosures = {}    # (atom id or prime, bits) -> (lo, hi) Fractions

    def lookup(self, key):
        return self._by_key.get(key)

    def radicand(self, atom_id) -> "FieldElem":
        return self._radicands[atom_id]

    def depth(self, atom_key) -> int:
        if atom_key > 0:
            return 1
        return self._depths[atom_key]

    def ids(self):
        return list(self._radicands.keys())

    def register(self, key, radicand: "FieldElem", depth: int) -> int:
        with self._lock:
            existing = self._by_key.get(key)
            if existing is not None:
                return existing
            limit = max_radical_depth()
            if depth > limit:
                raise ResourceExceeded(
                    f"radical nesting depth {depth} exceeds limit {limit}"
                )
            atom_id = self._next_id
            self._next_id -= 1
            self._by_key[key] = atom_id
            self._radicands[atom_id] = radicand
            self._depths[atom_id] = depth
            return atom_id

    def sqrt_enclosure(self, atom_key, bits):
        cached = self._enclosures.get((atom_key, bits))
        if cached is not None:
            return cached
        if atom_key > 0:
            rad_lo = rad_hi = Fraction(atom_key)
        else:
            rad_lo, rad_hi = self._radicands[atom_key]._enclose(bits + 8)
        value = (_sqrt_lower(rad_lo, bits), _sqrt_upper(rad_hi, bits))
        with self._lock:
            self._enclosures[(atom_key, bits)] = value
        return value


_registry = _NestedAtomRegistry()


def _sqrt_lower(x: Fraction, bits: int) -> Fraction:
    """A dyadic lower bound for sqrt(x) with about `bits` fractional bits."""
    if x <= 0:
        return Fraction(0)
    scaled = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(isqrt(scaled), 1 << bits)


def _sqrt_upper(x: Fraction, bits: int) -> Fraction:
    if x <= 0:
        return Fraction(0)
    num = x.numerator << (2 * bits)
    scaled = -((-num) // x.denominator)  # ceil
    root = isqrt(scaled)
    if root * root < scaled:
        root += 1
    return Fraction(root, 1 << bits)


def _iv_mul(a_lo, a_hi, b_lo, b_hi):
    p1, p2, p3, p4 = a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi
    return min(p1, p2, p3, p4), max(p1, p2, p3, p4)


FieldLike = Union["FieldElem", int, Fraction]


class FieldElem:
    """An exact element of the Euclidean closure of the rationals.

    Instances are immutable and hashable; arithmetic never approximates.
    Construct values with :func:`rational`, :func:`field_sqrt`,
    :func:`parse_field_literal`, or ordinary operators on existing elements.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms):
        self._terms = terms
        self._hash = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_fraction(value) -> "FieldElem":
        frac = Fraction(value)
        if frac == 0:
            return ZERO
        return FieldElem({_RATIONAL_MONO: frac})

    # -- predicates and accessors --------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return not self._terms or set(self._terms) == {_RATIONAL_MONO}

    def as_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {_RATIONAL_MONO}:
            return self._terms[_RATIONAL_MONO]
        raise ValueError(f"{self!r} is not rational")

    def support(self):
        atoms = set()
        for mono in self._terms:
            atoms |= mono
        return atoms

    def depth(self) -> int:
        """Nesting depth of the deepest radical appearing in this value."""
        return max((_registry.depth(a) for a in self.support()), default=0)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: FieldLike) -> "FieldElem":
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            new = terms.get(mono, _F0) + coeff
            if new:
                terms[mono] = new
            else:
                terms.pop(mono, None)
        return FieldElem(terms)

    __radd__ = __add__

    def __neg__(self) -> "FieldElem":
        return FieldElem({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: FieldLike) -> "FieldElem":
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: FieldLike) -> "FieldElem":
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: FieldLike) -> "FieldElem":
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        total: dict = {}
        extras = []
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                shared = m1 & m2
                mono = m1 ^ m2
                coeff = c1 * c2
                nested_shared = None
                for atom in shared:
                    if atom > 0:
                        coeff *= atom
                    else:
                        if nested_shared is None:
                            nested_shared = []
                        nested_shared.append(atom)
                if nested_shared is None:
                    new = total.get(mono, _F0) + coeff
                    if new:
                        total[mono] = new
                    else:
                        total.pop(mono, None)
                else:
                    term = FieldElem({mono: coeff})
                    # sqrt(t)*sqrt(t) = t: fold the radicand value back in.
                    for atom in nested_shared:
                        term = term * _registry.radicand(atom)
                    extras.append(term)
        for extra in extras:
            for mono, coeff in extra._terms.items():
                new = total.get(mono, _F0) + coeff
                if new:
                    total[mono] = new
                else:
                    total.pop(mono, None)
        return FieldElem(total)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self._terms:
            raise DivisionByZero("division by zero field element")
        if self.is_rational():
            return FieldElem.from_fraction(1 / self._terms[_RATIONAL_MONO])
        atom = max(self.support())
        head, tail = self._split(atom)
        rad = _atom_value(atom)
        denom = head * head - tail * tail * rad
        if denom.is_zero():
            raise ArithmeticError(
                "dependent radical atoms detected while inverting; "
                "this indicates a canonicalization bug"
            )
        conj = head - tail * _atom_elem(atom)
        return conj * denom.inverse()

    def __truediv__(self, other: FieldLike) -> "FieldElem":
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: FieldLike) -> "FieldElem":
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElem":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self) -> "FieldElem":
        return -self if self.sign() < 0 else self

    # -- sign and order --------------------------------------------------------

    def _split(self, atom):
        """Write self as head + tail*sqrt(atom), with atom absent from both."""
        head: dict = {}
        tail: dict = {}
        for mono, coeff in self._terms.items():
            if atom in mono:
                tail[mono - {atom}] = coeff
            else:
                head[mono] = coeff
        return FieldElem(head), FieldElem(tail)

    def _enclose(self, bits):
        lo = hi = _F0
        for mono, coeff in self._terms.items():
            t_lo = t_hi = coeff
            for atom in mono:
                a_lo, a_hi = _registry.sqrt_enclosure(atom, bits)
                t_lo, t_hi = _iv_mul(t_lo, t_hi, a_lo, a_hi)
            lo += t_lo
            hi += t_hi
        return lo, hi

    def _sign_exact(self) -> int:
        if not self._terms:
            return 0
        if self.is_rational():
            value = self._terms[_RATIONAL_MONO]
            return (value > 0) - (value < 0)
        atom = max(self.support())
        head, tail = self._split(atom)
        sign_head = head.sign()
        sign_tail = tail.sign()
        if sign_tail == 0:
            return sign_head
        if sign_head == 0:
            return sign_tail
        if sign_head == sign_tail:
            return sign_head
        gap = head * head - tail * tail * _atom_value(atom)
        sign_gap = gap.sign()
        if sign_gap == 0:
            raise ArithmeticError(
                "dependent radical atoms detected in sign computation"
            )
        return sign_head if sign_gap > 0 else sign_tail

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}; interval fast path, symbolic fallback."""
        if not self._terms:
            return 0
        if self.is_rational():
            value = self._terms[_RATIONAL_MONO]
            return (value > 0) - (value < 0)
        for bits in (32, 128, 512):
            lo, hi = self._enclose(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        return self._sign_exact()

    def __eq__(self, other):
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __lt__(self, other):
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = as_field(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() >= 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- rendering -------------------------------------------------------------

    def literal(self) -> str:
        """Round-trippable literal, e.g. ``1/2 + 3*sqrt(2)*sqrt(1 + sqrt(5))``."""
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=_mono_sort_key):
            coeff = self._terms[mono]
            factors = []
            for atom in sorted(mono, key=_atom_sort_key):
                if atom > 0:
                    factors.append(f"sqrt({atom})")
                else:
                    factors.append(f"sqrt({_registry.radicand(atom).literal()})")
            mag = abs(coeff)
            if not factors:
                body = _frac_str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_frac_str(mag)] + factors)
            parts.append(("-" if coeff < 0 else "+", body))
    # first term carries its own sign, later ones join with spaced operators
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign_k, body_k in parts[1:]:
            out += f" {sign_k} {body_k}"
        return out

    def approx(self, digits: int = 12) -> str:
        """Labeled decimal approximation; never used inside any predicate."""
        bits = max(64, int(digits * 3.4) + 16)
        lo, hi = self._enclose(bits)
        mid = (lo + hi) / 2
        scale = 10 ** digits
        scaled = mid * scale
        rounded = scaled.numerator // scaled.denominator
        negative = rounded < 0
        rounded = abs(rounded)
        whole, frac = divmod(rounded, scale)
        text = f"{'-' if negative else ''}{whole}.{str(frac).zfill(digits)}"
        return text

    def __repr__(self):
        return f"FieldElem({self.literal()})"

    def __str__(self):
        return self.literal()


_F0 = Fraction(0)
ZERO = FieldElem({})
ONE = FieldElem({_RATIONAL_MONO: Fraction(1)})


def _frac_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _atom_sort_key(atom):
    return (0, atom) if atom > 0 else (1, -atom)


def _mono_sort_key(mono):
    return (len(mono), sorted(_atom_sort_key(a) for a in mono))


def _atom_value(atom) -> FieldElem:
    if atom > 0:
        return FieldElem.from_fraction(atom)
    return _registry.radicand(atom)


def _atom_elem(atom) -> FieldElem:
    return FieldElem({frozenset((atom,)): Fraction(1)})


def as_field(value) -> FieldElem:
    if isinstance(value, FieldElem):
        return value
    if isinstance(value, (int, Fraction)):
        return FieldElem.from_fraction(value)
    if isinstance(value, str):
        return parse_field_literal(value)
    return NotImplemented


def rational(numerator, denominator=1) -> FieldElem:
    return FieldElem.from_fraction(Fraction(numerator, denominator))


# -- square roots -------------------------------------------------------------


def _fraction_sqrt(value: Fraction):
    """Exact rational square root, or None."""
    if value < 0:
        return None
    num_root = isqrt(value.numerator)
    den_root = isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def _rational_sqrt(value: Fraction) -> FieldElem:
    """sqrt of a nonnegative rational as m * prod(sqrt(p)) over primes."""
    if value == 0:
        return ZERO
    p, q = value.numerator, value.denominator
    n = p * q
    square = 1
    odd_primes = []
    for prime, exponent in factorint(n).items():
        square *= prime ** (exponent // 2)
        if exponent % 2:
            odd_primes.append(prime)
    coeff = Fraction(square, q)
    if not odd_primes:
        return FieldElem.from_fraction(coeff)
    return FieldElem({frozenset(odd_primes): coeff})


def _try_sqrt(x: FieldElem):
    """Return y >= 0 with y*y == x if x is a square in the current field."""
    if x.is_rational():
        root = _fraction_sqrt(x.as_fraction())
        return None if root is None else FieldElem.from_fraction(root)
    atom = max(x.support())
    head, tail = x._split(atom)
    # tail is nonzero by choice of atom.  A root C + D*sqrt(atom) needs
    # C^2 + D^2*atom = head and 2*C*D = tail, hence
    # C^2 = (head +- s)/2 where s = sqrt(head^2 - tail^2*atom).
    s = _try_sqrt(head * head - tail * tail * _atom_value(atom))
    if s is None:
        return None
    half = FieldElem.from_fraction(Fraction(1, 2))
    for branch in (s, -s):
        c_squared = (head + branch) * half
        c = _try_sqrt(c_squared)
        if c is None or c.is_zero():
            continue
        d = tail / (c + c)
        candidate = c + d * _atom_elem(atom)
        if candidate * candidate == x:
            return abs(candidate)
    return None


def _content(x: FieldElem) -> Fraction:
    nums = 0
    dens = 1
    for coeff in x._terms.values():
        nums = gcd(nums, abs(coeff.numerator))
        dens = dens * coeff.denominator // gcd(dens, coeff.denominator)
    return Fraction(nums, dens)


def _canonical_key(x: FieldElem):
    return tuple(
        (tuple(sorted(_atom_sort_key(a) for a in mono)), x._terms[mono])
        for mono in sorted(x._terms, key=_mono_sort_key)
    )


def field_sqrt(x: FieldLike) -> FieldElem:
    """The nonnegative exact square root; raises NegativeRadicand for x < 0."""
    x = as_field(x)
    sign = x.sign()
    if sign < 0:
        raise NegativeRadicand(f"sqrt of negative value {x!r}")
    if sign == 0:
        return ZERO
    if x.is_rational():
        return _rational_sqrt(x.as_fraction())
    direct = _try_sqrt(x)
    if direct is not None:
        return direct
    # Pull out the rational content so scaled copies of one radicand share an atom.
    content = _content(x)
    reduced = x * FieldElem.from_fraction(1 / content)
    scale = _rational_sqrt(content)
    root = _nested_atom_sqrt(reduced)
    return scale * root


def _nested_atom_sqrt(reduced: FieldElem) -> FieldElem:
    key = _canonical_key(reduced)
    existing = _registry.lookup(key)
    if existing is not None:
        return _atom_elem(existing)
    # Detect dependence on already-adjoined nested radicals: if the product of
    # this radicand with the radicands of some small set of existing atoms is a
    # square, express the new root through those atoms instead of adjoining.
    nested = _registry.ids()
    for atom in nested:
        product = reduced * _registry.radicand(atom)
        root = _try_sqrt(product)
        if root is not None:
            return root * _atom_value(atom).inverse() * _atom_elem(atom)
    for i, atom_a in enumerate(nested):
        for atom_b in nested[i + 1:]:
            product = reduced * _registry.radicand(atom_a) * _registry.radicand(atom_b)
            root = _try_sqrt(product)
            if root is not None:
                denom = (_atom_value(atom_a) * _atom_value(atom_b)).inverse()
                return root * denom * _atom_elem(atom_a) * _atom_elem(atom_b)
    depth = reduced.depth() + 1
    atom_id = _registry.register(key, reduced, depth)
    return _atom_elem(atom_id)


# -- module-level operation surface -------------------------------------------


class Ordering:
    """Total-order comparison result."""
    LT = -1
    EQ = 0
    GT = 1


def field_arith(a: FieldLike, b: FieldLike, op: str) -> FieldElem:
    a, b = as_field(a), as_field(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def field_compare(a: FieldLike, b: FieldLike) -> int:
    """Ordering.LT / Ordering.EQ / Ordering.GT for a versus b."""
    return (as_field(a) - as_field(b)).sign()


# -- literal syntax ------------------------------------------------------------


def parse_field_literal(text: str) -> FieldElem:
    """Parse ``3``, ``-5/4``, ``sqrt(2)/2``, ``1 + sqrt(5/4)`` and the like."""
    parser = _Parser(text)
    value = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        raise LiteralParseError(
            f"unexpected trailing input at position {parser.pos}: {text!r}",
            position=parser.pos,
        )
    return value


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char):
        if self.peek() != char:
            raise LiteralParseError(
                f"expected {char!r} at position {self.pos} in {self.text!r}",
                position=self.pos,
            )
        self.pos += 1

    def parse_expr(self) -> FieldElem:
        value = self.parse_term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.parse_term()
            elif ch == "-":
                self.pos += 1
                value = value - self.parse_term()
            else:
                return value

    def parse_term(self) -> FieldElem:
        value = self.parse_factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                value = value * self.parse_factor()
            elif ch == "/":
                self.pos += 1
                divisor = self.parse_factor()
                if divisor.is_zero():
                    raise LiteralParseError(
                        f"division by zero in literal {self.text!r}",
                        position=self.pos,
                    )
                value = value / divisor
            else:
                return value

    def parse_factor(self) -> FieldElem:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.parse_factor()
        if ch == "+":
            self.pos += 1
            return self.parse_factor()
        if ch == "(":
            self.pos += 1
            value = self.parse_expr()
            self.expect(")")
            return value
        if self.text.startswith("sqrt", self.pos):
            self.pos += 4
            self.expect("(")
            inner = self.parse_expr()
            self.expect(")")
            return field_sqrt(inner)
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return FieldElem.from_fraction(int(self.text[start:self.pos]))
        raise LiteralParseError(
            f"unexpected character {ch!r} at position {self.pos} in {self.text!r}",
            position=self.pos,
        )


# -- coordinate points ----------------------------------------------------------


@dataclass(frozen=True)
class CoordPoint:
    """A point of Q^d with exact field coordinates."""

    coords: tuple

    @staticmethod
    def of(*values) -> "CoordPoint":
        return CoordPoint(tuple(as_field(v) for v in values))

    @staticmethod
    def from_iter(values: Iterable) -> "CoordPoint":
        return CoordPoint(tuple(as_field(v) for v in values))

    @staticmethod
    def zero(d: int) -> "CoordPoint":
        return CoordPoint(tuple(ZERO for _ in range(d)))

    @staticmethod
    def unit_time(d: int) -> "CoordPoint":
        return CoordPoint((ONE,) + tuple(ZERO for _ in range(d - 1)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def time_part(self) -> FieldElem:
        return self.coords[0]

    @property
    def space_part(self) -> "CoordPoint":
        return CoordPoint(self.coords[1:])

    def _check_dim(self, other: "CoordPoint"):
        if self.dim != other.dim:
            raise DimensionMismatch(
                f"dimension mismatch: {self.dim} versus {other.dim}"
            )

    def __add__(self, other: "CoordPoint") -> "CoordPoint":
        self._check_dim(other)
        return CoordPoint(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CoordPoint") -> "CoordPoint":
        self._check_dim(other)
        return CoordPoint(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "CoordPoint":
        return CoordPoint(tuple(-a for a in self.coords))

    def scale(self, factor: FieldLike) -> "CoordPoint":
        factor = as_field(factor)
        return CoordPoint(tuple(factor * a for a in self.coords))

    def dot(self, other: "CoordPoint") -> FieldElem:
        self._check_dim(other)
        total = ZERO
        for a, b in zip(self.coords, other.coords):
            total = total + a * b
        return total

    def norm_sq(self) -> FieldElem:
        return self.dot(self)

    def space_norm_sq(self) -> FieldElem:
        return self.space_part.dot(self.space_part)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def literals(self):
        return [c.literal() for c in self.coords]

    def __repr__(self):
        return "CoordPoint(" + ", ".join(self.literals()) + ")"


def point(*values) -> CoordPoint:
    return CoordPoint.of(*values)


def norm(p: CoordPoint) -> FieldElem:
    """Euclidean length sqrt(p_1^2 + ... + p_d^2), exact."""
    return field_sqrt(p.norm_sq())
