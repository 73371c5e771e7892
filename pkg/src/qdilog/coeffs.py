"""Exact arithmetic in the field Q(v) with v^2 = q.

Elements are fractions of Laurent polynomials in the half power v = q^{1/2}
with rational coefficients. The canonical form is

    numerator / denominator

where the denominator is a monic polynomial with nonzero constant term
(all v-shifts live in the numerator, which may have negative exponents)
and numerator and denominator share no nonconstant factor.

Internally the denominator is stored factored into cyclotomic polynomials
Phi_d(v) plus at most one cyclotomic-free "opaque" monic factor. Since the
Phi_d are irreducible over Q, reduction against them needs only exact
divisions; the Euclidean algorithm runs only on the rare opaque factors
(general division, user-supplied denominators). The factored shape is an
implementation detail: equality, rendering and the numerator/denominator
views all follow the canonical form above.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd

from .errors import PoleError

Coef = "int | Fraction"

_EVAL_POINT = 3  # anchor for fast non-divisibility tests


def _norm(c):
    """Collapse integral Fractions to int."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


# ---------------------------------------------------------------------------
# Laurent polynomials as {exponent: coefficient} dicts, no zero values.

def ladd(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = _norm(s)
        else:
            out.pop(k, None)
    return out


def lneg(a: dict) -> dict:
    return {k: -c for k, c in a.items()}


def lmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            s = out.get(k, 0) + ca * cb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return {k: _norm(c) for k, c in out.items() if c}


def lscale(a: dict, c) -> dict:
    if not c:
        return {}
    c = _norm(c)
    return {k: _norm(v * c) for k, v in a.items()}


def lshift(a: dict, s: int) -> dict:
    if s == 0:
        return dict(a)
    return {k + s: v for k, v in a.items()}


def _lsplit_int(a: dict) -> tuple[Fraction, int, list[int]]:
    """Write a = scale * v^shift * P with P a primitive integer polynomial.

    Returns (scale, shift, coefficients of P low-to-high, P[0] != 0).
    """
    if not a:
        return Fraction(0), 0, []
    shift = min(a)
    deg = max(a) - shift
    denlcm = 1
    for c in a.values():
        if isinstance(c, Fraction):
            denlcm = denlcm * c.denominator // igcd(denlcm, c.denominator)
    ints = [0] * (deg + 1)
    for k, c in a.items():
        ints[k - shift] = int(c * denlcm)
    g = 0
    for c in ints:
        g = igcd(g, abs(c))
    if ints[-1] < 0:
        g = -g
    ints = [c // g for c in ints]
    return Fraction(g, denlcm), shift, ints


def _lassemble(scale: Fraction, shift: int, ints: list[int]) -> dict:
    scale = _norm(scale)
    out = {}
    for i, c in enumerate(ints):
        if c:
            out[i + shift] = _norm(c * scale)
    return out


# ---------------------------------------------------------------------------
# Integer polynomial helpers (coefficient lists, low-to-high).

def _ipmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _ipdiv_exact(a: list[int], b: list[int]):
    """Quotient of a by the monic integer polynomial b, or None if inexact."""
    if len(a) < len(b):
        return None
    rem = list(a)
    dq = len(a) - len(b)
    quo = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = rem[i + len(b) - 1]
        quo[i] = c
        if c:
            for j, cb in enumerate(b):
                rem[i + j] -= c * cb
    if any(rem[: len(b) - 1]):
        return None
    return quo


# ---------------------------------------------------------------------------
# Cyclotomic polynomials.

@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial, low-to-high."""
    if d == 1:
        return (-1, 1)
    poly = [-1] + [0] * (d - 1) + [1]  # v^d - 1
    for e in range(1, d):
        if d % e == 0:
            q = _ipdiv_exact(poly, list(cyclotomic(e)))
            assert q is not None
            poly = q
    return tuple(poly)


@lru_cache(maxsize=None)
def _cyclotomic_at_anchor(d: int) -> int:
    x, acc = _EVAL_POINT, 0
    for c in reversed(cyclotomic(d)):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def _phi_sieve(limit: int) -> tuple[int, ...]:
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            for m in range(p, limit + 1, p):
                phi[m] -= phi[m] // p
    return tuple(phi)


def _cyclo_candidates(max_deg: int) -> list[int]:
    """All d with deg Phi_d = phi(d) <= max_deg (complete: phi(d) >= sqrt(d/2))."""
    if max_deg < 1:
        return []
    bound = 2 * max_deg * max_deg + 1
    # round the sieve size up so repeated calls share one cached sieve
    limit = 1 << (bound - 1).bit_length()
    phi = _phi_sieve(limit)
    return [d for d in range(1, bound + 1) if phi[d] <= max_deg]


def _cyc_expand(cyc: dict[int, int]) -> list[int]:
    poly = [1]
    for d in sorted(cyc):
        f = list(cyclotomic(d))
        for _ in range(cyc[d]):
            poly = _ipmul(poly, f)
    return poly


# ---------------------------------------------------------------------------
# Fraction-coefficient polynomial gcd (rare path: opaque factors only).

def _fdivmod(a: list, b: list):
    rem = list(a)
    lead = b[-1]
    dq = len(a) - len(b)
    quo = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = Fraction(rem[i + len(b) - 1]) / lead
        quo[i] = c
        if c:
            for j, cb in enumerate(b):
                rem[i + j] -= c * cb
    while rem and not rem[-1]:
        rem.pop()
    return quo, rem


def _fgcd(a: list, b: list) -> list:
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while b:
        _, r = _fdivmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [_norm(c / lead) for c in a]


def _trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


class HalfLaurent:
    """Laurent polynomial in v = q^{1/2} with rational coefficients.

    Stored as an exponent-to-coefficient map with no zero entries; two
    values are equal iff their maps are equal.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        data = {}
        if coeffs:
            for k, c in dict(coeffs).items():
                c = _norm(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
                if c:
                    data[int(k)] = c
        self.coeffs = data

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        return HalfLaurent(ladd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return HalfLaurent(ladd(self.coeffs, lneg(other.coeffs)))

    def __mul__(self, other):
        return HalfLaurent(lmul(self.coeffs, other.coeffs))

    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def valuation(self):
        return min(self.coeffs) if self.coeffs else None

    def __repr__(self):
        return f"HalfLaurent({self.coeffs!r})"


class QRat:
    """Canonical rational function in v = q^{1/2} over Q.

    Denominator monic with nonzero constant term, numerator and denominator
    coprime; equality of values is componentwise equality.
    """

    __slots__ = ("_num", "_cyc", "_op")

    def __init__(self, value=0):
        if isinstance(value, QRat):
            self._num = value._num
            self._cyc = value._cyc
            self._op = value._op
            return
        c = _norm(Fraction(value))
        self._num = {0: c} if c else {}
        self._cyc = {}
        self._op = None

    # -- trusted constructors ------------------------------------------------

    @classmethod
    def _make(cls, num: dict, cyc: dict, op) -> "QRat":
        self = object.__new__(cls)
        if not num:
            self._num, self._cyc, self._op = {}, {}, None
        else:
            self._num, self._cyc, self._op = num, cyc, op
        return self

    @classmethod
    def from_laurent(cls, coeffs) -> "QRat":
        num = {}
        for k, c in dict(coeffs).items():
            c = _norm(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
            if c:
                num[int(k)] = c
        return cls._make(num, {}, None)

    @classmethod
    def v_power(cls, k: int) -> "QRat":
        return cls._make({k: 1}, {}, None)

    @classmethod
    def fraction(cls, num, den) -> "QRat":
        """Build num/den from Laurent coefficient maps and canonicalize."""
        num = dict(num)
        den = dict(den)
        num = {k: c for k, c in ((k, _norm(Fraction(c))) for k, c in num.items()) if c}
        den = {k: c for k, c in ((k, _norm(Fraction(c))) for k, c in den.items()) if c}
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls._make({}, {}, None)
        dscale, dshift, dints = _lsplit_int(den)
        num = lshift(num, -dshift)
        cyc: dict[int, int] = {}
        for d in _cyclo_candidates(len(dints) - 1):
            if len(dints) == 1:
                break
            f = list(cyclotomic(d))
            while len(dints) >= len(f):
                q = _ipdiv_exact(dints, f)
                if q is None:
                    break
                dints = q
                cyc[d] = cyc.get(d, 0) + 1
        # remaining integer factor: fold the scalar part into the numerator
        lead = dints[-1]
        num = lscale(num, Fraction(1) / (dscale * lead))
        op = None
        if len(dints) > 1:
            op = tuple(_norm(Fraction(c, lead)) for c in dints)
        return _reduce(num, cyc, op)

    # -- canonical views -----------------------------------------------------

    @property
    def numerator(self) -> HalfLaurent:
        return HalfLaurent(self._num)

    @property
    def denominator(self) -> HalfLaurent:
        poly = _cyc_expand(self._cyc)
        out = {i: c for i, c in enumerate(poly) if c}
        if self._op is not None:
            out = lmul(out, {i: c for i, c in enumerate(self._op) if c})
        return HalfLaurent(out)

    # -- predicates ----------------------------------------------------------

    def __bool__(self):
        return bool(self._num)

    def is_one(self) -> bool:
        return self._num == {0: 1} and not self._cyc and self._op is None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRat(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return (
            self._num == other._num
            and self._cyc == other._cyc
            and self._op == other._op
        )

    def __hash__(self):
        return hash(
            (
                frozenset(self._num.items()),
                tuple(sorted(self._cyc.items())),
                self._op,
            )
        )

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRat(other)
        if not isinstance(other, QRat):
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        if self._cyc == other._cyc and self._op == other._op:
            num = ladd(self._num, other._num)
            if not num:
                return _ZERO
            return _reduce(num, dict(self._cyc), self._op)
        cyc = dict(self._cyc)
        for d, m in other._cyc.items():
            cyc[d] = max(cyc.get(d, 0), m)
        amiss = {d: cyc[d] - self._cyc.get(d, 0) for d in cyc if cyc[d] > self._cyc.get(d, 0)}
        bmiss = {d: cyc[d] - other._cyc.get(d, 0) for d in cyc if cyc[d] > other._cyc.get(d, 0)}
        anum, bnum = self._num, other._num
        if amiss:
            anum = lmul(anum, {i: c for i, c in enumerate(_cyc_expand(amiss)) if c})
        if bmiss:
            bnum = lmul(bnum, {i: c for i, c in enumerate(_cyc_expand(bmiss)) if c})
        if self._op == other._op:
            op = self._op
        elif self._op is None:
            op = other._op
            anum = lmul(anum, {i: c for i, c in enumerate(op) if c})
        elif other._op is None:
            op = self._op
            bnum = lmul(bnum, {i: c for i, c in enumerate(op) if c})
        else:
            g = _fgcd(list(self._op), list(other._op))
            aextra, _ = _fdivmod(list(other._op), g)
            bextra, _ = _fdivmod(list(self._op), g)
            anum = lmul(anum, {i: _norm(c) for i, c in enumerate(aextra) if c})
            bnum = lmul(bnum, {i: _norm(c) for i, c in enumerate(bextra) if c})
            opl = _trim([_norm(c) for c in _ipmul_frac(list(self._op), aextra)])
            op = tuple(opl)
        num = ladd(anum, bnum)
        if not num:
            return _ZERO
        return _reduce(num, cyc, op)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return QRat._make(lneg(self._num), dict(self._cyc), self._op)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRat(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return QRat(other).__sub__(self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRat(other)
        if not isinstance(other, QRat):
            return NotImplemented
        if not self._num or not other._num:
            return _ZERO
        num = lmul(self._num, other._num)
        cyc = dict(self._cyc)
        for d, m in other._cyc.items():
            cyc[d] = cyc.get(d, 0) + m
        if self._op is None:
            op = other._op
        elif other._op is None:
            op = self._op
        else:
            op = tuple(_trim([_norm(c) for c in _ipmul_frac(list(self._op), list(other._op))]))
        return _reduce(num, cyc, op)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inv(self) -> "QRat":
        if not self._num:
            raise ZeroDivisionError("inverse of zero")
        poly = _cyc_expand(self._cyc)
        num = {i: c for i, c in enumerate(poly) if c}
        if self._op is not None:
            num = lmul(num, {i: c for i, c in enumerate(self._op) if c})
        return QRat.fraction(num, self._num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRat(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return self.__mul__(other.inv())

    def __rtruediv__(self, other):
        return QRat(other).__mul__(self.inv())

    def __pow__(self, n: int):
        if n < 0:
            return self.inv().__pow__(-n)
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, k: int) -> "QRat":
        """Multiply by v^k (exact, no reduction needed)."""
        if k == 0 or not self._num:
            return self
        return QRat._make(lshift(self._num, k), dict(self._cyc), self._op)

    # -- specialization ------------------------------------------------------

    def specialize(self, t) -> Fraction:
        """Exact value at v = t for rational t."""
        t = Fraction(t)
        shift = min(self._num) if self._num else 0
        shift = min(shift, 0)
        den_val = Fraction(1)
        for d, m in self._cyc.items():
            acc = Fraction(0)
            for c in reversed(cyclotomic(d)):
                acc = acc * t + c
            den_val *= acc**m
        if self._op is not None:
            acc = Fraction(0)
            for c in reversed(self._op):
                acc = acc * t + c
            den_val *= acc
        den_val *= t ** (-shift)
        if den_val == 0:
            raise PoleError(f"denominator vanishes at v = {t}")
        num_val = sum((Fraction(self._num[k]) * t ** (k - shift) for k in self._num), Fraction(0))
        return num_val / den_val

    def specialize_sqrt(self, c) -> tuple[Fraction, Fraction]:
        """Image (a, b) = a + b*v in Q[v]/(v^2 - c), for rational c != 0.

        Substitutes q = c while keeping the half power symbolic; used to
        specialize q to a prime power without introducing real square roots.
        """
        c = Fraction(c)
        if c == 0:
            raise PoleError("specialize_sqrt requires c != 0")

        def pair_of(coeffs) -> tuple[Fraction, Fraction]:
            a = Fraction(0)
            b = Fraction(0)
            for k, coef in coeffs.items():
                m, r = divmod(k, 2)
                if r == 0:
                    a += Fraction(coef) * c**m
                else:
                    b += Fraction(coef) * c**m
            return a, b

        na, nb = pair_of(self._num)
        poly = _cyc_expand(self._cyc)
        den = {i: x for i, x in enumerate(poly) if x}
        if self._op is not None:
            den = lmul(den, {i: x for i, x in enumerate(self._op) if x})
        da, db = pair_of(den)
        norm = da * da - db * db * c
        if norm == 0:
            raise PoleError(f"denominator vanishes at q = {c}")
        # (na + nb v)(da - db v) / norm
        return ((na * da - nb * db * c) / norm, (nb * da - na * db) / norm)

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        return qrat_to_text(self)

    def __repr__(self):
        return f"QRat({qrat_to_text(self)!r})"


def _ipmul_frac(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += Fraction(ca) * cb
    return out


def _reduce(num: dict, cyc: dict, op) -> QRat:
    """Cancel denominator factors against num; inputs are owned by callee."""
    if cyc:
        scale = shift = ints = None
        anchor_val = None
        for d in sorted(cyc):
            target = _cyclotomic_at_anchor(d)
            f = None
            while cyc[d] > 0:
                if ints is None:
                    scale, shift, ints = _lsplit_int(num)
                    anchor_val = 0
                    for cf in reversed(ints):
                        anchor_val = anchor_val * _EVAL_POINT + cf
                if anchor_val % target != 0:
                    break
                if f is None:
                    f = list(cyclotomic(d))
                q = _ipdiv_exact(ints, f)
                if q is None:
                    break
                ints = q
                anchor_val //= target
                cyc[d] -= 1
            if cyc[d] == 0:
                del cyc[d]
        if ints is not None:
            num = _lassemble(scale, shift, ints)
    if op is not None:
        shift = min(num)
        poly = [Fraction(0)] * (max(num) - shift + 1)
        for k, cch in num.items():
            poly[k - shift] = Fraction(cch)
        g = _fgcd(poly, list(op))
        if len(g) > 1:
            qn, _ = _fdivmod(poly, [Fraction(x) for x in g])
            qd, _ = _fdivmod([Fraction(x) for x in op], [Fraction(x) for x in g])
            num = {i + shift: _norm(c) for i, c in enumerate(qn) if c}
            op = tuple(_norm(c) for c in qd)
        if len(op) == 1:
            # constant opaque part folds into the numerator
            if op[0] != 1:
                num = lscale(num, Fraction(1) / op[0])
            op = None
    return QRat._make(num, cyc, op)


_ZERO = QRat(0)
_ONE = QRat(1)


def qrat_arith(a: QRat, b: QRat, op: str) -> QRat:
    """Field operation on canonical values; op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def qrat_specialize(f: QRat, t) -> Fraction:
    """Exact rational value of f at v = q^{1/2} = t."""
    return f.specialize(t)


# ---------------------------------------------------------------------------
# Text rendering and parsing. Grammar (q is shorthand for v^2):
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := base ('^' ['-'] digits)?
#   base   := digits ('/' digits)? | 'v' | 'q' | '(' expr ')'

def _poly_text(coeffs: dict) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in sorted(coeffs, reverse=True):
        c = coeffs[k]
        neg = c < 0
        c = -c if neg else c
        if k == 0:
            body = str(c) if (isinstance(c, int) or c.denominator == 1) else f"({c})"
        else:
            var = "v" if k == 1 else f"v^{k}"
            if c == 1:
                body = var
            elif isinstance(c, int) or c.denominator == 1:
                body = f"{c}*{var}"
            else:
                body = f"({c})*{var}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def qrat_to_text(f: QRat) -> str:
    num = _poly_text(f._num)
    den = f.denominator
    if den.coeffs == {0: 1}:
        return num
    den_text = _poly_text(den.coeffs)
    if len(f._num) > 1:
        num = f"({num})"
    return f"{num}/({den_text})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ValueError(f"parse error at {self.pos} in {self.text!r}: {msg}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self) -> int:
        self.peek()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def parse(self) -> QRat:
        value = self.expr()
        if self.peek():
            self.error("trailing input")
        return value

    def expr(self) -> QRat:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            value = -self.term()
        else:
            value = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.term()
            elif ch == "-":
                self.pos += 1
                value = value - self.term()
            else:
                return value

    def term(self) -> QRat:
        value = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                value = value * self.factor()
            elif ch == "/":
                self.pos += 1
                value = value / self.factor()
            else:
                return value

    def factor(self) -> QRat:
        value = self.base()
        if self.peek() == "^":
            self.pos += 1
            value = value ** self.take_int()
        return value

    def base(self) -> QRat:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if ch == "v":
            self.pos += 1
            return QRat.v_power(1)
        if ch == "q":
            self.pos += 1
            return QRat.v_power(2)
        if ch.isdigit():
            n = self.take_int()
            # a '/' between two bare integers is a rational literal
            save = self.pos
            if self.peek() == "/":
                self.pos += 1
                if self.peek().isdigit():
                    return QRat(Fraction(n, self.take_int()))
                self.pos = save
            return QRat(n)
        self.error("expected value")


def qrat_from_text(text: str) -> QRat:
    """Parse the rendering produced by qrat_to_text (loss-free round trip)."""
    return _Parser(text).parse()
