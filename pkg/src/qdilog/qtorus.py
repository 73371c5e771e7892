"""Truncated series in q-commuting variables and dilogarithm identities.

Monomials y^a for integer vectors a multiply by y^a y^b = v^{L(a,b)} y^{a+b}
where L is an antisymmetric integer form and v = q^{1/2}. A series is stored
as an offset monomial times a series supported on the positive cone:

    f  =  y^offset * sum_g  c_g y^g,   g >= 0, |g| <= D.

The offset absorbs negative exponents (inverse monomials); the truncation
budget D counts only the cone part. Products of noncommuting factors are
always evaluated left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coeffs import QRat, qrat_to_text, qrat_from_text
from .errors import TruncationError, TwoCycleError

_ONE = QRat(1)


@dataclass(frozen=True)
class SkewForm:
    """Antisymmetric integer form on Z^n given by its matrix."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        for i, row in enumerate(self.matrix):
            if len(row) != n:
                raise ValueError("matrix must be square")
            if row[i] != 0:
                raise ValueError("matrix must have zero diagonal")
            for j in range(n):
                if row[j] != -self.matrix[j][i]:
                    raise ValueError("matrix must be antisymmetric")

    @property
    def n(self) -> int:
        return len(self.matrix)

    def lam(self, a, b) -> int:
        total = 0
        for i, ai in enumerate(a):
            if ai:
                row = self.matrix[i]
                total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)
        return total

    def apply(self, b) -> tuple[int, ...]:
        """The vector (L(e_i, b))_i, so L(a, b) = a . apply(b)."""
        return tuple(
            sum(row[j] * bj for j, bj in enumerate(b) if bj) for row in self.matrix
        )


def skew_from_quiver(quiver) -> SkewForm:
    """Antisymmetrized arrow-count matrix: L[i][j] = a_ij - a_ji."""
    n = quiver.n
    mult = quiver.mult
    for i in range(n):
        if mult[i][i]:
            raise ValueError(f"quiver has a loop at vertex {i + 1}")
    return SkewForm(
        tuple(
            tuple(mult[i][j] - mult[j][i] for j in range(n)) for i in range(n)
        )
    )


def monomial_mul(form: SkewForm, alpha, beta) -> tuple[int, tuple[int, ...]]:
    """y^alpha y^beta = v^power y^(alpha+beta); returns (power, alpha+beta)."""
    alpha = tuple(alpha)
    beta = tuple(beta)
    if len(alpha) != form.n or len(beta) != form.n:
        raise ValueError("exponent length does not match the form")
    return form.lam(alpha, beta), tuple(a + b for a, b in zip(alpha, beta))


class QSeries:
    """Truncated series over a skew form: y^offset times a cone series."""

    __slots__ = ("form", "D", "offset", "coeffs")

    def __init__(self, form: SkewForm, D: int, coeffs=None, offset=None):
        if D < 0:
            raise ValueError("truncation bound must be nonnegative")
        self.form = form
        self.D = D
        self.offset = tuple(offset) if offset is not None else (0,) * form.n
        if len(self.offset) != form.n:
            raise ValueError("offset length does not match the form")
        data = {}
        if coeffs:
            for g, c in dict(coeffs).items():
                g = tuple(g)
                if len(g) != form.n or any(x < 0 for x in g):
                    raise ValueError(f"bad cone exponent {g}")
                if sum(g) > D:
                    continue
                if not isinstance(c, QRat):
                    c = QRat(c)
                if c:
                    data[g] = c
        self.coeffs = data

    # -- constructors ----------------------------------------------------

    @classmethod
    def unit(cls, form: SkewForm, D: int) -> "QSeries":
        return cls(form, D, {(0,) * form.n: _ONE})

    @classmethod
    def monomial(cls, form: SkewForm, D: int, exponent, coeff=_ONE) -> "QSeries":
        """The single term coeff * y^exponent (any integer exponent)."""
        return cls(form, D, {(0,) * form.n: coeff}, offset=tuple(exponent))

    # -- structure ----------------------------------------------------------

    def with_offset(self, new_offset) -> "QSeries":
        """Re-express over a smaller offset (componentwise <=), exactly.

        Shifting multiplies each coefficient by the v-power dictated by the
        commutation rule; cone terms pushed past degree D are dropped, which
        matches the truncation contract.
        """
        new_offset = tuple(new_offset)
        delta = tuple(o - s for o, s in zip(self.offset, new_offset))
        if any(d < 0 for d in delta):
            raise ValueError("new offset must be componentwise <= current")
        if not any(delta):
            return self
        out = {}
        for g, c in self.coeffs.items():
            g2 = tuple(a + b for a, b in zip(g, delta))
            if sum(g2) > self.D:
                continue
            power = self.form.lam(self.offset, g) - self.form.lam(new_offset, g2)
            out[g2] = c.shift(power)
        return QSeries(self.form, self.D, out, offset=new_offset)

    def coefficient(self, exponent) -> QRat:
        """Absolute coefficient of the basis monomial y^exponent."""
        exponent = tuple(exponent)
        g = tuple(e - o for e, o in zip(exponent, self.offset))
        if any(x < 0 for x in g):
            return QRat(0)
        c = self.coeffs.get(g)
        if c is None:
            return QRat(0)
        return c.shift(self.form.lam(self.offset, g))

    def _common(self, other: "QSeries"):
        if self.form != other.form:
            raise ValueError("series live over different skew forms")
        if self.D != other.D:
            raise ValueError(f"truncation bounds differ: {self.D} != {other.D}")
        off = tuple(min(a, b) for a, b in zip(self.offset, other.offset))
        return self.with_offset(off), other.with_offset(off)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        raise TypeError("QSeries is not hashable")

    def first_difference(self, other):
        """First differing monomial in (degree, lex) order, or None.

        Returns (absolute exponent, coefficient here, coefficient there).
        """
        a, b = self._common(other)
        keys = set(a.coeffs) | set(b.coeffs)
        zero = QRat(0)
        for g in sorted(keys, key=lambda g: (sum(g), g)):
            ca = a.coeffs.get(g, zero)
            cb = b.coeffs.get(g, zero)
            if ca != cb:
                mu = tuple(o + x for o, x in zip(a.offset, g))
                power = a.form.lam(a.offset, g)
                return mu, ca.shift(power), cb.shift(power)
        return None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        out = dict(a.coeffs)
        for g, c in b.coeffs.items():
            s = out.get(g)
            s = c if s is None else s + c
            if s:
                out[g] = s
            else:
                out.pop(g, None)
        return QSeries(a.form, a.D, out, offset=a.offset)

    def __sub__(self, other):
        return self + other.scale(QRat(-1))

    def scale(self, c: QRat) -> "QSeries":
        if not c:
            return QSeries(self.form, self.D, {}, offset=self.offset)
        return QSeries(
            self.form,
            self.D,
            {g: x * c for g, x in self.coeffs.items()},
            offset=self.offset,
        )

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.form != other.form:
            raise ValueError("series live over different skew forms")
        if self.D != other.D:
            raise ValueError(f"truncation bounds differ: {self.D} != {other.D}")
        form = self.form
        D = self.D
        off = tuple(a + b for a, b in zip(self.offset, other.offset))
        base = form.lam(self.offset, other.offset)
        rows = sorted(
            ((sum(g), g, c, form.apply(g)) for g, c in other.coeffs.items()),
            key=lambda r: (r[0], r[1]),
        )
        out: dict = {}
        for ga, ca in self.coeffs.items():
            da = sum(ga)
            if da > D:
                continue
            # commuting y^ga fully past the right offset costs the whole
            # q-power, hence the factor 2 on the half-power count
            loff = base + 2 * form.lam(ga, other.offset)
            for db, gb, cb, wb in rows:
                if da + db > D:
                    break
                power = loff + sum(x * w for x, w in zip(ga, wb))
                key = tuple(x + y for x, y in zip(ga, gb))
                term = (ca * cb).shift(power)
                acc = out.get(key)
                acc = term if acc is None else acc + term
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return QSeries(form, D, out, offset=off)

    def inv(self) -> "QSeries":
        """Two-sided inverse up to degree D; offset is negated."""
        zero_key = (0,) * self.form.n
        c0 = self.coeffs.get(zero_key)
        if c0 is None or not c0:
            raise ValueError("series has no invertible constant term")
        form = self.form
        D = self.D
        c0i = c0.inv()
        support = [
            (g, c, form.apply(g)) for g, c in self.coeffs.items() if g != zero_key
        ]
        inv_cone = {zero_key: c0i}
        # breadth-first closure over sums of support exponents, by degree
        frontier = {zero_key}
        reachable = {zero_key}
        while frontier:
            new = set()
            for mu in frontier:
                for g, _, _ in support:
                    nu = tuple(a + b for a, b in zip(mu, g))
                    if sum(nu) <= D and nu not in reachable:
                        new.add(nu)
            reachable |= new
            frontier = new
        for mu in sorted(reachable - {zero_key}, key=lambda g: (sum(g), g)):
            acc = None
            for g, c, wg in support:
                rest = tuple(a - b for a, b in zip(mu, g))
                if any(x < 0 for x in rest):
                    continue
                h = inv_cone.get(rest)
                if h is None:
                    continue
                # L(g, rest) = -rest . apply(g), with apply(g) precomputed
                power = -sum(a * b for a, b in zip(rest, wg))
                term = (c * h).shift(power)
                acc = term if acc is None else acc + term
            if acc is not None and acc:
                inv_cone[mu] = -(c0i * acc)
        # (y^a g)^{-1} = g^{-1} y^{-a}; commuting y^g past y^{-a} costs the
        # whole q-power v^{-2 L(g, a)}
        neg = tuple(-x for x in self.offset)
        out = {}
        for g, c in inv_cone.items():
            out[g] = c.shift(-2 * form.lam(g, self.offset))
        return QSeries(form, D, out, offset=neg)

    # -- rendering ------------------------------------------------------------

    def to_json(self) -> dict:
        terms = [
            {"exp": list(g), "coeff": qrat_to_text(c)}
            for g, c in sorted(self.coeffs.items())
        ]
        return {"offset": list(self.offset), "D": self.D, "terms": terms}

    @classmethod
    def from_json(cls, form: SkewForm, data: dict) -> "QSeries":
        coeffs = {
            tuple(t["exp"]): qrat_from_text(t["coeff"]) for t in data["terms"]
        }
        return cls(form, data["D"], coeffs, offset=tuple(data["offset"]))

    def __repr__(self):
        terms = ", ".join(
            f"{g}: {qrat_to_text(c)}" for g, c in sorted(self.coeffs.items())
        )
        return f"QSeries(offset={self.offset}, D={self.D}, {{{terms}}})"


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    return f * g


def series_inv(f: QSeries) -> QSeries:
    return f.inv()


@lru_cache(maxsize=None)
def _dilog_coeff(n: int) -> QRat:
    """n-th coefficient of E(y): v^n / prod_{j<=n} (q^j - 1)."""
    if n == 0:
        return QRat(1)
    prev = _dilog_coeff(n - 1)
    qn_minus_1 = QRat.v_power(2 * n) - QRat(1)
    return prev.shift(1) / qn_minus_1


@lru_cache(maxsize=None)
def _qfactorial(n: int) -> QRat:
    """[n]! with [k] = (q^k - 1)/(q - 1), the flag-count polynomial."""
    if n == 0:
        return QRat(1)
    bracket = (QRat.v_power(2 * n) - QRat(1)) / (QRat.v_power(2) - QRat(1))
    return _qfactorial(n - 1) * bracket


def _check_dilog_args(form: SkewForm, c: QRat, alpha):
    alpha = tuple(alpha)
    if len(alpha) != form.n:
        raise ValueError("exponent length does not match the form")
    if any(x < 0 for x in alpha) or not any(alpha):
        raise ValueError("dilogarithm argument must be a nonzero nonnegative vector")
    if not c:
        raise ValueError("dilogarithm scalar must be nonzero")
    return alpha


def dilog(form: SkewForm, c, alpha, D: int) -> QSeries:
    """E(c y^alpha) truncated at total degree D.

    Term n is c^n v^{n^2} / prod_{k<n}(q^n - q^k) times y^{n alpha}; the
    scalar stays in the coefficient stream so exponents remain integral.
    """
    if not isinstance(c, QRat):
        c = QRat(c)
    alpha = _check_dilog_args(form, c, alpha)
    weight = sum(alpha)
    coeffs = {}
    cn = QRat(1)
    for n in range(D // weight + 1):
        if n:
            cn = cn * c
        coeffs[tuple(n * a for a in alpha)] = cn * _dilog_coeff(n)
    return QSeries(form, D, coeffs)


def quantum_exp(form: SkewForm, c, alpha, D: int) -> QSeries:
    """exp_q(c y^alpha) = sum (c y^alpha)^n / [n]! truncated at degree D."""
    if not isinstance(c, QRat):
        c = QRat(c)
    alpha = _check_dilog_args(form, c, alpha)
    weight = sum(alpha)
    coeffs = {}
    cn = QRat(1)
    for n in range(D // weight + 1):
        if n:
            cn = cn * c
        coeffs[tuple(n * a for a in alpha)] = cn / _qfactorial(n)
    return QSeries(form, D, coeffs)


def eval_word(form: SkewForm, word, D: int) -> QSeries:
    """Ordered product of E(c y^alpha)^sign factors, left to right.

    Each word item is (sign, c, alpha) with sign +1 or -1.
    """
    result = QSeries.unit(form, D)
    for sign, c, alpha in word:
        factor = dilog(form, c, alpha, D)
        if sign == -1:
            factor = factor.inv()
        elif sign != 1:
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        result = result * factor
    return result


_FORM1 = SkewForm(((0,),))


def shift_identity_check(D: int) -> bool:
    """E(y)(1 + q^{1/2} y) = E(q y) up to degree D, one variable."""
    lhs = dilog(_FORM1, 1, (1,), D) * QSeries(
        _FORM1, D, {(0,): QRat(1), (1,): QRat.v_power(1)}
    )
    rhs = dilog(_FORM1, QRat.v_power(2), (1,), D)
    return lhs == rhs


def conj_factor_check(m: int, D: int) -> bool:
    """E(q^m y) E(y)^{-1} equals the m-fold product of linear factors.

    For m >= 0 the factors are (1 + q^{-1/2+j} y), j = 1..m; for m < 0 they
    are the inverses (1 + q^{-|m|-1/2+j} y)^{-1}, j = 1..|m|.
    """
    if D < abs(m):
        raise ValueError("need D >= |m|")
    e_inv = dilog(_FORM1, 1, (1,), D).inv()
    lhs = dilog(_FORM1, QRat.v_power(2 * m), (1,), D) * e_inv
    rhs = QSeries.unit(_FORM1, D)
    if m >= 0:
        for j in range(1, m + 1):
            rhs = rhs * QSeries(
                _FORM1, D, {(0,): QRat(1), (1,): QRat.v_power(2 * j - 1)}
            )
    else:
        mm = -m
        for j in range(1, mm + 1):
            factor = QSeries(
                _FORM1, D, {(0,): QRat(1), (1,): QRat.v_power(-2 * mm - 1 + 2 * j)}
            )
            rhs = rhs * factor.inv()
    return lhs == rhs


def twist_involution_check(m: int) -> bool:
    """Finite Laurent identity behind the involutivity of the intertwiner:

        prod_{j=1}^m (1 + q^{-1/2+j} z)
            = q^{m^2/2} z^m prod_{j=1}^m (1 + q^{-m-1/2+j} z^{-1}),

    checked exactly as Laurent polynomials in a single commuting z.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")

    def poly_mul(a: dict, b: dict) -> dict:
        out: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                s = out.get(k, QRat(0)) + ca * cb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    lhs = {0: QRat(1)}
    for j in range(1, m + 1):
        lhs = poly_mul(lhs, {0: QRat(1), 1: QRat.v_power(2 * j - 1)})
    rhs = {m: QRat.v_power(m * m)}
    for j in range(1, m + 1):
        rhs = poly_mul(rhs, {0: QRat(1), -1: QRat.v_power(2 * j - 2 * m - 1)})
    return lhs == rhs


def _arrow_counts(quiver, k: int, i: int) -> tuple[int, int]:
    if quiver.mult[k][k]:
        raise ValueError(f"vertex {k + 1} has a loop")
    r = quiver.mult[k][i]
    s = quiver.mult[i][k]
    if r > 0 and s > 0:
        raise TwoCycleError(f"2-cycle between vertices {k + 1} and {i + 1}")
    return r, s


def phi_plus_image(quiver, k: int, i: int) -> tuple[int, tuple[int, ...]]:
    """Monomial image of the i-th generator under the tilting comparison map.

    Returned as (power of v, exponent vector) so that the value is
    v^power y^exponent.
    """
    n = quiver.n
    if i == k:
        exp = tuple(-1 if j == k else 0 for j in range(n))
        return 0, exp
    _, s = _arrow_counts(quiver, k, i)
    form = skew_from_quiver(quiver)
    if s == 0:
        exp = tuple(1 if j == i else 0 for j in range(n))
        return 0, exp
    # q^{-s^2/2} y_i y_k^s, commuted into canonical monomial form
    e_i = tuple(1 if j == i else 0 for j in range(n))
    e_k = tuple(1 if j == k else 0 for j in range(n))
    power = -s * s + s * form.lam(e_i, e_k)
    exp = tuple(a + s * b for a, b in zip(e_i, e_k))
    return power, exp


def fg_generator_image(quiver, k: int, i: int, D: int) -> QSeries:
    """Closed form of Ad(E(y_k)) applied to the monomial image of y'_i.

    With r arrows k->i and s arrows i->k:
      r > 0:      y_i prod_{j=1}^r (1 + q^{-1/2+j} y_k)
      r = s = 0:  y_i
      s > 0:      y_i y_k^s q^{-s^2/2} prod_{j=1}^s (1 + q^{1/2-j} y_k)^{-1}
    and y_k^{-1} when i = k.
    """
    n = quiver.n
    form = skew_from_quiver(quiver)
    if i == k:
        exp = tuple(-1 if j == k else 0 for j in range(n))
        return QSeries.monomial(form, D, exp)
    r, s = _arrow_counts(quiver, k, i)
    e_i = tuple(1 if j == i else 0 for j in range(n))
    e_k = tuple(1 if j == k else 0 for j in range(n))
    y_i = QSeries.monomial(form, D, e_i)
    y_k = {e_k: QRat(1)}
    if r > 0:
        result = y_i
        for j in range(1, r + 1):
            factor = QSeries(
                form, D, {(0,) * n: QRat(1), e_k: QRat.v_power(2 * j - 1)}
            )
            result = result * factor
        return result
    if s == 0:
        return y_i
    result = y_i
    for _ in range(s):
        result = result * QSeries.monomial(form, D, e_k)
    result = result.scale(QRat.v_power(-s * s))
    for j in range(1, s + 1):
        factor = QSeries(
            form, D, {(0,) * n: QRat(1), e_k: QRat.v_power(1 - 2 * j)}
        )
        result = result * factor.inv()
    return result


KRONECKER_FORM = SkewForm(((0, 2), (-2, 0)))

# bracket factors of the two-arrow wall-crossing product that matter up to
# total degree 5; the next ones, (3,4) and (4,3), start at degree 7
_KRONECKER_LEFT = ((0, 1), (1, 2), (2, 3))
_KRONECKER_RIGHT = ((3, 2), (2, 1), (1, 0))


def kronecker_slope_one_factor(D: int) -> QSeries:
    """Exact factor of the slope-one semistables of the two-arrow quiver.

    Supported on multiples of (1,1); the coefficient of y^{(n,n)} is the
    complete homogeneous sum h_n of the two geometric families
    {q^{-i}}_{i>=1} and {q^{1-i}}_{i>=1}, so the factor is

        prod_{i>=1} (1 - q^{-i} y^{(1,1)})^{-1} (1 - q^{1-i} y^{(1,1)})^{-1}.

    Note the self-pairing <(n,n),(n,n)> vanishes, so no v-powers appear.
    Computed from the power sums p_k = (q^k + 1)/(q^k - 1) by Newton's
    recursion k h_k = sum_j p_j h_{k-j}.
    """
    kmax = D // 2
    p = {}
    for k in range(1, kmax + 1):
        qk = QRat.v_power(2 * k)
        p[k] = (qk + QRat(1)) / (qk - QRat(1))
    h = [QRat(1)]
    for k in range(1, kmax + 1):
        acc = QRat(0)
        for j in range(1, k + 1):
            acc = acc + p[j] * h[k - j]
        h.append(acc * QRat(Fraction(1, k)))
    coeffs = {(k, k): h[k] for k in range(kmax + 1)}
    return QSeries(KRONECKER_FORM, D, coeffs)


def kronecker_identity(D: int) -> bool:
    """Two-arrow quiver wall-crossing identity, checked up to degree 5:

        E(y_1) E(y_2) = E(0,1) E(1,2) E(2,3) * [slope-one factor]
                        * E(3,2) E(2,1) E(1,0)

    with E(a,b) = E(y^{(a,b)}). Beyond total degree 5 the elided bracket
    factors of the infinite product would matter, so larger D is refused.
    """
    if D > 5:
        raise TruncationError(
            "refusing D > 5: the elided factors of the infinite product "
            "are not displayed and would contribute beyond degree 5"
        )
    lhs = eval_word(KRONECKER_FORM, [(1, _ONE, (1, 0)), (1, _ONE, (0, 1))], D)
    rhs = eval_word(KRONECKER_FORM, [(1, _ONE, a) for a in _KRONECKER_LEFT], D)
    rhs = rhs * kronecker_slope_one_factor(D)
    for alpha in _KRONECKER_RIGHT:
        rhs = rhs * dilog(KRONECKER_FORM, 1, alpha, D)
    return lhs == rhs
