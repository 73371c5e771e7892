"""Finite-field Hall-algebra oracle.

Hall numbers are computed by brute-force enumeration of arrow-stable
subspace tuples in an explicit representative, with isomorphism classes
recognized through the Hom-dimension fingerprint against the
indecomposables (valid for Dynkin path algebras, where the Hom matrix is
unitriangular in any linear extension of the Hom order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import fplin
from .config import guard_limit
from .coeffs import QRat
from .errors import GenericityError, GuardError
from .dynkinrep import (
    CentralCharge,
    DynkinQuiver,
    FqRep,
    _cross,
    build_indecomposables,
    direct_sum,
    end_basis,
    hom_dim,
    is_generic,
    positive_roots,
    subrep_bases,
)
from .qtorus import QSeries, skew_from_quiver
from .quiver import Quiver


@dataclass(frozen=True)
class IsoClass:
    """Krull-Schmidt data: a multiset of positive roots, over F_p."""

    quiver: Quiver  # the quiver as presented; matrices live on its opposite
    roots: tuple[tuple[int, ...], ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(sorted(self.roots)))

    @property
    def dim(self) -> tuple[int, ...]:
        n = self.quiver.n
        out = [0] * n
        for r in self.roots:
            for i, x in enumerate(r):
                out[i] += x
        return tuple(out)

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def __str__(self):
        if not self.roots:
            return "[0]"
        return "[" + " + ".join(str(r) for r in self.roots) + "]"


def iso_classes(dq: DynkinQuiver, bound, p: int) -> list[IsoClass]:
    """All root multisets with dimension vector componentwise <= bound."""
    bound = tuple(bound)
    roots = positive_roots(dq)
    out: list[IsoClass] = []

    def rec(idx, remaining, chosen):
        if idx == len(roots):
            out.append(IsoClass(dq.quiver, tuple(chosen), p))
            return
        r = roots[idx]
        cap = min(
            (remaining[i] // r[i] for i in range(len(r)) if r[i]), default=0
        )
        for k in range(cap + 1):
            rec(
                idx + 1,
                tuple(x - k * y for x, y in zip(remaining, r)),
                chosen + [r] * k,
            )

    rec(0, bound, [])
    out.sort(key=lambda c: (c.total_dim, c.roots))
    return out


def representative(cls: IsoClass) -> FqRep:
    """An explicit module in the class, over the opposite quiver's arrows."""
    g = cls.quiver.opposite()
    table = build_indecomposables(g, cls.p)
    if not cls.roots:
        return FqRep(
            cls.p,
            g,
            (0,) * g.n,
            {(s, t): () for s, t, _ in g.arrows()},
        )
    return direct_sum([table[r] for r in cls.roots])


# ---------------------------------------------------------------------------
# Decomposition through the Hom fingerprint

_FINGERPRINT_CACHE: dict = {}


def _fingerprint_data(g: Quiver, p: int):
    """(ordered roots, indecomposables, Hom matrix) with the Hom matrix
    unitriangular for the chosen order."""
    key = (g, p)
    cached = _FINGERPRINT_CACHE.get(key)
    if cached is not None:
        return cached
    table = build_indecomposables(g, p)
    roots = sorted(table)
    hom = {
        (a, b): hom_dim(table[a], table[b]) for a in roots for b in roots
    }
    # topological order for the relation hom(a, b) != 0
    remaining = list(roots)
    order = []
    while remaining:
        for a in list(remaining):
            if all(
                hom[(b, a)] == 0 for b in remaining if b != a
            ):
                order.append(a)
                remaining.remove(a)
                break
        else:
            raise RuntimeError("hom relation is not acyclic")
    data = (order, table, hom)
    _FINGERPRINT_CACHE[key] = data
    return data


def decompose(rep: FqRep) -> tuple[tuple[int, ...], ...]:
    """Multiset of roots of the Krull-Schmidt decomposition of rep."""
    order, table, hom = _fingerprint_data(rep.quiver, rep.p)
    if not any(rep.dims):
        return ()
    h = {a: hom_dim(table[a], rep) for a in order}
    mult: dict = {}
    for idx in range(len(order) - 1, -1, -1):
        a = order[idx]
        value = h[a]
        for b in order[idx + 1 :]:
            m = mult.get(b, 0)
            if m:
                value -= m * hom[(a, b)]
        if value < 0:
            raise RuntimeError("fingerprint decomposition failed")
        if value:
            mult[a] = value
    out = []
    for a in order:
        out.extend([a] * mult.get(a, 0))
    assert tuple(
        sum(r[i] for r in out) for i in range(rep.quiver.n)
    ) == rep.dims, "decomposition does not match dimensions"
    return tuple(sorted(out))


def sub_quotient(rep: FqRep, bases):
    """The subrepresentation spanned by the given rref bases, and the
    quotient by it, as explicit representations."""
    p = rep.p
    q = rep.quiver
    sdims = tuple(len(b) for b in bases)
    qdims = tuple(d - s for d, s in zip(rep.dims, sdims))
    pivots = []
    nonpivots = []
    for v, b in enumerate(bases):
        pv = [next(c for c in range(rep.dims[v]) if row[c]) for row in b]
        pivots.append(pv)
        nonpivots.append([c for c in range(rep.dims[v]) if c not in pv])
    smaps = {}
    qmaps = {}
    for s, t, _ in q.arrows():
        mat = rep.maps[(s, t)]
        # submodule block: images of basis rows in basis-of-target coords
        rows_out = []
        for w in bases[s]:
            img = fplin.mat_vec(mat, w, p)
            coords = [img[c] for c in pivots[t]]
            # verify containment (stability of the subspace tuple)
            check = list(img)
            for co, row in zip(coords, bases[t]):
                check = [(x - co * y) % p for x, y in zip(check, row)]
            if any(check):
                raise ValueError("subspace tuple is not arrow stable")
            rows_out.append(coords)
        smaps[(s, t)] = tuple(
            tuple(rows_out[c][r] for c in range(sdims[s]))
            for r in range(sdims[t])
        )
        # quotient block: reduce images of complement vectors, keep
        # complement coordinates
        cols = []
        for c in nonpivots[s]:
            vec = [mat[r][c] for r in range(rep.dims[t])]
            for row in bases[t]:
                lead = next(i for i in range(rep.dims[t]) if row[i])
                if vec[lead]:
                    f = vec[lead]
                    vec = [(x - f * y) % p for x, y in zip(vec, row)]
            cols.append([vec[i] for i in nonpivots[t]])
        qmaps[(s, t)] = tuple(
            tuple(cols[c][r] for c in range(qdims[s])) for r in range(qdims[t])
        )
    sub = FqRep(p, q, sdims, smaps)
    quo = FqRep(p, q, qdims, qmaps)
    return sub, quo


_SUBMODULE_TABLE_CACHE: dict = {}


def submodule_pair_table(cls: IsoClass) -> dict:
    """Counts of (submodule class, quotient class) pairs over all
    subrepresentations of a representative of cls."""
    if cls.total_dim > guard_limit():
        raise GuardError(
            f"total dimension {cls.total_dim} exceeds guard {guard_limit()}"
        )
    key = (cls.quiver, cls.roots, cls.p)
    cached = _SUBMODULE_TABLE_CACHE.get(key)
    if cached is not None:
        return cached
    rep = representative(cls)
    table: dict = {}
    for bases in subrep_bases(rep):
        sub, quo = sub_quotient(rep, bases)
        pair = (decompose(sub), decompose(quo))
        table[pair] = table.get(pair, 0) + 1
    _SUBMODULE_TABLE_CACHE[key] = table
    return table


def hall_number(L: IsoClass, M: IsoClass, N: IsoClass, p: int | None = None) -> int:
    """Number of submodules of N isomorphic to L with quotient isomorphic
    to M, by exhaustive enumeration."""
    if p is not None and p != N.p:
        raise ValueError("field mismatch")
    if not (L.quiver == M.quiver == N.quiver and L.p == M.p == N.p):
        raise ValueError("classes live over different quivers or fields")
    return submodule_pair_table(N).get((L.roots, M.roots), 0)


# ---------------------------------------------------------------------------
# Euler form


def euler_form(quiver: Quiver, alpha, beta) -> int:
    """Sum a_i b_i minus sum over arrows i->j of a_i b_j (arrows of the
    quiver as presented)."""
    total = sum(a * b for a, b in zip(alpha, beta))
    for i, j, m in quiver.arrows():
        total -= m * alpha[i] * beta[j]
    return total


# ---------------------------------------------------------------------------
# Automorphism counts


def aut_order(cls: IsoClass, p: int | None = None) -> int:
    """Order of Aut of a representative, by enumerating the endomorphism
    algebra and counting its units."""
    if p is not None and p != cls.p:
        raise ValueError("field mismatch")
    p = cls.p
    if cls.total_dim > guard_limit():
        raise GuardError(
            f"total dimension {cls.total_dim} exceeds guard {guard_limit()}"
        )
    rep = representative(cls)
    if not any(rep.dims):
        return 1
    basis = end_basis(rep)
    edim = len(basis)
    if p**edim > 2_000_000:
        raise GuardError(f"endomorphism algebra too large: {p}^{edim} elements")
    n = rep.quiver.n
    count = 0
    from itertools import product as iproduct

    for coeffs in iproduct(range(p), repeat=edim):
        ok = True
        for v in range(n):
            d = rep.dims[v]
            if d == 0:
                continue
            mat = [[0] * d for _ in range(d)]
            for c, endo in zip(coeffs, basis):
                if c:
                    block = endo[v]
                    for r in range(d):
                        row = block[r]
                        for cc in range(d):
                            mat[r][cc] += c * row[cc]
            mat = tuple(tuple(x % p for x in row) for row in mat)
            if not fplin.is_invertible(mat, p):
                ok = False
                break
        if ok:
            count += 1
    return count


def _gl_order_poly(m: int) -> QRat:
    """|GL_m| as a polynomial in q: prod_{k<m} (q^m - q^k)."""
    out = QRat(1)
    for k in range(m):
        out = out * (QRat.v_power(2 * m) - QRat.v_power(2 * k))
    return out


def aut_order_poly(cls: IsoClass) -> QRat:
    """|Aut| as a polynomial in q, from the unit-group structure of the
    endomorphism algebra: q^{dim rad End} times the GL orders of the
    semisimple quotient. Cross-validated against aut_order in the tests."""
    g = cls.quiver.opposite()
    _, table, hom = _fingerprint_data(g, cls.p)
    mult: dict = {}
    for r in cls.roots:
        mult[r] = mult.get(r, 0) + 1
    rad = 0
    for a, ma in mult.items():
        for b, mb in mult.items():
            rad += ma * mb * hom[(a, b)]
    rad -= sum(m * m for m in mult.values())
    out = QRat.v_power(2 * rad)
    for m in mult.values():
        out = out * _gl_order_poly(m)
    return out


# ---------------------------------------------------------------------------
# Hall elements and the integration map


@dataclass
class HallElement:
    """Finite rational combination of classes, truncated at a dim bound."""

    bound: tuple[int, ...]
    coeffs: dict

    def __post_init__(self):
        clean = {}
        for cls, a in self.coeffs.items():
            if any(d > b for d, b in zip(cls.dim, self.bound)):
                continue
            a = Fraction(a)
            if a:
                clean[cls] = a
        self.coeffs = clean

    def __add__(self, other: "HallElement") -> "HallElement":
        if self.bound != other.bound:
            raise ValueError("bounds differ")
        out = dict(self.coeffs)
        for cls, a in other.coeffs.items():
            s = out.get(cls, Fraction(0)) + a
            if s:
                out[cls] = s
            else:
                out.pop(cls, None)
        return HallElement(self.bound, out)

    def __eq__(self, other):
        return self.bound == other.bound and self.coeffs == other.coeffs


def hall_unit(dq: DynkinQuiver, bound, p: int) -> HallElement:
    zero = IsoClass(dq.quiver, (), p)
    return HallElement(tuple(bound), {zero: Fraction(1)})


def hall_mul(x: HallElement, y: HallElement, dq: DynkinQuiver) -> HallElement:
    """Hall product truncated at the common bound: [L][M] = sum c^N_LM [N]."""
    if x.bound != y.bound:
        raise ValueError("bounds differ")
    bound = x.bound
    p = None
    for cls in list(x.coeffs) + list(y.coeffs):
        p = cls.p
        break
    if p is None:
        return HallElement(bound, {})
    by_dim: dict = {}
    for cls in iso_classes(dq, bound, p):
        by_dim.setdefault(cls.dim, []).append(cls)
    out: dict = {}
    for L, a in x.coeffs.items():
        for M, b in y.coeffs.items():
            target = tuple(u + v for u, v in zip(L.dim, M.dim))
            if any(d > bb for d, bb in zip(target, bound)):
                continue
            for N in by_dim.get(target, []):
                c = hall_number(L, M, N)
                if c:
                    out[N] = out.get(N, Fraction(0)) + a * b * c
    return HallElement(bound, {k: v for k, v in out.items() if v})


def integrate(h: HallElement, p: int, m: int = 1, D: int | None = None) -> QSeries:
    """Image under [M] -> q^{<dim,dim>/2} y^{dim} / |Aut M| over F_{p^m}.

    The half power of q stays symbolic (coefficients are rationals times
    v-powers); comparisons are made after substituting q = p^m. |Aut| is a
    genuine count over the field with p^m elements: enumerated for m = 1,
    from the unit-group polynomial for larger m.
    """
    if D is None:
        D = sum(h.bound)
    coeffs: dict = {}
    form = None
    for cls, a in h.coeffs.items():
        if form is None:
            form = skew_from_quiver(cls.quiver)
        if m == 1:
            aut = Fraction(aut_order(cls))
        else:
            pair = aut_order_poly(cls).specialize_sqrt(Fraction(p) ** m)
            assert pair[1] == 0, "automorphism order must be rational"
            aut = pair[0]
        e = euler_form(cls.quiver, cls.dim, cls.dim)
        contrib = QRat(a / aut).shift(e)
        key = cls.dim
        coeffs[key] = coeffs.get(key, QRat(0)) + contrib
    if form is None:
        raise ValueError("cannot integrate the zero element without a quiver")
    return QSeries(form, D, coeffs)


def series_pairs(series: QSeries, qval) -> dict:
    """Coefficients reduced mod (v^2 - qval), as (rational, rational) pairs
    a + b*v; used to compare integrated series at a specialized q."""
    out = {}
    for g, c in series.coeffs.items():
        pair = c.shift(series.form.lam(series.offset, g)).specialize_sqrt(qval)
        if pair != (0, 0):
            key = tuple(o + x for o, x in zip(series.offset, g))
            out[key] = pair
    return out


# ---------------------------------------------------------------------------
# Verifications


def verify_exp_sum(
    dq: DynkinQuiver, alpha, p: int, n_max: int, D: int | None = None
) -> bool:
    """Coefficientwise check of: integrating sum_n [M^n] for a brick M gives
    the dilogarithm of y^{dim M}, at q = p."""
    from .qtorus import _dilog_coeff

    alpha = tuple(alpha)
    rep = representative(IsoClass(dq.quiver, (alpha,), p))
    if len(end_basis(rep)) != 1:
        raise ValueError(f"{alpha} is not a brick")
    if n_max * sum(alpha) > guard_limit():
        raise GuardError("n_max * |alpha| exceeds the guard")
    e_diag = euler_form(dq.quiver, alpha, alpha)
    for n in range(n_max + 1):
        cls = IsoClass(dq.quiver, (alpha,) * n, p)
        aut = aut_order(cls)
        lhs = QRat(Fraction(1, aut)).shift(e_diag * n * n)
        rhs = _dilog_coeff(n)
        if lhs.specialize_sqrt(p) != rhs.specialize_sqrt(p):
            return False
    return True


def semistable_classes(dq: DynkinQuiver, z: CentralCharge, bound, p: int):
    """Nonzero classes within the bound all of whose subrepresentation
    dimension vectors have phase <= the class's phase."""
    out = []
    for cls in iso_classes(dq, bound, p):
        if not cls.roots:
            continue
        rep = representative(cls)
        mu = z.charge(cls.dim)
        ok = True
        from .dynkinrep import subrep_dims

        for e in subrep_dims(rep):
            if _cross(mu, z.charge(e)) > 0:  # phase(e) > phase(cls)
                ok = False
                break
        if ok:
            out.append(cls)
    return out


def hn_report(dq: DynkinQuiver, z: CentralCharge, p: int, bound) -> dict:
    """Both sides of the filtration identity as coefficient tables."""
    bound = tuple(bound)
    lhs, rhs = _hn_sides(dq, z, p, bound)

    def table(h: HallElement) -> dict:
        return {str(cls): str(a) for cls, a in sorted(
            h.coeffs.items(), key=lambda kv: (kv[0].total_dim, kv[0].roots)
        )}

    diff = None
    if lhs != rhs:
        keys = sorted(
            set(lhs.coeffs) | set(rhs.coeffs),
            key=lambda c: (c.total_dim, c.roots),
        )
        for cls in keys:
            if lhs.coeffs.get(cls) != rhs.coeffs.get(cls):
                diff = {
                    "class": str(cls),
                    "left": str(lhs.coeffs.get(cls, 0)),
                    "right": str(rhs.coeffs.get(cls, 0)),
                }
                break
    return {
        "identity": "class-sum equals ordered product of slope sums",
        "equal": lhs == rhs,
        "lhs": table(lhs),
        "rhs": table(rhs),
        "first_diff": diff,
    }


def verify_hn_identity(dq: DynkinQuiver, z: CentralCharge, p: int, bound) -> bool:
    """Sum of all classes equals the decreasing-phase ordered product of
    the semistable slope sums, as truncated Hall elements."""
    lhs, rhs = _hn_sides(dq, z, p, tuple(bound))
    return lhs == rhs


def _hn_sides(dq: DynkinQuiver, z: CentralCharge, p: int, bound):
    roots = positive_roots(dq)
    z.validate(roots)
    if not is_generic(z, roots):
        raise GenericityError("central charge is not generic")
    everything = HallElement(
        bound, {cls: Fraction(1) for cls in iso_classes(dq, bound, p)}
    )
    semis = semistable_classes(dq, z, bound, p)
    directions: list[tuple[Fraction, Fraction]] = []
    groups: dict[int, list[IsoClass]] = {}
    for cls in semis:
        mu = z.charge(cls.dim)
        for idx, d in enumerate(directions):
            if _cross(d, mu) == 0:
                groups[idx].append(cls)
                break
        else:
            directions.append(mu)
            groups[len(directions) - 1] = [cls]
    # decreasing phase order of the distinct directions
    from functools import cmp_to_key

    order = sorted(
        range(len(directions)),
        key=cmp_to_key(
            lambda i, j: -1 if _cross(directions[i], directions[j]) < 0 else 1
        ),
    )
    product = hall_unit(dq, bound, p)
    for idx in order:
        factor = hall_unit(dq, bound, p) + HallElement(
            bound, {cls: Fraction(1) for cls in groups[idx]}
        )
        product = hall_mul(product, factor, dq)
    return everything, product
