"""Representations of Dynkin quivers over prime fields.

The module category throughout is representations of the OPPOSITE quiver
(matrices attached to reversed arrows), which is what makes the projective
cover of a sink simple have the other simple as its subobject. Positive
roots, indecomposables via reflection functors, Hom/Ext dimensions,
brute-force subrepresentation enumeration, exact stability, and the
resulting ordered dilogarithm products all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import product as iproduct

from . import fplin
from .config import guard_limit
from .coeffs import QRat
from .errors import GenericityError, GuardError
from .qtorus import QSeries, eval_word, skew_from_quiver
from .quiver import Quiver, quiver_from_arrows

# ---------------------------------------------------------------------------
# Dynkin diagrams


def diagram_edges(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "A":
        if n < 1:
            raise ValueError("type A needs n >= 1")
        return [(i, i + 1) for i in range(n - 1)]
    if kind == "D":
        if n < 4:
            raise ValueError("type D needs n >= 4")
        return [(i, i + 1) for i in range(n - 2)][:-1] + [
            (n - 3, n - 2),
            (n - 3, n - 1),
        ]
    if kind == "E":
        if n not in (6, 7, 8):
            raise ValueError("type E needs n in {6, 7, 8}")
        return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    raise ValueError(f"unknown Dynkin type {kind!r}")


@dataclass(frozen=True)
class DynkinQuiver:
    kind: str
    n: int
    quiver: Quiver

    @property
    def label(self) -> str:
        return f"{self.kind}{self.n}"


def dynkin_quiver(label: str, arrows=None) -> DynkinQuiver:
    """Build a Dynkin quiver, e.g. dynkin_quiver("A3") or with an explicit
    orientation given as 0-based (source, target) pairs covering each edge
    exactly once. The default orients every edge from the smaller vertex."""
    kind = label[0].upper()
    n = int(label[1:])
    edges = diagram_edges(kind, n)
    if arrows is None:
        arrows = edges
    chosen = [tuple(a) for a in arrows]
    need = {frozenset(e) for e in edges}
    got = [frozenset(a) for a in chosen]
    if sorted(map(sorted, need)) != sorted(map(sorted, got)):
        raise ValueError("orientation must cover each diagram edge exactly once")
    q = quiver_from_arrows(n, [(i, j, 1) for i, j in chosen])
    return DynkinQuiver(kind, n, q)


# ---------------------------------------------------------------------------
# Positive roots by reflection closure of the simple roots


def positive_roots(dq: DynkinQuiver) -> list[tuple[int, ...]]:
    n = dq.n
    edges = diagram_edges(dq.kind, n)
    adj = {i: [] for i in range(n)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)

    def reflect(alpha, i):
        pairing = 2 * alpha[i] - sum(alpha[j] for j in adj[i])
        out = list(alpha)
        out[i] -= pairing
        return tuple(out)

    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simples)
    frontier = set(simples)
    while frontier:
        new = set()
        for alpha in frontier:
            for i in range(n):
                beta = reflect(alpha, i)
                if beta not in roots and all(x >= 0 for x in beta):
                    new.add(beta)
        roots |= new
        frontier = new
    return sorted(roots, key=lambda a: (sum(a), a))


# ---------------------------------------------------------------------------
# Explicit representations


@dataclass(frozen=True, eq=False)
class FqRep:
    """Matrices over F_p along the arrows of `quiver` (one per arrow)."""

    p: int
    quiver: Quiver
    dims: tuple[int, ...]
    maps: dict

    def __post_init__(self):
        for (s, t), m in self.maps.items():
            if len(m) != self.dims[t]:
                raise ValueError(f"matrix at arrow {(s, t)} has wrong row count")
            if any(len(row) != self.dims[s] for row in m):
                raise ValueError(f"matrix at arrow {(s, t)} has wrong column count")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)


def _zero_matrix(rows: int, cols: int):
    return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))


def simple_rep(quiver: Quiver, vertex: int, p: int) -> FqRep:
    dims = tuple(1 if v == vertex else 0 for v in range(quiver.n))
    maps = {}
    for s, t, m in quiver.arrows():
        if m != 1:
            raise ValueError("representation layer expects single arrows")
        maps[(s, t)] = _zero_matrix(dims[t], dims[s])
    return FqRep(p, quiver, dims, maps)


def direct_sum(reps: list[FqRep]) -> FqRep:
    if not reps:
        raise ValueError("direct_sum of nothing")
    q = reps[0].quiver
    p = reps[0].p
    if any(r.quiver != q or r.p != p for r in reps):
        raise ValueError("summands must share quiver and field")
    n = q.n
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(n))
    maps = {}
    for s, t, _ in q.arrows():
        rows = []
        for bi, rep in enumerate(reps):
            for r in range(rep.dims[t]):
                row = []
                for bj, rep2 in enumerate(reps):
                    if bi == bj:
                        row.extend(rep.maps[(s, t)][r])
                    else:
                        row.extend([0] * rep2.dims[s])
                rows.append(tuple(row))
        maps[(s, t)] = tuple(rows)
    return FqRep(p, q, dims, maps)


def _reverse_at(q: Quiver, j: int) -> Quiver:
    n = q.n
    mult = [list(row) for row in q.mult]
    for i in range(n):
        if i != j:
            mult[i][j], mult[j][i] = mult[j][i], mult[i][j]
    return Quiver(tuple(tuple(row) for row in mult))


def reflect_at_source(rep: FqRep, j: int) -> FqRep:
    """BGP reflection at a source j: cokernel construction.

    Input lives over a quiver with j a source; output lives over the quiver
    with the arrows at j reversed.
    """
    q = rep.quiver
    p = rep.p
    n = q.n
    if any(q.mult[i][j] for i in range(n)):
        raise ValueError(f"vertex {j} is not a source")
    targets = [t for t in range(n) if q.mult[j][t]]
    total = sum(rep.dims[t] for t in targets)
    # stacked matrix of V_j -> direct sum of targets
    stacked = []
    for t in targets:
        stacked.extend(rep.maps[(j, t)])
    # column space of the stacked map, as rref rows of its transpose
    cols = tuple(
        tuple(stacked[r][c] for r in range(total)) for c in range(rep.dims[j])
    )
    im_rows, _ = fplin.rref(cols, p) if cols else ((), [])
    pivots = []
    for row in im_rows:
        pivots.append(next(c for c in range(total) if row[c]))
    non_pivots = [c for c in range(total) if c not in pivots]

    def project(vec):
        v = list(vec)
        for row in im_rows:
            lead = next(c for c in range(total) if row[c])
            if v[lead]:
                f = v[lead]
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return tuple(v[c] for c in non_pivots)

    new_dim = len(non_pivots)
    dims = tuple(new_dim if v == j else rep.dims[v] for v in range(n))
    new_quiver = _reverse_at(q, j)
    maps = {}
    offset = {}
    pos = 0
    for t in targets:
        offset[t] = pos
        pos += rep.dims[t]
    for s, t, _ in new_quiver.arrows():
        if t == j:
            # inclusion of the old target block followed by the projection
            cols = []
            for c in range(rep.dims[s]):
                vec = [0] * total
                vec[offset[s] + c] = 1
                cols.append(project(vec))
            maps[(s, t)] = tuple(
                tuple(col[r] for col in cols) for r in range(new_dim)
            )
        else:
            maps[(s, t)] = rep.maps[(s, t)]
    return FqRep(p, new_quiver, dims, maps)


def sink_sequence(q: Quiver) -> list[int]:
    return source_sequence(q.opposite())


def source_sequence(q: Quiver) -> list[int]:
    """Vertices enumerated so each is a source after removing its
    predecessors; smallest admissible vertex first. Errors on cycles."""
    n = q.n
    remaining = set(range(n))
    order = []
    while remaining:
        pick = None
        for v in sorted(remaining):
            if all(q.mult[u][v] == 0 for u in remaining if u != v):
                pick = v
                break
        if pick is None:
            raise ValueError("quiver has an oriented cycle")
        order.append(pick)
        remaining.remove(pick)
    return order


_INDEC_CACHE: dict = {}


def build_indecomposables(g: Quiver, p: int) -> dict[tuple[int, ...], FqRep]:
    """One indecomposable per positive root, with matrices along g's arrows.

    Built by composing reflection functors applied to simples along the
    cyclic sink order; indecomposability is certified by End of dimension 1
    in the test suite.
    """
    key = (g, p)
    cached = _INDEC_CACHE.get(key)
    if cached is not None:
        return cached
    n = g.n
    # positive roots of the underlying diagram, orientation-free
    adj = {i: [] for i in range(n)}
    for s, t, _ in g.arrows():
        adj[s].append(t)
        adj[t].append(s)

    def reflect(alpha, i):
        pairing = 2 * alpha[i] - sum(alpha[j] for j in adj[i])
        out = list(alpha)
        out[i] -= pairing
        return tuple(out)

    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simples)
    frontier = set(simples)
    while frontier:
        new = set()
        for alpha in frontier:
            for i in range(n):
                beta = reflect(alpha, i)
                if beta not in roots and all(x >= 0 for x in beta):
                    new.add(beta)
        roots |= new
        frontier = new

    order = sink_sequence(g)
    quivers = [g]
    limit = n * (len(roots) + n + 2)
    for t in range(limit):
        quivers.append(_reverse_at(quivers[t], order[t % n]))
    found: dict[tuple[int, ...], FqRep] = {}
    for m in range(limit):
        if len(found) == len(roots):
            break
        j = order[m % n]
        rep = simple_rep(quivers[m], j, p)
        ok = True
        for t in range(m - 1, -1, -1):
            rep = reflect_at_source(rep, order[t % n])
            if not any(rep.dims):
                ok = False
                break
        if not ok:
            continue
        dims = rep.dims
        if dims in roots and dims not in found:
            found[dims] = rep
    if len(found) != len(roots):
        raise RuntimeError("reflection enumeration missed some roots")
    _INDEC_CACHE[key] = found
    return found


def indecomposable(dq: DynkinQuiver, alpha, p: int) -> FqRep:
    """The indecomposable with dimension vector alpha, over the opposite
    quiver's arrows (the module category used throughout)."""
    alpha = tuple(alpha)
    table = build_indecomposables(dq.quiver.opposite(), p)
    rep = table.get(alpha)
    if rep is None:
        raise ValueError(f"{alpha} is not a positive root of {dq.label}")
    return rep


# ---------------------------------------------------------------------------
# Hom and Ext by linear algebra


def _hom_system(m: FqRep, n_: FqRep):
    """Constraint matrix of the intertwiner equations, with metadata."""
    if m.quiver != n_.quiver or m.p != n_.p:
        raise ValueError("representations live over different quivers or fields")
    q = m.quiver
    p = m.p
    offsets = []
    pos = 0
    for v in range(q.n):
        offsets.append(pos)
        pos += m.dims[v] * n_.dims[v]
    unknowns = pos
    rows = []
    for s, t, _ in q.arrows():
        ma = m.maps[(s, t)]
        na = n_.maps[(s, t)]
        for r in range(n_.dims[t]):
            for c in range(m.dims[s]):
                row = [0] * unknowns
                # + (phi_t M_a)[r][c]
                for x in range(m.dims[t]):
                    row[offsets[t] + r * m.dims[t] + x] += ma[x][c]
                # - (N_a phi_s)[r][c]
                for y in range(n_.dims[s]):
                    row[offsets[s] + y * m.dims[s] + c] -= na[r][y]
                rows.append(tuple(v_ % p for v_ in row))
    return tuple(rows), unknowns, offsets


def hom_ext(m: FqRep, n_: FqRep) -> tuple[int, int]:
    """(dim Hom, dim Ext^1) from the intertwiner system: Hom is its kernel,
    Ext^1 its cokernel (the projective-resolution computation)."""
    rows, unknowns, _ = _hom_system(m, n_)
    rk = fplin.rank(rows, m.p) if rows else 0
    hom = unknowns - rk
    ext = len(rows) - rk
    return hom, ext


def hom_dim(m: FqRep, n_: FqRep) -> int:
    return hom_ext(m, n_)[0]


def end_basis(m: FqRep):
    """Basis of End(m) as per-vertex matrix tuples."""
    rows, unknowns, offsets = _hom_system(m, m)
    if rows:
        kernel = fplin.kernel_basis(rows, m.p)
    else:
        kernel = fplin.identity(unknowns) if unknowns else ()
    basis = []
    for vec in kernel:
        mats = []
        for v in range(m.quiver.n):
            d = m.dims[v]
            mats.append(
                tuple(
                    tuple(vec[offsets[v] + r * d + c] for c in range(d))
                    for r in range(d)
                )
            )
        basis.append(tuple(mats))
    return basis


# ---------------------------------------------------------------------------
# Subrepresentations by brute force


def subrep_bases(m: FqRep):
    """All arrow-stable tuples of subspaces, as rref bases per vertex."""
    if m.total_dim > guard_limit():
        raise GuardError(
            f"total dimension {m.total_dim} exceeds guard {guard_limit()}"
        )
    p = m.p
    q = m.quiver
    per_vertex = [list(fplin.subspaces(d, p)) for d in m.dims]
    arrows = [(s, t) for s, t, _ in q.arrows()]
    for combo in iproduct(*per_vertex):
        good = True
        for s, t in arrows:
            mat = m.maps[(s, t)]
            wt = combo[t]
            for w in combo[s]:
                img = fplin.mat_vec(mat, w, p)
                if any(img) and not fplin.in_row_span(wt, img, p):
                    good = False
                    break
            if not good:
                break
        if good:
            yield combo


def subrep_dims(m: FqRep) -> set[tuple[int, ...]]:
    """Dimension vectors of all nonzero proper subrepresentations."""
    out = set()
    full = m.dims
    for combo in subrep_bases(m):
        dims = tuple(len(b) for b in combo)
        if any(dims) and dims != full:
            out.add(dims)
    return out


# ---------------------------------------------------------------------------
# Stability


@dataclass(frozen=True)
class CentralCharge:
    """Exact rational points Z(S_i) = (x_i, y_i) defining the stability
    function; every nonzero nonnegative class must land in the upper half
    plane (y > 0, or y = 0 and x > 0)."""

    values: tuple[tuple[Fraction, Fraction], ...]

    @classmethod
    def of(cls, pairs) -> "CentralCharge":
        return cls(tuple((Fraction(x), Fraction(y)) for x, y in pairs))

    def charge(self, alpha) -> tuple[Fraction, Fraction]:
        x = sum(Fraction(a) * v[0] for a, v in zip(alpha, self.values))
        y = sum(Fraction(a) * v[1] for a, v in zip(alpha, self.values))
        return (x, y)

    def validate(self, roots):
        for alpha in roots:
            x, y = self.charge(alpha)
            if not (y > 0 or (y == 0 and x > 0)):
                raise GenericityError(
                    f"charge of {alpha} is {(x, y)}, outside the allowed half plane"
                )

    def to_json(self) -> dict:
        return {"Z": [[str(x), str(y)] for x, y in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "CentralCharge":
        return cls.of([(Fraction(x), Fraction(y)) for x, y in data["Z"]])


def _cross(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def phase_lt(z: CentralCharge, alpha, beta) -> bool:
    """Exact comparison of arguments in [0, pi): sign of the cross product."""
    za = z.charge(alpha)
    zb = z.charge(beta)
    if za == (0, 0) or zb == (0, 0):
        raise ValueError("zero central charge")
    return _cross(za, zb) > 0


def is_generic(z: CentralCharge, roots) -> bool:
    """No two non-proportional roots may have collinear charges."""
    roots = [tuple(r) for r in roots]
    for i, a in enumerate(roots):
        for b in roots[i + 1 :]:
            if _cross(z.charge(a), z.charge(b)) == 0:
                # proportional integer vectors are allowed
                if any(
                    a[k] * b[j] != a[j] * b[k]
                    for k in range(len(a))
                    for j in range(len(a))
                ):
                    return False
    return True


def stables(dq: DynkinQuiver, z: CentralCharge, p: int = 2):
    """Stable roots in strictly decreasing phase order, with phase ranks.

    A root is stable when every subrepresentation dimension vector of its
    indecomposable has strictly smaller phase.
    """
    roots = positive_roots(dq)
    z.validate(roots)
    if not is_generic(z, roots):
        raise GenericityError("central charge is not generic for this root system")
    stable_roots = []
    for alpha in roots:
        rep = indecomposable(dq, alpha, p)
        if all(phase_lt(z, e, alpha) for e in subrep_dims(rep)):
            stable_roots.append(alpha)

    def cmp(a, b):
        c = _cross(z.charge(a), z.charge(b))
        if c > 0:
            return 1  # a has smaller phase: sort a after b
        if c < 0:
            return -1
        return 0

    ordered = sorted(stable_roots, key=cmp_to_key(cmp))
    return [(alpha, rank) for rank, alpha in enumerate(ordered)]


def reineke_product(dq: DynkinQuiver, z: CentralCharge, D: int, p: int = 2) -> QSeries:
    """Ordered product of E(y^alpha) over stables, decreasing phase."""
    form = skew_from_quiver(dq.quiver)
    one = QRat(1)
    word = [(1, one, alpha) for alpha, _ in stables(dq, z, p)]
    return eval_word(form, word, D)


# ---------------------------------------------------------------------------
# The Hom order on positive roots and the source-sequence identity


def hom_order(dq: DynkinQuiver, p: int = 2) -> set[tuple[tuple, tuple]]:
    """Strict pairs (a, b), a < b, of the transitive closure of
    Hom(V(a), V(b)) != 0; antisymmetry is verified."""
    roots = positive_roots(dq)
    table = {a: indecomposable(dq, a, p) for a in roots}
    leq = {(a, b) for a in roots for b in roots if a == b}
    for a in roots:
        for b in roots:
            if a != b and hom_dim(table[a], table[b]) > 0:
                leq.add((a, b))
    changed = True
    while changed:
        changed = False
        for a, b in list(leq):
            for b2, c in list(leq):
                if b2 == b and (a, c) not in leq:
                    leq.add((a, c))
                    changed = True
    for a, b in leq:
        if a != b and (b, a) in leq:
            raise RuntimeError(f"hom order not antisymmetric: {a} ~ {b}")
    return {(a, b) for a, b in leq if a != b}


def decreasing_extensions(roots, strict_leq, cap: int):
    """Linear extensions listing roots in decreasing order, lazily counted.

    Returns (extensions, complete): at most cap of them, with `complete`
    false when the cap was hit.
    """
    above = {r: set() for r in roots}
    for a, b in strict_leq:
        above[a].add(b)  # b is strictly greater than a
    out: list[list] = []
    seq: list = []
    remaining = list(roots)

    def walk():
        if len(out) > cap:
            return
        if not remaining:
            out.append(list(seq))
            return
        # next element must be maximal among the remaining ones
        for r in sorted(remaining, key=lambda a: (-sum(a), a)):
            if not (above[r] & set(remaining)):
                remaining.remove(r)
                seq.append(r)
                walk()
                seq.pop()
                remaining.append(r)
                if len(out) > cap:
                    return

    walk()
    return out[:cap], len(out) <= cap


def verify_corollary(dq: DynkinQuiver, D: int, extension_cap: int = 1000) -> bool:
    """Source-sequence dilogarithm product vs decreasing-root-order product.

    Checks every decreasing linear extension of the hom order when there
    are at most extension_cap of them, otherwise just the canonical one.
    """
    form = skew_from_quiver(dq.quiver)
    one = QRat(1)
    n = dq.n
    simple = lambda i: tuple(1 if k == i else 0 for k in range(n))
    left = eval_word(
        form, [(1, one, simple(i)) for i in source_sequence(dq.quiver)], D
    )
    roots = positive_roots(dq)
    strict = hom_order(dq)
    extensions, complete = decreasing_extensions(roots, strict, extension_cap)
    if not complete:
        extensions = extensions[:1]
    for ext in extensions:
        right = eval_word(form, [(1, one, a) for a in ext], D)
        if right != left:
            return False
    return True
