"""Quivers, framed quivers, matrix mutation, and green sequences.

Vertices are 0-based internally; the JSON interchange format is 1-based.
A framed quiver on n mutable vertices carries an antisymmetric integer
matrix b over 2n vertices, the last n frozen; rows over the frozen block
are the c-vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .coeffs import QRat
from .errors import FrozenVertexError, SignCoherenceError
from .qtorus import QSeries, eval_word, skew_from_quiver


@dataclass(frozen=True)
class Quiver:
    """Arrow-multiplicity matrix; mult[i][j] = number of arrows i -> j."""

    mult: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.mult)
        for i, row in enumerate(self.mult):
            if len(row) != n:
                raise ValueError("multiplicity matrix must be square")
            if any(m < 0 for m in row):
                raise ValueError("arrow multiplicities must be nonnegative")
            if row[i] != 0:
                raise ValueError(f"loop at vertex {i + 1}")

    @property
    def n(self) -> int:
        return len(self.mult)

    def opposite(self) -> "Quiver":
        n = self.n
        return Quiver(tuple(tuple(self.mult[j][i] for j in range(n)) for i in range(n)))

    def arrows(self):
        """All (source, target, multiplicity) triples with multiplicity > 0."""
        for i, row in enumerate(self.mult):
            for j, m in enumerate(row):
                if m:
                    yield i, j, m


def quiver_from_arrows(n: int, arrows) -> Quiver:
    """Build from 0-based (source, target, multiplicity) triples."""
    mult = [[0] * n for _ in range(n)]
    for i, j, m in arrows:
        mult[i][j] += m
    return Quiver(tuple(tuple(row) for row in mult))


def quiver_to_json(q: Quiver) -> dict:
    return {
        "n": q.n,
        "arrows": [[i + 1, j + 1, m] for i, j, m in q.arrows()],
    }


def quiver_from_json(data: dict) -> Quiver:
    n = int(data["n"])
    arrows = []
    for entry in data.get("arrows", []):
        if len(entry) == 2:
            i, j = entry
            m = 1
        else:
            i, j, m = entry
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"arrow endpoint out of range: {entry}")
        arrows.append((i - 1, j - 1, m))
    return quiver_from_arrows(n, arrows)


@dataclass(frozen=True)
class FramedQuiver:
    """Signed exchange matrix over n mutable plus n frozen vertices."""

    n: int
    b: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        size = 2 * self.n
        if len(self.b) != size or any(len(r) != size for r in self.b):
            raise ValueError("b must be a 2n x 2n matrix")
        for i in range(size):
            for j in range(size):
                if self.b[i][j] != -self.b[j][i]:
                    raise ValueError("b must be antisymmetric")
        for i in range(self.n, size):
            for j in range(self.n, size):
                if self.b[i][j] != 0:
                    raise ValueError("no arrows between frozen vertices allowed")

    def mutable_part(self) -> Quiver:
        """Arrow multiplicities among mutable vertices (positive entries)."""
        return Quiver(
            tuple(
                tuple(max(self.b[i][j], 0) for j in range(self.n))
                for i in range(self.n)
            )
        )

    def to_json(self) -> dict:
        return {"n": self.n, "b": [list(row) for row in self.b]}

    @classmethod
    def from_json(cls, data: dict) -> "FramedQuiver":
        return cls(int(data["n"]), tuple(tuple(row) for row in data["b"]))


def frame(q: Quiver) -> FramedQuiver:
    """Attach one frozen vertex i' and one arrow i -> i' per vertex."""
    n = q.n
    size = 2 * n
    b = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            b[i][j] = q.mult[i][j] - q.mult[j][i]
    for i in range(n):
        b[i][n + i] = 1
        b[n + i][i] = -1
    return FramedQuiver(n, tuple(tuple(row) for row in b))


def mutate(f: FramedQuiver, k: int) -> FramedQuiver:
    """Exchange-matrix mutation at a mutable vertex k (0-based)."""
    n = f.n
    if not (0 <= k < 2 * n):
        raise ValueError(f"vertex {k} out of range")
    if k >= n:
        raise FrozenVertexError(f"cannot mutate at frozen vertex {k + 1}")
    b = f.b
    size = 2 * n
    out = [[0] * size for _ in range(size)]
    for i in range(size):
        bik = b[i][k]
        for j in range(size):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            elif bik > 0 and b[k][j] > 0:
                out[i][j] = b[i][j] + bik * b[k][j]
            elif bik < 0 and b[k][j] < 0:
                out[i][j] = b[i][j] - bik * b[k][j]
            else:
                out[i][j] = b[i][j]
    return FramedQuiver(n, tuple(tuple(row) for row in out))


def c_vector(f: FramedQuiver, k: int) -> tuple[tuple[int, ...], int]:
    """Frozen row of vertex k and its sign; mixed signs are a hard error."""
    if not (0 <= k < f.n):
        raise ValueError(f"vertex {k} is not mutable")
    beta = tuple(f.b[k][f.n + j] for j in range(f.n))
    nonneg = all(x >= 0 for x in beta)
    nonpos = all(x <= 0 for x in beta)
    if not any(beta) or (not nonneg and not nonpos):
        raise SignCoherenceError(
            f"c-vector {beta} at vertex {k + 1} violates sign coherence"
        )
    return beta, (1 if nonneg else -1)


def is_green(f: FramedQuiver, k: int) -> bool:
    """Green means no arrows from frozen vertices into k."""
    if not (0 <= k < f.n):
        raise ValueError(f"vertex {k} is not mutable")
    return all(f.b[f.n + j][k] <= 0 for j in range(f.n))


def vertex_colors(f: FramedQuiver) -> list[str]:
    return ["green" if is_green(f, k) else "red" for k in range(f.n)]


def is_all_red(f: FramedQuiver) -> bool:
    return all(not is_green(f, k) for k in range(f.n))


@dataclass(frozen=True)
class GreenStep:
    vertex: int  # 0-based
    beta: tuple[int, ...]
    eps: int


@dataclass(frozen=True)
class GreenSeq:
    steps: tuple[GreenStep, ...]
    final: FramedQuiver

    @property
    def seq(self) -> tuple[int, ...]:
        return tuple(s.vertex for s in self.steps)

    def to_json(self) -> dict:
        return {
            "seq": [s.vertex + 1 for s in self.steps],
            "steps": [{"beta": list(s.beta), "eps": s.eps} for s in self.steps],
        }


def greenseq_from_json(data: dict, start: FramedQuiver) -> GreenSeq:
    """Rebuild a recorded sequence by replaying it from its initial quiver."""
    return replay(start, [k - 1 for k in data["seq"]])


def replay(start: FramedQuiver, vertices) -> GreenSeq:
    """Apply mutations in order, recording each c-vector before its step."""
    steps = []
    current = start
    for k in vertices:
        beta, eps = c_vector(current, k)
        steps.append(GreenStep(k, beta, eps))
        current = mutate(current, k)
    return GreenSeq(tuple(steps), current)


def green_search(
    f: FramedQuiver, max_len: int, maximal_only: bool = False
) -> list[GreenSeq]:
    """All green-vertex-only mutation sequences of length <= max_len.

    Depth-first, branching over green vertices in ascending order, so the
    returned sequences are in lexicographic order. With maximal_only, only
    sequences whose final quiver is all red are kept.
    """
    results: list[GreenSeq] = []

    def walk(current: FramedQuiver, steps: list[GreenStep]):
        if steps:
            if not maximal_only:
                results.append(GreenSeq(tuple(steps), current))
            elif is_all_red(current):
                results.append(GreenSeq(tuple(steps), current))
                return  # all red: no green moves remain anyway
        if len(steps) >= max_len:
            return
        for k in range(current.n):
            if is_green(current, k):
                beta, eps = c_vector(current, k)
                steps.append(GreenStep(k, beta, eps))
                walk(mutate(current, k), steps)
                steps.pop()

    walk(f, [])
    return results


def tropical_E(seq, start: FramedQuiver, D: int) -> QSeries:
    """The ordered dilogarithm product attached to a mutation sequence.

    seq may be a GreenSeq or a list of 0-based vertices; each step
    contributes E(eps_s beta_s)^{eps_s}, with beta_s read off before the
    step. Red steps (eps = -1) contribute inverse factors.
    """
    if isinstance(seq, GreenSeq):
        gs = seq
    else:
        gs = replay(start, seq)
    form = skew_from_quiver(start.mutable_part())
    one = QRat(1)
    word = [
        (s.eps, one, tuple(s.eps * x for x in s.beta)) for s in gs.steps
    ]
    return eval_word(form, word, D)


def frozen_iso(f1: FramedQuiver, f2: FramedQuiver):
    """A mutable-vertex permutation carrying b1 to b2 and fixing the frozen
    vertices, or None. Brute force over all n! permutations."""
    if f1.n != f2.n:
        return None
    n = f1.n
    for perm in permutations(range(n)):
        sigma = list(perm) + list(range(n, 2 * n))
        ok = True
        for i in range(2 * n):
            row1 = f1.b[i]
            row2 = f2.b[sigma[i]]
            for j in range(2 * n):
                if row1[j] != row2[sigma[j]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return perm
    return None


def dt_invariant(q: Quiver, D: int, depth: int | None = None):
    """Dilogarithm product over one maximal green sequence, plus the
    sequence used. Searches depth-first up to `depth` (default 4n)."""
    if depth is None:
        depth = 4 * q.n
    found = green_search(frame(q), depth, maximal_only=True)
    if not found:
        raise ValueError(
            f"no maximal green sequence found within depth {depth}"
        )
    gs = found[0]
    return tropical_E(gs, frame(q), D), gs
