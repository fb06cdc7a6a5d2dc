"""Lace diagrams for equioriented type A quivers and their rank conditions.

Column ``i`` of a diagram holds ``e_i`` dots numbered ``1..e_i`` from the top.
A connection ``(i, p, q)`` joins dot ``p`` of column ``i-1`` to dot ``q`` of
column ``i``.  The same diagram is encoded by the sequence of permutations
``(w_1, ..., w_n)`` where ``w_i`` is the shortest permutation with
``w_i(q) = p`` for each connection ``(i, p, q)`` and whose remaining values
send lone dots to extra dots appended below the real ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Optional, Sequence

from .permkit import Permutation, is_partial_perm, multiply, shift, simple

__all__ = [
    "RankConditions",
    "LaceDiagram",
    "PermSeq",
    "Strand",
    "rank_conditions",
    "to_perms",
    "from_perms",
    "extend",
    "diagram_length",
    "crossing_count",
    "codim",
    "is_minimal",
    "is_minimal_geometric",
    "leftmost",
    "apply_move",
    "enumerate_minimal",
    "apply_kmove",
    "enumerate_kms",
    "all_orbits",
    "all_diagrams",
    "closure_leq",
    "add_strands",
    "KVARIANTS",
]


def _check_dims(dims: Iterable[int]) -> tuple[int, ...]:
    dims = tuple(int(e) for e in dims)
    if not dims or any(e < 0 for e in dims):
        raise ValueError(f"bad dimension vector {dims}")
    return dims


@dataclass(frozen=True)
class RankConditions:
    """Dimension vector plus ranks ``r_ij`` for ``0 <= i < j <= n``.

    ``r(i, i)`` is ``e_i`` and ``r`` vanishes outside ``0 <= i <= j <= n``.
    Construction does not check realizability; see :meth:`check`.
    """

    dims: tuple[int, ...]
    ranks: tuple[tuple[int, int, int], ...]
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        dims = _check_dims(self.dims)
        n = len(dims) - 1
        table = {}
        for i, j, v in self.ranks:
            if not (0 <= i < j <= n):
                raise ValueError(f"rank index ({i}, {j}) out of range for n = {n}")
            if (i, j) in table and table[(i, j)] != v:
                raise ValueError(f"conflicting values for r_{i}{j}")
            table[(i, j)] = int(v)
        missing = [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1) if (i, j) not in table]
        if missing:
            raise ValueError(f"missing rank conditions {missing}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "ranks", tuple((i, j, table[(i, j)]) for i, j in sorted(table)))
        object.__setattr__(self, "_table", table)

    @classmethod
    def from_dict(cls, dims: Sequence[int], ranks: dict) -> "RankConditions":
        return cls(tuple(dims), tuple((i, j, v) for (i, j), v in ranks.items()))

    @classmethod
    def from_multiplicities(cls, dims: Sequence[int], mult: dict) -> "RankConditions":
        """Build from strand counts ``m[(i, j)]`` of strands spanning columns ``i..j``."""
        n = len(dims) - 1
        ranks = {
            (i, j): sum(c for (a, b), c in mult.items() if a <= i and b >= j)
            for i in range(n + 1)
            for j in range(i + 1, n + 1)
        }
        return cls.from_dict(dims, ranks)

    @property
    def n(self) -> int:
        return len(self.dims) - 1

    def r(self, i: int, j: int) -> int:
        n = self.n
        if i < 0 or j > n or i > j:
            return 0
        if i == j:
            return self.dims[i]
        return self._table[(i, j)]

    def multiplicity(self, i: int, j: int) -> int:
        """Number of strands starting at column ``i`` and ending at column ``j``."""
        r = self.r
        return r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)

    def multiplicities(self) -> dict:
        return {
            (i, j): self.multiplicity(i, j)
            for i in range(self.n + 1)
            for j in range(i, self.n + 1)
        }

    def is_realizable(self) -> bool:
        return all(m >= 0 for m in self.multiplicities().values())

    def check(self) -> "RankConditions":
        if not self.is_realizable():
            bad = {k: m for k, m in self.multiplicities().items() if m < 0}
            raise ValueError(f"rank conditions are not realizable (negative strand counts {bad})")
        return self

    def __add__(self, k: int) -> "RankConditions":
        return add_strands(self, k)

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "ranks": [list(t) for t in self.ranks]}

    @classmethod
    def from_json(cls, data: dict) -> "RankConditions":
        return cls(tuple(data["dims"]), tuple(tuple(t) for t in data["ranks"]))

    def __str__(self) -> str:
        rs = " ".join(f"r{i}{j}={v}" for i, j, v in self.ranks)
        return f"dims={list(self.dims)} {rs}".strip()


@dataclass(frozen=True)
class Strand:
    """A maximal chain of connected dots; ``dots[k]`` is the dot in column ``start + k``."""

    start: int
    dots: tuple[int, ...]

    @property
    def end(self) -> int:
        return self.start + len(self.dots) - 1

    def sort_key(self):
        return (self.start, -self.end, self.dots[0])


@dataclass(frozen=True)
class PermSeq:
    """A lace diagram in permutation form: ``perms[i-1]`` is ``w_i``."""

    dims: tuple[int, ...]
    perms: tuple[Permutation, ...]

    def is_valid(self) -> bool:
        return len(self.perms) == len(self.dims) - 1 and all(
            is_partial_perm(w, self.dims[i], self.dims[i + 1]) for i, w in enumerate(self.perms)
        )

    def length(self) -> int:
        return sum(w.length() for w in self.perms)

    def to_diagram(self) -> "LaceDiagram":
        return from_perms(self.perms, self.dims)


@dataclass(frozen=True)
class LaceDiagram:
    dims: tuple[int, ...]
    connections: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        dims = _check_dims(self.dims)
        conns = tuple(sorted(set(tuple(int(t) for t in c) for c in self.connections)))
        left, right = set(), set()
        for i, p, q in conns:
            if not (1 <= i < len(dims)) or not (1 <= p <= dims[i - 1]) or not (1 <= q <= dims[i]):
                raise ValueError(f"connection {(i, p, q)} out of range for dims {dims}")
            if (i, q) in left or (i - 1, p) in right:
                raise ValueError(f"dot used twice by connection {(i, p, q)}")
            left.add((i, q))
            right.add((i - 1, p))
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "connections", conns)

    @property
    def n(self) -> int:
        return len(self.dims) - 1

    @cached_property
    def perms(self) -> tuple[Permutation, ...]:
        return to_perms(self).perms

    @cached_property
    def strands(self) -> tuple[Strand, ...]:
        nxt = {(i - 1, p): q for i, p, q in self.connections}
        has_left = {(i, q) for i, _, q in self.connections}
        out = []
        for col, e in enumerate(self.dims):
            for dot in range(1, e + 1):
                if (col, dot) in has_left:
                    continue
                dots = [dot]
                c = col
                while (c, dots[-1]) in nxt:
                    dots.append(nxt[(c, dots[-1])])
                    c += 1
                out.append(Strand(col, tuple(dots)))
        return tuple(sorted(out, key=Strand.sort_key))

    @cached_property
    def strand_index(self) -> dict:
        """``(column, dot) -> k`` where ``k`` numbers the strands from 1."""
        index = {}
        for k, s in enumerate(self.strands, start=1):
            for off, dot in enumerate(s.dots):
                index[(s.start + off, dot)] = k
        return index

    def length(self) -> int:
        return diagram_length(self)

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "connections": [list(c) for c in self.connections]}

    @classmethod
    def from_json(cls, data: dict) -> "LaceDiagram":
        return cls(tuple(data["dims"]), tuple(tuple(c) for c in data["connections"]))

    def perm_strings(self) -> list[str]:
        return [str(w) for w in self.perms]

    def __lt__(self, other: "LaceDiagram") -> bool:
        return (self.dims, self.connections) < (other.dims, other.connections)


def rank_conditions(d: LaceDiagram) -> RankConditions:
    """``r_ij`` counts the strands passing through both column ``i`` and column ``j``."""
    n = d.n
    ranks = {(i, j): 0 for i in range(n + 1) for j in range(i + 1, n + 1)}
    for s in d.strands:
        for i in range(s.start, s.end + 1):
            for j in range(i + 1, s.end + 1):
                ranks[(i, j)] += 1
    return RankConditions.from_dict(d.dims, ranks)


def _column_perm(conns: dict, rows: int, cols: int) -> Permutation:
    # conns maps dot q of the right column to dot p of the left column
    values = [0] * cols
    fresh = iter(range(rows + 1, rows + cols + 1))
    for q in range(1, cols + 1):
        values[q - 1] = conns[q] if q in conns else next(fresh)
    used = set(conns.values())
    values += [p for p in range(1, rows + 1) if p not in used]
    return Permutation(values)


def to_perms(d: LaceDiagram) -> PermSeq:
    by_col: dict = {i: {} for i in range(1, d.n + 1)}
    for i, p, q in d.connections:
        by_col[i][q] = p
    perms = tuple(_column_perm(by_col[i], d.dims[i - 1], d.dims[i]) for i in range(1, d.n + 1))
    return PermSeq(d.dims, perms)


def from_perms(perms: Sequence[Permutation], dims: Sequence[int]) -> LaceDiagram:
    dims = _check_dims(dims)
    perms = tuple(p if isinstance(p, Permutation) else Permutation(p) for p in perms)
    seq = PermSeq(dims, perms)
    if not seq.is_valid():
        raise ValueError(f"{[str(w) for w in perms]} is not a lace diagram for dims {list(dims)}")
    conns = [
        (i, w(q), q)
        for i, w in enumerate(perms, start=1)
        for q in range(1, dims[i] + 1)
        if w(q) <= dims[i - 1]
    ]
    return LaceDiagram(dims, tuple(conns))


def _try_from_perms(perms: Sequence[Permutation], dims: tuple) -> Optional[LaceDiagram]:
    seq = PermSeq(dims, tuple(perms))
    return seq.to_diagram() if seq.is_valid() else None


def _extended_size(d: LaceDiagram) -> int:
    return max([*d.dims, *(w.size for w in d.perms)])


def extend(d: LaceDiagram) -> LaceDiagram:
    """The extended diagram: every column padded to the same number of dots and
    every ``w_i`` realised as a bijection between consecutive columns."""
    m = _extended_size(d)
    conns = [
        (i, w(q), q)
        for i, w in enumerate(d.perms, start=1)
        for q in range(1, m + 1)
    ]
    return LaceDiagram(tuple([m] * len(d.dims)), tuple(conns))


def diagram_length(d: LaceDiagram) -> int:
    return sum(w.length() for w in d.perms)


def crossing_count(d: LaceDiagram) -> int:
    """Count pairs of segments that cross geometrically in the extended diagram."""
    ext = extend(d)
    by_col: dict = {}
    for i, p, q in ext.connections:
        by_col.setdefault(i, []).append((p, q))
    total = 0
    for segs in by_col.values():
        for (p1, q1), (p2, q2) in combinations(segs, 2):
            if (p1 - p2) * (q1 - q2) < 0:
                total += 1
    return total


def segment_labels(d: LaceDiagram, i: int) -> list:
    """For the extended ``w_i``: ``[(p, q, k)]`` with ``k`` the strand owning segment ``p -> q``."""
    w = d.perms[i - 1]
    m = max(w.size, d.dims[i - 1], d.dims[i])
    out = []
    for q in range(1, m + 1):
        p = w(q)
        if q <= d.dims[i]:
            k = d.strand_index[(i, q)]
        elif p <= d.dims[i - 1]:
            k = d.strand_index[(i - 1, p)]
        else:
            k = None
        out.append((p, q, k))
    return out


def crossings(d: LaceDiagram) -> list:
    """Crossings of extended strands as ``(i, k_high, k_low)``.

    ``k_high`` owns the segment with the larger slope, i.e. the one rising
    from a lower dot of column ``i-1`` to a higher dot of column ``i``.
    """
    out = []
    for i in range(1, d.n + 1):
        segs = segment_labels(d, i)
        for (p1, q1, k1), (p2, q2, k2) in combinations(segs, 2):
            if (p1 - p2) * (q1 - q2) < 0:
                # slope of p -> q is p - q (dots numbered downwards)
                hi, lo = (k1, k2) if p1 - q1 > p2 - q2 else (k2, k1)
                out.append((i, hi, lo))
    return out


def codim(r: RankConditions) -> int:
    """Orbit codimension ``sum_{i<j} (r_{i,j-1} - r_ij)(r_{i+1,j} - r_ij)``."""
    r.check()
    n = r.n
    return sum(
        (r.r(i, j - 1) - r.r(i, j)) * (r.r(i + 1, j) - r.r(i, j))
        for i in range(n + 1)
        for j in range(i + 1, n + 1)
    )


def is_minimal(d: LaceDiagram) -> bool:
    return diagram_length(d) == codim(rank_conditions(d))


def is_minimal_geometric(d: LaceDiagram) -> bool:
    """Extended strands cross at most once, and never when they share a start or end column."""
    strands = d.strands
    seen = set()
    for _, a, b in crossings(d):
        if a is None or b is None:
            return False
        pair = frozenset((a, b))
        if pair in seen or a == b:
            return False
        seen.add(pair)
        sa, sb = strands[a - 1], strands[b - 1]
        if sa.start == sb.start or sa.end == sb.end:
            return False
    return True


def leftmost(r: RankConditions) -> LaceDiagram:
    """The left-most diagram: for ``i = 0..n`` and ``j = n..i`` append ``m_ij``
    strands spanning columns ``i..j`` at the bottom."""
    r.check()
    n = r.n
    count = [0] * (n + 1)
    conns = []
    for i in range(n + 1):
        for j in range(n, i - 1, -1):
            for _ in range(r.multiplicity(i, j)):
                dots = []
                for c in range(i, j + 1):
                    count[c] += 1
                    dots.append(count[c])
                conns.extend((i + t + 1, dots[t], dots[t + 1]) for t in range(len(dots) - 1))
    return LaceDiagram(r.dims, tuple(conns))


def _check_site(d: LaceDiagram, i: int, j: int) -> None:
    if not (1 <= i <= d.n - 1):
        raise ValueError(f"column {i} is not an interior column (n = {d.n})")
    if not (1 <= j < d.dims[i]):
        raise ValueError(f"row {j} needs 1 <= j < e_{i} = {d.dims[i]}")


def apply_move(d: LaceDiagram, i: int, j: int, direction: str) -> Optional[LaceDiagram]:
    """Slide a crossing through dots ``j, j+1`` of column ``i``.

    ``direction="right"`` needs ``w_i(j) > w_i(j+1)`` with ``w_{i+1}^{-1}``
    ascending at ``j``; ``"left"`` is the mirror case.  Returns
    ``(.., w_i s_j, s_j w_{i+1}, ..)`` or ``None`` if the site does not apply.
    """
    _check_site(d, i, j)
    if direction not in ("right", "left"):
        raise ValueError(f"direction must be 'right' or 'left', not {direction!r}")
    w = d.perms
    desc = w[i - 1].has_descent(j)
    inv_desc = w[i].inverse.has_descent(j)
    if desc == inv_desc or (direction == "right") != desc:
        return None
    s = simple(j)
    new = list(w)
    new[i - 1] = multiply(w[i - 1], s)
    new[i] = multiply(s, w[i])
    return _try_from_perms(new, d.dims)


def _bfs(start: LaceDiagram, step) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        for nxt in step(d):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _sites(d: LaceDiagram) -> Iterator[tuple[int, int]]:
    for i in range(1, d.n):
        for j in range(1, d.dims[i]):
            yield i, j


def enumerate_minimal(r: RankConditions) -> set:
    """All minimal diagrams of ``r``: the move-closure of the left-most diagram."""
    def step(d):
        for i, j in _sites(d):
            for direction in ("right", "left"):
                nxt = apply_move(d, i, j, direction)
                if nxt is not None:
                    yield nxt
    return _bfs(leftmost(r), step)


KVARIANTS = {1: 1, 2: 2, 3: 3, "'": 1, "''": 2, "'''": 3}


def _kbase(w: tuple, i: int, j: int):
    """Return ``(base, form)`` if ``w`` is one of ``u', u'', u'''`` at site ``(i, j)``."""
    s = simple(j)
    desc = w[i - 1].has_descent(j)
    inv_desc = w[i].inverse.has_descent(j)
    if not desc and not inv_desc:
        return None, 0
    left = multiply(w[i - 1], s) if desc else w[i - 1]
    right = multiply(s, w[i]) if inv_desc else w[i]
    form = 3 if desc and inv_desc else (1 if desc else 2)
    return (left, right), form


def apply_kmove(d: LaceDiagram, i: int, j: int, variant) -> Optional[LaceDiagram]:
    """Move between the three local forms at site ``(i, j)``.

    With base ``u`` ascending at ``j`` in both ``u_i`` and ``u_{i+1}^{-1}``,
    variant 1 is ``(u_i s_j, u_{i+1})``, variant 2 is ``(u_i, s_j u_{i+1})``
    and variant 3 is ``(u_i s_j, s_j u_{i+1})``.  ``None`` unless ``d`` is in
    one of these forms and both the base and the target are lace diagrams.
    """
    _check_site(d, i, j)
    try:
        target = KVARIANTS[variant]
    except (KeyError, TypeError):
        raise ValueError(f"unknown k-move variant {variant!r}") from None
    w = d.perms
    base, form = _kbase(w, i, j)
    if base is None:
        return None
    left, right = base
    if not (is_partial_perm(left, d.dims[i - 1], d.dims[i]) and is_partial_perm(right, d.dims[i], d.dims[i + 1])):
        return None
    s = simple(j)
    new = list(w)
    new[i - 1] = multiply(left, s) if target in (1, 3) else left
    new[i] = multiply(s, right) if target in (2, 3) else right
    return _try_from_perms(new, d.dims)


def enumerate_kms(r: RankConditions) -> set:
    """Closure of the left-most diagram under all three-way k-moves.

    Every ``w_i`` stays a partial permutation in ``S_{e_{i-1}+e_i}``, so the
    search space is finite.
    """
    def step(d):
        for i, j in _sites(d):
            for v in (1, 2, 3):
                nxt = apply_kmove(d, i, j, v)
                if nxt is not None:
                    yield nxt
    return _bfs(leftmost(r), step)


def _interval_multisets(dims: tuple) -> Iterator[dict]:
    n = len(dims) - 1
    intervals = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]

    def rec(k: int, load: list, chosen: dict):
        if k == len(intervals):
            if load == list(dims):
                yield dict(chosen)
            return
        i, j = intervals[k]
        cap = min(dims[c] - load[c] for c in range(i, j + 1))
        for m in range(cap + 1):
            for c in range(i, j + 1):
                load[c] += m
            if m:
                chosen[(i, j)] = m
            yield from rec(k + 1, load, chosen)
            chosen.pop((i, j), None)
            for c in range(i, j + 1):
                load[c] -= m

    yield from rec(0, [0] * (n + 1), {})


def all_orbits(dims: Sequence[int]) -> list:
    """Every realizable rank-condition array with dimension vector ``dims``."""
    dims = _check_dims(dims)
    out = {RankConditions.from_multiplicities(dims, m) for m in _interval_multisets(dims)}
    return sorted(out, key=lambda r: tuple(v for _, _, v in r.ranks))


def _matchings(a: int, b: int) -> Iterator[tuple]:
    for k in range(min(a, b) + 1):
        for ps in combinations(range(1, a + 1), k):
            for qs in permutations(range(1, b + 1), k):
                yield tuple(zip(ps, qs))


def all_diagrams(dims: Sequence[int]) -> Iterator[LaceDiagram]:
    """Brute-force generation of every lace diagram for ``dims``."""
    dims = _check_dims(dims)
    per_col = [list(_matchings(dims[i - 1], dims[i])) for i in range(1, len(dims))]
    for choice in product(*per_col):
        conns = [(i, p, q) for i, m in enumerate(choice, start=1) for p, q in m]
        yield LaceDiagram(dims, tuple(conns))


def closure_leq(s: RankConditions, r: RankConditions) -> bool:
    """True iff orbit ``s`` lies in the closure of orbit ``r``."""
    if s.dims != r.dims:
        raise ValueError(f"dimension mismatch {s.dims} vs {r.dims}")
    return all(s.r(i, j) <= r.r(i, j) for i, j, _ in s.ranks)


def add_strands(r: RankConditions, k: int) -> RankConditions:
    """``r + k``: ``k`` extra strands spanning every column."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return RankConditions(tuple(e + k for e in r.dims), tuple((i, j, v + k) for i, j, v in r.ranks))


def shift_diagram(d: LaceDiagram, k: int) -> LaceDiagram:
    """Add ``k`` full-length strands at the top of ``d``."""
    return from_perms([shift(w, k) for w in d.perms], [e + k for e in d.dims])
