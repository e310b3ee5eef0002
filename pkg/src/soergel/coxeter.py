"""
Word combinatorics for a Coxeter system (W, S).

Group elements are handled through words: tuples of generator indices in
``range(rank)``.  Equality of elements is decided with Tits' solution of the
word problem: a word is reduced iff no word in its braid-move class contains
two equal adjacent letters, and two reduced words represent the same element
iff they are connected by braid moves.  Everything is exhaustive, so it is
meant for words of moderate length (a dozen letters or so).

The canonical form of an element is the lexicographically least of its
reduced expressions.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ConfigError, PreconditionViolation

INF = math.inf
ALLOWED_ORDERS = (2, 3, 4, 6, INF)

Word = tuple


@dataclass(frozen=True)
class CoxeterMatrix:
    """The Coxeter data m(s, t); ``m[s][t]`` is an int or ``INF``."""

    m: tuple
    labels: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.m)
        object.__setattr__(self, "m", m)
        n = len(m)
        if n == 0:
            raise ConfigError("rank must be positive")
        for i, row in enumerate(m):
            if len(row) != n:
                raise ConfigError(f"row {i} of the Coxeter matrix has length {len(row)}, expected {n}")
            if row[i] != 1:
                raise ConfigError(f"m({i},{i}) must be 1, got {row[i]}")
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise ConfigError(f"m({i},{j}) = {m[i][j]} but m({j},{i}) = {m[j][i]}")
                if m[i][j] not in ALLOWED_ORDERS:
                    raise ConfigError(
                        f"m({i},{j}) = {m[i][j]} is not supported: only 2, 3, 4, 6 and inf admit "
                        "a rational Cartan realization (m = 5 or m >= 7 would need a field extension)"
                    )
        if self.labels and len(self.labels) != n:
            raise ConfigError("need exactly one label per generator")

    @classmethod
    def from_orders(cls, rank: int, orders: dict, labels=()) -> "CoxeterMatrix":
        """Build from ``{(i, j): m(i, j)}``; unspecified pairs default to 2."""
        m = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for (i, j), v in orders.items():
            m[i][j] = m[j][i] = v
        return cls(tuple(map(tuple, m)), tuple(labels))

    @classmethod
    def dihedral(cls, order) -> "CoxeterMatrix":
        return cls.from_orders(2, {(0, 1): order})

    @property
    def rank(self) -> int:
        return len(self.m)

    def order(self, s: int, t: int):
        return self.m[s][t]

    def label(self, s: int) -> str:
        return self.labels[s] if self.labels else str(s)

    def check_word(self, w: Iterable[int]) -> Word:
        w = tuple(w)
        for a in w:
            if not (isinstance(a, int) and 0 <= a < self.rank):
                raise PreconditionViolation(f"invalid generator {a!r} for rank {self.rank}")
        return w


def alternating(s: int, t: int, length: int) -> Word:
    """The word s t s t ... with ``length`` letters."""
    return tuple(s if k % 2 == 0 else t for k in range(length))


@dataclass(frozen=True, order=True)
class BraidMove:
    """Replace the alternating subword s t s ... (m(s,t) letters) at ``position`` by t s t ..."""

    position: int
    s: int
    t: int

    def apply(self, w: Sequence[int], cm: CoxeterMatrix) -> Word:
        w = tuple(w)
        k = cm.order(self.s, self.t)
        if k == INF or self.s == self.t:
            raise PreconditionViolation(f"no braid relation between {self.s} and {self.t}")
        old = alternating(self.s, self.t, k)
        if w[self.position:self.position + k] != old:
            raise PreconditionViolation(f"braid move {self} does not match word {w}")
        return w[:self.position] + alternating(self.t, self.s, k) + w[self.position + k:]


def braid_moves(w: Word, cm: CoxeterMatrix) -> Iterator[tuple[BraidMove, Word]]:
    """All braid moves applicable to ``w`` with the resulting words."""
    n = len(w)
    for p in range(n - 1):
        s, t = w[p], w[p + 1]
        if s == t:
            continue
        k = cm.order(s, t)
        if k == INF or p + k > n:
            continue
        if w[p:p + k] == alternating(s, t, k):
            yield BraidMove(p, s, t), w[:p] + alternating(t, s, k) + w[p + k:]


def braid_closure(w: Sequence[int], cm: CoxeterMatrix) -> frozenset:
    """The set of words reachable from ``w`` by braid moves (memoized)."""
    w = tuple(w)
    cache = cm._cache.setdefault("closure", {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    seen = {w}
    todo = [w]
    while todo:
        u = todo.pop()
        for _, v in braid_moves(u, cm):
            if v not in seen:
                seen.add(v)
                todo.append(v)
    result = frozenset(seen)
    for u in seen:
        cache[u] = result
    return result


def _descends(r: Word, s: int, cm: CoxeterMatrix) -> bool:
    # r is reduced: s is a right descent iff some reduced expression ends in s
    return any(u[-1] == s for u in braid_closure(r, cm)) if r else False


def reduce(w: Sequence[int], cm: CoxeterMatrix) -> Word:
    """Canonical reduced word for the element represented by ``w``.

    The letters are multiplied in one at a time; whenever the next letter is
    a right descent of the reduced prefix, a reduced expression ending in that
    letter is found in the braid class and the letter cancels.
    """
    w = cm.check_word(w)
    cache = cm._cache.setdefault("reduce", {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    if not w:
        return ()
    r = reduce(w[:-1], cm)
    s = w[-1]
    ending = [u for u in braid_closure(r, cm) if u[-1] == s] if r else []
    if ending:
        result = min(braid_closure(min(ending)[:-1], cm))
    else:
        result = min(braid_closure(r + (s,), cm))
    cache[w] = result
    return result


def canonical(w: Sequence[int], cm: CoxeterMatrix) -> Word:
    return reduce(w, cm)


def length(w: Sequence[int], cm: CoxeterMatrix) -> int:
    return len(reduce(w, cm))


def is_reduced(w: Sequence[int], cm: CoxeterMatrix) -> bool:
    return length(w, cm) == len(w)


def descends_right(w: Sequence[int], s: int, cm: CoxeterMatrix) -> bool:
    """True iff l(ws) < l(w)."""
    return _descends(reduce(w, cm), s, cm)


def reduced_expressions(w: Sequence[int], cm: CoxeterMatrix) -> frozenset:
    return braid_closure(reduce(w, cm), cm)


def equal(u: Sequence[int], w: Sequence[int], cm: CoxeterMatrix) -> bool:
    return reduce(u, cm) == reduce(w, cm)


def inverse(w: Sequence[int]) -> Word:
    return tuple(reversed(tuple(w)))


def braid_path(t: Sequence[int], s: int, cm: CoxeterMatrix) -> list[BraidMove]:
    """Shortest sequence of braid moves taking the reduced word ``t`` to a word ending in ``s``.

    Breadth-first search; neighbours are expanded in increasing order of
    (move position, resulting word), so the path is deterministic.
    """
    t = cm.check_word(t)
    if len(t) != length(t, cm):
        raise PreconditionViolation(f"{t} is not reduced")
    if not _descends(t, s, cm):
        raise PreconditionViolation(f"{s} is not a right descent of {t}")
    cache = cm._cache.setdefault("braid_path", {})
    key = (t, s)
    if key in cache:
        return list(cache[key])
    parent: dict = {t: None}
    queue = deque([t])
    goal = None
    while queue:
        u = queue.popleft()
        if u[-1] == s:
            goal = u
            break
        for move, v in sorted(braid_moves(u, cm), key=lambda mv: (mv[0].position, mv[1])):
            if v not in parent:
                parent[v] = (u, move)
                queue.append(v)
    assert goal is not None
    path = []
    while parent[goal] is not None:
        goal, move = parent[goal]
        path.append(move)
    path.reverse()
    cache[key] = tuple(path)
    return path


def replay(t: Sequence[int], moves: Iterable[BraidMove], cm: CoxeterMatrix) -> list[Word]:
    """The sequence of words visited by applying ``moves`` to ``t``."""
    words = [tuple(t)]
    for mv in moves:
        words.append(mv.apply(words[-1], cm))
    return words


def elements_up_to(cm: CoxeterMatrix, max_length: int) -> list[Word]:
    """Canonical words of all elements of length <= max_length, by length then lex."""
    level = [()]
    seen = {()}
    out = [()]
    for _ in range(max_length):
        nxt = set()
        for w in level:
            for s in range(cm.rank):
                if not _descends(w, s, cm):
                    v = reduce(w + (s,), cm)
                    if v not in seen:
                        seen.add(v)
                        nxt.add(v)
        level = sorted(nxt)
        out.extend(level)
    return out
