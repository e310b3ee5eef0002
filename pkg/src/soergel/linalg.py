"""Exact sparse linear algebra over Q: row echelon form, nullspace, rank.

Rows are ``{column: Rational}`` dicts.  Elimination is incremental, so rows
can be streamed in and rows already in the span are discarded immediately;
that keeps the pivot set small for the heavily redundant constraint systems
produced by the Hom solver.
"""

from __future__ import annotations

from typing import Iterable

from .scalars import Rational

Row = dict


class Echelon:
    """Incrementally maintained row echelon form.

    Each pivot row is scaled so its pivot entry is 1 and contains no other
    pivot column *smaller* than its own, which is enough to reduce new rows
    in one sweep over increasing columns.
    """

    def __init__(self):
        self.pivots: dict[int, Row] = {}

    def reduce(self, row: Row) -> Row:
        row = {c: Rational(v) for c, v in row.items() if v}
        pivots = self.pivots
        while True:
            hits = [c for c in row if c in pivots]
            if not hits:
                return row
            c = min(hits)
            f = row[c]
            for k, v in pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)

    def add(self, row: Row) -> bool:
        """Insert a row; returns True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        inv = 1 / row[c]
        self.pivots[c] = {k: v * inv for k, v in row.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref(self) -> dict[int, Row]:
        """Fully reduced pivot rows (each pivot column appears in exactly one row)."""
        rows = {c: dict(r) for c, r in self.pivots.items()}
        for c in sorted(rows, reverse=True):
            pr = rows[c]
            for c2, r2 in rows.items():
                if c2 != c and c in r2:
                    f = r2[c]
                    for k, v in pr.items():
                        nv = r2.get(k, 0) - f * v
                        if nv:
                            r2[k] = nv
                        else:
                            r2.pop(k, None)
        return rows


class TrackedEchelon(Echelon):
    """Echelon form that remembers, for every pivot row, which input rows it combines.

    ``express(target)`` returns coefficients ``{tag: c}`` with
    ``sum c * row[tag] == target``, or None if the target is not in the span.
    """

    def __init__(self):
        super().__init__()
        self.combos: dict[int, dict] = {}

    def _reduce_tracked(self, row: Row, combo: dict) -> tuple[Row, dict]:
        row = {c: Rational(v) for c, v in row.items() if v}
        combo = dict(combo)
        pivots = self.pivots
        while True:
            hits = [c for c in row if c in pivots]
            if not hits:
                return row, combo
            c = min(hits)
            f = row[c]
            for k, v in pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            for k, v in self.combos[c].items():
                nv = combo.get(k, 0) - f * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)

    def add_tagged(self, row: Row, tag) -> bool:
        row, combo = self._reduce_tracked(row, {tag: Rational(1)})
        if not row:
            return False
        c = min(row)
        inv = 1 / row[c]
        self.pivots[c] = {k: v * inv for k, v in row.items()}
        self.combos[c] = {k: v * inv for k, v in combo.items()}
        return True

    def express(self, target: Row) -> dict | None:
        rest, combo = self._reduce_tracked(target, {})
        if rest:
            return None
        return {k: -v for k, v in combo.items()}


def _nullspace_of(ech: Echelon, ncols: int) -> list[Row]:
    rref = ech.rref()
    free = [c for c in range(ncols) if c not in rref]
    by_col: dict[int, list[tuple[int, Rational]]] = {}
    for p, r in rref.items():
        for k, v in r.items():
            if k != p:
                by_col.setdefault(k, []).append((p, v))
    basis = []
    for f in free:
        vec = {f: Rational(1)}
        for p, v in by_col.get(f, ()):
            vec[p] = -v
        basis.append(vec)
    return basis


def _canonical_rows(rows: Iterable[Row]) -> list[Row]:
    """Drop zero rows and duplicates up to scaling; sparsest rows first."""
    seen = {}
    for r in rows:
        r = {c: Rational(v) for c, v in r.items() if v}
        if not r:
            continue
        lead = r[min(r)]
        key = frozenset((c, v / lead) for c, v in r.items())
        seen.setdefault(key, r)
    return sorted(seen.values(), key=lambda r: (len(r), sorted(r)))


def nullspace(rows: Iterable[Row], ncols: int) -> list[Row]:
    """Basis of {x : row . x = 0 for all rows}, one vector per free column.

    Vectors are returned as sparse dicts, ordered by their free column; each
    has a 1 in its free column and zeros in the other free columns.

    Constraint systems here are very redundant, so rows are fed to the
    echelon form lazily: a batch is eliminated, the candidate nullspace is
    checked against every row, and only violated rows are added before the
    next round.  The result is exact; it is the nullspace of a subset of the
    rows that no remaining row cuts down further.
    """
    pending = _canonical_rows(rows)
    ech = Echelon()
    batch = pending[:2 * ncols + 16]
    while True:
        for r in batch:
            ech.add(r)
        basis = _nullspace_of(ech, ncols)
        if not basis:
            return basis
        violated = []
        for r in pending:
            for vec in basis:
                if len(vec) < len(r):
                    dot = sum(v * r[c] for c, v in vec.items() if c in r)
                else:
                    dot = sum(v * vec[c] for c, v in r.items() if c in vec)
                if dot:
                    violated.append(r)
                    break
        if not violated:
            return basis
        batch = violated[:2 * ncols + 16]


def rank(rows: Iterable[Row]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def in_span(vectors: Iterable[Row], target: Row) -> bool:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return not ech.reduce(target)
