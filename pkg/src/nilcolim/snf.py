"""Exact Smith normal form over the integers.

Plain dense elimination with partial pivoting on the smallest nonzero entry,
over Python ints: intermediate entry growth is real even for modest inputs,
so correctness wins over speed here.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SNFResult:
    """Rank and elementary divisors (> 1, each dividing the next)."""

    rank: int
    torsion: tuple[int, ...]

    def describe(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def smith_normal_form(rows: list[list[int]]) -> SNFResult:
    if not rows or not rows[0]:
        return SNFResult(0, ())
    m = [list(r) for r in rows]
    nr, nc = len(m), len(m[0])
    if any(len(r) != nc for r in m):
        raise ValueError("ragged matrix")
    divisors: list[int] = []
    t = 0
    while t < nr and t < nc:
        pivot = _smallest_pivot(m, t)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            m[t], m[pi] = m[pi], m[t]
        if pj != t:
            for row in m:
                row[t], row[pj] = row[pj], row[t]
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
        while True:
            # clear the pivot column with remainder swaps
            for i in range(t + 1, nr):
                a = m[i][t]
                if a:
                    q = a // m[t][t]
                    if q:
                        mt = m[t]
                        mi = m[i]
                        for j in range(t, nc):
                            mi[j] -= q * mt[j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
            if any(m[i][t] for i in range(t + 1, nr)):
                continue
            # clear the pivot row
            for j in range(t + 1, nc):
                a = m[t][j]
                if a:
                    q = a // m[t][t]
                    if q:
                        for i in range(t, nr):
                            m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for i in range(t, nr):
                            m[i][t], m[i][j] = m[i][j], m[i][t]
            if any(m[i][t] for i in range(t + 1, nr)) or any(
                m[t][j] for j in range(t + 1, nc)
            ):
                continue
            if m[t][t] < 0:
                m[t] = [-x for x in m[t]]
            # pivot must divide the rest of the submatrix
            culprit = _nondivisible_row(m, t)
            if culprit is None:
                break
            mi = m[culprit]
            mt = m[t]
            for j in range(t, nc):
                mt[j] += mi[j]
        divisors.append(m[t][t])
        t += 1
    rank = len(divisors)
    return SNFResult(rank, tuple(d for d in divisors if d > 1))


def _smallest_pivot(m, t):
    best = None
    best_val = None
    for i in range(t, len(m)):
        row = m[i]
        for j in range(t, len(row)):
            a = row[j]
            if a:
                a = -a if a < 0 else a
                if best_val is None or a < best_val:
                    best_val = a
                    best = (i, j)
                    if a == 1:
                        return best
    return best


def _nondivisible_row(m, t):
    d = m[t][t]
    if d == 1:
        return None
    for i in range(t + 1, len(m)):
        row = m[i]
        for j in range(t + 1, len(row)):
            if row[j] % d:
                return i
    return None
