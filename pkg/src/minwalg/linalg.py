"""Exact rational linear algebra on sparse dict vectors and small dense matrices."""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Any, Hashable, Iterable

Vec = dict


def vadd(a: dict, b: dict, c=1) -> dict:
    """Return a + c*b as a new sparse vector, dropping zeros."""
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + c * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def vaddto(a: dict, b: dict, c=1) -> None:
    """In-place a += c*b."""
    if not c:
        return
    for k, v in b.items():
        w = a.get(k, 0) + c * v
        if w:
            a[k] = w
        else:
            a.pop(k, None)


def vscale(a: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


class _Rev:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k


class Echelon:
    """Incremental row echelon form over Q.

    Each stored row has a pivot equal to its largest key, normalized to 1.
    With ``track=True`` every row remembers how it was built from the tagged
    input vectors, which gives solutions and kernel relations for free.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[Any, dict] = {}
        self.exprs: dict[Any, dict] = {}
        self.track = track
        self.kernel: list[dict] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Return (residual, expr) with vec = residual + combination of inputs given by expr."""
        vec = dict(vec)
        expr: dict = {}
        heap = [_Rev(k) for k in vec if k in self.rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap).k
            c = vec.get(k)
            if not c:
                continue
            row = self.rows[k]
            for kk, v in row.items():
                w = vec.get(kk, 0) - c * v
                if w:
                    if kk not in vec and kk in self.rows:
                        heapq.heappush(heap, _Rev(kk))
                    vec[kk] = w
                else:
                    vec.pop(kk, None)
            if self.track:
                vaddto(expr, self.exprs[k], c)
        return vec, expr

    def add(self, vec: dict, tag: Hashable = None) -> bool:
        """Insert a vector; return True if it was independent of the previous ones."""
        res, expr = self.reduce(vec)
        if self.track:
            full = {tag: Fraction(1)}
            vaddto(full, expr, -1)
        if not res:
            if self.track:
                self.kernel.append(full)
            return False
        p = max(res)
        inv = 1 / Fraction(res[p])
        self.rows[p] = {k: v * inv for k, v in res.items()}
        if self.track:
            self.exprs[p] = vscale(full, inv)
        return True


def rank(vectors: Iterable[dict]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def nullspace(columns: list[dict]) -> list[dict]:
    """Kernel of the linear map whose i-th column is columns[i], as sparse dicts over column indices."""
    ech = Echelon(track=True)
    for i, col in enumerate(columns):
        ech.add(col, i)
    return ech.kernel


def solve_combination(columns: list[dict], target: dict) -> dict | None:
    """Coefficients x (dict index -> value) with sum x_i columns[i] = target, or None."""
    ech = Echelon(track=True)
    for i, col in enumerate(columns):
        ech.add(col, i)
    res, expr = ech.reduce(target)
    if res:
        return None
    return {k: v for k, v in expr.items() if v}


# ---- dense helpers (small matrices only) ----

def mat_inverse(m: list[list]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def mat_mul(a: list[list], b: list[list]) -> list[list]:
    return [[sum(x * b[k][j] for k, x in enumerate(row)) for j in range(len(b[0]))] for row in a]


def mat_vec(a: list[list], v: list) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]
