"""Straightening engine for ordered PBW bases.

An algebra is presented by totally ordered generators and, for every pair
a > b, the commutator [a, b] written as a combination of words.  A module
state is a sorted word of *insertable* generators, possibly with extra data
(a tail).  Acting by a generator g on a state inserts g in front when it is
not larger than the first letter; otherwise g is moved past that letter
using g w0 = w0 g + [g, w0].  Non-insertable generators reaching an empty
word are evaluated by ``base``.

The same engine gives U(g) (everything insertable), the quotient
U(g)/U(g)(f-1), the presented W-algebra, Verma modules and induced modules.
Results are memoized per (generator, state); the cache only stores values
of a pure function, so sharing it across threads is harmless.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from .linalg import vaddto

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

Word = tuple
Elem = dict  # word -> coefficient


class PBWModule:
    def __init__(self, order: dict, commutator: Callable[[Hashable, Hashable], dict], insertable: Iterable):
        self.order = order
        self.commutator = commutator
        self.insertable = frozenset(insertable)
        self._cache: dict = {}

    # state protocol; subclasses with tails override these three
    def split(self, st):
        return (st[0], st[1:]) if st else (None, st)

    def prepend(self, g, st):
        return (g,) + st

    def base(self, g, st) -> dict:
        raise ValueError(f"generator {g!r} cannot act on {st!r}")

    def act(self, g, st) -> dict:
        key = (g, st)
        r = self._cache.get(key)
        if r is not None:
            return r
        w0, rest = self.split(st)
        ins = g in self.insertable
        if w0 is None:
            r = {self.prepend(g, st): Fraction(1)} if ins else self.base(g, st)
        elif ins and self.order[g] <= self.order[w0]:
            r = {self.prepend(g, st): Fraction(1)}
        else:
            r = {}
            for st2, c in self.act(g, rest).items():
                vaddto(r, self.act(w0, st2), c)
            for word, c in self.commutator(g, w0).items():
                vaddto(r, self.apply_word(word, {rest: Fraction(1)}), c)
        self._cache[key] = r
        return r

    def act_vec(self, g, vec: dict) -> dict:
        out: dict = {}
        for st, c in vec.items():
            vaddto(out, self.act(g, st), c)
        return out

    def apply_word(self, word: Word, vec: dict) -> dict:
        for g in reversed(word):
            vec = self.act_vec(g, vec)
            if not vec:
                break
        return vec

    def apply(self, elem: Elem, vec: dict) -> dict:
        out: dict = {}
        for word, c in elem.items():
            vaddto(out, self.apply_word(word, vec), c)
        return out

    def clear_cache(self) -> None:
        self._cache.clear()


def words_of(vec: dict) -> Elem:
    """Read a g-vector {letter: c} as a combination of one-letter words."""
    return {(a,): c for a, c in vec.items()}


def elem_mul(p: Elem, q: Elem) -> Elem:
    """Concatenation product of combinations of words (no rewriting)."""
    out: dict = {}
    for a, x in p.items():
        for b, y in q.items():
            k = a + b
            v = out.get(k, 0) + x * y
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out
