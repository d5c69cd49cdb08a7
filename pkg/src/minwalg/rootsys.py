"""Root systems in Bourbaki numbering with exact rational inner products.

Roots are integer tuples in the simple-root basis.  Weights are tuples of
Fractions in the fundamental-weight basis.  The inner product is scaled so
that long roots have squared length 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import mat_inverse

Root = tuple
Weight = tuple

F = Fraction
HALF = F(1, 2)

SUPPORTED = "A_n (n>=1), B_n (n>=3), C_n (n>=2), D_n (n>=4), E6, E7, E8, F4, G2"


def _chain(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def _gram(letter: str, n: int) -> list[list[Fraction]]:
    """Matrix of (alpha_i, alpha_j), long roots normalized to 2."""
    lengths = [F(2)] * n
    edges: dict[tuple[int, int], Fraction] = {}
    if letter == "A":
        edges = {e: F(-1) for e in _chain(n)}
    elif letter == "B":
        lengths[n - 1] = F(1)
        edges = {e: F(-1) for e in _chain(n)}
    elif letter == "C":
        lengths = [F(1)] * (n - 1) + [F(2)]
        edges = {e: -HALF for e in _chain(n - 1)}
        edges[(n - 2, n - 1)] = F(-1)
    elif letter == "D":
        edges = {e: F(-1) for e in _chain(n - 1)}
        edges[(n - 3, n - 1)] = F(-1)
    elif letter == "E":
        pairs = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
        edges = {(a - 1, b - 1): F(-1) for a, b in pairs if b <= n}
    elif letter == "F":
        lengths = [F(2), F(2), F(1), F(1)]
        edges = {(0, 1): F(-1), (1, 2): F(-1), (2, 3): -HALF}
    elif letter == "G":
        lengths = [F(2, 3), F(2)]
        edges = {(0, 1): F(-1)}
    g = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = lengths[i]
    for (i, j), v in edges.items():
        g[i][j] = g[j][i] = v
    return g


def _check_type(letter: str, rank: int) -> tuple[str, int]:
    letter = letter.upper()
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if letter not in ok or not ok[letter]:
        raise ValueError(f"unsupported type {letter}{rank}; supported: {SUPPORTED}")
    if letter == "B" and rank == 2:
        letter = "C"
    return letter, rank


@dataclass
class RootSystem:
    type_letter: str
    rank: int
    gram: list = field(repr=False)
    cartan_matrix: list = field(repr=False)
    positive_roots: list = field(repr=False)
    beta_index: int = 0
    fund_gram: list = field(repr=False, default_factory=list)

    # -- basic data --
    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    @property
    def simple_roots(self) -> list[Root]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    @property
    def roots(self) -> list[Root]:
        return self.positive_roots + [neg(a) for a in self.positive_roots]

    @property
    def beta(self) -> Root:
        return self.simple_roots[self.beta_index]

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @property
    def fundamental_weights(self) -> list[Weight]:
        return [tuple(F(int(i == j)) for j in range(self.rank)) for i in range(self.rank)]

    @property
    def rho(self) -> Weight:
        return tuple(F(1) for _ in range(self.rank))

    def is_root(self, a: Root) -> bool:
        return a in self._rootset

    def __post_init__(self):
        self._rootset = set(self.roots)

    # -- forms --
    def root_inner(self, a: Root, b: Root) -> Fraction:
        g = self.gram
        return sum((x * g[i][j] * y for i, x in enumerate(a) if x for j, y in enumerate(b) if y), F(0))

    def root_to_weight(self, a: Root) -> Weight:
        """Fundamental coordinates of a root: the values <a, alpha_j^vee>."""
        A = self.cartan_matrix
        return tuple(F(sum(a[k] * A[k][j] for k in range(self.rank))) for j in range(self.rank))

    def weight_to_root_coords(self, lam: Weight) -> tuple:
        """Rational simple-root coordinates of a weight."""
        n = self.rank
        # lam = sum c_k alpha_k with <alpha_k, alpha_j^vee> = A[k][j]
        inv = mat_inverse(self.cartan_matrix)
        return tuple(sum(F(lam[j]) * inv[j][k] for j in range(n)) for k in range(n))

    def coroot_pairing(self, a: Root, j: int) -> int:
        """<a, alpha_j^vee>."""
        return sum(a[k] * self.cartan_matrix[k][j] for k in range(self.rank))

    def height(self, a: Root) -> int:
        return sum(a)


def neg(a: Root) -> Root:
    return tuple(-x for x in a)


def add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _positive_roots(n: int, A: list[list[int]]) -> list[Root]:
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for a in layer:
            for i in range(n):
                q = 0
                b = a
                while True:
                    b = tuple(x - int(k == i) for k, x in enumerate(b))
                    if b in roots:
                        q += 1
                    else:
                        break
                p = q - sum(a[k] * A[k][i] for k in range(n))
                if p > 0:
                    c = tuple(x + int(k == i) for k, x in enumerate(a))
                    if c not in roots:
                        roots.add(c)
                        nxt.append(c)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


def build_root_system(type_letter: str, rank: int) -> RootSystem:
    letter, n = _check_type(type_letter, rank)
    g = _gram(letter, n)
    A = [[int(2 * g[i][j] / g[j][j]) for j in range(n)] for i in range(n)]
    pos = _positive_roots(n, A)
    if letter in ("A", "C"):
        b = n - 1
    else:
        theta = pos[-1]
        linked = [i for i in range(n) if sum(theta[k] * g[k][i] for k in range(n)) != 0]
        assert len(linked) == 1
        b = linked[0]
    # (varpi_i, varpi_j) = (A^{-1})_{ij} (alpha_j, alpha_j) / 2
    inv = mat_inverse(A)
    fg = [[inv[i][j] * g[j][j] / 2 for j in range(n)] for i in range(n)]
    return RootSystem(letter, n, g, A, pos, b, fg)


def inner_product(rs: RootSystem, lam: Weight, mu: Weight) -> Fraction:
    fg = rs.fund_gram
    return sum((F(x) * fg[i][j] * y for i, x in enumerate(lam) if x for j, y in enumerate(mu) if y), F(0))


def pairing(rs: RootSystem, lam: Weight, alpha: Root) -> Fraction:
    """<lam, alpha> = 2 (lam, alpha) / (alpha, alpha)."""
    if not any(alpha):
        raise ValueError("pairing with the zero root")
    aw = rs.root_to_weight(alpha)
    return 2 * inner_product(rs, lam, aw) / rs.root_inner(alpha, alpha)


def wadd(*ws: Weight) -> Weight:
    return tuple(sum(xs, F(0)) for xs in zip(*ws))


def wscale(c, w: Weight) -> Weight:
    return tuple(F(c) * x for x in w)


def reflect(rs: RootSystem, i: int, lam: Weight) -> Weight:
    """Simple reflection s_i acting on a weight."""
    c = lam[i]
    return tuple(F(x) - c * rs.cartan_matrix[i][j] for j, x in enumerate(lam))


def dot_action(rs: RootSystem, word: list[int], lam: Weight) -> Weight:
    """w . lam = w(lam + rho) - rho for w = s_{word[0]} ... s_{word[-1]}."""
    v = wadd(lam, rs.rho)
    for i in reversed(word):
        v = reflect(rs, i, v)
    return wadd(v, wscale(-1, rs.rho))


def ht_beta(rs: RootSystem, a: Root) -> int:
    """Sum of the simple-root coefficients of a, omitting the coefficient of beta."""
    return sum(x for k, x in enumerate(a) if k != rs.beta_index)


def positive_root_count(letter: str, n: int) -> int:
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[letter]
