"""The enveloping algebra U(g), the module Q = U(g)/U(g)(f - 1) and the oracle for H.

Elements of U(g) and of Q are dicts from sorted words (tuples of working-basis
indices, ordered p_e, then z_1..z_2s, then f) to Fractions.  A Q-word never
contains f.  H is realized as the ad(n)-invariants of Q, where n = g(-1) + k f,
with product (x + I)(y + I) = xy + I computed on the f-free representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lie import SliceData
from .linalg import Echelon, vaddto, vscale
from .pbw import PBWModule, words_of

F = Fraction
ONE: tuple = ()


class UEModule(PBWModule):
    """Left-regular representation of U(g) on its PBW basis."""

    def __init__(self, sd: SliceData):
        order = {a: a for a in range(sd.dim)}
        super().__init__(order, lambda a, b: words_of(sd.bracket(a, b)), range(sd.dim))


class QhatModule(PBWModule):
    """U(g)/U(g)(f - 1): f reaching the empty word acts by 1."""

    def __init__(self, sd: SliceData):
        self.f = sd.f
        order = {a: a for a in range(sd.dim)}
        super().__init__(order, lambda a, b: words_of(sd.bracket(a, b)), [a for a in range(sd.dim) if a != sd.f])

    def base(self, g, st):
        assert g == self.f
        return {st: F(1)}


@dataclass
class ThetaElement:
    label: str
    rep: dict  # Q-vector = f-free U(g) representative
    kazhdan_degree: int


class Oracle:
    """H inside Q: Theta formulas, Casimir, products and invariance checks."""

    def __init__(self, sd: SliceData):
        self.sd = sd
        self.ue = UEModule(sd)
        self.q = QhatModule(sd)
        self._theta: dict = {}

    # ---- U(g) ----
    def ue_multiply(self, u: dict, v: dict) -> dict:
        return self.ue.apply(u, v)

    def reduce_mod_ichi(self, u: dict) -> dict:
        f = self.sd.f
        out: dict = {}
        for w, c in u.items():
            k = len(w)
            while k and w[k - 1] == f:
                k -= 1
            vaddto(out, {w[:k]: c})
        return out

    # ---- Q ----
    def unit(self) -> dict:
        return {ONE: F(1)}

    def act(self, x, q: dict) -> dict:
        """Action of a basis index or a g-vector on a Q-vector."""
        if isinstance(x, dict):
            out: dict = {}
            for a, c in x.items():
                vaddto(out, self.q.act_vec(a, q), c)
            return out
        return self.q.act_vec(x, q)

    def chain(self, *vecs: dict) -> dict:
        """v_1 v_2 ... v_k . 1 for g-vectors v_i."""
        q = self.unit()
        for v in reversed(vecs):
            q = self.act(v, q)
        return q

    def h_multiply(self, p: dict, q: dict, check: bool = False) -> dict:
        if check:
            for v in (p, q):
                if not self.is_invariant(v):
                    raise ValueError("h_multiply needs ad(n)-invariant arguments")
        return self.q.apply(p, q)

    def ad(self, w: int, q: dict) -> dict:
        """[w, lift(q)] mod I for w in g(-1) or w = f."""
        left = self.q.act_vec(w, q)
        right = self.q.apply(q, {ONE: F(1)} if w == self.sd.f else {(w,): F(1)})
        vaddto(left, right, -1)
        return left

    def is_invariant(self, q: dict) -> bool:
        return all(not self.ad(w, q) for w in self.sd.zs + [self.sd.f])

    def kdeg(self, word) -> int:
        return sum(self.sd.kdeg(a) for a in word)

    def degree(self, q: dict) -> int:
        return max((self.kdeg(w) for w in q), default=-1)

    def parity_homogeneous(self, q: dict, parity: int) -> bool:
        return all(self.kdeg(w) % 2 == parity for w in q)

    # ---- Theta elements ----
    def theta_zero(self, v: dict, label: str = "") -> ThetaElement:
        sd = self.sd
        for a in v:
            if a not in sd.zchi0:
                raise ValueError("theta_zero expects a vector of z_chi(0)")
        q = self.chain(v)
        for i, zi in enumerate(sd.zs):
            t = sd.bracket_vec(v, sd.zstar(i))
            vaddto(q, self.chain({zi: F(1)}, t), F(1, 2))
        return ThetaElement(label, q, 2)

    def theta_zero_swapped(self, v: dict) -> dict:
        sd = self.sd
        q = self.chain(v)
        for i, zi in enumerate(sd.zs):
            t = sd.bracket_vec(v, sd.zstar(i))
            vaddto(q, self.chain(t, {zi: F(1)}), F(1, 2))
        return q

    def z_correction(self, v: dict) -> dict:
        """(1/3) sum_i (sum_k <z_k, [v, [z_i*, z_k*]]>) z_i."""
        sd = self.sd
        out: dict = {}
        for i, zi in enumerate(sd.zs):
            tot = F(0)
            for k, zk in enumerate(sd.zs):
                inner = sd.bracket_vec(sd.zstar(i), sd.zstar(k))
                tot += sd.symp({zk: F(1)}, sd.bracket_vec(v, inner))
            if tot:
                out[zi] = tot / 3
        return out

    def theta_one(self, v: dict, label: str = "") -> ThetaElement:
        sd = self.sd
        for a in v:
            if sd.degree(a) != 1:
                raise ValueError("theta_one expects a vector of z_chi(1)")
        q = self.chain(v)
        for i, zi in enumerate(sd.zs):
            t = sd.bracket_vec(v, sd.zstar(i))
            vaddto(q, self.chain(t, {zi: F(1)}))
            for j, zj in enumerate(sd.zs):
                tt = sd.bracket_vec(t, sd.zstar(j))
                if tt:
                    vaddto(q, self.chain(tt, {zj: F(1)}, {zi: F(1)}), F(1, 3))
        vaddto(q, self.chain(self.z_correction(v)))
        return ThetaElement(label, q, 3)

    def theta(self, a: int) -> ThetaElement:
        """Theta of a working basis vector of z_chi(0) or z_chi(1) (memoized)."""
        t = self._theta.get(a)
        if t is None:
            sd = self.sd
            if a in sd.zchi0:
                t = self.theta_zero({a: F(1)}, sd.labels[a])
            else:
                t = self.theta_one({a: F(1)}, sd.labels[a])
            self._theta[a] = t
        return t

    def theta_vec(self, v: dict) -> dict:
        out: dict = {}
        for a, c in v.items():
            vaddto(out, self.theta(a).rep, c)
        return out

    # ---- Casimir ----
    def casimir(self) -> dict:
        """Casimir element of g as a U(g) element in PBW form."""
        if not hasattr(self, "_cas_ue"):
            out: dict = {}
            for x, y in self.sd.g_casimir_pairs:
                vaddto(out, self.ue.apply(words_of(x), self.ue.apply(words_of(y), {ONE: F(1)})))
            self._cas_ue = out
        return self._cas_ue

    def casimir_image(self) -> dict:
        """C . 1 in Q."""
        if not hasattr(self, "_cas_q"):
            out: dict = {}
            for x, y in self.sd.g_casimir_pairs:
                vaddto(out, self.chain(x, y))
            self._cas_q = out
        return self._cas_q

    def casimir_closed_form(self) -> dict:
        """2e + h^2/2 - (s+1)h + sum a_i b_i + 2 sum [e, z_i*] z_i, applied to 1."""
        sd = self.sd
        e, h = {sd.e: F(1)}, {sd.h: F(1)}
        q = vscale(self.chain(e), 2)
        vaddto(q, self.chain(h, h), F(1, 2))
        vaddto(q, self.chain(h), -(sd.s + 1))
        for a, b in sd.casimir_pairs:
            vaddto(q, self.chain(a, b))
        for i, zi in enumerate(sd.zs):
            vaddto(q, self.chain(sd.bracket_vec(e, sd.zstar(i)), {zi: F(1)}), 2)
        return q

    def theta_cas(self) -> dict:
        out: dict = {}
        for a, b in self.sd.casimir_pairs:
            vaddto(out, self.h_multiply(self.theta_vec(a), self.theta_vec(b)))
        return out

    # ---- invariance solver ----
    def solve_theta_invariant(self, x: int) -> ThetaElement:
        """Invariant vector of Kazhdan degree <= n_x + 2 with leading term x.

        Unknown coefficients sit on every word of degree <= n_x + 2 except the
        constant, the other degree-(n_x+2) single letters, and words built only
        from z_chi letters (the gauge-fixing shape constraints).
        """
        sd = self.sd
        top = sd.kdeg(x)
        parity = top % 2
        zchi = set(range(sd.n_pe)) - {sd.h}
        unknowns = []
        for w in self.words_up_to(top):
            if not w or w == (x,):
                continue
            if self.kdeg(w) % 2 != parity:
                continue
            if len(w) == 1 and self.kdeg(w) == top:
                continue
            if all(a in zchi for a in w):
                continue
            unknowns.append(w)
        targets = sd.zs + [sd.f]

        def image(word):
            v = {}
            for w in targets:
                for st, c in self.ad(w, {word: F(1)}).items():
                    v[(w, st)] = c
            return v

        ech = Echelon(track=True)
        for i, w in enumerate(unknowns):
            ech.add(image(w), i)
        if ech.kernel:
            raise ArithmeticError("invariant solution is not unique")
        rhs = image((x,))
        res, expr = ech.reduce(rhs)
        if res:
            raise ArithmeticError("no invariant element with the prescribed shape")
        q = {(x,): F(1)}
        for i, c in expr.items():
            if c:
                q[unknowns[i]] = -c
        return ThetaElement(sd.labels[x], q, top)

    def words_up_to(self, deg: int) -> list:
        """All f-free sorted words of Kazhdan degree <= deg."""
        sd = self.sd
        letters = [a for a in range(sd.dim) if a != sd.f]
        out = [()]
        frontier = [((), 0)]
        while frontier:
            nxt = []
            for w, d in frontier:
                start = w[-1] if w else 0
                for a in letters:
                    if a < start:
                        continue
                    nd = d + sd.kdeg(a)
                    if nd <= deg:
                        nw = w + (a,)
                        out.append(nw)
                        nxt.append((nw, nd))
            frontier = nxt
        return out

    # ---- Miura-style splitting ----
    def miura_decompose(self, q: dict) -> list:
        """Group a Q-vector by its z-part: list of (p_e-part dict, z-word)."""
        npe = self.sd.n_pe
        groups: dict = {}
        for w, c in q.items():
            k = 0
            while k < len(w) and w[k] < npe:
                k += 1
            groups.setdefault(w[k:], {})[w[:k]] = c
        return [(groups[z], z) for z in sorted(groups, key=lambda z: (len(z), z))]


# ---- Theta-basis expansions in Q ----

class ThetaBasis:
    """Ordered monomials in chosen H-generators and their images in Q."""

    def __init__(self, oracle: Oracle, gens: list, images: list[dict], degrees: list[int]):
        self.oracle = oracle
        self.gens = gens
        self.images = images
        self.degrees = degrees
        self._mono: dict = {(): oracle.unit()}

    def monomials(self, max_deg: int) -> list[tuple]:
        out = [()]
        frontier = [((), 0)]
        n = len(self.gens)
        while frontier:
            nxt = []
            for m, d in frontier:
                start = m[-1] if m else 0
                for i in range(start, n):
                    nd = d + self.degrees[i]
                    if nd <= max_deg:
                        out.append(m + (i,))
                        nxt.append((m + (i,), nd))
            frontier = nxt
        return out

    def image(self, mono: tuple) -> dict:
        r = self._mono.get(mono)
        if r is None:
            r = self.oracle.h_multiply(self.images[mono[0]], self.image(mono[1:]))
            self._mono[mono] = r
        return r

    def degree(self, mono: tuple) -> int:
        return sum(self.degrees[i] for i in mono)

    def expand(self, q: dict, max_deg: int) -> dict:
        """Coefficients of q on ordered monomials of degree <= max_deg."""
        monos = self.monomials(max_deg)
        ech = Echelon(track=True)
        for m in monos:
            ech.add(self.image(m), m)
        if ech.kernel:
            raise ArithmeticError("monomial images are dependent")
        res, expr = ech.reduce(q)
        if res:
            raise ValueError("vector is not in the span of the monomials (degree too small or not invariant)")
        return {m: c for m, c in expr.items() if c}


def express_in_theta_basis(oracle: Oracle, q: dict, max_deg: int) -> dict:
    """Expansion over ordered monomials in Theta(z_chi(0)), Theta(z_chi(1)) and C."""
    return standard_theta_basis(oracle).expand(q, max_deg)


def standard_theta_basis(oracle: Oracle) -> ThetaBasis:
    if not hasattr(oracle, "_std_basis"):
        sd = oracle.sd
        gens = sd.zchi0 + sd.zchi1 + ["C"]
        images = [oracle.theta(a).rep for a in sd.zchi0 + sd.zchi1] + [oracle.casimir_image()]
        degrees = [2] * len(sd.zchi0) + [3] * len(sd.zchi1) + [4]
        oracle._std_basis = ThetaBasis(oracle, gens, images, degrees)
    return oracle._std_basis


def build_oracle(sd: SliceData) -> Oracle:
    return Oracle(sd)


def theta_e(oracle: Oracle) -> dict:
    """Theta_e := (C - Theta_Cas - c0)/2, whose leading term is e (x) 1."""
    from .lie import c0_constant

    out = vscale(oracle.casimir_image(), F(1, 2))
    vaddto(out, oracle.theta_cas(), F(-1, 2))
    vaddto(out, oracle.unit(), -c0_constant(oracle.sd) / 2)
    return out


def zchi_theta_basis(oracle: Oracle) -> ThetaBasis:
    """Monomials in Theta_x for x running over the whole basis of z_chi (e included)."""
    if not hasattr(oracle, "_zchi_basis"):
        sd = oracle.sd
        gens = sd.zchi0 + sd.zchi1 + [sd.e]
        images = [oracle.theta(a).rep for a in sd.zchi0 + sd.zchi1] + [theta_e(oracle)]
        degrees = [sd.kdeg(a) for a in gens]
        oracle._zchi_basis = ThetaBasis(oracle, gens, images, degrees)
    return oracle._zchi_basis


def contraction_check(oracle: Oracle, pairs=None) -> dict:
    """Expand [Theta_a, Theta_b] over Theta(z_chi)-monomials and compare with Theta_[a,b].

    Modulo terms of Kazhdan degree <= n_a + n_b, the commutator must be
    Theta_[a,b] plus monomials with at least two factors.
    """
    sd = oracle.sd
    tb = zchi_theta_basis(oracle)
    pos = {a: i for i, a in enumerate(tb.gens)}
    if pairs is None:
        pairs = [(a, b) for i, a in enumerate(tb.gens) for b in tb.gens[i + 1:]]
    rows, bad = [], []
    for a, b in pairs:
        pa, pb = tb.images[pos[a]], tb.images[pos[b]]
        comm = oracle.h_multiply(pa, pb)
        vaddto(comm, oracle.h_multiply(pb, pa), -1)
        top = tb.degrees[pos[a]] + tb.degrees[pos[b]] - 2
        exp = tb.expand(comm, top)
        linear = {m[0]: c for m, c in exp.items() if len(m) == 1 and tb.degree(m) == top}
        expected = {pos[x]: c for x, c in sd.bracket(a, b).items()}
        corrections = {m: c for m, c in exp.items() if tb.degree(m) == top and len(m) != 1}
        ok = linear == expected and all(len(m) >= 2 for m in corrections)
        rows.append({
            "pair": (sd.labels[a], sd.labels[b]),
            "leading_ok": linear == expected,
            "correction_degrees": sorted({len(m) for m in corrections}),
            "n_terms": len(exp),
            "pass": ok,
        })
        if not ok:
            bad.append((sd.labels[a], sd.labels[b]))
    return {"pairs": rows, "violations": bad, "pass": not bad}
