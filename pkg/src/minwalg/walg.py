"""The W-algebra H given by generators and relations, and its comparison with the oracle.

Generators are numbered 0..q-1 for a basis of z_chi(0) (x-list, h_e, y-list),
q..q+2s-1 for z_chi(1) (u_1..u_s, u*_1..u*_s) and q+2s for the Casimir C.
A WElement is a dict from sorted generator words to Fractions; its
filtration degree counts 2 per z_chi(0) letter, 3 per z_chi(1) letter and
4 per C.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .lie import SliceData, c0_constant
from .linalg import Echelon, mat_inverse, nullspace, vaddto, vscale
from .pbw import PBWModule, elem_mul
from .ug import Oracle, ThetaBasis

F = Fraction


@dataclass
class PresentationData:
    sd: SliceData
    gen0: list  # working indices of the z_chi(0) basis
    gen1: list  # working indices of u_1..u_s, u*_1..u*_s
    bracket00: dict  # (i, j) -> {k: c} with k gen0 positions
    bracket01: dict  # (i, j) -> {k: c} with k gen1 positions
    f_pairing: list  # [j][k] = (f, [g1_j, g1_k])
    quad_terms: dict  # (j, k) -> list of (coords of [u,z_i]#, coords of [v,z_i*]#)
    cas_pairs: list  # list of (coords a_i, coords b_i) over gen0 positions
    c0: Fraction
    labels: list = field(default_factory=list)

    @property
    def q(self) -> int:
        return len(self.gen0)

    @property
    def n1(self) -> int:
        return len(self.gen1)

    @property
    def C(self) -> int:
        return self.q + self.n1

    @property
    def ngens(self) -> int:
        return self.C + 1

    def is0(self, g) -> bool:
        return g < self.q

    def is1(self, g) -> bool:
        return self.q <= g < self.C

    def gdeg(self, g) -> int:
        return 2 if g < self.q else (3 if g < self.C else 4)

    def degree(self, word) -> int:
        return sum(self.gdeg(g) for g in word)

    def exponents(self, word) -> tuple:
        """(a, b, l) exponent form of a sorted word."""
        a = [0] * self.q
        b = [0] * self.n1
        l = 0
        for g in word:
            if g < self.q:
                a[g] += 1
            elif g < self.C:
                b[g - self.q] += 1
            else:
                l += 1
        return tuple(a), tuple(b), l

    def gen_of(self, working_vec: dict) -> dict:
        """Coordinates of a z_chi vector over generator numbers."""
        pos = self._pos
        out = {}
        for a, c in working_vec.items():
            if a not in pos:
                raise ValueError(f"{self.sd.labels[a]} is not a generator direction")
            out[pos[a]] = c
        return out

    def __post_init__(self):
        self._pos = {a: i for i, a in enumerate(self.gen0 + self.gen1)}
        self._rel4: dict = {}

    # ---- relations ----
    def rel4(self, j: int, k: int, c0=None) -> dict:
        """Right-hand side of [Theta_u, Theta_v] for gen1 positions j, k (as WElement words)."""
        if c0 is None:
            key = (j, k)
            if key in self._rel4:
                return self._rel4[key]
            c0v = self.c0
        else:
            c0v = c0
        out: dict = {}
        fp = self.f_pairing[j][k]
        if fp:
            half = fp / 2
            vaddto(out, {(self.C,): half})
            for a, b in self.cas_pairs:
                vaddto(out, elem_mul(_w(a), _w(b)), -half)
            if c0v:
                vaddto(out, {(): -half * c0v})
        for A, B in self.quad_terms[(j, k)]:
            if A and B:
                vaddto(out, elem_mul(_w(A), _w(B)), F(1, 2))
                vaddto(out, elem_mul(_w(B), _w(A)), F(1, 2))
        if c0 is None:
            self._rel4[(j, k)] = out
        return out

    def commutator(self, a: int, b: int) -> dict:
        """[a, b] for generator numbers, as a combination of words."""
        if a == self.C or b == self.C or a == b:
            return {}
        q = self.q
        if a < q and b < q:
            return _w(self.bracket00.get((a, b), {}))
        if a < q:
            return _w({q + k: c for k, c in self.bracket01.get((a, b - q), {}).items()})
        if b < q:
            return _w({q + k: -c for k, c in self.bracket01.get((b, a - q), {}).items()})
        return self.rel4(a - q, b - q)


def _w(coords: dict) -> dict:
    return {(k,): c for k, c in coords.items() if c}


def build_presentation(sd: SliceData) -> PresentationData:
    gen0 = sd.zchi0
    gen1 = sd.zchi1
    pos0 = {a: i for i, a in enumerate(gen0)}
    pos1 = {a: i for i, a in enumerate(gen1)}

    def coords(v, pos):
        out = {}
        for a, c in v.items():
            if a not in pos:
                raise AssertionError(f"unexpected component {sd.labels[a]}")
            out[pos[a]] = c
        return out

    b00 = {}
    for i, a in enumerate(gen0):
        for j, b in enumerate(gen0):
            v = coords(sd.bracket(a, b), pos0)
            if v:
                b00[(i, j)] = v
    b01 = {}
    for i, a in enumerate(gen0):
        for j, b in enumerate(gen1):
            v = coords(sd.bracket(a, b), pos1)
            if v:
                b01[(i, j)] = v
    fvec = {sd.f: F(1)}
    fp = [[sd.form_vec(fvec, sd.bracket(u, v)) for v in gen1] for u in gen1]
    quad = {}
    for j, u in enumerate(gen1):
        for k, v in enumerate(gen1):
            terms = []
            for i, zi in enumerate(sd.zs):
                A = coords(sd.sharp(sd.bracket(u, zi)), pos0)
                B = coords(sd.sharp(sd.bracket_vec({v: F(1)}, sd.zstar(i))), pos0)
                terms.append((A, B))
            quad[(j, k)] = terms
    cas = [(coords(a, pos0), coords(b, pos0)) for a, b in sd.casimir_pairs]
    labels = [sd.labels[a] for a in gen0 + gen1] + ["C"]
    return PresentationData(sd, gen0, gen1, b00, b01, fp, quad, cas, c0_constant(sd), labels)


# ======================================================================
# rewriting
# ======================================================================


class Rewriter(PBWModule):
    """Left-regular action of H on its ordered monomials (normal forms)."""

    def __init__(self, pd: PresentationData, order: list | None = None):
        self.pd = pd
        order = order if order is not None else list(range(pd.ngens))
        super().__init__({g: i for i, g in enumerate(order)}, pd.commutator, range(pd.ngens))

    def normal_form(self, word) -> dict:
        return self.apply_word(tuple(word), {(): F(1)})

    def multiply(self, p: dict, q: dict) -> dict:
        return self.apply(p, q)


def normal_form(pd: PresentationData, word) -> dict:
    return get_rewriter(pd).normal_form(word)


def multiply(pd: PresentationData, p: dict, q: dict) -> dict:
    return get_rewriter(pd).multiply(p, q)


def get_rewriter(pd: PresentationData) -> Rewriter:
    rw = getattr(pd, "_rewriter", None)
    if rw is None:
        rw = Rewriter(pd)
        pd._rewriter = rw
    return rw


def naive_normal_form(pd: PresentationData, word, rng: random.Random) -> dict:
    """Rewrite by repeatedly swapping a randomly chosen adjacent out-of-order pair."""
    todo = {tuple(word): F(1)}
    done: dict = {}
    while todo:
        w, c = todo.popitem()
        bad = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not bad:
            vaddto(done, {w: c})
            continue
        i = rng.choice(bad)
        a, b = w[i], w[i + 1]
        vaddto(todo, {w[:i] + (b, a) + w[i + 2:]: c})
        for mid, cc in pd.commutator(a, b).items():
            vaddto(todo, {w[:i] + mid + w[i + 2:]: c * cc})
    return done


def monomials(pd: PresentationData, max_deg: int) -> list[tuple]:
    out = [()]
    frontier = [((), 0)]
    while frontier:
        nxt = []
        for m, d in frontier:
            start = m[-1] if m else 0
            for g in range(start, pd.ngens):
                nd = d + pd.gdeg(g)
                if nd <= max_deg:
                    out.append(m + (g,))
                    nxt.append((m + (g,), nd))
        frontier = nxt
    return out


def parity_automorphism(pd: PresentationData, p: dict) -> dict:
    out = {}
    for w, c in p.items():
        odd = sum(1 for g in w if pd.is1(g)) % 2
        out[w] = -c if odd else c
    return out


def is_parity_homogeneous(pd: PresentationData, p: dict) -> bool:
    pars = {sum(1 for g in w if pd.is1(g)) % 2 for w in p}
    return len(pars) <= 1


# ======================================================================
# oracle comparison
# ======================================================================


def oracle_basis(pd: PresentationData, oracle: Oracle) -> ThetaBasis:
    images = [oracle.theta(a).rep for a in pd.gen0 + pd.gen1] + [oracle.casimir_image()]
    degrees = [pd.gdeg(g) for g in range(pd.ngens)]
    return ThetaBasis(oracle, list(range(pd.ngens)), images, degrees)


def oracle_image(basis: ThetaBasis, p: dict) -> dict:
    """Image in Q of a combination of arbitrary (not necessarily sorted) words."""
    out: dict = {}
    oracle = basis.oracle
    for w, c in p.items():
        v = oracle.unit()
        for g in reversed(w):
            v = oracle.h_multiply(basis.images[g], v)
        vaddto(out, v, c)
    return out


@dataclass
class Report:
    passed: bool
    details: dict

    def __bool__(self):
        return self.passed


def relation_residuals(pd: PresentationData, oracle: Oracle, c0=None) -> dict:
    """Oracle value of (lhs - rhs) for each defining relation; empty dicts mean the relation holds."""
    basis = oracle_basis(pd, oracle)
    img = basis.images
    hm = oracle.h_multiply
    out = {}
    q, C = pd.q, pd.C

    def comm(a, b):
        v = hm(img[a], img[b])
        vaddto(v, hm(img[b], img[a]), -1)
        return v

    for a in range(q):
        for b in range(a + 1, q):
            r = comm(a, b)
            vaddto(r, oracle_image(basis, pd.commutator(a, b)), -1)
            out[("i", pd.labels[a], pd.labels[b])] = r
        for b in range(q, C):
            r = comm(a, b)
            vaddto(r, oracle_image(basis, pd.commutator(a, b)), -1)
            out[("ii", pd.labels[a], pd.labels[b])] = r
    for a in range(C):
        out[("iii", "C", pd.labels[a])] = comm(C, a)
    for j in range(pd.n1):
        for k in range(pd.n1):
            if j == k:
                continue
            r = comm(q + j, q + k)
            vaddto(r, oracle_image(basis, pd.rel4(j, k, c0)), -1)
            out[("iv", pd.labels[q + j], pd.labels[q + k])] = r
    return out


def solve_c0(pd: PresentationData, oracle: Oracle) -> Fraction:
    """The unique constant making every instance of relation (iv) hold in the oracle."""
    basis = oracle_basis(pd, oracle)
    img = basis.images
    hm = oracle.h_multiply
    q = pd.q
    if pd.n1 == 0:
        # type A1: H = k[C]; the constant is read off from the trivial character of Q
        raise ValueError("no quadratic relation in type A1")
    value = None
    for j in range(pd.n1):
        for k in range(pd.n1):
            fp = pd.f_pairing[j][k]
            r = hm(img[q + j], img[q + k])
            vaddto(r, hm(img[q + k], img[q + j]), -1)
            vaddto(r, oracle_image(basis, pd.rel4(j, k, F(0))), -1)
            if not fp:
                if r:
                    raise ArithmeticError("relation (iv) fails independently of c0")
                continue
            const = r.pop((), F(0))
            if r:
                raise ArithmeticError("relation (iv) residual is not a scalar")
            c = -2 * const / fp
            if value is not None and c != value:
                raise ArithmeticError("inconsistent constants across pairs")
            value = c
    return value


def verify_presentation(pd: PresentationData, oracle: Oracle, max_deg: int = 6, samples: int = 20,
                        seed: int = 0) -> Report:
    res = relation_residuals(pd, oracle)
    failing = [list(k) for k, v in res.items() if v]
    details: dict = {"relations_checked": len(res), "failing_relations": failing}
    if pd.n1:
        c0 = solve_c0(pd, oracle)
        details["c0_solved"] = c0
        details["c0_table"] = pd.c0
    basis = oracle_basis(pd, oracle)
    monos = monomials(pd, max_deg)
    ech = Echelon()
    for m in monos:
        ech.add(basis.image(m))
    details["monomials"] = len(monos)
    details["rank"] = len(ech)
    rng = random.Random(seed)
    bad_products = []
    for _ in range(samples):
        m1, m2 = rng.choice(monos), rng.choice(monos)
        if not _product_agrees(pd, basis, m1, m2):
            bad_products.append([m1, m2])
    details["product_mismatches"] = bad_products
    ok = not failing and len(ech) == len(monos) and not bad_products
    if pd.n1:
        ok = ok and details["c0_solved"] == pd.c0
    return Report(ok, details)


def _product_agrees(pd, basis, m1, m2) -> bool:
    nf = get_rewriter(pd).normal_form(m1 + m2)
    lhs = oracle_image(basis, nf)
    rhs = basis.oracle.h_multiply(basis.image(m1), basis.image(m2))
    return lhs == rhs


def product_table_check(pd: PresentationData, oracle: Oracle, max_deg: int) -> Report:
    """Compare rewriter and oracle products for all monomial pairs of total degree <= max_deg."""
    basis = oracle_basis(pd, oracle)
    monos = monomials(pd, max_deg)
    ech = Echelon()
    for m in monos:
        ech.add(basis.image(m))
    rw = get_rewriter(pd)
    bad = []
    pairs = 0
    for m1 in monos:
        d1 = pd.degree(m1)
        for m2 in monos:
            if d1 + pd.degree(m2) > max_deg:
                continue
            pairs += 1
            nf = rw.normal_form(m1 + m2)
            lhs = {}
            for w, c in nf.items():
                vaddto(lhs, basis.image(w), c)
            # the oracle product of two H elements
            rhs = basis.oracle.h_multiply(basis.image(m1), basis.image(m2))
            if lhs != rhs:
                bad.append([m1, m2])
    ok = not bad and len(ech) == len(monos)
    return Report(ok, {"monomials": len(monos), "rank": len(ech), "pairs": pairs, "mismatches": bad[:20]})


# ======================================================================
# abelianization, H+, center
# ======================================================================


def _poly_add(p: dict, q: dict, c=1) -> None:
    vaddto(p, q, c)


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, x in p.items():
        for b, y in q.items():
            vaddto(out, {tuple(i + j for i, j in zip(a, b)): x * y})
    return out


def poly_str(p: dict, names: list) -> str:
    if not p:
        return "0"
    terms = []
    for mono in sorted(p, key=lambda m: (-sum(m), m)):
        c = p[mono]
        factors = []
        for n, e in zip(names, mono):
            if e:
                factors.append(n if e == 1 else f"{n}^{e}")
        body = "*".join(factors)
        if not body:
            terms.append(str(c))
        elif c == 1:
            terms.append(body)
        elif c == -1:
            terms.append("-" + body)
        else:
            terms.append(f"({c})*{body}")
    return " + ".join(terms).replace("+ -", "- ")


def abelianization(pd: PresentationData) -> dict:
    """Commutative quotient of H.

    Variables are the images of a basis of the center of z_chi(0) and
    Y = C - c0; the images of [z_chi(0), z_chi(0)] and of z_chi(1) vanish.
    """
    sd = pd.sd
    gen0 = pd.gen0
    # derived subalgebra and its orthogonal complement (the center)
    ech = Echelon()
    derived = []
    for a in gen0:
        for b in gen0:
            v = sd.bracket(a, b)
            if v and ech.add(v):
                derived.append(v)
    cols = []
    for a in gen0:
        cols.append({i: sd.form_vec({a: F(1)}, d) for i, d in enumerate(derived) if sd.form_vec({a: F(1)}, d)})
    center = [{gen0[k]: c for k, c in kv.items()} for kv in nullspace(cols)] if gen0 else []
    d1 = Echelon()
    for a in gen0:
        for b in pd.gen1:
            v = sd.bracket(a, b)
            if v:
                d1.add(v)
    if len(d1) != len(pd.gen1):
        raise NotImplementedError("z_chi(1) has coinvariants under z_chi(0)")
    rs = sd.rs
    if rs.type_letter == "A" and center:
        # normalize the central element by alpha_{n-1}(z) = -1 (z acts on the long g(1) root vector)
        z = center[0]
        j = rs.rank - 2 if rs.rank >= 2 else 0
        P = sd.parent.P
        val = F(0)
        for a, c in z.items():
            for k, x in sd.to_chev[a].items():
                val += c * x * rs.cartan_matrix[j][k - 2 * P]
        center = [vscale(z, F(-1) / val)]
    d = len(center)
    names = [f"X{i + 1}" for i in range(d)] + ["Y"]
    if d == 1:
        names[0] = "X"
    gram = [[sd.form_vec(a, b) for b in center] for a in center]
    ginv = mat_inverse(gram) if d else []

    def pi(coords: dict) -> dict:
        """Polynomial (linear) image of a z_chi(0) vector given in gen0 coordinates."""
        vec = {gen0[k]: c for k, c in coords.items()}
        out: dict = {}
        for k in range(d):
            val = sum((ginv[k][l] * sd.form_vec(vec, center[l]) for l in range(d)), F(0))
            if val:
                mono = tuple(int(i == k) for i in range(d + 1))
                out[mono] = val
        return out

    Y = {tuple(int(i == d) for i in range(d + 1)): F(1)}
    cas_pi = {}
    for a, b in pd.cas_pairs:
        _poly_add(cas_pi, _poly_mul(pi(a), pi(b)))
    relations = []
    for j in range(pd.n1):
        for k in range(pd.n1):
            rel: dict = {}
            fp = pd.f_pairing[j][k]
            if fp:
                _poly_add(rel, Y, fp / 2)
                _poly_add(rel, cas_pi, -fp / 2)
            for A, B in pd.quad_terms[(j, k)]:
                _poly_add(rel, _poly_mul(pi(A), pi(B)))
            if rel:
                lead = rel[max(rel)]
                rel = {m: c / lead for m, c in rel.items()}
                if rel not in relations:
                    relations.append(rel)
    result = {
        "variables": names,
        "center_dim": d,
        "c0": pd.c0,
        "relations": relations,
        "relations_str": [poly_str(r, names) + " = 0" for r in relations],
    }
    if d == 0:
        result["kind"] = "point" if relations else "line"
    elif d == 1 and len(relations) == 1:
        r = relations[0]
        x2 = r.get((2, 0), F(0))
        y1 = r.get((0, 1), F(0))
        if x2 and set(r) <= {(2, 0), (0, 1)}:
            result["kind"] = "curve"
            result["coefficient"] = -y1 / x2  # X^2 = coefficient * Y
        else:
            result["kind"] = "other"
    else:
        result["kind"] = "other"
    if not pd.gen0 and not pd.gen1:
        result["kind"] = "line"
    return result


def trivial_character(pd: PresentationData, p: dict) -> Fraction:
    """Value of p on the one-dimensional module where every Theta acts by 0 and C by c0."""
    tot = F(0)
    for w, c in p.items():
        if all(g == pd.C for g in w):
            tot += c * pd.c0 ** len(w)
    return tot


def hplus_ideal_check(pd: PresentationData, max_deg: int) -> Report:
    """H+ is spanned by X^a Y^b (C - c0)^l with a + b + l > 0; check it is a two-sided ideal.

    In normal form, membership in H+ is vanishing of the trivial character.
    """
    rw = get_rewriter(pd)
    monos = monomials(pd, max_deg)
    C = pd.C
    bad = []
    checked = 0
    for m in monos:
        if not m:
            continue
        # shifted spanning element: replace each C in m by (C - c0)
        base = [g for g in m if g != C]
        l = len(m) - len(base)
        elem = {tuple(base): F(1)}
        for _ in range(l):
            nxt: dict = {}
            for w, c in elem.items():
                vaddto(nxt, {w + (C,): c})
                vaddto(nxt, {w: -c * pd.c0})
            elem = nxt
        elem = rw.apply(elem, {(): F(1)})
        if trivial_character(pd, elem):
            bad.append(("element", m))
            continue
        if pd.degree(m) + 4 > max_deg:
            continue
        for g in range(pd.ngens):
            left = rw.apply({(g,): F(1)}, elem)
            right = rw.apply(elem, {(g,): F(1)})
            checked += 2
            if trivial_character(pd, left) or trivial_character(pd, right):
                bad.append((g, m))
    unit_outside = trivial_character(pd, {(): F(1)}) != 0
    return Report(not bad and unit_outside, {"products": checked, "violations": bad[:10]})


def central_elements(pd: PresentationData, max_deg: int) -> list[dict]:
    """Basis of the elements of degree <= max_deg commuting with every generator."""
    rw = get_rewriter(pd)
    monos = monomials(pd, max_deg)
    cols = []
    for m in monos:
        col = {}
        for g in range(pd.ngens):
            left = rw.apply({(g,): F(1)}, {m: F(1)})
            right = rw.apply({m: F(1)}, {(g,): F(1)})
            vaddto(left, right, -1)
            for w, c in left.items():
                col[(g, w)] = c
        cols.append(col)
    return [{monos[i]: c for i, c in k.items()} for k in nullspace(cols)]


def g2_relation(pd: PresentationData) -> dict:
    """Normal form of the commutator [Theta_{u1*}, Theta_{u1}] (first starred and unstarred pair)."""
    s = pd.sd.s
    u1 = pd.q
    u1s = pd.q + s
    rw = get_rewriter(pd)
    out = rw.normal_form((u1s, u1))
    vaddto(out, rw.normal_form((u1, u1s)), -1)
    return out
