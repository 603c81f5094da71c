"""The homogeneous-space pipeline: polynomial-algebra inputs, Tor rings
via the bar construction with the Kadeishvili-Saneblidze product, an
independent Koszul-resolution oracle, the Theta / Psi composition
combinators, chain-level Eilenberg-Moore instances on simplicial groups,
and a catalog of known-answer pairs.
"""
import random
import re

from .graded import GradedElement, Tensor
from .linalg import (homology, ReducedSpace, express_class, StructuralError)
from .dg import (CheckReport, FreeGcDga, polynomial_dga, gc_algebra_map,
                 TwistingCochain)
from .bar import (BarDgc, BarWord, OneSidedBar, TorTable, tor_additive,
                  dgc_map_from_cochain)
from .shm import TwistingFamily, gamma, compose_family_cochain
from .hga import VectorHga, trivial_hga, dual_cochain_hga, KSAlgebra
from .simplicial import DualCochainDga, Cochain
from .classifying import wbar


# ---------------------------------------------------------------------------
# Input specifications
# ---------------------------------------------------------------------------

_MONOMIAL_RE = re.compile(r"^\s*([+-]?\d*)\s*\*?\s*([a-zA-Z_][\w^* ]*)?\s*$")


def parse_polynomial(B, text):
    """Parse expressions like "-t^2", "t1*t2 + 2*u", "0" into elements."""
    text = text.strip()
    out = B.zero()
    if text in ("0", ""):
        return out
    # split into +- separated monomials
    terms = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
    for term in terms:
        sign = 1
        body = term
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        coeff = 1
        powers = []
        for factor in body.split("*"):
            if not factor:
                continue
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = re.match(r"^([a-zA-Z_]\w*?)(?:\^(\d+))?$", factor)
            if not m:
                raise ValueError(f"cannot parse monomial factor {factor!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            powers.append((name, exp))
        key = B.monomial(powers)
        if key is None:
            continue
        out = out + GradedElement.single(B.field, key,
                                         B.field.of(sign * coeff))
    return out


class PolynomialAlgebraSpec:
    """Generators with names and even positive degrees."""

    def __init__(self, gens):
        for name, d in gens:
            if d <= 0 or d % 2:
                raise ValueError(
                    f"generator {name} must have even positive degree")
        self.gens = list(gens)

    @classmethod
    def from_json(cls, data):
        return cls([(g[0], int(g[1])) for g in data["gens"]])

    def build(self, field):
        return polynomial_dga(field, self.gens)


class AlgebraMapSpec:
    """Images of the source generators, degree preservation enforced."""

    def __init__(self, images):
        self.images = dict(images)  # name -> expression string or element

    @classmethod
    def from_json(cls, data):
        return cls(dict(data))

    def build(self, A, B):
        imgs = {}
        for name, _ in A.gens.items():
            expr = self.images.get(name, "0")
            img = expr if isinstance(expr, GradedElement) else \
                parse_polynomial(B, expr)
            if not img.is_zero() and img.degree() != A.gens[name]:
                raise ValueError(f"image of {name} does not preserve degree")
            imgs[name] = img
        return gc_algebra_map(A, B, imgs)


# ---------------------------------------------------------------------------
# Tor rings
# ---------------------------------------------------------------------------

class TorRing:
    """A Tor table together with the product on chosen representatives."""

    def __init__(self, table, complex_d, field, product_fn, bigrade_fn):
        self.table = table
        self.field = field
        self._d = complex_d
        self._product = product_fn
        self._bigrade = bigrade_fn
        self._boundary_spaces = {}

    def boundary_space(self, degree, basis_lower):
        got = self._boundary_spaces.get(degree)
        if got is None:
            got = ReducedSpace(self.field)
            for k in basis_lower:
                v = self._d(k)
                if v:
                    got.add(v)
            self._boundary_spaces[degree] = got
        return got

    def class_of(self, z, degree, basis_lower):
        reps = [dict(r) for r in self.table.representatives.get(degree, [])]
        return express_class(dict(z), reps, self.boundary_space(degree,
                                                                basis_lower),
                             self.field)

    def product_class(self, d1, i1, d2, i2, basis_lower):
        r1 = self.table.representatives[d1][i1]
        r2 = self.table.representatives[d2][i2]
        z = self._product(r1, r2)
        return self.class_of(z.terms if isinstance(z, GradedElement) else z,
                             d1 + d2, basis_lower)


def tor_bar_algebra(field, base_spec, fiber_spec, map_spec, max_total,
                    sample_products=True):
    """Tor of polynomial data through the one-sided bar construction with
    the Kadeishvili-Saneblidze product (trivial hga on commutative input)."""
    A = base_spec.build(field)
    B = fiber_spec.build(field)
    fmap = map_spec.build(A, B)
    osb = OneSidedBar(A, B, f=fmap)
    table = tor_additive(osb, max_total)
    hga_A = trivial_hga(A)
    hga_B = trivial_hga(B)
    ks = KSAlgebra(osb, hga_A, hga_B, push=fmap)

    def product(r1, r2):
        e1 = GradedElement(field, dict(r1))
        e2 = GradedElement(field, dict(r2))
        return ks.product(e1, e2)

    def bigrade(key):
        w, b = key.parts
        return (-w.length, w.internal_degree + b.degree)

    ring = TorRing(table, lambda k: osb.diff_key(k).terms, field, product,
                   bigrade)
    if sample_products:
        _attach_products(ring, osb, max_total)
    return ring, osb, ks


def _attach_products(ring, osb, max_total):
    table = ring.table
    entries = []
    for d1 in sorted(table.totals):
        for i1 in range(len(table.representatives.get(d1, []))):
            for d2 in sorted(table.totals):
                if d1 + d2 > max_total or d2 < d1:
                    continue
                for i2 in range(len(table.representatives.get(d2, []))):
                    basis_lower = osb.basis_total(d1 + d2 - 1)
                    coords = ring.product_class(d1, i1, d2, i2, basis_lower)
                    entries.append({
                        "factors": [[d1, i1], [d2, i2]],
                        "degree": d1 + d2,
                        "coords": [str(c) for c in coords]
                        if coords is not None else None,
                    })
    table.products = entries


def tor_koszul_oracle(field, base_spec, fiber_spec, map_spec, max_total):
    """Independent oracle: the commutative dga Lambda(s_g) (x) B with
    d(s_g) = iota(g); same bigraded dimensions, product from the dga."""
    B_gens = list(fiber_spec.gens)
    s_gens = [(f"s_{name}", d - 1) for name, d in base_spec.gens]
    Btmp = polynomial_dga(field, B_gens)
    Atmp = base_spec.build(field)
    fmap = map_spec.build(Atmp, Btmp)
    R2 = FreeGcDga(field, B_gens + s_gens)

    def embed(x):
        out = GradedElement(field)
        for k, c in x.terms.items():
            out.add_in(GradedElement.single(field, R2.monomial(k.powers)), c)
        return out

    R2._dgen = {}
    for name, d in base_spec.gens:
        img = fmap(GradedElement.single(field, Atmp.monomial([(name, 1)])))
        R2._dgen[f"s_{name}"] = embed(img)

    def bigrade(key):
        k = sum(e for n, e in key.powers if n.startswith("s_"))
        t = key.degree + k
        return (-k, t)

    basis = {}
    for n in range(0, max_total + 1):
        basis[n] = R2.basis(n)
    res = homology(basis, lambda k: R2.diff_key(k).terms, field, ddeg=1)
    totals = {n: res.dims[n] for n in range(0, max_total + 1)}
    bigr = {}
    columns = {}
    for n, keys in basis.items():
        for k in keys:
            s, t = bigrade(k)
            columns.setdefault(t, {}).setdefault(s, []).append(k)
    for t, sub in columns.items():
        subres = homology(sub, lambda k: R2.diff_key(k).terms, field, ddeg=1)
        for s, d in subres.dims.items():
            if d and s + t <= max_total:
                bigr[(s, t)] = d
    table = TorTable(bigr, totals,
                     representatives={n: res.representatives.get(n, [])
                                      for n in totals})

    def product(r1, r2):
        return R2.mul(GradedElement(field, dict(r1)),
                      GradedElement(field, dict(r2)))

    ring = TorRing(table, lambda k: R2.diff_key(k).terms, field, product,
                   bigrade)
    ring.algebra = R2
    ring.basis_by_degree = basis
    return ring


# ---------------------------------------------------------------------------
# Theta and Psi
# ---------------------------------------------------------------------------

def theta(lambda_G, lambda_K, h, HG, HK, iota_map, iota_c_map):
    """Theta: B(k, H_G, H_K) -> B(k, C_G, C_K) as the composition of
    Gamma_{Lambda_K}, delta_h, and B Lambda_G (x) 1.

    lambda_G: TwistingFamily H_G => C_G; lambda_K: H_K => C_K;
    iota_map: element map H_G -> H_K (the restriction on cohomology);
    iota_c_map: element map C_G -> C_K (the chain-level restriction);
    h: a twisting homotopy B H_G -> C_K from (iota_C* o Lambda_G o t) to
    (Lambda_K o iota* o t), or None for the trivial homotopy in the
    strict/commutative case.  Returns (theta_map, source_osb, target_osb).
    """
    field = HG.field
    source = OneSidedBar(HG, HK, f=iota_map)
    gmap, middle = gamma(lambda_K, source, push=iota_map)
    CK = lambda_K.B
    CG = lambda_G.B
    barHG = source.barA
    bl = lambda_G.bar_map(barHG, BarDgc(CG))
    final = OneSidedBar(CG, CK, f=iota_c_map)

    if h is None:
        from .dg import trivial_homotopy
        h = trivial_homotopy(barHG, CK, middle.t)
        third = middle
    else:
        third = OneSidedBar(HG, CK, twisting=h.source, barA=barHG)

    delta = third.delta(h.map)

    def theta_map(key):
        out = GradedElement(field)
        for k1, c1 in gmap(key).terms.items():
            out.add_in(delta(k1), c1)
        result = GradedElement(field)
        for k2, c2 in out.terms.items():
            w, bk = k2.parts
            for kw, cw in bl(w).terms.items():
                result.add_in(GradedElement.single(
                    field, Tensor((kw, bk))), field.mul(c2, cw))
        return result

    return theta_map, source, final


def psi(osb_base_keys, kappa_pull, f_star, coef_H):
    """Psi: B(k, C_G, C_K) -> B(k, C_G, H_T): apply kappa* then f* to the
    coefficient factor.  `kappa_pull` maps coefficient basis keys to
    functional cochains on BT; `f_star` lands in the polynomial algebra
    coef_H."""

    def psi_map(elem):
        field = coef_H.field
        out = GradedElement(field)
        for key, c in elem.terms.items():
            w, bk = key.parts
            img = f_star(kappa_pull(bk))
            for kh, ch in img.terms.items():
                out.add_in(GradedElement.single(
                    field, Tensor((w, kh))), field.mul(c, ch))
        return out

    return psi_map


# ---------------------------------------------------------------------------
# Chain-level Eilenberg-Moore instances
# ---------------------------------------------------------------------------

def chain_level_tor(G, K_space, field, max_total, coef_trunc=None):
    """H of the KS algebra B(k, C*(BG), C*(BK)) up to max_total.

    `K_space` may be None for trivial coefficients.  BG must be 1-reduced.
    Returns (ring, osb, ks)."""
    BG = wbar(G)
    # the d^2 spot check multiplies entries whose degrees sum two above
    # the total degree bound
    trunc = coef_trunc if coef_trunc is not None else max_total + 2
    A = DualCochainDga(BG, trunc)
    if not A.simply_connected:
        raise StructuralError("chain-level Tor needs a 1-reduced base; "
                              "apply the reduced subgroup first")
    hga_A = dual_cochain_hga(A)
    if K_space is None:
        B = polynomial_dga(field, [])
        hga_B = trivial_hga(B)

        def fmap(x):
            return B.one().scale(A.aug(x))

        push = fmap
    else:
        BK = wbar(K_space)
        B = DualCochainDga(BK, trunc)
        hga_B = dual_cochain_hga(B)

        def restrict(x):
            # C*(BG) -> C*(BK) along the inclusion BK -> BG
            from .simplicial import DualKey
            out = GradedElement(field)
            if x.is_zero():
                return out
            deg = x.degree()
            fn = A.functional(x)
            for data in BK.nondegenerate(deg):
                key = BK.key(deg, data)
                gkey = BG.key(deg, data)
                v = fn(gkey)
                if v != field.zero:
                    out.add_in(GradedElement.single(field, DualKey(key)), v)
            return out

        fmap = restrict
        push = restrict
    osb = OneSidedBar(A, B, f=fmap)
    table = tor_additive(osb, max_total, d2_bound=2)
    ks = KSAlgebra(osb, hga_A, hga_B, push=push)

    def product(r1, r2):
        return ks.product(GradedElement(field, dict(r1)),
                          GradedElement(field, dict(r2)))

    def bigrade(key):
        w, b = key.parts
        return (-w.length, w.internal_degree + b.degree)

    ring = TorRing(table, lambda k: osb.diff_key(k).terms, field, product,
                   bigrade)
    return ring, osb, ks


# ---------------------------------------------------------------------------
# Catalog of known-answer pairs
# ---------------------------------------------------------------------------

CATALOG = {
    "SU(2)/T": {
        "base": [("c2", 4)], "fiber": [("t", 2)],
        "map": {"c2": "-t^2"},
        "poincare_dims": {0: 1, 2: 1},
    },
    "SU(3)/T": {
        "base": [("c2", 4), ("c3", 6)], "fiber": [("t1", 2), ("t2", 2)],
        # roots t1, t2, -t1-t2: c2 = e2, c3 = e3
        "map": {"c2": "-t1^2-t1*t2-t2^2", "c3": "-t1^2*t2-t1*t2^2"},
        "poincare_dims": {0: 1, 2: 2, 4: 2, 6: 1},
    },
    "SU(3)/SU(2)": {
        "base": [("c2", 4), ("c3", 6)], "fiber": [("d2", 4)],
        "map": {"c2": "d2", "c3": "0"},
        "poincare_dims": {0: 1, 5: 1},
    },
    "U(2)/U(1)xU(1)": {
        "base": [("c1", 2), ("c2", 4)], "fiber": [("t1", 2), ("t2", 2)],
        "map": {"c1": "t1+t2", "c2": "t1*t2"},
        "poincare_dims": {0: 1, 2: 1},
    },
    "Sp(1)": {
        "base": [("q", 4)], "fiber": [],
        "map": {"q": "0"},
        "poincare_dims": {0: 1, 3: 1},
    },
    "U(3)/U(1)^3": {
        "base": [("c1", 2), ("c2", 4), ("c3", 6)],
        "fiber": [("t1", 2), ("t2", 2), ("t3", 2)],
        "map": {"c1": "t1+t2+t3", "c2": "t1*t2+t1*t3+t2*t3",
                "c3": "t1*t2*t3"},
        "poincare_dims": {0: 1, 2: 2, 4: 2, 6: 1},
    },
    "PU(2)@F2": {
        "base": [("c1", 2), ("c2", 4)], "fiber": [("t", 2)],
        "map": {"c1": "0", "c2": "t^2"},
        "poincare_dims": {0: 1, 1: 1, 2: 1, 3: 1},
    },
}


def catalog_entry(name):
    data = CATALOG[name]
    return (PolynomialAlgebraSpec(data["base"]),
            PolynomialAlgebraSpec(data["fiber"]),
            AlgebraMapSpec(data["map"]),
            data["poincare_dims"])


def run_catalog_entry(field, name, max_total, with_oracle=True,
                      sample_products=False):
    base, fiber, mp, expected = catalog_entry(name)
    ring, osb, ks = tor_bar_algebra(field, base, fiber, mp, max_total,
                                    sample_products=sample_products)
    report = CheckReport(f"catalog {name} over {field}")
    for d in range(0, max_total + 1):
        report.record(ring.table.totals.get(d, 0) == expected.get(d, 0),
                      ("dimension", d))
    oracle_ring = None
    if with_oracle:
        oracle_ring = tor_koszul_oracle(field, base, fiber, mp, max_total)
        bar_b = {bd: v for bd, v in ring.table.bidegrees.items() if v}
        kos_b = {bd: v for bd, v in oracle_ring.table.bidegrees.items() if v}
        report.record(bar_b == kos_b, ("bigraded tables", bar_b, kos_b))
        for d in range(0, max_total + 1):
            report.record(ring.table.totals.get(d, 0)
                          == oracle_ring.table.totals.get(d, 0),
                          ("oracle dims", d))
    return ring, oracle_ring, report
