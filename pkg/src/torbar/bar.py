"""The reduced bar construction, its universal twisting cochain, the
bar-level shuffle map, the twisting-cochain / dgc-map correspondence,
one-sided bar constructions and differential Tor.

Bar words store entries as basis keys of the underlying dga with
coefficients folded outward; entries are reduced (no unit factors).  A
word [a_1|...|a_k] denotes the desuspended tensor s^{-1}a_1 (x) ... and
has degree sum(|a_i| - 1).
"""
import json

from .graded import GradedElement, LinearMap, Tensor
from .linalg import homology, StructuralError
from .dg import Dgc, TwistingCochain, TwistedTensor, TensorDgc


class BarWord:
    """Basis key of the reduced bar construction."""

    __slots__ = ("entries", "degree")

    def __init__(self, entries, degree=None):
        self.entries = entries
        if degree is None:
            degree = sum(e.degree - 1 for e in entries)
        self.degree = degree

    @property
    def length(self):
        return len(self.entries)

    @property
    def internal_degree(self):
        return self.degree + len(self.entries)

    def __eq__(self, other):
        return isinstance(other, BarWord) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        if not self.entries:
            return "[]"
        return "[" + "|".join(repr(e) for e in self.entries) + "]"


class BarDgc(Dgc):
    """B A for an augmented dga A (cohomological grading)."""

    def __init__(self, A):
        super().__init__(A.field)
        if A.ddeg != 1:
            raise ValueError("bar construction expects a cochain-type dga")
        if getattr(A, "unit_key", None) is None:
            raise ValueError("bar construction needs a basis-adapted unit "
                             "(connected dga)")
        self.A = A
        self.ddeg = 1
        self.coaug_key = BarWord((), 0)
        self.cocomplete = True

    def word(self, keys):
        return BarWord(tuple(keys))

    def words_from_elements(self, elems):
        """Multilinear expansion of [x_1|...|x_k] with reduced entries."""
        field = self.field
        out = GradedElement(field)
        combos = [((), field.one)]
        for x in elems:
            x = self.A.reduced(x)
            nxt = []
            for keys, c in combos:
                for k, c2 in x.terms.items():
                    nxt.append((keys + (k,), field.mul(c, c2)))
            combos = nxt
            if not combos:
                break
        for keys, c in combos:
            out.add_in(GradedElement.single(field, BarWord(keys), c))
        return out

    def basis(self, degree, max_length=None):
        """Bar words of the given bar degree (A must be simply connected)."""
        if not self.A.simply_connected:
            raise StructuralError(
                "bar basis enumeration requires a simply connected dga")
        if degree < 0:
            return []
        if degree == 0:
            return [self.coaug_key]
        out = []

        def extend(entries, rem, length):
            if rem == 0:
                out.append(BarWord(tuple(entries)))
                return
            if max_length is not None and length >= max_length:
                return
            for d in range(2, rem + 2):
                for k in self.A.basis(d):
                    if k == self.A.unit_key:
                        continue
                    if d - 1 <= rem:
                        extend(entries + [k], rem - (d - 1), length + 1)

        extend([], degree, 0)
        return out

    def diff_key(self, key):
        """Tensor differential plus multiplication part.

        d[..|a_i|..] = -sum (-1)^{e_{i-1}} [..|da_i|..]
                       + sum (-1)^{e_i} [..|a_i a_{i+1}|..],
        e_i the bar degree of the first i entries.
        """
        A = self.A
        field = self.field
        out = GradedElement(field)
        entries = key.entries
        pre = 0
        for i, a in enumerate(entries):
            da = A.diff_key(a)
            if not da.is_zero():
                sgn = field.one if pre % 2 else field.neg(field.one)
                for k, c in da.terms.items():
                    if A.aug_key(k) != field.zero:
                        continue
                    w = BarWord(entries[:i] + (k,) + entries[i + 1:])
                    out.add_in(GradedElement.single(field, w),
                               field.mul(sgn, c))
            pre += a.degree - 1
        pre = 0
        for i in range(len(entries) - 1):
            pre += entries[i].degree - 1
            sgn = field.neg(field.one) if pre % 2 else field.one
            prod = A.reduced(A.mul_keys(entries[i], entries[i + 1]))
            for k, c in prod.terms.items():
                w = BarWord(entries[:i] + (k,) + entries[i + 2:])
                out.add_in(GradedElement.single(field, w), field.mul(sgn, c))
        return out

    def cop_key(self, key):
        """Deconcatenation coproduct (no signs)."""
        entries = key.entries
        out = []
        for i in range(len(entries) + 1):
            out.append((self.field.one, BarWord(entries[:i]), BarWord(entries[i:])))
        return out


def universal_cochain(barA):
    """t_A : B A -> A picking out length-one words."""
    A = barA.A
    field = barA.field

    def rule(key):
        if key.length == 1:
            return GradedElement.single(field, key.entries[0])
        return GradedElement(field)

    return TwistingCochain(barA, A, LinearMap(field, 1, rule, name="t_A"),
                           name="t_A")


def dgc_map_from_cochain(t, barA=None):
    """The dgc map C -> B A with associated twisting cochain t.

    c maps to sum_k [t(c_(1))|...|t(c_(k))] over the reduced iterated
    coproduct; there are no signs because s^{-1} t has degree zero.
    Requires C cocomplete.
    """
    C = t.C
    if not C.cocomplete:
        raise StructuralError("dgc map from cochain needs a cocomplete source")
    target = barA if barA is not None else BarDgc(t.A)
    field = C.field

    def rule(key):
        out = GradedElement(field)
        if C.counit_key(key) != field.zero:
            out.add_in(GradedElement.single(
                field, target.coaug_key, C.counit_key(key)))
        n = 1
        while True:
            terms = C.iterated_reduced_cop(key, n)
            if not terms:
                break
            for c, keys in terms:
                vals = [t(k) for k in keys]
                out.add_in(target.words_from_elements(vals), c)
            n += 1
        return out

    return LinearMap(field, 0, rule, name=f"B<{t.name}>")


def check_dgc_map(g, C, D, keys):
    """Coproduct and differential compatibility of g: C -> D on basis keys."""
    from .dg import CheckReport
    field = C.field
    rep = CheckReport("dgc map")
    for k in keys:
        e = GradedElement.single(field, k)
        lhs = g.of(C.d(e))
        rhs = D.d(g.of(e))
        ok = lhs == rhs
        if ok:
            left = {}
            for c, k1, k2 in C.cop_key(k):
                for ka, ca in g(k1).terms.items():
                    for kb, cb in g(k2).terms.items():
                        key2 = (ka, kb)
                        v = field.add(left.get(key2, field.zero),
                                      field.mul(c, field.mul(ca, cb)))
                        left[key2] = v
            right = {}
            for kk, cc in g(k).terms.items():
                for c, k1, k2 in D.cop_key(kk):
                    key2 = (k1, k2)
                    v = field.add(right.get(key2, field.zero),
                                  field.mul(cc, c))
                    right[key2] = v
            left = {a: b for a, b in left.items() if b != field.zero}
            right = {a: b for a, b in right.items() if b != field.zero}
            ok = left == right
        rep.record(ok, k)
    return rep


def bar_shuffle(barA, barB, barAB=None):
    """The shuffle dgc map B A (x) B B -> B (A (x) B).

    Returns (map, twisting_cochain, source_dgc).  The associated twisting
    cochain sends [a](x)1 to a(x)1, 1(x)[b] to 1(x)b and all else to 0.
    """
    from .dg import TensorDga
    A, B = barA.A, barB.A
    AB = barAB.A if barAB is not None else TensorDga(A, B)
    target = barAB if barAB is not None else BarDgc(AB)
    source = TensorDgc(barA, barB)
    field = A.field

    def rule(key):
        wa, wb = key.parts
        if wa.length == 1 and wb.length == 0:
            return GradedElement.single(
                field, Tensor((wa.entries[0], B.unit_key)))
        if wa.length == 0 and wb.length == 1:
            return GradedElement.single(
                field, Tensor((A.unit_key, wb.entries[0])))
        return GradedElement(field)

    t = TwistingCochain(source, AB, LinearMap(field, 1, rule, name="t_sh"),
                        name="shuffle cochain")
    return dgc_map_from_cochain(t, target), t, source


class OneSidedBar(TwistedTensor):
    """B(k, A, B) = B A (x)_{f o t_A} B for a dga map or twisting cochain.

    `f` may be a dga morphism given as an element map A -> B (callable on
    keys returning GradedElements) or already a twisting cochain B A -> B.
    """

    def __init__(self, A, B, f=None, twisting=None, barA=None):
        self.barA = barA if barA is not None else BarDgc(A)
        self.base = A
        self.coef = B
        field = A.field
        if twisting is None:
            if f is None:
                raise ValueError("need a dga map or a twisting cochain")

            def rule(key):
                if key.length == 1:
                    return f(GradedElement.single(field, key.entries[0]))
                return GradedElement(field)

            twisting = TwistingCochain(self.barA, B,
                                       LinearMap(field, 1, rule, name="f.t_A"),
                                       name="f.t_A")
        super().__init__(self.barA, B, twisting)

    def element_from(self, entries, bkey, coeff=None):
        return self.element(BarWord(tuple(entries)), bkey, coeff)

    def basis_total(self, degree):
        """All word (x) coefficient keys of the given total degree."""
        out = []
        for bar_deg in range(0, degree + 1):
            try:
                words = self.barA.basis(bar_deg)
            except StructuralError:
                raise
            bdeg = degree - bar_deg
            coefs = list(self.coef.basis(bdeg))
            for w in words:
                for bk in coefs:
                    out.append(self.key(w, bk))
        return out


class TorTable:
    """Bigraded dimension table of a differential torsion product.

    `bidegrees` maps (s, t) with s = -word length <= 0 and t = internal
    degree to a dimension.  `totals` maps total degree s + t to the
    dimension of the homology there.  Cycle representatives (dict key ->
    coeff) are retained per total degree for product sampling.
    """

    def __init__(self, bidegrees, totals, representatives=None, products=None):
        self.bidegrees = dict(bidegrees)
        self.totals = dict(totals)
        self.representatives = representatives or {}
        self.products = products or []

    def poincare(self, upto=None):
        degs = sorted(d for d, v in self.totals.items() if v)
        if upto is not None:
            degs = [d for d in degs if d <= upto]
        bits = []
        for d in degs:
            c = self.totals[d]
            if d == 0:
                bits.append(str(c))
            else:
                term = f"q^{d}" if d != 1 else "q"
                bits.append(term if c == 1 else f"{c}*{term}")
        return "+".join(bits) if bits else "0"

    def to_json(self):
        data = {
            "bidegrees": sorted([s, t, dim] for (s, t), dim in
                                self.bidegrees.items() if dim),
            "poincare": self.poincare(),
            "totals": {str(d): v for d, v in sorted(self.totals.items())},
        }
        if self.products:
            data["products"] = self.products
        return data

    def __repr__(self):
        return f"TorTable({json.dumps(self.to_json()['bidegrees'])})"


def tor_additive(osb, max_total, check_d2=True, d2_bound=None):
    """Bigraded/total dimensions of H(B(k, A, B)) up to total degree.

    Needs basis enumeration for the bar factor (A simply connected) and
    the coefficients.  Kernels at the top degree only need differential
    values (target keys are opaque), so the enumeration stops at
    max_total; d^2 is spot-checked up to `d2_bound` (default: everywhere
    both steps stay computable).
    """
    basis = {}
    for n in range(0, max_total + 1):
        basis[n] = osb.basis_total(n)
    if check_d2:
        top = max_total if d2_bound is None else min(d2_bound + 1, max_total)
        for n in range(0, top):
            for k in basis[n]:
                e = GradedElement.single(osb.field, k)
                if not osb.d(osb.d(e)).is_zero():
                    raise StructuralError(f"d^2 != 0 at {k!r}")
    bigr = {}
    if _is_bidegree_pure(osb, basis):
        # the differential preserves the internal degree t and raises
        # s = -length by one; homology splits into small column complexes,
        # and the total dimensions are the column sums
        columns = {}
        for n, keys in basis.items():
            for k in keys:
                w, b = k.parts
                t = w.internal_degree + b.degree
                columns.setdefault(t, {}).setdefault(-w.length, []).append(k)
        totals = {n: 0 for n in range(0, max_total + 1)}
        reps = {n: [] for n in range(0, max_total + 1)}
        for t, sub in sorted(columns.items()):
            subres = homology(sub, lambda k: osb.diff_key(k).terms, osb.field,
                              check_d2=False, ddeg=1)
            for s, d in subres.dims.items():
                if s + t <= max_total:
                    if d:
                        bigr[(s, t)] = d
                    totals[s + t] += d
                    reps[s + t].extend(subres.representatives.get(s, []))
        return TorTable(bigr, totals, representatives=reps)
    res = homology(basis, lambda k: osb.diff_key(k).terms, osb.field,
                   check_d2=False, ddeg=1)
    totals = {n: res.dims[n] for n in range(0, max_total + 1)}
    reps = {n: res.representatives.get(n, []) for n in range(0, max_total + 1)}
    return TorTable(bigr, totals, representatives=reps)


def _is_bidegree_pure(osb, basis):
    """True when d preserves internal degree (zero differentials upstream)."""
    for keys in basis.values():
        for k in keys:
            w, b = k.parts
            t0 = w.internal_degree + b.degree
            for k2 in osb.diff_key(k).terms:
                w2, b2 = k2.parts
                if w2.internal_degree + b2.degree != t0:
                    return False
    return True


class HorizonError(Exception):
    """Requested Tor degree not determined by the computed truncation."""
