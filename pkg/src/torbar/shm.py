"""Strongly homotopy multiplicative maps as twisting families.

A twisting family f_(n): A^{(x)n} -> B of degree 1-n is the component form
of a twisting cochain B A -> B.  Families are the primary representation;
bar-level dgc maps are derived views, and composition is performed at the
cochain level (g o f = g . Bf), which keeps all signs inside two audited
primitives.  The displayed component formulas are implemented separately
and used as cross-checks in the test suite.
"""
from .graded import GradedElement, LinearMap
from .dg import CheckReport, TwistingCochain, HomAlgebra
from .bar import BarDgc, BarWord, dgc_map_from_cochain


def _prefix_parities(args):
    """Partial sums of argument degrees, pre[i] = |a_1| + ... + |a_i|."""
    pre = [0]
    for a in args:
        d = a.degree()
        pre.append(pre[-1] + (d or 0))
    return pre


def suspension_sign_exponent(keys):
    """Desuspension sign for assembling [a_1|...|a_n] from values.

    We use the plain protocol sum (n-i) deg a_i: each desuspension crosses
    the not-yet-desuspended entries to its left.  With the standard tensor
    bar differential and the unsigned deconcatenation coproduct this is
    the unique convention under which the displayed twisting-family
    identities hold; it matches the brace dictionary of the hga module and
    differs from the alternative sum (n-i)(deg a_i - 1) by the global
    word-length twist n(n-1)/2.
    """
    n = len(keys)
    return sum((n - 1 - i) * keys[i].degree for i in range(n))


def _sign(field, exponent):
    return field.neg(field.one) if exponent % 2 else field.one


class TwistingFamily:
    """Multilinear components f_(n): A^{(x)n} -> B, degree 1 - n.

    `component(n, args)` consumes a list of homogeneous GradedElements.
    Normalization (vanishing on unit arguments for n >= 2, f_(1)(1) = 1)
    is the component implementations' responsibility; the constructors
    below guarantee it.
    """

    def __init__(self, A, B, component, name="f"):
        self.A = A
        self.B = B
        self.name = name
        self._component = component

    def __call__(self, n, args):
        if n == 0:
            return self.B.zero()
        if any(a.is_zero() for a in args):
            return self.B.zero()
        return self._component(n, args)

    def degree(self, n):
        return 1 - n

    @classmethod
    def strict(cls, A, B, fmap, name="f"):
        """The strict family of a dga morphism (element map)."""

        def component(n, args):
            if n != 1:
                return B.zero()
            return fmap(args[0])

        return cls(A, B, component, name=name)

    @classmethod
    def from_cochain(cls, barA, B, t, name=None):
        """Family of a twisting cochain B A -> B via the standard signs."""
        A = barA.A
        field = A.field

        def component(n, args):
            out = B.zero()
            if n == 1:
                s = A.aug(args[0])
                if s != field.zero:
                    out.add_in(B.one(), s)
            # sign eps = sum (n-k)(deg a_k - 1) per pure-key expansion
            combos = [((), field.one)]
            for a in args:
                red = A.reduced(a)
                nxt = []
                for keys, c in combos:
                    for k, c2 in red.terms.items():
                        nxt.append((keys + (k,), field.mul(c, c2)))
                combos = nxt
                if not combos:
                    break
            for keys, c in combos:
                eps = suspension_sign_exponent(keys)
                out.add_in(t(BarWord(keys)), field.mul(c, _sign(field, eps)))
            return out

        return cls(A, B, component, name=name or t.name)

    def to_cochain(self, barA):
        """The twisting cochain B A -> B of this family."""
        field = self.A.field

        def rule(key):
            n = key.length
            if n == 0:
                return self.B.zero()
            eps = suspension_sign_exponent(key.entries)
            args = [GradedElement.single(field, k) for k in key.entries]
            return self(n, args).scale(_sign(field, eps))

        return TwistingCochain(barA, self.B, LinearMap(field, 1, rule),
                               name=self.name)

    def bar_map(self, barA=None, barB=None):
        """The dgc map B A -> B B induced by the family."""
        barA = barA or BarDgc(self.A)
        barB = barB or BarDgc(self.B)
        return dgc_map_from_cochain(self.to_cochain(barA), barB)

    def is_strict_under(self, oracle, sampler, max_n=4):
        """b-strictness certificate: q f_(n) = 0 for 2 <= n <= max_n."""
        rep = CheckReport(f"{self.name} strict under {oracle.name}")
        for n in range(2, max_n + 1):
            for args in sampler(n):
                rep.record(oracle.is_zero(self(n, args)), (n, args))
        return rep


class TwistingHomotopyFamily:
    """Components h_(n): A^{(x)n} -> B of degree -n with h_(0) = eta_B,
    joining the twisting families `source` (f) and `target` (g)."""

    def __init__(self, A, B, component, source, target, name="h"):
        self.A = A
        self.B = B
        self.name = name
        self.source = source
        self.target = target
        self._component = component

    def __call__(self, n, args):
        if n == 0:
            return self.B.one()
        if any(a.is_zero() for a in args):
            return self.B.zero()
        return self._component(n, args)

    def degree(self, n):
        return -n

    @classmethod
    def trivial(cls, family):
        """The unit homotopy from a family to itself."""

        def component(n, args):
            return family.B.zero()

        return cls(family.A, family.B, component, family, family, name="1")

    @classmethod
    def from_cochain(cls, barA, B, h_map, source, target, name="h"):
        """Homotopy family of a twisting homotopy cochain h: B A -> B.

        h_(n) = h restricted to length-n words (degree -n); the sign
        bookkeeping matches the family case with shifted degree.
        """
        A = barA.A
        field = A.field

        def component(n, args):
            out = B.zero()
            combos = [((), field.one)]
            for a in args:
                red = A.reduced(a)
                nxt = []
                for keys, c in combos:
                    for k, c2 in red.terms.items():
                        nxt.append((keys + (k,), field.mul(c, c2)))
                combos = nxt
            for keys, c in combos:
                eps = suspension_sign_exponent(keys)
                out.add_in(h_map(BarWord(keys)), field.mul(c, _sign(field, eps)))
            return out

        return cls(A, B, component, source, target, name=name)

    def to_cochain(self, barA):
        field = self.A.field

        def rule(key):
            n = key.length
            if n == 0:
                return self.B.one()
            eps = suspension_sign_exponent(key.entries)
            args = [GradedElement.single(field, k) for k in key.entries]
            return self(n, args).scale(_sign(field, eps))

        from .dg import TwistingHomotopy
        return TwistingHomotopy(barA, self.B, LinearMap(field, 0, rule),
                                self.source.to_cochain(barA),
                                self.target.to_cochain(barA), name=self.name)

    def bar_homotopy(self, barA=None, barB=None):
        """Coalgebra homotopy H: B A -> B B with B(source) ~ B(target).

        H(c) = sum of words [f(c_1)|..|h-slot(c_i)|..|g(c_k)] with the sign
        (-1)^{|c_1|+...+|c_{i-1}|} of the degree -1 slot.
        """
        barA = barA or BarDgc(self.A)
        barB = barB or BarDgc(self.B)
        field = self.A.field
        tf = self.source.to_cochain(barA)
        tg = self.target.to_cochain(barA)
        h = self.to_cochain(barA).map
        unit = HomAlgebra(barA, self.B).unit()
        hbar = h - unit

        def rule(key):
            out = GradedElement(field)
            n = 1
            while True:
                terms = barA.iterated_reduced_cop(key, n)
                if not terms:
                    break
                for c, keys in terms:
                    pre = 0
                    for i in range(len(keys)):
                        vals = [tf(k) for k in keys[:i]]
                        vals.append(hbar(keys[i]))
                        vals.extend(tg(k) for k in keys[i + 1:])
                        w = barB.words_from_elements(vals)
                        # slot sign (-1)^{pre+1}: fixed by the identity
                        # d H + H d = B(source) - B(target)
                        out.add_in(w, field.mul(c, _sign(field, pre + 1)))
                        pre += keys[i].degree
                n += 1
            return out

        return LinearMap(field, -1, rule, name=f"B<{self.name}>")

    def is_trivial_under(self, oracle, sampler, max_n=4):
        """b-triviality: h_(n) = 0 in the quotient for n >= 1."""
        rep = CheckReport(f"{self.name} trivial under {oracle.name}")
        for n in range(1, max_n + 1):
            for args in sampler(n):
                rep.record(oracle.is_zero(self(n, args)), (n, args))
        return rep

    def cup(self, other, name=None):
        """h u k: source ~ other.target through the convolution product."""
        barA = BarDgc(self.A)
        hom = HomAlgebra(barA, self.B)
        rule = hom.cup(self.to_cochain(barA).map, other.to_cochain(barA).map)
        return TwistingHomotopyFamily.from_cochain(
            barA, self.B, rule, self.source, other.target,
            name=name or f"{self.name}u{other.name}")

    def inverse(self, name=None):
        """The geometric-series inverse, a homotopy target ~ source."""
        barA = BarDgc(self.A)
        hom = HomAlgebra(barA, self.B)
        inv = hom.geometric_inverse(self.to_cochain(barA).map)
        return TwistingHomotopyFamily.from_cochain(
            barA, self.B, inv, self.target, self.source,
            name=name or f"{self.name}^-1")


# ---------------------------------------------------------------------------
# Axiom checkers (the Koszul-expanded displayed identities)
# ---------------------------------------------------------------------------

def family_defect(f, args):
    """d(f_(n))(a) minus its prescribed value; zero iff the axiom holds."""
    A, B = f.A, f.B
    field = A.field
    n = len(args)
    pre = _prefix_parities(args)
    lhs = B.d(f(n, args))
    for i in range(n):
        da = A.d(args[i])
        if da.is_zero():
            continue
        newargs = args[:i] + [da] + args[i + 1:]
        # -(-1)^{|f_(n)|} (-1)^{pre} = -(-1)^{n+1+pre}
        lhs.add_in(f(n, newargs),
                   field.mul(_sign(field, n + 1 + pre[i]),
                             field.neg(field.one)))
    rhs = B.zero()
    for k in range(1, n):
        s1 = _sign(field, k + (n - k - 1) * pre[k])
        rhs.add_in(B.mul(f(k, args[:k]), f(n - k, args[k:])), s1)
        merged = args[:k - 1] + [A.mul(args[k - 1], args[k])] + args[k + 1:]
        rhs.add_in(f(n - 1, merged), _sign(field, k + 1))
    return lhs - rhs


def check_family(f, sampler, ns=(1, 2, 3, 4), name=None):
    rep = CheckReport(name or f"family axiom for {f.name}")
    for n in ns:
        for args in sampler(n):
            rep.record(family_defect(f, list(args)).is_zero(), (n, args))
    return rep


def homotopy_family_defect(h, args):
    """Defect of the twisting-homotopy-family identity at the given args."""
    A, B = h.A, h.B
    f, g = h.source, h.target
    field = A.field
    n = len(args)
    pre = _prefix_parities(args)
    lhs = B.d(h(n, args))
    for i in range(n):
        da = A.d(args[i])
        if da.is_zero():
            continue
        newargs = args[:i] + [da] + args[i + 1:]
        lhs.add_in(h(n, newargs), field.mul(_sign(field, n + pre[i]),
                                            field.neg(field.one)))
    rhs = B.zero()
    for k in range(1, n):
        merged = args[:k - 1] + [A.mul(args[k - 1], args[k])] + args[k + 1:]
        rhs.add_in(h(n - 1, merged), _sign(field, k))
    for k in range(0, n + 1):
        if k > 0:
            fk = f(k, args[:k])
            if not fk.is_zero():
                rhs.add_in(B.mul(fk, h(n - k, args[k:])),
                           _sign(field, (n - k) * pre[k]))
        if n - k > 0:
            hk = h(k, args[:k])
            if not hk.is_zero():
                gk = g(n - k, args[k:])
                if not gk.is_zero():
                    rhs.add_in(B.mul(hk, gk),
                               field.mul(_sign(field, k + (n - k + 1) * pre[k]),
                                         field.neg(field.one)))
    return lhs - rhs


def check_homotopy_family(h, sampler, ns=(1, 2, 3, 4), name=None):
    rep = CheckReport(name or f"homotopy family axiom for {h.name}")
    for n in ns:
        for args in sampler(n):
            rep.record(homotopy_family_defect(h, list(args)).is_zero(),
                       (n, args))
    return rep


# ---------------------------------------------------------------------------
# Composition
# ---------------------------------------------------------------------------

def compose(g, f, name=None):
    """g o f as a twisting family, computed as the cochain g . B f.

    The target of f and the source of g must present the same algebra
    (structurally; distinct equal instances are accepted)."""
    if f.B.field != g.A.field:
        raise ValueError("compose: field mismatch between f and g")
    barA = BarDgc(f.A)
    barB = BarDgc(f.B)
    bf = f.bar_map(barA, barB)
    tg = g.to_cochain(barB)
    t = TwistingCochain(barA, g.B, tg.map @ bf, name=name or f"{g.name}o{f.name}")
    return TwistingFamily.from_cochain(barA, g.B, t, name=t.name)


def compose_component_formula(g, f, n, args):
    """The displayed component expansion of (g o f)_(n), for cross-checks:
    sum over decompositions n = i_1+...+i_k of
    (-1)^{eps} g_(k)(f_(i_1)(...),...,f_(i_k)(...)),
    eps = sum (k-s)(i_s - 1) plus the Koszul application signs."""
    field = f.A.field
    out = g.B.zero()
    pre = _prefix_parities(args)

    def decompositions(total, parts=None):
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in decompositions(total - first):
                yield (first,) + rest

    for comp in decompositions(n):
        k = len(comp)
        eps = sum((k - (s + 1)) * (comp[s] - 1) for s in range(k))
        appl = 0
        pos = 0
        vals = []
        for s in range(k):
            i_s = comp[s]
            appl += (1 - i_s) * pre[pos]
            vals.append(f(i_s, args[pos:pos + i_s]))
            pos += i_s
        out.add_in(g(k, vals), _sign(field, eps + appl))
    return out


def compose_homotopy_map(h, m, name=None):
    """h o m for an shm homotopy h and an shm map m (precomposition)."""
    barA = BarDgc(m.A)
    barB = BarDgc(m.B)
    bm = m.bar_map(barA, barB)
    hc = h.to_cochain(barB)
    rule = hc.map @ bm
    return TwistingHomotopyFamily.from_cochain(
        barA, h.B, rule, compose(h.source, m), compose(h.target, m),
        name=name or f"{h.name}o{m.name}")


def compose_map_homotopy(m, h, name=None):
    """m o h for an shm map m and an shm homotopy h (postcomposition).

    The twisting homotopy of a coalgebra homotopy K is unit - t o K in our
    conventions (pinned by the d H + H d identity test).
    """
    barA = BarDgc(h.A)
    barB = BarDgc(h.B)
    H = h.bar_homotopy(barA, barB)
    tm = m.to_cochain(barB)
    rule = HomAlgebra(barA, m.B).unit() - tm.map @ H
    return TwistingHomotopyFamily.from_cochain(
        barA, m.B, rule, compose(m, h.source), compose(m, h.target),
        name=name or f"{m.name}o{h.name}")


# ---------------------------------------------------------------------------
# Tensor products
# ---------------------------------------------------------------------------

def _expand_pure_pairs(field, args):
    """Multilinear expansion of A (x) B elements into pure tensor slots."""
    combos = [((), field.one)]
    for x in args:
        nxt = []
        for slots, c in combos:
            for k, c2 in x.terms.items():
                ka, kb = k.parts
                nxt.append((slots + ((ka, kb),), field.mul(c, c2)))
        combos = nxt
        if not combos:
            break
    return combos


def tensor_with_strict(f, gmap, T_source, T_target, side="right", name=None):
    """f (x) g for a (homotopy) family f and a strict dga map g.

    side="right": (f (x) g)_(n)(a (x) b) = +- f_(n)(a_.) (x) g(mu^[n](b_.));
    side="left": the mirror g mu^[n](a_.) (x) f_(n)(b_.).  Works for both
    twisting families and twisting homotopy families (the Koszul signs use
    f.degree(n)).
    """
    field = T_source.field

    def component(n, args):
        out = T_target.zero()
        for slots, c in _expand_pure_pairs(field, args):
            a_elems = [GradedElement.single(field, ka) for ka, _ in slots]
            b_elems = [GradedElement.single(field, kb) for _, kb in slots]
            # un-interleaving sign: sum_{i<j} |b_i||a_j|
            e = 0
            for i in range(n):
                for j in range(i + 1, n):
                    e += slots[i][1].degree * slots[j][0].degree
            if side == "right":
                fa = f(n, a_elems)
                gb = gmap(T_source.B.mul_many(b_elems))
                out.add_in(T_target.pair(fa, gb), field.mul(c, _sign(field, e)))
            else:
                ga = gmap(T_source.A.mul_many(a_elems))
                fb = f(n, b_elems)
                # f_(n) applied past the whole a-block
                e += f.degree(n) * sum(ka.degree for ka, _ in slots)
                out.add_in(T_target.pair(ga, fb), field.mul(c, _sign(field, e)))
        return out

    if isinstance(f, TwistingHomotopyFamily):
        src = tensor_with_strict(f.source, gmap, T_source, T_target, side)
        tgt = tensor_with_strict(f.target, gmap, T_source, T_target, side)
        return TwistingHomotopyFamily(T_source, T_target, component, src, tgt,
                                      name=name or f"{f.name}(x)strict")
    return TwistingFamily(T_source, T_target, component,
                          name=name or f"{f.name}(x)strict")


def tensor_shm(f, g, T_source, T_target, middle=None, name=None):
    """f (x) g := (f (x) 1) o (1 (x) g) for twisting families f, g."""
    from .dg import TensorDga
    mid = middle or TensorDga(f.A, g.B)
    left = tensor_with_strict(f, lambda x: x, mid, T_target, side="right",
                              name=f"{f.name}(x)1")
    right = tensor_with_strict(g, lambda x: x, T_source, mid, side="left",
                               name=f"1(x){g.name}")
    return compose(left, right, name=name or f"{f.name}(x){g.name}")


def tensor_shm_other_order(f, g, T_source, T_target, middle=None):
    """(1 (x) g) o (f (x) 1), the other composition."""
    from .dg import TensorDga
    mid = middle or TensorDga(f.B, g.A)
    left = tensor_with_strict(g, lambda x: x, mid, T_target, side="left")
    right = tensor_with_strict(f, lambda x: x, T_source, mid, side="right")
    return compose(left, right)


def tensor_homotopy(f, g, T_source, T_target, name=None):
    """The explicit homotopy from (1 (x) g) o (f (x) 1) to (f (x) 1) o (1 (x) g).

    h_(0) = eta (x) eta and for n >= 1
      h_(n)(a (x) b) = sum over decompositions i_1+..+i_k + j_1+..+j_l = n
      of (-1)^eps F (x) G, with
      F = mu^[k](f_(i_1)(a),...,f_(i_{k-1})(a),
                 f_(i_k+l)(a, mu^[j_1](a),...,mu^[j_l](a))),
      G = mu^[l](g_(k+j_1)(mu^[i_1](b),...,mu^[i_k](b), b), g_(j_2)(b),...),
      eps = sum_s s(i_s - 1) + sum_t (l-t)(j_t - 1) + k(l-1) + 1
    plus the mechanical Koszul signs.
    """
    A, Ap = f.A, f.B
    B, Bp = g.A, g.B
    field = A.field

    def component(n, args):
        out = T_target.zero()
        for slots, cc in _expand_pure_pairs(field, args):
            adegs = [ka.degree for ka, _ in slots]
            bdegs = [kb.degree for _, kb in slots]
            a_el = [GradedElement.single(field, ka) for ka, _ in slots]
            b_el = [GradedElement.single(field, kb) for _, kb in slots]
            uninterleave = 0
            for i in range(n):
                for j in range(i + 1, n):
                    uninterleave += bdegs[i] * adegs[j]
            for k, l, comp_i, comp_j in _hn_index_set(n):
                eps = sum((s + 1) * (comp_i[s] - 1) for s in range(k)) \
                    + sum((l - (t + 1)) * (comp_j[t] - 1) for t in range(l)) \
                    + k * (l - 1) + 1
                # F side -----------------------------------------------
                pos = 0
                fvals = []
                appl_f = 0
                apre = [0]
                for d in adegs:
                    apre.append(apre[-1] + d)
                for s in range(k - 1):
                    i_s = comp_i[s]
                    appl_f += (1 - i_s) * apre[pos]
                    fvals.append(f(i_s, a_el[pos:pos + i_s]))
                    pos += i_s
                i_k = comp_i[k - 1]
                appl_f += (1 - i_k - l) * apre[pos]
                last_args = a_el[pos:pos + i_k]
                pos += i_k
                for t in range(l):
                    j_t = comp_j[t]
                    last_args.append(A.mul_many(a_el[pos:pos + j_t]))
                    pos += j_t
                fvals.append(f(i_k + l, last_args))
                F = Ap.mul_many(fvals)
                if F.is_zero():
                    continue
                # G side -----------------------------------------------
                bpre = [0]
                for d in bdegs:
                    bpre.append(bpre[-1] + d)
                pos = 0
                gargs = []
                for s in range(k):
                    i_s = comp_i[s]
                    gargs.append(B.mul_many(b_el[pos:pos + i_s]))
                    pos += i_s
                j_1 = comp_j[0]
                gargs.extend(b_el[pos:pos + j_1])
                appl_g = 0  # first g-map is leftmost on the b sequence
                gvals = [g(k + j_1, gargs)]
                pos += j_1
                for t in range(1, l):
                    j_t = comp_j[t]
                    appl_g += (1 - j_t) * bpre[pos]
                    gvals.append(g(j_t, b_el[pos:pos + j_t]))
                    pos += j_t
                G = Bp.mul_many(gvals)
                if G.is_zero():
                    continue
                # (F_map (x) G_map)(a-block (x) b-block)
                gmap_parity = (l + k + sum(comp_j)) % 2
                cross = gmap_parity * apre[-1]
                sign = _sign(field, eps + uninterleave + appl_f + appl_g + cross)
                out.add_in(T_target.pair(F, G), field.mul(cc, sign))
        return out

    source = tensor_shm_other_order(f, g, T_source, T_target)
    target = tensor_shm(f, g, T_source, T_target)
    return TwistingHomotopyFamily(T_source, T_target, component,
                                  source, target,
                                  name=name or f"h({f.name},{g.name})")


def _hn_index_set(n):
    """All (k, l, (i_1..i_k), (j_1..j_l)) with sum i + sum j = n, parts >= 1."""
    out = []

    def comps(total):
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in comps(total - first):
                yield (first,) + rest

    for ci in comps(n):
        for split in range(1, len(ci)):
            out.append((split, len(ci) - split, ci[:split], ci[split:]))
    return out


def hn_summand_count(n):
    """Number of summands of h_(n); equals (n-1) 2^{n-2} for n >= 2."""
    return len(_hn_index_set(n))


# ---------------------------------------------------------------------------
# Gamma: transporting one-sided bar constructions along shm maps
# ---------------------------------------------------------------------------

def compose_family_cochain(g, t, barA, name=None):
    """The twisting cochain g o t: B A -> B' for a family g: B => B' and a
    twisting cochain t: B A -> B (composition through B t)."""
    barB = BarDgc(g.A)
    bt = dgc_map_from_cochain(t, barB)
    tg = g.to_cochain(barB)
    return TwistingCochain(barA, g.B, tg.map @ bt,
                           name=name or f"{g.name}o{t.name}")


def gamma(g, osb_source, push=None):
    """Gamma_g: B A (x)_t B -> B A (x)_{g o t} B' for an shm map g: B => B'.

    Gamma([a_1|..|a_k] (x) b) = sum_m [a_1|..|a_m] (x)
        frak_g([a_{m+1}|..|a_k] (x) b),
    where frak_g pushes word entries into B (via `push`, the structure map
    of the twisted tensor; identity by default) and feeds the word extended
    by b into the family of g.  Returns (map, target one-sided bar).
    """
    from .bar import OneSidedBar
    field = osb_source.field
    barA = osb_source.barA
    push = push or (lambda x: x)
    t_target = compose_family_cochain(g, osb_source.t, barA)
    osb_target = OneSidedBar(osb_source.base, g.B, twisting=t_target,
                             barA=barA)

    def frak_g(entries, bkey):
        # (1^{(x)k} (x) s^{-1}) then the family of g; the desuspension
        # passes the word, and entries enter through `push`.
        wdeg = sum(e.degree - 1 for e in entries)
        n = len(entries) + 1
        # suspension protocol sign for the extended word [entries|b]; the
        # final slot contributes (n - n)|b| = 0
        eps = sum((n - 1 - i) * entries[i].degree
                  for i in range(len(entries)))
        args = [push(GradedElement.single(field, e)) for e in entries]
        args.append(GradedElement.single(field, bkey))
        return g(n, args).scale(_sign(field, wdeg + eps))

    def rule(key):
        w, bkey = key.parts
        out = GradedElement(field)
        k = w.length
        for m in range(0, k + 1):
            head = BarWord(w.entries[:m])
            val = frak_g(w.entries[m:], bkey)
            for kb, cb in val.terms.items():
                out.add_in(GradedElement.single(
                    field, osb_target.key(head, kb)), cb)
        return out

    return LinearMap(field, 0, rule, name=f"Gamma_{g.name}"), osb_target


def check_chain_map(phi, source_d, target_d, keys, name="chain map"):
    rep = CheckReport(name)
    for k in keys:
        e = GradedElement.single(phi.field, k)
        rep.record(phi.of(source_d(e)) == target_d(phi.of(e)), k)
    return rep
