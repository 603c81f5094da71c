"""Differential graded algebras and coalgebras over a graded basis.

Algebras and coalgebras are presented by structure maps on basis keys.
`ddeg` is the degree of the differential: +1 for cochain-type objects,
-1 for chain-type ones (the Koszul sign rule only sees parities, so all
machinery below is direction-agnostic).

The module also provides the convolution algebra Hom(C, A) with its cup
product, twisting cochains and their homotopies, twisted tensor products,
homotopy inverses via the geometric series, and quotient oracles used to
certify ideal-triviality.
"""
import random

from .graded import GradedElement, LinearMap, Tensor
from .linalg import StructuralError


class Dga:
    """Augmented dga on a basis adapted to the augmentation.

    Subclasses provide: `unit_key`, `diff_key`, `mul_keys`, `aug_key`,
    and (when enumerable) `basis(degree)`.
    """

    ddeg = 1
    commutative = False
    simply_connected = False

    def __init__(self, field):
        self.field = field

    def basis(self, degree):
        raise NotImplementedError(f"{type(self).__name__} has no basis enumerator")

    def diff_key(self, key):
        raise NotImplementedError

    def mul_keys(self, k1, k2):
        raise NotImplementedError

    def aug_key(self, key):
        return self.field.one if key == self.unit_key else self.field.zero

    # -- derived element operations -------------------------------------
    def zero(self):
        return GradedElement(self.field)

    def one(self):
        return GradedElement.single(self.field, self.unit_key)

    def element(self, key, coeff=None):
        return GradedElement.single(self.field, key, coeff)

    def d(self, x):
        return x.map_keys(self.diff_key)

    def mul(self, x, y):
        out = GradedElement(self.field)
        for k1, c1 in x.terms.items():
            for k2, c2 in y.terms.items():
                out.add_in(self.mul_keys(k1, k2), self.field.mul(c1, c2))
        return out

    def mul_many(self, xs):
        if not xs:
            return self.one()
        out = xs[0]
        for x in xs[1:]:
            out = self.mul(out, x)
        return out

    def aug(self, x):
        s = self.field.zero
        for k, c in x.terms.items():
            s = self.field.add(s, self.field.mul(c, self.aug_key(k)))
        return s

    def reduced(self, x):
        """x - unit * aug(x), the augmentation-ideal part."""
        s = self.aug(x)
        if s == self.field.zero:
            return x
        return x - self.one().scale(s)

    def random_element(self, degree, rng, terms=3, coeffs=(-2, -1, 1, 2)):
        keys = list(self.basis(degree))
        if not keys:
            return self.zero()
        out = GradedElement(self.field)
        for _ in range(min(terms, len(keys))):
            k = rng.choice(keys)
            c = self.field.of(rng.choice(coeffs))
            out.add_in(GradedElement.single(self.field, k, c))
        return out

    def check_axioms(self, degrees, rng, samples=10):
        """Sampled d^2 = 0, Leibniz, associativity, unit and augmentation."""
        f = self.field
        for _ in range(samples):
            p = rng.choice(degrees)
            q = rng.choice(degrees)
            x = self.random_element(p, rng)
            y = self.random_element(q, rng)
            if not self.d(self.d(x)).is_zero():
                raise StructuralError(f"d^2 != 0 at {x!r}")
            lhs = self.d(self.mul(x, y))
            rhs = self.mul(self.d(x), y)
            sgn = f.neg(f.one) if p % 2 else f.one
            rhs = rhs + self.mul(x, self.d(y)).scale(sgn)
            if lhs != rhs:
                raise StructuralError(f"Leibniz fails at {x!r}, {y!r}")
            z = self.random_element(rng.choice(degrees), rng)
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise StructuralError("associativity fails")
            if self.mul(x, self.one()) != x or self.mul(self.one(), x) != x:
                raise StructuralError("unit fails")
            if self.aug(self.mul(x, y)) != f.mul(self.aug(x), self.aug(y)):
                raise StructuralError("augmentation not multiplicative")
        return True


class Dgc:
    """Coaugmented dgc on a basis adapted to the coaugmentation.

    Subclasses provide `coaug_key`, `diff_key`, `cop_key` (a list of
    (coeff, k1, k2) triples) and optionally `basis(degree)`.
    """

    ddeg = 1
    cocomplete = True

    def __init__(self, field):
        self.field = field

    def basis(self, degree):
        raise NotImplementedError(f"{type(self).__name__} has no basis enumerator")

    def diff_key(self, key):
        raise NotImplementedError

    def cop_key(self, key):
        raise NotImplementedError

    def counit_key(self, key):
        return self.field.one if key == self.coaug_key else self.field.zero

    def zero(self):
        return GradedElement(self.field)

    def one(self):
        return GradedElement.single(self.field, self.coaug_key)

    def d(self, x):
        return x.map_keys(self.diff_key)

    def counit(self, x):
        s = self.field.zero
        for k, c in x.terms.items():
            s = self.field.add(s, self.field.mul(c, self.counit_key(k)))
        return s

    def cop_reduced_key(self, key):
        """(1 - eta eps)^{x2} Delta, on a coaugmentation-adapted basis."""
        return [(c, k1, k2) for (c, k1, k2) in self.cop_key(key)
                if k1 != self.coaug_key and k2 != self.coaug_key]

    def iterated_reduced_cop(self, key, n):
        """List of (coeff, (k_1,...,k_n)) for the reduced Delta^[n]."""
        if n == 0:
            return [] if key != self.coaug_key else [(self.field.one, ())]
        out = [(self.field.one, (key,))] if key != self.coaug_key else []
        for _ in range(n - 1):
            nxt = []
            for c, keys in out:
                # expand the last slot (coassociativity makes the slot choice moot)
                for c2, k1, k2 in self.cop_reduced_key(keys[-1]):
                    nxt.append((self.field.mul(c, c2), keys[:-1] + (k1, k2)))
            out = nxt
            if not out:
                break
        return out

    def nilpotence_degree(self, key, bound=60):
        """Least n with reduced Delta^[n](key) = 0 (cocompleteness witness)."""
        for n in range(1, bound + 1):
            if not self.iterated_reduced_cop(key, n):
                return n
        raise StructuralError(f"key {key!r} not conilpotent up to {bound}")

    def check_axioms(self, keys):
        """Coassociativity and counit law on the given basis keys."""
        f = self.field
        for k in keys:
            left = {}
            right = {}
            for c, k1, k2 in self.cop_key(k):
                for c2, k11, k12 in self.cop_key(k1):
                    key = (k11, k12, k2)
                    left[key] = f.add(left.get(key, f.zero), f.mul(c, c2))
                for c2, k21, k22 in self.cop_key(k2):
                    key = (k1, k21, k22)
                    right[key] = f.add(right.get(key, f.zero), f.mul(c, c2))
            left = {k_: v for k_, v in left.items() if v != f.zero}
            right = {k_: v for k_, v in right.items() if v != f.zero}
            if left != right:
                raise StructuralError(f"coassociativity fails at {k!r}")
            ce = {}
            for c, k1, k2 in self.cop_key(k):
                c2 = f.mul(c, self.counit_key(k1))
                if c2 != f.zero:
                    ce[k2] = f.add(ce.get(k2, f.zero), c2)
            ce = {k_: v for k_, v in ce.items() if v != f.zero}
            if ce != {k: f.one}:
                raise StructuralError(f"counit law fails at {k!r}")
        return True


# ---------------------------------------------------------------------------
# Hom(C, A) as a dga
# ---------------------------------------------------------------------------

class HomAlgebra:
    """The convolution dga Hom(C, A) for a dgc C and dga A."""

    def __init__(self, C, A):
        if C.field != A.field:
            raise ValueError("field mismatch")
        self.C = C
        self.A = A
        self.field = C.field

    def unit(self):
        """eta_A eps_C."""
        A, C = self.A, self.C
        return LinearMap(self.field, 0,
                         lambda k: A.one().scale(C.counit_key(k)), name="1")

    def cup(self, f, g):
        """f u g = mu_A (f (x) g) Delta_C."""
        A, C, field = self.A, self.C, self.field
        godd = g.degree % 2

        def rule(key):
            out = GradedElement(field)
            for c, k1, k2 in C.cop_key(key):
                sign = -1 if (godd and k1.degree % 2) else 1
                fa = f(k1)
                if fa.is_zero():
                    continue
                gb = g(k2)
                if gb.is_zero():
                    continue
                coeff = c if sign > 0 else field.neg(c)
                out.add_in(A.mul(fa, gb), coeff)
            return out

        return LinearMap(self.field, f.degree + g.degree, rule)

    def cup_many(self, fs):
        out = fs[0]
        for f in fs[1:]:
            out = self.cup(out, f)
        return out

    def d(self, f):
        """d(f) = d_A f - (-1)^{|f|} f d_C."""
        A, C, field = self.A, self.C, self.field
        sgn = field.neg(field.one) if f.degree % 2 == 0 else field.one

        def rule(key):
            out = A.d(f(key))
            out.add_in(f.of(C.d(GradedElement.single(field, key))), sgn)
            return out

        return LinearMap(self.field, f.degree + self.A.ddeg, rule)

    def geometric_inverse(self, h, max_terms=60):
        """Inverse of h = 1 + k in Hom_0: sum_n (1 - h)^{u n}.

        Terminates degreewise because C is cocomplete; `max_terms` guards
        against non-conilpotent input.
        """
        if not self.C.cocomplete:
            raise StructuralError("homotopy inverse needs a cocomplete dgc")
        A, C, field = self.A, self.C, self.field
        unit = self.unit()

        def k_map(key):
            val = h(key) - unit(key)
            return val

        def rule(key):
            # sum over n of (-1)^n k^{u n}(key); k has even degree so there
            # are no Koszul signs inside the cup powers.  Copy the unit value:
            # memoized map results must never be mutated.
            out = GradedElement(field)
            out.add_in(unit(key))
            sign = field.neg(field.one)
            for n in range(1, max_terms + 1):
                terms = C.iterated_reduced_cop(key, n)
                if not terms:
                    return out
                acc = GradedElement(field)
                for c, keys in terms:
                    vals = [k_map(k2) for k2 in keys]
                    prod = A.mul_many(vals)
                    acc.add_in(prod, c)
                out.add_in(acc, sign)
                sign = field.neg(sign)
            raise StructuralError(f"geometric series did not terminate at {key!r}")

        return LinearMap(self.field, 0, rule, name="h^-1")


# ---------------------------------------------------------------------------
# Twisting cochains and homotopies
# ---------------------------------------------------------------------------

class CheckReport:
    def __init__(self, name):
        self.name = name
        self.failures = []
        self.checked = 0

    @property
    def ok(self):
        return not self.failures

    def record(self, ok, witness=None):
        self.checked += 1
        if not ok:
            self.failures.append(witness)

    def __repr__(self):
        status = "ok" if self.ok else f"FAILED ({len(self.failures)})"
        return f"<check {self.name}: {status}, {self.checked} cases>"

    def raise_on_failure(self):
        if not self.ok:
            raise StructuralError(f"{self.name}: first failure {self.failures[0]!r}")
        return self


class TwistingCochain:
    """t in Hom(C, A) of degree ddeg with d(t) = t u t and normalizations."""

    def __init__(self, C, A, rule, name="t"):
        if C.ddeg != A.ddeg:
            raise ValueError("twisting cochains need matching differentials")
        self.C = C
        self.A = A
        self.name = name
        self.map = rule if isinstance(rule, LinearMap) else \
            LinearMap(C.field, C.ddeg, rule, name=name)
        if self.map.degree != C.ddeg:
            raise ValueError(f"twisting cochain must have degree {C.ddeg}")

    def __call__(self, key):
        return self.map(key)

    def of(self, elem):
        return self.map.of(elem)

    def check(self, keys):
        """Evaluate d(t) = t u t, eps t = 0 and t eta = 0 on basis keys."""
        hom = HomAlgebra(self.C, self.A)
        lhs = hom.d(self.map)
        rhs = hom.cup(self.map, self.map)
        rep = CheckReport(f"twisting cochain {self.name}")
        for k in keys:
            ok = lhs(k) == rhs(k)
            if ok and k == self.C.coaug_key:
                ok = self.map(k).is_zero()
            if ok:
                ok = self.A.aug(self.map(k)) == self.A.field.zero
            rep.record(ok, k)
        return rep


class TwistingHomotopy:
    """h in Hom_0(C, A) with d(h) = t u h - h u u and normalizations."""

    def __init__(self, C, A, rule, source, target, name="h"):
        self.C = C
        self.A = A
        self.name = name
        self.source = source    # t
        self.target = target    # u
        self.map = rule if isinstance(rule, LinearMap) else \
            LinearMap(C.field, 0, rule, name=name)
        if self.map.degree != 0:
            raise ValueError("twisting homotopies have degree 0")

    def __call__(self, key):
        return self.map(key)

    def check(self, keys):
        hom = HomAlgebra(self.C, self.A)
        lhs = hom.d(self.map)
        rhs = hom.cup(self.source.map, self.map) - hom.cup(self.map, self.target.map)
        rep = CheckReport(f"twisting homotopy {self.name}")
        f = self.C.field
        for k in keys:
            ok = lhs(k) == rhs(k)
            if ok:
                ok = self.A.aug(self.map(k)) == self.C.counit_key(k)
            if ok and k == self.C.coaug_key:
                ok = self.map(k) == self.A.one()
            rep.record(ok, k)
        return rep

    def inverse(self, max_terms=60):
        """h^{-1} = sum (1-h)^{u n}, a homotopy from target to source."""
        hom = HomAlgebra(self.C, self.A)
        inv = hom.geometric_inverse(self.map, max_terms=max_terms)
        return TwistingHomotopy(self.C, self.A, inv, self.target, self.source,
                                name=f"{self.name}^-1")

    def cup(self, other):
        """h u k : t ~ v through matching endpoints."""
        if self.target is not other.source and self.target.map is not other.source.map:
            # allow distinct objects with equal rules; caller responsibility
            pass
        hom = HomAlgebra(self.C, self.A)
        return TwistingHomotopy(self.C, self.A, hom.cup(self.map, other.map),
                                self.source, other.target,
                                name=f"{self.name}u{other.name}")

    def is_trivial_under(self, oracle, keys):
        """a-triviality certificate: h(c) - eta eps(c) dies in the quotient."""
        hom = HomAlgebra(self.C, self.A)
        unit = hom.unit()
        rep = CheckReport(f"{self.name} trivial under {oracle.name}")
        for k in keys:
            rep.record(oracle.is_zero(self.map(k) - unit(k)), k)
        return rep


def trivial_homotopy(C, A, t):
    """The unit homotopy eta eps : t ~ t."""
    hom = HomAlgebra(C, A)
    return TwistingHomotopy(C, A, hom.unit(), t, t, name="1")


class QuotientOracle:
    """A dga morphism q: A -> Q certifying ideal membership by q(x) = 0.

    `q` maps elements of A to elements of Q; `is_zero_q` decides zero in Q
    (defaults to GradedElement.is_zero).
    """

    def __init__(self, A, q, name="q", is_zero_q=None):
        self.A = A
        self.q = q
        self.name = name
        self._is_zero = is_zero_q or (lambda e: e.is_zero())

    def __call__(self, x):
        return self.q(x)

    def is_zero(self, x):
        return self._is_zero(self.q(x))


# ---------------------------------------------------------------------------
# Twisted tensor products
# ---------------------------------------------------------------------------

class TwistedTensor:
    """C (x)_t A with differential d_(x) - delta_t."""

    def __init__(self, C, A, t):
        if C.ddeg != A.ddeg:
            raise ValueError("need matching differential degrees")
        self.C = C
        self.A = A
        self.t = t
        self.field = C.field
        self.ddeg = C.ddeg
        self._diff_memo = {}

    def key(self, ck, ak):
        return Tensor((ck, ak))

    def element(self, ck, ak, coeff=None):
        return GradedElement.single(self.field, self.key(ck, ak), coeff)

    def basis(self, degree, c_degrees=None):
        """All c (x) a keys of the given total degree.

        `c_degrees` restricts the enumerated C-degrees (needed when C is
        supported in infinitely many degrees of one sign).
        """
        out = []
        if c_degrees is None:
            c_degrees = range(0, degree + 1) if degree >= 0 else range(degree, 1)
        for dc in c_degrees:
            da = degree - dc
            try:
                cb = list(self.C.basis(dc))
                ab = list(self.A.basis(da))
            except NotImplementedError:
                raise
            for ck in cb:
                for ak in ab:
                    out.append(self.key(ck, ak))
        return out

    def delta(self, f):
        """delta_f(c (x) a) = sum +- c_1 (x) (f(c_2) a) for f in Hom(C,A)."""
        field = self.field
        fodd = f.degree % 2

        def rule(key):
            ck, ak = key.parts
            out = GradedElement(field)
            for c, k1, k2 in self.C.cop_key(ck):
                sign = -1 if (fodd and k1.degree % 2) else 1
                fv = f(k2)
                if fv.is_zero():
                    continue
                prod = self.A.mul(fv, GradedElement.single(field, ak))
                coeff = c if sign > 0 else field.neg(c)
                for kp, cp in prod.terms.items():
                    out.add_in(GradedElement.single(field, self.key(k1, kp)),
                               field.mul(coeff, cp))
            return out

        return LinearMap(field, f.degree, rule, name=f"delta_{f.name}")

    def diff_key(self, key):
        got = self._diff_memo.get(key)
        if got is not None:
            return got
        ck, ak = key.parts
        field = self.field
        out = GradedElement(field)
        for kc, cc in self.C.diff_key(ck).terms.items():
            out.add_in(GradedElement.single(field, self.key(kc, ak)), cc)
        sgn = field.neg(field.one) if ck.degree % 2 else field.one
        for ka, ca in self.A.diff_key(ak).terms.items():
            out.add_in(GradedElement.single(field, self.key(ck, ka)),
                       field.mul(sgn, ca))
        out.add_in(self.delta(self.t.map)(key), field.neg(field.one))
        self._diff_memo[key] = out
        return out

    def d(self, x):
        return x.map_keys(self.diff_key)

    def check_d_squared(self, keys):
        rep = CheckReport("twisted tensor d^2")
        for k in keys:
            rep.record(self.d(self.d(GradedElement.single(self.field, k))).is_zero(), k)
        if not rep.ok:
            raise StructuralError(
                f"d^2 != 0 in twisted tensor at {rep.failures[0]!r}; "
                "the twisting cochain identity fails")
        return rep


def delta_h_iso(tt_u, tt_t, h, keys):
    """delta_h : C (x)_u A -> C (x)_t A for a homotopy h: t ~ u.

    Returns (map, inverse_map); both are verified chain maps on `keys`.
    """
    dh = tt_t.delta(h.map)
    dh_inv = tt_t.delta(h.inverse().map)
    rep = CheckReport("delta_h chain map")
    field = tt_t.field
    for k in keys:
        e = GradedElement.single(field, k)
        lhs = dh.of(tt_u.d(e))
        rhs = tt_t.d(dh.of(e))
        rep.record(lhs == rhs, k)
        roundtrip = dh.of(dh_inv.of(e))
        rep.record(roundtrip == e, ("inverse", k))
    rep.raise_on_failure()
    return dh, dh_inv


# ---------------------------------------------------------------------------
# Free and free graded-commutative dgas
# ---------------------------------------------------------------------------

class Word:
    """Noncommutative word in named generators."""

    __slots__ = ("letters", "degree")

    def __init__(self, letters, degree):
        self.letters = letters
        self.degree = degree

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "*".join(self.letters) if self.letters else "1"


class FreeDga(Dga):
    """Tensor algebra on graded generators with an assignable differential.

    `gens`: list of (name, degree); `d_gen`: dict name -> element spec,
    where a spec is a list of (coeff, [names...]) pairs.  The differential
    extends by the Leibniz rule.  The universal test bed: any identity in
    shm/hga combinators that fails in general fails here.
    """

    def __init__(self, field, gens, d_gen=None, simply_connected=None):
        super().__init__(field)
        self.gens = dict(gens)
        if any(d <= 0 for d in self.gens.values()):
            raise ValueError("generator degrees must be positive")
        self.unit_key = Word((), 0)
        self._dgen = {}
        for name, spec in (d_gen or {}).items():
            elem = GradedElement(field)
            for coeff, names in spec:
                elem.add_in(GradedElement.single(
                    field, self.word(names), field.of(coeff)))
            self._dgen[name] = elem
        self.simply_connected = (simply_connected if simply_connected is not None
                                 else all(d >= 2 for d in self.gens.values()))

    def word(self, names):
        return Word(tuple(names), sum(self.gens[n] for n in names))

    def generator(self, name):
        return GradedElement.single(self.field, self.word([name]))

    def basis(self, degree):
        if degree < 0:
            return []
        if degree == 0:
            return [self.unit_key]
        out = []

        def extend(prefix, rem):
            for name, d in self.gens.items():
                if d > rem:
                    continue
                if d == rem:
                    out.append(self.word(prefix + (name,)))
                else:
                    extend(prefix + (name,), rem - d)

        extend((), degree)
        return out

    def diff_key(self, key):
        field = self.field
        out = GradedElement(field)
        pre = 0
        for i, name in enumerate(key.letters):
            dg = self._dgen.get(name)
            if dg is not None and not dg.is_zero():
                sgn = field.neg(field.one) if pre % 2 else field.one
                left = key.letters[:i]
                right = key.letters[i + 1:]
                for k, c in dg.terms.items():
                    w = Word(left + k.letters + right,
                             key.degree - self.gens[name] + k.degree)
                    out.add_in(GradedElement.single(field, w),
                               field.mul(sgn, c))
            pre += self.gens[name]
        return out

    def mul_keys(self, k1, k2):
        return GradedElement.single(
            self.field, Word(k1.letters + k2.letters, k1.degree + k2.degree))


class Monomial:
    """Commutative monomial: sorted tuple of (name, exponent)."""

    __slots__ = ("powers", "degree")

    def __init__(self, powers, degree):
        self.powers = powers
        self.degree = degree

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.powers == other.powers

    def __hash__(self):
        return hash(self.powers)

    def __repr__(self):
        if not self.powers:
            return "1"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self.powers)


class FreeGcDga(Dga):
    """Free graded-commutative dga: polynomial on even generators tensor
    exterior on odd ones, with an assignable differential.

    Serves as polynomial algebras (zero differential), exterior algebras,
    Koszul-resolution algebras, and commutative shc test instances.
    """

    commutative = True

    def __init__(self, field, gens, d_gen=None):
        super().__init__(field)
        self.gens = dict(gens)
        self.order = {n: i for i, n in enumerate(self.gens)}
        self.unit_key = Monomial((), 0)
        self._dgen_spec = d_gen or {}
        self._dgen = None
        self.simply_connected = all(d >= 2 for d in self.gens.values())

    def _dgen_map(self):
        if self._dgen is None:
            self._dgen = {}
            for name, spec in self._dgen_spec.items():
                elem = GradedElement(self.field)
                for coeff, powers in spec:
                    elem.add_in(GradedElement.single(
                        self.field, self.monomial(powers), self.field.of(coeff)))
                self._dgen[name] = elem
        return self._dgen

    def monomial(self, powers):
        """powers: iterable of (name, exp) or of names."""
        acc = {}
        for p in powers:
            name, e = p if isinstance(p, tuple) else (p, 1)
            acc[name] = acc.get(name, 0) + e
        items = []
        for name in self.gens:
            e = acc.pop(name, 0)
            if e == 0:
                continue
            if self.gens[name] % 2 and e > 1:
                return None  # odd generator squares to zero
            items.append((name, e))
        if acc:
            raise KeyError(f"unknown generators {sorted(acc)}")
        return Monomial(tuple(items), sum(self.gens[n] * e for n, e in items))

    def generator(self, name):
        return GradedElement.single(self.field, self.monomial([name]))

    def basis(self, degree):
        if degree < 0:
            return []
        names = list(self.gens)
        out = []

        def extend(i, rem, acc):
            if rem == 0:
                out.append(Monomial(tuple(acc), degree))
                return
            if i >= len(names):
                return
            extend(i + 1, rem, acc)
            n = names[i]
            d = self.gens[n]
            emax = 1 if d % 2 else rem // d
            for e in range(1, emax + 1):
                if d * e <= rem:
                    extend(i + 1, rem - d * e, acc + [(n, e)])

        extend(0, degree, [])
        return out

    def mul_keys(self, k1, k2):
        # Koszul sign from interleaving odd generators into sorted order.
        field = self.field
        sign = 0
        odd1 = [n for n, e in k1.powers if self.gens[n] % 2]
        for n2, e2 in k2.powers:
            if self.gens[n2] % 2:
                crossings = sum(1 for n1 in odd1 if self.order[n1] > self.order[n2])
                sign += crossings * e2
        merged = {}
        for n, e in k1.powers:
            merged[n] = merged.get(n, 0) + e
        for n, e in k2.powers:
            merged[n] = merged.get(n, 0) + e
        for n, e in merged.items():
            if self.gens[n] % 2 and e > 1:
                return GradedElement(field)
        items = tuple((n, merged[n]) for n in self.gens if n in merged)
        key = Monomial(items, k1.degree + k2.degree)
        coeff = field.neg(field.one) if sign % 2 else field.one
        return GradedElement.single(field, key, coeff)

    def diff_key(self, key):
        # Leibniz: d(x^e) = e x^{e-1} dx for even x, e = 1 for odd x; the
        # sign is the parity of the preceding factors.
        field = self.field
        out = GradedElement(field)
        dgen = self._dgen_map()
        pre = 0
        for idx, (name, e) in enumerate(key.powers):
            d = self.gens[name]
            dg = dgen.get(name)
            if dg is not None and not dg.is_zero():
                sgn = field.neg(field.one) if pre % 2 else field.one
                prefix = key.powers[:idx]
                suffix = (((name, e - 1),) if e > 1 else ()) + key.powers[idx + 1:]
                pm = Monomial(prefix, sum(self.gens[n] * ee for n, ee in prefix))
                sm = Monomial(suffix, sum(self.gens[n] * ee for n, ee in suffix))
                prod = self.mul(GradedElement.single(field, pm),
                                self.mul(dg, GradedElement.single(field, sm)))
                out.add_in(prod, field.mul(sgn, field.of(e)))
            pre += d * e
        return out


def free_dga_endo(A, scale):
    """The endomorphism of a FreeDga scaling every generator by `scale`."""

    def fmap(x):
        f = A.field
        out = GradedElement(f)
        for k, c in x.terms.items():
            factor = f.one
            for _ in k.letters:
                factor = f.mul(factor, f.of(scale))
            out.add_in(GradedElement.single(f, k), f.mul(c, factor))
        return out

    return fmap


def gc_algebra_map(A, B, images):
    """The algebra map A -> B between FreeGcDga's sending each generator to
    the prescribed element of B.  Returns an element map (degree checked)."""
    for name, img in images.items():
        if not img.is_zero() and img.degree() != A.gens[name]:
            raise ValueError(f"image of {name} has wrong degree")

    def fmap(x):
        out = GradedElement(B.field)
        for key, c in x.terms.items():
            factors = []
            for name, e in key.powers:
                img = images.get(name)
                if img is None:
                    raise KeyError(f"no image for generator {name}")
                factors.extend([img] * e)
            out.add_in(B.mul_many(factors), c)
        return out

    return fmap


def polynomial_dga(field, gens):
    """k[x_1,...,x_n] on even positive degrees, zero differential."""
    for name, d in gens:
        if d <= 0 or d % 2:
            raise ValueError(f"polynomial generator {name} must have even "
                             f"positive degree, got {d}")
    return FreeGcDga(field, gens)


def exterior_dga(field, gens):
    """Lambda(x_1,...,x_n) on odd degrees, zero differential."""
    for name, d in gens:
        if d % 2 == 0:
            raise ValueError(f"exterior generator {name} must have odd degree")
    return FreeGcDga(field, gens)


class TensorDga(Dga):
    """A (x) B with componentwise structure and Koszul signs."""

    def __init__(self, A, B):
        super().__init__(A.field)
        if A.ddeg != B.ddeg:
            raise ValueError("mismatched differential degrees")
        self.A = A
        self.B = B
        self.ddeg = A.ddeg
        self.unit_key = Tensor((A.unit_key, B.unit_key))
        self.commutative = A.commutative and B.commutative
        self.simply_connected = A.simply_connected and B.simply_connected

    def pair(self, x, y):
        """Element x (x) y from elements of A and B (no sign)."""
        out = GradedElement(self.field)
        for ka, ca in x.terms.items():
            for kb, cb in y.terms.items():
                out.add_in(GradedElement.single(
                    self.field, Tensor((ka, kb))), self.field.mul(ca, cb))
        return out

    def basis(self, degree):
        out = []
        for da in range(0, degree + 1):
            for ka in self.A.basis(da):
                for kb in self.B.basis(degree - da):
                    out.append(Tensor((ka, kb)))
        return out

    def diff_key(self, key):
        ka, kb = key.parts
        field = self.field
        out = GradedElement(field)
        for k, c in self.A.diff_key(ka).terms.items():
            out.add_in(GradedElement.single(field, Tensor((k, kb))), c)
        sgn = field.neg(field.one) if ka.degree % 2 else field.one
        for k, c in self.B.diff_key(kb).terms.items():
            out.add_in(GradedElement.single(field, Tensor((ka, k))),
                       field.mul(sgn, c))
        return out

    def mul_keys(self, k1, k2):
        a1, b1 = k1.parts
        a2, b2 = k2.parts
        field = self.field
        sgn = field.neg(field.one) if (b1.degree % 2 and a2.degree % 2) else field.one
        out = GradedElement(field)
        pa = self.A.mul_keys(a1, a2)
        pb = self.B.mul_keys(b1, b2)
        for ka, ca in pa.terms.items():
            for kb, cb in pb.terms.items():
                out.add_in(GradedElement.single(field, Tensor((ka, kb))),
                           field.mul(sgn, field.mul(ca, cb)))
        return out

    def aug_key(self, key):
        ka, kb = key.parts
        return self.field.mul(self.A.aug_key(ka), self.B.aug_key(kb))


class ExteriorCoalgebra(Dgc):
    """The exterior coalgebra on odd-degree primitives; basis = subsets.

    Keys are Monomial instances with exponents one; the coproduct is the
    sum over splittings with the shuffle Koszul sign.  Zero differential.
    """

    def __init__(self, field, gens, ddeg=1):
        super().__init__(field)
        self.gens = dict(gens)
        if any(d % 2 == 0 for d in self.gens.values()):
            raise ValueError("exterior coalgebra generators must be odd")
        self.order = {n: i for i, n in enumerate(self.gens)}
        self.ddeg = ddeg
        self.coaug_key = Monomial((), 0)

    def key(self, names):
        names = sorted(names, key=self.order.__getitem__)
        return Monomial(tuple((n, 1) for n in names),
                        sum(self.gens[n] for n in names))

    def basis(self, degree=None):
        from itertools import combinations
        names = list(self.gens)
        out = []
        for r in range(len(names) + 1):
            for comb in combinations(names, r):
                k = self.key(list(comb))
                if degree is None or k.degree == degree:
                    out.append(k)
        return out

    def diff_key(self, key):
        return GradedElement(self.field)

    def cop_key(self, key):
        names = [n for n, _ in key.powers]
        out = []
        for mask in range(1 << len(names)):
            left = [names[i] for i in range(len(names)) if mask >> i & 1]
            right = [names[i] for i in range(len(names)) if not mask >> i & 1]
            # Koszul sign of unshuffling (all generators odd): parity of
            # crossings between right elements preceding left elements
            inv = 0
            for i in range(len(names)):
                for j in range(i + 1, len(names)):
                    if (not mask >> i & 1) and (mask >> j & 1):
                        inv += self.gens[names[i]] * self.gens[names[j]]
            c = self.field.of((-1) ** (inv % 2))
            out.append((c, self.key(left), self.key(right)))
        return out


class PolynomialCoalgebra(Dgc):
    """The cocommutative coalgebra on even cogenerators y_i; the basis is
    y_alpha for multi-indices alpha, Delta y_alpha = sum y_beta (x) y_gamma
    over beta + gamma = alpha.  Zero differential."""

    def __init__(self, field, gens, ddeg=-1):
        super().__init__(field)
        self.gens = list(gens)
        if any(d % 2 for _, d in self.gens):
            raise ValueError("cogenerators must have even degree")
        self.ddeg = ddeg
        self.coaug_key = Monomial((), 0)

    def key(self, alpha):
        items = tuple((n, a) for (n, _), a in zip(self.gens, alpha) if a)
        return Monomial(items, sum(d * a for (_, d), a in zip(self.gens, alpha)))

    def alpha(self, key):
        lookup = dict(key.powers)
        return tuple(lookup.get(n, 0) for n, _ in self.gens)

    def basis(self, degree):
        out = []

        def rec(i, rem, acc):
            if i == len(self.gens):
                if rem == 0:
                    out.append(self.key(tuple(acc)))
                return
            d = self.gens[i][1]
            for a in range(rem // d + 1):
                rec(i + 1, rem - d * a, acc + [a])

        if degree >= 0:
            rec(0, degree, [])
        return out

    def diff_key(self, key):
        return GradedElement(self.field)

    def cop_key(self, key):
        alpha = self.alpha(key)
        out = []

        def rec(i, beta):
            if i == len(alpha):
                gamma = tuple(a - b for a, b in zip(alpha, beta))
                out.append((self.field.one, self.key(tuple(beta)),
                            self.key(gamma)))
                return
            for b in range(alpha[i] + 1):
                rec(i + 1, beta + [b])

        rec(0, [])
        return out


class TensorDgc(Dgc):
    """C (x) D with coproduct (1 (x) T (x) 1)(Delta (x) Delta)."""

    def __init__(self, C, D):
        super().__init__(C.field)
        if C.ddeg != D.ddeg:
            raise ValueError("mismatched differential degrees")
        self.C = C
        self.D = D
        self.ddeg = C.ddeg
        self.coaug_key = Tensor((C.coaug_key, D.coaug_key))
        self.cocomplete = C.cocomplete and D.cocomplete

    def basis(self, degree):
        out = []
        for dc in range(0, degree + 1):
            for kc in self.C.basis(dc):
                for kd in self.D.basis(degree - dc):
                    out.append(Tensor((kc, kd)))
        return out

    def diff_key(self, key):
        kc, kd = key.parts
        field = self.field
        out = GradedElement(field)
        for k, c in self.C.diff_key(kc).terms.items():
            out.add_in(GradedElement.single(field, Tensor((k, kd))), c)
        sgn = field.neg(field.one) if kc.degree % 2 else field.one
        for k, c in self.D.diff_key(kd).terms.items():
            out.add_in(GradedElement.single(field, Tensor((kc, k))),
                       field.mul(sgn, c))
        return out

    def cop_key(self, key):
        kc, kd = key.parts
        field = self.field
        out = []
        for c, c1, c2 in self.C.cop_key(kc):
            for c_, d1, d2 in self.D.cop_key(kd):
                # sign from T moving d1 past c2
                sgn = -1 if (d1.degree % 2 and c2.degree % 2) else 1
                coeff = field.mul(c, c_)
                if sgn < 0:
                    coeff = field.neg(coeff)
                out.append((coeff, Tensor((c1, d1)), Tensor((c2, d2))))
        return out

    def counit_key(self, key):
        kc, kd = key.parts
        return self.field.mul(self.C.counit_key(kc), self.D.counit_key(kd))


# ---------------------------------------------------------------------------
# Gauge transformations: synthetic nonstrict twisting cochains + homotopies
# ---------------------------------------------------------------------------

def gauge_transform(C, A, t, k_rule):
    """Conjugate the twisting cochain t by h = 1 + k.

    `k_rule` is a degree-0 LinearMap C -> A with k(coaug) = 0 and values in
    the augmentation ideal.  Returns (t_prime, h) where h: t ~ t_prime is a
    twisting homotopy; t' = h^{-1} u t u h - h^{-1} u d(h).
    """
    hom = HomAlgebra(C, A)
    h_map = hom.unit() + k_rule
    h_inv = hom.geometric_inverse(h_map)
    dh = hom.d(h_map)
    t_prime_map = hom.cup(h_inv, hom.cup(t.map, h_map)) - hom.cup(h_inv, dh)
    t_prime = TwistingCochain(C, A, t_prime_map, name=f"{t.name}'")
    h = TwistingHomotopy(C, A, h_map, t, t_prime, name="gauge")
    return t_prime, h


def random_gauge_rule(C, A, rng, degrees, density=2, pool=(-2, -1, 1, 2)):
    """A memoized random degree-0 map C -> bar A vanishing on the coaugmentation.

    Values are random augmentation-ideal elements of matching degree; the
    rule is pure per instance (memoized), so repeated evaluation is stable.
    """
    field = C.field
    memo = {}

    def rule(key):
        if key in memo:
            return memo[key]
        if key == C.coaug_key or key.degree not in degrees:
            val = GradedElement(field)
        else:
            val = A.reduced(A.random_element(key.degree, rng, terms=density,
                                             coeffs=pool))
        memo[key] = val
        return val

    return LinearMap(field, 0, rule, name="k")
