"""Sparse graded vectors over a basis of keyed generators, with Koszul signs.

A *basis key* is any hashable object with an integer ``degree`` attribute.
Modules register their own key kinds (simplices, bar words, monomials,
Koszul pairs); one linear-algebra engine serves them all.

`GradedElement` is a finite linear combination of keys; zero coefficients
are never stored.  `LinearMap` is a lazy degree-homogeneous map given by a
rule on keys.  All Koszul signs go through the two primitives
`koszul_tensor_map` (signs for maps) and the evaluation helpers below.
"""
from dataclasses import dataclass


def deg(key):
    return key.degree


@dataclass(frozen=True)
class Tensor:
    """Tensor product of basis keys, used for C (x) A style complexes."""

    parts: tuple

    @property
    def degree(self):
        return sum(p.degree for p in self.parts)

    def __repr__(self):
        return " (x) ".join(repr(p) for p in self.parts)


class GradedElement:
    """Finite k-linear combination of basis keys.

    Supports mixed degrees; `degree()` returns the common degree of a
    homogeneous element and raises otherwise.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {}
        if terms:
            z = field.zero
            for k, c in (terms.items() if isinstance(terms, dict) else terms):
                if c == z:
                    continue
                acc = self.terms.get(k)
                if acc is None:
                    self.terms[k] = c
                else:
                    acc = field.add(acc, c)
                    if acc == z:
                        del self.terms[k]
                    else:
                        self.terms[k] = acc

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def single(cls, field, key, coeff=None):
        e = cls(field)
        c = field.one if coeff is None else coeff
        if c != field.zero:
            e.terms[key] = c
        return e

    def is_zero(self):
        return not self.terms

    def degree(self):
        degs = {k.degree for k in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element, degrees {sorted(degs)}")
        return degs.pop()

    def homogeneous_parts(self):
        """Degree -> GradedElement, for inhomogeneous sums."""
        parts = {}
        for k, c in self.terms.items():
            parts.setdefault(k.degree, {})[k] = c
        return {d: GradedElement(self.field, t) for d, t in sorted(parts.items())}

    def coeff(self, key):
        return self.terms.get(key, self.field.zero)

    def add_in(self, other, scalar=None):
        """In-place add (used only while assembling a fresh element)."""
        f = self.field
        z = f.zero
        if scalar is None:
            scalar = f.one
        if scalar == z:
            return self
        for k, c in other.terms.items():
            c = f.mul(scalar, c)
            acc = self.terms.get(k)
            acc = c if acc is None else f.add(acc, c)
            if acc == z:
                self.terms.pop(k, None)
            else:
                self.terms[k] = acc
        return self

    def __add__(self, other):
        out = GradedElement(self.field, dict(self.terms))
        return out.add_in(other)

    def __sub__(self, other):
        out = GradedElement(self.field, dict(self.terms))
        return out.add_in(other, self.field.neg(self.field.one))

    def __neg__(self):
        f = self.field
        return GradedElement(f, {k: f.neg(c) for k, c in self.terms.items()})

    def scale(self, scalar):
        f = self.field
        if scalar == f.zero:
            return GradedElement(f)
        return GradedElement(f, {k: f.mul(scalar, c) for k, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GradedElement) and self.terms == other.terms \
            and self.field == other.field

    def __hash__(self):
        raise TypeError("GradedElement is not hashable")

    def map_keys(self, fn):
        """Linear extension of key -> GradedElement."""
        out = GradedElement(self.field)
        for k, c in self.terms.items():
            out.add_in(fn(k), c)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            bits.append(f"({self.field.fmt(c)})*{k!r}")
        return " + ".join(bits)


def tensor_elements(field, *elems):
    """x (x) y (x) ... as a GradedElement over Tensor keys (no signs)."""
    out = {(): field.one}
    for e in elems:
        nxt = {}
        for ks, c in out.items():
            for k, c2 in e.terms.items():
                nxt[ks + (k,)] = field.mul(c, c2)
        out = nxt
        if not out:
            break
    return GradedElement(field, {Tensor(ks): c for ks, c in out.items()})


class LinearMap:
    """Degree-homogeneous linear map given lazily on basis keys.

    `rule` maps a key to a GradedElement; evaluation on elements extends
    linearly.  An optional domain truncation degree documents where the
    rule is meaningful.
    """

    def __init__(self, field, degree, rule, name="", truncation=None, memo=True):
        self.field = field
        self.degree = degree
        self._rule = rule
        self.name = name
        self.truncation = truncation
        self._memo = {} if memo else None

    def __call__(self, key):
        if self._memo is None:
            return self._rule(key)
        got = self._memo.get(key)
        if got is None:
            got = self._rule(key)
            self._memo[key] = got
        return got

    def of(self, elem):
        if not isinstance(elem, GradedElement):
            raise TypeError("LinearMap applies to GradedElement")
        return elem.map_keys(self)

    def __matmul__(self, other):
        """Composition self o other (no sign: composition of maps)."""
        return LinearMap(self.field, self.degree + other.degree,
                         lambda k: self.of(other(k)),
                         name=f"{self.name}o{other.name}")

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("adding maps of different degrees")
        return LinearMap(self.field, self.degree,
                         lambda k: self(k) + other(k))

    def __sub__(self, other):
        if self.degree != other.degree:
            raise ValueError("subtracting maps of different degrees")
        return LinearMap(self.field, self.degree,
                         lambda k: self(k) - other(k))

    def scale(self, scalar):
        return LinearMap(self.field, self.degree, lambda k: self(k).scale(scalar))

    @classmethod
    def identity(cls, field):
        return cls(field, 0, lambda k: GradedElement.single(field, k), name="1")

    @classmethod
    def zero(cls, field, degree=0):
        return cls(field, degree, lambda k: GradedElement(field), name="0")


def koszul_tensor_map(f, g):
    """f (x) g on Tensor pairs: (f(x)g)(a(x)b) = (-1)^{|g||a|} f(a)(x)g(b).

    Both maps must be degree-homogeneous; inputs must be Tensor pairs
    whose first part feeds f and second part feeds g.
    """
    field = f.field

    def rule(key):
        if not isinstance(key, Tensor) or len(key.parts) != 2:
            raise TypeError(f"koszul_tensor_map needs Tensor pairs, got {key!r}")
        a, b = key.parts
        fa = f(a)
        gb = g(b)
        sign = -1 if (g.degree % 2) and (a.degree % 2) else 1
        out = GradedElement(field)
        for ka, ca in fa.terms.items():
            for kb, cb in gb.terms.items():
                c = field.mul(ca, cb)
                if sign < 0:
                    c = field.neg(c)
                out.add_in(GradedElement.single(field, Tensor((ka, kb)), c))
        return out

    return LinearMap(field, f.degree + g.degree, rule,
                     name=f"({f.name})x({g.name})")


def transpose_tensor(elem):
    """T(a (x) b) = (-1)^{|a||b|} b (x) a on Tensor pairs."""
    field = elem.field

    def rule(key):
        a, b = key.parts
        sign = -1 if (a.degree % 2) and (b.degree % 2) else 1
        c = field.one if sign > 0 else field.neg(field.one)
        return GradedElement.single(field, Tensor((b, a)), c)

    return elem.map_keys(rule)


def koszul_sign(degrees, perm):
    """Sign of permuting graded symbols: perm[i] = source index of slot i."""
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j] and degrees[perm[i]] % 2 and degrees[perm[j]] % 2:
                sign = -sign
    return sign


def apply_sign(map_degrees, block_degrees):
    """Koszul sign for (f_1 (x) ... (x) f_r)(x_1 (x) ... (x) x_r).

    map_degrees[i] is the degree of f_i, block_degrees[i] the total degree
    of the arguments fed to f_i.  Sign exponent: sum_{i<j} |f_j||x_i|.
    """
    e = 0
    for j in range(1, len(map_degrees)):
        if map_degrees[j] % 2:
            e += sum(block_degrees[:j])
    return -1 if e % 2 else 1
