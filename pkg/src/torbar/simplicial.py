"""Simplicial sets, normalized chains and cochains, interval cut
operations, the cochain homotopy Gerstenhaber structure, simplicial groups
and the loop action.

Simplices are immutable data handled by their space; chains are sparse
combinations of nondegenerate simplex keys (degenerate faces are dropped
at construction, which implements normalization once and for all).
Cochains are computable functionals on nondegenerate simplices, so lazily
enumerated spaces only ever answer finitely many queries.
"""
import json
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .graded import GradedElement, Tensor
from .linalg import homology, StructuralError


class SimplexKey:
    """Basis key for a simplex: space + dimension + data."""

    __slots__ = ("space", "degree", "data", "_hash")

    def __init__(self, space, degree, data):
        self.space = space
        self.degree = degree
        self.data = data
        self._hash = hash((id(space), degree, data))

    def __eq__(self, other):
        return (isinstance(other, SimplexKey) and other.space is self.space
                and other.degree == self.degree and other.data == self.data)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{self.data}:{self.degree}>"


class SimplicialSet:
    """Base: subclasses implement face/degeneracy on raw simplex data."""

    def __init__(self, field):
        self.field = field
        self._nondeg_cache = {}

    # -- required ---------------------------------------------------------
    def face(self, p, i, data):
        raise NotImplementedError

    def degeneracy(self, p, i, data):
        raise NotImplementedError

    def simplices(self, p):
        """All p-simplices (including degenerate ones); finite spaces only."""
        raise NotImplementedError(f"{type(self).__name__} is not enumerable")

    def basepoint(self):
        raise NotImplementedError(f"{type(self).__name__} has no basepoint")

    # -- generic ----------------------------------------------------------
    def key(self, p, data):
        return SimplexKey(self, p, data)

    def is_degenerate(self, p, data):
        # x is degenerate iff x = s_i d_i x for some i
        for i in range(p):
            if self.degeneracy(p - 1, i, self.face(p, i, data)) == data:
                return True
        return False

    def nondegenerate(self, p):
        got = self._nondeg_cache.get(p)
        if got is None:
            got = [x for x in self.simplices(p)
                   if not self.is_degenerate(p, x)]
            self._nondeg_cache[p] = got
        return got

    def chain(self, p, data, coeff=None):
        """The normalized chain of a single simplex (0 if degenerate)."""
        if self.is_degenerate(p, data):
            return GradedElement(self.field)
        return GradedElement.single(self.field, self.key(p, data), coeff)

    def boundary_key(self, key):
        out = GradedElement(self.field)
        p = key.degree
        if p == 0:
            return out
        sign = self.field.one
        for i in range(p + 1):
            f = self.face(p, i, key.data)
            out.add_in(self.chain(p - 1, f), sign)
            sign = self.field.neg(sign)
        return out

    def boundary(self, chain):
        return chain.map_keys(self.boundary_key)

    def vertex(self, key, i):
        """The i-th vertex of a simplex, as raw data."""
        p = key.degree if isinstance(key, SimplexKey) else None
        data = key.data if p is not None else key
        return self.face_by_vertices_data(data, p, (i,))

    def face_by_vertices_data(self, data, p, vertices):
        """The face of a p-simplex spanned by the given vertex tuple."""
        keep = set(vertices)
        out = data
        dim = p
        for i in range(p, -1, -1):
            if i not in keep:
                out = self.face(dim, i, out)
                dim -= 1
        return out

    def face_chain(self, key, vertices):
        """sigma(v_0,...,v_q) as a normalized chain."""
        data = self.face_by_vertices_data(key.data, key.degree, vertices)
        return self.chain(len(vertices) - 1, data)

    def check_simplicial_identities(self, samples):
        """Face/degeneracy identities on (p, data) samples."""
        for p, data in samples:
            for i in range(p + 1):
                for j in range(i, p + 1):
                    if p >= 2 and j > i:
                        lhs = self.face(p - 1, i, self.face(p, j, data))
                        rhs = self.face(p - 1, j - 1, self.face(p, i, data))
                        if lhs != rhs:
                            raise StructuralError(
                                f"d_i d_j fails at {data} ({i},{j})")
            for i in range(p):
                for j in range(p):
                    sij = self.degeneracy(p + 1, i, self.degeneracy(p, j, data))
                    if i <= j:
                        alt = self.degeneracy(p + 1, j + 1,
                                              self.degeneracy(p, i, data))
                        if sij != alt:
                            raise StructuralError(
                                f"s_i s_j fails at {data} ({i},{j})")
            for i in range(p + 1):
                for j in range(p):
                    lhs = self.face(p + 1, i, self.degeneracy(p, j, data))
                    if i < j:
                        rhs = self.degeneracy(p - 1, j - 1, self.face(p, i, data))
                    elif i in (j, j + 1):
                        rhs = data
                    else:
                        rhs = self.degeneracy(p - 1, j, self.face(p, i - 1, data))
                    if lhs != rhs:
                        raise StructuralError(
                            f"d_i s_j fails at {data} ({i},{j})")
        return True


# ---------------------------------------------------------------------------
# Concrete spaces
# ---------------------------------------------------------------------------

class SimplexComplex(SimplicialSet):
    """Full simplex on vertices 0..n, or its boundary (proper faces only).

    Simplices are nondecreasing vertex tuples; degenerate = repeated entry.
    """

    def __init__(self, field, n, boundary=False):
        super().__init__(field)
        self.n = n
        self.boundary_only = boundary

    def face(self, p, i, data):
        return data[:i] + data[i + 1:]

    def degeneracy(self, p, i, data):
        return data[:i + 1] + data[i:]

    def simplices(self, p):
        for comb in combinations_with_replacement(range(self.n + 1), p + 1):
            if self.boundary_only and len(set(comb)) == self.n + 1:
                continue
            yield comb

    def is_degenerate(self, p, data):
        return any(data[i] == data[i + 1] for i in range(p))

    def basepoint(self):
        return (0,)


def standard_simplex(field, n):
    return SimplexComplex(field, n)


def simplex_boundary(field, n):
    return SimplexComplex(field, n, boundary=True)


class ProductSpace(SimplicialSet):
    """X x Y with componentwise structure maps."""

    def __init__(self, X, Y):
        super().__init__(X.field)
        self.X = X
        self.Y = Y

    def face(self, p, i, data):
        x, y = data
        return (self.X.face(p, i, x), self.Y.face(p, i, y))

    def degeneracy(self, p, i, data):
        x, y = data
        return (self.X.degeneracy(p, i, x), self.Y.degeneracy(p, i, y))

    def simplices(self, p):
        for x in self.X.simplices(p):
            for y in self.Y.simplices(p):
                yield (x, y)

    def basepoint(self):
        return (self.X.basepoint(), self.Y.basepoint())


class FiniteSimplicialSet(SimplicialSet):
    """A finite simplicial set given by face tables on nondegenerate
    simplices; arbitrary simplices are normal forms s_I tau.

    Simplex data: (indices, name) with `indices` the strictly decreasing
    tuple I such that the simplex is s_{i_1} ... s_{i_m} tau (applied right
    to left), tau nondegenerate of dimension p - m.
    """

    def __init__(self, field, dims, faces, base=None):
        """dims: name -> dimension; faces: name -> list of face data in
        normal form ((), name) or (indices, name)."""
        super().__init__(field)
        self.dims = dict(dims)
        self.face_table = {k: [self._norm(f) for f in v]
                           for k, v in faces.items()}
        self.base = base

    @staticmethod
    def _norm(f):
        if isinstance(f, str):
            return ((), f)
        idx, name = f
        return (tuple(idx), name)

    def face(self, p, i, data):
        idx, name = data
        idx = list(idx)
        # commute d_i past the degeneracies s_j (idx is decreasing)
        for pos in range(len(idx)):
            j = idx[pos]
            if i < j:
                idx[pos] = j - 1
            elif i in (j, j + 1):
                del idx[pos]
                return (tuple(idx), name)
            else:
                i -= 1
        faces = self.face_table[name]
        fi, fn = faces[i]
        # compose the remaining degeneracies with the face's normal form
        out = list(fi)
        for j in reversed(idx):
            out = self._apply_s(out, j)
        return (tuple(out), fn)

    def degeneracy(self, p, i, data):
        idx, name = data
        return (tuple(self._apply_s(list(idx), i)), name)

    @staticmethod
    def _apply_s(idx, i):
        """Insert s_i into a decreasing list of degeneracy indices."""
        # s_i s_j = s_{j+1} s_i for i <= j: push i rightwards, bumping js
        out = []
        pos = 0
        while pos < len(idx) and idx[pos] >= i:
            out.append(idx[pos] + 1)
            pos += 1
        out.append(i)
        out.extend(idx[pos:])
        return out

    def simplices(self, p):
        for name, d in self.dims.items():
            if d == p:
                yield ((), name)
            elif d < p:
                m = p - d
                for comb in self._dec_tuples(m, p - 1):
                    yield (comb, name)

    @staticmethod
    def _dec_tuples(m, top):
        """Strictly decreasing m-tuples with entries in 0..top, valid
        normal forms s_{i_1} > ... > s_{i_m}."""
        from itertools import combinations
        for comb in combinations(range(top + 1), m):
            yield tuple(sorted(comb, reverse=True))

    def is_degenerate(self, p, data):
        return len(data[0]) > 0

    def basepoint(self):
        if self.base is None:
            raise StructuralError("no basepoint declared")
        return ((), self.base)

    @classmethod
    def from_json(cls, field, text_or_dict):
        data = (json.loads(text_or_dict) if isinstance(text_or_dict, str)
                else text_or_dict)
        dims = {}
        faces = {}
        for p_str, entries in data["simplices"].items():
            p = int(p_str)
            for name, face_list in entries.items():
                dims[name] = p
                if p > 0:
                    faces[name] = face_list
        return cls(field, dims, faces, base=data.get("basepoint"))

    def to_json(self):
        by_dim = {}
        for name, d in self.dims.items():
            by_dim.setdefault(str(d), {})[name] = [
                [list(i), n] for i, n in self.face_table.get(name, [])]
        out = {"simplices": by_dim}
        if self.base is not None:
            out["basepoint"] = self.base
        return out


# ---------------------------------------------------------------------------
# Partial diagonals, shuffle map, interval cuts
# ---------------------------------------------------------------------------

def partial_diagonal(key, k):
    """P^n_k(sigma) = sigma(0..k) (x) sigma(k..n), zero when degenerate."""
    X = key.space
    n = key.degree
    if not 0 <= k <= n:
        raise ValueError(f"P^n_k needs 0 <= k <= n, got {k}, {n}")
    front = X.face_chain(key, tuple(range(0, k + 1)))
    back = X.face_chain(key, tuple(range(k, n + 1)))
    out = GradedElement(X.field)
    for kf, cf in front.terms.items():
        for kb, cb in back.terms.items():
            out.add_in(GradedElement.single(X.field, Tensor((kf, kb))),
                       X.field.mul(cf, cb))
    return out


def aw_diagonal(key):
    """The Alexander-Whitney coproduct sum_k P^n_k."""
    out = GradedElement(key.space.field)
    for k in range(key.degree + 1):
        out.add_in(partial_diagonal(key, k))
    return out


class ChainsDgc:
    """C(X) as a dgc (homological, ddeg = -1) with the AW coproduct."""

    ddeg = -1
    cocomplete = False

    def __init__(self, X):
        self.X = X
        self.field = X.field

    @property
    def coaug_key(self):
        return self.X.key(0, self.X.basepoint())

    def counit_key(self, key):
        return self.field.one if key.degree == 0 else self.field.zero

    def basis(self, degree):
        return [self.X.key(degree, x) for x in self.X.nondegenerate(degree)]

    def diff_key(self, key):
        return self.X.boundary_key(key)

    def d(self, x):
        return x.map_keys(self.diff_key)

    def cop_key(self, key):
        out = []
        for k in range(key.degree + 1):
            for t, c in partial_diagonal(key, k).terms.items():
                out.append((c, t.parts[0], t.parts[1]))
        return out

    def zero(self):
        return GradedElement(self.field)


def shuffles(p, q):
    """(p, q)-shuffles: pairs (alpha, beta) partitioning 0..p+q-1 with
    |alpha| = p, |beta| = q, plus the permutation sign."""
    from itertools import combinations
    out = []
    universe = range(p + q)
    for alpha in combinations(universe, p):
        beta = tuple(i for i in universe if i not in alpha)
        inv = sum(1 for a in alpha for b in beta if b < a)
        out.append((alpha, beta, -1 if inv % 2 else 1))
    return out


def chain_shuffle(xkey, ykey, product_space):
    """The Eilenberg-Zilber shuffle C_p(X) (x) C_q(Y) -> C_{p+q}(X x Y)."""
    X = xkey.space
    Y = ykey.space
    field = X.field
    p, q = xkey.degree, ykey.degree
    out = GradedElement(field)
    for alpha, beta, sign in shuffles(p, q):
        # ascending degeneracies s_{i_m}...s_{i_1}, i_1 < ... < i_m; the
        # dimension grows by one each step
        x = xkey.data
        dim = p
        for i in sorted(beta):
            x = X.degeneracy(dim, i, x)
            dim += 1
        y = ykey.data
        dim = q
        for i in sorted(alpha):
            y = Y.degeneracy(dim, i, y)
            dim += 1
        out.add_in(product_space.chain(p + q, (x, y)),
                   field.of(sign))
    return out


def shuffle_elements(xe, ye, product_space):
    field = product_space.field
    out = GradedElement(field)
    for kx, cx in xe.terms.items():
        for ky, cy in ye.terms.items():
            out.add_in(chain_shuffle(kx, ky, product_space),
                       field.mul(cx, cy))
    return out


@dataclass(frozen=True)
class Surjection:
    """A nondegenerate surjection u: {1..k+l} -> {1..l} (interval cuts)."""

    seq: tuple

    def __post_init__(self):
        u = self.seq
        r = max(u)
        if set(u) != set(range(1, r + 1)):
            raise ValueError(f"{u} is not surjective onto 1..{r}")
        if any(u[i] == u[i + 1] for i in range(len(u) - 1)):
            raise ValueError(f"{u} is degenerate (equal adjacent entries)")

    @property
    def arity(self):
        return max(self.seq)

    @property
    def degree(self):
        return len(self.seq) - self.arity

    def last_occurrences(self):
        last = {}
        for t, v in enumerate(self.seq):
            last[v] = t
        return last

    def enclaves(self):
        """Pairs (i, i') (0-based) with u(i) = u(i'), i' >= i+2, and the
        values strictly between them absent at positions <= i or >= i'."""
        u = self.seq
        out = []
        for i in range(len(u)):
            for ip in range(i + 2, len(u)):
                if u[i] != u[ip]:
                    continue
                between = set(u[i + 1:ip])
                outer = set(u[:i + 1]) | set(u[ip:])
                if not between & outer:
                    out.append((i, ip))
        return out

    def has_enclave(self):
        return bool(self.enclaves())

    def __repr__(self):
        return f"Surjection{self.seq}"


def e_surjection(k):
    """e_k = (1, 2, 1, 3, 1, ..., 1, k+1, 1)."""
    seq = []
    for i in range(k):
        seq.extend([1, i + 2])
    seq.append(1)
    return Surjection(tuple(seq))


def f_surjection(k, l):
    """f_kl = (k+1, 1, k+1, 2, ..., k+1, k, k+1, k, k+2, k, ..., k+l, k)."""
    seq = []
    for i in range(1, k + 1):
        seq.extend([k + 1, i])
    seq.extend([k + 1, k])
    for i in range(2, l + 1):
        seq.extend([k + i, k])
    return Surjection(tuple(seq))


G12 = Surjection((2, 3, 1, 3, 1, 2, 1))
G21 = Surjection((3, 1, 3, 2, 3, 2, 1))


_cut_shape_cache = {}


def _cut_shapes(seq, last, n):
    """Shape-level interval cuts for a surjection on an n-simplex.

    Returns a list of (sign, (vertex tuples per factor)); depends only on
    (seq, n), so it is cached.  The sign is the Koszul permutation sign of
    sorting the intervals by label with caesura weights (non-final
    intervals count one extra), times (-1)^{endpoint} for every non-final
    interval; this is the convention pinned by the displayed differential
    identities of the cochain operations.
    """
    cached = _cut_shape_cache.get((seq, n))
    if cached is not None:
        return cached
    m = len(seq)
    r = max(seq)
    out = []
    for cuts in combinations_with_replacement(range(n + 1), m - 1):
        qs = (0,) + cuts + (n,)
        verts = [[] for _ in range(r)]
        for t in range(m):
            verts[seq[t] - 1].extend(range(qs[t], qs[t + 1] + 1))
        ok = True
        for vs in verts:
            if any(vs[i] >= vs[i + 1] for i in range(len(vs) - 1)):
                ok = False
                break
        if not ok:
            continue
        sign = 1
        weights = []
        for t in range(m):
            w = qs[t + 1] - qs[t]
            if last[seq[t]] != t:
                w += 1
                if qs[t + 1] % 2:
                    sign = -sign
            weights.append(w)
        for t in range(m):
            for t2 in range(t + 1, m):
                if seq[t] > seq[t2] and weights[t] % 2 and weights[t2] % 2:
                    sign = -sign
        out.append((sign, tuple(tuple(vs) for vs in verts)))
    _cut_shape_cache[(seq, n)] = out
    return out


def interval_cut(u, key):
    """AW_u(sigma): the signed sum over interval cuts.

    Returns a list of (coeff, [factor SimplexKeys]) with degenerate-factor
    terms dropped (normalization)."""
    if not isinstance(u, Surjection):
        u = Surjection(tuple(u))
    X = key.space
    field = X.field
    n = key.degree
    out = []
    for sign, shape in _cut_shapes(u.seq, u.last_occurrences(), n):
        factors = []
        ok = True
        for vs in shape:
            data = X.face_by_vertices_data(key.data, n, vs)
            if X.is_degenerate(len(vs) - 1, data):
                ok = False
                break
            factors.append(X.key(len(vs) - 1, data))
        if ok:
            out.append((field.of(sign), factors))
    return out


# ---------------------------------------------------------------------------
# Cochains as computable functionals
# ---------------------------------------------------------------------------

class Cochain:
    """A normalized cochain: degree + functional on nondegenerate keys."""

    __slots__ = ("space", "degree", "fn", "name")

    def __init__(self, space, degree, fn, name=""):
        self.space = space
        self.degree = degree
        self.fn = fn
        self.name = name

    def __call__(self, key):
        if key.degree != self.degree:
            return self.space.field.zero
        return self.fn(key)

    def eval_chain(self, chain):
        field = self.space.field
        s = field.zero
        for k, c in chain.terms.items():
            if k.degree == self.degree:
                s = field.add(s, field.mul(c, self.fn(k)))
        return s

    def add(self, other):
        f = self.space.field
        if other.degree != self.degree:
            raise ValueError("adding cochains of different degrees")
        return Cochain(self.space, self.degree,
                       lambda k: f.add(self(k), other(k)),
                       name=f"({self.name}+{other.name})")

    def scale(self, c):
        f = self.space.field
        return Cochain(self.space, self.degree,
                       lambda k: f.mul(c, self(k)), name=f"{c}*{self.name}")

    def neg(self):
        return self.scale(self.space.field.neg(self.space.field.one))


def zero_cochain(space, degree):
    return Cochain(space, degree, lambda k: space.field.zero, name="0")


def unit_cochain(space):
    return Cochain(space, 0, lambda k: space.field.one, name="1")


def dual_cochain(key):
    """The indicator functional of a nondegenerate simplex."""
    space = key.space

    def fn(k):
        return space.field.one if k == key else space.field.zero

    return Cochain(space, key.degree, fn, name=f"{key!r}*")


def coboundary(a):
    """(da)(x) = (-1)^{|a|+1} a(dx)."""
    space = a.space
    field = space.field
    sgn = field.one if (a.degree + 1) % 2 == 0 else field.neg(field.one)
    # (-1)^{|a|+1}: for even |a|+1 the sign is +1

    def fn(key):
        return field.mul(sgn, a.eval_chain(space.boundary_key(key)))

    return Cochain(space, a.degree + 1, fn, name=f"d({a.name})")


def _koszul_eval(field, cochains, factors):
    """(a_1 (x)...(x) a_r)(x_1 (x)...(x) x_r) with the Koszul pairing sign."""
    e = 0
    degs = [a.degree for a in cochains]
    fdegs = [f.degree for f in factors]
    if degs != fdegs:
        return field.zero
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            e += degs[j] * fdegs[i]
    val = field.one
    for a, f in zip(cochains, factors):
        v = a(f)
        if v == field.zero:
            return field.zero
        val = field.mul(val, v)
    return field.mul(field.of((-1) ** (e % 2)), val)


def surjection_op(u, cochains, name=""):
    """transpose AW_u applied to cochains: the cochain with
    value (-1)^{d(u) sum|a_i|} (a_1 (x)...(x) a_r)(AW_u(sigma))."""
    if not isinstance(u, Surjection):
        u = Surjection(tuple(u))
    space = cochains[0].space
    field = space.field
    total = sum(a.degree for a in cochains)
    ddeg = u.degree
    out_deg = total - ddeg
    sgn = field.of((-1) ** ((ddeg * total) % 2))

    def fn(key):
        s = field.zero
        for coeff, factors in interval_cut(u, key):
            v = _koszul_eval(field, cochains, factors)
            if v != field.zero:
                s = field.add(s, field.mul(coeff, v))
        return field.mul(sgn, s)

    return Cochain(space, out_deg, fn, name=name or f"AW{u.seq}^T")


def cup(a, b):
    """The cochain cup product, transpose of the AW diagonal."""
    return surjection_op(Surjection((1, 2)), [a, b],
                         name=f"({a.name}{b.name})")


def cup_many(cochains):
    if not cochains:
        raise ValueError("empty product")
    out = cochains[0]
    for c in cochains[1:]:
        out = cup(out, c)
    return out


class CochainHga:
    """The (extended) interval-cut hga structure on C*(X)."""

    def __init__(self, space):
        self.space = space
        self.field = space.field

    def zero(self, degree):
        return zero_cochain(self.space, degree)

    def one(self):
        return unit_cochain(self.space)

    def d(self, a):
        return coboundary(a)

    def mul(self, a, b):
        return cup(a, b)

    def E(self, k, a, bs):
        if k == 0:
            if bs:
                raise ValueError("E_0 takes no b arguments")
            return a
        if len(bs) != k:
            raise ValueError(f"E_{k} takes {k} b-arguments")
        return surjection_op(e_surjection(k), [a] + list(bs),
                             name=f"E{k}({a.name};..)")

    def F(self, k, l, as_, bs):
        if len(as_) != k or len(bs) != l:
            raise ValueError("F_kl arity mismatch")
        return surjection_op(f_surjection(k, l), list(as_) + list(bs),
                             name=f"F{k}{l}")

    def cup1(self, a, b):
        """a u_1 b = -E_1(a;b)."""
        return self.E(1, a, [b]).neg()

    def cup2(self, a, b):
        """a u_2 b = -F_11(a;b) = -(AW(2,1,2,1))^T(a;b)."""
        return self.F(1, 1, [a], [b]).neg()

    def braces(self, a, bs):
        """Voronov braces a{b_1,...,b_k} = (-1)^eps E_k(a;b_bullet),
        eps = k deg a + sum (k-m) deg b_m."""
        k = len(bs)
        e = k * a.degree + sum((k - m - 1) * bs[m].degree for m in range(k))
        return self.E(k, a, bs).scale(self.field.of((-1) ** (e % 2)))

    def braces_to_E(self, k, brace_fn, a, bs):
        """Inverse dictionary: recover E_k from a braces-style operation."""
        e = k * a.degree + sum((k - m - 1) * bs[m].degree for m in range(k))
        return brace_fn(a, bs).scale(self.field.of((-1) ** (e % 2)))


def q_operation(key, k, l, pi, base_space):
    """Q^n_{k,l}(sigma) = sigma(0..k, l..n) (x) pi_* sigma(k..l)."""
    X = key.space
    n = key.degree
    if not 0 <= k < l <= n:
        raise ValueError("Q^n_{k,l} needs 0 <= k < l <= n")
    field = X.field
    first = X.face_by_vertices_data(key.data, n,
                                    tuple(range(0, k + 1)) + tuple(range(l, n + 1)))
    dim1 = (k + 1) + (n - l + 1) - 1
    second = X.face_by_vertices_data(key.data, n, tuple(range(k, l + 1)))
    out = GradedElement(field)
    if X.is_degenerate(dim1, first):
        return out
    pdata = pi(l - k, second)
    if base_space.is_degenerate(l - k, pdata):
        return out
    out.add_in(GradedElement.single(
        field, Tensor((X.key(dim1, first), base_space.key(l - k, pdata)))))
    return out


# ---------------------------------------------------------------------------
# Simplicial groups and the loop action
# ---------------------------------------------------------------------------

class SimplicialGroup(SimplicialSet):
    """A simplicial set with degreewise group structure."""

    def mul(self, p, x, y):
        raise NotImplementedError

    def inv(self, p, x):
        raise NotImplementedError

    def one(self, p):
        raise NotImplementedError

    def basepoint(self):
        return self.one(0)

    def is_loop(self, data):
        """A loop is a 1-simplex with both faces the identity vertex."""
        return (self.face(1, 0, data) == self.one(0)
                and self.face(1, 1, data) == self.one(0))

    def loops(self):
        return [g for g in self.simplices(1) if self.is_loop(g)]

    def check_group(self, samples):
        for p, x, y, z in samples:
            assert self.mul(p, x, self.one(p)) == x
            assert self.mul(p, self.one(p), x) == x
            assert self.mul(p, x, self.inv(p, x)) == self.one(p)
            assert self.mul(p, self.mul(p, x, y), z) == \
                self.mul(p, x, self.mul(p, y, z))
            for i in range(p + 1):
                assert self.face(p, i, self.mul(p, x, y)) == \
                    self.mul(p - 1, self.face(p, i, x), self.face(p, i, y))
            for i in range(p + 1):
                assert self.degeneracy(p, i, self.mul(p, x, y)) == \
                    self.mul(p + 1, self.degeneracy(p, i, x),
                             self.degeneracy(p, i, y))
        return True


class ConstantGroup(SimplicialGroup):
    """The constant simplicial group of a finite abelian group Z_m1 x ...;
    elements are tuples of residues in every degree."""

    def __init__(self, field, moduli):
        super().__init__(field)
        self.moduli = tuple(moduli)

    def face(self, p, i, data):
        return data

    def degeneracy(self, p, i, data):
        return data

    def simplices(self, p):
        def rec(i):
            if i == len(self.moduli):
                yield ()
                return
            for rest in rec(i + 1):
                for v in range(self.moduli[i]):
                    yield (v,) + rest
        return rec(0)

    def is_degenerate(self, p, data):
        return p > 0

    def mul(self, p, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def inv(self, p, x):
        return tuple((-a) % m for a, m in zip(x, self.moduli))

    def one(self, p):
        return (0,) * len(self.moduli)


class ConstantFreeAbelian(SimplicialGroup):
    """The constant simplicial group Z^n (lazy; not enumerable)."""

    def __init__(self, field, rank):
        super().__init__(field)
        self.rank = rank

    def face(self, p, i, data):
        return data

    def degeneracy(self, p, i, data):
        return data

    def is_degenerate(self, p, data):
        return p > 0

    def mul(self, p, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv(self, p, x):
        return tuple(-a for a in x)

    def one(self, p):
        return (0,) * self.rank


class ProductGroup(SimplicialGroup):
    def __init__(self, G, H):
        super().__init__(G.field)
        self.G = G
        self.H = H

    def face(self, p, i, data):
        return (self.G.face(p, i, data[0]), self.H.face(p, i, data[1]))

    def degeneracy(self, p, i, data):
        return (self.G.degeneracy(p, i, data[0]),
                self.H.degeneracy(p, i, data[1]))

    def simplices(self, p):
        for x in self.G.simplices(p):
            for y in self.H.simplices(p):
                yield (x, y)

    def mul(self, p, x, y):
        return (self.G.mul(p, x[0], y[0]), self.H.mul(p, x[1], y[1]))

    def inv(self, p, x):
        return (self.G.inv(p, x[0]), self.H.inv(p, x[1]))

    def one(self, p):
        return (self.G.one(p), self.H.one(p))


def degeneracies_except(space, data, n, m):
    """s_{<n> minus m} applied to a 1-simplex: the n+1 simplex obtained by
    applying s_i for i in {0..n}, i != m, ascending."""
    dim = 1
    out = data
    for i in range(0, n + 1):
        if i == m:
            continue
        out = space.degeneracy(dim, i, out)
        dim += 1
    return out


def loop_action_summand(G, X, action, gdata, m, key):
    """a^g_m(sigma) = (s_{<n>\\m} g) . s_m sigma as a chain of X."""
    n = key.degree
    gsimp = degeneracies_except(G, gdata, n, m)
    s_m_sigma = X.degeneracy(n, m, key.data)
    acted = action(n + 1, gsimp, s_m_sigma)
    return X.chain(n + 1, acted)


def loop_shuffle_action(G, X, action, gdata, key):
    """g * sigma = sum_m (-1)^m a^g_m(sigma)."""
    field = X.field
    out = GradedElement(field)
    sign = field.one
    for m in range(key.degree + 1):
        out.add_in(loop_action_summand(G, X, action, gdata, m, key), sign)
        sign = field.neg(sign)
    return out


def pontryagin_product(G, xe, ye):
    """The product on C(G): shuffle into C(G x G) then multiply."""
    prod = ProductSpace(G, G)
    field = G.field
    out = GradedElement(field)
    sh = shuffle_elements(xe, ye, prod)
    for k, c in sh.terms.items():
        x, y = k.data
        out.add_in(G.chain(k.degree, G.mul(k.degree, x, y)), c)
    return out


def group_action_on_chains(G, X, action, ge, xe):
    """a * c for chains a on G and c on a G-space X (shuffle then act)."""
    prod = ProductSpace(G, X)
    field = X.field
    out = GradedElement(field)
    sh = shuffle_elements(ge, xe, prod)
    for k, c in sh.terms.items():
        g, x = k.data
        out.add_in(X.chain(k.degree, action(k.degree, g, x)), c)
    return out


# ---------------------------------------------------------------------------
# Dual-basis cochain algebra for degreewise finite spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualKey:
    simplex: SimplexKey

    @property
    def degree(self):
        return self.simplex.degree

    def __repr__(self):
        return f"{self.simplex!r}*"


class DualCochainDga:
    """C*(X) on the dual basis of nondegenerate simplices (finite slices).

    A cochain-type dga (ddeg = +1) for bar constructions and homology; the
    hga operations are computed through the functional interval-cut core.
    X must be reduced for the unit/augmentation to be basis-adapted.
    """

    ddeg = 1
    commutative = False

    def __init__(self, X, truncation):
        self.X = X
        self.field = X.field
        self.truncation = truncation
        base = X.basepoint()
        self.base_key = DualKey(X.key(0, base))
        self.reduced_space = len(X.nondegenerate(0)) == 1
        # on a reduced space the unit is a basis key (bar constructions
        # need this); otherwise the unit is the sum of all vertex duals
        self.unit_key = self.base_key if self.reduced_space else None
        self.hga = CochainHga(X)
        self._mul_memo = {}
        self._diff_memo = {}
        self._cob_index = {}
        self._cup_index = {}

    @property
    def simply_connected(self):
        return len(self.X.nondegenerate(1)) == 0

    def basis(self, degree):
        if degree < 0 or degree > self.truncation:
            return []
        return [DualKey(self.X.key(degree, x))
                for x in self.X.nondegenerate(degree)]

    def functional(self, elem, degree=None):
        """A GradedElement over DualKeys as a computable Cochain."""
        if degree is None:
            degree = elem.degree()
        if degree is None:
            return zero_cochain(self.X, 0)

        def fn(key):
            return elem.coeff(DualKey(key))

        return Cochain(self.X, degree, fn)

    def vectorize(self, cochain):
        """Evaluate a functional cochain on the degree slice."""
        out = GradedElement(self.field)
        for x in self.X.nondegenerate(cochain.degree):
            key = self.X.key(cochain.degree, x)
            v = cochain(key)
            if v != self.field.zero:
                out.add_in(GradedElement.single(self.field, DualKey(key), v))
        return out

    def _coboundary_index(self, degree):
        """Transpose of the boundary: face key -> [(simplex key, coeff)].

        One pass over the (degree+1)-slice instead of one scan per dual."""
        got = self._cob_index.get(degree)
        if got is None:
            got = {}
            field = self.field
            sgn_flip = field.neg(field.one) if degree % 2 == 0 else field.one
            # (d a)(s) = (-1)^{|a|+1} a(ds): |a| = degree
            for x in self.X.nondegenerate(degree + 1):
                skey = self.X.key(degree + 1, x)
                for fk, c in self.X.boundary_key(skey).terms.items():
                    got.setdefault(fk, []).append(
                        (skey, field.mul(sgn_flip, c)))
            self._cob_index[degree] = got
        return got

    def diff_key(self, key):
        got = self._diff_memo.get(key)
        if got is None:
            out = GradedElement(self.field)
            for skey, c in self._coboundary_index(key.degree).get(
                    key.simplex, []):
                out.add_in(GradedElement.single(self.field, DualKey(skey)), c)
            got = out
            self._diff_memo[key] = got
        return got

    def d(self, x):
        return x.map_keys(self.diff_key)

    def _cup_index_for(self, degree):
        """(front key, back key) -> vector of duals of the total simplices."""
        got = self._cup_index.get(degree)
        if got is None:
            got = {}
            field = self.field
            for x in self.X.nondegenerate(degree):
                skey = self.X.key(degree, x)
                for k in range(degree + 1):
                    for t, c in partial_diagonal(skey, k).terms.items():
                        front, back = t.parts
                        # Koszul pairing sign (-1)^{|b||front|}
                        sgn = field.neg(field.one) \
                            if (back.degree % 2 and front.degree % 2) \
                            else field.one
                        got.setdefault((front, back), GradedElement(field)) \
                            .add_in(GradedElement.single(
                                field, DualKey(skey)), field.mul(sgn, c))
            self._cup_index[degree] = got
        return got

    def mul_keys(self, k1, k2):
        got = self._mul_memo.get((k1, k2))
        if got is None:
            target = k1.degree + k2.degree
            if target > self.truncation:
                raise StructuralError(
                    f"cochain product beyond truncation {self.truncation}")
            got = self._cup_index_for(target).get(
                (k1.simplex, k2.simplex), GradedElement(self.field))
            self._mul_memo[(k1, k2)] = got
        return got

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

    def zero(self):
        return GradedElement(self.field)

    def one(self):
        out = GradedElement(self.field)
        for x in self.X.nondegenerate(0):
            out.add_in(GradedElement.single(self.field, DualKey(self.X.key(0, x))))
        return out

    def aug_key(self, key):
        # evaluation at the basepoint vertex
        return self.field.one if key == self.base_key else self.field.zero

    def aug(self, x):
        return x.coeff(self.base_key)

    def reduced(self, x):
        s = self.aug(x)
        if s == self.field.zero:
            return x
        return x - self.one().scale(s)

    def element(self, key, coeff=None):
        return GradedElement.single(self.field, key, coeff)

    def random_element(self, degree, rng, terms=3, coeffs=(-2, -1, 1, 2)):
        keys = list(self.basis(degree))
        if not keys:
            return self.zero()
        out = GradedElement(self.field)
        for _ in range(min(terms, len(keys))):
            out.add_in(GradedElement.single(
                self.field, rng.choice(keys),
                self.field.of(rng.choice(coeffs))))
        return out

    # hga operations on vectors, through the functional core -------------
    def E(self, k, a_vec, b_vecs):
        if k == 0:
            return a_vec
        degs = [a_vec.degree()] + [b.degree() for b in b_vecs]
        if any(d is None for d in degs):
            return self.zero()
        c = self.hga.E(k, self.functional(a_vec),
                       [self.functional(b) for b in b_vecs])
        if c.degree < 0:
            return self.zero()
        return self.vectorize(c)

    def F(self, k, l, a_vecs, b_vecs):
        degs = [a.degree() for a in a_vecs] + [b.degree() for b in b_vecs]
        if any(d is None for d in degs):
            return self.zero()
        c = self.hga.F(k, l, [self.functional(a) for a in a_vecs],
                       [self.functional(b) for b in b_vecs])
        if c.degree < 0:
            return self.zero()
        return self.vectorize(c)


def chain_complex_homology(X, max_degree, field=None):
    """Homology of the normalized chains of X up to max_degree.

    One extra degree is enumerated so the boundaries into max_degree are
    complete; the artifact top degree is dropped from the result."""
    field = field or X.field
    basis = {}
    for d in range(0, max_degree + 2):
        basis[d] = [X.key(d, x) for x in X.nondegenerate(d)]

    def diff(key):
        return X.boundary_key(key).terms

    res = homology(basis, diff, field, ddeg=-1)
    res.dims.pop(max_degree + 1, None)
    res.representatives.pop(max_degree + 1, None)
    return res


def cochain_complex_homology(X, max_degree, field=None):
    """Cohomology of C*(X) up to max_degree - 1 (needs one extra slice).

    Works for any degreewise finite space (no reducedness needed)."""
    field = field or X.field
    basis = {d: [DualKey(X.key(d, x)) for x in X.nondegenerate(d)]
             for d in range(0, max_degree + 1)}

    def diff(key):
        c = coboundary(dual_cochain(key.simplex))
        out = {}
        for x in X.nondegenerate(c.degree):
            k = X.key(c.degree, x)
            v = c(k)
            if v != field.zero:
                out[DualKey(k)] = v
        return out

    return homology(basis, diff, field, ddeg=1)
