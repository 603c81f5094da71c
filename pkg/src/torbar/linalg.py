"""Exact Gaussian elimination over a field and homology of bounded complexes.

Matrices are lists of sparse rows (dict col -> coeff).  Everything is
exact; there are no tolerances anywhere.
"""


class StructuralError(Exception):
    """Raised when a complex fails d*d = 0, naming the offending key."""


def row_reduce(rows, field):
    """Row echelon form.  Returns (pivots, reduced_rows).

    pivots is a list of (row_index, col) in elimination order; reduced_rows
    are the nonzero echelon rows (each scaled to pivot 1).
    """
    echelon = []          # list of (pivot_col, row_dict)
    for row in rows:
        row = dict(row)
        for pc, er in echelon:
            c = row.get(pc)
            if c is not None:
                for k, v in er.items():
                    nv = field.sub(row.get(k, field.zero), field.mul(c, v))
                    if nv == field.zero:
                        row.pop(k, None)
                    else:
                        row[k] = nv
        if row:
            pc = min(row, key=repr)  # deterministic pivot choice
            inv = field.inv(row[pc])
            row = {k: field.mul(inv, v) for k, v in row.items()}
            echelon.append((pc, row))
    return echelon


def rank(rows, field):
    return len(row_reduce(rows, field))


def rank_dense_oracle(rows, field, ncols_keys):
    """Naive dense rank over the same field, for cross-checking."""
    cols = list(ncols_keys)
    idx = {c: i for i, c in enumerate(cols)}
    dense = [[field.zero] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for k, v in r.items():
            dense[i][idx[k]] = v
    r = 0
    m = len(dense)
    for c in range(len(cols)):
        piv = None
        for i in range(r, m):
            if dense[i][c] != field.zero:
                piv = i
                break
        if piv is None:
            continue
        dense[r], dense[piv] = dense[piv], dense[r]
        inv = field.inv(dense[r][c])
        dense[r] = [field.mul(inv, x) for x in dense[r]]
        for i in range(m):
            if i != r and dense[i][c] != field.zero:
                f = dense[i][c]
                dense[i] = [field.sub(x, field.mul(f, y))
                            for x, y in zip(dense[i], dense[r])]
        r += 1
    return r


class ReducedSpace:
    """Echelonized span of sparse vectors; supports membership and reduction."""

    def __init__(self, field):
        self.field = field
        self.echelon = []  # (pivot_col, row_dict)

    def reduce(self, vec):
        field = self.field
        vec = dict(vec)
        for pc, er in self.echelon:
            c = vec.get(pc)
            if c is not None:
                for k, v in er.items():
                    nv = field.sub(vec.get(k, field.zero), field.mul(c, v))
                    if nv == field.zero:
                        vec.pop(k, None)
                    else:
                        vec[k] = nv
        return vec

    def add(self, vec):
        """Reduce and insert; returns True if the vector was new."""
        vec = self.reduce(vec)
        if not vec:
            return False
        pc = min(vec, key=repr)
        inv = self.field.inv(vec[pc])
        vec = {k: self.field.mul(inv, v) for k, v in vec.items()}
        # insertion order is the reduction order; do not reorder
        self.echelon.append((pc, vec))
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    @property
    def dim(self):
        return len(self.echelon)


def kernel_basis(rows_by_colkey, field, col_keys):
    """Kernel of the matrix whose column at key k is rows_by_colkey[k].

    Columns are vectors (dict rowkey -> coeff); returns a list of kernel
    vectors as dicts col_key -> coeff.
    """
    # Transpose-free: eliminate columns left to right, tracking combinations.
    combos = []   # parallel to processed columns: dict colkey -> coeff
    echelon = []  # (pivot_rowkey, column_dict, combo)
    kernel = []
    for ck in col_keys:
        col = dict(rows_by_colkey[ck])
        combo = {ck: field.one}
        for pr, ec, ecombo in echelon:
            c = col.get(pr)
            if c is not None:
                for k, v in ec.items():
                    nv = field.sub(col.get(k, field.zero), field.mul(c, v))
                    if nv == field.zero:
                        col.pop(k, None)
                    else:
                        col[k] = nv
                for k, v in ecombo.items():
                    nv = field.sub(combo.get(k, field.zero), field.mul(c, v))
                    if nv == field.zero:
                        combo.pop(k, None)
                    else:
                        combo[k] = nv
        if not col:
            kernel.append(combo)
        else:
            pr = min(col, key=repr)
            inv = field.inv(col[pr])
            col = {k: field.mul(inv, v) for k, v in col.items()}
            combo = {k: field.mul(inv, v) for k, v in combo.items()}
            echelon.append((pr, col, combo))
    return kernel


def _sorted_keys(keys):
    return sorted(keys, key=repr)


def express_class(z, reps, boundary_space, field):
    """Coordinates of the cycle z in the homology basis `reps`.

    `boundary_space` is a ReducedSpace of boundaries; returns a list of
    coefficients, or None if z is not in the span (which would contradict
    z being a cycle when reps is a full basis)."""
    space = ReducedSpace(field)
    for _, row in boundary_space.echelon:
        space.add(dict(row))
    combos = []
    for i, r in enumerate(reps):
        vec = space.reduce(r)
        if not vec:
            combos.append(None)
            continue
        pc = min(vec, key=repr)
        inv = field.inv(vec[pc])
        vec = {k: field.mul(inv, v) for k, v in vec.items()}
        space.echelon.append((pc, vec))
        combos.append((pc, inv, i))
    # reduce z, tracking which representative rows get used
    vec = dict(z)
    coords = [field.zero] * len(reps)
    for pc, row in space.echelon:
        c = vec.get(pc)
        if c is None:
            continue
        hit = next((t for t in combos if t is not None and t[0] == pc), None)
        for k, v in row.items():
            nv = field.sub(vec.get(k, field.zero), field.mul(c, v))
            if nv == field.zero:
                vec.pop(k, None)
            else:
                vec[k] = nv
        if hit is not None:
            coords[hit[2]] = field.add(coords[hit[2]],
                                       field.mul(c, hit[1]))
    if vec:
        return None
    return coords


class HomologyResult:
    def __init__(self, dims, representatives):
        self.dims = dims                      # degree -> dimension
        self.representatives = representatives  # degree -> list of vectors

    def __repr__(self):
        return f"HomologyResult({self.dims})"


def homology(basis_by_degree, diff, field, check_d2=True, ddeg=None):
    """Homology of a complex given by per-degree bases and a differential.

    `basis_by_degree`: dict degree -> list of keys.
    `diff(key)`: GradedElement-like dict of the differential of a basis key
      (plain dict key -> coeff).
    `ddeg` is the differential's shift in the *grading of the dict*; when
    omitted it is inferred from key degrees (valid only when the dict is
    graded by key degree).  Returns dims and representative cycles.
    """
    degrees = sorted(basis_by_degree)
    images = {}       # degree d -> ReducedSpace of boundaries landing in d
    columns = {}      # degree d -> {key: column dict} of d restricted to d
    if ddeg is None:
        for d in degrees:
            for k in basis_by_degree[d]:
                v = diff(k)
                if v:
                    tdeg = next(iter(v)).degree
                    ddeg = tdeg - d
                    break
            if ddeg is not None:
                break
    if ddeg is None:
        ddeg = 1  # zero differential; direction irrelevant
    for d in degrees:
        cols = {}
        img = images.setdefault(d + ddeg, ReducedSpace(field))
        for k in basis_by_degree[d]:
            col = diff(k)
            cols[k] = col
            if col:
                img.add(col)
        columns[d] = cols
    if check_d2:
        for d in degrees:
            if d + ddeg not in basis_by_degree:
                continue
            for k in basis_by_degree[d]:
                acc = {}
                for k2, c in columns[d][k].items():
                    for k3, c2 in columns[d + ddeg].get(k2, {}).items():
                        nv = field.add(acc.get(k3, field.zero), field.mul(c, c2))
                        if nv == field.zero:
                            acc.pop(k3, None)
                        else:
                            acc[k3] = nv
                if acc:
                    raise StructuralError(f"d*d != 0 on basis key {k!r}")
    dims = {}
    reps = {}
    for d in degrees:
        if d - ddeg in basis_by_degree or d + ddeg in basis_by_degree or True:
            kern = kernel_basis(columns[d], field,
                                _sorted_keys(basis_by_degree[d]))
            img = images.get(d)
            space = ReducedSpace(field)
            if img is not None:
                for _, row in img.echelon:
                    space.add(row)
            nb = space.dim
            chosen = []
            for v in kern:
                if space.add(v):
                    chosen.append(v)
            dims[d] = len(kern) - nb
            assert dims[d] == len(chosen)
            reps[d] = chosen
    return HomologyResult(dims, reps)
