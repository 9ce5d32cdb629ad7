"""Exact rational linear algebra.

Everything downstream (homology, brackets, Dirac verdicts) reduces to the
operations here: reduced row echelon form, nullspaces, row-span membership
and quotient bases, all over Q with no rounding ever.

Matrices are immutable (tuples of tuples of ``mpq``).  Pivoting is
deterministic: the pivot for each column is the first row, in order, with a
nonzero entry, so every basis this module produces is reproducible.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)

#: above this many entries rref switches to a dict-of-nonzeros row store;
#: both paths run the identical elimination and give identical results.
SPARSE_THRESHOLD = 10**6


def rat(x) -> Q:
    """Coerce ints, strings like ``"p/q"``, or rationals to an exact rational."""
    try:
        return Q(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ExactLinError(f"not a rational: {x!r}") from exc


def rat_str(x) -> str:
    """Canonical serialization: ``"p/q"`` in lowest terms, ``"p"`` when q = 1."""
    return str(Q(x))


def vec(entries: Iterable) -> tuple:
    return tuple(Q(x) for x in entries)


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))

def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))

def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)

def vec_dot(u: Sequence, v: Sequence):
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s

def vec_is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


class ExactLinError(ValueError):
    pass


class QMatrix:
    """Immutable matrix of exact rationals.

    ``cols`` must be given explicitly when there are no rows, so that empty
    bases still know the dimension of the ambient space.
    """

    __slots__ = ("data", "rows", "cols")

    def __init__(self, data: Iterable[Iterable], cols: Optional[int] = None):
        rows = tuple(tuple(Q(x) for x in r) for r in data)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ExactLinError("ragged rows")
            if cols is not None and cols != ncols:
                raise ExactLinError("cols mismatch")
        else:
            if cols is None:
                raise ExactLinError("empty matrix needs explicit cols")
            ncols = cols
        object.__setattr__(self, "data", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)

    def __setattr__(self, *a):
        raise AttributeError("QMatrix is immutable")

    def __getitem__(self, i):
        return self.data[i]

    def __iter__(self):
        return iter(self.data)

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.cols == other.cols
                and self.data == other.data)

    def __hash__(self):
        return hash((self.cols, self.data))

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols})"

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix([[ONE if i == j else ZERO for j in range(n)]
                        for i in range(n)], cols=n)

    @staticmethod
    def zero(rows: int, cols: int) -> "QMatrix":
        return QMatrix([[ZERO] * cols for _ in range(rows)], cols=cols)

    def transpose(self) -> "QMatrix":
        return QMatrix([[self.data[i][j] for i in range(self.rows)]
                        for j in range(self.cols)], cols=self.rows)

    def to_lists(self):
        return [list(r) for r in self.data]


def stack(*mats: QMatrix) -> QMatrix:
    cols = {m.cols for m in mats}
    if len(cols) != 1:
        raise ExactLinError("stack: column mismatch")
    rows = []
    for m in mats:
        rows.extend(m.data)
    return QMatrix(rows, cols=cols.pop())


def mat_vec(M: QMatrix, v: Sequence) -> tuple:
    """M applied to v as a column vector (length M.cols -> length M.rows)."""
    if len(v) != M.cols:
        raise ExactLinError("mat_vec: dimension mismatch")
    return tuple(vec_dot(row, v) for row in M.data)


def row_combination(c: Sequence, M: QMatrix) -> tuple:
    """c . M, the linear combination of the rows of M with coefficients c."""
    if len(c) != M.rows:
        raise ExactLinError("row_combination: dimension mismatch")
    out = [ZERO] * M.cols
    for ci, row in zip(c, M.data):
        if ci:
            for k, x in enumerate(row):
                if x:
                    out[k] += ci * x
    return tuple(out)


# ---------------------------------------------------------------------------
# RREF

def _rref_dense(rows, cols, transform):
    n = len(rows)
    T = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)] \
        if transform else None
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, n):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            if T is not None:
                T[r], T[pr] = T[pr], T[r]
        pv = rows[r][c]
        if pv != 1:
            inv = 1 / pv
            rows[r] = [x * inv for x in rows[r]]
            if T is not None:
                T[r] = [x * inv for x in T[r]]
        prow = rows[r]
        for i in range(n):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                ri = rows[i]
                for k in range(c, cols):
                    x = prow[k]
                    if x:
                        ri[k] -= f * x
                if T is not None:
                    ti, tr = T[i], T[r]
                    for k in range(n):
                        x = tr[k]
                        if x:
                            ti[k] -= f * x
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, T, pivots


def _rref_sparse(rows, cols, transform):
    # identical elimination order on a dict-of-nonzeros row store
    n = len(rows)
    srows = [{k: x for k, x in enumerate(r) if x} for r in rows]
    T = [{i: ONE} for i in range(n)] if transform else None
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, n):
            if srows[i].get(c):
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            srows[r], srows[pr] = srows[pr], srows[r]
            if T is not None:
                T[r], T[pr] = T[pr], T[r]
        pv = srows[r][c]
        if pv != 1:
            inv = 1 / pv
            srows[r] = {k: x * inv for k, x in srows[r].items()}
            if T is not None:
                T[r] = {k: x * inv for k, x in T[r].items()}
        prow = srows[r]
        for i in range(n):
            if i == r:
                continue
            f = srows[i].get(c)
            if f:
                ri = srows[i]
                for k, x in prow.items():
                    y = ri.get(k, ZERO) - f * x
                    if y:
                        ri[k] = y
                    elif k in ri:
                        del ri[k]
                if T is not None:
                    ti = T[i]
                    for k, x in T[r].items():
                        y = ti.get(k, ZERO) - f * x
                        if y:
                            ti[k] = y
                        elif k in ti:
                            del ti[k]
        pivots.append(c)
        r += 1
        if r == n:
            break
    dense = [[srows[i].get(k, ZERO) for k in range(cols)] for i in range(n)]
    Td = None
    if T is not None:
        Td = [[T[i].get(k, ZERO) for k in range(n)] for i in range(n)]
    return dense, Td, pivots


def _run_rref(M: QMatrix, transform: bool, force_sparse: Optional[bool] = None):
    rows = [list(r) for r in M.data]
    sparse = (M.rows * M.cols > SPARSE_THRESHOLD) if force_sparse is None \
        else force_sparse
    if sparse:
        rows, T, pivots = _rref_sparse(rows, M.cols, transform)
    else:
        rows, T, pivots = _rref_dense(rows, M.cols, transform)
    return rows, T, pivots


def rref(M: QMatrix, force_sparse: Optional[bool] = None):
    """Reduced row echelon form.

    Returns ``(R, pivots, rank)`` with pivot columns ascending.
    """
    rows, _, pivots = _run_rref(M, transform=False, force_sparse=force_sparse)
    return QMatrix(rows, cols=M.cols), tuple(pivots), len(pivots)


def rref_transform(M: QMatrix):
    """RREF with the row transform: returns ``(R, T, pivots, rank)``, R = T.M."""
    rows, T, pivots = _run_rref(M, transform=True)
    return (QMatrix(rows, cols=M.cols), QMatrix(T, cols=M.rows),
            tuple(pivots), len(pivots))


def rank(M: QMatrix) -> int:
    return rref(M)[2]


def row_space(M: QMatrix) -> QMatrix:
    """Canonical (RREF) basis of the row span."""
    R, _, rk = rref(M)
    return QMatrix(R.data[:rk], cols=M.cols)


def nullspace(M: QMatrix) -> QMatrix:
    """Canonical basis of {x : Mx = 0}, free variables set to 1 in ascending
    column order; rows of the result are the basis vectors."""
    R, pivots, rk = rref(M)
    pivot_set = set(pivots)
    free = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        x = [ZERO] * M.cols
        x[fc] = ONE
        for j, pc in enumerate(pivots):
            x[pc] = -R[j][fc]
        basis.append(x)
    return QMatrix(basis, cols=M.cols)


def membership(v: Sequence, S: QMatrix) -> Optional[tuple]:
    """Coefficients c with c.S = v when v is in the row span of S, else None."""
    v = vec(v)
    if len(v) != S.cols:
        raise ExactLinError("membership: dimension mismatch")
    if S.rows == 0:
        return () if vec_is_zero(v) else None
    R, T, pivots, rk = rref_transform(S)
    w = list(v)
    c_r = [ZERO] * rk
    for j, pc in enumerate(pivots):
        f = w[pc]
        if f:
            c_r[j] = f
            row = R[j]
            for k in range(pc, len(w)):
                x = row[k]
                if x:
                    w[k] -= f * x
    if not all(a == 0 for a in w):
        return None
    # coefficients over the original rows of S
    out = [ZERO] * S.rows
    for j in range(rk):
        f = c_r[j]
        if f:
            trow = T[j]
            for k in range(S.rows):
                x = trow[k]
                if x:
                    out[k] += f * x
    return tuple(out)


def in_row_span(v: Sequence, S: QMatrix) -> bool:
    return membership(v, S) is not None


def span_equal(A: QMatrix, B: QMatrix) -> bool:
    if A.cols != B.cols:
        return False
    return row_space(A) == row_space(B)


def span_contains(A: QMatrix, B: QMatrix) -> bool:
    """Every row of B lies in the row span of A."""
    return rank(A) == rank(stack(A, B))


def make_reducer(B: QMatrix) -> Callable[[Sequence], tuple]:
    """Coordinate map onto the rows of B (must be linearly independent).

    The returned callable maps any v in rowspan(B) to the unique c with
    c.B = v, in O(rows x cols) per call; raises ExactLinError outside the span.
    """
    R, T, pivots, rk = rref_transform(B)
    if rk != B.rows:
        raise ExactLinError("make_reducer: rows are dependent")
    rdata = R.data
    tdata = T.data
    ncols = B.cols
    nrows = B.rows

    def reduce(v: Sequence) -> tuple:
        if len(v) != ncols:
            raise ExactLinError("reduce: dimension mismatch")
        w = list(Q(x) for x in v)
        c_r = [ZERO] * rk
        for j, pc in enumerate(pivots):
            f = w[pc]
            if f:
                c_r[j] = f
                row = rdata[j]
                for k in range(pc, ncols):
                    x = row[k]
                    if x:
                        w[k] -= f * x
        if not all(a == 0 for a in w):
            raise ExactLinError("reduce: vector outside the span")
        out = [ZERO] * nrows
        for j in range(rk):
            f = c_r[j]
            if f:
                trow = tdata[j]
                for k in range(nrows):
                    x = trow[k]
                    if x:
                        out[k] += f * x
        return tuple(out)

    return reduce


def quotient_basis(space: QMatrix, subspace: QMatrix):
    """Coset representatives of rowspan(space) / rowspan(subspace).

    Returns ``(reps, reduce)``: reps complete a basis of the subspace to a
    basis of the space, and ``reduce`` maps any vector of the space to its
    coordinates over reps modulo the subspace.
    """
    if space.cols != subspace.cols:
        raise ExactLinError("quotient_basis: column mismatch")
    if not span_contains(space, subspace):
        raise ExactLinError("quotient_basis: subspace not contained in space")
    Rsub = row_space(subspace)
    Rsp = row_space(space)
    # keep the canonical space-basis rows that grow the span beyond Rsub
    kept = []
    echelon = QMatrix(Rsub.data, cols=space.cols)
    for row in Rsp.data:
        if not in_row_span(row, echelon):
            kept.append(row)
            echelon = stack(echelon, QMatrix([row], cols=space.cols))
    reps = QMatrix(kept, cols=space.cols)
    nreps = reps.rows
    if nreps + Rsub.rows == 0:
        def reduce_zero(v):
            if not vec_is_zero(vec(v)):
                raise ExactLinError("reduce: vector outside the span")
            return ()
        return reps, reduce_zero
    full = stack(reps, Rsub) if nreps else Rsub
    coords = make_reducer(full)

    def reduce(v: Sequence) -> tuple:
        return coords(v)[:nreps]

    return reps, reduce
