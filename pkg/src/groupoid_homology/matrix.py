"""Exact dense integer matrices and Smith normal form.

Everything here is plain unbounded-integer arithmetic: no floats, no
machine-word moduli.  Matrices are small enough at desk scale that a dense
list-of-rows representation with a couple of sparse fast paths is all the
performance engineering needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class IntegerMatrix:
    """A rows x cols matrix of unbounded integers.

    Treated as immutable by convention: none of the public methods mutate
    `self`, and hot internal algorithms work on copies of the row lists.
    """

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, entries: Sequence[int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        if entries is None:
            self._rows = [[0] * cols for _ in range(rows)]
        else:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise ValueError(
                    f"shape mismatch: {rows}x{cols} needs {rows * cols} entries, got {len(entries)}"
                )
            self._rows = [entries[i * cols:(i + 1) * cols] for i in range(rows)]

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows_list: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows_list = [list(r) for r in rows_list]
        if rows_list:
            c = len(rows_list[0])
            if any(len(r) != c for r in rows_list):
                raise ValueError("shape mismatch: ragged rows")
        else:
            c = 0 if cols is None else cols
        m = cls.__new__(cls)
        m.rows = len(rows_list)
        m.cols = c
        m._rows = rows_list
        return m

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        m = cls(n, n)
        for i in range(n):
            m._rows[i][i] = 1
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols)

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag: Sequence[int]) -> "IntegerMatrix":
        m = cls(rows, cols)
        for i, d in enumerate(diag):
            m._rows[i][i] = d
        return m

    @classmethod
    def column_vector(cls, v: Sequence[int]) -> "IntegerMatrix":
        return cls.from_rows([[x] for x in v], cols=1)

    # -- basic access ------------------------------------------------------

    @property
    def entries(self) -> list[int]:
        """Entries in row-major order (the serialization format)."""
        return [x for row in self._rows for x in row]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._rows[i][j]

    def row(self, i: int) -> list[int]:
        return list(self._rows[i])

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self._rows]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def copy(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([row[:] for row in self._rows], cols=self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._rows == other._rows

    __hash__ = None  # mutable internals; equality is structural

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}x{self.cols})"

    def __str__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"({self.rows}x{self.cols} empty)"
        widths = [max(len(str(self._rows[i][j])) for i in range(self.rows)) for j in range(self.cols)]
        lines = []
        for row in self._rows:
            lines.append("[ " + "  ".join(str(x).rjust(w) for x, w in zip(row, widths)) + " ]")
        return "\n".join(lines)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._check_same_shape(other)
        return IntegerMatrix.from_rows(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)],
            cols=self.cols,
        )

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._check_same_shape(other)
        return IntegerMatrix.from_rows(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)],
            cols=self.cols,
        )

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([[-x for x in row] for row in self._rows], cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerMatrix.from_rows(
                [[x * other for x in row] for row in self._rows], cols=self.cols
            )
        if isinstance(other, IntegerMatrix):
            return self.matmul(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def matmul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        bt = [other.column(j) for j in range(other.cols)]
        out = [
            [sum(a * b for a, b in zip(row, col)) for col in bt]
            for row in self._rows
        ]
        return IntegerMatrix.from_rows(out, cols=other.cols)

    def mul_vector(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} applied to length-{len(v)} vector")
        return [sum(a * b for a, b in zip(row, v)) for row in self._rows]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(
            [[self._rows[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def mod(self, q: int) -> "IntegerMatrix":
        """Entries reduced into the canonical residues 0..q-1 (q >= 1)."""
        if q < 1:
            raise ValueError("modulus must be >= 1")
        return IntegerMatrix.from_rows([[x % q for x in row] for row in self._rows], cols=self.cols)

    # -- block assembly ----------------------------------------------------

    @staticmethod
    def hstack(blocks: Sequence["IntegerMatrix"]) -> "IntegerMatrix":
        blocks = list(blocks)
        if not blocks:
            raise ValueError("hstack of no blocks")
        r = blocks[0].rows
        if any(b.rows != r for b in blocks):
            raise ValueError("shape mismatch: hstack row counts differ")
        rows = [[x for b in blocks for x in b._rows[i]] for i in range(r)]
        return IntegerMatrix.from_rows(rows, cols=sum(b.cols for b in blocks))

    @staticmethod
    def vstack(blocks: Sequence["IntegerMatrix"]) -> "IntegerMatrix":
        blocks = list(blocks)
        if not blocks:
            raise ValueError("vstack of no blocks")
        c = blocks[0].cols
        if any(b.cols != c for b in blocks):
            raise ValueError("shape mismatch: vstack column counts differ")
        rows = [row[:] for b in blocks for row in b._rows]
        return IntegerMatrix.from_rows(rows, cols=c)

    @staticmethod
    def block_diag(blocks: Sequence["IntegerMatrix"]) -> "IntegerMatrix":
        blocks = list(blocks)
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        m = IntegerMatrix(rows, cols)
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.rows):
                m._rows[i0 + i][j0:j0 + b.cols] = b._rows[i]
            i0 += b.rows
            j0 += b.cols
        return m

    def submatrix_columns(self, col_indices: Sequence[int]) -> "IntegerMatrix":
        idx = list(col_indices)
        return IntegerMatrix.from_rows([[row[j] for j in idx] for row in self._rows], cols=len(idx))

    def _check_same_shape(self, other: "IntegerMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")


@dataclass
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal.

    `diag` is the full diagonal of D (length min(rows, cols)): a divisibility
    chain d_1 | d_2 | ... with any zeros trailing.  `uinv`/`vinv` are the exact
    inverses of U/V, tracked on request.
    """

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    diag: list[int]
    uinv: IntegerMatrix | None = None
    vinv: IntegerMatrix | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


def smith_normal_form(
    m: IntegerMatrix, *, want_uinv: bool = False, want_vinv: bool = False
) -> SmithDecomposition:
    """Smith normal form by smallest-|pivot| selection with full reduction.

    Always returns U, D, V; inverses are tracked only when requested (they
    roughly double the bookkeeping cost).
    """
    rows, cols = m.rows, m.cols
    a = [row[:] for row in m._rows]
    U = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    V = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    Ui = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)] if want_uinv else None
    Vi = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)] if want_vinv else None

    def row_sub(i: int, p: int, q: int) -> None:  # row i -= q * row p
        a[i] = [x - q * y for x, y in zip(a[i], a[p])]
        U[i] = [x - q * y for x, y in zip(U[i], U[p])]
        if Ui is not None:
            for k in range(rows):
                Ui[k][p] += q * Ui[k][i]

    def row_swap(i: int, p: int) -> None:
        a[i], a[p] = a[p], a[i]
        U[i], U[p] = U[p], U[i]
        if Ui is not None:
            for k in range(rows):
                Ui[k][i], Ui[k][p] = Ui[k][p], Ui[k][i]

    def row_neg(i: int) -> None:
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        if Ui is not None:
            for k in range(rows):
                Ui[k][i] = -Ui[k][i]

    def col_sub(j: int, p: int, q: int) -> None:  # col j -= q * col p
        for row in a:
            row[j] -= q * row[p]
        for row in V:
            row[j] -= q * row[p]
        if Vi is not None:
            Vi[p] = [x + q * y for x, y in zip(Vi[p], Vi[j])]

    def col_swap(j: int, p: int) -> None:
        for row in a:
            row[j], row[p] = row[p], row[j]
        for row in V:
            row[j], row[p] = row[p], row[j]
        if Vi is not None:
            Vi[j], Vi[p] = Vi[p], Vi[j]

    def col_neg(j: int) -> None:
        for row in a:
            row[j] = -row[j]
        for row in V:
            row[j] = -row[j]
        if Vi is not None:
            Vi[j] = [-x for x in Vi[j]]

    n = min(rows, cols)
    t = 0
    while t < n:
        # smallest nonzero absolute value in the trailing submatrix
        piv = None
        best = 0
        for i in range(t, rows):
            ri = a[i]
            for j in range(t, cols):
                v = ri[j]
                if v:
                    av = -v if v < 0 else v
                    if piv is None or av < best:
                        best = av
                        piv = (i, j)
                        if av == 1:
                            break
            if piv is not None and best == 1:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            dirty = False
            for i in range(rows):
                if i != t and a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        row_sub(i, t, q)
                    if a[i][t]:  # nonzero remainder beats the pivot
                        row_swap(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(cols):
                if j != t and a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        col_sub(j, t, q)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            # row t and column t are clear; enforce the divisibility chain
            p = a[t][t]
            bad = None
            for i in range(t + 1, rows):
                ri = a[i]
                for j in range(t + 1, cols):
                    if ri[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_sub(t, bad, -1)  # pull the offending row into play
        if a[t][t] < 0:
            row_neg(t)
        t += 1

    diag = [a[i][i] for i in range(n)]
    return SmithDecomposition(
        U=IntegerMatrix.from_rows(U, cols=rows),
        D=IntegerMatrix.from_rows(a, cols=cols),
        V=IntegerMatrix.from_rows(V, cols=cols),
        diag=diag,
        uinv=IntegerMatrix.from_rows(Ui, cols=rows) if Ui is not None else None,
        vinv=IntegerMatrix.from_rows(Vi, cols=cols) if Vi is not None else None,
    )


def _dense_diag(a: list[list[int]]) -> list[int]:
    """Diagonal of the Smith form of a dense row-list matrix; no transforms."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    n = min(rows, cols)
    t = 0
    out = []
    while t < n:
        piv = None
        best = 0
        for i in range(t, rows):
            ri = a[i]
            for j in range(t, cols):
                v = ri[j]
                if v:
                    av = -v if v < 0 else v
                    if piv is None or av < best:
                        best = av
                        piv = (i, j)
                        if av == 1:
                            break
            if piv is not None and best == 1:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            dirty = False
            for i in range(t, rows):
                if i != t and a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
                        break
            if dirty:
                continue
            rt = a[t]
            for j in range(t, cols):
                if j != t and rt[j]:
                    q = rt[j] // rt[t]
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if rt[j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if dirty:
                continue
            p = a[t][t]
            bad = None
            for i in range(t + 1, rows):
                ri = a[i]
                for j in range(t + 1, cols):
                    if ri[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        out.append(a[t][t])
        t += 1
    return out


def invariant_factors(m: IntegerMatrix) -> list[int]:
    """Nonzero diagonal of the Smith form (ascending divisibility chain).

    Fast path for the large, very sparse boundary matrices: +-1 pivots are
    eliminated on a sparse structure first (minimal-fill tie-break among the
    smallest-possible-|pivot| candidates), then the small dense remainder goes
    through the standard reduction.  `len(result)` is the rank of `m`.

    >>> invariant_factors(IntegerMatrix.from_rows([[2, 4], [6, 8]]))
    [2, 4]
    >>> invariant_factors(IntegerMatrix.from_rows([[1, 0], [0, 0]]))
    [1]
    """
    rows = {}
    colidx: dict[int, set[int]] = {}
    for i, row in enumerate(m._rows):
        r = {j: v for j, v in enumerate(row) if v}
        if r:
            rows[i] = r
            for j in r:
                colidx.setdefault(j, set()).add(i)
    ones = 0
    while True:
        best = None
        best_score = None
        for i, r in rows.items():
            for j, v in r.items():
                if v == 1 or v == -1:
                    score = (len(r) - 1) * (len(colidx[j]) - 1)
                    if best_score is None or score < best_score:
                        best = (i, j, v)
                        best_score = score
                        if score == 0:
                            break
            if best_score == 0:
                break
        if best is None:
            break
        pi, pj, pv = best
        prow = rows.pop(pi)
        for j in prow:
            s = colidx[j]
            s.discard(pi)
            if not s:
                del colidx[j]
        for i in list(colidx.get(pj, ())):
            ri = rows[i]
            mult = ri[pj] * pv  # pv is +-1, so this clears entry (i, pj)
            for j, v in prow.items():
                if j == pj:
                    continue
                nv = ri.get(j, 0) - mult * v
                if nv:
                    if j not in ri:
                        colidx.setdefault(j, set()).add(i)
                    ri[j] = nv
                else:
                    if j in ri:
                        del ri[j]
                        s = colidx[j]
                        s.discard(i)
                        if not s:
                            del colidx[j]
            del ri[pj]
            if not ri:
                del rows[i]
        colidx.pop(pj, None)
        ones += 1
    if not rows:
        return [1] * ones
    live_rows = sorted(rows)
    live_cols = sorted({j for r in rows.values() for j in r})
    pos = {j: c for c, j in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for r, i in enumerate(live_rows):
        for j, v in rows[i].items():
            dense[r][pos[j]] = v
    rest = [d for d in _dense_diag(dense) if d != 0]
    return [1] * ones + rest


def rank(m: IntegerMatrix) -> int:
    return len(invariant_factors(m))


def kernel_basis(m: IntegerMatrix) -> IntegerMatrix:
    """Columns form a basis of ker(m) as a (saturated) sublattice of Z^cols.

    >>> kernel_basis(IntegerMatrix.from_rows([[1, 1, 1]])).cols
    2
    >>> kernel_basis(IntegerMatrix.identity(3)).cols
    0
    """
    snf = smith_normal_form(m)
    r = snf.rank
    return snf.V.submatrix_columns(range(r, m.cols))


def solve_columns(b: IntegerMatrix, t: IntegerMatrix) -> IntegerMatrix | None:
    """Exact X with b @ X = t, or None when no integer solution exists."""
    if b.rows != t.rows:
        raise ValueError(f"shape mismatch: {b.rows}x{b.cols} vs target {t.rows}x{t.cols}")
    snf = smith_normal_form(b)
    s = snf.U.matmul(t)
    r = snf.rank
    y = [[0] * t.cols for _ in range(b.cols)]
    for i in range(b.rows):
        if i < r:
            d = snf.diag[i]
            for j in range(t.cols):
                q, rem = divmod(s._rows[i][j], d)
                if rem:
                    return None
                y[i][j] = q
        else:
            if any(s._rows[i][j] != 0 for j in range(t.cols)):
                return None
    return snf.V.matmul(IntegerMatrix.from_rows(y, cols=t.cols))


def in_column_lattice(b: IntegerMatrix, v: Sequence[int]) -> bool:
    """Is v an integer combination of the columns of b?"""
    return solve_columns(b, IntegerMatrix.column_vector(v)) is not None


def same_column_lattice(a: IntegerMatrix, b: IntegerMatrix) -> bool:
    """Do the columns of a and b generate the same sublattice of Z^rows?"""
    if a.rows != b.rows:
        return False
    return solve_columns(a, b) is not None and solve_columns(b, a) is not None


def column_lattice_basis(m: IntegerMatrix) -> IntegerMatrix:
    """A basis (rank many columns) of the lattice generated by m's columns."""
    snf = smith_normal_form(m, want_uinv=True)
    r = snf.rank
    cols = []
    for i in range(r):
        d = snf.diag[i]
        cols.append([d * snf.uinv._rows[k][i] for k in range(m.rows)])
    out = IntegerMatrix(m.rows, r)
    for j, c in enumerate(cols):
        for k in range(m.rows):
            out._rows[k][j] = c[k]
    return out
