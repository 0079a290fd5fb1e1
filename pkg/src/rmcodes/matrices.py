"""Dense exact linear algebra over any field of a tower.

Matrices carry a subfield tag: entries of a Mat with subdeg=d live in
F_{q^d} inside the tower's top field (d=1 is the base field F_q, d=m the
top field).  All row operations stay inside the tagged subfield, so rank,
RREF and inversion are exact over that field.  Pivot columns are reported
1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    BadParams,
    NotInSpan,
    ShapeMismatch,
    Singular,
    TooLarge,
    TowerMismatch,
)
from .fields import FieldElement, FieldTower, format_element, parse_element

_GL_CANDIDATE_GUARD = 2**24


class Mat:
    """Immutable matrix over one field of a tower; entries stored as codes."""

    __slots__ = ("tower", "subdeg", "rows", "nrows", "ncols")

    def __init__(self, tower: FieldTower, rows: Sequence[Sequence[int]],
                 subdeg: int = 1, check: bool = True, ncols: int | None = None):
        self.tower = tower
        self.subdeg = subdeg
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if check:
            if any(len(r) != self.ncols for r in self.rows):
                raise ShapeMismatch("ragged rows")
            if tower.m % subdeg != 0:
                raise BadParams(f"subfield degree {subdeg} does not divide m")
            if subdeg < tower.m:
                for r in self.rows:
                    for c in r:
                        if not tower.in_subfield(c, subdeg):
                            raise BadParams(
                                f"entry {format_element(FieldElement(tower, c))} "
                                f"outside F_(q^{subdeg})")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_elements(cls, rows: Sequence[Sequence[FieldElement]],
                      subdeg: int = 1) -> "Mat":
        tower = rows[0][0].tower
        for r in rows:
            for x in r:
                if x.tower is not tower:
                    raise TowerMismatch("entries from different towers")
        return cls(tower, [[x.code for x in r] for r in rows], subdeg)

    @classmethod
    def identity(cls, tower: FieldTower, n: int, subdeg: int = 1) -> "Mat":
        return cls(tower, [[1 if i == j else 0 for j in range(n)] for i in range(n)],
                   subdeg, check=False)

    @classmethod
    def zero(cls, tower: FieldTower, nrows: int, ncols: int, subdeg: int = 1) -> "Mat":
        return cls(tower, [[0] * ncols for _ in range(nrows)], subdeg, check=False)

    # -- basic structure ------------------------------------------------------

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.tower, self.rows[i][j])

    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def retag(self, subdeg: int) -> "Mat":
        """Same entries viewed in a larger (or verified smaller) subfield."""
        return Mat(self.tower, self.rows, subdeg)

    def _same_space(self, other: "Mat"):
        if self.tower is not other.tower:
            raise TowerMismatch("matrices from different towers")
        if self.subdeg != other.subdeg:
            raise ShapeMismatch(
                f"field tags differ ({self.subdeg} vs {other.subdeg})")

    def __add__(self, other: "Mat") -> "Mat":
        self._same_space(other)
        if self.shape() != other.shape():
            raise ShapeMismatch("addition shape mismatch")
        add = self.tower.add
        return Mat(self.tower,
                   [[add(a, b) for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)],
                   self.subdeg, check=False)

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_space(other)
        if self.shape() != other.shape():
            raise ShapeMismatch("subtraction shape mismatch")
        sub = self.tower.sub
        return Mat(self.tower,
                   [[sub(a, b) for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)],
                   self.subdeg, check=False)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._same_space(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(
                f"cannot multiply {self.shape()} by {other.shape()}")
        t = self.tower
        mul, add = t.mul, t.add
        bt = list(zip(*other.rows))
        out = []
        for ra in self.rows:
            row = []
            for cb in bt:
                s = 0
                for a, b in zip(ra, cb):
                    if a and b:
                        s = add(s, mul(a, b))
                row.append(s)
            out.append(row)
        return Mat(t, out, self.subdeg, check=False)

    def scale(self, c: FieldElement) -> "Mat":
        mul = self.tower.mul
        return Mat(self.tower, [[mul(c.code, x) for x in r] for r in self.rows],
                   self.subdeg)

    def transpose(self) -> "Mat":
        return Mat(self.tower, list(zip(*self.rows)), self.subdeg, check=False)

    def frobenius(self, r: int) -> "Mat":
        """Entrywise sigma_p^r; subfields are Frobenius-stable."""
        frob = self.tower.frob
        return Mat(self.tower, [[frob(x, r) for x in row] for row in self.rows],
                   self.subdeg, check=False)

    def is_identity(self) -> bool:
        return (self.nrows == self.ncols
                and all(x == (1 if i == j else 0)
                        for i, r in enumerate(self.rows) for j, x in enumerate(r)))

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.tower is other.tower
                and self.subdeg == other.subdeg and self.rows == other.rows)

    def __hash__(self):
        return hash((id(self.tower), self.subdeg, self.rows))

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return f"Mat({self.shape()}, subdeg={self.subdeg}, {format_matrix(self)})"


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form with 1-based pivot columns."""

    rref: Mat
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rref(M: Mat) -> RrefResult:
    """Canonical reduced row echelon form; preserves the row space."""
    t = M.tower
    work = [list(r) for r in M.rows]
    pivots = []
    r = 0
    for col in range(M.ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        ipiv = t.inv(work[r][col])
        work[r] = [t.mul(ipiv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [t.sub(x, t.mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(col + 1)
        r += 1
    return RrefResult(Mat(t, work, M.subdeg, check=False), tuple(pivots))


def rank(M: Mat) -> int:
    return rref(M).rank


def inverse(M: Mat) -> Mat:
    if M.nrows != M.ncols:
        raise ShapeMismatch("inverse of a non-square matrix")
    t = M.tower
    n = M.nrows
    work = [list(r) + [1 if i == j else 0 for j in range(n)]
            for i, r in enumerate(M.rows)]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if work[i][col]), None)
        if piv is None:
            raise Singular("matrix is singular")
        work[r], work[piv] = work[piv], work[r]
        ipiv = t.inv(work[r][col])
        work[r] = [t.mul(ipiv, x) for x in work[r]]
        for i in range(n):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [t.sub(x, t.mul(f, y)) for x, y in zip(work[i], work[r])]
        r += 1
    return Mat(t, [row[n:] for row in work], M.subdeg, check=False)


def kronecker(L: Mat, M: Mat) -> Mat:
    """Kronecker product L (x) M; (i,j) block is L[i][j] * M.

    Acting on row vectors formed by concatenating the rows of an l x m
    matrix A, the product P (x) R realises A -> P^T A R (pinned by test).
    """
    L._same_space(M)
    t = L.tower
    mul = t.mul
    out = []
    for li in range(L.nrows):
        for mi in range(M.nrows):
            row = []
            for lj in range(L.ncols):
                c = L.rows[li][lj]
                row.extend(mul(c, x) if c else 0 for x in M.rows[mi])
            out.append(row)
    return Mat(t, out, L.subdeg, check=False)


def element_order(M: Mat) -> int:
    """Least k >= 1 with M^k = I; requires M invertible."""
    if M.nrows != M.ncols:
        raise ShapeMismatch("order of a non-square matrix")
    if rank(M) != M.nrows:
        raise Singular("order of a singular matrix")
    ident = Mat.identity(M.tower, M.nrows, M.subdeg)
    acc = M
    k = 1
    while acc != ident:
        acc = acc @ M
        k += 1
    return k


def gl_order(field_size: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= field_size**n - field_size**i
    return out


def enumerate_gl(tower: FieldTower, n: int, subdeg: int = 1) -> Iterator[Mat]:
    """Every invertible n x n matrix over F_(q^subdeg), exactly once.

    Order is lexicographic by the row-major entry list, entries compared by
    their position in the sorted subfield code list.  Generation walks rows
    and skips spans, so the cost is |GL| and not |F|^(n^2); the guard still
    uses the candidate count |F|^(n^2) as the documented desk-scale limit.
    """
    codes = tower.subfield_codes(subdeg)
    size = len(codes)
    if size ** (n * n) > _GL_CANDIDATE_GUARD:
        raise TooLarge(
            f"{size}^{n * n} candidate matrices exceed the enumeration guard")
    t = tower
    add, mul = t.add, t.mul

    def extend(span: set[tuple[int, ...]], row: tuple[int, ...]) -> set:
        new = set(span)
        for v in span:
            for c in codes[1:]:
                new.add(tuple(add(x, mul(c, y)) for x, y in zip(v, row)))
        return new

    zero_row = tuple([0] * n)
    stack_rows: list[tuple[int, ...]] = []
    spans = [{zero_row}]

    def rec():
        if len(stack_rows) == n:
            yield Mat(t, list(stack_rows), subdeg, check=False)
            return
        span = spans[-1]
        for cand in itertools.product(codes, repeat=n):
            if cand in span:
                continue
            stack_rows.append(cand)
            spans.append(extend(span, cand))
            yield from rec()
            spans.pop()
            stack_rows.pop()

    yield from rec()


def row_decompose(targets: Sequence[Sequence[int]], M: Mat) -> Mat:
    """Solve C with C @ M = targets over M's field; NotInSpan if impossible.

    targets is a sequence of code rows of length M.ncols; the result C is
    len(targets) x M.nrows.
    """
    t = M.tower
    n = M.nrows
    aug = [list(r) + [1 if i == j else 0 for j in range(n)]
           for i, r in enumerate(M.rows)]
    width = M.ncols
    rows = []
    pivots = []
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, n) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        ipiv = t.inv(aug[r][col])
        aug[r] = [t.mul(ipiv, x) for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [t.sub(x, t.mul(f, y)) for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    out = []
    for w in targets:
        w = list(w)
        coeff = [0] * n
        for idx, col in enumerate(pivots):
            c = w[col]
            if c:
                for j in range(width):
                    w[j] = t.sub(w[j], t.mul(c, aug[idx][j]))
                for j in range(n):
                    coeff[j] = t.add(coeff[j], t.mul(c, aug[idx][width + j]))
        if any(w):
            raise NotInSpan("target row outside the row space")
        out.append(coeff)
    return Mat(t, out, M.subdeg, check=False)


def format_matrix(M: Mat) -> str:
    return ";".join(
        ",".join(format_element(FieldElement(M.tower, c)) for c in row)
        for row in M.rows)


def parse_matrix(tower: FieldTower, text: str, subdeg: int = 1) -> Mat:
    rows = []
    for row_text in text.strip().split(";"):
        rows.append([parse_element(tower, tok).code for tok in row_text.split(",")])
    return Mat(tower, rows, subdeg)
