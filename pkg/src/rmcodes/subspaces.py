"""Constant-dimension subspace codes and the lifting construction.

Subspaces are canonicalised at construction to their unique reduced
row echelon basis, so subspace equality is matrix equality.  Lifting
intersperses the columns of matrix codewords with identity pivot columns;
the subspace distance of two lifted words is twice the rank distance of
the underlying matrices, independently of where the pivots sit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .codes import MatrixCode
from .errors import (
    AmbientMismatch,
    BadParams,
    BadPivots,
    MixedPivots,
    NonlinearCode,
    TooLarge,
)
from .fields import FieldTower, parse_field_spec
from .matrices import Mat, format_matrix, parse_matrix, rank, rref


class Subspace:
    """A subspace of F_q^n, stored by its RREF basis matrix."""

    __slots__ = ("tower", "n", "mat", "pivots")

    def __init__(self, mat: Mat):
        res = rref(mat)
        rows = [res.rref.rows[i] for i in range(res.rank)]
        self.tower = mat.tower
        self.n = mat.ncols
        self.mat = Mat(mat.tower, rows, subdeg=1, ncols=mat.ncols, check=False)
        self.pivots = res.pivots

    @property
    def dim(self) -> int:
        return self.mat.nrows

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.tower is other.tower
                and self.n == other.n and self.mat.rows == other.mat.rows)

    def __hash__(self):
        return hash((id(self.tower), self.n, self.mat.rows))

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim}, {format_matrix(self.mat)})"


def subspace_distance(U: Subspace, V: Subspace) -> int:
    """dim(U+V) - dim(U n V), computed as 2 dim(U+V) - dim U - dim V."""
    if U.tower is not V.tower or U.n != V.n:
        raise AmbientMismatch("subspaces of different ambient spaces")
    stacked = Mat(U.tower, list(U.mat.rows) + list(V.mat.rows),
                  subdeg=1, ncols=U.n, check=False)
    return 2 * rank(stacked) - U.dim - V.dim


class SubspaceCode:
    """A set of equal-dimension subspaces of one ambient space."""

    def __init__(self, tower: FieldTower, n: int, words: Iterable[Subspace]):
        self.tower = tower
        self.n = n
        self.words = frozenset(words)
        dims = {w.dim for w in self.words}
        if len(dims) > 1:
            raise BadParams(f"mixed codeword dimensions {sorted(dims)}")
        for w in self.words:
            if w.tower is not tower or w.n != n:
                raise AmbientMismatch("codeword in a different ambient space")
        self.dim = dims.pop() if dims else 0

    @property
    def size(self) -> int:
        return len(self.words)

    def min_distance(self) -> int | None:
        words = sorted(self.words, key=lambda w: w.mat.rows)
        best = None
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                d = subspace_distance(words[i], words[j])
                if best is None or d < best:
                    best = d
        return best

    def __eq__(self, other):
        return (isinstance(other, SubspaceCode) and self.tower is other.tower
                and self.n == other.n and self.words == other.words)

    def __repr__(self):
        return f"SubspaceCode(n={self.n}, dim={self.dim}, size={self.size})"


def _interspersed(tower: FieldTower, A: Mat, pivots: Sequence[int], n: int) -> Mat:
    l = A.nrows
    nonpivots = [j for j in range(1, n + 1) if j not in set(pivots)]
    rows = []
    for i in range(l):
        row = [0] * n
        row[pivots[i] - 1] = 1
        for s, j in enumerate(nonpivots):
            row[j - 1] = A.rows[i][s]
        rows.append(row)
    return Mat(tower, rows, subdeg=1, check=False)


def lift(mc: MatrixCode, pivots: Sequence[int], guard: int = 2**20) -> SubspaceCode:
    """Lift a matrix code to a subspace code with the chosen pivot columns.

    Codeword A maps to the row span of the l x (l+m) matrix whose pivot
    columns form the identity and whose remaining columns are A's columns
    in order.  The map is injective, so the subspace code has |mc| words.
    """
    n = mc.l + mc.m
    pivots = tuple(pivots)
    if (len(pivots) != mc.l or any(not 1 <= p <= n for p in pivots)
            or list(pivots) != sorted(set(pivots))):
        raise BadPivots(f"need {mc.l} ascending pivot columns in [1, {n}]")
    if mc.size > guard:
        raise TooLarge(f"|code| = {mc.size} exceeds guard {guard}")
    words = [Subspace(_interspersed(mc.tower, A, pivots, n))
             for A in mc.codewords()]
    sc = SubspaceCode(mc.tower, n, words)
    if sc.size != mc.size:
        raise BadParams("lift lost codewords")  # unreachable: lifting is injective
    return sc


def unlift(sc: SubspaceCode) -> tuple[tuple[int, ...], MatrixCode]:
    """Recover (pivots, underlying matrix code) from a lifted matrix code.

    All words must share the pivot locations of their RREF bases
    (MixedPivots otherwise), and the auxiliary matrices must form an
    F_q-linear set (NonlinearCode otherwise).
    """
    if not sc.words:
        raise BadParams("empty subspace code")
    words = sorted(sc.words, key=lambda w: w.mat.rows)
    pivots = words[0].pivots
    for w in words:
        if w.pivots != pivots:
            raise MixedPivots(f"pivot locations differ: {pivots} vs {w.pivots}")
    nonpivots = [j for j in range(1, sc.n + 1) if j not in set(pivots)]
    aux = []
    for w in words:
        aux.append(Mat(sc.tower, [[w.mat.rows[i][j - 1] for j in nonpivots]
                                  for i in range(w.dim)], subdeg=1, check=False))
    from .codes import _Reducer, _vecrow
    l, m = sc.dim, sc.n - sc.dim
    reducer = _Reducer(sc.tower, l * m)
    basis = []
    for A in aux:
        if reducer.add(_vecrow(A)):
            basis.append(A)
    mc = MatrixCode(sc.tower, l, m, basis)
    if mc.size != len(aux):
        raise NonlinearCode("auxiliary matrices do not form a linear code")
    return pivots, mc


@dataclass(frozen=True)
class DistanceLawReport:
    """Pairwise check that lifted subspace distance is twice rank distance."""

    pairs_checked: int
    all_match: bool
    ds_min: int | None
    dr_min: int | None
    distance_multiset: tuple[int, ...]

    def summary(self) -> str:
        if self.pairs_checked == 0:
            return "vacuous pass (fewer than two codewords); d_S,min = none"
        status = "PASS" if self.all_match else "FAIL"
        return (f"{status}: {self.pairs_checked} pairs, "
                f"d_S,min = {self.ds_min} = 2 * {self.dr_min} = 2 * d_R,min")


def verify_distance_law(mc: MatrixCode, pivots: Sequence[int],
                        guard: int = 2**20) -> DistanceLawReport:
    """Check d_S(lift A, lift B) = 2 rank(A - B) over all codeword pairs."""
    if mc.size > guard:
        raise TooLarge(f"|code| = {mc.size} exceeds guard {guard}")
    n = mc.l + mc.m
    mats = list(mc.codewords())
    lifted = [Subspace(_interspersed(mc.tower, A, tuple(pivots), n)) for A in mats]
    all_match = True
    multiset = []
    dr_min = None
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            ds = subspace_distance(lifted[i], lifted[j])
            dr = rank(mats[i] - mats[j])
            if ds != 2 * dr:
                all_match = False
            multiset.append(ds)
            if dr_min is None or dr < dr_min:
                dr_min = dr
    multiset.sort()
    ds_min = multiset[0] if multiset else None
    return DistanceLawReport(
        pairs_checked=len(multiset),
        all_match=all_match,
        ds_min=ds_min,
        dr_min=dr_min,
        distance_multiset=tuple(multiset),
    )


# ---------------------------------------------------------------------------
# subspace-code files
# ---------------------------------------------------------------------------

def format_subspace_file(sc: SubspaceCode) -> str:
    words = sorted(sc.words, key=lambda w: w.mat.rows)
    lines = ["subspace", sc.tower.spec_string(), f"n={sc.n},l={sc.dim}"]
    lines.extend(format_matrix(w.mat) for w in words)
    return "\n".join(lines) + "\n"


def parse_subspace_file(text: str) -> SubspaceCode:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) < 3 or lines[0] != "subspace":
        raise BadParams("not a subspace code file")
    tower = parse_field_spec(lines[1])
    shape = {}
    for part in lines[2].split(","):
        key, _, val = part.partition("=")
        shape[key.strip()] = int(val)
    n = shape["n"]
    words = []
    for ln in lines[3:]:
        M = parse_matrix(tower, ln, subdeg=1)
        if M.ncols != n:
            raise BadParams(f"word has {M.ncols} columns, ambient dim is {n}")
        words.append(Subspace(M))
    return SubspaceCode(tower, n, words)
