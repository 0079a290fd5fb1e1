"""Equivalence maps for rank-metric and matrix codes, with group structure.

Rank-metric maps act on row vectors over F_{q^m} as x -> (alpha x L)^(s^g)
for a nonzero scalar alpha, L in GL_l(F_q), and a power s^g of the p-power
Frobenius; matrix maps act on l x m matrices over F_q as
A -> (L A^T? M)^(s^g) with an optional transpose when l = m.  Both families
are kept in canonical coset form: scaling by F_q* is normalised so that the
first nonzero entry of L (row-major) equals one, which pins one
representative per coset of N = {(lambda, lambda^-1 I)} resp.
{(lambda I_l, lambda^-1 I_m)}.

Conventions are right-action throughout: compose(f1, f2) applies f1 first,
and the semi-linear group law (A1; g1)(A2; g2) = (A1 A2^(g1^-1); g1 g2) is
verified by an action-comparison property test rather than assumed.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .codes import MatrixCode, RankMetricCode
from .errors import (
    BadParams,
    IllegalTranspose,
    ShapeMismatch,
    TooLarge,
    TowerMismatch,
)
from .expansion import frobenius_matrix, mult_matrix, semilinear_matrix
from .fields import FieldElement, FieldTower, OrderedBasis, format_element, parse_element
from .matrices import (
    Mat,
    enumerate_gl,
    format_matrix,
    gl_order,
    inverse,
    kronecker,
    parse_matrix,
    rank,
)

MODES = ("rm-linear", "rm-semilinear", "mat-linear", "mat-semilinear")


def _first_nonzero(M: Mat) -> int:
    for row in M.rows:
        for c in row:
            if c:
                return c
    return 0


class RmMap:
    """Canonical coset [alpha, L] with an optional Frobenius power gamma.

    Acts on row vectors of length l over the top field by
    x -> (alpha * x * L)^(p^gamma); gamma = 0 is the linear case.
    """

    __slots__ = ("tower", "l", "alpha", "L", "gamma")

    def __init__(self, alpha: int, L: Mat, gamma: int = 0):
        tower = L.tower
        if L.nrows != L.ncols or L.subdeg != 1:
            raise BadParams("L must be square over the base field")
        if alpha == 0:
            raise BadParams("alpha must be nonzero")
        if rank(L) != L.nrows:
            raise BadParams("L must be invertible")
        c = _first_nonzero(L)
        if c != 1:
            ci = tower.inv(c)
            L = Mat(tower, [[tower.mul(ci, x) for x in r] for r in L.rows],
                    subdeg=1, check=False)
            alpha = tower.mul(alpha, c)
        self.tower = tower
        self.l = L.nrows
        self.alpha = alpha
        self.L = L
        self.gamma = gamma % tower.degree

    @classmethod
    def make(cls, alpha: FieldElement, L: Mat, gamma: int = 0) -> "RmMap":
        if alpha.tower is not L.tower:
            raise TowerMismatch("alpha and L from different towers")
        return cls(alpha.code, L, gamma)

    @classmethod
    def identity(cls, tower: FieldTower, l: int) -> "RmMap":
        return cls(1, Mat.identity(tower, l))

    @property
    def key(self) -> tuple:
        return (self.alpha, self.L.rows, self.gamma)

    def is_identity(self) -> bool:
        return self.alpha == 1 and self.gamma == 0 and self.L.is_identity()

    def apply_codes(self, vec: Sequence[int]) -> tuple[int, ...]:
        t = self.tower
        if len(vec) != self.l:
            raise ShapeMismatch(f"vector length {len(vec)} != {self.l}")
        out = []
        for j in range(self.l):
            s = 0
            for i, x in enumerate(vec):
                c = self.L.rows[i][j]
                if x and c:
                    s = t.add(s, t.mul(x, c))
            out.append(t.frob(t.mul(self.alpha, s), self.gamma))
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, RmMap) and self.tower is other.tower
                and self.l == other.l and self.key == other.key)

    def __hash__(self):
        return hash((id(self.tower), self.l, self.key))

    def __repr__(self):
        return format_map(self)


def rm_map(alpha: FieldElement, L: Mat, gamma: int = 0) -> RmMap:
    return RmMap.make(alpha, L, gamma)


def rm_apply(f: RmMap, x):
    """Apply a rank-metric map to a vector of field elements or a code."""
    if isinstance(x, RankMetricCode):
        rows = [f.apply_codes(row) for row in x.gen.rows]
        return RankMetricCode(Mat(f.tower, rows, subdeg=f.tower.m, check=False))
    els = tuple(x)
    if any(e.tower is not f.tower for e in els):
        raise TowerMismatch("vector from a different tower")
    out = f.apply_codes([e.code for e in els])
    return tuple(FieldElement(f.tower, c) for c in out)


def rm_compose(f1: RmMap, f2: RmMap) -> RmMap:
    """The map applying f1 first, then f2."""
    if f1.tower is not f2.tower or f1.l != f2.l:
        raise ShapeMismatch("maps on different spaces")
    t = f1.tower
    alpha = t.mul(f1.alpha, t.frob(f2.alpha, -f1.gamma))
    L = f1.L @ f2.L.frobenius(-f1.gamma)
    return RmMap(alpha, L, f1.gamma + f2.gamma)


def rm_invert(f: RmMap) -> RmMap:
    t = f.tower
    alpha = t.frob(t.inv(f.alpha), f.gamma)
    L = inverse(f.L).frobenius(f.gamma)
    return RmMap(alpha, L, -f.gamma)


def rm_order(f: RmMap) -> int:
    acc = f
    k = 1
    while not acc.is_identity():
        acc = rm_compose(acc, f)
        k += 1
    return k


class MatMap:
    """Canonical coset (transpose?, [L, M]) with a Frobenius power gamma.

    Acts on l x m matrices over F_q by A -> (L A^T? M)^(p^gamma); the
    transpose flag is legal only for l = m, and gamma runs modulo e.
    """

    __slots__ = ("tower", "l", "m", "transpose", "L", "M", "gamma")

    def __init__(self, transpose: bool, L: Mat, M: Mat, gamma: int = 0):
        tower = L.tower
        if M.tower is not tower:
            raise TowerMismatch("L and M from different towers")
        if L.nrows != L.ncols or M.nrows != M.ncols:
            raise BadParams("L and M must be square")
        if L.subdeg != 1 or M.subdeg != 1:
            raise BadParams("L and M must be over the base field")
        if transpose and L.nrows != M.nrows:
            raise IllegalTranspose("transpose flag requires l = m")
        if rank(L) != L.nrows or rank(M) != M.nrows:
            raise BadParams("L and M must be invertible")
        c = _first_nonzero(L)
        if c != 1:
            ci = tower.inv(c)
            L = Mat(tower, [[tower.mul(ci, x) for x in r] for r in L.rows],
                    subdeg=1, check=False)
            M = Mat(tower, [[tower.mul(c, x) for x in r] for r in M.rows],
                    subdeg=1, check=False)
        self.tower = tower
        self.l = L.nrows
        self.m = M.nrows
        self.transpose = transpose
        self.L = L
        self.M = M
        self.gamma = gamma % tower.e

    @classmethod
    def identity(cls, tower: FieldTower, l: int, m: int) -> "MatMap":
        return cls(False, Mat.identity(tower, l), Mat.identity(tower, m))

    @property
    def key(self) -> tuple:
        return (self.transpose, self.L.rows, self.M.rows, self.gamma)

    def is_identity(self) -> bool:
        return (not self.transpose and self.gamma == 0
                and self.L.is_identity() and self.M.is_identity())

    def apply_mat(self, A: Mat) -> Mat:
        if A.shape() != (self.l, self.m) or A.subdeg != 1:
            raise ShapeMismatch(
                f"matrix shape {A.shape()} does not match map ({self.l}, {self.m})")
        B = A.transpose() if self.transpose else A
        out = self.L @ B @ self.M
        if self.gamma:
            out = out.frobenius(self.gamma)
        return out

    def __eq__(self, other):
        return (isinstance(other, MatMap) and self.tower is other.tower
                and (self.l, self.m) == (other.l, other.m) and self.key == other.key)

    def __hash__(self):
        return hash((id(self.tower), self.l, self.m, self.key))

    def __repr__(self):
        return format_map(self)


def mat_map(L: Mat, M: Mat, transpose: bool = False, gamma: int = 0) -> MatMap:
    return MatMap(transpose, L, M, gamma)


def mat_apply(f: MatMap, A):
    """Apply a matrix map to a single matrix or a whole matrix code."""
    if isinstance(A, MatrixCode):
        basis = [f.apply_mat(B) for B in A.basis]
        return MatrixCode(A.tower, A.l, A.m, basis)
    return f.apply_mat(A)


def mat_compose(f1: MatMap, f2: MatMap) -> MatMap:
    """The map applying f1 first, then f2; transpose flags compose by XOR."""
    if f1.tower is not f2.tower:
        raise TowerMismatch("maps from different towers")
    if (f1.l, f1.m) != (f2.l, f2.m):
        raise ShapeMismatch("maps on different spaces")
    r1 = f1.gamma
    if not f2.transpose:
        L = f2.L.frobenius(-r1) @ f1.L
        M = f1.M @ f2.M.frobenius(-r1)
        t = f1.transpose
    else:
        L = f2.L.frobenius(-r1) @ f1.M.transpose()
        M = f1.L.transpose() @ f2.M.frobenius(-r1)
        t = not f1.transpose
    return MatMap(t, L, M, f1.gamma + f2.gamma)


def mat_invert(f: MatMap) -> MatMap:
    r = f.gamma
    Li, Mi = inverse(f.L), inverse(f.M)
    if not f.transpose:
        return MatMap(False, Li.frobenius(r), Mi.frobenius(r), -r)
    return MatMap(True, Mi.transpose().frobenius(r),
                  Li.transpose().frobenius(r), -r)


def mat_order(f: MatMap) -> int:
    acc = f
    k = 1
    while not acc.is_identity():
        acc = mat_compose(acc, f)
        k += 1
    return k


def rm_to_mat(f: RmMap, b: OrderedBasis) -> MatMap:
    """Translate a rank-metric map to the matrix map it induces under eps_b.

    For gamma = e*j + r the image is (L^T, M_alpha Q^j P_r) with the residual
    Frobenius power r, making the square
    expand(rm_apply(f, x)) = mat_apply(rm_to_mat(f), expand(x)) commute.
    """
    tower = f.tower
    if b.tower is not tower:
        raise TowerMismatch("basis from a different tower")
    e = tower.e
    j, r = divmod(f.gamma, e)
    M = mult_matrix(FieldElement(tower, f.alpha), b)
    if j:
        Q = frobenius_matrix(b)
        for _ in range(j):
            M = M @ Q
    if r:
        M = M @ semilinear_matrix(b, r)
    return MatMap(False, f.L.transpose(), M, r)


# ---------------------------------------------------------------------------
# group enumeration and orders
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _gl_list(tower: FieldTower, n: int) -> tuple[Mat, ...]:
    return tuple(enumerate_gl(tower, n))


@functools.lru_cache(maxsize=None)
def _gl_leading_one(tower: FieldTower, n: int) -> tuple[Mat, ...]:
    """Invertible matrices whose first nonzero entry (row-major) is one.

    One representative per F_q*-scalar class; these are exactly the
    canonical L-parts of the coset forms.
    """
    return tuple(M for M in _gl_list(tower, n) if _first_nonzero(M) == 1)


def group_order(tower: FieldTower, l: int, mode: str, m: int | None = None) -> int:
    """Closed-form order of the chosen equivalence group.

    For rank-metric modes m is the extension degree of the tower; for matrix
    modes m is the codeword column count and must be supplied.
    """
    q = tower.q
    if mode == "rm-linear":
        return (q**tower.m - 1) * gl_order(q, l) // (q - 1)
    if mode == "rm-semilinear":
        return group_order(tower, l, "rm-linear") * tower.degree
    if mode in ("mat-linear", "mat-semilinear"):
        if m is None:
            raise BadParams("matrix modes need the column count m")
        order = gl_order(q, l) * gl_order(q, m) // (q - 1)
        if l == m:
            order *= 2
        if mode == "mat-semilinear":
            order *= tower.e
        return order
    raise BadParams(f"unknown mode {mode!r}; choose from {MODES}")


def enumerate_rm_maps(tower: FieldTower, l: int,
                      semilinear: bool = False) -> Iterator[RmMap]:
    """Every canonical coset once: gamma outer, then L (lexicographic among
    leading-one representatives), then alpha by code."""
    gammas = range(tower.degree) if semilinear else (0,)
    ls = _gl_leading_one(tower, l)
    for gamma in gammas:
        for L in ls:
            for alpha in range(1, tower.order):
                yield RmMap(alpha, L, gamma)


def enumerate_mat_maps(tower: FieldTower, l: int, m: int,
                       semilinear: bool = False) -> Iterator[MatMap]:
    """Every canonical coset once: gamma, transpose flag, L (leading-one), M."""
    gammas = range(tower.e) if semilinear else (0,)
    flags = (False, True) if l == m else (False,)
    ls = _gl_leading_one(tower, l)
    ms = _gl_list(tower, m)
    for gamma in gammas:
        for flag in flags:
            for L in ls:
                for M in ms:
                    yield MatMap(flag, L, M, gamma)


# ---------------------------------------------------------------------------
# equivalence testing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivResult:
    """Outcome of an exhaustive equivalence search."""

    equivalent: bool
    witness: object | None
    checked: int
    mode: str
    reason: str

    def __bool__(self):
        return self.equivalent


def _rm_image_equals(f: RmMap, c1: RankMetricCode, c2: RankMetricCode) -> bool:
    return all(c2.contains_codes(f.apply_codes(row)) for row in c1.gen.rows)


def _mat_image_equals(f: MatMap, c1: MatrixCode, c2: MatrixCode) -> bool:
    return all(c2.contains(f.apply_mat(B)) for B in c1.basis)


def are_equivalent(c1, c2, mode: str, guard: int = 2**22) -> EquivResult:
    """Exhaustive equivalence search returning the first canonical witness.

    Pre-filters on size and minimum distance (both are preserved by every
    equivalence map) before scanning the whole group; refuses with TooLarge
    when the group order exceeds the guard.  The scan order is the identity
    map first, then the canonical enumeration, so equal codes always get
    the identity as their witness.
    """
    from .codes import min_rank_distance
    if mode not in MODES:
        raise BadParams(f"unknown mode {mode!r}; choose from {MODES}")
    rm = mode.startswith("rm")
    if rm:
        if not (isinstance(c1, RankMetricCode) and isinstance(c2, RankMetricCode)):
            raise BadParams("rank-metric modes need rank-metric codes")
        same_shape = (c1.tower is c2.tower and c1.l == c2.l)
        m_arg = None
        l = c1.l
    else:
        if not (isinstance(c1, MatrixCode) and isinstance(c2, MatrixCode)):
            raise BadParams("matrix modes need matrix codes")
        same_shape = (c1.tower is c2.tower and (c1.l, c1.m) == (c2.l, c2.m))
        m_arg = c1.m
        l = c1.l
    if not same_shape:
        return EquivResult(False, None, 0, mode, "shape mismatch")
    if c1.size != c2.size:
        return EquivResult(False, None, 0, mode, "size mismatch")
    order = group_order(c1.tower, l, mode, m=m_arg)
    if order > guard:
        raise TooLarge(f"group order {order} exceeds guard {guard}")
    if c1.size <= 2**20 and min_rank_distance(c1) != min_rank_distance(c2):
        return EquivResult(False, None, 0, mode, "minimum distance mismatch")
    # scan order: the identity first, then the canonical enumeration
    if rm:
        ident = RmMap.identity(c1.tower, l)
        maps = enumerate_rm_maps(c1.tower, l, semilinear=mode.endswith("semilinear"))
        hit = _rm_image_equals
    else:
        ident = MatMap.identity(c1.tower, l, c1.m)
        maps = enumerate_mat_maps(c1.tower, l, c1.m,
                                  semilinear=mode.endswith("semilinear"))
        hit = _mat_image_equals
    checked = 1
    if hit(ident, c1, c2):
        return EquivResult(True, ident, checked, mode, "witness found")
    for f in maps:
        if f == ident:
            continue
        checked += 1
        if hit(f, c1, c2):
            return EquivResult(True, f, checked, mode, "witness found")
    return EquivResult(False, None, checked, mode, "group exhausted")


# ---------------------------------------------------------------------------
# the rank-preserving classification oracle
# ---------------------------------------------------------------------------

def transpose_perm_matrix(tower: FieldTower, l: int) -> Mat:
    """Permutation on concatenated-row vectors realising matrix transposition."""
    n = l * l
    rows = [[0] * n for _ in range(n)]
    for i in range(l):
        for j in range(l):
            rows[i * l + j][j * l + i] = 1
    return Mat(tower, rows, subdeg=1, check=False)


def vec_matrix(f: MatMap) -> Mat:
    """The lm x lm matrix acting on concatenated-row vectors as f does.

    Row-major concatenation turns A -> L A M into v -> v (L^T (x) M); the
    transpose flag contributes the fixed permutation factor on the left.
    Only defined for linear maps (gamma = 0).
    """
    if f.gamma:
        raise BadParams("vector form exists for linear maps only")
    K = kronecker(f.L.transpose(), f.M)
    if f.transpose:
        return transpose_perm_matrix(f.tower, f.l) @ K
    return K


def rank_preserving_vec_maps(tower: FieldTower, l: int, m: int) -> list[Mat]:
    """All G in GL_{lm}(F_q) that preserve rank on every l x m matrix.

    Brute force: enumerates the whole general linear group and filters by
    checking rank(A) = rank(A') on all q^(lm) matrices, where the row vector
    of A' is the row vector of A times G.  Desk scale only.
    """
    codes = tower.subfield_codes(1)
    if len(codes) ** (l * m) > 2**16:
        raise TooLarge("matrix space too large for the rank-preservation scan")
    mats = []
    ranks = {}
    for entries in itertools.product(codes, repeat=l * m):
        A = Mat(tower, [entries[i * m:(i + 1) * m] for i in range(l)],
                subdeg=1, check=False)
        mats.append(entries)
        ranks[entries] = rank(A)
    t = tower
    out = []
    for G in enumerate_gl(tower, l * m):
        good = True
        for entries in mats:
            img = [0] * (l * m)
            for i, x in enumerate(entries):
                if x:
                    row = G.rows[i]
                    img = [t.add(a, t.mul(x, c)) for a, c in zip(img, row)]
            if ranks[tuple(img)] != ranks[entries]:
                good = False
                break
        if good:
            out.append(G)
    return out


def vec_map_table(tower: FieldTower, l: int, m: int) -> dict[tuple, MatMap]:
    """Canonical linear matrix maps indexed by their vector-action matrix."""
    table = {}
    for f in enumerate_mat_maps(tower, l, m):
        table[vec_matrix(f).rows] = f
    return table


def factor_vec_map(G: Mat, l: int, m: int,
                   table: dict[tuple, MatMap] | None = None) -> MatMap | None:
    """Match a vector-action matrix against the canonical (T?, L, M) forms."""
    if table is None:
        table = vec_map_table(G.tower, l, m)
    return table.get(G.rows)


# ---------------------------------------------------------------------------
# map text form
# ---------------------------------------------------------------------------

def format_map(f) -> str:
    if isinstance(f, RmMap):
        alpha = format_element(FieldElement(f.tower, f.alpha))
        return f"rm[alpha={alpha}; L={format_matrix(f.L)}; gamma={f.gamma}]"
    if isinstance(f, MatMap):
        flag = "T; " if f.transpose else ""
        return (f"mat[{flag}L={format_matrix(f.L)}; "
                f"M={format_matrix(f.M)}; gamma={f.gamma}]")
    raise BadParams(f"not a map: {f!r}")


def parse_map(tower: FieldTower, text: str):
    """Parse the rm[...]/mat[...] text form produced by format_map."""
    text = text.strip()
    if text.startswith("rm[") and text.endswith("]"):
        kind, body = "rm", text[3:-1]
    elif text.startswith("mat[") and text.endswith("]"):
        kind, body = "mat", text[4:-1]
    else:
        raise BadParams(f"bad map literal: {text!r}")
    segments = [s.strip() for s in body.split(";")]
    transpose = False
    if kind == "mat" and segments and segments[0] == "T":
        transpose = True
        segments = segments[1:]
    fields: dict[str, str] = {}
    current = None
    for seg in segments:
        if "=" in seg:
            key, _, val = seg.partition("=")
            current = key.strip()
            fields[current] = val.strip()
        elif current is not None:
            fields[current] += ";" + seg
        else:
            raise BadParams(f"stray segment {seg!r} in map literal")
    gamma = int(fields.get("gamma", "0"))
    if kind == "rm":
        alpha = parse_element(tower, fields["alpha"])
        L = parse_matrix(tower, fields["L"], subdeg=1)
        return RmMap(alpha.code, L, gamma)
    L = parse_matrix(tower, fields["L"], subdeg=1)
    M = parse_matrix(tower, fields["M"], subdeg=1)
    return MatMap(transpose, L, M, gamma)
