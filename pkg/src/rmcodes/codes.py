"""Rank-metric codes, matrix codes, and the Gabidulin construction.

A rank-metric code here is always F_{q^m}-linear and stored by a full-rank
generator matrix over the top field; a matrix code is F_q-linear and stored
by an independent list of l x m basis matrices.  Codeword streams are
generated on demand by ranging over the message space, never materialised.
Minimum distance is the minimum nonzero rank weight, which for linear codes
coincides with minimum pairwise distance.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .errors import BadParams, DependentVector, NonlinearCode, TooLarge, TowerMismatch
from .expansion import IndependentTuple, compress_codes, expand, expand_codes
from .fields import FieldElement, FieldTower, OrderedBasis
from .matrices import Mat, rank, rref

DEFAULT_GUARD = 2**20


def _vecrow(M: Mat) -> tuple[int, ...]:
    out = []
    for r in M.rows:
        out.extend(r)
    return tuple(out)


class _Reducer:
    """Echelon form over one field for incremental span membership tests."""

    def __init__(self, tower: FieldTower, width: int):
        self.tower = tower
        self.width = width
        self.rows: list[tuple[int, list[int]]] = []  # (pivot col, row)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        t = self.tower
        v = list(vec)
        for pcol, row in self.rows:
            c = v[pcol]
            if c:
                v = [t.sub(x, t.mul(c, y)) for x, y in zip(v, row)]
        return v

    def add(self, vec: Sequence[int]) -> bool:
        """Insert vec into the span; returns False if already dependent."""
        t = self.tower
        v = self.reduce(vec)
        pcol = next((i for i, x in enumerate(v) if x), None)
        if pcol is None:
            return False
        ipiv = t.inv(v[pcol])
        v = [t.mul(ipiv, x) for x in v]
        for i, (pc, row) in enumerate(self.rows):
            c = row[pcol]
            if c:
                self.rows[i] = (pc, [t.sub(x, t.mul(c, y)) for x, y in zip(row, v)])
        self.rows.append((pcol, v))
        self.rows.sort(key=lambda pr: pr[0])
        return True

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)


class RankMetricCode:
    """An F_{q^m}-linear code C <= F_{q^m}^l given by a full-rank generator."""

    def __init__(self, gen: Mat):
        tower = gen.tower
        if gen.subdeg != tower.m:
            raise BadParams("generator must be tagged with the top field")
        if rank(gen) != gen.nrows or gen.nrows == 0:
            raise BadParams("generator matrix must have full row rank")
        self.tower = tower
        self.gen = gen
        self.k = gen.nrows
        self.l = gen.ncols
        self._reducer = _Reducer(tower, self.l)
        for row in gen.rows:
            self._reducer.add(row)

    @property
    def size(self) -> int:
        return self.tower.order**self.k

    def contains_codes(self, vec: Sequence[int]) -> bool:
        return self._reducer.contains(vec)

    def contains(self, vec: Sequence[FieldElement]) -> bool:
        return self.contains_codes([x.code for x in vec])

    def codeword_codes(self) -> Iterator[tuple[int, ...]]:
        t = self.tower
        for msg in itertools.product(range(t.order), repeat=self.k):
            word = [0] * self.l
            for u, row in zip(msg, self.gen.rows):
                if u:
                    word = [t.add(w, t.mul(u, x)) for w, x in zip(word, row)]
            yield tuple(word)

    def codewords(self) -> Iterator[tuple[FieldElement, ...]]:
        t = self.tower
        for word in self.codeword_codes():
            yield tuple(FieldElement(t, c) for c in word)

    def __eq__(self, other):
        if not isinstance(other, RankMetricCode):
            return NotImplemented
        if (self.tower is not other.tower or self.l != other.l
                or self.k != other.k):
            return False
        return all(self.contains_codes(row) for row in other.gen.rows)

    def __hash__(self):
        raise TypeError("codes are compared by span; not hashable")

    def __repr__(self):
        return f"RankMetricCode(l={self.l}, k={self.k}, {self.tower.spec_string()})"


class GabidulinCode(RankMetricCode):
    """Generator rows are the iterated q-power images of one independent vector."""

    def __init__(self, g: IndependentTuple, k: int):
        tower = g.tower
        l = len(g)
        if not 1 <= k <= l:
            raise BadParams(f"need 1 <= k <= l, got k={k}, l={l}")
        if l >= tower.m:
            raise BadParams(f"need l < m, got l={l}, m={tower.m}")
        rows = [g.codes()]
        for _ in range(k - 1):
            rows.append(tuple(tower.frob(c, tower.e) for c in rows[-1]))
        super().__init__(Mat(tower, rows, subdeg=tower.m, check=False))
        self.g = g

    def __repr__(self):
        return (f"GabidulinCode(k={self.k}, g=({', '.join(map(str, self.g))}), "
                f"{self.tower.spec_string()})")


def gabidulin(k: int, g, tower: FieldTower | None = None) -> GabidulinCode:
    """Build the Gabidulin code of dimension k on the vector g.

    g may be an IndependentTuple or a sequence of field elements; entries
    must be independent over F_q (DependentVector otherwise) and the shape
    must satisfy 1 <= k <= l < m (BadParams otherwise).
    """
    if not isinstance(g, IndependentTuple):
        els = tuple(g)
        if not els:
            raise BadParams("empty Gabidulin vector")
        tw = tower or els[0].tower
        if len(els) >= tw.m:
            raise BadParams(f"need l < m, got l={len(els)}, m={tw.m}")
        g = IndependentTuple(els)
    return GabidulinCode(g, k)


class MatrixCode:
    """An F_q-linear code of l x m matrices, stored by an independent basis."""

    def __init__(self, tower: FieldTower, l: int, m: int,
                 basis: Sequence[Mat] = ()):
        self.tower = tower
        self.l = l
        self.m = m
        self.basis = tuple(basis)
        self._reducer = _Reducer(tower, l * m)
        for B in self.basis:
            if B.tower is not tower:
                raise TowerMismatch("basis matrix from a different tower")
            if B.shape() != (l, m) or B.subdeg != 1:
                raise BadParams("basis matrices must be l x m over F_q")
            if not self._reducer.add(_vecrow(B)):
                raise DependentVector("matrix code basis is dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.tower.q**self.dim

    def contains(self, A: Mat) -> bool:
        if A.shape() != (self.l, self.m):
            return False
        return self._reducer.contains(_vecrow(A))

    def codewords(self) -> Iterator[Mat]:
        t = self.tower
        codes = t.subfield_codes(1)
        for msg in itertools.product(codes, repeat=self.dim):
            word = [[0] * self.m for _ in range(self.l)]
            for u, B in zip(msg, self.basis):
                if u:
                    for i in range(self.l):
                        row = B.rows[i]
                        word[i] = [t.add(w, t.mul(u, x)) for w, x in zip(word[i], row)]
            yield Mat(t, word, subdeg=1, check=False)

    def __eq__(self, other):
        if not isinstance(other, MatrixCode):
            return NotImplemented
        if (self.tower is not other.tower or (self.l, self.m) != (other.l, other.m)
                or self.dim != other.dim):
            return False
        return all(self._reducer.contains(_vecrow(B)) for B in other.basis)

    def __hash__(self):
        raise TypeError("codes are compared by span; not hashable")

    def __repr__(self):
        return (f"MatrixCode({self.l}x{self.m}, dim={self.dim}, "
                f"{self.tower.spec_string()})")


def matrix_code(basis: Sequence[Mat]) -> MatrixCode:
    basis = tuple(basis)
    if not basis:
        raise BadParams("use MatrixCode(tower, l, m) directly for the zero code")
    first = basis[0]
    return MatrixCode(first.tower, first.nrows, first.ncols, basis)


def parity_check(c: GabidulinCode) -> Mat:
    """An (l-k) x l matrix H of iterated q-powers of one vector with G H^T = 0.

    The h-vector is the kernel of the l-1 shifted q-power conditions
    sum_s h_s g_s^(q^t) = 0, t = -(l-k-1) .. k-1, solved deterministically
    over the top field (first free column of the reduced system set to one).
    """
    tower = c.tower
    l, k = c.l, c.k
    d_rows = l - k
    if d_rows == 0:
        return Mat(tower, [], subdeg=tower.m, ncols=l, check=False)
    gcodes = c.g.codes()
    cond = []
    for t_exp in range(-(d_rows - 1), k):
        cond.append([tower.frob(gc, tower.e * t_exp) for gc in gcodes])
    A = Mat(tower, cond, subdeg=tower.m, check=False)
    res = rref(A)
    pivset = set(p - 1 for p in res.pivots)
    free = next(j for j in range(l) if j not in pivset)
    h = [0] * l
    h[free] = 1
    for i, p in enumerate(res.pivots):
        h[p - 1] = tower.neg(res.rref.rows[i][free])
    IndependentTuple(tuple(FieldElement(tower, x) for x in h))
    rows = [tuple(h)]
    for _ in range(d_rows - 1):
        rows.append(tuple(tower.frob(x, tower.e) for x in rows[-1]))
    H = Mat(tower, rows, subdeg=tower.m, check=False)
    prod = c.gen @ H.transpose()
    if any(any(r) for r in prod.rows):
        raise BadParams("parity-check solve failed")  # unreachable by construction
    return H


def rank_weight(x, b: OrderedBasis) -> int:
    """Rank of the basis expansion of x; independent of the basis choice."""
    return rank(expand(x, b))


def _weight_codes(tower: FieldTower, word: Sequence[int]) -> int:
    return tower.fq_rank([tower.fq_coords(c) for c in word])


def _projective_messages(alphabet: Sequence[int], k: int):
    """Nonzero messages up to leading-coefficient scaling: first nonzero is 1."""
    for lead in range(k):
        for tail in itertools.product(alphabet, repeat=k - lead - 1):
            yield (0,) * lead + (1,) + tail


def min_rank_distance(code, guard: int = DEFAULT_GUARD) -> int:
    """Minimum nonzero rank weight, by exhaustion over the message space.

    Scalar multiples share a weight, so only projective messages are
    scanned; the guard still limits the full code size.
    """
    t = code.tower
    if code.size > guard:
        raise TooLarge(f"|code| = {code.size} exceeds guard {guard}")
    best = None
    if isinstance(code, RankMetricCode):
        alphabet = range(t.order)
        rows = code.gen.rows
        for msg in _projective_messages(alphabet, code.k):
            word = [0] * code.l
            for u, row in zip(msg, rows):
                if u:
                    word = [t.add(w, t.mul(u, x)) for w, x in zip(word, row)]
            w = _weight_codes(t, word)
            if best is None or w < best:
                best = w
                if best == 1:
                    break
        return best
    if isinstance(code, MatrixCode):
        if code.dim == 0:
            raise BadParams("minimum distance of the zero code is undefined")
        alphabet = t.subfield_codes(1)
        for msg in _projective_messages(alphabet, code.dim):
            word = [[0] * code.m for _ in range(code.l)]
            for u, B in zip(msg, code.basis):
                if u:
                    for i in range(code.l):
                        word[i] = [t.add(w, t.mul(u, x))
                                   for w, x in zip(word[i], B.rows[i])]
            w = rank(Mat(t, word, subdeg=1, check=False))
            if best is None or w < best:
                best = w
                if best == 1:
                    break
        return best
    raise BadParams(f"unsupported code type {type(code).__name__}")


def expand_code(c: RankMetricCode, b: OrderedBasis) -> MatrixCode:
    """The matrix code eps_b(C): expansions of an F_q-basis of C.

    The m*k products of generator rows by basis elements already form an
    F_q-basis when the generator has full rank; they are still passed
    through a dependence filter for safety.
    """
    tower = c.tower
    mats = []
    reducer = _Reducer(tower, c.l * tower.m)
    for row in c.gen.rows:
        for e in b.elements:
            M = expand_codes([tower.mul(e.code, x) for x in row], b)
            if reducer.add(_vecrow(M)):
                mats.append(M)
    return MatrixCode(tower, c.l, tower.m, mats)


def compress_code(mc: MatrixCode, b: OrderedBasis) -> RankMetricCode:
    """eps_b^{-1}(mc) when that set is F_{q^m}-linear; NonlinearCode otherwise."""
    if not is_extension_linear(mc, b):
        raise NonlinearCode("compressed set is not linear over the top field")
    tower = mc.tower
    reducer = _Reducer(tower, mc.l)
    rows = []
    for B in mc.basis:
        v = compress_codes(B, b)
        if reducer.add(v):
            rows.append(v)
    return RankMetricCode(Mat(tower, rows, subdeg=tower.m, check=False))


def is_extension_linear(mc: MatrixCode, b: OrderedBasis,
                        guard: int = 2**24) -> bool:
    """Is eps_b^{-1}(mc) closed under scalars from the top field?

    Compares |span over F_{q^m} of the compressed basis| with |mc|; the two
    agree exactly when the compressed set is already a top-field subspace.
    """
    if mc.size > guard:
        raise TooLarge(f"|code| = {mc.size} exceeds guard {guard}")
    tower = mc.tower
    if mc.dim == 0:
        return True
    compressed = [compress_codes(B, b) for B in mc.basis]
    r = rank(Mat(tower, compressed, subdeg=tower.m, check=False))
    return tower.order**r == mc.size


# ---------------------------------------------------------------------------
# code files
# ---------------------------------------------------------------------------

def format_code_file(code) -> str:
    from .matrices import format_matrix  # local to avoid import noise at top
    tower = code.tower
    if isinstance(code, GabidulinCode):
        header = "gabidulin"
        shape = f"l={code.l},m={tower.m},k={code.k}"
        body = [format_matrix(Mat(tower, [row], subdeg=tower.m, check=False))
                for row in code.gen.rows]
    elif isinstance(code, RankMetricCode):
        header = "rankmetric"
        shape = f"l={code.l},m={tower.m},k={code.k}"
        body = [format_matrix(Mat(tower, [row], subdeg=tower.m, check=False))
                for row in code.gen.rows]
    elif isinstance(code, MatrixCode):
        header = "matrix"
        shape = f"l={code.l},m={code.m},k={code.dim}"
        body = [format_matrix(B) for B in code.basis]
    else:
        raise BadParams(f"unsupported code type {type(code).__name__}")
    return "\n".join([header, tower.spec_string(), shape, *body]) + "\n"


def parse_code_file(text: str):
    from .fields import parse_field_spec
    from .matrices import parse_matrix
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) < 3:
        raise BadParams("code file needs header, field and shape lines")
    header, field_line, shape_line = lines[0], lines[1], lines[2]
    tower = parse_field_spec(field_line)
    shape = {}
    for part in shape_line.split(","):
        key, _, val = part.partition("=")
        shape[key.strip()] = int(val)
    body = lines[3:]
    if header in ("rankmetric", "gabidulin"):
        rows = [parse_matrix(tower, ln, subdeg=tower.m).rows[0] for ln in body]
        if len(rows) != shape["k"]:
            raise BadParams("row count does not match k")
        if header == "gabidulin":
            g = IndependentTuple(tuple(FieldElement(tower, c) for c in rows[0]))
            code = GabidulinCode(g, shape["k"])
            if code.gen.rows != tuple(rows):
                raise BadParams("listed rows are not the q-power iterates of row 1")
            return code
        return RankMetricCode(Mat(tower, rows, subdeg=tower.m))
    if header == "matrix":
        basis = [parse_matrix(tower, ln, subdeg=1) for ln in body]
        return MatrixCode(tower, shape["l"], shape["m"], basis)
    raise BadParams(f"unknown code file header {header!r}")
