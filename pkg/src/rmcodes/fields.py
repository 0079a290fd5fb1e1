"""Exact arithmetic in a tower F_p <= F_q <= F_{q^m} with q = p^e.

The top field is realised once as F_p[t]/(modulus) of degree e*m, and every
intermediate field F_{q^d} (d | m) is carved out of it as the fixed set of
x -> x^(q^d), or equivalently as {0} plus the cyclic group generated by an
appropriate power of the primitive generator.  Elements are stored as integer
codes: the base-p digits of the code are the polynomial coefficients in
ascending degree.  Multiplication runs on discrete-log tables built at
construction time, so a tower is cheap to use but pays an O(field size)
set-up cost; this library deliberately targets desk-scale fields only.

Element text syntax (accepted everywhere, produced as the first two forms):

    0           the zero element
    g^k         the k-th power of the tower generator
    poly:[c0,c1,...]   explicit coefficient vector over F_p
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    BadParams,
    DependentVector,
    DivisionByZero,
    DoesNotDivide,
    NotPrime,
    NotPrimitiveModulus,
    ReducibleModulus,
    TowerMismatch,
)

_ADD_TABLE_LIMIT = 2048  # full addition table only for small odd-p fields


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (construction-time only)
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _poly_trim([x % p for x in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while a and len(a) - 1 >= df:
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fi) % p
        a = _poly_trim(a)
    return a


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base: Sequence[int], exp: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, p)
    while exp:
        if exp & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        exp >>= 1
    return result


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Degree-n polynomial has no factor of degree <= n/2.

    Tests gcd(f, x^(p^k) - x) for k = 1 .. n//2; any common factor exposes an
    irreducible factor of f of degree dividing k.
    """
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    xpk = [0, 1]
    for _ in range(n // 2):
        xpk = _poly_powmod(xpk, p, f, p)
        probe = list(xpk) + [0] * max(0, 2 - len(xpk))
        probe[1] = (probe[1] - 1) % p
        g = _poly_gcd(f, _poly_trim(probe), p)
        if len(g) - 1 >= 1:
            return False
    return True


def _root_is_primitive(f: Sequence[int], p: int) -> bool:
    """Multiplicative order of t modulo irreducible f equals p^deg(f) - 1."""
    n = len(f) - 1
    order = p**n - 1
    for ell in _prime_factors(order):
        if _poly_powmod([0, 1], order // ell, f, p) == [1]:
            return False
    return True


# ---------------------------------------------------------------------------
# the tower
# ---------------------------------------------------------------------------

class FieldTower:
    """The chain F_p <= F_q = F_{p^e} <= F_{q^m}, with log tables and a
    primitive generator.

    Do not instantiate directly; use :func:`make_tower`.
    """

    def __init__(self, p: int, e: int, m: int, modulus: tuple[int, ...],
                 generator_code: int):
        self.p = p
        self.e = e
        self.m = m
        self.q = p**e
        self.modulus = modulus
        self.degree = e * m          # over F_p
        self.order = p**self.degree  # size of the top field
        self.mult_order = self.order - 1
        self._build_tables(generator_code)
        self._subfield_cache: dict[int, tuple[int, ...]] = {}
        self._fq_solver: list[tuple[int, ...]] | None = None
        self._gen = FieldElement(self, self._exp[1] if self.mult_order > 1 else 1)

    # -- construction ------------------------------------------------------

    def _code_times_t(self, code: int) -> int:
        p, deg = self.p, self.degree
        if p == 2:
            code <<= 1
            if code >> deg & 1:
                code ^= self._modcode
            return code
        digits = self._digits(code)
        top = digits[-1]
        digits = [0] + digits[:-1]
        if top:
            digits = [(d - top * mi) % p for d, mi in zip(digits, self.modulus)]
        return self._encode(digits)

    def _build_tables(self, generator_code: int):
        p, deg = self.p, self.degree
        self._modcode = sum(c * p**i for i, c in enumerate(self.modulus))
        n = self.mult_order
        exp = [0] * max(n, 1)
        log = [-1] * self.order
        if generator_code == p:  # generator is t: cheap shift-and-reduce walk
            v = 1
            for i in range(n):
                if log[v] != -1:
                    raise NotPrimitiveModulus(
                        "root of the modulus has multiplicative order "
                        f"{i} < {n}")
                exp[i] = v
                log[v] = i
                v = self._code_times_t(v)
            if v != 1:
                raise NotPrimitiveModulus("modulus root order check failed")
        else:
            gd = self._digits(generator_code)
            v = [1]
            for i in range(n):
                code = self._encode(v + [0] * (deg - len(v)))
                if log[code] != -1:
                    raise NotPrimitiveModulus(
                        f"generator candidate has order {i} < {n}")
                exp[i] = code
                log[code] = i
                v = _poly_mod(_poly_mul(v, gd, p), list(self.modulus), p)
        self._exp = exp
        self._log = log
        if p != 2 and self.order <= _ADD_TABLE_LIMIT:
            self._addtab = [
                [self._add_slow(a, b) for b in range(self.order)]
                for a in range(self.order)
            ]
        else:
            self._addtab = None

    def _digits(self, code: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.degree):
            code, r = divmod(code, p)
            out.append(r)
        return out

    def _encode(self, digits: Sequence[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    # -- code-level arithmetic (hot path) -----------------------------------

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        mul = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mul
            mul *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._addtab is not None:
            return self._addtab[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out = 0
        mul = 1
        while a:
            a, r = divmod(a, p)
            out += ((-r) % p) * mul
            mul *= p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        n = self.mult_order
        return self._exp[(self._log[a] + self._log[b]) % n]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        n = self.mult_order
        return self._exp[(n - self._log[a]) % n]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        n = self.mult_order
        return self._exp[(self._log[a] - self._log[b]) % n]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k > 0:
                return 0
            if k == 0:
                return 1
            raise DivisionByZero("negative power of zero")
        n = self.mult_order
        return self._exp[(self._log[a] * k) % n]

    def frob(self, a: int, r: int) -> int:
        """a^(p^r); r may be any integer, reduced modulo e*m."""
        if a == 0:
            return 0
        r %= self.degree
        n = self.mult_order
        return self._exp[(self._log[a] * pow(self.p, r, n)) % n]

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("discrete log of zero")
        return self._log[a]

    # -- elements and subfields ---------------------------------------------

    @property
    def generator(self) -> "FieldElement":
        return self._gen

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise BadParams(f"element code {code} outside [0, {self.order})")
        return FieldElement(self, code)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        if len(coeffs) > self.degree:
            raise BadParams("coefficient vector longer than the field degree")
        digits = [c % self.p for c in coeffs] + [0] * (self.degree - len(coeffs))
        return FieldElement(self, self._encode(digits))

    def gen_power(self, k: int) -> "FieldElement":
        return FieldElement(self, self._exp[k % self.mult_order])

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.order):
            yield FieldElement(self, code)

    def subfield_codes(self, d: int) -> tuple[int, ...]:
        """Sorted codes of F_{q^d}, the fixed set of x -> x^(q^d)."""
        if d < 1 or self.m % d != 0:
            raise DoesNotDivide(f"subfield degree {d} does not divide m={self.m}")
        cached = self._subfield_cache.get(d)
        if cached is None:
            size = self.q**d - 1
            step = self.mult_order // size
            codes = [0] + [self._exp[(i * step) % self.mult_order] for i in range(size)]
            cached = tuple(sorted(codes))
            self._subfield_cache[d] = cached
        return cached

    def subfield(self, d: int) -> tuple["FieldElement", ...]:
        return tuple(FieldElement(self, c) for c in self.subfield_codes(d))

    def in_subfield(self, code: int, d: int) -> bool:
        return self.frob(code, self.e * d) == code

    # -- F_q-coordinates w.r.t. the internal basis (t^j u_s) ----------------

    def fq_coords(self, code: int) -> tuple[int, ...]:
        """Coordinates of an element over F_q w.r.t. the basis (1, t, ..., t^(m-1)).

        With e = 1 these are just the base-p digits.  For e > 1 the
        coordinates are recovered through a precomputed F_p change of basis.
        """
        if self.e == 1:
            return tuple(self._digits(code))
        solver = self._fq_solver_rows()
        digits = self._digits(code)
        m, e, p = self.m, self.e, self.p
        raw = []
        for row in solver:
            s = 0
            for d, r in zip(digits, row):
                s += d * r
            raw.append(s % p)
        wgen = self._fq_gen_code()
        coords = []
        for j in range(m):
            c = 0
            for s in range(e):
                if raw[j * e + s]:
                    c = self.add(c, self.mul(raw[j * e + s] % p, self.pow(wgen, s)))
            coords.append(c)
        return tuple(coords)

    def _fq_gen_code(self) -> int:
        return self._exp[self.mult_order // (self.q - 1)]

    def _fq_solver_rows(self) -> list[tuple[int, ...]]:
        if self._fq_solver is None:
            p, e, m, deg = self.p, self.e, self.m, self.degree
            wgen = self._fq_gen_code()
            cols = []
            for j in range(m):
                tj = self.pow(self.p, j) if j else 1  # t^j; code of t is p
                for s in range(e):
                    basis_el = self.mul(tj, self.pow(wgen, s))
                    cols.append(self._digits(basis_el))
            # invert the deg x deg matrix whose columns are the basis digits
            aug = [[cols[c][r] for c in range(deg)] + [1 if k == r else 0 for k in range(deg)]
                   for r in range(deg)]
            rank = 0
            for col in range(deg):
                piv = next((i for i in range(rank, deg) if aug[i][col]), None)
                if piv is None:
                    raise BadParams("internal basis is degenerate")
                aug[rank], aug[piv] = aug[piv], aug[rank]
                ipiv = pow(aug[rank][col], -1, p)
                aug[rank] = [(x * ipiv) % p for x in aug[rank]]
                for i in range(deg):
                    if i != rank and aug[i][col]:
                        f = aug[i][col]
                        aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[rank])]
                rank += 1
            self._fq_solver = [tuple(row[deg:]) for row in aug]
        return self._fq_solver

    def fq_rank(self, rows: Sequence[Sequence[int]]) -> int:
        """Rank over F_q of a list of F_q-coordinate rows (code entries)."""
        work = [list(r) for r in rows]
        ncols = len(work[0]) if work else 0
        rank = 0
        for col in range(ncols):
            piv = next((i for i in range(rank, len(work)) if work[i][col]), None)
            if piv is None:
                continue
            work[rank], work[piv] = work[piv], work[rank]
            ipiv = self.inv(work[rank][col])
            work[rank] = [self.mul(ipiv, x) for x in work[rank]]
            for i in range(len(work)):
                if i != rank and work[i][col]:
                    f = work[i][col]
                    work[i] = [self.sub(x, self.mul(f, y))
                               for x, y in zip(work[i], work[rank])]
            rank += 1
        return rank

    # -- misc ----------------------------------------------------------------

    def spec_string(self) -> str:
        mods = ",".join(str(c) for c in self.modulus)
        return f"gf({self.p},{self.e},{self.m};modulus=[{mods}])"

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, m={self.m}, modulus={list(self.modulus)})"


@dataclass(frozen=True)
class FieldElement:
    """An element of the top field of a tower, in canonical coefficient form."""

    tower: FieldTower
    code: int

    def _require_same(self, other: "FieldElement"):
        if self.tower is not other.tower:
            raise TowerMismatch("elements from different towers")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.tower._digits(self.code))

    def __add__(self, other):
        self._require_same(other)
        return FieldElement(self.tower, self.tower.add(self.code, other.code))

    def __sub__(self, other):
        self._require_same(other)
        return FieldElement(self.tower, self.tower.sub(self.code, other.code))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.code))

    def __mul__(self, other):
        self._require_same(other)
        return FieldElement(self.tower, self.tower.mul(self.code, other.code))

    def __truediv__(self, other):
        self._require_same(other)
        return FieldElement(self.tower, self.tower.div(self.code, other.code))

    def __pow__(self, k: int):
        return FieldElement(self.tower, self.tower.pow(self.code, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.tower, self.tower.inv(self.code))

    def frobenius(self, r: int = 1) -> "FieldElement":
        """The p^r-power map sigma_p^r applied to this element."""
        return FieldElement(self.tower, self.tower.frob(self.code, r))

    def log(self) -> int:
        return self.tower.log(self.code)

    def __bool__(self):
        return self.code != 0

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{format_element(self)} in {self.tower.spec_string()}>"


def frobenius(x: FieldElement, r: int) -> FieldElement:
    """x^(p^r); the identity for r = 0 mod e*m, F_p-linear and multiplicative."""
    return x.frobenius(r)


def subfield(tower: FieldTower, d: int) -> tuple[FieldElement, ...]:
    """All q^d elements of F_{q^d} inside the tower, sorted by code."""
    return tower.subfield(d)


# ---------------------------------------------------------------------------
# bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderedBasis:
    """An ordered basis of F_{q^m} over F_q; length m, independence verified."""

    elements: tuple[FieldElement, ...]

    def __post_init__(self):
        els = self.elements
        if not els:
            raise BadParams("empty basis")
        tower = els[0].tower
        for x in els:
            if x.tower is not tower:
                raise TowerMismatch("basis elements from different towers")
        if len(els) != tower.m:
            raise BadParams(f"basis needs m={tower.m} elements, got {len(els)}")
        rows = [tower.fq_coords(x.code) for x in els]
        if tower.fq_rank(rows) != tower.m:
            raise DependentVector("basis elements dependent over F_q")

    @property
    def tower(self) -> FieldTower:
        return self.elements[0].tower

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "(" + ", ".join(format_element(x) for x in self.elements) + ")"


def power_basis(tower: FieldTower) -> OrderedBasis:
    """(1, g, g^2, ..., g^(m-1)) for the tower generator g."""
    return OrderedBasis(tuple(tower.generator**i for i in range(tower.m)))


def normal_basis_from(x: FieldElement) -> OrderedBasis:
    """(x, x^q, ..., x^(q^(m-1))); raises DependentVector if x is not normal."""
    tower = x.tower
    els = [x]
    for _ in range(tower.m - 1):
        els.append(els[-1].frobenius(tower.e))
    return OrderedBasis(tuple(els))


def is_normal(x: FieldElement) -> bool:
    try:
        normal_basis_from(x)
        return True
    except DependentVector:
        return False


def find_normal_element(tower: FieldTower) -> FieldElement:
    """Smallest generator power whose Frobenius orbit is an ordered basis.

    Restricted to e = 1 towers; that covers every normal basis this library
    needs, and keeps the search a plain F_p rank test.
    """
    if tower.e != 1:
        raise BadParams("normal element search implemented for e = 1 only")
    for k in range(tower.mult_order):
        x = tower.gen_power(k)
        if is_normal(x):
            return x
    raise BadParams("no normal element found")  # unreachable: they always exist


# ---------------------------------------------------------------------------
# construction and text forms
# ---------------------------------------------------------------------------

def _default_modulus(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically least monic primitive polynomial of the degree.

    Candidates are ordered by their non-leading coefficient vector read as a
    base-p integer (ascending degree, least significant first).
    """
    for low in range(1, p**degree):
        coeffs = []
        c = low
        for _ in range(degree):
            c, r = divmod(c, p)
            coeffs.append(r)
        coeffs.append(1)
        if coeffs[0] == 0:
            continue
        if _is_irreducible(coeffs, p) and _root_is_primitive(coeffs, p):
            return tuple(coeffs)
    raise BadParams(f"no primitive polynomial of degree {degree} over F_{p}")


_tower_cache: dict[tuple, FieldTower] = {}


def make_tower(p: int, e: int, m: int,
               modulus: Sequence[int] | None = None,
               require_primitive: bool = True) -> FieldTower:
    """Build the tower F_p <= F_{p^e} <= F_{p^(e*m)}.

    With no modulus, the lexicographically least monic primitive polynomial
    of degree e*m is searched for, so construction is deterministic.  A
    supplied modulus is verified irreducible; its root becomes the tower
    generator when primitive.  If the root is not primitive, the default is
    to reject (NotPrimitiveModulus); pass require_primitive=False to keep the
    modulus and search for the least primitive element instead.

    Towers are interned: equal parameters return the identical instance, so
    elements parsed from files interoperate with programmatic ones.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1 or m < 1:
        raise BadParams("e and m must be positive")
    degree = e * m
    if modulus is None:
        mod = _default_modulus(p, degree)
        gen_code = p
    else:
        mod = tuple(c % p for c in modulus)
        if len(mod) != degree + 1:
            raise BadParams(f"modulus must have degree {degree} (length {degree + 1})")
        if mod[-1] != 1:
            raise BadParams("modulus must be monic")
        if not _is_irreducible(mod, p):
            raise ReducibleModulus(f"{list(mod)} factors over F_{p}")
        if _root_is_primitive(mod, p):
            gen_code = p
        elif require_primitive:
            raise NotPrimitiveModulus(
                "modulus is irreducible but its root is not primitive")
        else:
            gen_code = _find_primitive_code(mod, p)
    key = (p, e, m, mod, gen_code)
    tower = _tower_cache.get(key)
    if tower is None:
        tower = FieldTower(p, e, m, mod, generator_code=gen_code)
        _tower_cache[key] = tower
    return tower


def _find_primitive_code(mod: tuple[int, ...], p: int) -> int:
    degree = len(mod) - 1
    order = p**degree - 1
    fac = _prime_factors(order)
    for code in range(2, p**degree):
        digits = []
        c = code
        for _ in range(degree):
            c, r = divmod(c, p)
            digits.append(r)
        poly = _poly_trim(list(digits))
        if not poly:
            continue
        if all(_poly_powmod(poly, order // ell, mod, p) != [1] for ell in fac):
            return code
    raise BadParams("no primitive element found")  # unreachable


_FIELD_SPEC_RE = re.compile(
    r"^gf\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*"
    r"(?:;\s*modulus=\[([0-9,\s]*)\]\s*)?\)$"
)


def parse_field_spec(spec: str) -> FieldTower:
    """Parse `gf(p,e,m)` or `gf(p,e,m;modulus=[c0,...])`."""
    mm = _FIELD_SPEC_RE.match(spec.strip())
    if not mm:
        raise BadParams(f"bad field spec: {spec!r}")
    p, e, m = int(mm.group(1)), int(mm.group(2)), int(mm.group(3))
    modulus = None
    if mm.group(4) is not None:
        modulus = [int(tok) for tok in mm.group(4).split(",") if tok.strip()]
    return make_tower(p, e, m, modulus)


def format_element(x: FieldElement) -> str:
    if x.code == 0:
        return "0"
    return f"g^{x.tower.log(x.code)}"


def parse_element(tower: FieldTower, text: str) -> FieldElement:
    text = text.strip()
    if text == "0":
        return tower.zero
    if text == "g":
        return tower.generator
    if text.startswith("g^"):
        return tower.gen_power(int(text[2:]))
    if text.startswith("poly:[") and text.endswith("]"):
        body = text[len("poly:["):-1]
        coeffs = [int(tok) for tok in body.split(",") if tok.strip()] if body.strip() else []
        return tower.from_coeffs(coeffs)
    if text.isdigit() and int(text) < tower.p:
        return tower.from_coeffs([int(text)])
    raise BadParams(f"bad element literal: {text!r}")
