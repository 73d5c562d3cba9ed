"""Exact scalar arithmetic and linear algebra.

Rings here are the integers, the rationals, and prime fields GF(p); values
are plain Python ints, ``fractions.Fraction``, or residues in [0, p). All
arithmetic is exact, there is no floating point anywhere in this package.

A partial field restricts which scalars may appear in a representation: a
ring together with a unit group containing -1. Two unit groups are
supported, all nonzero elements (the field case) and {+1, -1} over the
integers (the regular partial field).

Determinants use fraction-free Bareiss elimination over the integers and
rationals and Gaussian elimination over prime fields, with direct cofactor
expansion for sizes up to 4. Pfaffians use the expansion along the first
row, memoized on index-subset masks so a full principal-minor table costs
O(2**n * n) ring operations instead of naive exponential recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InputError, MapUndefinedError, MembershipError
from .groundset import SubsetMask, mask_elements


# ---------------------------------------------------------------------------
# rings


def _is_prime(p: int) -> bool:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Ring:
    """Common interface of the supported coefficient rings."""

    kind: str = "?"
    is_field: bool = False

    zero = 0
    one = 1

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def inv(self, a):
        raise InputError(f"{self!r} has no general inverses")

    def divexact(self, a, b):
        """Division that is known to be exact in this ring."""
        raise NotImplementedError

    def coerce(self, v):
        """Normalize a Python value (int, Fraction, or string) into this ring."""
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def fmt(self, v) -> str:
        return str(v)

    def elements(self):
        raise InputError(f"{self!r} is not finitely enumerable")

    def _key(self):
        return (self.kind,)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return self.kind


class IntegerRing(Ring):
    kind = "z"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a in (1, -1):
            return a
        raise InputError(f"{a} is not a unit of the integers")

    def divexact(self, a, b):
        q, rem = divmod(a, b)
        if rem:
            raise InputError(f"inexact division {a}/{b} over the integers")
        return q

    def coerce(self, v):
        if isinstance(v, bool):
            raise InputError("booleans are not ring values")
        if isinstance(v, int):
            return v
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        if isinstance(v, str):
            return self.parse(v)
        raise InputError(f"cannot coerce {v!r} into the integers")

    def parse(self, s: str):
        try:
            return int(s.strip())
        except ValueError as exc:
            raise InputError(f"bad integer literal {s!r}") from exc


class RationalField(Ring):
    kind = "q"
    is_field = True

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise InputError("division by zero")
        return 1 / a

    def divexact(self, a, b):
        if b == 0:
            raise InputError("division by zero")
        return a / b

    def coerce(self, v):
        if isinstance(v, bool):
            raise InputError("booleans are not ring values")
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        if isinstance(v, str):
            return self.parse(v)
        raise InputError(f"cannot coerce {v!r} into the rationals")

    def parse(self, s: str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {s!r}") from exc


class PrimeField(Ring):
    """GF(p), residues kept canonical in [0, p)."""

    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputError(f"{p!r} is not prime")
        self.p = p
        self.kind = "gfp"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise InputError("division by zero")
        return pow(a, -1, self.p)

    def divexact(self, a, b):
        return a * self.inv(b) % self.p

    def coerce(self, v):
        if isinstance(v, bool):
            raise InputError("booleans are not ring values")
        if isinstance(v, int):
            return v % self.p
        if isinstance(v, str):
            return self.parse(v)
        raise InputError(f"cannot coerce {v!r} into GF({self.p})")

    def parse(self, s: str):
        s = s.strip()
        if "/" in s:
            raise InputError(f"residues are plain decimal strings, got {s!r}")
        try:
            return int(s) % self.p
        except ValueError as exc:
            raise InputError(f"bad residue literal {s!r}") from exc

    def elements(self):
        return range(self.p)

    def _key(self):
        return (self.kind, self.p)

    def __repr__(self) -> str:
        return f"gf({self.p})"


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# partial fields

UNITS_ALL = "all"
UNITS_PM_ONE = "pm_one"


@dataclass(frozen=True, slots=True)
class PartialField:
    """A ring together with the unit group allowed in representations.

    ``units`` is either ``"all"`` (every nonzero element; requires a field)
    or ``"pm_one"`` ({+1, -1} over the integers, the regular partial field).
    """

    ring: Ring
    units: str

    def __post_init__(self) -> None:
        if self.units == UNITS_ALL:
            if not self.ring.is_field:
                raise InputError("the all-nonzero unit group requires a field")
        elif self.units == UNITS_PM_ONE:
            if self.ring != ZZ:
                raise InputError("the {+1,-1} unit group is supported over the integers only")
        else:
            raise InputError(f"unknown unit group {self.units!r}")

    @classmethod
    def for_field(cls, ring: Ring) -> PartialField:
        return cls(ring, UNITS_ALL)

    def is_element(self, v) -> bool:
        """Whether v lies in the unit group or is zero."""
        if self.ring.is_zero(v):
            return True
        if self.units == UNITS_ALL:
            return True
        return v == 1 or v == -1

    def json_decl(self) -> dict:
        if self.units == UNITS_PM_ONE:
            return {"kind": "regular"}
        if self.ring == QQ:
            return {"kind": "q"}
        return {"kind": "gfp", "p": self.ring.p}

    def __repr__(self) -> str:
        if self.units == UNITS_PM_ONE:
            return "regular"
        return repr(self.ring)


REGULAR = PartialField(ZZ, UNITS_PM_ONE)


def is_element(pf: PartialField, v) -> bool:
    return pf.is_element(v)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    """An immutable rows x cols matrix over one ring, row-major entries.

    Rows and columns are 0-indexed internally; when a matrix is tied to a
    ground set, column j-1 carries element label j.
    """

    ring: Ring
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise InputError("ragged rows")
        entries = tuple(ring.coerce(v) for r in rows for v in r)
        return cls(ring, len(rows), ncols, entries)

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def column_submatrix(self, col_idx: Sequence[int]) -> "Matrix":
        """Select columns by 0-based index, keeping their given order."""
        ents = []
        c = self.cols
        for i in range(self.rows):
            base = i * c
            ents.extend(self.entries[base + j] for j in col_idx)
        return Matrix(self.ring, self.rows, len(col_idx), tuple(ents))

    def to_json_rows(self) -> list[list[str]]:
        fmt = self.ring.fmt
        return [[fmt(v) for v in row] for row in self.row_lists()]

    def __repr__(self) -> str:
        return f"Matrix({self.ring!r}, {self.rows}x{self.cols})"


class SkewMatrix(Matrix):
    """A square skew-symmetric matrix (zero diagonal required)."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.rows != self.cols:
            raise InputError("skew matrix must be square")
        n = self.rows
        ring = self.ring
        for i in range(n):
            if not ring.is_zero(self.entry(i, i)):
                raise InputError(f"diagonal entry ({i + 1},{i + 1}) must be zero")
            for j in range(i + 1, n):
                if self.entry(j, i) != ring.neg(self.entry(i, j)):
                    raise InputError(
                        f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not skew"
                    )

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> "SkewMatrix":
        m = Matrix.from_rows(ring, rows)
        return cls(ring, m.rows, m.cols, m.entries)

    @classmethod
    def from_upper(cls, ring: Ring, n: int, upper: Sequence) -> "SkewMatrix":
        """Build from the strictly-upper-triangle entries, row by row."""
        need = n * (n - 1) // 2
        vals = [ring.coerce(v) for v in upper]
        if len(vals) != need:
            raise InputError(f"expected {need} upper entries, got {len(vals)}")
        grid = [[ring.zero] * n for _ in range(n)]
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                grid[i][j] = vals[k]
                grid[j][i] = ring.neg(vals[k])
                k += 1
        return cls(ring, n, n, tuple(v for row in grid for v in row))

    @property
    def size(self) -> int:
        return self.rows

    def principal(self, j) -> "SkewMatrix":
        """Principal submatrix on the elements of j (a SubsetMask or bare mask)."""
        bits = j.bits if isinstance(j, SubsetMask) else j
        if isinstance(j, SubsetMask) and j.ground.n != self.size:
            raise InputError(
                f"subset lives on a ground set of size {j.ground.n}, matrix has size {self.size}"
            )
        if not 0 <= bits < (1 << self.size):
            raise InputError(f"mask {bits!r} does not index a {self.size}x{self.size} matrix")
        idx = [e - 1 for e in mask_elements(bits)]
        ents = tuple(self.entry(a, b) for a in idx for b in idx)
        return SkewMatrix(self.ring, len(idx), len(idx), ents)


def principal_submatrix(m: SkewMatrix, j) -> SkewMatrix:
    return m.principal(j)


# ---------------------------------------------------------------------------
# determinants


def _det_cofactor(ring: Ring, rows: list[list]):
    n = len(rows)
    if n == 0:
        return ring.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return ring.sub(ring.mul(rows[0][0], rows[1][1]), ring.mul(rows[0][1], rows[1][0]))
    acc = ring.zero
    for j in range(n):
        a = rows[0][j]
        if ring.is_zero(a):
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = ring.mul(a, _det_cofactor(ring, minor))
        acc = ring.add(acc, term) if j % 2 == 0 else ring.sub(acc, term)
    return acc


def _det_bareiss(ring: Ring, a: list[list]):
    """Fraction-free elimination; exact over the integers and rationals."""
    n = len(a)
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(a[k][k]):
            pivot_row = next(
                (i for i in range(k + 1, n) if not ring.is_zero(a[i][k])), None
            )
            if pivot_row is None:
                return ring.zero
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(a[i][j], pivot), ring.mul(a[i][k], a[k][j]))
                a[i][j] = ring.divexact(num, prev)
            a[i][k] = ring.zero
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign == 1 else ring.neg(det)


def _det_gauss(field: Ring, a: list[list]):
    n = len(a)
    det = field.one
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if not field.is_zero(a[i][k])), None)
        if pivot_row is None:
            return field.zero
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = field.neg(det)
        pivot = a[k][k]
        det = field.mul(det, pivot)
        inv = field.inv(pivot)
        for i in range(k + 1, n):
            f = field.mul(a[i][k], inv)
            if field.is_zero(f):
                continue
            for j in range(k, n):
                a[i][j] = field.sub(a[i][j], field.mul(f, a[k][j]))
    return det


def determinant(m: Matrix):
    """Exact determinant of a square matrix."""
    if m.rows != m.cols:
        raise InputError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return m.ring.one
    rows = m.row_lists()
    if n <= 4:
        return _det_cofactor(m.ring, rows)
    if isinstance(m.ring, PrimeField):
        return _det_gauss(m.ring, rows)
    return _det_bareiss(m.ring, rows)


# ---------------------------------------------------------------------------
# pfaffians


def pfaffian(m: SkewMatrix):
    """Pfaffian via first-row expansion, memoized per call on index masks.

    Conventions: the empty matrix has Pfaffian 1, odd sizes give 0, and
    [[0, a], [-a, 0]] gives a. The square of the result is always the
    determinant.
    """
    if not isinstance(m, SkewMatrix):
        raise InputError("pfaffian needs a skew-symmetric matrix")
    ring = m.ring
    n = m.size
    if n % 2:
        return ring.zero
    entry = m.entry
    memo: dict[int, object] = {0: ring.one}

    def rec(mask: int):
        got = memo.get(mask)
        if got is not None:
            return got
        lowbit = mask & -mask
        i1 = lowbit.bit_length() - 1
        rest = mask ^ lowbit
        acc = ring.zero
        t = 1
        r = rest
        while r:
            b = r & -r
            r ^= b
            t += 1
            a = entry(i1, b.bit_length() - 1)
            if not ring.is_zero(a):
                sub = rec(mask ^ lowbit ^ b)
                if not ring.is_zero(sub):
                    term = ring.mul(a, sub)
                    acc = ring.add(acc, term) if t % 2 == 0 else ring.sub(acc, term)
        memo[mask] = acc
        return acc

    return rec((1 << n) - 1)


def all_principal_pfaffians(m: SkewMatrix) -> list:
    """Pfaffians of every principal submatrix, indexed by subset mask.

    Dynamic programming over masks in increasing order: each even-size mask
    expands along its lowest element, so the whole table costs
    O(2**n * n) ring operations.
    """
    if not isinstance(m, SkewMatrix):
        raise InputError("pfaffian table needs a skew-symmetric matrix")
    ring = m.ring
    n = m.size
    zero = ring.zero
    entry = m.entry
    table = [zero] * (1 << n)
    table[0] = ring.one
    for mask in range(1, 1 << n):
        if mask.bit_count() % 2:
            continue
        lowbit = mask & -mask
        i1 = lowbit.bit_length() - 1
        acc = zero
        t = 1
        r = mask ^ lowbit
        while r:
            b = r & -r
            r ^= b
            t += 1
            a = entry(i1, b.bit_length() - 1)
            if not ring.is_zero(a):
                sub = table[mask ^ lowbit ^ b]
                if not ring.is_zero(sub):
                    term = ring.mul(a, sub)
                    acc = ring.add(acc, term) if t % 2 == 0 else ring.sub(acc, term)
        table[mask] = acc
    return table


# ---------------------------------------------------------------------------
# homomorphisms

HOM_IDENTITY = "identity"
HOM_INT_TO_GFP = "int_to_gfp"
HOM_RAT_TO_GFP = "rat_to_gfp"


@dataclass(frozen=True, slots=True)
class Homomorphism:
    """A ring homomorphism carrying units of the source into units of the target."""

    source: PartialField
    target: PartialField
    kind: str

    def apply(self, v):
        if self.kind == HOM_IDENTITY:
            return v
        p = self.target.ring.p
        if self.kind == HOM_INT_TO_GFP:
            return v % p
        if self.kind == HOM_RAT_TO_GFP:
            den = v.denominator % p
            if den == 0:
                raise MapUndefinedError(
                    f"denominator of {v} is divisible by {p}; residue map undefined"
                )
            return v.numerator % p * pow(den, -1, p) % p
        raise InputError(f"unknown homomorphism kind {self.kind!r}")


def identity_hom(pf: PartialField) -> Homomorphism:
    return Homomorphism(pf, pf, HOM_IDENTITY)


def residue_hom(p: int) -> Homomorphism:
    """Reduction mod p, from the regular partial field (and the integers) onto GF(p)."""
    return Homomorphism(REGULAR, PartialField.for_field(GF(p)), HOM_INT_TO_GFP)


def rational_residue_hom(p: int) -> Homomorphism:
    """The partial map from the rationals onto GF(p); fails on denominators divisible by p."""
    return Homomorphism(PartialField.for_field(QQ), PartialField.for_field(GF(p)), HOM_RAT_TO_GFP)


def apply_hom(h: Homomorphism, m: Matrix) -> Matrix:
    """Apply a homomorphism entrywise; skew matrices stay skew."""
    target = h.target.ring
    ents = tuple(h.apply(v) for v in m.entries)
    cls = SkewMatrix if isinstance(m, SkewMatrix) else Matrix
    return cls(target, m.rows, m.cols, ents)


def apply_hom_value(h: Homomorphism, v):
    return h.apply(v)
