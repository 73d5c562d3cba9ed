"""Coordinate vectors indexed by all subsets and their Pfaffian relations.

A vector assigns a partial-field element p_J to every subset J of {1..n},
not all zero. For every unordered pair J1 != J2 with symmetric difference
{i_1 < ... < i_k}, k >= 1, the relation

    sum over j of  (-1)**j * p_{J1 delta i_j} * p_{J2 delta i_j}  =  0

must hold for the vector to be the table of principal Pfaffians of a skew
matrix, up to a twist. Pairs at odd symmetric-difference distance are part
of the family; they are what forces all support members onto one size
parity. The short family keeps only pairs at distance four. A vector is
Strong when the full family vanishes, Weak when the short family vanishes
and the support satisfies symmetric exchange, Neither otherwise.

A representation is a skew matrix A plus a twist set T; it induces the
vector p_J = Pf(A restricted to J delta T). Reconstruction inverts this:
twist by the colex-least support member, rescale so the empty set gets 1,
and read the matrix entries off the two-element coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import ClassificationError, InputError, MembershipError, ScalingError
from .exactalg import PartialField, SkewMatrix, all_principal_pfaffians
from .groundset import GroundSet, SubsetMask, masks_of_size
from .matroid import BasisFamily, is_orthogonal
from .plucker import _canonical_scale
from .verdicts import AxiomVerdict, Label


@dataclass(frozen=True)
class WickVector:
    """Projective point indexed by all 2**n subsets, mask order = colex order.

    Canonical scaling matches PluckerVector: first nonzero coordinate is 1
    over a field, +1 over the regular partial field.
    """

    ground: GroundSet
    pf: PartialField
    coords: tuple

    def __post_init__(self) -> None:
        n = self.ground.n
        if len(self.coords) != 1 << n:
            raise InputError(f"expected {1 << n} coordinates, got {len(self.coords)}")
        ring = self.pf.ring
        coords = [ring.coerce(v) for v in self.coords]
        for mask, v in enumerate(coords):
            if not self.pf.is_element(v):
                key = ",".join(map(str, SubsetMask(self.ground, mask).elements()))
                raise MembershipError(
                    f"coordinate {key!r} has value {ring.fmt(v)} outside the partial field"
                )
        object.__setattr__(self, "coords", tuple(_canonical_scale(self.pf, coords)))

    @classmethod
    def from_coords(
        cls, ground: GroundSet, pf: PartialField, coords: Mapping[int, object] | list
    ) -> "WickVector":
        if isinstance(coords, Mapping):
            ring = pf.ring
            size = 1 << ground.n
            bad = [m for m in coords if not 0 <= m < size]
            if bad:
                raise InputError(f"coordinate mask {min(bad)!r} does not fit the ground set")
            dense = [coords.get(m, ring.zero) for m in range(size)]
        else:
            dense = list(coords)
        return cls(ground, pf, tuple(dense))

    def coord(self, j: SubsetMask):
        if j.ground.n != self.ground.n:
            raise InputError("subset from a different ground set")
        return self.coords[j.bits]

    def items(self):
        for m, v in enumerate(self.coords):
            yield SubsetMask(self.ground, m), v

    def support_masks(self) -> tuple[int, ...]:
        ring = self.pf.ring
        return tuple(m for m, v in enumerate(self.coords) if not ring.is_zero(v))


@dataclass(frozen=True)
class WickRepresentation:
    """A skew matrix plus a twist set over the matrix's index set."""

    matrix: SkewMatrix
    twist: SubsetMask

    def __post_init__(self) -> None:
        if self.twist.ground.n != self.matrix.size:
            raise InputError(
                f"twist ground set size {self.twist.ground.n} does not match matrix size "
                f"{self.matrix.size}"
            )


@dataclass(frozen=True, slots=True)
class WickPairVerdict:
    """Sweep outcome; on failure (j1, j2) is the numerically first bad pair."""

    ok: bool
    j1: SubsetMask | None = None
    j2: SubsetMask | None = None
    value: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, slots=True)
class WickClassification:
    label: Label
    full: WickPairVerdict
    short: WickPairVerdict
    support: AxiomVerdict


def wick_support(p: WickVector) -> BasisFamily:
    return BasisFamily(p.ground, frozenset(p.support_masks()))


def wick_from_representation(rep: WickRepresentation, pf: PartialField) -> WickVector:
    """Principal Pfaffians of the matrix, reindexed through the twist.

    Every entry of the matrix and every resulting Pfaffian must be a
    partial-field element; a Pfaffian escaping the unit group raises
    MembershipError naming the offending subset.
    """
    a = rep.matrix
    if a.ring != pf.ring:
        raise InputError(f"matrix ring {a.ring!r} does not match partial field {pf!r}")
    for i in range(a.size):
        for j in range(i + 1, a.size):
            if not pf.is_element(a.entry(i, j)):
                raise MembershipError(
                    f"matrix entry ({i + 1},{j + 1}) = {a.ring.fmt(a.entry(i, j))} "
                    f"is outside the partial field"
                )
    ground = GroundSet(a.size)
    table = all_principal_pfaffians(a)
    tb = rep.twist.bits
    coords = [table[m ^ tb] for m in range(1 << a.size)]
    for mask, v in enumerate(coords):
        if not pf.is_element(v):
            key = ",".join(map(str, SubsetMask(ground, mask).elements()))
            raise MembershipError(
                f"principal Pfaffian at {key!r} is {a.ring.fmt(v)}, outside the partial field"
            )
    return WickVector(ground, pf, tuple(coords))


def _pair_value(ring, coords, j1: int, j2: int):
    acc = ring.zero
    pos = 0
    m = j1 ^ j2
    while m:
        b = m & -m
        m ^= b
        pos += 1
        v1 = coords[j1 ^ b]
        if ring.is_zero(v1):
            continue
        v2 = coords[j2 ^ b]
        if ring.is_zero(v2):
            continue
        term = ring.mul(v1, v2)
        acc = ring.sub(acc, term) if pos & 1 else ring.add(acc, term)
    return acc


def check_wick_full(p: WickVector) -> WickPairVerdict:
    """Sweep every unordered pair {J1, J2}, including odd distances."""
    ring = p.pf.ring
    coords = p.coords
    size = 1 << p.ground.n
    for j1 in range(size):
        for j2 in range(j1 + 1, size):
            val = _pair_value(ring, coords, j1, j2)
            if not ring.is_zero(val):
                return WickPairVerdict(
                    False, SubsetMask(p.ground, j1), SubsetMask(p.ground, j2), val
                )
    return WickPairVerdict(True)


def check_wick_4term(p: WickVector) -> WickPairVerdict:
    """Sweep only pairs at symmetric-difference distance four."""
    ring = p.pf.ring
    coords = p.coords
    n = p.ground.n
    if n < 4:
        return WickPairVerdict(True)
    diffs = masks_of_size(n, 4)
    size = 1 << n
    for j1 in range(size):
        partners = sorted(j1 ^ d for d in diffs if (j1 ^ d) > j1)
        for j2 in partners:
            val = _pair_value(ring, coords, j1, j2)
            if not ring.is_zero(val):
                return WickPairVerdict(
                    False, SubsetMask(p.ground, j1), SubsetMask(p.ground, j2), val
                )
    return WickPairVerdict(True)


def twist_wick(p: WickVector, t: SubsetMask) -> WickVector:
    """Relabel coordinates by J -> J delta t. Involutive up to canonical scaling."""
    if t.ground.n != p.ground.n:
        raise InputError("twist set lives on a different ground set")
    tb = t.bits
    coords = tuple(p.coords[m ^ tb] for m in range(len(p.coords)))
    return WickVector(p.ground, p.pf, coords)


def classify_wick(p: WickVector) -> WickClassification:
    full = check_wick_full(p)
    short = check_wick_4term(p)
    support = is_orthogonal(wick_support(p))
    if full.ok:
        label = Label.STRONG
    elif short.ok and support.ok:
        label = Label.WEAK
    else:
        label = Label.NEITHER
    return WickClassification(label, full, short, support)


def reconstruct_wick(p: WickVector) -> WickRepresentation:
    """Rebuild a representation (A, T) with Pf(A_{J delta T}) = p_J projectively.

    Requires the weak gate (distance-four relations plus symmetric-exchange
    support). T is the colex-least support member; after twisting by T and
    scaling the empty-set coordinate to 1, entry a_ij is the coordinate of
    {i, j}.
    """
    short = check_wick_4term(p)
    support = is_orthogonal(wick_support(p))
    if not (short.ok and support.ok):
        raise ClassificationError(
            "vector is not Weak (short relations or symmetric exchange fail); cannot reconstruct"
        )
    ring = p.pf.ring
    n = p.ground.n
    t_mask = min(p.support_masks())
    p_t = p.coords[t_mask]
    if p.pf.units == "all":
        lam = ring.inv(p_t)
    else:
        if p_t not in (1, -1):
            raise ScalingError("cannot scale by a non-unit in the regular partial field")
        lam = p_t
    grid = [[ring.zero] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            q = ring.mul(lam, p.coords[((1 << (i - 1)) | (1 << (j - 1))) ^ t_mask])
            grid[i - 1][j - 1] = q
            grid[j - 1][i - 1] = ring.neg(q)
    a = SkewMatrix(ring, n, n, tuple(v for row in grid for v in row))
    return WickRepresentation(a, SubsetMask(p.ground, t_mask))
