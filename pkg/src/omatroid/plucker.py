"""Rank-r coordinate vectors and their quadratic exchange relations.

A vector assigns a partial-field element p_J to every r-subset J of {1..n},
not all zero, kept in a canonical projective scaling. The full relation
family runs over all pairs (S, T) with |S| = r+1 and |T| = r-1:

    sum over x in S of  sign(x; S, T) * p_{S - x} * p_{T + x}  =  0

where terms with x already in T vanish. The short family keeps only the
pairs with |S - T| = 3, whose surviving three signs alternate. A vector is
Strong when the full family vanishes, Weak when the short family vanishes
and the support is a matroid, and Neither otherwise. Strong and Weak agree
for vectors over a partial field; the checkers still compute both routes
independently so that equivalence stays testable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .errors import (
    ClassificationError,
    InputError,
    MembershipError,
    RankError,
    ScalingError,
)
from .exactalg import Matrix, PartialField, determinant
from .groundset import GroundSet, SubsetMask, masks_of_size
from .matroid import BasisFamily, is_matroid
from .verdicts import AxiomVerdict, Label


@lru_cache(maxsize=None)
def _index_of(n: int, r: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(masks_of_size(n, r))}


@dataclass(frozen=True)
class PluckerVector:
    """Projective point indexed by the r-subsets of {1..n} in colex order.

    Constructed values are validated against the partial field and rescaled
    so the first nonzero coordinate is 1 (fields) or +1 (regular partial
    field), making equality of vectors projective equality.
    """

    ground: GroundSet
    r: int
    pf: PartialField
    coords: tuple

    def __post_init__(self) -> None:
        n = self.ground.n
        if not 0 <= self.r <= n:
            raise InputError(f"rank {self.r} is outside 0..{n}")
        subsets = masks_of_size(n, self.r)
        if len(self.coords) != len(subsets):
            raise InputError(
                f"expected {len(subsets)} coordinates for rank {self.r} on {n} elements, "
                f"got {len(self.coords)}"
            )
        ring = self.pf.ring
        coords = [ring.coerce(v) for v in self.coords]
        for mask, v in zip(subsets, coords):
            if not self.pf.is_element(v):
                key = ",".join(map(str, SubsetMask(self.ground, mask).elements()))
                raise MembershipError(
                    f"coordinate {key!r} has value {ring.fmt(v)} outside the partial field"
                )
        object.__setattr__(self, "coords", tuple(_canonical_scale(self.pf, coords)))

    @classmethod
    def from_coords(
        cls, ground: GroundSet, r: int, pf: PartialField, coords: Mapping[int, object] | list
    ) -> "PluckerVector":
        """Build from a dense sequence or a sparse {mask: value} mapping."""
        subsets = masks_of_size(ground.n, r)
        if isinstance(coords, Mapping):
            ring = pf.ring
            dense = [coords.get(m, ring.zero) for m in subsets]
            extra = set(coords) - set(subsets)
            if extra:
                raise InputError(f"coordinate mask {min(extra)!r} is not an {r}-subset")
        else:
            dense = list(coords)
        return cls(ground, r, pf, tuple(dense))

    def coord(self, j: SubsetMask):
        if j.ground.n != self.ground.n:
            raise InputError("subset from a different ground set")
        idx = _index_of(self.ground.n, self.r).get(j.bits)
        if idx is None:
            raise InputError(f"{j!r} is not an {self.r}-subset")
        return self.coords[idx]

    def items(self):
        for m, v in zip(masks_of_size(self.ground.n, self.r), self.coords):
            yield SubsetMask(self.ground, m), v

    def support_masks(self) -> tuple[int, ...]:
        ring = self.pf.ring
        return tuple(
            m
            for m, v in zip(masks_of_size(self.ground.n, self.r), self.coords)
            if not ring.is_zero(v)
        )


def _canonical_scale(pf: PartialField, coords: list) -> list:
    ring = pf.ring
    first = next((v for v in coords if not ring.is_zero(v)), None)
    if first is None:
        raise InputError("all coordinates are zero")
    if pf.units == "all":
        lam = ring.inv(first)
    else:
        if first not in (1, -1):
            raise ScalingError(
                f"cannot normalize by non-unit {ring.fmt(first)} in the regular partial field"
            )
        lam = first
    if lam == ring.one:
        return coords
    return [ring.mul(lam, v) for v in coords]


@dataclass(frozen=True, slots=True)
class GPVerdict:
    """Result of sweeping a family of exchange relations.

    On failure (S, T) is the first offending pair, ordered by colex S then
    colex T, and ``value`` the nonzero residual.
    """

    ok: bool
    s: SubsetMask | None = None
    t: SubsetMask | None = None
    value: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, slots=True)
class PluckerClassification:
    label: Label
    full: GPVerdict
    short: GPVerdict
    support: AxiomVerdict


def plucker_support(p: PluckerVector) -> BasisFamily:
    """Subsets with nonzero coordinate, as a basis family."""
    return BasisFamily(p.ground, frozenset(p.support_masks()))


def plucker_from_matrix(a: Matrix, pf: PartialField) -> PluckerVector:
    """Maximal minors of a full-row-rank r x n matrix, column labels 1..n.

    Costs one r x r determinant per r-subset. Raises RankError when every
    minor vanishes and MembershipError when a minor falls outside the
    partial field.
    """
    if a.ring != pf.ring:
        raise InputError(f"matrix ring {a.ring!r} does not match partial field {pf!r}")
    r, n = a.rows, a.cols
    if r > n:
        raise RankError(f"a {r}x{n} matrix cannot have row rank {r}")
    ground = GroundSet(n)
    ring = pf.ring
    coords = []
    for mask in masks_of_size(n, r):
        idx = []
        m = mask
        while m:
            b = m & -m
            m ^= b
            idx.append(b.bit_length() - 1)
        coords.append(determinant(a.column_submatrix(idx)))
    if all(ring.is_zero(v) for v in coords):
        raise RankError(f"matrix has row rank below {r}; every maximal minor vanishes")
    return PluckerVector(ground, r, pf, tuple(coords))


def _relation_value(p: PluckerVector, s_mask: int, t_mask: int, idx: dict[int, int]):
    ring = p.pf.ring
    coords = p.coords
    acc = ring.zero
    m = s_mask
    while m:
        b = m & -m
        m ^= b
        if t_mask & b:
            continue  # T + x collapses to a set of size r-1, the term is zero
        x = b.bit_length()  # element label
        v1 = coords[idx[s_mask ^ b]]
        if ring.is_zero(v1):
            continue
        v2 = coords[idx[t_mask | b]]
        if ring.is_zero(v2):
            continue
        term = ring.mul(v1, v2)
        parity = (s_mask >> x).bit_count() + (t_mask >> x).bit_count()
        acc = ring.sub(acc, term) if parity & 1 else ring.add(acc, term)
    return acc


def _sweep(p: PluckerVector, three_term_only: bool) -> GPVerdict:
    n, r = p.ground.n, p.r
    if r + 1 > n or r - 1 < 0:
        return GPVerdict(True)  # degenerate ranks have an empty relation family
    ring = p.pf.ring
    idx = _index_of(n, r)
    for s_mask in masks_of_size(n, r + 1):
        for t_mask in masks_of_size(n, r - 1):
            if three_term_only and (s_mask & ~t_mask).bit_count() != 3:
                continue
            val = _relation_value(p, s_mask, t_mask, idx)
            if not ring.is_zero(val):
                return GPVerdict(
                    False, SubsetMask(p.ground, s_mask), SubsetMask(p.ground, t_mask), val
                )
    return GPVerdict(True)


def check_gp_full(p: PluckerVector) -> GPVerdict:
    """Sweep all C(n, r+1) * C(n, r-1) relation instances."""
    return _sweep(p, three_term_only=False)


def check_gp_3term(p: PluckerVector) -> GPVerdict:
    """Sweep only the instances with |S - T| = 3 (three surviving terms)."""
    return _sweep(p, three_term_only=True)


def classify_plucker(p: PluckerVector) -> PluckerClassification:
    """Strongest satisfied label plus the evidence for each route."""
    full = check_gp_full(p)
    short = check_gp_3term(p)
    support = is_matroid(plucker_support(p))
    if full.ok:
        label = Label.STRONG
    elif short.ok and support.ok:
        label = Label.WEAK
    else:
        label = Label.NEITHER
    return PluckerClassification(label, full, short, support)


def reconstruct_plucker(p: PluckerVector) -> Matrix:
    """Rebuild an r x n matrix whose maximal minors reproduce p projectively.

    Requires the weak gate (short relations plus matroid support). The
    colex-least support member B becomes the identity block: after scaling
    p_B to 1, column j outside B gets entries read off the near-basis
    coordinates p_{B - b_i + j} with the row/position sign that makes the
    corresponding minor come out right.
    """
    short = check_gp_3term(p)
    support = is_matroid(plucker_support(p))
    if not (short.ok and support.ok):
        raise ClassificationError(
            "vector is not Weak (short relations or matroid support fail); cannot reconstruct"
        )
    ring = p.pf.ring
    n, r = p.ground.n, p.r
    idx = _index_of(n, r)
    b_mask = min(p.support_masks())
    p_b = p.coords[idx[b_mask]]
    if p.pf.units == "all":
        lam = ring.inv(p_b)
    else:
        if p_b not in (1, -1):
            raise ScalingError("cannot scale by a non-unit in the regular partial field")
        lam = p_b
    b_elems = SubsetMask(p.ground, b_mask).elements()
    grid = [[ring.zero] * n for _ in range(r)]
    for i, be in enumerate(b_elems):
        grid[i][be - 1] = ring.one
    for j in range(1, n + 1):
        jbit = 1 << (j - 1)
        if b_mask & jbit:
            continue
        for i, be in enumerate(b_elems, start=1):
            j_mask = (b_mask ^ (1 << (be - 1))) | jbit
            q = ring.mul(lam, p.coords[idx[j_mask]])
            if ring.is_zero(q):
                continue
            pos = (j_mask & ((1 << j) - 1)).bit_count()  # 1-based position of j in J
            grid[i - 1][j - 1] = q if (i + pos) % 2 == 0 else ring.neg(q)
    return Matrix(ring, r, n, tuple(v for row in grid for v in row))
