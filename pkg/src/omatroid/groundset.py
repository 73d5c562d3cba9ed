"""Ground-set combinatorics on bitmask-encoded subsets.

Elements of a ground set of size n are labeled 1..n. A subset is an n-bit
mask with bit i-1 standing for element i, so numeric order of masks is
exactly colexicographic order of subsets, for equal-size subsets and across
sizes alike. Every value here is immutable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import CapabilityError, InputError

#: Hard cap on the ground-set size. Subset-indexed coordinate vectors take
#: 2**n slots, so this keeps everything comfortably in memory.
MAX_GROUND_SIZE = 24


@dataclass(frozen=True, slots=True)
class GroundSet:
    """The index set {1, ..., n}."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise InputError(f"ground set size must be a nonnegative integer, got {self.n!r}")
        if self.n > MAX_GROUND_SIZE:
            raise CapabilityError(
                f"ground set size {self.n} exceeds the supported maximum {MAX_GROUND_SIZE}"
            )

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def subset(self, elements: Iterable[int] = ()) -> SubsetMask:
        """Build a subset from 1-based element labels."""
        bits = 0
        for e in elements:
            if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= self.n:
                raise InputError(f"element {e!r} is outside 1..{self.n}")
            bits |= 1 << (e - 1)
        return SubsetMask(self, bits)

    def subset_from_mask(self, bits: int) -> SubsetMask:
        return SubsetMask(self, bits)

    def all_masks(self) -> range:
        """All subset masks in colex (= numeric) order."""
        return range(1 << self.n)


@dataclass(frozen=True, slots=True)
class SubsetMask:
    """An immutable subset of a ground set, stored as a bitmask."""

    ground: GroundSet
    bits: int

    def __post_init__(self) -> None:
        if not isinstance(self.bits, int) or self.bits < 0 or self.bits > self.ground.full_mask:
            raise InputError(
                f"mask {self.bits!r} does not fit a ground set of size {self.ground.n}"
            )

    def elements(self) -> tuple[int, ...]:
        """Member elements in increasing order."""
        return mask_elements(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __contains__(self, e: int) -> bool:
        return 1 <= e <= self.ground.n and bool(self.bits >> (e - 1) & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def to_json(self) -> list[int]:
        return list(self.elements())

    def __repr__(self) -> str:  # {1,4} on n=4 prints as {1,4}/4
        inner = ",".join(str(e) for e in self.elements())
        return "{%s}/%d" % (inner, self.ground.n)


def mask_elements(bits: int) -> tuple[int, ...]:
    """1-based elements of a bare bitmask, increasing."""
    out = []
    while bits:
        b = bits & -bits
        out.append(b.bit_length())
        bits ^= b
    return tuple(out)


def mask_of_elements(elements: Iterable[int]) -> int:
    bits = 0
    for e in elements:
        bits |= 1 << (e - 1)
    return bits


def _require_same_ground(a: SubsetMask, b: SubsetMask) -> None:
    if a.ground.n != b.ground.n:
        raise InputError(
            f"mismatched ground sets: size {a.ground.n} vs {b.ground.n}"
        )


def sym_diff(a: SubsetMask, b: SubsetMask) -> SubsetMask:
    """Symmetric difference of two subsets of the same ground set."""
    _require_same_ground(a, b)
    return SubsetMask(a.ground, a.bits ^ b.bits)


def sign_xst(x: int, s: SubsetMask, t: SubsetMask) -> int:
    """Sign (-1)**m with m = #{e in s : e > x} + #{e in t : e > x}.

    This is the coefficient sign attached to the term that moves x from s
    into t in the quadratic exchange relations. Requires x in s.
    """
    _require_same_ground(s, t)
    if x not in s:
        raise InputError(f"element {x} is not a member of {s!r}")
    m = (s.bits >> x).bit_count() + (t.bits >> x).bit_count()
    return -1 if m & 1 else 1


@lru_cache(maxsize=None)
def masks_of_size(n: int, r: int) -> tuple[int, ...]:
    """All r-subset masks of {1..n} in colex (numeric) order.

    Uses the standard next-bit-permutation trick, so generation itself walks
    the colex order without sorting.
    """
    if not 0 <= r <= n:
        raise InputError(f"subset size {r} is outside 0..{n}")
    if r == 0:
        return (0,)
    out = []
    v = (1 << r) - 1
    limit = 1 << n
    while v < limit:
        out.append(v)
        u = v & -v
        w = v + u
        v = w | (((v ^ w) >> 2) // u)
    return tuple(out)


def subsets_of_size(ground: GroundSet, r: int) -> list[SubsetMask]:
    """All r-subsets of the ground set, colex ordered."""
    return [SubsetMask(ground, m) for m in masks_of_size(ground.n, r)]


def parse_subset_key(key: str, ground: GroundSet) -> SubsetMask:
    """Parse a coordinate key like '1,4' (empty string means the empty set)."""
    if key == "":
        return SubsetMask(ground, 0)
    try:
        elements = [int(part) for part in key.split(",")]
    except ValueError as exc:
        raise InputError(f"bad subset key {key!r}") from exc
    seen = set()
    for e in elements:
        if e in seen:
            raise InputError(f"duplicate element {e} in subset key {key!r}")
        seen.add(e)
    return ground.subset(elements)


def format_subset_key(j: SubsetMask) -> str:
    return ",".join(str(e) for e in j.elements())
