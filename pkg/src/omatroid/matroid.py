"""Basis families and their exchange axioms.

A basis family is a nonempty collection of subsets of {1..n}. Four checkers
live here:

* ``is_matroid``: all members share one size and the exchange axiom holds,
  for every B1, B2 and x in B1 minus B2 some y in B2 minus B1 has
  (B1 - x) + y in the family.
* ``is_matroid_strong``: additionally (B2 - y) + x must land in the family
  for the same y.
* ``is_orthogonal``: the symmetric exchange axiom, for every B1, B2 and
  x1 in the symmetric difference some distinct x2 there has
  B1 delta {x1, x2} in the family. Members then share size parity, but
  that is a consequence the checker never assumes.
* ``is_orthogonal_strong``: the same x2 must also fix B2, that is
  B2 delta {x1, x2} lies in the family too.

The checkers are deliberately brute force, O(|B|^2 * n^2), and double as
the trusted oracle for everything else in the package. Failures report the
colexicographically first violating triple so they are stable golden data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .groundset import GroundSet, SubsetMask, mask_elements
from .verdicts import AxiomVerdict


@dataclass(frozen=True)
class BasisFamily:
    """A nonempty, deduplicated family of subsets of a common ground set."""

    ground: GroundSet
    masks: frozenset[int]

    def __post_init__(self) -> None:
        if not self.masks:
            raise InputError("a basis family must be nonempty")
        full = self.ground.full_mask
        for m in self.masks:
            if not 0 <= m <= full:
                raise InputError(f"member mask {m!r} does not fit ground set size {self.ground.n}")

    @classmethod
    def from_subsets(cls, ground: GroundSet, subsets: Iterable) -> "BasisFamily":
        masks = set()
        for s in subsets:
            if isinstance(s, SubsetMask):
                if s.ground.n != ground.n:
                    raise InputError("subset from a different ground set")
                masks.add(s.bits)
            elif isinstance(s, int):
                masks.add(s)
            else:
                masks.add(ground.subset(s).bits)
        return cls(ground, frozenset(masks))

    def members(self) -> tuple[int, ...]:
        """Member masks in colex (numeric) order."""
        return tuple(sorted(self.masks))

    def subsets(self) -> tuple[SubsetMask, ...]:
        return tuple(SubsetMask(self.ground, m) for m in self.members())

    def __contains__(self, s) -> bool:
        bits = s.bits if isinstance(s, SubsetMask) else s
        return bits in self.masks

    def __len__(self) -> int:
        return len(self.masks)

    def to_json(self) -> dict:
        return {
            "n": self.ground.n,
            "bases": [list(mask_elements(m)) for m in self.members()],
        }


def _wrap(f: BasisFamily, mask: int) -> SubsetMask:
    return SubsetMask(f.ground, mask)


def _equicardinal_violation(f: BasisFamily) -> AxiomVerdict | None:
    members = f.members()
    size0 = members[0].bit_count()
    for m in members[1:]:
        if m.bit_count() != size0:
            return AxiomVerdict(
                False, "not_equicardinal", _wrap(f, members[0]), _wrap(f, m), None
            )
    return None


def is_matroid(f: BasisFamily) -> AxiomVerdict:
    """Matroid basis axiom: equicardinal plus the exchange property."""
    bad = _equicardinal_violation(f)
    if bad is not None:
        return bad
    members = f.members()
    mset = f.masks
    for b1 in members:
        for b2 in members:
            out = b1 & ~b2
            while out:
                xbit = out & -out
                out ^= xbit
                base = b1 ^ xbit
                cand = b2 & ~b1
                c = cand
                found = False
                while c:
                    yb = c & -c
                    c ^= yb
                    if (base | yb) in mset:
                        found = True
                        break
                if not found:
                    return AxiomVerdict(
                        False, "exchange", _wrap(f, b1), _wrap(f, b2), xbit.bit_length()
                    )
    return AxiomVerdict(True)


def is_matroid_strong(f: BasisFamily) -> AxiomVerdict:
    """Strong exchange: one y must repair both bases at once."""
    bad = _equicardinal_violation(f)
    if bad is not None:
        return bad
    members = f.members()
    mset = f.masks
    for b1 in members:
        for b2 in members:
            out = b1 & ~b2
            while out:
                xbit = out & -out
                out ^= xbit
                base = b1 ^ xbit
                c = b2 & ~b1
                found = False
                while c:
                    yb = c & -c
                    c ^= yb
                    if (base | yb) in mset and ((b2 ^ yb) | xbit) in mset:
                        found = True
                        break
                if not found:
                    return AxiomVerdict(
                        False, "strong_exchange", _wrap(f, b1), _wrap(f, b2), xbit.bit_length()
                    )
    return AxiomVerdict(True)


def is_orthogonal(f: BasisFamily) -> AxiomVerdict:
    """Symmetric exchange axiom for orthogonal matroids (even delta-matroids)."""
    members = f.members()
    mset = f.masks
    for b1 in members:
        for b2 in members:
            d = b1 ^ b2
            m = d
            while m:
                x1b = m & -m
                m ^= x1b
                base = b1 ^ x1b
                c = d ^ x1b
                found = False
                while c:
                    x2b = c & -c
                    c ^= x2b
                    if (base ^ x2b) in mset:
                        found = True
                        break
                if not found:
                    return AxiomVerdict(
                        False,
                        "symmetric_exchange",
                        _wrap(f, b1),
                        _wrap(f, b2),
                        x1b.bit_length(),
                    )
    return AxiomVerdict(True)


def is_orthogonal_strong(f: BasisFamily) -> AxiomVerdict:
    """Strong symmetric exchange: one x2 must move both B1 and B2 inside the family."""
    members = f.members()
    mset = f.masks
    for b1 in members:
        for b2 in members:
            d = b1 ^ b2
            m = d
            while m:
                x1b = m & -m
                m ^= x1b
                c = d ^ x1b
                found = False
                while c:
                    x2b = c & -c
                    c ^= x2b
                    pair = x1b | x2b
                    if (b1 ^ pair) in mset and (b2 ^ pair) in mset:
                        found = True
                        break
                if not found:
                    return AxiomVerdict(
                        False,
                        "strong_symmetric_exchange",
                        _wrap(f, b1),
                        _wrap(f, b2),
                        x1b.bit_length(),
                    )
    return AxiomVerdict(True)


def twist(f: BasisFamily, t: SubsetMask) -> BasisFamily:
    """Replace every member B by B delta t. Involutive; preserves both axioms' verdicts."""
    if t.ground.n != f.ground.n:
        raise InputError("twist set lives on a different ground set")
    tb = t.bits
    return BasisFamily(f.ground, frozenset(b ^ tb for b in f.masks))


def find_smaller_basis(f: BasisFamily, j: SubsetMask) -> SubsetMask:
    """In a normal orthogonal matroid, drop two elements of a nonempty basis.

    Requires the empty set and j to be members and j nonempty. Among all
    two-element subsets {a, b} of j with j delta {a, b} in the family, the
    colexicographically least resulting basis is returned. Failure to find
    one means the family was not a normal orthogonal matroid.
    """
    if j.ground.n != f.ground.n:
        raise InputError("basis lives on a different ground set")
    if 0 not in f.masks:
        raise InputError("family is not normal (empty set is not a member)")
    if j.bits == 0:
        raise InputError("basis must be nonempty")
    if j.bits not in f.masks:
        raise InputError(f"{j!r} is not a member of the family")
    check = is_orthogonal(f)
    if not check.ok:
        raise InputError("family is not an orthogonal matroid")
    jb = j.bits
    elems = mask_elements(jb)
    best = None
    for ai in range(len(elems)):
        for bi in range(ai + 1, len(elems)):
            pair = (1 << (elems[ai] - 1)) | (1 << (elems[bi] - 1))
            cand = jb ^ pair
            if cand in f.masks and (best is None or cand < best):
                best = cand
    if best is None:
        raise InputError("no smaller basis exists; the family violates normality")
    return SubsetMask(f.ground, best)
