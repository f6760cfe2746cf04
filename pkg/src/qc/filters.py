"""Filters on finite continuity spaces, in principal-core form.

Every filter on a finite carrier is the set of supersets of its least
member, so a filter is stored as its space plus a core bitmask; the
improper filter is the empty core.  The family-level definitions
(membership, image, intersection, roundification, filter distance, the
round predicate) collapse to core formulas; the verify module re-derives
each collapse from the family-level definitions on small carriers before
the fast paths here are trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainMismatchError, InvariantError, PreconditionError, StructureError
from .reporting import Verdict
from .vspace import (
    VSpace,
    _as_index_map,
    _forward,
    _set_distance_masks,
    has_uniformly_vanishing_asymmetry,
    is_uniformly_continuous,
)


@dataclass(frozen=True)
class Filter:
    """All supersets of `core`; proper exactly when the core is non-empty."""

    space: VSpace
    core_mask: int

    def __post_init__(self):
        if not 0 <= self.core_mask <= self.space.full_mask:
            raise StructureError(f"core mask {self.core_mask} out of range")

    @property
    def core(self) -> tuple[str, ...]:
        return self.space.names_of(self.core_mask)

    @property
    def proper(self) -> bool:
        return self.core_mask != 0

    def contains(self, names) -> bool:
        """Membership: a subset belongs to the filter iff it covers the core."""
        m = self.space.mask(names)
        return (m | self.core_mask) == m

    def __repr__(self):
        label = ",".join(self.core) if self.proper else "improper"
        return f"<Filter {{{label}}} on {list(self.space.points)}>"


def principal_filter(space: VSpace, names) -> Filter:
    return Filter(space, space.mask(names))


def improper_filter(space: VSpace) -> Filter:
    return Filter(space, 0)


def filter_from_base(space: VSpace, family) -> Filter:
    """Least filter containing every member of the family.

    The core is the intersection of the members; the empty family yields
    the filter {X}.  Disjoint members force the improper filter.
    """
    core = space.full_mask
    for subset in family:
        core &= space.mask(subset)
    return Filter(space, core)


def _same_space(f: Filter, g: Filter):
    if f.space is not g.space and f.space != g.space:
        raise DomainMismatchError("filters live on different spaces")


def intersect(f: Filter, g: Filter) -> Filter:
    """Family intersection; in core form the union of the cores."""
    _same_space(f, g)
    return Filter(f.space, f.core_mask | g.core_mask)


def image_filter(fmap: dict, f: Filter, target: VSpace) -> Filter:
    """Push a filter along a point map: sets whose preimage is a member."""
    fidx = _as_index_map(fmap, f.space, target)
    m = 0
    for i in range(f.space.size):
        if f.core_mask >> i & 1:
            m |= 1 << fidx[i]
    return Filter(target, m)


def _point_core_over(space: VSpace, i: int, values, fwd: bool) -> int:
    core = space.full_mask
    for eps in values:
        core &= space._ball(i, eps, fwd)
    return core


def _cauchy_over(f: Filter, values, fwd: bool):
    """First radius with no ball covering the core, or None."""
    space = f.space
    for eps in values:
        if not any(
            (space._ball(x, eps, fwd) | f.core_mask) == space._ball(x, eps, fwd)
            for x in range(space.size)
        ):
            return eps
    return None


def _round_over(f: Filter, values) -> bool:
    space = f.space
    core = f.core_mask
    for eps in values:
        ok = True
        for x in range(space.size):
            b = space._ball(x, eps, True)
            if (b | core) == b and (b | core) != core:
                ok = False
                break
        if ok:
            return True
    return False


def _converges_over(f: Filter, i: int, values, fwd: bool):
    """First radius whose ball around point i misses the core, or None."""
    space = f.space
    for eps in values:
        b = space._ball(i, eps, fwd)
        if (b | f.core_mask) != b:
            return eps
    return None


def point_filter(space: VSpace, x, side: str = "forward") -> Filter:
    """Filter generated by the balls around a point.

    The core is the intersection of the test-set balls, which equals the
    zero-distance neighbourhood; with no positive test values (degenerate
    quantale) the base is empty and the least filter {X} results.
    """
    i = space.index(x)
    return Filter(space, _point_core_over(space, i, space.test_values, _forward(side)))


def is_cauchy(f: Filter, side: str = "forward") -> Verdict:
    """Some ball of every radius is a member; witness is the failing radius."""
    bad = _cauchy_over(f, f.space.test_values, _forward(side))
    if bad is None:
        return Verdict(True)
    return Verdict(False, {"epsilon": f.space.quantale.format(bad)})


def is_round(f: Filter) -> Verdict:
    """Every member absorbs all sufficiently small covering balls.

    Checked on the core only: a radius that works for the core works for
    every superset.  The reduction is re-checked against the all-members
    definition by the verify module.
    """
    if _round_over(f, f.space.test_values):
        return Verdict(True)
    return Verdict(False, {"member": f.core})


def roundify(f: Filter) -> Filter:
    """Filter generated by the fattened members.

    In core form: points at zero distance from some core point.  With no
    positive test values the generating base is empty and the result is the
    least filter {X}.
    """
    space = f.space
    if not space.test_values:
        return Filter(space, space.full_mask)
    m = 0
    for i in range(space.size):
        if f.core_mask >> i & 1:
            m |= space.zero_fwd[i]
    return Filter(space, m)


def is_minimal_cauchy(f: Filter, method: str = "definitional") -> Verdict:
    """No strictly smaller proper Cauchy filter exists.

    `definitional` enumerates every proper subfilter (cores are the strict
    supersets of the core); `characterization` uses Cauchy-and-round, which
    is only equivalent under uniformly vanishing asymmetry and is refused
    elsewhere.
    """
    if not f.proper:
        raise PreconditionError("minimality is asked of proper filters only")
    space = f.space
    if method == "characterization":
        uva = has_uniformly_vanishing_asymmetry(space)
        if not uva:
            raise PreconditionError(
                "the Cauchy-and-round characterization needs uniformly "
                f"vanishing asymmetry; it fails at epsilon {uva.witness}"
            )
        cau = is_cauchy(f)
        if not cau:
            return Verdict(False, {"reason": "not cauchy", **(cau.witness or {})})
        rnd = is_round(f)
        if not rnd:
            return Verdict(False, {"reason": "not round"})
        return Verdict(True)
    if method != "definitional":
        raise ValueError(f"unknown method {method!r}")
    cau = is_cauchy(f)
    if not cau:
        return Verdict(False, {"reason": "not cauchy", **(cau.witness or {})})
    rest = space.full_mask & ~f.core_mask
    extra = rest
    while extra:
        bigger = f.core_mask | extra
        if is_cauchy(Filter(space, bigger)):
            return Verdict(
                False,
                {"reason": "proper cauchy subfilter", "core": space.names_of(bigger)},
            )
        extra = (extra - 1) & rest
    return Verdict(True)


def converges(f: Filter, x, side: str = "forward") -> Verdict:
    """Every ball around x is a member; cross-checked against the point filter."""
    space = f.space
    i = space.index(x)
    fwd = _forward(side)
    bad = _converges_over(f, i, space.test_values, fwd)
    if bad is None:
        verdict = Verdict(True)
    else:
        verdict = Verdict(False, {"epsilon": space.quantale.format(bad)})
    pf = point_filter(space, x, side)
    by_inclusion = (f.core_mask | pf.core_mask) == pf.core_mask
    if by_inclusion != verdict.ok:
        raise InvariantError("ball convergence and point-filter inclusion disagree")
    return verdict


def filter_distance(f: Filter, g: Filter):
    """Join over members of the set distance; attained at the cores."""
    _same_space(f, g)
    return _set_distance_masks(f.space, f.core_mask, g.core_mask)


def is_filter_morphism(fmap: dict, f: Filter, g: Filter) -> Verdict:
    """Uniformly continuous map whose image filter refines the target filter."""
    if f.space.quantale != g.space.quantale:
        raise DomainMismatchError("filter morphisms need a shared quantale")
    uc = is_uniformly_continuous(fmap, f.space, g.space)
    if not uc:
        return Verdict(False, {"reason": "not uniformly continuous", **(uc.witness or {})})
    image = image_filter(fmap, f, g.space)
    if (image.core_mask | g.core_mask) != g.core_mask:
        return Verdict(
            False,
            {
                "reason": "image filter does not contain the target filter",
                "image_core": image.core,
                "target_core": g.core,
            },
        )
    return Verdict(True)
