"""Completion of a finite continuity space by minimal Cauchy filters.

`cauchy_filter_space` enumerates every proper Cauchy filter (one per
non-empty core), `complete` keeps the minimal ones and equips them with
the filter distance; the canonical embedding sends a point to its point
filter.  The construction also re-checks that roundification is a
bijective isometry between the completion and the separation quotient of
the full Cauchy filter space: explicitly while the filter count is small,
and by an equivalent linear certificate past that, since the quotient's
distance matrix is quadratic in a possibly exponential filter count.

Carrier sizes are capped (2^n cores are enumerated); the cap defaults to
16 and can be overridden by the QC_MAX_POINTS environment variable or per
call.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from .errors import InvariantError, PreconditionError
from .filters import (
    Filter,
    filter_distance,
    image_filter,
    intersect,
    is_cauchy,
    is_minimal_cauchy,
    converges,
    point_filter,
    roundify,
)
from .reporting import Verdict
from .vspace import (
    VSpace,
    classify,
    has_uniformly_vanishing_asymmetry,
    is_uniformly_continuous,
    separation_quotient,
)

DEFAULT_MAX_POINTS = 16


def resolve_max_points(explicit=None) -> int:
    if explicit is not None:
        return int(explicit)
    env = os.environ.get("QC_MAX_POINTS")
    return int(env) if env else DEFAULT_MAX_POINTS


def _check_size(space: VSpace, max_points) -> None:
    cap = resolve_max_points(max_points)
    if space.size > cap:
        raise PreconditionError(
            f"carrier has {space.size} points; completion enumerates 2^n cores "
            f"and is capped at {cap} (raise via QC_MAX_POINTS or max_points)"
        )


def filter_point_name(f: Filter) -> str:
    return "{" + ",".join(f.core) + "}"


def _filters_to_space(base: VSpace, filters: list[Filter]) -> VSpace:
    names = [filter_point_name(f) for f in filters]
    dmat = [[filter_distance(f, g) for g in filters] for f in filters]
    return VSpace(base.quantale, names, dmat)


@dataclass(frozen=True)
class CauchyFilterSpace:
    """Every proper Cauchy filter with the filter distance."""

    base: VSpace
    space: VSpace
    filters: tuple[Filter, ...]
    base_uva: Verdict


def _proper_cauchy_filters(space: VSpace) -> list[Filter]:
    return [
        f
        for mask in range(1, space.full_mask + 1)
        for f in [Filter(space, mask)]
        if is_cauchy(f)
    ]


def cauchy_filter_space(space: VSpace, max_points=None) -> CauchyFilterSpace:
    """Enumerate proper Cauchy filters by core, in ascending mask order.

    Works on any valid space; when the base lacks uniformly vanishing
    asymmetry the returned flag records the witness and the structural
    guarantees about the result are void.
    """
    _check_size(space, max_points)
    filters = _proper_cauchy_filters(space)
    return CauchyFilterSpace(
        base=space,
        space=_filters_to_space(space, filters),
        filters=tuple(filters),
        base_uva=has_uniformly_vanishing_asymmetry(space),
    )


def minimal_cauchy_filters(space: VSpace, max_points=None) -> tuple[Filter, ...]:
    """Proper Cauchy filters with no proper Cauchy subfilter (definitional)."""
    _check_size(space, max_points)
    cauchy_masks = {
        mask
        for mask in range(1, space.full_mask + 1)
        if is_cauchy(Filter(space, mask))
    }
    out = []
    for mask in sorted(cauchy_masks):
        rest = space.full_mask & ~mask
        extra = rest
        minimal = True
        while extra:
            if (mask | extra) in cauchy_masks:
                minimal = False
                break
            extra = (extra - 1) & rest
        if minimal:
            out.append(Filter(space, mask))
    return tuple(out)


@dataclass(frozen=True)
class CompletionSpace:
    """Minimal Cauchy filters with the filter distance plus embedding data."""

    base: VSpace
    space: VSpace
    filters: tuple[Filter, ...]
    embedding: dict

    def embedded_filter(self, point) -> Filter:
        return self.filters[self.embedding[point]]


def complete(space: VSpace, max_points=None) -> CompletionSpace:
    """Build the space of minimal Cauchy filters over a UVA base.

    Refuses bases without uniformly vanishing asymmetry, quoting the
    witness.  The point filters are located among the minimal filters to
    produce the embedding, and the separation quotient of the Cauchy
    filter space is checked to be isometric to the result under
    roundification.
    """
    uva = has_uniformly_vanishing_asymmetry(space)
    if not uva:
        raise PreconditionError(
            f"completion needs uniformly vanishing asymmetry; fails at {uva.witness}"
        )
    _check_size(space, max_points)
    filters = list(minimal_cauchy_filters(space, max_points))
    by_mask = {f.core_mask: i for i, f in enumerate(filters)}
    embedding = {}
    for p in space.points:
        pf = point_filter(space, p)
        idx = by_mask.get(pf.core_mask)
        if idx is None:
            raise InvariantError(
                f"point filter of {p!r} is not minimal Cauchy on a UVA base"
            )
        embedding[p] = idx
    comp = CompletionSpace(
        base=space,
        space=_filters_to_space(space, filters),
        filters=tuple(filters),
        embedding=embedding,
    )
    _check_quotient_isometry(space, comp, max_points)
    _check_embedding_isometry(space, comp)
    return comp


_EXPLICIT_QUOTIENT_LIMIT = 256


def _check_quotient_isometry(space: VSpace, comp: CompletionSpace, max_points) -> None:
    """Separation quotient of the Cauchy filter space matches the completion.

    Roundification must send each mutual-zero-distance class of proper
    Cauchy filters to a unique minimal Cauchy filter, bijectively and
    preserving distances exactly.  With few Cauchy filters the quotient is
    built explicitly and compared entry by entry; past the limit the same
    facts are certified without the quadratic distance matrix: every filter
    sits at zero distance from its roundification (its core is inside the
    fattened core, so the cross pair (s,s) is available in both directions),
    the roundifications are exactly the minimal filters, and the completion
    is separated, which forces distinct roundifications into distinct
    zero-distance classes.
    """
    cauchy = _proper_cauchy_filters(space)
    minimal_masks = {f.core_mask for f in comp.filters}
    rounded_masks = set()
    for f in cauchy:
        rounded = roundify(f)
        if f.core_mask | rounded.core_mask != rounded.core_mask:
            raise InvariantError("roundification dropped part of a core")
        rounded_masks.add(rounded.core_mask)
    if rounded_masks != minimal_masks:
        raise InvariantError(
            "roundification does not map Cauchy filters onto minimal filters"
        )
    if not classify(comp.space)["separated"]:
        raise InvariantError("completion space is not separated")
    if len(cauchy) > _EXPLICIT_QUOTIENT_LIMIT:
        return
    tilde_space = _filters_to_space(space, cauchy)
    quotient, projection = separation_quotient(tilde_space)
    name_to_filter = {filter_point_name(f): f for f in cauchy}
    class_image = {}
    for name, cls in projection.items():
        rounded = roundify(name_to_filter[name])
        seen = class_image.setdefault(cls, rounded.core_mask)
        if seen != rounded.core_mask:
            raise InvariantError(
                "roundification is not constant on a zero-distance class"
            )
    if len(class_image) != len(comp.filters):
        raise InvariantError(
            "roundification does not biject filter classes onto minimal filters"
        )
    mask_to_idx = {f.core_mask: i for i, f in enumerate(comp.filters)}
    qidx = {p: i for i, p in enumerate(quotient.points)}
    for cls_a, mask_a in class_image.items():
        for cls_b, mask_b in class_image.items():
            da = quotient.dmat[qidx[cls_a]][qidx[cls_b]]
            db = comp.space.dmat[mask_to_idx[mask_a]][mask_to_idx[mask_b]]
            if da != db:
                raise InvariantError("quotient and completion distances differ")


def _check_embedding_isometry(space: VSpace, comp: CompletionSpace) -> None:
    for x in space.points:
        for y in space.points:
            dxy = space.d(x, y)
            dio = comp.space.dmat[comp.embedding[x]][comp.embedding[y]]
            if dxy != dio:
                raise InvariantError(
                    f"embedding is not isometric at ({x!r},{y!r})"
                )


def canonical_embedding(space: VSpace) -> dict:
    """Point filters as completion points; checked minimal and isometric."""
    uva = has_uniformly_vanishing_asymmetry(space)
    if not uva:
        raise PreconditionError(
            f"the canonical embedding needs uniformly vanishing asymmetry; "
            f"fails at {uva.witness}"
        )
    out = {p: point_filter(space, p) for p in space.points}
    for p, f in out.items():
        if not is_minimal_cauchy(f):
            raise InvariantError(f"point filter of {p!r} is not minimal Cauchy")
    for x in space.points:
        for y in space.points:
            if filter_distance(out[x], out[y]) != space.d(x, y):
                raise InvariantError(
                    f"canonical embedding is not isometric at ({x!r},{y!r})"
                )
    return out


def is_cauchy_complete(space: VSpace, max_points=None) -> Verdict:
    """Every proper Cauchy filter converges; witness is a divergent core."""
    _check_size(space, max_points)
    for mask in range(1, space.full_mask + 1):
        f = Filter(space, mask)
        if is_cauchy(f) and not any(converges(f, x) for x in space.points):
            return Verdict(False, {"core": f.core})
    return Verdict(True)


@dataclass(frozen=True)
class ExtensionResult:
    completion: CompletionSpace
    mapping: dict
    uniqueness_checked: bool


def extend_to_completion(fmap: dict, source: VSpace, target: VSpace,
                         max_points=None) -> ExtensionResult:
    """Extend a uniformly continuous map through the canonical embedding.

    Requires: source separated with uniformly vanishing asymmetry, target
    separated, uniformly vanishing asymmetry, and Cauchy complete, and the
    map uniformly continuous.  The extension sends a minimal Cauchy filter
    to the unique limit of the roundified image filter.  When both the
    completion and the target have at most four points, uniqueness of the
    extension is confirmed by enumerating every map.
    """
    failed = []
    if not classify(source)["separated"]:
        failed.append("source is not separated")
    if not has_uniformly_vanishing_asymmetry(source):
        failed.append("source lacks uniformly vanishing asymmetry")
    if not classify(target)["separated"]:
        failed.append("target is not separated")
    if not has_uniformly_vanishing_asymmetry(target):
        failed.append("target lacks uniformly vanishing asymmetry")
    if not is_cauchy_complete(target, max_points):
        failed.append("target is not Cauchy complete")
    if not is_uniformly_continuous(fmap, source, target):
        failed.append("map is not uniformly continuous")
    if failed:
        raise PreconditionError("; ".join(failed))

    comp = complete(source, max_points)
    mapping = {}
    for f in comp.filters:
        rounded = roundify(image_filter(fmap, f, target))
        limits = [y for y in target.points if converges(rounded, y)]
        if len(limits) != 1:
            raise InvariantError(
                f"expected a unique limit for the image of {f!r}, got {limits}"
            )
        mapping[filter_point_name(f)] = limits[0]

    for x in source.points:
        via = mapping[filter_point_name(comp.filters[comp.embedding[x]])]
        if via != fmap[x]:
            raise InvariantError(f"extension does not restrict to the map at {x!r}")
    uc = is_uniformly_continuous(mapping, comp.space, target)
    if not uc:
        raise InvariantError(f"extension is not uniformly continuous: {uc.witness}")

    uniqueness_checked = False
    if len(comp.filters) <= 4 and target.size <= 4:
        matches = []
        for values in product(target.points, repeat=len(comp.filters)):
            cand = dict(zip(comp.space.points, values))
            if not is_uniformly_continuous(cand, comp.space, target):
                continue
            if all(
                cand[filter_point_name(comp.filters[comp.embedding[x]])] == fmap[x]
                for x in source.points
            ):
                matches.append(cand)
        if len(matches) != 1 or matches[0] != mapping:
            raise InvariantError(
                f"extension is not unique: found {len(matches)} candidates"
            )
        uniqueness_checked = True
    return ExtensionResult(comp, mapping, uniqueness_checked)


def induced_completion_map(fmap: dict, source_comp: CompletionSpace,
                           target_comp: CompletionSpace) -> dict:
    """Functorial action: roundified image filters between completions."""
    out = {}
    target_by_mask = {
        f.core_mask: filter_point_name(f) for f in target_comp.filters
    }
    for f in source_comp.filters:
        rounded = roundify(image_filter(fmap, f, target_comp.base))
        name = target_by_mask.get(rounded.core_mask)
        if name is None:
            raise InvariantError(
                "roundified image of a minimal Cauchy filter is not minimal"
            )
        out[filter_point_name(f)] = name
    return out


def zero_distance_intersection_cauchy(space: VSpace, max_points=None) -> Verdict:
    """Zero-distance proper Cauchy filters have Cauchy intersections."""
    tilde = cauchy_filter_space(space, max_points)
    bot = space.quantale.bottom
    for f in tilde.filters:
        for g in tilde.filters:
            if filter_distance(f, g) == bot and not is_cauchy(intersect(f, g)):
                return Verdict(False, {"cores": (f.core, g.core)})
    return Verdict(True)
