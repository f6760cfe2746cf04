"""Oracles and the machine-checked theorem suite.

Three layers of defence:

* family-level oracles re-derive every collapsed core formula (membership,
  image, intersection, roundification, filter distance, the round
  reduction) from the set-of-subsets definitions on small carriers, and
  confirm that every upward- and intersection-closed family is principal;
* the dense-sampling oracle replays each epsilon-quantified predicate with
  quantifiers ranging over stratified random rationals instead of the
  finite test set, and demands identical verdicts;
* the theorem suite runs every structural statement about filters,
  completions, and the asymmetry classes over seeded generated instances,
  recording failures as replayable data rather than raising.

The suite refuses to run unless the oracle layers pass first.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product

from . import serialize
from .completion import (
    cauchy_filter_space,
    complete,
    extend_to_completion,
    filter_point_name,
    induced_completion_map,
    is_cauchy_complete,
    minimal_cauchy_filters,
    zero_distance_intersection_cauchy,
)
from .errors import InvariantError, PreconditionError, QcError
from .filters import (
    Filter,
    _cauchy_over,
    _converges_over,
    _point_core_over,
    _round_over,
    filter_distance,
    image_filter,
    is_cauchy,
    is_minimal_cauchy,
    is_round,
    point_filter,
    roundify,
)
from .quantale import EXT_RATIONAL, INF, BUILTIN_QUANTALES, ValueQuantale
from .structures import (
    topology_of,
    topology_of_relation,
    quasi_uniformity_of,
    uva_equivalence_report,
    va_equivalence_report,
)
from .vspace import (
    VSpace,
    _has_uva_over,
    _has_va_over,
    _set_distance_masks,
    _uc_over,
    _uniform_flip_ok,
    classify,
    combined_test_values,
    has_uniformly_vanishing_asymmetry,
    has_vanishing_asymmetry,
    is_uniformly_continuous,
    separation_quotient,
    validate_vspace,
)


@dataclass
class VerificationReport:
    """Aggregated outcome of one check across many instances."""

    id: str
    instances: int = 0
    passes: int = 0
    failures: tuple = ()
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def payload(self) -> dict:
        # runtime is deliberately excluded: structured reports must be
        # byte-identical across runs with the same seed
        return {
            "id": self.id,
            "instances": self.instances,
            "passes": self.passes,
            "failures": list(self.failures),
        }


# ---------------------------------------------------------------------------
# instance generation


@dataclass(frozen=True)
class InstanceGenerator:
    """Seeded stream of valid spaces over one quantale.

    Identical parameters reproduce identical streams.  Raw random entries
    are repaired to satisfy the triangle law by relaxing each entry to the
    meet of itself and all two-step path sums until a fixed point, which
    only ever lowers entries.
    """

    seed: int
    quantale: ValueQuantale = EXT_RATIONAL
    min_points: int = 2
    max_points: int = 5
    zero_weight: int = 3
    inf_weight: int = 1
    finite_weight: int = 6
    max_numerator: int = 4
    max_denominator: int = 3
    force_uva: bool = False
    force_separated: bool = False
    force_symmetric: bool = False

    def child_seeds(self, count: int) -> list[int]:
        master = random.Random(f"qc:{self.seed}")
        return [master.getrandbits(63) for _ in range(count)]

    def space_from_seed(self, child_seed: int, max_points=None) -> VSpace:
        rng = random.Random(child_seed)
        return _generate_space(self, rng, max_points)

    def instances(self, count: int):
        for child in self.child_seeds(count):
            yield child, self.space_from_seed(child)


def _draw_value(gen: InstanceGenerator, rng: random.Random):
    q = gen.quantale
    if q.is_finite:
        n = q.size
        weights = [gen.zero_weight if e == q.bottom else 1 for e in range(n)]
        return rng.choices(range(n), weights=weights, k=1)[0]
    total = gen.zero_weight + gen.inf_weight + gen.finite_weight
    roll = rng.randrange(total)
    if roll < gen.zero_weight:
        return Fraction(0)
    if roll < gen.zero_weight + gen.inf_weight:
        return INF
    return Fraction(
        rng.randint(1, gen.max_numerator), rng.randint(1, gen.max_denominator)
    )


def triangle_repair(quantale: ValueQuantale, dmat) -> tuple[list, int]:
    """Relax every entry below all two-step path sums until stable.

    Entries never increase; the pass stabilises within |X|^3 full rounds.
    """
    n = len(dmat)
    d = [list(row) for row in dmat]
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        if rounds > n * n * n + 1:
            raise InvariantError("triangle repair failed to stabilise")
        for i in range(n):
            for k in range(n):
                best = d[i][k]
                for j in range(n):
                    cand = quantale.add(d[i][j], d[j][k])
                    if not quantale.leq(best, cand):
                        best = quantale.meet([best, cand])
                if best != d[i][k]:
                    if not quantale.leq(best, d[i][k]):
                        raise InvariantError("triangle repair increased a distance")
                    d[i][k] = best
                    changed = True
    return d, rounds


def _generate_space(gen: InstanceGenerator, rng: random.Random, max_points=None) -> VSpace:
    q = gen.quantale
    hi = gen.max_points if max_points is None else min(gen.max_points, max_points)
    lo = min(gen.min_points, hi)
    n = rng.randint(lo, hi)
    d = [[_draw_value(gen, rng) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        d[i][i] = q.bottom
    if gen.force_symmetric:
        for i in range(n):
            for j in range(i):
                d[i][j] = d[j][i]
    d, _ = triangle_repair(q, d)
    if gen.force_uva:
        for _ in range(n * n + 1):
            changed = False
            for i in range(n):
                for j in range(n):
                    if d[i][j] == q.bottom and d[j][i] != q.bottom:
                        d[j][i] = q.bottom
                        changed = True
            if not changed:
                break
            d, _ = triangle_repair(q, d)
    space = VSpace(q, [f"p{i}" for i in range(n)], d)
    if gen.force_separated:
        space, _ = separation_quotient(space)
    check = validate_vspace(space)
    if not check.ok:
        raise InvariantError(f"generator produced an invalid space: {check.failures[0]}")
    if gen.force_uva and not has_uniformly_vanishing_asymmetry(space):
        raise InvariantError("generator failed to force uniformly vanishing asymmetry")
    if gen.force_symmetric and not classify(space)["symmetric"]:
        raise InvariantError("generator failed to force symmetry")
    return space


# ---------------------------------------------------------------------------
# family-level filter oracle


def _family_is_filter(n: int, members: frozenset) -> bool:
    if not members:
        return False
    nsub = 1 << n
    for s in members:
        for t in range(nsub):
            if s | t == t and t not in members:
                return False
    for a in members:
        for b in members:
            if a & b not in members:
                return False
    return True


def enumerate_filter_families(n: int):
    """All nonempty, upward-closed, intersection-closed families; n <= 3."""
    if n > 3:
        raise PreconditionError("family enumeration is 2^(2^n); capped at n = 3")
    nsub = 1 << n
    for fam in range(1, 1 << nsub):
        members = frozenset(s for s in range(nsub) if fam >> s & 1)
        if _family_is_filter(n, members):
            yield members


def _family_of_core(n: int, core: int) -> frozenset:
    return frozenset(s for s in range(1 << n) if s & core == core)


def _family_core(members: frozenset) -> int:
    it = iter(members)
    core = next(it)
    for s in it:
        core &= s
    return core


def _family_generated(n: int, base) -> frozenset:
    """Least filter containing a (possibly empty) filter base."""
    base = list(base)
    if not base:
        return frozenset({(1 << n) - 1})
    return frozenset(
        t for t in range(1 << n) if any(c & t == c for c in base)
    )


def _family_image(fidx, n_src: int, n_tgt: int, members: frozenset) -> frozenset:
    out = set()
    for s in range(1 << n_tgt):
        pre = 0
        for i in range(n_src):
            if s >> fidx[i] & 1:
                pre |= 1 << i
        if pre in members:
            out.add(s)
    return frozenset(out)


def _family_distance(space: VSpace, m1: frozenset, m2: frozenset):
    q = space.quantale
    return q.join(
        _set_distance_masks(space, s, t) for s in sorted(m1) for t in sorted(m2)
    )


def _family_roundify(space: VSpace, members: frozenset) -> frozenset:
    base = []
    for s in sorted(members):
        for eps in space.test_values:
            m = 0
            for i in range(space.size):
                if s >> i & 1:
                    m |= space._ball(i, eps, True)
            base.append(m)
    fam = _family_generated(space.size, base)
    if not _family_is_filter(space.size, fam):
        raise InvariantError("fattened base did not generate a filter")
    return fam


def _family_is_round(space: VSpace, members: frozenset) -> bool:
    for fp in sorted(members):
        found = False
        for eps in space.test_values:
            ok = True
            for x in range(space.size):
                b = space._ball(x, eps, True)
                if b in members and (b | fp) != fp:
                    ok = False
                    break
            if ok:
                found = True
                break
        if not found:
            return False
    return True


def _oracle_battery(n: int) -> list[VSpace]:
    """Deterministic spaces exercising zeros, asymmetry, infinities."""
    names = [f"p{i}" for i in range(n)]
    ext = EXT_RATIONAL
    spaces = []

    def mk(q, fn):
        d = [[q.bottom if i == j else fn(i, j) for j in range(n)] for i in range(n)]
        spaces.append(VSpace(q, names, d))

    mk(ext, lambda i, j: Fraction(0))
    mk(ext, lambda i, j: Fraction(0) if i < j else Fraction(1))
    mk(ext, lambda i, j: Fraction(abs(i - j)))
    mk(ext, lambda i, j: INF)
    mk(ext, lambda i, j: Fraction(1, 2) if (i + j) % 2 else Fraction(1))
    q3 = BUILTIN_QUANTALES["Q3"]
    mk(q3, lambda i, j: 1)
    mk(q3, lambda i, j: 0 if i < j else 1)
    q1 = BUILTIN_QUANTALES["Q1"]
    mk(q1, lambda i, j: 0)
    return spaces


def _collapsed_formula_failures(space: VSpace, pair_limit: int = 64) -> list:
    """Compare every collapsed core formula with the family-level definition."""
    n = space.size
    failures = []
    cores = list(range(1 << n))
    families = {c: _family_of_core(n, c) for c in cores}

    def fail(kind, **data):
        failures.append({"check": kind, "space": serialize.space_to_payload(space), **data})

    maps = [tuple(0 for _ in range(n)), tuple(range(n)),
            tuple(min(i + 1, n - 1) for i in range(n)),
            tuple(n - 1 - i for i in range(n))]
    for c in cores:
        f = Filter(space, c)
        fam = families[c]
        # membership
        for s in range(1 << n):
            if (s in fam) != f.contains(space.names_of(s)):
                fail("membership", core=f.core, subset=space.names_of(s))
        # image
        for fidx in maps:
            img_fam = _family_image(fidx, n, n, fam)
            fmap = {space.points[i]: space.points[fidx[i]] for i in range(n)}
            img = image_filter(fmap, f, space)
            if img_fam != families[img.core_mask]:
                fail("image", core=f.core, map=list(fidx))
        # roundify
        rfam = _family_roundify(space, fam)
        rf = roundify(f)
        if rfam != families[rf.core_mask]:
            fail("roundify", core=f.core, collapsed=rf.core)
        # round reduction (definitional quantifies over every member)
        if _family_is_round(space, fam) != bool(is_round(f)):
            fail("round-reduction", core=f.core)
    # intersection and distance on (a sample of) filter pairs
    pairs = [(a, b) for a in cores for b in cores]
    if len(pairs) > pair_limit:
        pairs = [(a, b) for a, b in pairs if bin(a).count("1") <= 2 and bin(b).count("1") <= 2]
    for a, b in pairs:
        inter = frozenset(families[a] & families[b])
        if inter != families[a | b]:
            fail("intersection", cores=(space.names_of(a), space.names_of(b)))
        fa, fb = Filter(space, a), Filter(space, b)
        if _family_distance(space, families[a], families[b]) != filter_distance(fa, fb):
            fail("filter-distance", cores=(fa.core, fb.core))
    return failures


def oracle_filters(n: int, spaces=None) -> VerificationReport:
    """Principality of all families plus the collapsed-formula battery."""
    start = time.monotonic()
    report = VerificationReport(id=f"oracle.filters.n{n}")
    families = list(enumerate_filter_families(n))
    report.instances += 1
    failures = []
    if len(families) != 1 << n:
        failures.append({"check": "principality-count", "found": len(families)})
    for fam in families:
        core = _family_core(fam)
        if fam != _family_of_core(n, core):
            failures.append({"check": "principality", "core": core})
    if not failures:
        report.passes += 1
    for space in spaces if spaces is not None else _oracle_battery(n):
        report.instances += 1
        fs = _collapsed_formula_failures(space)
        if fs:
            failures.extend(fs)
        else:
            report.passes += 1
    report.failures = tuple(failures)
    report.runtime = time.monotonic() - start
    return report


def oracle_collapsed_formulas(n: int = 4) -> VerificationReport:
    """Collapsed-formula battery alone, for carriers too big to enumerate."""
    start = time.monotonic()
    report = VerificationReport(id=f"oracle.collapsed.n{n}")
    failures = []
    for space in _oracle_battery(n):
        report.instances += 1
        fs = _collapsed_formula_failures(space)
        if fs:
            failures.extend(fs)
        else:
            report.passes += 1
    report.failures = tuple(failures)
    report.runtime = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# dense epsilon-reduction oracle


PREDICATE_IDS = (
    "has_va",
    "has_uva",
    "modulus_exists",
    "is_cauchy",
    "is_round",
    "converges",
    "point_filter",
    "uniform_continuity",
)


def _dense_values(space: VSpace, samples: int, seed: int) -> list:
    """Stratified positive rationals covering every threshold cell, plus inf."""
    rng = random.Random(f"qc-dense:{seed}")
    finite = sorted(
        {e for row in space.dmat for e in row if e != Fraction(0) and e != INF}
    )
    bounds = [Fraction(0)] + finite
    cells = []
    for lo, hi in zip(bounds, bounds[1:]):
        cells.append((lo, hi))
    last = bounds[-1]
    cells.append((last, last + 2))
    out = []
    per = max(1, samples // len(cells))
    for lo, hi in cells:
        span = hi - lo
        for _ in range(per):
            den = rng.randint(1, 12) * 4
            num = rng.randint(1, den - 1)
            out.append(lo + span * Fraction(num, den))
    while len(out) < samples:
        den = rng.randint(1, 12) * 4
        num = rng.randint(1, den - 1)
        out.append(last + 2 * Fraction(num, den))
    out.append(INF)
    return out


def _dedupe_by_pattern(space: VSpace, values) -> tuple:
    """One representative per threshold-comparison pattern, ascending.

    Every predicate consulted here depends on a candidate value only
    through its comparisons with the distance entries, so equal patterns
    give equal inner verdicts and the quantifiers over the full sample set
    equal the quantifiers over the representatives.
    """
    q = space.quantale
    entries = sorted(
        {e for row in space.dmat for e in row}, key=q.sort_key
    )
    seen = {}
    for v in values:
        key = tuple(q.leq(e, v) for e in entries) + tuple(
            q.leq(v, e) for e in entries
        )
        seen.setdefault(key, v)
    return tuple(sorted(seen.values(), key=q.sort_key))


def _predicate_profile(space: VSpace, predicate: str, values) -> tuple:
    n = space.size
    cores = range(1 << n)
    if predicate == "has_va":
        return (_has_va_over(space, values, values).ok,)
    if predicate == "has_uva":
        return (_has_uva_over(space, values, values).ok,)
    if predicate == "modulus_exists":
        return tuple(
            any(_uniform_flip_ok(space, d, e) is None for d in values)
            for e in space.test_values
        )
    if predicate == "is_cauchy":
        return tuple(
            _cauchy_over(Filter(space, m), values, fwd) is None
            for m in cores
            for fwd in (True, False)
        )
    if predicate == "is_round":
        return tuple(_round_over(Filter(space, m), values) for m in cores)
    if predicate == "converges":
        return tuple(
            _converges_over(Filter(space, m), i, values, True) is None
            for m in cores
            for i in range(n)
        )
    if predicate == "point_filter":
        return tuple(
            _point_core_over(space, i, values, fwd)
            for i in range(n)
            for fwd in (True, False)
        )
    if predicate == "uniform_continuity":
        maps = [tuple(0 for _ in range(n)), tuple(range(n)),
                tuple(n - 1 - i for i in range(n))]
        return tuple(
            _uc_over(fidx, space, space, values, values).ok for fidx in maps
        )
    raise PreconditionError(f"unknown predicate {predicate!r}; known: {PREDICATE_IDS}")


def oracle_epsilon_reduction(space: VSpace, predicate: str, samples: int = 1000,
                             seed: int = 0) -> VerificationReport:
    """Test-set evaluation must equal dense-sample evaluation exactly."""
    if space.quantale.is_finite:
        raise PreconditionError(
            "dense sampling applies to the extended-rational family only"
        )
    start = time.monotonic()
    dense = _dedupe_by_pattern(space, _dense_values(space, samples, seed))
    via_test = _predicate_profile(space, predicate, space.test_values)
    via_dense = _predicate_profile(space, predicate, dense)
    failures = ()
    if via_test != via_dense:
        failures = (
            {
                "check": "epsilon-reduction",
                "predicate": predicate,
                "space": serialize.space_to_payload(space),
            },
        )
    return VerificationReport(
        id=f"oracle.epsilon.{predicate}",
        instances=1,
        passes=0 if failures else 1,
        failures=failures,
        runtime=time.monotonic() - start,
    )


def _epsilon_battery() -> list[VSpace]:
    ext = EXT_RATIONAL
    return [
        VSpace(ext, ["a", "b"], [[0, 1], [2, 0]]),
        VSpace(ext, ["a", "b"], [[0, 0], [1, 0]]),
        VSpace(ext, ["a", "b", "c"], [[0, 0, 1], [0, 0, 1], [1, 1, 0]]),
        VSpace(
            ext,
            ["a", "b", "c"],
            [[0, Fraction(1, 2), INF], [Fraction(3, 2), 0, INF], [INF, INF, 0]],
        ),
    ]


_GATE_CACHE: list | None = None


def oracle_gate() -> list[VerificationReport]:
    """Oracle battery the theorem suite insists on before trusting fast paths."""
    global _GATE_CACHE
    if _GATE_CACHE is None:
        reports = [oracle_filters(n) for n in (1, 2, 3)]
        reports.append(oracle_collapsed_formulas(4))
        for predicate in PREDICATE_IDS:
            agg = VerificationReport(id=f"oracle.epsilon.{predicate}")
            start = time.monotonic()
            for space in _epsilon_battery():
                sub = oracle_epsilon_reduction(space, predicate, samples=160, seed=11)
                agg.instances += sub.instances
                agg.passes += sub.passes
                agg.failures += sub.failures
            agg.runtime = time.monotonic() - start
            reports.append(agg)
        _GATE_CACHE = reports
    return list(_GATE_CACHE)


# ---------------------------------------------------------------------------
# theorem suite


class _Ctx:
    """Per-instance cache shared by the theorem checks."""

    def __init__(self, gen: InstanceGenerator, child_seed: int):
        self.seed = child_seed
        rng = random.Random(child_seed)
        self.space = _generate_space(gen, rng)
        sibling_gen = replace(gen, force_uva=True, force_separated=False)
        self.sibling = _generate_space(sibling_gen, rng, max_points=4)
        self.uva = has_uniformly_vanishing_asymmetry(self.space)
        self.va = has_vanishing_asymmetry(self.space)
        self._cache: dict = {}

    def check_rng(self, check_id: str) -> random.Random:
        return random.Random(f"qc-check:{self.seed}:{check_id}")

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def cores(self):
        return range(1, self.space.full_mask + 1)

    def cauchy(self, mask: int, fwd: bool = True) -> bool:
        table = self._memo(("cauchy", fwd), lambda: {})
        if mask not in table:
            table[mask] = (
                _cauchy_over(Filter(self.space, mask), self.space.test_values, fwd)
                is None
            )
        return table[mask]

    def round_(self, mask: int) -> bool:
        table = self._memo(("round",), lambda: {})
        if mask not in table:
            table[mask] = bool(is_round(Filter(self.space, mask)))
        return table[mask]

    def roundified(self, mask: int) -> int:
        table = self._memo(("roundify",), lambda: {})
        if mask not in table:
            table[mask] = roundify(Filter(self.space, mask)).core_mask
        return table[mask]

    def minimal(self, mask: int) -> bool:
        table = self._memo(("minimal",), lambda: {})
        if mask not in table:
            table[mask] = bool(is_minimal_cauchy(Filter(self.space, mask)))
        return table[mask]

    def point_filters(self, fwd: bool = True):
        return self._memo(
            ("pf", fwd),
            lambda: tuple(
                point_filter(self.space, p, "forward" if fwd else "backward")
                for p in self.space.points
            ),
        )

    @property
    def tilde(self):
        return self._memo(("tilde",), lambda: cauchy_filter_space(self.space))

    @property
    def completion(self):
        return self._memo(("completion",), lambda: complete(self.space))

    @property
    def separated(self):
        return self._memo(("separated",), lambda: separation_quotient(self.space)[0])

    @property
    def sep_sibling(self):
        return self._memo(
            ("sep_sibling",), lambda: separation_quotient(self.sibling)[0]
        )

    def uc_maps(self, source: VSpace, target: VSpace):
        out = []
        for values in product(range(target.size), repeat=source.size):
            if _uc_over(values, source, target,
                        combined_test_values(source, target),
                        combined_test_values(source, target)):
                out.append(
                    {source.points[i]: target.points[v] for i, v in enumerate(values)}
                )
        return out


def _zero_pattern_symmetric(space: VSpace) -> bool:
    bot = space.quantale.bottom
    return all(
        (space.dmat[i][j] == bot) == (space.dmat[j][i] == bot)
        for i in range(space.size)
        for j in range(space.size)
    )


def _check_cauchy_round_implies_minimal(ctx: _Ctx):
    for m in ctx.cores:
        if ctx.cauchy(m) and ctx.round_(m) and not ctx.minimal(m):
            return {"core": ctx.space.names_of(m)}
    return None


def _check_roundify_preserves_cauchy(ctx: _Ctx):
    for m in range(ctx.space.full_mask + 1):
        if ctx.cauchy(m) and not ctx.cauchy(ctx.roundified(m)):
            return {"core": ctx.space.names_of(m)}
    return None


def _check_roundify_round(ctx: _Ctx):
    for m in ctx.cores:
        if not ctx.round_(ctx.roundified(m)):
            return {"core": ctx.space.names_of(m)}
    return None


def _check_minimal_iff(ctx: _Ctx):
    for m in ctx.cores:
        if ctx.minimal(m) != (ctx.cauchy(m) and ctx.round_(m)):
            return {"core": ctx.space.names_of(m)}
    return None


def _check_point_filters_coincide(ctx: _Ctx):
    fwd = ctx.point_filters(True)
    bwd = ctx.point_filters(False)
    for p, f, g in zip(ctx.space.points, fwd, bwd):
        if f.core_mask != g.core_mask:
            return {"point": p, "forward": f.core, "backward": g.core}
    return None


def _check_cauchy_iff_op(ctx: _Ctx):
    for m in range(ctx.space.full_mask + 1):
        if ctx.cauchy(m, True) != ctx.cauchy(m, False):
            return {"core": ctx.space.names_of(m)}
    return None


def _check_roundify_idempotent(ctx: _Ctx):
    for m in ctx.cores:
        once = ctx.roundified(m)
        if ctx.roundified(once) != once:
            return {"core": ctx.space.names_of(m)}
    return None


def _check_ball_distance_bounds(ctx: _Ctx):
    space = ctx.space
    tv = space.test_values
    if not tv:
        return None
    q = space.quantale
    rng = ctx.check_rng("ball-bounds")
    for _ in range(8):
        x = rng.randrange(space.size)
        y = rng.randrange(space.size)
        delta = tv[rng.randrange(len(tv))]
        eps = tv[rng.randrange(len(tv))]
        bx = space._ball(x, delta, False)
        by = space._ball(y, eps, True)
        smask = bx & rng.getrandbits(space.size) | 1 << x
        tmask = by & rng.getrandbits(space.size) | 1 << y
        dst = _set_distance_masks(space, smask, tmask)
        bound = q.add(q.add(space.dmat[x][y], delta), eps)
        if not q.leq(dst, bound):
            return {"pair": (space.points[x], space.points[y])}
        dts = _set_distance_masks(space, tmask, smask)
        bound2 = q.add(q.add(dts, delta), eps)
        if not q.leq(space.dmat[y][x], bound2):
            return {"pair": (space.points[y], space.points[x])}
    return None


def _morphism_ok(uc: bool, fidx, fmask: int, gmask: int, src: VSpace) -> bool:
    if not uc:
        return False
    img = 0
    for i in range(src.size):
        if fmask >> i & 1:
            img |= 1 << fidx[i]
    return img | gmask == gmask


def _check_roundify_functorial(ctx: _Ctx):
    x, y = ctx.space, ctx.sibling
    tv = combined_test_values(x, y)
    ry = {m: roundify(Filter(y, m)).core_mask for m in range(y.full_mask + 1)}
    for fidx in product(range(y.size), repeat=x.size):
        uc = bool(_uc_over(fidx, x, y, tv, tv))
        if not uc:
            continue
        for fm in range(x.full_mask + 1):
            for gm in range(y.full_mask + 1):
                if _morphism_ok(uc, fidx, fm, gm, x) and not _morphism_ok(
                    uc, fidx, ctx.roundified(fm), ry[gm], x
                ):
                    return {
                        "map": list(fidx),
                        "source_core": x.names_of(fm),
                        "target_core": y.names_of(gm),
                    }
    return None


def _check_roundify_adjunction(ctx: _Ctx):
    x, y = ctx.space, ctx.sibling
    tv = combined_test_values(x, y)
    y_cr = [
        m
        for m in range(1, y.full_mask + 1)
        if _cauchy_over(Filter(y, m), y.test_values, True) is None
        and _round_over(Filter(y, m), y.test_values)
    ]
    x_c = [m for m in ctx.cores if ctx.cauchy(m)]
    for fidx in product(range(y.size), repeat=x.size):
        uc = bool(_uc_over(fidx, x, y, tv, tv))
        for fm in x_c:
            for gm in y_cr:
                lhs = _morphism_ok(uc, fidx, ctx.roundified(fm), gm, x)
                rhs = _morphism_ok(uc, fidx, fm, gm, x)
                if lhs != rhs:
                    return {
                        "map": list(fidx),
                        "source_core": x.names_of(fm),
                        "target_core": y.names_of(gm),
                    }
    return None


def _check_tilde_is_uva_vspace(ctx: _Ctx):
    tilde = ctx.tilde
    rep = validate_vspace(tilde.space)
    if not rep.ok:
        f = rep.failures[0]
        return {"check": f.check, **f.witness}
    uva = has_uniformly_vanishing_asymmetry(tilde.space)
    if not uva:
        return {"check": "uva", **(uva.witness or {})}
    return None


def _check_quotient_inherits(ctx: _Ctx):
    quotient = ctx.separated
    if ctx.uva and not has_uniformly_vanishing_asymmetry(quotient):
        return {"check": "uva"}
    if ctx.va and not has_vanishing_asymmetry(quotient):
        return {"check": "va"}
    return None


def _check_completion_isometric_to_quotient(ctx: _Ctx):
    ctx.completion  # the constructor re-checks the roundification isometry
    return None


def _check_embedding_isometry(ctx: _Ctx):
    space = ctx.space
    pfs = ctx.point_filters(True)
    for i in range(space.size):
        for j in range(space.size):
            if filter_distance(pfs[i], pfs[j]) != space.dmat[i][j]:
                return {"pair": (space.points[i], space.points[j])}
    return None


def _check_embedding_dense(ctx: _Ctx):
    comp = ctx.completion
    q = comp.space.quantale
    for gi in range(len(comp.filters)):
        for eps in comp.space.test_values:
            if not any(
                q.leq(comp.space.dmat[gi][comp.embedding[x]], eps)
                for x in comp.base.points
            ):
                return {
                    "filter": comp.filters[gi].core,
                    "epsilon": q.format(eps),
                }
    return None


def _check_completion_complete(ctx: _Ctx):
    verdict = is_cauchy_complete(ctx.completion.space)
    return None if verdict else verdict.witness


def _check_completion_separated_uva(ctx: _Ctx):
    comp = ctx.completion
    if not classify(comp.space)["separated"]:
        return {"check": "separated"}
    uva = has_uniformly_vanishing_asymmetry(comp.space)
    if not uva:
        return {"check": "uva", **(uva.witness or {})}
    return None


def _check_zero_distance_intersection(ctx: _Ctx):
    verdict = zero_distance_intersection_cauchy(ctx.space)
    return None if verdict else verdict.witness


def _check_completion_idempotent(ctx: _Ctx):
    comp = ctx.completion
    again = complete(comp.space)
    if len(again.filters) != len(comp.filters):
        return {"first": len(comp.filters), "second": len(again.filters)}
    if len(set(again.embedding.values())) != len(again.filters):
        return {"check": "embedding not bijective"}
    return None


def _check_completion_functorial(ctx: _Ctx):
    x, y = ctx.separated, ctx.sep_sibling
    maps = ctx.uc_maps(x, y)
    rng = ctx.check_rng("functorial")
    fmap = maps[rng.randrange(len(maps))]
    cx, cy = complete(x), complete(y)
    induced = induced_completion_map(fmap, cx, cy)
    uc = is_uniformly_continuous(induced, cx.space, cy.space)
    if not uc:
        return {"check": "induced map not uniformly continuous", **(uc.witness or {})}
    for p in x.points:
        via = induced[filter_point_name(cx.filters[cx.embedding[p]])]
        direct = filter_point_name(cy.filters[cy.embedding[fmap[p]]])
        if via != direct:
            return {"check": "embedding square", "point": p}
    return None


def _check_universal_property(ctx: _Ctx):
    x = ctx.separated
    target = complete(ctx.sep_sibling).space
    maps = ctx.uc_maps(x, target)
    rng = ctx.check_rng("universal")
    fmap = maps[rng.randrange(len(maps))]
    result = extend_to_completion(fmap, x, target)
    if not result.uniqueness_checked:
        return {"check": "uniqueness enumeration skipped"}
    return None


def _check_va_conditions(ctx: _Ctx):
    va_equivalence_report(ctx.space)
    return None


def _check_uva_conditions(ctx: _Ctx):
    uva_equivalence_report(ctx.space)
    return None


def _check_uva_implies_va(ctx: _Ctx):
    if ctx.uva and not ctx.va:
        return {"uva": True, "va": False}
    return None


def _check_finite_collapse(ctx: _Ctx):
    zero_sym = _zero_pattern_symmetric(ctx.space)
    if not (ctx.va.ok == ctx.uva.ok == zero_sym):
        return {"va": ctx.va.ok, "uva": ctx.uva.ok, "zero_symmetric": zero_sym}
    return None


def _check_balls_closed(ctx: _Ctx):
    """Closed balls versus the ball topologies.

    The orientation that holds on every space pairs a ball with the
    opposite topology: {y : d(y,x) <= eps} is closed among the opens
    generated by {y : d(x,y) strictly below eps}, and dually.  The
    same-orientation statement fails without vanishing asymmetry (two
    points with d(a,b)=0, d(b,a)=1 witness it), so it is asserted only
    when the space has vanishing asymmetry, where the two topologies
    coincide.
    """
    space = ctx.space
    fwd_top = topology_of(space, "forward")
    bwd_top = topology_of(space, "backward")
    for i in range(space.size):
        for eps in space.test_values:
            fwd_ball = space._ball(i, eps, True)
            bwd_ball = space._ball(i, eps, False)
            witness = {
                "point": space.points[i],
                "epsilon": space.quantale.format(eps),
            }
            if space.full_mask & ~bwd_ball not in fwd_top.opens:
                return {**witness, "side": "backward ball in forward topology"}
            if space.full_mask & ~fwd_ball not in bwd_top.opens:
                return {**witness, "side": "forward ball in backward topology"}
            if ctx.va and space.full_mask & ~fwd_ball not in fwd_top.opens:
                return {**witness, "side": "forward ball in forward topology"}
    return None


def _check_uniformity_topology(ctx: _Ctx):
    space = ctx.space
    for side in ("forward", "backward"):
        uni = quasi_uniformity_of(space, side)
        from_relation = topology_of_relation(space.points, uni.core)
        direct = topology_of(space, side)
        if from_relation.opens != direct.opens:
            return {"side": side}
    return None


def _check_separated_va_discrete(ctx: _Ctx):
    if classify(ctx.space)["separated"] and ctx.va:
        if not topology_of(ctx.space).is_discrete:
            return {"check": "topology not discrete"}
    return None


def _check_quotient_separated_isometric(ctx: _Ctx):
    quotient, projection = separation_quotient(ctx.space)
    if not classify(quotient)["separated"]:
        return {"check": "not separated"}
    for x in ctx.space.points:
        for y in ctx.space.points:
            if quotient.d(projection[x], projection[y]) != ctx.space.d(x, y):
                return {"pair": (x, y)}
    return None


def _check_degenerate_uva(ctx: _Ctx):
    return None if ctx.uva else {"witness": ctx.uva.witness}


def _check_degenerate_all_cauchy(ctx: _Ctx):
    for m in range(ctx.space.full_mask + 1):
        if not ctx.cauchy(m):
            return {"core": ctx.space.names_of(m)}
    return None


def _check_degenerate_single_point(ctx: _Ctx):
    if ctx.space.size == 0:
        return None
    comp = ctx.completion
    if len(comp.filters) != 1:
        return {"points": len(comp.filters)}
    return None


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    fn: object
    gates: tuple = ()


THEOREM_CHECKS = (
    TheoremCheck("filters.cauchy_round_implies_minimal", _check_cauchy_round_implies_minimal),
    TheoremCheck("filters.roundify_preserves_cauchy", _check_roundify_preserves_cauchy),
    TheoremCheck("filters.roundify_round_under_uva", _check_roundify_round, ("uva", "positives")),
    TheoremCheck("filters.minimal_iff_cauchy_round_under_uva", _check_minimal_iff, ("uva", "positives")),
    TheoremCheck("filters.point_filters_coincide_under_va", _check_point_filters_coincide, ("va",)),
    TheoremCheck("filters.cauchy_iff_op_cauchy_under_uva", _check_cauchy_iff_op, ("uva",)),
    TheoremCheck("filters.roundify_idempotent", _check_roundify_idempotent, ("uva",)),
    TheoremCheck("filters.ball_set_distance_bounds", _check_ball_distance_bounds),
    TheoremCheck("filters.roundify_functorial", _check_roundify_functorial, ("uva", "pair<=3")),
    TheoremCheck("filters.roundify_adjunction", _check_roundify_adjunction, ("uva", "pair<=3")),
    TheoremCheck("completion.cauchy_space_is_uva_vspace", _check_tilde_is_uva_vspace, ("uva",)),
    TheoremCheck("completion.quotient_inherits_asymmetry", _check_quotient_inherits),
    TheoremCheck("completion.minimal_space_isometric_to_quotient", _check_completion_isometric_to_quotient, ("uva",)),
    TheoremCheck("completion.embedding_isometry", _check_embedding_isometry, ("uva",)),
    TheoremCheck("completion.embedding_dense", _check_embedding_dense, ("uva",)),
    TheoremCheck("completion.completion_is_cauchy_complete", _check_completion_complete, ("uva",)),
    TheoremCheck("completion.completion_separated_uva", _check_completion_separated_uva, ("uva",)),
    TheoremCheck("completion.zero_distance_intersection_cauchy", _check_zero_distance_intersection, ("uva",)),
    TheoremCheck("completion.idempotent_up_to_isometry", _check_completion_idempotent, ("uva",)),
    TheoremCheck("completion.functorial_on_maps", _check_completion_functorial, ("uva", "sep_pair<=4")),
    TheoremCheck("completion.universal_property", _check_universal_property, ("uva", "sep_pair<=4")),
    TheoremCheck("structures.va_conditions_agree", _check_va_conditions),
    TheoremCheck("structures.uva_conditions_agree", _check_uva_conditions),
    TheoremCheck("structures.uva_implies_va", _check_uva_implies_va),
    TheoremCheck("structures.finite_model_collapse_zero_pattern", _check_finite_collapse),
    TheoremCheck("structures.balls_closed_in_topology", _check_balls_closed),
    TheoremCheck("structures.uniformity_topology_consistent", _check_uniformity_topology),
    TheoremCheck("structures.separated_va_hausdorff_discrete", _check_separated_va_discrete),
    TheoremCheck("vspace.quotient_separated_isometric", _check_quotient_separated_isometric),
    TheoremCheck("degenerate.uva_everywhere", _check_degenerate_uva, ("degenerate",)),
    TheoremCheck("degenerate.all_filters_cauchy", _check_degenerate_all_cauchy, ("degenerate",)),
    TheoremCheck("degenerate.completion_single_point", _check_degenerate_single_point, ("degenerate",)),
)


def _gates_open(ctx: _Ctx, gates) -> bool:
    for gate in gates:
        if gate == "uva" and not ctx.uva:
            return False
        if gate == "va" and not ctx.va:
            return False
        if gate == "positives" and not ctx.space.test_values:
            return False
        if gate == "degenerate" and ctx.space.test_values:
            return False
        if gate == "pair<=3" and (ctx.space.size > 3 or ctx.sibling.size > 3):
            return False
        if gate == "sep_pair<=4" and (
            ctx.separated.size > 4 or ctx.sep_sibling.size > 4
        ):
            return False
    return True


def run_theorem_suite(generator: InstanceGenerator, count: int,
                      checks=THEOREM_CHECKS) -> list[VerificationReport]:
    """Run every theorem check over `count` generated instances.

    The oracle gate runs first and the suite refuses to start on any gate
    failure.  Returns the gate reports followed by one aggregated report
    per theorem; failures carry the child seed, the serialized instance,
    and the witness, enough to replay standalone.
    """
    gate = oracle_gate()
    if any(r.failures for r in gate):
        bad = [r.id for r in gate if r.failures]
        raise InvariantError(f"oracle gate failed: {bad}; fast paths are not trusted")
    tallies = {c.id: VerificationReport(id=c.id) for c in checks}
    for child in generator.child_seeds(count):
        ctx = _Ctx(generator, child)
        payload = None
        for check in checks:
            if not _gates_open(ctx, check.gates):
                continue
            report = tallies[check.id]
            report.instances += 1
            start = time.monotonic()
            try:
                witness = check.fn(ctx)
            except QcError as exc:
                witness = {"error": str(exc)}
            report.runtime += time.monotonic() - start
            if witness is None:
                report.passes += 1
            else:
                if payload is None:
                    payload = serialize.space_to_payload(ctx.space)
                report.failures += (
                    {"seed": ctx.seed, "instance": payload, "witness": witness},
                )
    return gate + [tallies[c.id] for c in checks]


# ---------------------------------------------------------------------------
# category laws


def _category_instance_failures(ctx: _Ctx, law: str, rng: random.Random):
    x, y = ctx.space, ctx.sibling
    tv = combined_test_values(x, y)
    maps = list(product(range(y.size), repeat=x.size))
    uc_of = {fidx: bool(_uc_over(fidx, x, y, tv, tv)) for fidx in maps}
    if law == "identity_morphism":
        ident = tuple(range(x.size))
        uc_id = bool(_uc_over(ident, x, x, x.test_values, x.test_values))
        for fm in range(x.full_mask + 1):
            if not _morphism_ok(uc_id, ident, fm, fm, x):
                return {"core": x.names_of(fm)}
        return None
    if law == "powerset_left_adjoint":
        for fidx in maps:
            for gm in range(y.full_mask + 1):
                if _morphism_ok(uc_of[fidx], fidx, 0, gm, x) != uc_of[fidx]:
                    return {"map": list(fidx), "target_core": y.names_of(gm)}
        return None
    if law == "carrier_right_adjoint":
        tv_yx = combined_test_values(y, x)
        for gidx in product(range(x.size), repeat=y.size):
            uc = bool(_uc_over(gidx, y, x, tv_yx, tv_yx))
            for gm in range(y.full_mask + 1):
                if _morphism_ok(uc, gidx, gm, x.full_mask, y) != uc:
                    return {"map": list(gidx), "source_core": y.names_of(gm)}
        return None
    if law == "roundify_functorial":
        return _check_roundify_functorial(ctx)
    if law == "roundify_adjunction":
        return _check_roundify_adjunction(ctx)
    if law == "composition":
        tv_yx = combined_test_values(y, x)
        for _ in range(10):
            fidx = maps[rng.randrange(len(maps))]
            gidx = tuple(rng.randrange(x.size) for _ in range(y.size))
            uc_f = uc_of[fidx]
            uc_g = bool(_uc_over(gidx, y, x, tv_yx, tv_yx))
            gf = tuple(gidx[fidx[i]] for i in range(x.size))
            uc_gf = bool(_uc_over(gf, x, x, x.test_values, x.test_values))
            fm = rng.randrange(x.full_mask + 1)
            gm = rng.randrange(y.full_mask + 1)
            hm = rng.randrange(x.full_mask + 1)
            if (
                _morphism_ok(uc_f, fidx, fm, gm, x)
                and _morphism_ok(uc_g, gidx, gm, hm, y)
                and not _morphism_ok(uc_gf, gf, fm, hm, x)
            ):
                return {"f": list(fidx), "g": list(gidx)}
        return None
    raise PreconditionError(f"unknown law {law!r}")


CATEGORY_LAWS = (
    "identity_morphism",
    "powerset_left_adjoint",
    "carrier_right_adjoint",
    "roundify_functorial",
    "roundify_adjunction",
    "composition",
)


def check_category_laws(generator: InstanceGenerator, count: int) -> list[VerificationReport]:
    """Adjunction and functor laws on fully enumerable carriers (<= 3)."""
    gen = replace(
        generator,
        max_points=min(generator.max_points, 3),
        min_points=min(generator.min_points, 3),
        force_uva=True,
    )
    tallies = {law: VerificationReport(id=f"category.{law}") for law in CATEGORY_LAWS}
    for child in gen.child_seeds(count):
        ctx = _Ctx(gen, child)
        payload = None
        for law in CATEGORY_LAWS:
            report = tallies[law]
            report.instances += 1
            start = time.monotonic()
            rng = ctx.check_rng(f"category:{law}")
            try:
                witness = _category_instance_failures(ctx, law, rng)
            except QcError as exc:
                witness = {"error": str(exc)}
            report.runtime += time.monotonic() - start
            if witness is None:
                report.passes += 1
            else:
                if payload is None:
                    payload = serialize.space_to_payload(ctx.space)
                report.failures += (
                    {"seed": ctx.seed, "instance": payload, "witness": witness},
                )
    return [tallies[law] for law in CATEGORY_LAWS]


# ---------------------------------------------------------------------------
# counterexample search


SEARCH_TARGETS = (
    "roundify-round-without-UVA",
    "minimal-iff-without-UVA",
    "embedding-isometry-without-UVA",
    "completeness-without-UVA",
)


def _violation(space: VSpace, target: str):
    if target == "roundify-round-without-UVA":
        for m in range(1, space.full_mask + 1):
            if not is_round(roundify(Filter(space, m))):
                return {"core": space.names_of(m)}
        return None
    if target == "minimal-iff-without-UVA":
        for m in range(1, space.full_mask + 1):
            f = Filter(space, m)
            definitional = bool(is_minimal_cauchy(f))
            characterized = bool(is_cauchy(f)) and bool(is_round(f))
            if definitional != characterized:
                return {
                    "core": space.names_of(m),
                    "definitional": definitional,
                    "cauchy_and_round": characterized,
                }
        return None
    if target == "embedding-isometry-without-UVA":
        pfs = [point_filter(space, p) for p in space.points]
        for i in range(space.size):
            for j in range(space.size):
                got = filter_distance(pfs[i], pfs[j])
                if got != space.dmat[i][j]:
                    return {
                        "pair": (space.points[i], space.points[j]),
                        "filter_distance": space.quantale.format(got),
                        "distance": space.quantale.format(space.dmat[i][j]),
                    }
        return None
    if target == "completeness-without-UVA":
        filters = minimal_cauchy_filters(space)
        if not filters:
            return None
        names = [filter_point_name(f) for f in filters]
        dmat = [[filter_distance(f, g) for g in filters] for f in filters]
        hat = VSpace(space.quantale, names, dmat)
        verdict = is_cauchy_complete(hat)
        if not verdict:
            return {"divergent_core": verdict.witness["core"]}
        return None
    raise PreconditionError(f"unknown target {target!r}; known: {SEARCH_TARGETS}")


def _drop_point(space: VSpace, idx: int) -> VSpace:
    keep = [i for i in range(space.size) if i != idx]
    return VSpace(
        space.quantale,
        [space.points[i] for i in keep],
        [[space.dmat[i][j] for j in keep] for i in keep],
    )


def _shrink(space: VSpace, target: str) -> VSpace:
    """Greedy minimisation: drop points, then coarsen entries downward."""
    q = space.quantale
    if q.is_finite:
        canon = [q.bottom, q.top]
    else:
        canon = [Fraction(0), Fraction(1), INF]

    def still_fails(candidate: VSpace) -> bool:
        return (
            validate_vspace(candidate).ok
            and not has_uniformly_vanishing_asymmetry(candidate)
            and _violation(candidate, target) is not None
        )

    current = space
    progress = True
    while progress:
        progress = False
        for i in range(current.size):
            if current.size <= 1:
                break
            cand = _drop_point(current, i)
            if still_fails(cand):
                current = cand
                progress = True
                break
        if progress:
            continue
        rank = {v: r for r, v in enumerate(canon)}
        for i in range(current.size):
            for j in range(current.size):
                if i == j:
                    continue
                e = current.dmat[i][j]
                e_rank = rank.get(e, len(canon))
                for value in canon[: min(e_rank, len(canon))]:
                    rows = [list(r) for r in current.dmat]
                    rows[i][j] = value
                    cand = VSpace(q, current.points, rows)
                    if still_fails(cand):
                        current = cand
                        progress = True
                        break
                if progress:
                    break
            if progress:
                break
    return current


@dataclass(frozen=True)
class SearchResult:
    target: str
    examined: int
    findings: tuple

    def payload(self) -> dict:
        return {
            "target": self.target,
            "examined": self.examined,
            "findings": list(self.findings),
        }


def search_counterexamples(target: str, generator: InstanceGenerator,
                           budget: int) -> SearchResult:
    """Mine non-UVA instances for failures of a UVA-hypothesis conclusion.

    Findings are reports with replay seeds and greedily shrunk witnesses,
    never assertions that a counterexample must exist; zero budget yields
    zero findings.
    """
    if target not in SEARCH_TARGETS:
        raise PreconditionError(f"unknown target {target!r}; known: {SEARCH_TARGETS}")
    findings = []
    examined = 0
    for child, space in generator.instances(budget):
        examined += 1
        if has_uniformly_vanishing_asymmetry(space):
            continue
        witness = _violation(space, target)
        if witness is None:
            continue
        shrunk = _shrink(space, target)
        findings.append(
            {
                "seed": child,
                "witness": witness,
                "instance": serialize.space_to_payload(space),
                "shrunk": serialize.space_to_payload(shrunk),
                "shrunk_witness": _violation(shrunk, target),
            }
        )
    return SearchResult(target=target, examined=examined, findings=tuple(findings))
