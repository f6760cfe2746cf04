"""Value quantales: complete lattices carrying a meet-distributing addition.

Two instance families are provided.  `FiniteQuantale` is presented by
explicit order and addition tables and supports exhaustive reasoning;
`ExtendedRationalQuantale` is the symbolic chain of non-negative rationals
with a point at infinity.  All arithmetic is exact: table indices,
`fractions.Fraction`, and the `INF` sentinel.  No floats anywhere.

Elements are plain values (an int index, a Fraction, or INF) and are only
meaningful relative to their owning quantale; every public operation
normalises and checks its element arguments.

The well-above relation on finite tables is computed by the closed form

    a well_above b   iff   meet{s : not s <= a} is not <= b

which is equivalent to the subset-quantified definition on any complete
lattice (the set on the left is the worst-case witness family).  The test
suite re-derives the equivalence against the 2^|V|-subset oracle on a
corpus of small lattices before anything downstream relies on it.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce

from .errors import DomainMismatchError, InvariantError, PreconditionError, StructureError
from .reporting import CheckFailure, ValidationReport


class _Infinity:
    """Symbolic top of the extended rationals; absorbing under addition."""

    __slots__ = ()

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("qc.infinity")

    def __lt__(self, other):
        if isinstance(other, (_Infinity, int, Fraction)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, _Infinity):
            return True
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return False
        if isinstance(other, (int, Fraction)):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (_Infinity, int, Fraction)):
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (_Infinity, int, Fraction)):
            return self
        return NotImplemented

    __radd__ = __add__


INF = _Infinity()


class ValueQuantale:
    """Interface shared by the quantale families.

    Subclasses provide: check, leq, add, meet, join, well_above, subtract,
    nth_fraction, interpolate, sort_key, format, parse, bottom, top.
    """

    is_finite: bool = False
    label: str = "quantale"

    def check(self, element):
        """Normalise an element, raising DomainMismatchError if foreign."""
        raise NotImplementedError

    def contains(self, element) -> bool:
        try:
            self.check(element)
        except DomainMismatchError:
            return False
        return True

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


class ExtendedRationalQuantale(ValueQuantale):
    """Non-negative rationals with infinity, ordinary order, truncated sum.

    The carrier is symbolic: elements are `Fraction` values >= 0 or `INF`.
    well_above coincides with strict order, where INF is well above
    everything but itself; the witness families behind that reduction are
    the geometric sequences (meet 0, no member below 0) and the tail sets
    (a, inf] (meet a, not attained).
    """

    is_finite = False
    label = "ext_rational"

    @property
    def bottom(self):
        return Fraction(0)

    @property
    def top(self):
        return INF

    def check(self, element):
        if isinstance(element, _Infinity):
            return INF
        if isinstance(element, bool):
            raise DomainMismatchError("booleans are not extended-rational elements")
        if isinstance(element, int):
            element = Fraction(element)
        if isinstance(element, Fraction):
            if element < 0:
                raise DomainMismatchError(f"negative value {element} is not in [0, inf]")
            return element
        raise DomainMismatchError(f"not an extended-rational element: {element!r}")

    def leq(self, a, b):
        a, b = self.check(a), self.check(b)
        if isinstance(b, _Infinity):
            return True
        if isinstance(a, _Infinity):
            return False
        return a <= b

    def add(self, a, b):
        a, b = self.check(a), self.check(b)
        if isinstance(a, _Infinity) or isinstance(b, _Infinity):
            return INF
        return a + b

    def meet(self, elements):
        result = INF
        for e in elements:
            e = self.check(e)
            if self.leq(e, result):
                result = e
        return result

    def join(self, elements):
        result = Fraction(0)
        for e in elements:
            e = self.check(e)
            if self.leq(result, e):
                result = e
        return result

    def well_above(self, a, b):
        a, b = self.check(a), self.check(b)
        if isinstance(a, _Infinity):
            return not isinstance(b, _Infinity)
        if isinstance(b, _Infinity):
            return False
        return a > b

    def subtract(self, a, b):
        """Left adjoint of addition: meet{c : a <= b + c}."""
        a, b = self.check(a), self.check(b)
        if self.leq(a, b):
            return Fraction(0)
        if isinstance(a, _Infinity):
            return INF
        return a - b

    def nth_fraction(self, eps, n):
        """A canonical delta well above 0 with n-fold sum below eps."""
        eps = self.check(eps)
        if not isinstance(n, int) or n < 1:
            raise PreconditionError(f"n must be a positive integer, got {n!r}")
        if not self.well_above(eps, self.bottom):
            raise PreconditionError(f"{self.format(eps)} is not well above 0")
        if isinstance(eps, _Infinity):
            return Fraction(1)
        return eps / n

    def interpolate(self, x, z):
        """A canonical y with x strictly between: x well-below y well-below z."""
        x, z = self.check(x), self.check(z)
        if not self.well_above(z, x):
            raise PreconditionError(
                f"{self.format(z)} is not well above {self.format(x)}"
            )
        if isinstance(z, _Infinity):
            return x + 1
        return (x + z) / 2

    def sort_key(self, element):
        element = self.check(element)
        if isinstance(element, _Infinity):
            return (1, Fraction(0))
        return (0, element)

    def format(self, element) -> str:
        element = self.check(element)
        return "inf" if isinstance(element, _Infinity) else str(element)

    def parse(self, text):
        if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
            return self.check(text)
        if not isinstance(text, str):
            raise StructureError(f"cannot parse element from {text!r}")
        s = text.strip()
        if s == "inf":
            return INF
        try:
            value = Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise StructureError(f"bad rational literal {text!r}: {exc}") from None
        if value < 0:
            raise StructureError(f"negative rational literal {text!r}")
        return value

    def __eq__(self, other):
        return isinstance(other, ExtendedRationalQuantale)

    def __hash__(self):
        return hash("qc.ext_rational")


EXT_RATIONAL = ExtendedRationalQuantale()


def _normalise_tables(names, leq, add):
    """Shape-check raw tables; raises StructureError on malformed input."""
    names = tuple(str(x) for x in names)
    n = len(names)
    if n == 0:
        raise StructureError("a quantale needs at least one element")
    if len(set(names)) != n or any(not s for s in names):
        raise StructureError("element names must be unique and non-empty")
    if len(leq) != n or any(len(row) != n for row in leq):
        raise StructureError(f"leq table must be {n}x{n}")
    if len(add) != n or any(len(row) != n for row in add):
        raise StructureError(f"add table must be {n}x{n}")
    leq_t = []
    for row in leq:
        out = []
        for v in row:
            if not isinstance(v, (bool, int)) or v not in (0, 1, True, False):
                raise StructureError(f"leq entries must be booleans, got {v!r}")
            out.append(bool(v))
        leq_t.append(tuple(out))
    add_t = []
    for row in add:
        out = []
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise StructureError(f"add entries must be indices in [0,{n}), got {v!r}")
            out.append(v)
        add_t.append(tuple(out))
    return names, tuple(leq_t), tuple(add_t)


def _partial_order_witness(leq):
    """Return a witness dict if leq is not a partial order, else None."""
    n = len(leq)
    for i in range(n):
        if not leq[i][i]:
            return {"law": "reflexivity", "element": i}
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                return {"law": "antisymmetry", "pair": (i, j)}
    for i in range(n):
        for j in range(n):
            if leq[i][j]:
                for k in range(n):
                    if leq[j][k] and not leq[i][k]:
                        return {"law": "transitivity", "triple": (i, j, k)}
    return None


class _LatticeProblem(Exception):
    def __init__(self, witness):
        super().__init__(str(witness))
        self.witness = witness


def _lattice_tables(leq):
    """Pairwise meet/join tables plus bottom and top.

    On a finite poset these exist for all pairs exactly when every subset
    has a meet and a join, so this decides lattice completeness.  Raises
    _LatticeProblem with a witness when the structure is missing.
    """
    n = len(leq)
    bottoms = [i for i in range(n) if all(leq[i][j] for j in range(n))]
    if len(bottoms) != 1:
        raise _LatticeProblem({"law": "bottom", "candidates": tuple(bottoms)})
    tops = [i for i in range(n) if all(leq[j][i] for j in range(n))]
    if len(tops) != 1:
        raise _LatticeProblem({"law": "top", "candidates": tuple(tops)})
    meet_t = [[0] * n for _ in range(n)]
    join_t = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            lower = [k for k in range(n) if leq[k][i] and leq[k][j]]
            glb = [k for k in lower if all(leq[x][k] for x in lower)]
            if len(glb) != 1:
                raise _LatticeProblem({"law": "meet", "pair": (i, j)})
            meet_t[i][j] = glb[0]
            upper = [k for k in range(n) if leq[i][k] and leq[j][k]]
            lub = [k for k in upper if all(leq[k][x] for x in upper)]
            if len(lub) != 1:
                raise _LatticeProblem({"law": "join", "pair": (i, j)})
            join_t[i][j] = lub[0]
    return tuple(map(tuple, meet_t)), tuple(map(tuple, join_t)), bottoms[0], tops[0]


class FiniteQuantale(ValueQuantale):
    """Quantale presented by element names, an order table, and a sum table.

    Construction requires the order to be a complete lattice (shape or
    lattice defects raise StructureError) but does not check the value
    quantale axioms; use `validate_value_quantale` for that.  Elements are
    indices into `names`.
    """

    is_finite = True

    def __init__(self, names, leq, add, label=None):
        names, leq_t, add_t = _normalise_tables(names, leq, add)
        po = _partial_order_witness(leq_t)
        if po is not None:
            raise StructureError(f"order table is not a partial order: {po}")
        try:
            meet_t, join_t, bottom, top = _lattice_tables(leq_t)
        except _LatticeProblem as exc:
            raise StructureError(f"order table is not a complete lattice: {exc.witness}")
        self.names = names
        self.label = label or "finite[" + ",".join(names) + "]"
        self._leq = leq_t
        self._add = add_t
        self._meet_t = meet_t
        self._join_t = join_t
        self._bottom = bottom
        self._top = top
        n = len(names)
        # rank in a fixed linear extension; used for deterministic tie-breaks
        self._rank = tuple(sum(leq_t[x][e] for x in range(n)) for e in range(n))
        # closed-form well-above: meet of everything not below a
        wa = []
        for a in range(n):
            outside = [s for s in range(n) if not leq_t[s][a]]
            m = reduce(lambda p, q: meet_t[p][q], outside, top)
            wa.append(tuple(not leq_t[m][b] for b in range(n)))
        self._wa = tuple(wa)
        self.positives = tuple(
            sorted((e for e in range(n) if self._wa[e][bottom]), key=self.sort_key)
        )
        self._hash = hash((names, leq_t, add_t))

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def bottom(self):
        return self._bottom

    @property
    def top(self):
        return self._top

    def elements(self):
        return range(len(self.names))

    def check(self, element):
        if isinstance(element, bool) or not isinstance(element, int):
            raise DomainMismatchError(f"not an element index: {element!r}")
        if not 0 <= element < len(self.names):
            raise DomainMismatchError(
                f"index {element} out of range for {self.label}"
            )
        return element

    def leq(self, a, b):
        return self._leq[self.check(a)][self.check(b)]

    def add(self, a, b):
        return self._add[self.check(a)][self.check(b)]

    def meet(self, elements):
        return reduce(
            lambda p, q: self._meet_t[p][q], (self.check(e) for e in elements), self._top
        )

    def join(self, elements):
        return reduce(
            lambda p, q: self._join_t[p][q], (self.check(e) for e in elements), self._bottom
        )

    def well_above(self, a, b):
        return self._wa[self.check(a)][self.check(b)]

    def subtract(self, a, b):
        a, b = self.check(a), self.check(b)
        cs = [c for c in range(len(self.names)) if self._leq[a][self._add[b][c]]]
        return self.meet(cs)

    def _nfold(self, e, n):
        acc = self._bottom
        for _ in range(n):
            acc = self._add[acc][e]
        return acc

    def nth_fraction(self, eps, n):
        """Largest positive delta (canonical tie-break) with n-fold sum <= eps."""
        eps = self.check(eps)
        if not isinstance(n, int) or n < 1:
            raise PreconditionError(f"n must be a positive integer, got {n!r}")
        if not self._wa[eps][self._bottom]:
            raise PreconditionError(f"{self.names[eps]} is not well above 0")
        for delta in sorted(self.positives, key=self.sort_key, reverse=True):
            if self._leq[self._nfold(delta, n)][eps]:
                return delta
        raise InvariantError(
            "no n-th fraction exists; the tables do not form a value quantale"
        )

    def interpolate(self, x, z):
        """First element in listed order strictly between x and z."""
        x, z = self.check(x), self.check(z)
        if not self._wa[z][x]:
            raise PreconditionError(
                f"{self.names[z]} is not well above {self.names[x]}"
            )
        for y in range(len(self.names)):
            if self._wa[y][x] and self._wa[z][y]:
                return y
        raise InvariantError(
            "no interpolant exists; the tables do not form a value quantale"
        )

    def sort_key(self, element):
        element = self.check(element)
        return (self._rank[element], element)

    def format(self, element) -> str:
        return self.names[self.check(element)]

    def parse(self, text):
        if isinstance(text, int) and not isinstance(text, bool):
            return self.check(text)
        if isinstance(text, str):
            try:
                return self.names.index(text)
            except ValueError:
                raise StructureError(
                    f"unknown element name {text!r} in {self.label}"
                ) from None
        raise StructureError(f"cannot parse element from {text!r}")

    def __eq__(self, other):
        return (
            isinstance(other, FiniteQuantale)
            and self.names == other.names
            and self._leq == other._leq
            and self._add == other._add
        )

    def __hash__(self):
        return self._hash


def capped_chain(length: int, label: str | None = None) -> FiniteQuantale:
    """Chain quantale 0 < 1 < ... < inf with addition truncated at the top."""
    if not isinstance(length, int) or length < 1:
        raise StructureError("chain length must be a positive integer")
    if length == 1:
        names = ["0"]
    else:
        names = [str(i) for i in range(length - 1)] + ["inf"]
    leq = [[i <= j for j in range(length)] for i in range(length)]
    add = [[min(i + j, length - 1) for j in range(length)] for i in range(length)]
    return FiniteQuantale(names, leq, add, label=label or f"chain{length}")


BUILTIN_QUANTALES = {
    "ext_rational": EXT_RATIONAL,
    "Q1": capped_chain(1, label="Q1"),
    "Q2": capped_chain(2, label="Q2"),
    "Q3": capped_chain(3, label="Q3"),
    "chain4": capped_chain(4, label="chain4"),
}


# ---------------------------------------------------------------------------
# morphisms


class QuantaleMorphism:
    """Monotone map preserving 0 and subadditive over sums."""

    source: ValueQuantale
    target: ValueQuantale

    def __call__(self, element):
        raise NotImplementedError


class IdentityMorphism(QuantaleMorphism):
    def __init__(self, quantale: ValueQuantale):
        self.source = quantale
        self.target = quantale

    def __call__(self, element):
        return self.source.check(element)

    def __repr__(self):
        return f"<IdentityMorphism on {self.source.label}>"


class TableMorphism(QuantaleMorphism):
    """Total mapping out of a finite quantale, given element by element."""

    def __init__(self, source: FiniteQuantale, target: ValueQuantale, table):
        if not isinstance(source, FiniteQuantale):
            raise StructureError("TableMorphism requires a finite source quantale")
        table = tuple(table)
        if len(table) != source.size:
            raise StructureError(
                f"partial mapping: expected {source.size} values, got {len(table)}"
            )
        self.source = source
        self.target = target
        self.table = tuple(target.check(v) for v in table)

    def __call__(self, element):
        return self.table[self.source.check(element)]

    def __repr__(self):
        return f"<TableMorphism {self.source.label} -> {self.target.label}>"


class StepMorphism(QuantaleMorphism):
    """Threshold step map out of the extended rationals.

    `thresholds` are strictly increasing positive finite rationals t1<...<tk
    splitting the source into cells {0}, (0,t1], ..., (t_{k-1},t_k],
    (t_k,inf]; `values` gives the image of each cell, so len(values) must be
    len(thresholds)+2.  This family covers every piecewise-constant change
    of base used here; arbitrary rational-source mappings stay out of scope.
    """

    def __init__(self, target: ValueQuantale, thresholds, values,
                 source: ExtendedRationalQuantale = EXT_RATIONAL):
        if not isinstance(source, ExtendedRationalQuantale):
            raise StructureError("StepMorphism requires the extended-rational source")
        self.source = source
        self.target = target
        ts = []
        for t in thresholds:
            t = source.check(t)
            if isinstance(t, _Infinity) or t <= 0:
                raise StructureError("thresholds must be positive finite rationals")
            ts.append(t)
        if any(a >= b for a, b in zip(ts, ts[1:])):
            raise StructureError("thresholds must be strictly increasing")
        values = tuple(values)
        if len(values) != len(ts) + 2:
            raise StructureError(
                f"need {len(ts) + 2} cell values for {len(ts)} thresholds, "
                f"got {len(values)}"
            )
        self.thresholds = tuple(ts)
        self.values = tuple(target.check(v) for v in values)

    def __call__(self, element):
        x = self.source.check(element)
        if not isinstance(x, _Infinity) and x == 0:
            return self.values[0]
        for i, t in enumerate(self.thresholds):
            if not isinstance(x, _Infinity) and x <= t:
                return self.values[i + 1]
        return self.values[-1]

    def cell_representatives(self):
        """Right endpoint of every cell; suprema are attained there."""
        return (self.source.bottom,) + self.thresholds + (INF,)

    def __repr__(self):
        return f"<StepMorphism -> {self.target.label} at {self.thresholds}>"


def validate_quantale_morphism(morphism: QuantaleMorphism, samples: int = 200,
                               seed: int = 7) -> ValidationReport:
    """Check monotonicity, zero preservation, and subadditivity.

    Finite sources are checked exhaustively.  Step morphisms are checked on
    the right endpoints of their threshold cells, where cell suprema are
    attained, so the subadditivity check is exact for this family; random
    rational samples are added on top.
    """
    failures = []
    src, tgt = morphism.source, morphism.target

    def record(check, witness):
        failures.append(CheckFailure(check, witness))

    def check_pair(a, b):
        fa, fb = morphism(a), morphism(b)
        if src.leq(a, b) and not tgt.leq(fa, fb):
            record("monotone", {"pair": (src.format(a), src.format(b))})
            return
        fs = morphism(src.add(a, b))
        bound = tgt.add(fa, fb)
        if not tgt.leq(fs, bound):
            record("subadditive", {"pair": (src.format(a), src.format(b))})

    if isinstance(morphism, IdentityMorphism):
        return ValidationReport("quantale-morphism", ())

    if isinstance(morphism, TableMorphism):
        if morphism(src.bottom) != tgt.bottom:
            record("maps-zero-to-zero", {"image": tgt.format(morphism(src.bottom))})
        for a in src.elements():
            for b in src.elements():
                check_pair(a, b)
        # keep the first witness per failed check
        seen = {}
        for f in failures:
            seen.setdefault(f.check, f)
        return ValidationReport("quantale-morphism", tuple(seen.values()))

    if isinstance(morphism, StepMorphism):
        if morphism(src.bottom) != tgt.bottom:
            record("maps-zero-to-zero", {"image": tgt.format(morphism(src.bottom))})
        reps = morphism.cell_representatives()
        for a in reps:
            for b in reps:
                check_pair(a, b)
        rng = random.Random(seed)
        finite = [t for t in morphism.thresholds] or [Fraction(1)]
        hi = max(finite) * 2 + 1
        pool = [Fraction(0), INF] + finite
        for _ in range(samples):
            draw = []
            for _ in range(2):
                if rng.random() < 0.2:
                    draw.append(pool[rng.randrange(len(pool))])
                else:
                    den = rng.randint(1, 6)
                    num = rng.randint(0, int(hi * den))
                    draw.append(Fraction(num, den))
            check_pair(draw[0], draw[1])
        seen = {}
        for f in failures:
            seen.setdefault(f.check, f)
        return ValidationReport("quantale-morphism", tuple(seen.values()))

    raise StructureError(f"unknown morphism kind: {morphism!r}")


# ---------------------------------------------------------------------------
# value quantale validation


AXIOM_UNIT = "x+0 = x"
AXIOM_APPROX = "x = ⋀{y ≻ x}"
AXIOM_DISTRIB = "x+⋀S = ⋀(x+S)"
AXIOM_POSITIVE_MEET = "a∧b ≻ 0"


def validate_value_quantale(names, leq, add, subset_limit: int = 12) -> ValidationReport:
    """Exhaustively check the value-quantale axioms on candidate tables.

    Malformed tables raise StructureError; mathematical defects (order not
    a complete lattice, addition laws, the four axioms) are reported as
    failures with one witness each.  Meet-distributivity is checked over
    every subset when the carrier has at most `subset_limit` elements and
    over the (equivalent) empty and binary cases beyond that.
    """
    names, leq_t, add_t = _normalise_tables(names, leq, add)
    n = len(names)
    failures = []

    po = _partial_order_witness(leq_t)
    if po is not None:
        w = {k: _fmt_witness(names, v) for k, v in po.items()}
        return ValidationReport(
            "value-quantale", (CheckFailure("partial-order", w),)
        )
    try:
        q = FiniteQuantale(names, leq_t, add_t)
    except StructureError:
        try:
            _lattice_tables(leq_t)
        except _LatticeProblem as exc:
            w = {k: _fmt_witness(names, v) for k, v in exc.witness.items()}
            return ValidationReport(
                "value-quantale", (CheckFailure("complete-lattice", w),)
            )
        raise

    def fmt(e):
        return names[e]

    def first_failure(check, witness):
        if all(f.check != check for f in failures):
            failures.append(CheckFailure(check, witness))

    for a in range(n):
        for b in range(n):
            if add_t[a][b] != add_t[b][a]:
                first_failure("addition-commutative", {"pair": (fmt(a), fmt(b))})
            for c in range(n):
                if add_t[add_t[a][b]][c] != add_t[a][add_t[b][c]]:
                    first_failure(
                        "addition-associative", {"triple": (fmt(a), fmt(b), fmt(c))}
                    )

    for x in range(n):
        if add_t[x][q.bottom] != x:
            first_failure(AXIOM_UNIT, {"x": fmt(x)})

    for x in range(n):
        for y in range(n):
            if leq_t[x][y]:
                for a in range(n):
                    if not leq_t[add_t[x][a]][add_t[y][a]]:
                        first_failure(
                            "addition-monotone",
                            {"x": fmt(x), "y": fmt(y), "a": fmt(a)},
                        )

    if n <= subset_limit:
        subsets = range(1 << n)
    else:
        subsets = [0] + [(1 << i) | (1 << j) for i in range(n) for j in range(i, n)]
    for x in range(n):
        for smask in subsets:
            members = [s for s in range(n) if smask >> s & 1]
            lhs = add_t[x][q.meet(members)]
            rhs = q.meet(add_t[x][s] for s in members)
            if lhs != rhs:
                first_failure(
                    AXIOM_DISTRIB,
                    {
                        "x": fmt(x),
                        "S": tuple(fmt(s) for s in members),
                        "lhs": fmt(lhs),
                        "rhs": fmt(rhs),
                    },
                )
                break

    for x in range(n):
        above = [y for y in range(n) if q.well_above(y, x)]
        if q.meet(above) != x:
            first_failure(
                AXIOM_APPROX, {"x": fmt(x), "meet": fmt(q.meet(above))}
            )

    for a in q.positives:
        for b in q.positives:
            if not q.well_above(q.meet([a, b]), q.bottom):
                first_failure(AXIOM_POSITIVE_MEET, {"a": fmt(a), "b": fmt(b)})

    return ValidationReport("value-quantale", tuple(failures))


def _fmt_witness(names, value):
    if isinstance(value, int) and 0 <= value < len(names):
        return names[value]
    if isinstance(value, tuple):
        return tuple(_fmt_witness(names, v) for v in value)
    return value


def definitional_well_above(quantale: FiniteQuantale, a, b) -> bool:
    """Subset-quantified well-above; exponential, used as an oracle.

    a is well above b when every subset S (including the empty one) whose
    meet is dominated by b contains a member below a.
    """
    a, b = quantale.check(a), quantale.check(b)
    n = quantale.size
    for smask in range(1 << n):
        members = [s for s in range(n) if smask >> s & 1]
        if quantale.leq(quantale.meet(members), b):
            if not any(quantale.leq(s, a) for s in members):
                return False
    return True
