"""Independent oracles used by the tests.

Everything here works from raw data (distance matrices, order tables,
plain fractions) without going through the library predicates under test,
so a test can compare a fast library answer against a first-principles
computation.
"""

from fractions import Fraction
from itertools import product

from qc import INF


def leq_ext(a, b) -> bool:
    if isinstance(b, type(INF)):
        return True
    if isinstance(a, type(INF)):
        return False
    return a <= b


def ball_raw(points, dmat, x, eps, forward=True) -> frozenset:
    """Ball computed straight from the matrix."""
    i = points.index(x)
    out = set()
    for j, p in enumerate(points):
        d = dmat[i][j] if forward else dmat[j][i]
        if leq_ext(d, eps):
            out.add(p)
    return frozenset(out)


def triangle_holds(dmat) -> bool:
    n = len(dmat)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = dmat[i][k]
                s = (
                    INF
                    if isinstance(dmat[i][j], type(INF)) or isinstance(dmat[j][k], type(INF))
                    else dmat[i][j] + dmat[j][k]
                )
                if not leq_ext(lhs, s):
                    return False
    return True


def finite_meet(leq, members, top) -> int:
    """Greatest lower bound by scanning the order table."""
    n = len(leq)
    lower = [k for k in range(n) if all(leq[k][m] for m in members)]
    glb = [k for k in lower if all(leq[x][k] for x in lower)]
    assert len(glb) == 1, f"no unique glb for {members}"
    return glb[0] if members else top


def subset_well_above(leq, add, a, b) -> bool:
    """Definitional well-above: quantify over all 2^n subsets."""
    n = len(leq)
    tops = [t for t in range(n) if all(leq[x][t] for x in range(n))]
    top = tops[0]
    for smask in range(1 << n):
        members = [s for s in range(n) if smask >> s & 1]
        m = finite_meet(leq, members, top) if members else top
        if leq[m][b]:
            if not any(leq[s][a] for s in members):
                return False
    return True


def all_maps(src_points, tgt_points):
    for values in product(tgt_points, repeat=len(src_points)):
        yield dict(zip(src_points, values))


def grid_subtract_oracle(a, b, max_den=24, cap=1000):
    """Least c on a rational grid with a <= b + c, refined near the answer."""
    best = None
    for den in range(1, max_den + 1):
        for num in range(0, cap * den + 1):
            c = Fraction(num, den)
            s = INF if isinstance(b, type(INF)) else b + c
            if leq_ext(a, s):
                if best is None or c < best:
                    best = c
                break
    return best
