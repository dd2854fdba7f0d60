"""Partition counting over totally positive integers of a real quadratic field.

The oracles here are deliberately structure-blind: parts_leq enumerates the
support of an element by exact lattice scanning, and pk / pk_indec count
multisets by memoized recursive descent over that support in descending
real-embedding order.  Closed-form counts, characterizations, and generators
live alongside and are cross-checked against the oracles by the test suite.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Optional

from .qfield import (
    BadIndex,
    FieldCtx,
    InternalError,
    NotTotallyPositive,
    QuadInt,
    floor_surd,
    make_field,
)
from .cfrac import expansion
from .indec import IndecSeq, indec_seq

# -- integer partition numbers (exact screen used by the decision procedure) --

_PINT = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]


def partition_count_int(n: int) -> int:
    """The ordinary integer partition number p(n), by Euler's pentagonal recurrence."""
    if n < 0:
        return 0
    while len(_PINT) <= n:
        m = len(_PINT)
        total = 0
        k = 1
        while True:
            g1 = m - k * (3 * k - 1) // 2
            g2 = m - k * (3 * k + 1) // 2
            if g1 < 0 and g2 < 0:
                break
            term = (_PINT[g1] if g1 >= 0 else 0) + (_PINT[g2] if g2 >= 0 else 0)
            total += term if k % 2 == 1 else -term
            k += 1
        _PINT.append(total)
    return _PINT[n]


# -- count results -------------------------------------------------------------


@dataclass(frozen=True)
class CountResult:
    """Either an exact partition count or a saturated lower bound."""

    exact: bool
    value: int

    @staticmethod
    def exactly(v: int) -> "CountResult":
        return CountResult(True, v)

    @staticmethod
    def at_least(v: int) -> "CountResult":
        return CountResult(False, v)

    def __repr__(self) -> str:
        return f"Exact({self.value})" if self.exact else f"AtLeast({self.value})"


# -- support enumeration --------------------------------------------------------


def lattice_leq(ctx: FieldCtx, b1: tuple[int, int], b2: tuple[int, int]) -> list[tuple[int, int]]:
    """All coordinate pairs (x, y) of totally positive elements whose first
    embedding is <= (b1[0] + b1[1]*sqrt(delta))/2 and second embedding is
    <= (b2[0] + b2[1]*sqrt(delta))/2.  Exact; no particular output order.
    """
    t, delta = ctx.tr_omega, ctx.delta
    u1, v1 = b1
    u2, v2 = b2
    twod = 2 * delta
    y_min = floor_surd(-v2 * delta, -u2, twod, delta) + 1
    if u1 == 0:
        y_max = (v1 - 1) // 2  # rational bound v1/2, strict
    else:
        y_max = floor_surd(v1 * delta, u1, twod, delta)
    out = []
    for y in range(y_min, y_max + 1):
        ty = t * y
        lo = max(floor_surd(-ty, -y, 2, delta), floor_surd(-ty, y, 2, delta)) + 1
        hi = min(
            floor_surd(u1 - ty, v1 - y, 2, delta),
            floor_surd(u2 - ty, v2 + y, 2, delta),
        )
        out.extend((x, y) for x in range(lo, hi + 1))
    return out


def _desc_real(ctx: FieldCtx, coords: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Sort coordinate pairs descending by exact real-embedding value."""
    t, delta = ctx.tr_omega, ctx.delta

    def cmp(p, q):
        du = 2 * (p[0] - q[0]) + t * (p[1] - q[1])
        dv = p[1] - q[1]
        if dv == 0:
            return (du > 0) - (du < 0)
        if du == 0:
            return 1 if dv > 0 else -1
        if du > 0 and dv > 0:
            return 1
        if du < 0 and dv < 0:
            return -1
        big = du * du > dv * dv * delta
        return (1 if big else -1) if du > 0 else (-1 if big else 1)

    return sorted(coords, key=cmp_to_key(cmp), reverse=True)


def parts_leq(alpha: QuadInt) -> list[QuadInt]:
    """All totally positive gamma <= alpha, sorted descending by real embedding."""
    if not alpha.is_totally_positive():
        raise NotTotallyPositive(f"{alpha} is not totally positive")
    ctx = alpha.ctx
    u, v = alpha.embedding_pair()
    coords = _desc_real(ctx, lattice_leq(ctx, (u, v), (u, -v)))
    return [QuadInt(a, b, ctx) for a, b in coords]


# -- the counting core -----------------------------------------------------------


class PartitionCounter:
    """Counts multisets of a fixed descending part list summing to a target.

    Parts must be totally positive and sorted descending by real embedding.
    The same instance may be reused across many targets; the memo table is
    shared, which is sound because the count of (remainder, start index) is
    independent of the query that reached it.  With a cap, every stored and
    returned value saturates at cap+1.
    """

    def __init__(self, ctx: FieldCtx, parts: list[tuple[int, int]], cap: Optional[int]):
        self.ctx = ctx
        self.parts = parts
        self.cap = cap
        t = ctx.tr_omega
        self._us = [2 * a + t * b for a, b in parts]
        self._vs = [b for _, b in parts]
        self._memo: dict = {}
        self._ff: dict = {}

    def _first_fit(self, ua: int, va: int) -> int:
        """First index whose part has real embedding <= (ua + va*sqrt(delta))/2."""
        key = (ua, va)
        hit = self._ff.get(key)
        if hit is not None:
            return hit
        us, vs, delta = self._us, self._vs, self.ctx.delta
        lo, hi = 0, len(self.parts)
        while lo < hi:
            mid = (lo + hi) // 2
            du = us[mid] - ua
            dv = vs[mid] - va
            if dv == 0:
                leq = du <= 0
            elif du == 0:
                leq = dv < 0
            elif du > 0 and dv > 0:
                leq = False
            elif du < 0 and dv < 0:
                leq = True
            elif du > 0:  # dv < 0
                leq = du * du < dv * dv * delta
            else:  # du < 0 < dv
                leq = du * du > dv * dv * delta
            if leq:
                hi = mid
            else:
                lo = mid + 1
        self._ff[key] = lo
        return lo

    def count(self, alpha: QuadInt) -> int:
        """Number of multisets summing to alpha (saturated at cap+1 if capped)."""
        if alpha.is_zero():
            return 1
        if not alpha.is_totally_positive():
            raise NotTotallyPositive(f"{alpha} is not totally positive")
        # chain depth is at most the trace (every part has trace >= 1)
        need = min(alpha.trace() + 100, 1_000_000)
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)
        return self._ways(alpha.a, alpha.b, 0)

    def _ways(self, ra: int, rb: int, i: int) -> int:
        t, delta = self.ctx.tr_omega, self.ctx.delta
        i0 = self._first_fit(2 * ra + t * rb, rb)
        if i0 > i:
            i = i0
        key = (ra, rb, i)
        memo = self._memo
        val = memo.get(key)
        if val is not None:
            return val
        parts = self.parts
        cap = self.cap
        sat = None if cap is None else cap + 1
        total = 0
        for k in range(i, len(parts)):
            pa, pb = parts[k]
            da = ra - pa
            db = rb - pb
            if da == 0 and db == 0:
                total += 1
            else:
                u = 2 * da + t * db
                # remainder totally positive  <=>  trace > 0 and 4*norm > 0
                if u > 0 and u * u > db * db * delta:
                    total += self._ways(da, db, k)
            if sat is not None and total >= sat:
                total = sat
                break
        memo[key] = total
        return total


def _support_tuples(alpha: QuadInt) -> list[tuple[int, int]]:
    ctx = alpha.ctx
    u, v = alpha.embedding_pair()
    return _desc_real(ctx, lattice_leq(ctx, (u, v), (u, -v)))


def _result(count: int, cap: Optional[int]) -> CountResult:
    if cap is not None and count > cap:
        return CountResult.at_least(cap + 1)
    return CountResult.exactly(count)


def pk(alpha: QuadInt, cap: Optional[int] = None) -> CountResult:
    """Number of partitions of alpha into totally positive parts (p_K(0) = 1)."""
    if alpha.is_zero():
        return CountResult.exactly(1)
    if not alpha.is_totally_positive():
        raise NotTotallyPositive(f"{alpha} is not totally positive")
    counter = PartitionCounter(alpha.ctx, _support_tuples(alpha), cap)
    return _result(counter.count(alpha), cap)


def indec_support(alpha: QuadInt) -> list[tuple[int, int]]:
    """Indecomposables <= alpha as coordinate tuples, descending by real value."""
    seq = indec_seq(alpha.ctx.D)
    rows = seq.indecomposables_leq(alpha)  # ascending j = ascending real value
    return [(b.a, b.b) for _, b in reversed(rows)]


def pk_indec(alpha: QuadInt, cap: Optional[int] = None) -> CountResult:
    """Number of partitions of alpha with all parts indecomposable."""
    if alpha.is_zero():
        return CountResult.exactly(1)
    if not alpha.is_totally_positive():
        raise NotTotallyPositive(f"{alpha} is not totally positive")
    counter = PartitionCounter(alpha.ctx, indec_support(alpha), cap)
    return _result(counter.count(alpha), cap)


def list_partitions(alpha: QuadInt, indec_only: bool = False,
                    limit: Optional[int] = None) -> list[list[QuadInt]]:
    """Explicit partitions of alpha (parts descending); mainly for CLI display."""
    if alpha.is_zero():
        return [[]]
    if not alpha.is_totally_positive():
        raise NotTotallyPositive(f"{alpha} is not totally positive")
    ctx = alpha.ctx
    parts = indec_support(alpha) if indec_only else _support_tuples(alpha)
    t, delta = ctx.tr_omega, ctx.delta
    out: list[list[QuadInt]] = []

    def descend(ra: int, rb: int, i: int, acc: list):
        if limit is not None and len(out) >= limit:
            return
        for k in range(i, len(parts)):
            pa, pb = parts[k]
            da, db = ra - pa, rb - pb
            if da == 0 and db == 0:
                out.append([QuadInt(*p, ctx) for p in acc + [(pa, pb)]])
                if limit is not None and len(out) >= limit:
                    return
            else:
                u = 2 * da + t * db
                if u > 0 and u * u > db * db * delta:
                    descend(da, db, k, acc + [(pa, pb)])
        return

    descend(alpha.a, alpha.b, 0, [])
    return out


# -- closed-form counts for doubles and adjacent pairs ---------------------------


def closed_count_double_pair(seq: IndecSeq, i: int, r: int, kind: str,
                             restricted: bool) -> int:
    """Closed-form count for 2*alpha_{i,r} (kind='double') or
    alpha_{i,r} + alpha_{i,r+1} (kind='pair'); restricted counts only
    partitions into indecomposable parts."""
    if i < -1 or i % 2 == 0:
        raise BadIndex(f"i must be odd and >= -1, got {i}")
    u = seq.cf.u(i + 2)
    if not 0 <= r <= u - 1:
        raise BadIndex(f"r={r} out of range for u_{{i+2}}={u}")
    if kind == "double":
        return min(r + 1, u - r + 1) if restricted else min(r + 2, u - r + 2)
    if kind == "pair":
        return min(r + 1, u - r) if restricted else min(r + 2, u - r + 1)
    raise BadIndex(f"kind must be 'double' or 'pair', got {kind!r}")


def flat_run_radius(seq: IndecSeq, j: int, t: int) -> Optional[int]:
    """Largest k0 with v_k = 2 throughout j-k0..j+k0+t, or None if already v > 2.

    When this returns k0, the count of indecomposable-part partitions of
    beta_j + beta_{j+t} is k0 + 2; when it returns None that count is 1.
    """
    if t not in (0, 1):
        raise BadIndex(f"t must be 0 or 1, got {t}")
    if seq.v(j) > 2 or seq.v(j + t) > 2:
        return None
    k = 0
    while seq.v(j - k - 1) == 2 and seq.v(j + k + 1 + t) == 2:
        k += 1
        if k > 10_000_000:
            raise InternalError("flat run did not terminate")
    total = seq.beta(j) + seq.beta(j + t)
    for step in range(1, k + 2):
        if seq.beta(j - step) + seq.beta(j + step + t) != total:
            raise InternalError(f"flat-run chain identity broke at step {step}")
    return k


# -- characterizations by the canonical decomposition ----------------------------


def is_uniquely_decomposable(seq: IndecSeq, alpha: QuadInt) -> bool:
    """True iff alpha has exactly one partition into indecomposable parts."""
    d = seq.canonical_decomp(alpha)
    vj, vj1 = seq.v(d.j), seq.v(d.j + 1)
    return (1 <= d.e <= vj - 1 and 0 <= d.f <= vj1 - 1
            and (d.e, d.f) != (vj - 1, vj1 - 1))


def has_two_indec_partitions(seq: IndecSeq, alpha: QuadInt) -> bool:
    """True iff alpha has exactly two partitions into indecomposable parts."""
    d = seq.canonical_decomp(alpha)
    e, f = d.e, d.f
    vm1, vj, vj1, vp2 = (seq.v(d.j - 1), seq.v(d.j), seq.v(d.j + 1),
                         seq.v(d.j + 2))
    cond1 = (vj <= e <= 2 * vj - 1 and 0 <= f <= vj1 - 2
             and (e, f) != (2 * vj - 1, vj1 - 2)
             and (vm1, e) != (2, 2 * vj - 1)
             and (vm1, e, f) != (2, 2 * vj - 2, vj1 - 2))
    cond2 = (1 <= e <= vj - 2 and vj1 <= f <= 2 * vj1 - 1
             and (e, f) != (vj - 2, 2 * vj1 - 1)
             and (f, vp2) != (2 * vj1 - 1, 2)
             and (e, f, vp2) != (vj - 2, 2 * vj1 - 2, 2))
    cond3 = (e == vj - 1 and f == vj1 - 1
             and (vm1, vj, vj1, vp2) != (2, 2, 2, 2))
    return cond1 or cond2 or cond3


def closed_count_small(seq: IndecSeq, alpha: QuadInt) -> CountResult:
    """Full partition count for the seven small canonical shapes; otherwise
    a saturated lower bound of 7."""
    d = seq.canonical_decomp(alpha)
    e, f, j = d.e, d.f, d.j
    if (e, f) not in {(1, 0), (2, 0), (3, 0), (4, 0), (1, 1), (2, 1), (1, 2)}:
        return CountResult.at_least(7)
    if (e, f) == (1, 0):
        return CountResult.exactly(1)
    if (e, f) == (2, 0):
        i, r = seq.pair(abs(j))
        return CountResult.exactly(
            closed_count_double_pair(seq, i, r, "double", restricted=False))
    if (e, f) == (1, 1):
        jj = j if j >= 0 else -(j + 1)  # conjugation swaps the pair
        i, r = seq.pair(jj)
        return CountResult.exactly(
            closed_count_double_pair(seq, i, r, "pair", restricted=False))
    vj, vj1 = seq.v(j), seq.v(j + 1)
    if (e, f) == (3, 0):
        if vj >= 4:
            return CountResult.exactly(3)
        if vj == 3:
            return CountResult.exactly(4)
        if seq.v(j - 1) > 2 and seq.v(j + 1) > 2:
            return CountResult.exactly(6)
        return CountResult.at_least(8)
    if (e, f) == (4, 0):
        if vj >= 5:
            return CountResult.exactly(5)
        if vj == 4:
            return CountResult.exactly(6)
        if vj == 3:
            return CountResult.at_least(8)
        return CountResult.at_least(16)
    if (e, f) == (2, 1):
        if vj >= 3 and (vj, vj1) != (3, 2):
            return CountResult.exactly(4)
        if (vj, vj1) == (3, 2):
            return CountResult.exactly(5)
        if vj == 2 and vj1 >= 4:
            return CountResult.exactly(6)
        if vj == 2 and vj1 == 3:
            return CountResult.exactly(6 if seq.v(j - 1) > 2 else 7)
        return CountResult.at_least(8)  # vj = vj1 = 2
    # (e, f) == (1, 2): mirror image of (2, 1) under conjugation
    if vj1 >= 3 and (vj, vj1) != (2, 3):
        return CountResult.exactly(4)
    if (vj, vj1) == (2, 3):
        return CountResult.exactly(5)
    if vj >= 4 and vj1 == 2:
        return CountResult.exactly(6)
    if vj == 3 and vj1 == 2:
        return CountResult.exactly(6 if seq.v(j + 2) > 2 else 7)
    return CountResult.at_least(8)  # vj = vj1 = 2


# -- generators -------------------------------------------------------------------


def _emit(seq: IndecSeq, sink: dict, i: int, r: int, e: int, f: int) -> None:
    alpha = e * seq.table.semiconvergent(i, r) + f * seq.table.semiconvergent(i, r + 1)
    sink[(alpha.a, alpha.b)] = alpha
    conj = alpha.conjugate()
    sink[(conj.a, conj.b)] = conj


def gen_two_indec_partitions(seq: IndecSeq, i_max: int) -> list[QuadInt]:
    """Every element with exactly two indecomposable-part partitions whose
    defining semiconvergent index is at most i_max, plus conjugates."""
    if i_max < -1 or i_max % 2 == 0:
        raise BadIndex(f"i_max must be odd and >= -1, got {i_max}")
    u = seq.cf.u
    found: dict[tuple[int, int], QuadInt] = {}
    for i in range(-1, i_max + 1, 2):
        u1, u2, u3, u4 = u(i + 1), u(i + 2), u(i + 3), u(i + 4)
        u_abs = u(1) if i == -1 else u(i)
        # shape e*alpha_{i,0} + f*alpha_{i,1}, e past the unique range
        if u2 >= 2:
            for e in range(u1 + 2, 2 * u1 + 2):
                _emit(seq, found, i, 0, e, 0)
            if u_abs == 1:
                _emit(seq, found, i, 0, 2 * u1 + 2, 0)
        else:  # u2 == 1
            top = 2 * u1 + 2 if u_abs == 1 else 2 * u1 + 1
            for e in range(u1 + 2, top + 1):
                for f in range(0, u3 + 1):
                    _emit(seq, found, i, 0, e, f)
            e_edge = 2 * u1 + 3 if u_abs == 1 else 2 * u1 + 2
            for f in range(0, u3):
                _emit(seq, found, i, 0, e_edge, f)
        # shape with r = 1
        if u2 >= 3:
            _emit(seq, found, i, 1, 2, 0)
        elif u2 == 2:
            for f in range(0, u3 + 1):
                _emit(seq, found, i, 1, 2, f)
            for f in range(0, u3):
                _emit(seq, found, i, 1, 3, f)
        # shape with r = u2 - 1 (degenerate cases covered above)
        if u2 >= 3:
            for f in range(0, u3):
                _emit(seq, found, i, u2 - 1, 2, f)
        # shapes with f past the unique range
        if u2 >= 3:
            if u1 >= 2:
                for e in range(1, u1):
                    _emit(seq, found, i, 0, e, 2)
        elif u2 == 2:
            if u1 >= 2:
                for e in range(1, u1):
                    _emit(seq, found, i, 0, e, 2)
                    _emit(seq, found, i, 0, e, 3)
            _emit(seq, found, i, 0, u1, 2)
        else:  # u2 == 1
            if u4 >= 2:
                if u1 >= 2:
                    for e in range(1, u1):
                        for f in range(u3 + 2, 2 * u3 + 3):
                            _emit(seq, found, i, 0, e, f)
                for f in range(u3 + 2, 2 * u3 + 2):
                    _emit(seq, found, i, 0, u1, f)
            else:  # u4 == 1
                if u1 >= 2:
                    for e in range(1, u1):
                        for f in range(u3 + 2, 2 * u3 + 4):
                            _emit(seq, found, i, 0, e, f)
                for f in range(u3 + 2, 2 * u3 + 3):
                    _emit(seq, found, i, 0, u1, f)
        # boundary shape e = v_j - 1, f = v_{j+1} - 1
        if u2 >= 2:
            _emit(seq, found, i, 0, u1 + 1, 1)
        else:
            _emit(seq, found, i, 0, u1 + 1, u3 + 1)
        if u2 >= 3:
            _emit(seq, found, i, 1, 1, 1)
        elif u2 == 2:
            _emit(seq, found, i, 1, 1, u3 + 1)
        if u2 >= 4:
            _emit(seq, found, i, u2 - 2, 1, 1)
        if u2 >= 3:
            _emit(seq, found, i, u2 - 1, 1, u3 + 1)
    return _sorted_quadints(seq.ctx, found)


def gen_six_partitions(seq: IndecSeq, i_max: int) -> list[QuadInt]:
    """Every element with exactly six partitions whose defining semiconvergent
    index is at most i_max, plus conjugates."""
    if i_max < -1 or i_max % 2 == 0:
        raise BadIndex(f"i_max must be odd and >= -1, got {i_max}")
    u = seq.cf.u
    found: dict[tuple[int, int], QuadInt] = {}
    for i in range(-1, i_max + 1, 2):
        u1, u2, u3 = u(i + 1), u(i + 2), u(i + 3)
        if u2 >= 8:
            _emit(seq, found, i, 4, 2, 0)
        if u2 >= 9:
            _emit(seq, found, i, u2 - 4, 2, 0)
            _emit(seq, found, i, 4, 1, 1)
        if u2 >= 10:
            _emit(seq, found, i, u2 - 5, 1, 1)
        if u2 == 2:
            _emit(seq, found, i, 1, 3, 0)
        if u1 == 2:
            _emit(seq, found, i, 0, 4, 0)
        if (u2 >= 2 and u3 >= 2) or (u2 == 2 and u3 == 1):
            _emit(seq, found, i, u2 - 1, 2, 1)
        if (u1 >= 2 and u2 >= 2) or (u1 == 1 and u2 == 2):
            _emit(seq, found, i, 0, 1, 2)
    return _sorted_quadints(seq.ctx, found)


def _sorted_quadints(ctx: FieldCtx, found: dict) -> list[QuadInt]:
    coords = _desc_real(ctx, found.keys())
    return [found[c] for c in reversed(coords)]


# -- existence of six partitions and the explicit 6-or-9 element -----------------


def exists_six_partitions(d: int) -> bool:
    """Whether the field of discriminant parameter d has an element with
    exactly six partitions, read off the continued-fraction period."""
    cf = expansion(d)
    s = cf.s
    if any(cf.u(i) >= 8 for i in range(1, 2 * s + 1, 2)):
        return True
    if any(cf.u(k) == 2 for k in range(s)):
        return True
    return any(cf.u(k) >= 2 and cf.u(k + 1) >= 2 for k in range(s))


def six_or_nine_witness(d: int) -> tuple[Optional[QuadInt], Optional[int]]:
    """The element (ceil(2*xi)+2) + 2*w and its predicted count: 6 when the
    fractional part of w is below one half (u_1 >= 2), 9 otherwise.
    Returns (None, None) for d = 5, where the construction does not apply.
    """
    if d == 5:
        return None, None
    ctx = make_field(d)
    if d % 4 == 1:
        ceil_two_xi = math.isqrt(d)  # 2*xi = sqrt(d) - 1
    else:
        ceil_two_xi = math.isqrt(4 * d) + 1  # 2*xi = sqrt(4d), irrational
    alpha = QuadInt(ceil_two_xi + 2, 2, ctx)
    predicted = 6 if expansion(d).u(1) >= 2 else 9
    return alpha, predicted
