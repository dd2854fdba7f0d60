"""The two-sided sequence of indecomposable totally positive integers.

Indecomposables on the positive side are the semiconvergents alpha_{i,r}
(odd i >= -1, 0 <= r <= u_{i+2}-1) read off in lexicographic (i, r) order;
index 0 is 1 and negative indices are Galois conjugates of positive ones.
The sequence is strictly increasing in real-embedding value and satisfies
the three-term relation  v_j * beta_j = beta_{j-1} + beta_{j+1}.
"""

from __future__ import annotations

import threading
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

from .qfield import (
    FieldCtx,
    InternalError,
    NotTotallyPositive,
    QuadInt,
    make_field,
)
from .cfrac import CFData, ConvergentTable, Units, convergents, expansion, units

_WALK_CAP = 1_000_000


@dataclass(frozen=True)
class Decomp:
    """The unique expression alpha = e*beta_j + f*beta_{j+1}, e >= 1, f >= 0."""

    j: int
    e: int
    f: int


class IndecSeq:
    """Indexed access to the indecomposable sequence of one field."""

    def __init__(self, ctx: FieldCtx, cf: CFData, table: ConvergentTable, un: Units):
        self.ctx = ctx
        self.cf = cf
        self.table = table
        self.units = un
        self._offsets = [0]  # _offsets[k] = first index of the block at i = 2k-1
        self._offsets_lock = threading.Lock()
        self._beta_cache: dict[int, QuadInt] = {}
        # One multiplication by eps_plus shifts the sequence index by s_prime:
        # the number of indecomposables carved out of one totally positive
        # unit period (one CF period when s is even, two when s is odd).
        steps = cf.s if cf.s % 2 == 0 else 2 * cf.s
        self.s_prime = sum(cf.u(2 * k + 1) for k in range(steps // 2))

    # -- index bookkeeping -------------------------------------------------

    def pair(self, j: int) -> tuple[int, int]:
        """(i, r) with beta_|j| = alpha_{i,r}; valid for any j (uses |j|)."""
        j = abs(j)
        off = self._offsets
        if off[-1] <= j:
            with self._offsets_lock:
                while off[-1] <= j:
                    k = len(off) - 1
                    off.append(off[-1] + self.cf.u(2 * k + 1))
        k = bisect_right(off, j) - 1
        return 2 * k - 1, j - off[k]

    def beta(self, j: int) -> QuadInt:
        """The j-th indecomposable; beta_0 = 1, beta_{-j} = conjugate(beta_j)."""
        cached = self._beta_cache.get(j)
        if cached is not None:
            return cached
        if j < 0:
            val = self.beta(-j).conjugate()
        else:
            i, r = self.pair(j)
            val = self.table.semiconvergent(i, r)
        self._beta_cache[j] = val
        return val

    def v(self, j: int) -> int:
        """Coefficient in the relation v_j*beta_j = beta_{j-1} + beta_{j+1}."""
        i, r = self.pair(j)
        return 2 if r >= 1 else self.cf.u(i + 1) + 2

    # -- order windows -----------------------------------------------------

    def max_j_real_leq(self, x: QuadInt) -> int:
        """Largest j with real(beta_j) <= real(x); x must have positive embedding."""
        if self.ctx.sign_embedding(x.a, x.b) <= 0:
            raise InternalError("index walk needs a positive real embedding")
        j = 0
        if self.beta(0).cmp_real(x) <= 0:
            while self.beta(j + 1).cmp_real(x) <= 0:
                j += 1
                if j > _WALK_CAP:
                    raise InternalError("runaway index walk (increasing side)")
            return j
        while self.beta(j).cmp_real(x) > 0:
            j -= 1
            if j < -_WALK_CAP:
                raise InternalError("runaway index walk (decreasing side)")
        return j

    def window(self, alpha: QuadInt) -> tuple[int, int]:
        """Index range [lo, hi] of all beta_j with beta_j <= alpha in both embeddings."""
        hi = self.max_j_real_leq(alpha)
        lo = -self.max_j_real_leq(alpha.conjugate())
        return lo, hi

    # -- core operations ----------------------------------------------------

    def canonical_decomp(self, alpha: QuadInt) -> Decomp:
        """The unique (j, e, f) with alpha = e*beta_j + f*beta_{j+1}, e>=1, f>=0.

        Any representation forces beta_j <= alpha in both embeddings, so j is
        confined to a finite window; for each candidate j the coefficients are
        the solution of an integer 2x2 system (beta_j, beta_{j+1} are
        Q-linearly independent).  Exactly one candidate may solve with e >= 1
        and f >= 0.
        """
        if not alpha.is_totally_positive():
            raise NotTotallyPositive(f"{alpha} is not totally positive")
        lo, hi = self.window(alpha)
        hits = []
        for j in range(lo - 1, hi + 2):  # one index of slack on each side
            g = self.beta(j)
            h = self.beta(j + 1)
            det = g.a * h.b - g.b * h.a
            if det == 0:
                raise InternalError("adjacent indecomposables are dependent")
            en = alpha.a * h.b - alpha.b * h.a
            fn = g.a * alpha.b - g.b * alpha.a
            if en % det == 0 and fn % det == 0:
                e, f = en // det, fn // det
                if e >= 1 and f >= 0:
                    hits.append(Decomp(j, e, f))
        if len(hits) != 1:
            raise InternalError(
                f"expected exactly one decomposition of {alpha}, found {hits}")
        return hits[0]

    def indecomposables_leq(self, alpha: QuadInt) -> list[tuple[int, QuadInt]]:
        """All (j, beta_j) with beta_j <= alpha in the partial order, ascending j."""
        if not alpha.is_totally_positive():
            raise NotTotallyPositive(f"{alpha} is not totally positive")
        lo, hi = self.window(alpha)
        out = []
        for j in range(lo - 1, hi + 2):
            b = self.beta(j)
            if alpha.succeq(b):
                out.append((j, b))
        return out

    def indec_window_leq(self, x1: QuadInt, x2: QuadInt) -> list[tuple[int, QuadInt]]:
        """All (j, beta_j) with real embedding <= real(x1) and conjugate
        embedding <= real(x2), ascending j.  Superset of indecomposables_leq
        for every alpha whose embeddings are bounded by those two values."""
        hi = self.max_j_real_leq(x1)
        lo = -self.max_j_real_leq(x2)
        return [(j, self.beta(j)) for j in range(lo, hi + 1)]

    def is_indecomposable(self, alpha: QuadInt) -> bool:
        d = self.canonical_decomp(alpha)
        return d.e == 1 and d.f == 0

    # -- unit action ---------------------------------------------------------

    def balanced(self, alpha: QuadInt) -> QuadInt:
        """A unit multiple of alpha whose two embeddings are within eps_plus^2.

        Multiplying by the totally positive unit changes neither partition
        counts nor decomposability, but keeps the lattice enumeration boxes
        close to square.
        """
        ep = self.units.eps_plus
        ep_inv = ep.conjugate()  # norm 1, so the conjugate is the inverse
        sq = ep * ep
        for _ in range(_WALK_CAP):
            c = alpha.conjugate()
            if alpha.cmp_real(c * sq) > 0:
                alpha = alpha * ep_inv
            elif c.cmp_real(alpha * sq) > 0:
                alpha = alpha * ep
            else:
                return alpha
        raise InternalError("balancing did not converge")


@lru_cache(maxsize=None)
def indec_seq(d: int) -> IndecSeq:
    ctx = make_field(d)
    cf = expansion(d)
    table = convergents(d)
    return IndecSeq(ctx, cf, table, units(cf, table))
