"""Periodic continued fractions for real quadratic fields.

Expands w (the basis generator) with exact (P, Q) state arithmetic, exposes
the purely periodic tails, the convergent/semiconvergent tables, and the
fundamental and smallest totally positive units.  Partial quotients are
indexed so that u_0 is the leading term of the purely periodic expansion of
floor(xi) + w, and the expansion of w itself is [ceil(u_0/2); u_1, u_2, ...]
with u_{k+s} = u_k.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

from .qfield import (
    FieldCtx,
    InternalError,
    BadIndex,
    QuadInt,
    floor_surd,
    make_field,
    sign_surd,
    xi,
)


@dataclass(frozen=True)
class CFState:
    """The quadratic irrational (P + sqrt(delta)) / Q in lowest (P, Q) state form."""

    P: int
    Q: int
    delta: int

    def floor(self) -> int:
        return floor_surd(self.P, 1, self.Q, self.delta)

    def step(self) -> tuple[int, "CFState"]:
        """One continued-fraction step: returns (partial quotient, next tail)."""
        u = self.floor()
        p2 = u * self.Q - self.P
        num = self.delta - p2 * p2
        if num % self.Q != 0:
            raise InternalError(f"state invariant broken: {self.Q} !| {num}")
        return u, CFState(p2, num // self.Q, self.delta)


class CFData:
    """Period data of the continued fraction of w (and of floor(xi) + w).

    period holds (u_1, ..., u_s); u_s always equals u_0.  tails[i-1] is the
    exact state of the i-th tail for 1 <= i <= s, and tails repeat with
    period s.
    """

    def __init__(self, ctx: FieldCtx, u0: int, period: tuple[int, ...],
                 tails: tuple[CFState, ...]):
        self.ctx = ctx
        self.u0 = u0
        self.period = period
        self.s = len(period)
        self.sigma_period = (u0,) + period[:-1]
        self.tails = tails

    def u(self, k: int) -> int:
        """Partial quotient u_k for any k >= 0, with periodic wraparound."""
        if k < 0:
            raise BadIndex(f"u index must be >= 0, got {k}")
        if k == 0:
            return self.u0
        return self.period[(k - 1) % self.s]

    def tail(self, i: int) -> CFState:
        """Exact state of the i-th continued-fraction tail, i >= 1."""
        if i < 1:
            raise BadIndex(f"tail index must be >= 1, got {i}")
        return self.tails[(i - 1) % self.s]

    def to_json(self) -> dict:
        return {
            "D": self.ctx.D,
            "u0": self.u0,
            "period": list(self.period),
            "s": self.s,
        }


def cf_expand(ctx: FieldCtx) -> CFData:
    """Expand w = (tr + sqrt(delta))/2 and detect the period by state repetition."""
    a0 = ctx.floor_omega
    first = CFState(2 * a0 - ctx.tr_omega,
                    (ctx.delta - (2 * a0 - ctx.tr_omega) ** 2) // 2,
                    ctx.delta)
    # Defensive cap: the period length is O(sqrt(delta) log delta), so blowing
    # through this many states means the state update is buggy.
    cap = 10 * math.isqrt(ctx.delta) * max(1, int(math.log(ctx.delta))) + 100
    quotients: list[int] = []
    tails: list[CFState] = [first]
    state = first
    for _ in range(cap):
        u, state = state.step()
        quotients.append(u)
        if state == first:
            break
        tails.append(state)
    else:
        raise InternalError(f"no period within {cap} steps for D={ctx.D}")

    u0 = 2 * ctx.floor_omega - ctx.tr_omega
    period = tuple(quotients)
    if period[-1] != u0:
        raise InternalError(f"period must close with u_0={u0}, got {period}")
    if u0 * u0 >= ctx.delta:
        raise InternalError(f"u_0^2 = {u0 * u0} must be < delta = {ctx.delta}")
    return CFData(ctx, u0, period, tuple(tails))


class ConvergentTable:
    """Lazily extended table of convergents p_i, q_i, alpha_i and |norm(alpha_i)|.

    Rows exist for i >= -1; indices are absolute (never reduced mod the
    period), so callers can ask for rows far past one period.  Extension is
    lock-protected so concurrent readers always see a consistent prefix.
    """

    def __init__(self, ctx: FieldCtx, cf: CFData):
        self.ctx = ctx
        self.cf = cf
        self._xi = xi(ctx)
        self._p = [1, ctx.floor_omega]
        self._q = [0, 1]
        self._alpha = [QuadInt(1, 0, ctx), QuadInt(ctx.floor_omega, 0, ctx) + self._xi]
        self._absnorm = [1, abs(self._alpha[1].norm())]
        self._lock = threading.Lock()
        self._check_row(-1)
        self._check_row(0)

    def _check_row(self, i: int) -> None:
        alpha = self._alpha[i + 1]
        nm = alpha.norm()
        if nm != (-1) ** (i + 1) * self._absnorm[i + 1]:
            raise InternalError(f"norm sign of alpha_{i} is off for D={self.ctx.D}")
        emb = self.ctx.sign_embedding(alpha.a, alpha.b)
        conj = self.ctx.sign_embedding(alpha.a, alpha.b, conj=True)
        if emb <= 0:
            raise InternalError(f"alpha_{i} has nonpositive real embedding")
        if (conj > 0) != (i % 2 == 1):
            raise InternalError(f"alpha_{i} total positivity violates parity of i")

    def _extend_to(self, i: int) -> None:
        with self._lock:
            while len(self._p) < i + 2:
                k = len(self._p) - 1  # next absolute index to fill
                u = self.cf.u(k)
                self._p.append(u * self._p[-1] + self._p[-2])
                self._q.append(u * self._q[-1] + self._q[-2])
                self._alpha.append(u * self._alpha[-1] + self._alpha[-2])
                self._absnorm.append(abs(self._alpha[-1].norm()))
                self._check_row(k)

    def row(self, i: int) -> tuple[int, int, QuadInt, int]:
        """(p_i, q_i, alpha_i, N_i) for i >= -1."""
        if i < -1:
            raise BadIndex(f"convergent index must be >= -1, got {i}")
        if len(self._p) < i + 2:
            self._extend_to(i)
        return self._p[i + 1], self._q[i + 1], self._alpha[i + 1], self._absnorm[i + 1]

    def alpha(self, i: int) -> QuadInt:
        return self.row(i)[2]

    def absnorm(self, i: int) -> int:
        return self.row(i)[3]

    def semiconvergent(self, i: int, r: int) -> QuadInt:
        """alpha_{i,r} = alpha_i + r*alpha_{i+1} for odd i >= -1, 0 <= r <= u_{i+2}."""
        if i < -1 or i % 2 == 0:
            raise BadIndex(f"semiconvergent index i must be odd and >= -1, got {i}")
        if not 0 <= r <= self.cf.u(i + 2):
            raise BadIndex(f"semiconvergent step r={r} out of range for i={i}")
        return self.alpha(i) + r * self.alpha(i + 1)


@dataclass(frozen=True)
class Units:
    eps: QuadInt
    eps_plus: QuadInt
    s_parity: str  # 'even' or 'odd'


def units(cf: CFData, table: ConvergentTable) -> Units:
    """Fundamental unit and smallest totally positive unit > 1."""
    s = cf.s
    eps = table.alpha(s - 1)
    eps_plus = eps if s % 2 == 0 else table.alpha(2 * s - 1)
    if eps.norm() != (-1) ** s:
        raise InternalError(f"norm(eps) != (-1)^s for D={cf.ctx.D}")
    if eps_plus.norm() != 1 or not eps_plus.is_totally_positive():
        raise InternalError(f"eps_plus is not a totally positive unit for D={cf.ctx.D}")
    return Units(eps, eps_plus, "even" if s % 2 == 0 else "odd")


def tail_is_reduced(cf: CFData, i: int) -> bool:
    """Check u_i < tail_i < u_i + 1 exactly (tails lie strictly between)."""
    st = cf.tail(i)
    u = cf.u(i)
    low = sign_surd(st.P - u * st.Q, 1, st.delta)  # sign of Q*(tail - u_i)
    high = sign_surd(st.P - (u + 1) * st.Q, 1, st.delta)
    return low > 0 and high < 0


def verify_tail_norm_identity(table: ConvergentTable, cf: CFData, i: int) -> bool:
    """Exact check that N_{i+1} equals sqrt(delta)/g - N_i/g^2 for the tail g at i+2.

    Clearing denominators, the identity is equivalent to the pair of integer
    equations  N_{i+1}*(P^2 + delta) - delta*Q + N_i*Q^2 = 0  and
    P*(2*N_{i+1} - Q) = 0 for the tail state (P, Q).  Also checks the derived
    bound N_i * u_{i+1} < sqrt(delta), compared as squares.
    """
    n_i = table.absnorm(i)
    n_next = table.absnorm(i + 1)
    st = cf.tail(i + 2)
    delta = cf.ctx.delta
    rational_part = n_next * (st.P * st.P + delta) - delta * st.Q + n_i * st.Q * st.Q
    surd_part = st.P * (2 * n_next - st.Q)
    bound = n_i * cf.u(i + 1)
    return rational_part == 0 and surd_part == 0 and bound * bound < delta


@lru_cache(maxsize=None)
def expansion(d: int) -> CFData:
    return cf_expand(make_field(d))


@lru_cache(maxsize=None)
def convergents(d: int) -> ConvergentTable:
    return ConvergentTable(make_field(d), expansion(d))
