"""Adaptive Dormand-Prince 5(4) integrator with dense output.

Small, dependency-free, and direction-aware (t1 < t0 integrates backward),
which the inward self-similar integration needs.  The dense output uses the
standard quartic interpolant of the pair, so interpolated values carry the
same accuracy order as the step error control.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Sequence

__all__ = ["IntegrationResult", "integrate", "find_zeros"]

_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0)

_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
)

_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)

_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

# dense-output polynomial coefficients (theta, theta^2, theta^3, theta^4)
_P = (
    (1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432),
    (0.0, 0.0, 0.0, 0.0),
    (0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799),
    (0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072),
    (0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632),
    (0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844),
    (0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423),
)

_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_SAFETY = 0.9


@dataclass
class IntegrationResult:
    ts: list[float]
    ys: list[tuple[float, ...]]
    derivs: list[tuple[float, ...]]
    truncated: bool
    nfev: int
    _segments: list[tuple[float, float, tuple[float, ...], list[tuple[float, ...]]]]
    _index: tuple[bool, list[float]] | None = None

    @property
    def t_end(self) -> float:
        return self.ts[-1]

    @property
    def y_end(self) -> tuple[float, ...]:
        return self.ys[-1]

    def interpolate(self, t: float) -> tuple[float, ...]:
        """Dense-output evaluation anywhere inside the covered span."""
        if not self._segments:
            return self.ys[0]
        if self._index is None:
            ascending = self.ts[-1] >= self.ts[0]
            self._index = (ascending, [seg[0] if ascending else -seg[0] for seg in self._segments])
        ascending, keys = self._index
        idx = bisect_right(keys, t if ascending else -t) - 1
        idx = min(max(idx, 0), len(self._segments) - 1)
        t0, h, y0, q = self._segments[idx]
        theta = (t - t0) / h
        n = len(y0)
        out = []
        for i in range(n):
            acc = 0.0
            for j in (3, 2, 1, 0):
                acc = acc * theta + q[j][i]
            out.append(y0[i] + h * theta * acc)
        return tuple(out)


def _error_norm(err, y0, y1, rtol, atol) -> float:
    total = 0.0
    for e, a, b in zip(err, y0, y1):
        scale = atol + rtol * max(abs(a), abs(b))
        total += (e / scale) ** 2
    return math.sqrt(total / len(err))


def _initial_step(rhs, t0, y0, f0, direction, rtol, atol, span) -> float:
    scale = [atol + rtol * abs(v) for v in y0]
    d0 = math.sqrt(sum((v / s) ** 2 for v, s in zip(y0, scale)) / len(y0))
    d1 = math.sqrt(sum((v / s) ** 2 for v, s in zip(f0, scale)) / len(y0))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, span)
    y1 = tuple(y + h0 * direction * f for y, f in zip(y0, f0))
    f1 = rhs(t0 + h0 * direction, y1)
    d2 = math.sqrt(sum(((a - b) / s) ** 2 for a, b, s in zip(f1, f0, scale)) / len(y0)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, span)


def integrate(
    rhs: Callable[[float, tuple[float, ...]], tuple[float, ...]],
    t0: float,
    t1: float,
    y0: Sequence[float],
    rtol: float = 1e-10,
    atol: float = 1e-12,
    max_step: float = math.inf,
    max_steps: int = 5_000_000,
) -> IntegrationResult:
    """Integrate y' = rhs(t, y) from t0 to t1 (either direction).

    Stops early with `truncated=True` when the step size underflows or the
    step budget runs out; everything integrated up to that point is kept.
    """
    if t1 == t0:
        raise ValueError("empty integration span")
    direction = 1.0 if t1 > t0 else -1.0
    y = tuple(float(v) for v in y0)
    t = float(t0)
    f = tuple(rhs(t, y))
    nfev = 1
    h_abs = _initial_step(rhs, t, y, f, direction, rtol, atol, abs(t1 - t0))
    h_abs = min(h_abs, max_step)

    ts = [t]
    ys = [y]
    derivs = [f]
    segments: list[tuple[float, float, tuple[float, ...], list[tuple[float, ...]]]] = []
    truncated = False
    n = len(y)
    steps = 0

    while (t1 - t) * direction > 0:
        steps += 1
        if steps > max_steps:
            truncated = True
            break
        min_h = 1e-14 * max(1.0, abs(t))
        if h_abs < min_h:
            truncated = True
            break
        h_abs = min(h_abs, abs(t1 - t), max_step)
        h = h_abs * direction

        k = [f]
        for s in range(1, 6):
            ts_stage = t + _C[s] * h
            y_stage = tuple(
                y[i] + h * sum(_A[s][j] * k[j][i] for j in range(s)) for i in range(n)
            )
            k.append(tuple(rhs(ts_stage, y_stage)))
        y_new = tuple(y[i] + h * sum(_B[j] * k[j][i] for j in range(6)) for i in range(n))
        f_new = tuple(rhs(t + h, y_new))
        k.append(f_new)
        nfev += 6
        err = tuple(h * sum(_E[j] * k[j][i] for j in range(7)) for i in range(n))
        norm = _error_norm(err, y, y_new, rtol, atol)

        if norm <= 1.0:
            q = [
                tuple(sum(k[s][i] * _P[s][j] for s in range(7)) for i in range(n))
                for j in range(4)
            ]
            segments.append((t, h, y, q))
            t += h
            y = y_new
            f = f_new
            ts.append(t)
            ys.append(y)
            derivs.append(f)
            factor = _MAX_FACTOR if norm == 0.0 else min(_MAX_FACTOR, _SAFETY * norm**-0.2)
            h_abs *= max(_MIN_FACTOR, factor)
        else:
            h_abs *= max(_MIN_FACTOR, _SAFETY * norm**-0.2)

    return IntegrationResult(ts=ts, ys=ys, derivs=derivs, truncated=truncated, nfev=nfev, _segments=segments)


def find_zeros(result: IntegrationResult, component: int = 0, skip_initial: bool = False) -> list[float]:
    """Abscissae where the chosen component changes sign, refined on the dense output."""
    zeros: list[float] = []
    vals = [y[component] for y in result.ys]
    for i in range(len(vals) - 1):
        a, b = result.ts[i], result.ts[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            if not (skip_initial and i == 0):
                zeros.append(a)
            continue
        if fa * fb < 0.0:
            for _ in range(80):
                mid = 0.5 * (a + b)
                fm = result.interpolate(mid)[component]
                if fm == 0.0 or abs(b - a) < 1e-15 * max(1.0, abs(mid)):
                    a = b = mid
                    break
                if (fm > 0) == (fa > 0):
                    a, fa = mid, fm
                else:
                    b = mid
            zeros.append(0.5 * (a + b))
    if vals and vals[-1] == 0.0:
        zeros.append(result.ts[-1])
    return sorted(zeros)
