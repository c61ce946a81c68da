"""Growth-trend classification for nonnegative integer-indexed data.

Given values v(1..N) measured exactly, decide which of a few model shapes
fits the tail: zero, linear, logarithmic, a polynomial n^(1/d) with
2 <= d <= 6, or none of these.  The fit is judged on the window
[ceil(sqrt(N)), N], the top half of the index range on a log scale; an
arithmetic top half keeps too many small indices and lets C*log(n) imitate
a straight line.  Fits are least squares through the origin with relative
root-mean-square residual thresholds, checked in a fixed order so the
verdict is deterministic:

  1. all-zero data -> "zero"
  2. linear within 3%  -> "linear"   (tight gate, so log never masks it)
  3. log vs the best n^(1/d), d in 2..6, each gated at 10%: the smaller
     residual wins, except that a near-tie (log within a factor 1.25 of
     the best root) resolves to "logarithmic".  On windows this size a
     root basis can chase a log curve to within a few percent, so a strict
     minimum would flip on noise; the near-tie rule pins the slower-growth
     model, which is the weaker and therefore safer claim.
  4. linear within 10% -> "linear"   (loose gate, after the shapes above)
  5. otherwise "inconclusive"

Alongside the fit, two honest multiplicative constants are reported for
the winning basis b(n): the least C with v(n) <= C*b(n) on the window
(tail) and the least C with v(n) <= C*b(n) for every n >= 2 (global).
These are certified pointwise bounds, not regression artifacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TIGHT_LINEAR_RESIDUAL = 0.03
LOOSE_RESIDUAL = 0.10
LOG_NEAR_TIE_FACTOR = 1.25
POLY_ROOT_RANGE = range(2, 7)


def _basis(kind: str, root: int | None):
    if kind == "linear":
        return lambda n: float(n)
    if kind == "logarithmic":
        return lambda n: math.log(n)
    if kind == "polynomial":
        return lambda n: n ** (1.0 / root)
    raise ValueError(f"no basis for kind {kind!r}")


def _relative_residual(values, window, basis):
    """Least-squares coefficient through the origin, then the residual of
    that fit relative to the data's own magnitude.  Returns (C, residual);
    residual is inf when the fit is degenerate or C is nonpositive."""
    pairs = [(basis(n), values[n - 1]) for n in window]
    bb = sum(b * b for b, _ in pairs)
    vv = sum(v * v for _, v in pairs)
    if bb == 0 or vv == 0:
        return 0.0, math.inf
    c = sum(b * v for b, v in pairs) / bb
    if c <= 0:
        return c, math.inf
    ss = sum((v - c * b) ** 2 for b, v in pairs)
    return c, math.sqrt(ss / vv)


def _pointwise_constant(values, indices, basis):
    best = 0.0
    for n in indices:
        b = basis(n)
        if b <= 0:
            if values[n - 1] > 0:
                return math.inf
            continue
        best = max(best, values[n - 1] / b)
    return best


@dataclass(frozen=True)
class TrendFit:
    """Classification verdict with its certified constants.

    kind: "zero", "linear", "logarithmic", "polynomial", "inconclusive".
    root: the d of n^(1/d) when kind is "polynomial", else None.
    coefficient: least-squares C of the winning fit (None when inconclusive).
    residual: relative RMS residual of that fit (None when inconclusive).
    constant_tail: least C with v(n) <= C*basis(n) on the fit window.
    constant_global: same bound enforced for every n >= 2 in the data.
    window_start: first index of the fit window.
    """

    kind: str
    root: int | None
    coefficient: float | None
    residual: float | None
    constant_tail: float | None
    constant_global: float | None
    window_start: int

    def describe(self) -> str:
        if self.kind == "zero":
            return "identically zero"
        if self.kind == "inconclusive":
            return "no model shape fits within tolerance"
        name = {
            "linear": "C*n",
            "logarithmic": "C*log(n)",
            "polynomial": f"C*n^(1/{self.root})",
        }[self.kind]
        return (
            f"{name} with C~{self.coefficient:.4g} "
            f"(residual {self.residual:.3f}, "
            f"certified C<= {self.constant_global:.4g} for all n>=2)"
        )


def fit_trend(values) -> TrendFit:
    """Classify the growth shape of v(1..N) given as a sequence.

    Needs at least four data points so the window holds more than one
    index.  Values must be nonnegative; exact integers are expected but
    floats are accepted.
    """
    values = list(values)
    n_total = len(values)
    if n_total < 4:
        raise ValueError("trend classification needs at least 4 values")
    if any(v < 0 for v in values):
        raise ValueError("trend data must be nonnegative")
    window = range(max(2, math.isqrt(n_total - 1) + 1), n_total + 1)
    everything = range(2, n_total + 1)

    if all(v == 0 for v in values):
        return TrendFit("zero", None, None, None, 0.0, 0.0, window.start)

    def built(kind, root, c, resid):
        basis = _basis(kind, root)
        return TrendFit(
            kind,
            root,
            c,
            resid,
            _pointwise_constant(values, window, basis),
            _pointwise_constant(values, everything, basis),
            window.start,
        )

    lin_c, lin_resid = _relative_residual(values, window, _basis("linear", None))
    if lin_resid < TIGHT_LINEAR_RESIDUAL:
        return built("linear", None, lin_c, lin_resid)

    log_c, log_resid = _relative_residual(values, window, _basis("logarithmic", None))
    log_ok = log_resid < LOOSE_RESIDUAL

    poly_best = None
    for d in POLY_ROOT_RANGE:
        c, resid = _relative_residual(values, window, _basis("polynomial", d))
        if resid < LOOSE_RESIDUAL and (poly_best is None or resid < poly_best[2]):
            poly_best = (d, c, resid)

    if log_ok and (
        poly_best is None or log_resid <= LOG_NEAR_TIE_FACTOR * poly_best[2]
    ):
        return built("logarithmic", None, log_c, log_resid)
    if poly_best is not None:
        d, c, resid = poly_best
        return built("polynomial", d, c, resid)

    if lin_resid < LOOSE_RESIDUAL:
        return built("linear", None, lin_c, lin_resid)

    return TrendFit("inconclusive", None, None, None, None, None, window.start)
