"""Exactly evaluable group models, word metrics, and distortion certificates.

Three families are modeled with injective canonical forms: free abelian
groups as integer tuples, the integer Heisenberg group as triples with its
polynomial product, and the solvable affine groups BS(1,n) as pairs
(exponent, translation part) acting by t -> n^k t + m.  Exact arithmetic
makes Cayley-ball breadth-first search a genuine metric oracle, and the
explicit certificate words (Horner words in BS(1,n), commutator words in
Heisenberg) give certified upper bounds far beyond any searchable ball.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError
from .trends import TrendFit, fit_trend

DEFAULT_BFS_STATES = 5_000_000
DEFAULT_RADIUS = 14


# -- models ----------------------------------------------------------------


class GroupModel:
    """Exact group arithmetic on hashable canonical elements."""

    name: str

    def identity(self):
        raise NotImplementedError

    def multiply(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def generators(self) -> dict:
        """Named standard generators, in a fixed order."""
        raise NotImplementedError

    def power(self, a, e: int):
        if e < 0:
            a, e = self.inverse(a), -e
        acc = self.identity()
        while e:
            if e & 1:
                acc = self.multiply(acc, a)
            a = self.multiply(a, a)
            e >>= 1
        return acc

    def descriptor(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, GroupModel) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class ZdModel(GroupModel):
    """Z^d with componentwise addition; generators e1..ed."""

    def __init__(self, dimension: int):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension
        self.name = f"Z^{dimension}"

    def identity(self):
        return (0,) * self.dimension

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a):
        return tuple(-x for x in a)

    def power(self, a, e):
        return tuple(x * e for x in a)

    def generators(self):
        basis = {}
        for i in range(self.dimension):
            e = [0] * self.dimension
            e[i] = 1
            basis[f"e{i + 1}"] = tuple(e)
        return basis

    def descriptor(self):
        return ("zd", self.dimension)


class HeisenbergModel(GroupModel):
    """Integer Heisenberg group on triples (x, y, z).

    (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y'); the generator s = (0,0,1)
    is central, u = (1,0,0) and t = (0,1,0) satisfy u t u^-1 t^-1 = s.
    """

    name = "Heisenberg"

    def identity(self):
        return (0, 0, 0)

    def multiply(self, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])

    def inverse(self, a):
        x, y, z = a
        return (-x, -y, -z + x * y)

    def generators(self):
        return {"u": (1, 0, 0), "t": (0, 1, 0), "s": (0, 0, 1)}

    def descriptor(self):
        return ("heisenberg",)


class BS1nModel(GroupModel):
    """BS(1,n) = <a, b | b a b^-1 = a^n> as affine maps t -> n^k t + m.

    Elements are pairs (k, m) with k an integer and m in Z[1/n], composed
    by (k1,m1)(k2,m2) = (k1+k2, n^k1 * m2 + m1).  The translation part is
    kept as a plain int whenever it is integral, which makes the long
    certificate evaluations pure integer arithmetic.
    """

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("BS(1,n) needs n >= 2")
        self.n = n
        self.name = f"BS(1,{n})"

    @staticmethod
    def _canonical(m):
        if isinstance(m, Fraction) and m.denominator == 1:
            return int(m)
        return m

    def identity(self):
        return (0, 0)

    def _scale(self, k: int, m):
        if k >= 0:
            return self._canonical(self.n**k * m)
        return self._canonical(Fraction(m, self.n ** (-k)))

    def multiply(self, a, b):
        k1, m1 = a
        k2, m2 = b
        return (k1 + k2, self._canonical(self._scale(k1, m2) + m1))

    def inverse(self, a):
        k, m = a
        return (-k, self._scale(-k, -m))

    def power(self, a, e):
        k, m = a
        if k == 0:
            # pure translations compose additively
            return (0, self._canonical(m * e))
        return super().power(a, e)

    def generators(self):
        return {"a": (0, 1), "b": (1, 0)}

    def descriptor(self):
        return ("bs1n", self.n)


# -- generating sets and words -----------------------------------------------


@dataclass(frozen=True)
class GeneratingSet:
    """Named group elements, closed under inversion for metric use.

    base pairs (name, element) list the declared generators; labeled()
    appends the formal inverses (suffix ^-1), deduplicated by value so an
    involution contributes a single move.  Word metrics require symmetric
    sets; the flag exists so asymmetric sets can be represented but they
    are rejected by the searches.
    """

    model: GroupModel
    base: tuple
    symmetric: bool = True

    def __post_init__(self):
        if not self.base:
            raise ValueError("generating set must be nonempty")
        names = [name for name, _ in self.base]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        ident = self.model.identity()
        for name, element in self.base:
            if element == ident:
                raise ValueError(f"generator {name} is the identity")

    @classmethod
    def standard(cls, model: GroupModel) -> "GeneratingSet":
        return cls(model, tuple(model.generators().items()))

    @classmethod
    def from_named(cls, model: GroupModel, named: dict) -> "GeneratingSet":
        return cls(model, tuple(named.items()))

    def binding(self) -> dict:
        return dict(self.base)

    def labeled(self):
        """(label, element) pairs including inverses, duplicates removed."""
        out = []
        seen = set()
        for name, element in self.base:
            if element not in seen:
                seen.add(element)
                out.append((name, element))
        if self.symmetric:
            for name, element in self.base:
                inv = self.model.inverse(element)
                if inv not in seen:
                    seen.add(inv)
                    out.append((f"{name}^-1", inv))
        return tuple(out)


_TOKEN_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class WordExpr:
    """A formal word in named generators: tokens (name, exponent).

    Length counts letters with multiplicity, so it is the word's metric
    cost, not its token count.
    """

    tokens: tuple

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self.tokens)

    @classmethod
    def parse(cls, text: str) -> "WordExpr":
        tokens = []
        for chunk in text.split():
            m = _TOKEN_RE.match(chunk)
            if not m:
                raise ValueError(f"malformed word token {chunk!r}")
            name, exp = m.group(1), m.group(2)
            tokens.append((name, 1 if exp is None else int(exp)))
        return cls(tuple(tokens))

    def evaluate(self, model: GroupModel, binding: dict):
        acc = model.identity()
        for name, exp in self.tokens:
            if name not in binding:
                raise ValueError(f"word uses unbound generator {name!r}")
            acc = model.multiply(acc, model.power(binding[name], exp))
        return acc

    def __str__(self):
        parts = []
        for name, exp in self.tokens:
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)


# -- Cayley-ball search ---------------------------------------------------------


def cayley_ball(
    model: GroupModel,
    gens: GeneratingSet,
    radius_max: int,
    state_budget: int = DEFAULT_BFS_STATES,
    targets=None,
) -> dict:
    """Exact distances to every element within radius_max, by level BFS.

    Returns {element: word length}.  With targets given, the search stops
    as soon as every target has a distance (the recorded distances are
    still exact).  Exceeding the state budget is an error naming the last
    completed radius; distances already assigned at that point were exact,
    but the partial dict is deliberately not returned.
    """
    if radius_max < 0:
        raise ValueError("radius_max must be nonnegative")
    if not gens.symmetric:
        raise ValueError("word metrics need a symmetric generating set")
    if gens.model != model:
        raise ValueError("generating set belongs to a different model")
    moves = [element for _, element in gens.labeled()]
    dist = {model.identity(): 0}
    wanted = set(targets) if targets is not None else None
    if wanted is not None and wanted <= dist.keys():
        return dist
    frontier = [model.identity()]
    for radius in range(1, radius_max + 1):
        nxt = []
        for g in frontier:
            for m in moves:
                h = model.multiply(g, m)
                if h not in dist:
                    if len(dist) >= state_budget:
                        raise BudgetExceededError(
                            "bfs states",
                            state_budget,
                            len(dist) + 1,
                            f"last completed radius {radius - 1}",
                        )
                    dist[h] = radius
                    nxt.append(h)
        if wanted is not None:
            wanted -= dist.keys()
            if not wanted:
                return dist
        if not nxt:
            return dist
        frontier = nxt
    return dist


def bfs_word_length(
    model: GroupModel,
    gens: GeneratingSet,
    g,
    radius_max: int,
    state_budget: int = DEFAULT_BFS_STATES,
) -> int | None:
    """Exact word length of g, or None when it exceeds radius_max."""
    ball = cayley_ball(model, gens, radius_max, state_budget, targets=(g,))
    return ball.get(g)


# -- ball growth -------------------------------------------------------------------


@dataclass(frozen=True)
class BallGrowth:
    """Ball sizes |B(r)| for r = 0..radius with a growth-shape verdict.

    fitted_degree is the slope of log|B(r)| against log r (with intercept)
    over the top half of the radii; superpolynomial reports whether a
    straight line in r explains log|B(r)| strictly better than one in
    log r on that window, which is the finite-data signature of
    exponential growth.
    """

    sizes: tuple
    fitted_degree: float
    superpolynomial: bool
    window_start: int


def _line_fit(xs, ys):
    """Least-squares slope/intercept and RMS residual."""
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        return 0.0, my, math.inf
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    intercept = my - slope * mx
    resid = math.sqrt(
        sum((y - slope * x - intercept) ** 2 for x, y in zip(xs, ys)) / n
    )
    return slope, intercept, resid


def ball_growth(
    model: GroupModel,
    gens: GeneratingSet,
    radius: int,
    state_budget: int = DEFAULT_BFS_STATES,
) -> BallGrowth:
    if radius < 3:
        raise ValueError("growth fitting needs radius >= 3")
    dist = cayley_ball(model, gens, radius, state_budget)
    sizes = [0] * (radius + 1)
    for d in dist.values():
        sizes[d] += 1
    for r in range(1, radius + 1):
        sizes[r] += sizes[r - 1]
    start = max(2, radius // 2)
    window = range(start, radius + 1)
    logs = [math.log(sizes[r]) for r in window]
    degree, _, poly_resid = _line_fit([math.log(r) for r in window], logs)
    _, _, exp_resid = _line_fit(list(window), logs)
    growing = sizes[radius] > sizes[start]
    return BallGrowth(
        tuple(sizes),
        degree,
        bool(growing and exp_resid < poly_resid),
        start,
    )


# -- distortion profiles --------------------------------------------------------------


@dataclass(frozen=True)
class ProfileEntry:
    """Best knowledge about one word length ℓ(g^n).

    kind "exact": value is the BFS distance.  kind "bound": value is a
    certified upper bound (certificate word or subadditive combination).
    kind "lower": nothing above the radius floor is known; value is None
    and lower carries radius_max + 1.
    """

    n: int
    value: int | None
    kind: str
    lower: int


@dataclass(frozen=True)
class DistortionProfile:
    entries: tuple
    trend: TrendFit | None
    trend_class: str
    radius_max: int

    def known_values(self):
        return tuple(e.value for e in self.entries if e.value is not None)


def _trend_class_label(trend: TrendFit | None) -> str:
    if trend is None:
        return "Inconclusive"
    if trend.kind == "linear":
        return "Linear"
    if trend.kind == "logarithmic":
        return "Logarithmic"
    if trend.kind == "polynomial":
        return f"Polynomial(1/{trend.root})"
    return "Inconclusive"


def distortion_profile(
    model: GroupModel,
    gens: GeneratingSet,
    g,
    max_power: int,
    radius_max: int = DEFAULT_RADIUS,
    state_budget: int = DEFAULT_BFS_STATES,
    certifier=None,
) -> DistortionProfile:
    """Word lengths of g, g^2, .., g^max_power with a trend verdict.

    BFS supplies exact values inside the radius; a certifier (n -> WordExpr
    over the generating set's names) supplies upper bounds everywhere and
    is validated against the model both for its target and, where BFS is
    exact, for dominance.  Upper bounds are then closed under the metric's
    subadditivity (the cheapest split g^n = g^k g^(n-k) is itself a
    certificate), which also extrapolates past the ball when n = 1 is
    known.  The trend is fitted on the closed upper sequence when it is
    complete; a certified answer about shape therefore never depends on
    where the ball search gave up.
    """
    if max_power < 1:
        raise ValueError("profile needs max_power >= 1")
    ident = model.identity()
    powers = {}
    acc = ident
    for n in range(1, max_power + 1):
        acc = model.multiply(acc, g)
        powers[n] = acc
    distinct = set(powers.values())
    if len(distinct) < max_power or ident in distinct:
        raise ValueError("element has finite order within the profiled powers")

    ball = cayley_ball(model, gens, radius_max, state_budget)
    binding = gens.binding()

    exact: dict[int, int] = {}
    upper: dict[int, int] = {}
    for n, element in powers.items():
        d = ball.get(element)
        if d is not None:
            exact[n] = d
            upper[n] = d
    if certifier is not None:
        for n, element in powers.items():
            word = certifier(n)
            value = word.evaluate(model, binding)
            if value != element:
                raise ValueError(f"certificate for power {n} evaluates to {value!r}")
            length = word.length
            if n in exact and length < exact[n]:
                raise ValueError(
                    f"certificate length {length} beats the exact metric {exact[n]} "
                    f"at power {n}: unsound"
                )
            if n not in exact:
                upper[n] = min(upper.get(n, length), length)

    # subadditive closure: combinations of known bounds are bounds
    hull: dict[int, int] = {}
    for n in range(1, max_power + 1):
        best = upper.get(n)
        for k in range(1, n // 2 + 1):
            if k in hull and (n - k) in hull:
                combined = hull[k] + hull[n - k]
                if best is None or combined < best:
                    best = combined
        if best is not None:
            if n in exact and best < exact[n]:
                raise ValueError(
                    f"upper-bound closure {best} beats the exact metric {exact[n]} "
                    f"at power {n}: unsound"
                )
            hull[n] = best

    entries = []
    floor = radius_max + 1
    for n in range(1, max_power + 1):
        if n in exact:
            entries.append(ProfileEntry(n, exact[n], "exact", exact[n]))
        elif n in hull:
            entries.append(ProfileEntry(n, hull[n], "bound", floor))
        else:
            entries.append(ProfileEntry(n, None, "lower", floor))

    for n in exact:
        for m in exact:
            if n + m in exact and exact[n + m] > exact[n] + exact[m]:
                raise ValueError(
                    f"metric not subadditive at {n}+{m}: BFS is broken"
                )

    values = [e.value for e in entries]
    if None not in values and len(values) >= 4:
        trend = fit_trend([float(v) for v in values])
    else:
        trend = None
    return DistortionProfile(tuple(entries), trend, _trend_class_label(trend), radius_max)


# -- certificates ----------------------------------------------------------------------


def bs_horner_certificate(m: int, n: int) -> WordExpr:
    """Word of length O(log m) evaluating to a^m in BS(1,n).

    Writes m = sum alpha_i n^i and emits b^k a^(alpha_k) b^-1 a^(alpha_(k-1))
    b^-1 ... b^-1 a^(alpha_0): each b^-1 multiplies the accumulated
    translation by n, so the digits are consumed from the top.  The length
    is at most k + n(k+1) + k for k = floor(log_n m).
    """
    if m < 1:
        raise ValueError("certificate needs m >= 1")
    if n < 2:
        raise ValueError("base must be >= 2")
    digits = []
    rest = m
    while rest:
        rest, digit = divmod(rest, n)
        digits.append(digit)
    k = len(digits) - 1
    tokens = []
    if k > 0:
        tokens.append(("b", k))
    for i in range(k, -1, -1):
        if digits[i]:
            tokens.append(("a", digits[i]))
        if i > 0:
            tokens.append(("b", -1))
    return WordExpr(tuple(tokens))


def bs_horner_length_bound(m: int, n: int) -> int:
    """The certificate length bound k + n(k+1) + k, k = floor(log_n m)."""
    k = 0
    rest = m
    while rest >= n:
        rest //= n
        k += 1
    return k + n * (k + 1) + k


def heisenberg_square_certificate(n: int) -> WordExpr:
    """The commutator word u^n t^n u^-n t^-n, of length 4n.

    Evaluates to s^(n^2): each of the n copies of u contributes n central
    steps when commuted past t^n.
    """
    if n < 0:
        raise ValueError("power must be nonnegative")
    if n == 0:
        return WordExpr(())
    return WordExpr((("u", n), ("t", n), ("u", -n), ("t", -n)))


def base_q_certificate(n: int) -> WordExpr:
    """Word of length O(sqrt(n)) evaluating to s^n in the Heisenberg group.

    With q the least integer exceeding sqrt(n) and n = a1*q + a0, the word
    is the product of commutators [u^a0, t] [u^q, t^a1], using that
    [u^x, t^y] = s^(x*y) exactly in a 2-step group.  Its length a0 and a1
    are both below q, so the total stays within 16(sqrt(n) + 1).
    """
    if n < 1:
        raise ValueError("certificate needs n >= 1")
    q = math.isqrt(n) + 1
    a1, a0 = divmod(n, q)
    tokens = []
    for x, y in ((a0, 1), (q, a1)):
        if x and y:
            tokens.extend((("u", x), ("t", y), ("u", -x), ("t", -y)))
    return WordExpr(tuple(tokens))


def commutator_power_check(model: HeisenbergModel, m1: int, m2: int) -> bool:
    """Does [u^m1, t^m2] equal s^(m1*m2) in the model?  (It must.)"""
    gens = model.generators()
    u_m = model.power(gens["u"], m1)
    t_m = model.power(gens["t"], m2)
    commutator = model.multiply(
        model.multiply(u_m, t_m),
        model.multiply(model.inverse(u_m), model.inverse(t_m)),
    )
    return commutator == model.power(gens["s"], m1 * m2)


# -- growth formulas ---------------------------------------------------------------------


def bass_guivarch_degree(ranks) -> int:
    """Polynomial growth degree sum of k * rank_k over the central series."""
    ranks = tuple(ranks)
    if not ranks:
        raise ValueError("need at least one rank")
    if any(r < 0 for r in ranks):
        raise ValueError("ranks must be nonnegative")
    return sum((k + 1) * r for k, r in enumerate(ranks))


def min_growth_degree(step: int) -> int:
    """Least growth degree of a torsion-free group of the given step."""
    if step < 2:
        raise ValueError("the bound applies to step >= 2")
    return step * (step + 1) // 2 + 1


def embedding_step_bound(complexity_exponent) -> int:
    """Least step d whose threshold (d+1)(d+2)/2 + 2 reaches the exponent."""
    if complexity_exponent <= 0:
        raise ValueError("exponent must be positive")
    d = 1
    while (d + 1) * (d + 2) // 2 + 2 < complexity_exponent:
        d += 1
    return d
