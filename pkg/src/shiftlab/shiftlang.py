"""Finite presentations of one-dimensional subshifts and exact language queries.

A presentation is a finite description of a closed, shift-invariant set of
bi-infinite sequences: the full shift over an alphabet, a shift of finite
type given by forbidden words, the shift of a primitive substitution, or a
single periodic orbit.  Every presentation answers the same questions
exactly: which words of length n occur in some bi-infinite point, how many
there are, which of them extend in more than one way, and how fast the
count grows.  "Legal" always means occurring in a bi-infinite point, which
is strictly stronger than merely avoiding the forbidden patterns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of single-character symbols.

    The declared order is total and fixed; every enumeration in this
    package sorts by it, which is what makes outputs reproducible.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) < 1:
            raise ValueError("alphabet needs at least one symbol")
        for s in self.symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise ValueError(f"symbols must be single characters, got {s!r}")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be pairwise distinct")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    @classmethod
    def of(cls, symbols) -> "Alphabet":
        return cls(tuple(symbols))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, sym: str) -> int:
        try:
            return self._index[sym]
        except KeyError:
            raise ValueError(
                f"symbol {sym!r} not in alphabet {''.join(self.symbols)!r}"
            ) from None

    def word_key(self, word: str) -> tuple[int, ...]:
        """Sort key realizing the alphabet order on words."""
        idx = self._index
        return tuple(idx[c] for c in word)

    def contains_word(self, word: str) -> bool:
        return all(c in self._index for c in word)


class ShiftPresentation:
    """Common interface of all presentations.

    Instances are immutable after construction.  Word enumerations are
    cached per length; caches only ever gain entries equal to what a fresh
    computation would produce, so sharing between threads is harmless.
    """

    alphabet: Alphabet
    believed_minimal: bool = False

    def __init__(self):
        self._word_cache: dict[int, tuple[str, ...]] = {}
        self._set_cache: dict[int, frozenset[str]] = {}

    # -- subclass hooks --------------------------------------------------

    def _enumerate(self, n: int):
        raise NotImplementedError

    def descriptor(self) -> tuple:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def count_words(self, n: int) -> int:
        """|L_n|, using a closed form or path count where one is cheaper
        than enumeration."""
        return len(self.words_of_length(n))

    # -- shared API --------------------------------------------------------

    def words_of_length(self, n: int) -> tuple[str, ...]:
        """All legal words of length n, sorted in alphabet order."""
        if n < 0:
            raise ValueError("word length must be nonnegative")
        if n == 0:
            return ("",)
        cached = self._word_cache.get(n)
        if cached is None:
            cached = tuple(sorted(set(self._enumerate(n)), key=self.alphabet.word_key))
            self._word_cache[n] = cached
        return cached

    def word_set(self, n: int) -> frozenset[str]:
        cached = self._set_cache.get(n)
        if cached is None:
            cached = frozenset(self.words_of_length(n))
            self._set_cache[n] = cached
        return cached

    def is_legal(self, word: str) -> bool:
        return word in self.word_set(len(word))

    def __eq__(self, other):
        return (
            isinstance(other, ShiftPresentation) and self.descriptor() == other.descriptor()
        )

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()}>"


class FullShift(ShiftPresentation):
    """Every sequence over the alphabet."""

    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet

    def _enumerate(self, n):
        return ("".join(p) for p in product(self.alphabet.symbols, repeat=n))

    def count_words(self, n):
        return self.alphabet.size ** n

    def is_legal(self, word):
        return self.alphabet.contains_word(word)

    def descriptor(self):
        return ("full", self.alphabet.symbols)

    def describe(self):
        return f"full shift on {{{','.join(self.alphabet.symbols)}}}"


class SftForbidden(ShiftPresentation):
    """Shift of finite type: sequences avoiding a finite set of forbidden words.

    A finite word is legal when it occurs in some bi-infinite sequence that
    avoids the forbidden factors everywhere, so avoidance alone is not
    enough.  The constructor builds the de Bruijn-style graph whose vertices
    are the avoidance-clean (m-1)-blocks (m the longest forbidden length)
    and whose edges are the clean m-blocks, then trims it to its
    bi-essential part: vertices with no predecessor or no successor are
    deleted until none remain.  Surviving vertices are exactly the legal
    (m-1)-words, and longer legal words are exactly the path labels of the
    trimmed graph; shorter ones are their factors.  A presentation whose
    trimmed graph is empty admits no bi-infinite point and is rejected.
    """

    def __init__(self, alphabet: Alphabet, forbidden):
        super().__init__()
        self.alphabet = alphabet
        fset = []
        seen = set()
        for f in forbidden:
            if not isinstance(f, str) or len(f) == 0:
                raise ValueError("forbidden words must be nonempty strings")
            if not alphabet.contains_word(f):
                raise ValueError(f"forbidden word {f!r} uses symbols outside the alphabet")
            if f not in seen:
                seen.add(f)
                fset.append(f)
        self.forbidden = tuple(sorted(fset, key=lambda w: (len(w), alphabet.word_key(w))))
        self._build()

    def _build(self):
        if not self.forbidden:
            self._mode = "full"
            self._letters = self.alphabet.symbols
            return
        m = max(len(f) for f in self.forbidden)
        if m == 1:
            banned = set(self.forbidden)
            letters = tuple(s for s in self.alphabet.symbols if s not in banned)
            if not letters:
                raise ValueError("every symbol is forbidden: the presentation is empty")
            self._mode = "letters"
            self._letters = letters
            return
        self._mode = "graph"
        self._block = m - 1
        clean = lambda w: not any(f in w for f in self.forbidden)
        vertices = {
            "".join(p)
            for p in product(self.alphabet.symbols, repeat=m - 1)
            if clean("".join(p))
        }
        # trim to the bi-essential subgraph
        while True:
            has_out = set()
            has_in = set()
            for v in vertices:
                for a in self.alphabet.symbols:
                    w = v + a
                    if w[1:] in vertices and clean(w):
                        has_out.add(v)
                        has_in.add(w[1:])
            kept = vertices & has_out & has_in
            if kept == vertices:
                break
            vertices = kept
        if not vertices:
            raise ValueError(
                "forbidden set leaves no bi-infinite sequence: the presentation is empty"
            )
        self._vertices = tuple(sorted(vertices, key=self.alphabet.word_key))
        self._succ = {
            v: tuple(
                a
                for a in self.alphabet.symbols
                if (v + a)[1:] in vertices and clean(v + a)
            )
            for v in self._vertices
        }

    def _enumerate(self, n):
        if self._mode in ("full", "letters"):
            return ("".join(p) for p in product(self._letters, repeat=n))
        b = self._block
        if n <= b:
            return {v[i : i + n] for v in self._vertices for i in range(b - n + 1)}
        words = list(self._vertices)
        for _ in range(n - b):
            words = [w + a for w in words for a in self._succ[w[-b:]]]
        return words

    def count_words(self, n):
        if self._mode in ("full", "letters"):
            return len(self._letters) ** n
        b = self._block
        if n <= b:
            return len(self.words_of_length(n))
        # path count: one matrix-vector pass per extra letter
        counts = {v: 1 for v in self._vertices}
        for _ in range(n - b):
            nxt = dict.fromkeys(self._vertices, 0)
            for v, c in counts.items():
                for a in self._succ[v]:
                    nxt[(v + a)[1:]] += c
            counts = nxt
        return sum(counts.values())

    def is_legal(self, word):
        if not self.alphabet.contains_word(word):
            return False
        if self._mode in ("full", "letters"):
            allowed = set(self._letters)
            return all(c in allowed for c in word)
        b = self._block
        if len(word) <= b:
            return any(word in v for v in self._vertices)
        succ = self._succ
        for i in range(len(word) - b):
            v = word[i : i + b]
            if v not in succ or word[i + b] not in succ[v]:
                return False
        return True

    def descriptor(self):
        return ("sft", self.alphabet.symbols, self.forbidden)

    def describe(self):
        shown = ",".join(self.forbidden) if self.forbidden else "-"
        return f"SFT on {{{','.join(self.alphabet.symbols)}}} forbidding {{{shown}}}"


class SubstitutionShift(ShiftPresentation):
    """Shift generated by a primitive substitution rule.

    Primitivity (some power of the incidence matrix is entrywise positive,
    with exponent at most |alphabet|^2) is validated at construction.  It
    guarantees every symbol occurs, that the orbit closure is minimal, and
    that the legal words are exactly the factors of the rule iterates.

    Length-n words are extracted in two certified stages.  First the legal
    two-letter blocks are computed as the least fixed point of the block
    propagation map T -> base ∪ {2-factors of rule(b)+rule(c) : bc in T};
    the map is deterministic and monotone on a finite lattice, so a single
    repeat certifies the fixed point.  Then each legal 2-block is inflated
    k times, k chosen so every inflated letter image has length >= n.  A
    length-n factor of a concatenation of blocks of length >= n touches at
    most two consecutive blocks, so collecting the n-factors of the
    inflated 2-blocks is exact, not just a lower approximation.
    """

    believed_minimal = True

    def __init__(self, alphabet: Alphabet, rules: dict):
        super().__init__()
        self.alphabet = alphabet
        if set(rules) != set(alphabet.symbols):
            raise ValueError("substitution must define exactly one image per symbol")
        for a, img in rules.items():
            if not isinstance(img, str) or len(img) == 0:
                raise ValueError(f"image of {a!r} must be a nonempty word")
            if not alphabet.contains_word(img):
                raise ValueError(f"image of {a!r} uses symbols outside the alphabet")
        self.rules = dict(rules)
        self._check_primitive()
        self._two_blocks = self._block_closure()

    def _check_primitive(self):
        syms = self.alphabet.symbols
        k = len(syms)
        m = [[self.rules[b].count(a) for b in syms] for a in syms]
        p = m
        for exponent in range(1, k * k + 1):
            if all(all(x > 0 for x in row) for row in p):
                self.primitivity_exponent = exponent
                return
            p = [
                [sum(p[i][l] * m[l][j] for l in range(k)) for j in range(k)]
                for i in range(k)
            ]
        raise ValueError("substitution is not primitive (no positive matrix power)")

    def _block_closure(self):
        two = lambda w: {w[i : i + 2] for i in range(len(w) - 1)}
        base = set()
        for a in self.alphabet.symbols:
            base |= two(self.rules[a])
        blocks = frozenset(base)
        while True:
            grown = set(base)
            for bc in blocks:
                grown |= two(self.rules[bc[0]] + self.rules[bc[1]])
            grown = frozenset(grown)
            if grown == blocks:
                return blocks
            blocks = grown

    def apply_rule(self, word: str) -> str:
        return "".join(self.rules[c] for c in word)

    def _enumerate(self, n):
        images = {a: self.rules[a] for a in self.alphabet.symbols}
        while min(len(w) for w in images.values()) < n:
            images = {a: self.apply_rule(w) for a, w in images.items()}
        found = set()
        for bc in self._two_blocks:
            w = images[bc[0]] + images[bc[1]]
            found |= {w[i : i + n] for i in range(len(w) - n + 1)}
        return found

    def descriptor(self):
        return (
            "substitution",
            self.alphabet.symbols,
            tuple(sorted(self.rules.items())),
        )

    def describe(self):
        body = ", ".join(f"{a}->{w}" for a, w in sorted(self.rules.items()))
        return f"substitution {body}"


class PeriodicOrbit(ShiftPresentation):
    """The finite orbit of one periodic sequence, presented by a seed word.

    The seed is normalized: a proper power collapses to its primitive root,
    and the root is rotated to its least cyclic rotation, so equal orbits
    get equal presentations.
    """

    believed_minimal = True

    def __init__(self, seed: str, alphabet: Alphabet | None = None):
        super().__init__()
        if not isinstance(seed, str) or len(seed) == 0:
            raise ValueError("seed must be a nonempty word")
        if alphabet is None:
            alphabet = Alphabet.of(sorted(set(seed)))
        if not alphabet.contains_word(seed):
            raise ValueError("seed uses symbols outside the alphabet")
        self.alphabet = alphabet
        r = (seed + seed).index(seed, 1)
        root = seed[:r] if r < len(seed) else seed
        rotations = [root[i:] + root[:i] for i in range(len(root))]
        self.seed = min(rotations, key=alphabet.word_key)
        self.period = len(self.seed)

    def _enumerate(self, n):
        copies = (self.period - 1 + n + self.period - 1) // self.period + 1
        s = self.seed * copies
        return {s[i : i + n] for i in range(self.period)}

    def count_words(self, n):
        return len(self.words_of_length(n))

    def is_legal(self, word):
        if not self.alphabet.contains_word(word):
            return False
        copies = len(word) // self.period + 2
        return word in self.seed * copies

    def descriptor(self):
        return ("periodic", self.alphabet.symbols, self.seed)

    def describe(self):
        return f"periodic orbit of {self.seed}"


# -- language measurements ----------------------------------------------------


def words_of_length(shift: ShiftPresentation, n: int) -> tuple[str, ...]:
    return shift.words_of_length(n)


def complexity(shift: ShiftPresentation, n: int) -> int:
    """Number of legal words of length n (1 at n = 0, the empty word)."""
    return len(shift.words_of_length(n))


def special_words(shift: ShiftPresentation, n: int, side: str = "right") -> tuple[str, ...]:
    """Length-n words with at least two legal one-letter extensions on `side`."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    seen: dict[str, set[str]] = {}
    for w in shift.words_of_length(n + 1):
        core, ext = (w[:-1], w[-1]) if side == "right" else (w[1:], w[0])
        seen.setdefault(core, set()).add(ext)
    out = [w for w, exts in seen.items() if len(exts) >= 2]
    return tuple(sorted(out, key=shift.alphabet.word_key))


@dataclass(frozen=True)
class ComplexityProfile:
    """Word counts P(1..N) and per-length entropy estimates log(P(n))/n.

    Counts of a genuine presentation are nondecreasing and submultiplicative,
    and log(P(n))/n then converges to its infimum; the minimum recorded
    estimate is therefore an upper estimate of the growth rate.  Both facts
    are validated here so a corrupted profile fails loudly at construction.
    All logarithms are natural.
    """

    values: tuple[int, ...]
    entropy_estimates: tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("profile needs at least one length")
        for i, p in enumerate(self.values):
            if p < 1:
                raise ValueError(f"P({i + 1}) = {p} < 1")
            if i and p < self.values[i - 1]:
                raise ValueError(f"P({i + 1}) < P({i}): counts must be nondecreasing")
        n = len(self.values)
        for i in range(1, n + 1):
            for j in range(1, n - i + 1):
                if self.values[i + j - 1] > self.values[i - 1] * self.values[j - 1]:
                    raise ValueError(f"P({i + j}) > P({i})P({j}): not submultiplicative")

    @property
    def entropy_upper_estimate(self) -> float:
        return min(self.entropy_estimates)


def entropy_profile(shift: ShiftPresentation, max_length: int) -> ComplexityProfile:
    if max_length < 1:
        raise ValueError("profile needs max_length >= 1")
    values = tuple(complexity(shift, n) for n in range(1, max_length + 1))
    estimates = tuple(math.log(p) / n for n, p in enumerate(values, start=1))
    return ComplexityProfile(values, estimates)


@dataclass(frozen=True)
class MorseHedlundVerdict:
    """Outcome of the low-complexity periodicity test.

    A witness n with P(n) <= n certifies eventual periodicity; its absence
    up to the limit certifies nothing.
    """

    witness: int | None
    limit: int

    @property
    def certifies_periodic(self) -> bool:
        return self.witness is not None

    def __str__(self):
        if self.witness is not None:
            return f"PeriodicWitness({self.witness})"
        return f"NoWitnessUpTo({self.limit})"


def morse_hedlund_test(shift: ShiftPresentation, max_length: int) -> MorseHedlundVerdict:
    """Find the least n <= max_length with P(n) <= n, if any."""
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    for n in range(1, max_length + 1):
        if complexity(shift, n) <= n:
            return MorseHedlundVerdict(n, max_length)
    return MorseHedlundVerdict(None, max_length)
