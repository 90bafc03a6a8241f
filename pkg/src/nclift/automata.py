"""Weighted finite automata over a free letter alphabet.

States are 0..q-1 with one start and one accept state (they may
coincide).  Each transition carries a weight that is either a scalar
residue or a single term c*x_i over a second, external variable
alphabet.  The coefficient an automaton assigns to a word
y_{a_1}..y_{a_k} is the (start, accept) entry of the ordered product of
its per-letter transition matrices, a polynomial in the x variables;
the empty word gets 1 exactly when start == accept.

The constructions in this module are block decoders: automata whose
series sends each fixed-length block of y letters to the x variable
whose index is the base-m value of the block, multiplying blocks in
order.  They invert the block encoders in the lifting module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetError, FormatError
from .matrices import SquareMatrix
from .polynomials import (Alphabet, Letters, NCPolynomial, Word, add_maps,
                          mul_map_term)
from .scalars import DEFAULT_MODULUS, require_prime_modulus

DEFAULT_MAX_STATES = 50_000
DEFAULT_MAX_TRANSITIONS = 2_000_000


def word_to_index(letters: Sequence[int], base: int) -> int:
    """Value of a word as base-`base` digits, most significant first."""
    if base < 1:
        raise ValueError(f"base must be positive, got {base}")
    value = 0
    for a in letters:
        if not 0 <= a < base:
            raise ValueError(f"letter {a} outside alphabet of size {base}")
        value = value * base + a
    return value


def index_to_word(index: int, base: int, length: int) -> Letters:
    """Base-`base` digits of index, most significant first, zero padded."""
    if base < 1:
        raise ValueError(f"base must be positive, got {base}")
    if not 0 <= index < base ** length:
        raise ValueError(f"index {index} needs more than {length} digits "
                         f"in base {base}")
    digits = []
    for _ in range(length):
        index, r = divmod(index, base)
        digits.append(r)
    return tuple(reversed(digits))


@dataclass(frozen=True)
class Weight:
    """Either the scalar `coeff` (var None) or the term coeff * x_var."""

    coeff: int
    var: int | None = None

    @property
    def is_scalar(self) -> bool:
        return self.var is None


@dataclass(frozen=True)
class Transition:
    source: int
    letter: int
    target: int
    weight: Weight


@dataclass(frozen=True)
class WeightedAutomaton:
    y_alphabet: Alphabet
    x_alphabet: Alphabet
    modulus: int
    num_states: int
    start: int
    accept: int
    transitions: tuple[Transition, ...]

    def __post_init__(self) -> None:
        require_prime_modulus(self.modulus)
        if self.num_states < 1:
            raise ValueError("an automaton needs at least one state")
        for label, state in (("start", self.start), ("accept", self.accept)):
            if not 0 <= state < self.num_states:
                raise ValueError(f"{label} state {state} out of range")
        merged: dict[tuple[int, int, int], Weight] = {}
        for t in self.transitions:
            if not 0 <= t.source < self.num_states:
                raise ValueError(f"transition source {t.source} out of range")
            if not 0 <= t.target < self.num_states:
                raise ValueError(f"transition target {t.target} out of range")
            if not 0 <= t.letter < self.y_alphabet.size:
                raise ValueError(f"transition letter y{t.letter} outside "
                                 f"alphabet of size {self.y_alphabet.size}")
            w = t.weight
            if w.var is not None and not 0 <= w.var < self.x_alphabet.size:
                raise ValueError(f"weight variable x{w.var} outside alphabet "
                                 f"of size {self.x_alphabet.size}")
            key = (t.source, t.letter, t.target)
            prev = merged.get(key)
            if prev is None:
                merged[key] = Weight(w.coeff % self.modulus, w.var)
            elif prev.var == w.var:
                merged[key] = Weight((prev.coeff + w.coeff) % self.modulus,
                                     w.var)
            else:
                raise ValueError(f"transitions {key} mix scalar and term "
                                 f"weights, or terms in different variables")
        canon = tuple(Transition(s, a, t, w)
                      for (s, a, t), w in sorted(merged.items())
                      if w.coeff != 0)
        object.__setattr__(self, "transitions", canon)
        steps: dict[int, list[tuple[int, int, int, int | None]]] = {}
        for t in canon:
            steps.setdefault(t.letter, []).append(
                (t.source, t.target, t.weight.coeff, t.weight.var))
        object.__setattr__(self, "_steps",
                           {a: tuple(v) for a, v in steps.items()})

    def steps(self, letter: int) -> tuple[tuple[int, int, int, int | None],
                                          ...]:
        """All (source, target, coeff, var) moves on one letter."""
        return self._steps.get(letter, ())

    @property
    def transition_count(self) -> int:
        return len(self.transitions)

    def _weight_poly(self, w: Weight) -> NCPolynomial:
        key: Letters = () if w.var is None else (w.var,)
        return NCPolynomial(self.x_alphabet, self.modulus, {key: w.coeff},
                            _trusted=True)

    def transition_matrix(self, letter: int) -> SquareMatrix:
        """q x q matrix of x-polynomial weights for one letter."""
        zero = NCPolynomial.zero(self.x_alphabet, self.modulus)
        rows = [[zero] * self.num_states for _ in range(self.num_states)]
        for src, tgt, coeff, var in self.steps(letter):
            rows[src][tgt] = rows[src][tgt] + self._weight_poly(
                Weight(coeff, var))
        return SquareMatrix(rows)

    def transition_matrices(self) -> dict[int, SquareMatrix]:
        return {a: self.transition_matrix(a)
                for a in range(self.y_alphabet.size)}

    def _advance(self, vec: dict[int, dict], letter: int) -> dict[int, dict]:
        out: dict[int, dict] = {}
        for src, tgt, coeff, var in self.steps(letter):
            cur = vec.get(src)
            if not cur:
                continue
            contrib = mul_map_term(cur, coeff, var, self.modulus)
            prev = out.get(tgt)
            out[tgt] = (add_maps(prev, contrib, self.modulus)
                        if prev else contrib)
        return {s: m for s, m in out.items() if m}

    def coeff_of_word(self, word: Word | Sequence[int]) -> NCPolynomial:
        """The x-polynomial this automaton assigns to one y-word."""
        letters = word.letters if isinstance(word, Word) else tuple(word)
        vec: dict[int, dict] = {self.start: {(): 1}}
        for a in letters:
            if not 0 <= a < self.y_alphabet.size:
                raise ValueError(f"letter y{a} outside alphabet of size "
                                 f"{self.y_alphabet.size}")
            vec = self._advance(vec, a)
            if not vec:
                break
        terms = vec.get(self.accept, {})
        return NCPolynomial(self.x_alphabet, self.modulus, dict(terms),
                            _trusted=True)


def series_truncate(automaton: WeightedAutomaton, max_length: int, *,
                    max_words: int = 100_000) -> dict[Word, NCPolynomial]:
    """All nonzero series coefficients on y-words up to a length.

    Enumerates every word of length <= max_length, sharing prefix work,
    and returns {word: coefficient} for the nonzero ones.  Refuses up
    front if the word count would exceed max_words.
    """
    m = automaton.y_alphabet.size
    total = sum(m ** j for j in range(max_length + 1))
    if total > max_words:
        raise BudgetError(f"{total} words of length <= {max_length} over "
                          f"{m} letters exceed the budget of {max_words}")
    out: dict[Word, NCPolynomial] = {}

    def visit(letters: Letters, vec: dict[int, dict]) -> None:
        terms = vec.get(automaton.accept)
        if terms:
            out[Word(automaton.y_alphabet, letters)] = NCPolynomial(
                automaton.x_alphabet, automaton.modulus, dict(terms),
                _trusted=True)
        if len(letters) == max_length:
            return
        for a in range(m):
            nxt = automaton._advance(vec, a)
            if nxt:
                visit(letters + (a,), nxt)

    visit((), {automaton.start: {(): 1}})
    return out


# ---------------------------------------------------------------------------
# Block decoders.

def build_decoder(m: int, *, modulus: int = DEFAULT_MODULUS,
                  y_name: str = "Y", x_name: str = "X") -> WeightedAutomaton:
    """The three-letter block decoder on an m-letter alphabet.

    Its coefficient on y_{a_1} y_{b_1} y_{c_1} ... y_{a_k} y_{b_k} y_{c_k}
    is the monomial x_{i_1} ... x_{i_k} with i_t = m^2 a_t + m b_t + c_t,
    the empty word gets 1, and every word whose length is not a multiple
    of three gets 0.  So composed with the matching 1-to-3 encoder it is
    the identity on polynomials in m^3 variables.

    Layout: state 0 is both start and accept (merging them is what makes
    the empty-word coefficient 1, preserving constant terms); states
    1+a remember the first letter of the current block; states 1+m+c
    insist the block ends with y_c.  The middle transition from 1+a to
    1+m+c reading y_b carries the weight x_{m^2 a + m b + c}, so there
    are m + m^3 + m transitions in total.
    """
    if m < 1:
        raise ValueError(f"alphabet size must be positive, got {m}")
    y = Alphabet(y_name, m)
    x = Alphabet(x_name, m ** 3)
    one = Weight(1)
    trans: list[Transition] = []
    for a in range(m):
        trans.append(Transition(0, a, 1 + a, one))
    for a in range(m):
        for b in range(m):
            for c in range(m):
                trans.append(Transition(1 + a, b, 1 + m + c,
                                        Weight(1, m * m * a + m * b + c)))
    for c in range(m):
        trans.append(Transition(1 + m + c, c, 0, one))
    return WeightedAutomaton(y, x, modulus, 2 * m + 1, 0, 0, tuple(trans))


def one_shot_nominal_states(n: int, d: int, *, merged: bool = True) -> int:
    """The 2 n^((3^d - 1)/2) + 2 state estimate for a one-shot decoder.

    This is what doubling the decoder recurrence would suggest; the
    correct automaton is larger for d >= 2 (see build_one_shot_decoder),
    and one_shot_state_count gives its true size.  With merged start and
    accept states the estimate drops by one.
    """
    half = (3 ** d - 1) // 2
    return 2 * n ** half + (1 if merged else 2)


def one_shot_state_count(n: int, d: int, *, merged: bool = True) -> int:
    """Exact state count of build_one_shot_decoder(n, d)."""
    half = (3 ** d - 1) // 2
    side = sum(n ** j for j in range(1, half + 1))
    return 1 + 2 * side + (0 if merged else 1)


def build_one_shot_decoder(n: int, d: int, *,
                           modulus: int = DEFAULT_MODULUS,
                           y_name: str = "Y", x_name: str = "X",
                           max_states: int = DEFAULT_MAX_STATES,
                           max_transitions: int = DEFAULT_MAX_TRANSITIONS,
                           ) -> WeightedAutomaton:
    """A single automaton undoing d rounds of 1-to-3 encoding at once.

    Blocks now have length 3^d over n letters, and block y_{a_1}..y_{a_B}
    maps to the variable whose index has base-n digits a_1..a_B, so the
    x alphabet has n^(3^d) variables.  For d = 1 this is exactly
    build_decoder(n), states and weights included.

    Shape: a full prefix tree on the first L = (3^d - 1)/2 letters of a
    block, one weighted middle transition, and a suffix tree checking
    the last L letters, with start and accept merged into state 0.  No
    automaton for this series can do better than 1 + 2 sum_{j=1..L} n^j
    states: distinct prefixes of the same length are pairwise separated
    by their completions (each forces a different variable), and
    likewise for suffixes, so the two-layer 2 n^L + 2 estimate of
    one_shot_nominal_states is short for d >= 2.

    State ids: 0, then prefix states by length then base-n value, then
    suffix states in the same order.
    """
    if n < 1:
        raise ValueError(f"alphabet size must be positive, got {n}")
    if d < 1:
        raise ValueError(f"depth must be positive, got {d}")
    half = (3 ** d - 1) // 2
    layer = [n ** j for j in range(half + 1)]
    side = sum(layer[1:])
    num_states = 1 + 2 * side
    num_trans = n ** (2 * half + 1) + 2 * side
    if num_states > max_states:
        raise BudgetError(f"one-shot decoder needs {num_states} states, "
                          f"budget is {max_states}")
    if num_trans > max_transitions:
        raise BudgetError(f"one-shot decoder needs {num_trans} transitions, "
                          f"budget is {max_transitions}")

    # offset[k] = states of shorter words before the length-k layer
    offset = [0] * (half + 1)
    for k in range(2, half + 1):
        offset[k] = offset[k - 1] + layer[k - 1]

    def pre_id(length: int, value: int) -> int:
        return 1 + offset[length] + value

    def suf_id(length: int, value: int) -> int:
        return 1 + side + offset[length] + value

    y = Alphabet(y_name, n)
    x = Alphabet(x_name, n ** (3 ** d))
    one = Weight(1)
    trans: list[Transition] = []
    for k in range(1, half + 1):
        for value in range(layer[k]):
            src = 0 if k == 1 else pre_id(k - 1, value // n)
            trans.append(Transition(src, value % n, pre_id(k, value), one))
    for pre in range(layer[half]):
        for b in range(n):
            left = (pre * n + b) * layer[half]
            for suf in range(layer[half]):
                trans.append(Transition(pre_id(half, pre), b,
                                        suf_id(half, suf),
                                        Weight(1, left + suf)))
    for k in range(1, half + 1):
        for value in range(layer[k]):
            first, rest = divmod(value, layer[k - 1])
            tgt = 0 if k == 1 else suf_id(k - 1, rest)
            trans.append(Transition(suf_id(k, value), first, tgt, one))
    return WeightedAutomaton(y, x, modulus, num_states, 0, 0, tuple(trans))


# ---------------------------------------------------------------------------
# Text format:
#
#   automaton over Y letters 2 states 5 start 0 accept 0 xvars 8 modulus 7
#   trans 0 y0 1 scalar 1
#   trans 1 y1 3 term 1 x2
#
# Transitions are kept sorted by (source, letter, target); the x
# alphabet keeps no name on disk and parses back as "X".

def format_automaton(a: WeightedAutomaton) -> str:
    lines = [f"automaton over {a.y_alphabet.name} "
             f"letters {a.y_alphabet.size} states {a.num_states} "
             f"start {a.start} accept {a.accept} "
             f"xvars {a.x_alphabet.size} modulus {a.modulus}"]
    for t in a.transitions:
        w = t.weight
        tail = (f"scalar {w.coeff}" if w.var is None
                else f"term {w.coeff} x{w.var}")
        lines.append(f"trans {t.source} y{t.letter} {t.target} {tail}")
    return "\n".join(lines) + "\n"


def _letter_token(tok: str, prefix: str, size: int, lineno: int) -> int:
    if not tok.startswith(prefix) or not tok[len(prefix):].isdigit():
        raise FormatError(f"line {lineno}: expected {prefix}<index>, "
                          f"got {tok!r}")
    i = int(tok[len(prefix):])
    if i >= size:
        raise FormatError(f"line {lineno}: {tok} outside alphabet of "
                          f"size {size}")
    return i


def parse_automaton(text: str, *, x_name: str = "X") -> WeightedAutomaton:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty automaton file")
    toks = lines[0].split()
    keys = ("automaton", "over", None, "letters", None, "states", None,
            "start", None, "accept", None, "xvars", None, "modulus", None)
    if len(toks) != len(keys) or any(
            k is not None and toks[i] != k for i, k in enumerate(keys)):
        raise FormatError(f"bad automaton header: {lines[0]!r}")
    try:
        y = Alphabet(toks[2], int(toks[4]))
        x = Alphabet(x_name, int(toks[12]))
        num_states = int(toks[6])
        start, accept = int(toks[8]), int(toks[10])
        modulus = require_prime_modulus(int(toks[14]))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc

    trans: list[Transition] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] != "trans" or len(toks) not in (6, 7):
            raise FormatError(f"line {lineno}: expected a trans line")
        try:
            source, target = int(toks[1]), int(toks[3])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad state id") from exc
        letter = _letter_token(toks[2], "y", y.size, lineno)
        try:
            coeff = int(toks[5]) % modulus
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad coefficient "
                              f"{toks[5]!r}") from exc
        if toks[4] == "scalar" and len(toks) == 6:
            weight = Weight(coeff)
        elif toks[4] == "term" and len(toks) == 7:
            weight = Weight(coeff, _letter_token(toks[6], "x", x.size,
                                                 lineno))
        else:
            raise FormatError(f"line {lineno}: bad weight {toks[4]!r}")
        trans.append(Transition(source, letter, target, weight))
    try:
        return WeightedAutomaton(y, x, modulus, num_states, start, accept,
                                 tuple(trans))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
