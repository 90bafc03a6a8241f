"""Words over a finite alphabet and noncommutative polynomials over Z_p.

A polynomial is a finitely supported map from words (tuples of letter
indices) to nonzero residues.  Multiplication concatenates words and
never commutes them; the zero polynomial has degree 0 by convention.

Alphabet names are display labels carried through the text formats.
Compatibility between objects is decided by alphabet *size* and modulus,
so re-labelled but structurally identical objects interoperate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import FormatError
from .scalars import Scalar, require_prime_modulus

Letters = tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*\Z")


def check_name(name: str) -> str:
    if not _NAME_RE.match(name):
        raise ValueError(f"bad identifier {name!r}: single token required")
    return name


@dataclass(frozen=True)
class Alphabet:
    """A finite set of noncommuting variables x_0 .. x_{size-1}."""

    name: str
    size: int

    def __post_init__(self) -> None:
        check_name(self.name)
        if self.size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.size}")


def ensure_compatible_alphabets(a: Alphabet, b: Alphabet) -> None:
    if a.size != b.size:
        raise ValueError(f"alphabet size mismatch: {a.size} vs {b.size}")


def length_lex_key(letters: Letters) -> tuple[int, Letters]:
    """Sort key: by length first, ties broken lexicographically."""
    return (len(letters), letters)


@dataclass(frozen=True, eq=False)
class Word:
    """A finite product of variables; the empty tuple is the unit."""

    alphabet: Alphabet
    letters: Letters

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        n = self.alphabet.size
        for i in letters:
            if not 0 <= i < n:
                raise ValueError(f"letter x{i} outside alphabet of size {n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    # Equality ignores the alphabet label; size and letters decide.
    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return (self.alphabet.size == other.alphabet.size
                and self.letters == other.letters)

    def __hash__(self) -> int:
        return hash((self.alphabet.size, self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{i}" for i in self.letters)

    def __repr__(self) -> str:
        return f"Word({self.alphabet.name}, {self.letters!r})"


def word_concat(u: Word, v: Word) -> Word:
    ensure_compatible_alphabets(u.alphabet, v.alphabet)
    return Word(u.alphabet, u.letters + v.letters)


# ---------------------------------------------------------------------------
# Raw term-map kernels.  Keys are letter tuples, values nonzero residues.
# Shared by polynomial operators, circuit expansion, and automaton runs.

def add_maps(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for w, c in b.items():
        nc = (out.get(w, 0) + c) % p
        if nc:
            out[w] = nc
        else:
            out.pop(w, None)
    return out


def mul_maps(a: dict, b: dict, p: int) -> dict:
    if not a or not b:
        return {}
    out: dict = {}
    get = out.get
    for u, cu in a.items():
        for v, cv in b.items():
            w = u + v
            out[w] = (get(w, 0) + cu * cv) % p
    return {w: c for w, c in out.items() if c}


def scale_map(a: dict, c: int, p: int) -> dict:
    c %= p
    if c == 0:
        return {}
    if c == 1:
        return dict(a)
    out = {}
    for w, cw in a.items():
        nc = cw * c % p
        if nc:
            out[w] = nc
    return out


def mul_map_term(a: dict, coeff: int, var: int | None, p: int) -> dict:
    """Right-multiply a term map by coeff (* x_var when var is given)."""
    out = {}
    if var is None:
        for w, c in a.items():
            nc = c * coeff % p
            if nc:
                out[w] = nc
    else:
        suffix = (var,)
        for w, c in a.items():
            nc = c * coeff % p
            if nc:
                out[w + suffix] = nc
    return out


class NCPolynomial:
    """Finitely supported word -> residue map with exact mod-p arithmetic.

    Canonical form: no stored coefficient is zero.  The operators +, -,
    and * implement ring arithmetic; * also accepts an int or Scalar on
    either side and scales the polynomial.
    """

    __slots__ = ("alphabet", "modulus", "terms")

    def __init__(self, alphabet: Alphabet, modulus: int,
                 terms: Mapping | None = None, *, _trusted: bool = False):
        require_prime_modulus(modulus)
        if terms is None:
            terms = {}
        if not _trusted:
            n = alphabet.size
            canon: dict[Letters, int] = {}
            for word, c in terms.items():
                if isinstance(word, Word):
                    word = word.letters
                word = tuple(word)
                for i in word:
                    if not 0 <= i < n:
                        raise ValueError(
                            f"letter x{i} outside alphabet of size {n}")
                if isinstance(c, Scalar):
                    if c.modulus != modulus:
                        raise ValueError(
                            f"modulus mismatch: {modulus} vs {c.modulus}")
                    c = c.value
                c = int(c) % modulus
                if c:
                    canon[word] = c
                elif word in canon:
                    del canon[word]
            terms = canon
        self.alphabet = alphabet
        self.modulus = modulus
        self.terms = terms

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet, modulus: int) -> "NCPolynomial":
        return cls(alphabet, modulus, {}, _trusted=True)

    @classmethod
    def constant(cls, c, alphabet: Alphabet, modulus: int) -> "NCPolynomial":
        return cls(alphabet, modulus, {(): c})

    @classmethod
    def variable(cls, i: int, alphabet: Alphabet,
                 modulus: int) -> "NCPolynomial":
        return cls(alphabet, modulus, {(i,): 1})

    @classmethod
    def monomial(cls, word, c, alphabet: Alphabet,
                 modulus: int) -> "NCPolynomial":
        return cls(alphabet, modulus, {word: c})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Length of the longest word in the support; 0 for the zero poly."""
        if not self.terms:
            return 0
        return max(len(w) for w in self.terms)

    def coeff(self, word) -> Scalar:
        if isinstance(word, Word):
            word = word.letters
        return Scalar(self.terms.get(tuple(word), 0), self.modulus)

    def support(self) -> list[Word]:
        return [Word(self.alphabet, w)
                for w in sorted(self.terms, key=length_lex_key)]

    def leading_word(self) -> Word | None:
        """Length-lex maximal word of the support, None for zero."""
        if not self.terms:
            return None
        return Word(self.alphabet, max(self.terms, key=length_lex_key))

    def evaluate(self, assignment) -> Scalar:
        """Value at a scalar point; assignment is a sequence or map var -> value."""
        p = self.modulus
        total = 0
        for w, c in self.terms.items():
            v = c
            for i in w:
                a = assignment[i]
                if isinstance(a, Scalar):
                    a = a.value
                v = v * a % p
            total = (total + v) % p
        return Scalar(total, p)

    # -- ring operations ------------------------------------------------

    def _check_compat(self, other: "NCPolynomial") -> None:
        ensure_compatible_alphabets(self.alphabet, other.alphabet)
        if self.modulus != other.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other) -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        self._check_compat(other)
        return NCPolynomial(self.alphabet, self.modulus,
                            add_maps(self.terms, other.terms, self.modulus),
                            _trusted=True)

    def __sub__(self, other) -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "NCPolynomial":
        p = self.modulus
        return NCPolynomial(self.alphabet, p,
                            {w: p - c for w, c in self.terms.items()},
                            _trusted=True)

    def __mul__(self, other) -> "NCPolynomial":
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        self._check_compat(other)
        return NCPolynomial(self.alphabet, self.modulus,
                            mul_maps(self.terms, other.terms, self.modulus),
                            _trusted=True)

    def __rmul__(self, other) -> "NCPolynomial":
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "NCPolynomial":
        if isinstance(c, Scalar):
            if c.modulus != self.modulus:
                raise ValueError(
                    f"modulus mismatch: {self.modulus} vs {c.modulus}")
            c = c.value
        return NCPolynomial(self.alphabet, self.modulus,
                            scale_map(self.terms, c, self.modulus),
                            _trusted=True)

    # -- comparison and display ------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return (self.alphabet.size == other.alphabet.size
                and self.modulus == other.modulus
                and self.terms == other.terms)

    __hash__ = None  # mutable term dict inside

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=length_lex_key):
            c = self.terms[w]
            mono = "*".join(f"x{i}" for i in w) if w else "1"
            parts.append(mono if c == 1 and w else f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return (f"NCPolynomial({self.alphabet.name}, mod {self.modulus}, "
                f"{len(self.terms)} terms)")


# ---------------------------------------------------------------------------
# Text format.  One term per line after a single header line:
#
#   poly over X vars 8 modulus 7
#   2 : x0 x1
#   1 : 1
#
# Terms are ordered length-lex; the empty word is written as the token 1.
# Serializing and reparsing a canonical file is byte-identical.

def format_poly(f: NCPolynomial) -> str:
    lines = [f"poly over {f.alphabet.name} vars {f.alphabet.size} "
             f"modulus {f.modulus}"]
    for w in sorted(f.terms, key=length_lex_key):
        mono = " ".join(f"x{i}" for i in w) if w else "1"
        lines.append(f"{f.terms[w]} : {mono}")
    return "\n".join(lines) + "\n"


def _parse_header(line: str, kind: str, fields: Sequence[str]) -> list[str]:
    toks = line.split()
    if len(toks) != 1 + 2 * len(fields) or toks[0] != kind:
        raise FormatError(f"bad {kind} header: {line!r}")
    vals = []
    for pos, key in enumerate(fields):
        if toks[1 + 2 * pos] != key:
            raise FormatError(f"bad {kind} header: expected {key!r} "
                              f"in {line!r}")
        vals.append(toks[2 + 2 * pos])
    return vals


def _parse_word_tokens(tokens: Iterable[str], size: int,
                       lineno: int) -> Letters:
    tokens = list(tokens)
    if tokens == ["1"]:
        return ()
    letters = []
    for t in tokens:
        if not t.startswith("x") or not t[1:].isdigit():
            raise FormatError(f"line {lineno}: bad letter token {t!r}")
        i = int(t[1:])
        if i >= size:
            raise FormatError(f"line {lineno}: x{i} outside alphabet "
                              f"of size {size}")
        letters.append(i)
    return tuple(letters)


def parse_poly(text: str) -> NCPolynomial:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty polynomial file")
    name, vars_s, mod_s = _parse_header(lines[0], "poly",
                                        ("over", "vars", "modulus"))
    try:
        size, modulus = int(vars_s), int(mod_s)
    except ValueError as exc:
        raise FormatError(f"bad poly header: {lines[0]!r}") from exc
    try:
        alphabet = Alphabet(name, size)
        require_prime_modulus(modulus)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    terms: dict[Letters, int] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise FormatError(f"line {lineno}: expected '<coeff> : <word>'")
        try:
            c = int(head.strip())
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad coefficient "
                              f"{head.strip()!r}") from exc
        word = _parse_word_tokens(tail.split(), size, lineno)
        if word in terms:
            raise FormatError(f"line {lineno}: duplicate word")
        terms[word] = c % modulus
    return NCPolynomial(alphabet, modulus, terms)
