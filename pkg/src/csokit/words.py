"""Words and polynomials in two noncommuting variables x, y.

A word is a plain string over the alphabet ``{"x", "y"}`` (the empty string
denotes the identity); a polynomial is a dict mapping words to complex
coefficients with no zero coefficients stored.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .errors import InputError
from .linalg import as_matrix

ALPHABET = "xy"


def validate_word(word: str) -> str:
    if any(c not in ALPHABET for c in word):
        raise InputError(f"word {word!r} contains letters outside {{x, y}}")
    return word


def eval_word(word: str, X, Y) -> np.ndarray:
    """Substitute x -> X, y -> Y; the empty word gives the identity."""
    validate_word(word)
    X = as_matrix(X, square=True)
    Y = as_matrix(Y, square=True)
    if X.shape != Y.shape:
        raise InputError(f"size mismatch: X is {X.shape}, Y is {Y.shape}")
    M = np.eye(X.shape[0], dtype=complex)
    for letter in word:
        M = M @ (X if letter == "x" else Y)
    return M


def normalize_poly(p: dict[str, complex]) -> dict[str, complex]:
    """Validated copy with zero coefficients dropped."""
    out = {}
    for word, coeff in p.items():
        validate_word(word)
        c = complex(coeff)
        if c != 0:
            out[word] = c
    return out


def eval_poly(p: dict[str, complex], X, Y) -> np.ndarray:
    X = as_matrix(X, square=True)
    Y = as_matrix(Y, square=True)
    if X.shape != Y.shape:
        raise InputError(f"size mismatch: X is {X.shape}, Y is {Y.shape}")
    M = np.zeros_like(X)
    for word, coeff in normalize_poly(p).items():
        M = M + coeff * eval_word(word, X, Y)
    return M


def conjugate_coefficients(p: dict[str, complex]) -> dict[str, complex]:
    """Coefficientwise complex conjugate of a polynomial."""
    return {word: np.conj(coeff) for word, coeff in normalize_poly(p).items()}


def words_of_length(length: int):
    """All words of the given length in lexicographic order with x < y."""
    for letters in product(ALPHABET, repeat=length):
        yield "".join(letters)


def iter_words(max_len: int, min_len: int = 1):
    """Length-lexicographic enumeration (x < y), lengths min_len..max_len."""
    for length in range(min_len, max_len + 1):
        yield from words_of_length(length)


def random_word(rng: np.random.Generator, max_len: int, min_len: int = 1) -> str:
    length = int(rng.integers(min_len, max_len + 1))
    return "".join(ALPHABET[i] for i in rng.integers(0, 2, size=length))


def random_polynomial(
    rng: np.random.Generator,
    max_len: int,
    max_terms: int = 4,
    scale: float = 1.0,
) -> dict[str, complex]:
    """Random polynomial with distinct random words and Gaussian coefficients."""
    n_terms = int(rng.integers(1, max_terms + 1))
    p: dict[str, complex] = {}
    while len(p) < n_terms:
        w = random_word(rng, max_len)
        p[w] = scale * complex(rng.standard_normal(), rng.standard_normal())
    return p
