"""Normal forms, products, inverses, enumeration and conjugacy classification of words."""

from collections.abc import Iterable, Iterator

from group_words.model import ALPHA, BETA, BETA_INVERSE, TOKEN_RANK, ConjClass, ConjTag, Word, factor_of
from logging_helper import get_logger

logger = get_logger(__name__)

_BETA_EXPONENT = {BETA: 1, BETA_INVERSE: 2}
_BETA_TOKEN = {1: BETA, 2: BETA_INVERSE}

# Tokens in canonical order
TOKENS = tuple(sorted(TOKEN_RANK, key=TOKEN_RANK.get))


def _merge(left: str, right: str) -> str | None:
    """Product of two tokens from the same factor, None for the identity."""
    if left == ALPHA:
        return None
    exponent = (_BETA_EXPONENT[left] + _BETA_EXPONENT[right]) % 3
    return _BETA_TOKEN.get(exponent)


def normalize(tokens: Iterable[str]) -> Word:
    """
    Rewrite an arbitrary token sequence into normal form.

    Applies alpha^2 = 1 and beta^3 = 1 with a stack, so that adjacent tokens of the same factor are merged.

    :param tokens: sequence over "a", "b", "B"
    :returns: the normal form
    :raises ValueError: for unknown tokens
    """
    stack: list[str] = []
    for token in tokens:
        if token not in TOKEN_RANK:
            raise ValueError(f"Invalid word token: {token!r}")
        if stack and factor_of(stack[-1]) == factor_of(token):
            merged = _merge(stack.pop(), token)
            if merged is not None:
                stack.append(merged)
        else:
            stack.append(token)
    return Word(tuple(stack))


def parse(text: str) -> Word:
    """Parse the text format (e.g. "abaB", empty string for the identity) into normal form."""
    return normalize(text.strip())


def multiply(u: Word, v: Word) -> Word:
    """Get the normal form of the product uv."""
    return normalize(u.tokens + v.tokens)


def invert(w: Word) -> Word:
    """Get the inverse of a word."""
    swap = {ALPHA: ALPHA, BETA: BETA_INVERSE, BETA_INVERSE: BETA}
    return Word(tuple(swap[token] for token in reversed(w.tokens)))


def power(w: Word, n: int) -> Word:
    """Get the n-th power of a word, negative exponents use the inverse."""
    base = w if n >= 0 else invert(w)
    result = Word()
    for _ in range(abs(n)):
        result = multiply(result, base)
    return result


def cyclic_reduction(w: Word) -> Word:
    """
    Conjugate a word until its first and last syllables belong to different factors.

    Matching alpha ends cancel, matching beta ends are merged into one syllable at the end.
    """
    tokens = list(w.tokens)
    while len(tokens) >= 2 and factor_of(tokens[0]) == factor_of(tokens[-1]):
        merged = _merge(tokens[-1], tokens[0])
        tokens = tokens[1:-1]
        if merged is not None:
            tokens.append(merged)
    return Word(tuple(tokens))


def cyclic_rotations(w: Word) -> list[Word]:
    """Get all cyclic rotations of a cyclically reduced word of even length."""
    tokens = w.tokens
    return [Word(tokens[i:] + tokens[:i]) for i in range(max(1, len(tokens)))]


def canonical_form(w: Word) -> Word:
    """Get the lexicographically least rotation of the cyclic reduction of a word."""
    reduced = cyclic_reduction(w)
    if reduced.syllables <= 1:
        return reduced
    return min(cyclic_rotations(reduced), key=Word.sort_key)


def classify_conjugacy(w: Word) -> ConjClass:
    """
    Classify the conjugacy class of a word.

    :param w: normal form word
    :returns: identity, a power of alpha or beta, or a hyperbolic class with its canonical cyclic word
    """
    reduced = cyclic_reduction(w)
    if reduced.is_identity:
        return ConjClass(ConjTag.IDENTITY)
    if reduced.syllables == 1:
        token = reduced.tokens[0]
        if token == ALPHA:
            return ConjClass(ConjTag.POWER_OF_ALPHA)
        return ConjClass(ConjTag.POWER_OF_BETA, exponent=_BETA_EXPONENT[token])
    return ConjClass(ConjTag.HYPERBOLIC, cyclic=canonical_form(reduced))


def _words_of_length(length: int, previous: str | None = None) -> Iterator[tuple[str, ...]]:
    if length == 0:
        yield ()
        return
    for token in TOKENS:
        if previous is not None and factor_of(previous) == factor_of(token):
            continue
        for rest in _words_of_length(length - 1, token):
            yield (token, *rest)


def count_words(syllables: int) -> int:
    """Number of normal form words with exactly the given number of syllables."""
    if syllables == 0:
        return 1
    # Words starting with alpha have 2 choices per beta syllable, words starting with beta one more beta syllable
    starting_alpha = 2 ** (syllables // 2)
    starting_beta = 2 ** ((syllables + 1) // 2)
    return starting_alpha + starting_beta


def enumerate_words(max_syllables: int) -> Iterator[Word]:
    """
    Enumerate all non-trivial normal form words up to a syllable bound.

    Words are generated breadth-first by syllable count and lexicographically (a < b < B) within a count.

    :param max_syllables: largest syllable count, at least 1
    :raises ValueError: if max_syllables is smaller than one
    """
    if max_syllables < 1:
        raise ValueError("max_syllables must be at least 1.")
    for length in range(1, max_syllables + 1):
        logger.debug(f"Enumerating {count_words(length)} words with {length} syllables")
        for tokens in _words_of_length(length):
            yield Word(tokens)
