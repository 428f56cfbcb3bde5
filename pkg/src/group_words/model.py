"""Words and conjugacy classes of Z2 * Z3."""

import enum
from dataclasses import dataclass

# Tokens of the text format: "a" = alpha, "b" = beta, "B" = beta^2 = beta^-1
ALPHA = "a"
BETA = "b"
BETA_INVERSE = "B"

# Token order used for canonical forms and enumeration
TOKEN_RANK = {ALPHA: 0, BETA: 1, BETA_INVERSE: 2}


def factor_of(token: str) -> int:
    """Get the free factor (0 for alpha, 1 for beta) a token belongs to."""
    return 0 if token == ALPHA else 1


@dataclass(frozen=True, order=False)
class Word:
    """
    Normal form of a group element.

    The tokens alternate between the factors, alpha appears to the first power and beta with exponent 1 or 2.
    """

    tokens: tuple[str, ...] = ()

    def __post_init__(self):
        tokens = tuple(self.tokens)
        for token in tokens:
            if token not in TOKEN_RANK:
                raise ValueError(f"Invalid word token: {token!r}")
        for left, right in zip(tokens, tokens[1:]):
            if factor_of(left) == factor_of(right):
                raise ValueError(f"Word {''.join(tokens)!r} is not in normal form.")
        object.__setattr__(self, "tokens", tokens)

    @property
    def text(self) -> str:
        return "".join(self.tokens)

    @property
    def syllables(self) -> int:
        return len(self.tokens)

    @property
    def is_identity(self) -> bool:
        return len(self.tokens) == 0

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Breadth-first key: syllable count first, token ranks second."""
        return len(self.tokens), tuple(TOKEN_RANK[token] for token in self.tokens)

    def __str__(self) -> str:
        return self.text

    def __len__(self) -> int:
        return len(self.tokens)


class ConjTag(str, enum.Enum):
    """Kinds of conjugacy classes."""

    IDENTITY = "identity"
    POWER_OF_ALPHA = "power_of_alpha"
    POWER_OF_BETA = "power_of_beta"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class ConjClass:
    """Conjugacy class with its canonical data.

    `exponent` is set for powers of beta (1 or 2), `cyclic` holds the lexicographically least cyclic rotation of
    a hyperbolic class.
    """

    tag: ConjTag
    exponent: int | None = None
    cyclic: Word | None = None

    def __str__(self) -> str:
        if self.tag == ConjTag.POWER_OF_BETA:
            return f"{self.tag.value}({self.exponent})"
        if self.tag == ConjTag.HYPERBOLIC:
            return f"{self.tag.value}({self.cyclic})"
        return self.tag.value
