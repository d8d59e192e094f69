"""
Reduced words in the free group F_r.

A letter is a nonzero integer: ``i`` is the i-th generator, ``-i`` its
inverse. In text the generators are ``a..z`` and their inverses ``A..Z``.
"""
import string
from dataclasses import dataclass
from typing import Iterable, Sequence

from src.utils.errors import IndexOutOfRank, ParseError, RankMismatch

MAX_TEXT_RANK = 26
ALPHABET = string.ascii_lowercase


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a letter sequence with a cancellation stack."""
    stack: list[int] = []
    for letter in letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def inverse_letters(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-letter for letter in reversed(letters))


def cyclic_reduce_letters(letters: Sequence[int]) -> tuple[int, ...]:
    letters = reduce_letters(letters)
    start, end = 0, len(letters)
    while end - start > 1 and letters[start] == -letters[end - 1]:
        start += 1
        end -= 1
    return letters[start:end]


def letter_to_char(letter: int) -> str:
    if abs(letter) > MAX_TEXT_RANK:
        raise IndexOutOfRank(
            f"letter {letter} cannot be written in the a..z alphabet")
    char = ALPHABET[abs(letter) - 1]
    return char if letter > 0 else char.upper()


def char_to_letter(char: str) -> int:
    if char in ALPHABET:
        return ALPHABET.index(char) + 1
    if char.lower() in ALPHABET:
        return -(ALPHABET.index(char.lower()) + 1)
    raise ParseError(f"'{char}' is not a generator letter")


@dataclass(frozen=True, order=True)
class Word:
    """A freely reduced word of the free group of the given rank."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.rank:
                raise IndexOutOfRank(
                    f"letter {letter} outside rank {self.rank}")
        if reduce_letters(self.letters) != self.letters:
            raise ValueError(f"word {self.letters} is not reduced; "
                             "use reduce() to build it")

    @classmethod
    def from_str(cls, text: str, rank: int) -> "Word":
        return reduce(rank, [char_to_letter(c) for c in text.strip()])

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, index: int) -> "Word":
        return cls(rank, (index,))

    def __str__(self) -> str:
        return "".join(letter_to_char(letter) for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise RankMismatch(f"ranks {self.rank} and {other.rank} differ")
        return Word(self.rank, reduce_letters(self.letters + other.letters))

    def __invert__(self) -> "Word":
        return Word(self.rank, inverse_letters(self.letters))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        return Word(self.rank, reduce_letters(base.letters * abs(n)))

    def is_identity(self) -> bool:
        return not self.letters

    def cyclic_reduce(self) -> "Word":
        return Word(self.rank, cyclic_reduce_letters(self.letters))

    def conjugate(self, by: "Word") -> "Word":
        """Return ``by * self * by^-1``."""
        return by * self * ~by

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.rank
        for letter in self.letters:
            sums[abs(letter) - 1] += 1 if letter > 0 else -1
        return sums


def reduce(rank: int, letters: Iterable[int]) -> Word:
    """
    Freely reduce a raw signed-letter sequence.

    :param rank: Rank of the ambient free group.
    :param letters: Signed generator indices, possibly unreduced.
    :return: The unique reduced word.
    :raises IndexOutOfRank: If some index exceeds the rank.
    """
    letters = tuple(letters)
    for letter in letters:
        if letter == 0 or abs(letter) > rank:
            raise IndexOutOfRank(f"letter {letter} outside rank {rank}")
    return Word(rank, reduce_letters(letters))


def shortlex_key(word: Word) -> tuple:
    """Order words by length, then letters with a < A < b < B < ..."""
    return (len(word), tuple((abs(x), x < 0) for x in word.letters))
