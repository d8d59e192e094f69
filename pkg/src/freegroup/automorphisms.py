"""
Automorphisms of F_r given by the images of the basis.

Composition is fixed as ``compose(phi, psi)(x) = phi(psi(x))``; walk products
``w_n = g_1 g_2 ... g_n`` use this multiplication.
"""
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.freegroup.stallings import FoldCertificate, fold_words
from src.freegroup.words import (
    Word, inverse_letters, reduce, reduce_letters, shortlex_key,
)
from src.utils.errors import NotAnAutomorphism, ParseError, RankMismatch
from src.utils.logger import setup_logging

logger = setup_logging("freegroup")


@dataclass(frozen=True)
class FreeAutomorphism:
    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if len(self.images) != self.rank:
            raise RankMismatch(
                f"{len(self.images)} images given for rank {self.rank}")
        for image in self.images:
            if image.rank != self.rank:
                raise RankMismatch(
                    f"image {image} has rank {image.rank}, expected "
                    f"{self.rank}")

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        return cls(rank, tuple(Word.generator(rank, i)
                               for i in range(1, rank + 1)))

    @classmethod
    def from_strings(cls, images: Sequence[str],
                     rank: int | None = None) -> "FreeAutomorphism":
        """Build and certify an automorphism from ``["b", "c", "ab"]``."""
        rank = rank or len(images)
        words = tuple(Word.from_str(text, rank) for text in images)
        certificate = is_basis(words)
        if not certificate.is_basis:
            raise NotAnAutomorphism(
                f"images {list(images)} do not form a basis: "
                f"{certificate.witness}")
        return cls(rank, words)

    @classmethod
    def from_dict(cls, payload: dict,
                  auto_reduce: bool = True) -> "FreeAutomorphism":
        """
        Parse ``{"rank": 3, "images": ["b", "c", "ab"]}``.

        :param payload: Decoded JSON object.
        :param auto_reduce: Reduce unreduced images with a warning instead of
            rejecting them.
        """
        try:
            rank = int(payload["rank"])
            images = [str(text) for text in payload["images"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"automorphism needs 'rank' and 'images': {e}") \
                from e
        if len(images) != rank:
            raise ParseError(
                f"field 'images': {len(images)} images for rank {rank}")
        for text in images:
            reduced = str(Word.from_str(text, rank))
            if reduced != text.strip():
                if not auto_reduce:
                    raise ParseError(f"field 'images': '{text}' is not "
                                     "freely reduced")
                logger.warning(f"⚠️ Image '{text}' auto-reduced to "
                               f"'{reduced}'")
        return cls.from_strings(images, rank)

    def to_dict(self) -> dict:
        return {"rank": self.rank, "images": [str(w) for w in self.images]}

    def __str__(self) -> str:
        names = "abcdefghijklmnopqrstuvwxyz"
        if self.rank > len(names):
            return f"FreeAutomorphism(rank={self.rank})"
        return "(" + ", ".join(f"{names[i]}->{w or '1'}"
                               for i, w in enumerate(self.images)) + ")"

    def __call__(self, word: Word) -> Word:
        return apply(self, word)

    def __matmul__(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        return compose(self, other)

    def total_length(self) -> int:
        return sum(len(image) for image in self.images)

    def is_identity(self) -> bool:
        return self == FreeAutomorphism.identity(self.rank)

    def is_positive(self) -> bool:
        return all(letter > 0 for image in self.images
                   for letter in image.letters)


def apply_letters(phi: FreeAutomorphism, letters) -> tuple[int, ...]:
    out: list[int] = []
    for letter in letters:
        image = phi.images[abs(letter) - 1].letters
        out.extend(image if letter > 0 else inverse_letters(image))
    return reduce_letters(out)


def apply(phi: FreeAutomorphism, word: Word) -> Word:
    """
    Substitute each letter of ``word`` by its image and reduce.

    :raises RankMismatch: If the ranks differ.
    """
    if word.rank != phi.rank:
        raise RankMismatch(f"word of rank {word.rank} given to an "
                           f"automorphism of rank {phi.rank}")
    return Word(phi.rank, apply_letters(phi, word.letters))


def compose(phi: FreeAutomorphism, psi: FreeAutomorphism) -> FreeAutomorphism:
    """Return ``phi o psi``, i.e. ``x -> phi(psi(x))``."""
    if phi.rank != psi.rank:
        raise RankMismatch(f"cannot compose ranks {phi.rank} and {psi.rank}")
    return FreeAutomorphism(phi.rank, tuple(apply(phi, image)
                                            for image in psi.images))


def power(phi: FreeAutomorphism, n: int) -> FreeAutomorphism:
    if n < 0:
        return power(invert(phi), -n)
    result = FreeAutomorphism.identity(phi.rank)
    for _ in range(n):
        result = compose(result, phi)
    return result


def abelianization_matrix(words: Sequence[Word], rank: int) -> np.ndarray:
    return np.array([w.exponent_sums() for w in words], dtype=np.int64) \
        .reshape(len(words), rank)


def is_basis(words: Sequence[Word]) -> FoldCertificate:
    """
    Decide whether ``words`` is a free basis of F_r.

    The abelianization determinant is a fast necessary check; the answer is
    the Stallings fold of the wedge of loops.

    :param words: r words of rank r.
    :return: Certificate; ``is_basis`` is the verdict.
    """
    if not words:
        return FoldCertificate(False, 0, 1, 0, "empty tuple")
    rank = words[0].rank
    if len(words) != rank:
        return FoldCertificate(False, 0, 0, 0,
                               f"{len(words)} words in rank {rank}")
    determinant = round(float(np.linalg.det(
        abelianization_matrix(words, rank).astype(float))))
    if abs(determinant) != 1:
        return FoldCertificate(False, 0, 0, 0,
                               f"abelianization determinant {determinant}")
    return fold_words(rank, [w.letters for w in words]).certificate()


def invert(phi: FreeAutomorphism) -> FreeAutomorphism:
    """
    Inverse automorphism, read off the folded wedge of the images.

    :raises NotAnAutomorphism: If the images are not a basis.
    """
    graph = fold_words(phi.rank, [w.letters for w in phi.images])
    certificate = graph.certificate()
    if not certificate.is_basis:
        raise NotAnAutomorphism(
            f"{phi} is not invertible: {certificate.witness}")
    expressions = graph.generator_expressions()
    return FreeAutomorphism(phi.rank, tuple(
        reduce(phi.rank, expressions[i]) for i in range(1, phi.rank + 1)))


def inner_conjugator(theta: FreeAutomorphism) -> Word | None:
    """
    Return w with ``theta(x) = w x w^-1`` for every generator, or None.
    """
    rank = theta.rank
    first = theta.images[0].letters
    if rank == 1:
        return Word.identity(1) if first == (1,) else None
    if len(first) % 2 == 0:
        return None
    middle = len(first) // 2
    head = first[:middle]
    if first[middle] != 1 or first[middle + 1:] != inverse_letters(head):
        return None
    inner = reduce_letters(inverse_letters(head)
                           + theta.images[1].letters + head)
    k = _leading_run(inner, 1) or -_leading_run(inner, -1)
    conjugator = Word(rank, reduce_letters(head + (1,) * k + (-1,) * -k))
    for index, image in enumerate(theta.images, start=1):
        if image != Word.generator(rank, index).conjugate(conjugator):
            return None
    return conjugator


def same_outer_class(phi: FreeAutomorphism, psi: FreeAutomorphism) -> bool:
    """Exact equality in Out(F_r): is ``phi^-1 psi`` inner?"""
    if phi.rank != psi.rank:
        raise RankMismatch(f"ranks {phi.rank} and {psi.rank} differ")
    return inner_conjugator(compose(invert(phi), psi)) is not None


def conjugate_automorphism(phi: FreeAutomorphism,
                           by: Word) -> FreeAutomorphism:
    """``x -> by phi(x) by^-1``, the same outer class."""
    return FreeAutomorphism(phi.rank, tuple(image.conjugate(by)
                                            for image in phi.images))


def outer_representative(phi: FreeAutomorphism) -> FreeAutomorphism:
    """
    Shorten ``phi`` inside its outer class by single-letter conjugations,
    preferring the shortlex-smallest image tuple at each step.
    """
    current = phi
    while True:
        best = current
        for letter in range(-phi.rank, phi.rank + 1):
            if letter == 0:
                continue
            candidate = conjugate_automorphism(
                current, Word.generator(phi.rank, abs(letter)) ** (
                    1 if letter > 0 else -1))
            if _image_key(candidate) < _image_key(best):
                best = candidate
        if best == current:
            return current
        current = best


def _image_key(phi: FreeAutomorphism):
    return (phi.total_length(), tuple(shortlex_key(w) for w in phi.images))


def _leading_run(letters: tuple[int, ...], letter: int) -> int:
    count = 0
    while count < len(letters) and letters[count] == letter:
        count += 1
    return count
