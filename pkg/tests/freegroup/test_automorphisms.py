import pytest

from src.freegroup.automorphisms import (
    FreeAutomorphism, apply, compose, conjugate_automorphism, invert,
    is_basis, outer_representative, power, same_outer_class,
)
from src.freegroup.words import Word
from src.utils.errors import NotAnAutomorphism, ParseError, RankMismatch


def test_apply_examples(phi3):
    assert str(apply(phi3, Word.from_str("c", 3))) == "ab"
    assert str(apply(phi3, Word.from_str("Ca", 3))) == "BAb"
    identity = FreeAutomorphism.identity(3)
    assert str(identity(Word.from_str("abc", 3))) == "abc"


def test_apply_is_a_homomorphism(phi3, rng):
    for _ in range(20):
        u = Word.from_str("".join(rng.choice(list("abcABC"), 5)), 3)
        v = Word.from_str("".join(rng.choice(list("abcABC"), 5)), 3)
        assert apply(phi3, u * v) == apply(phi3, u) * apply(phi3, v)


def test_compose_examples(phi3):
    square = compose(phi3, phi3)
    assert [str(w) for w in square.images] == ["c", "ab", "bc"]
    assert compose(phi3, FreeAutomorphism.identity(3)) == phi3
    assert compose(phi3, invert(phi3)).is_identity()


def test_compose_is_associative(random_automorphisms):
    autos = random_automorphisms(3, 15, max_length=6)
    for x, y, z in zip(autos, autos[1:], autos[2:]):
        assert compose(compose(x, y), z) == compose(x, compose(y, z))


def test_invert_examples(phi3):
    assert [str(w) for w in invert(phi3).images] == ["cA", "a", "b"]
    identity = FreeAutomorphism.identity(3)
    assert invert(identity) == identity
    transvection = FreeAutomorphism.from_strings(["ab", "b"])
    assert [str(w) for w in invert(transvection).images] == ["aB", "b"]


def test_random_products_invert_exactly(random_automorphisms):
    for phi in random_automorphisms(3, 100):
        assert compose(phi, invert(phi)).is_identity()
        assert invert(invert(phi)) == phi


def test_is_basis_examples():
    assert is_basis([Word.from_str(t, 3) for t in ["b", "c", "ab"]]).is_basis
    assert not is_basis([Word.from_str(t, 2) for t in ["a", "a"]]).is_basis
    certificate = is_basis([Word.from_str(t, 2) for t in ["ab", "ba"]])
    assert not certificate.is_basis
    assert certificate.witness


def test_non_basis_images_are_rejected():
    with pytest.raises(NotAnAutomorphism):
        FreeAutomorphism.from_strings(["ab", "ba"])


def test_from_dict_reports_field_problems():
    with pytest.raises(ParseError):
        FreeAutomorphism.from_dict({"rank": 3, "images": ["a", "b"]})
    with pytest.raises(ParseError):
        FreeAutomorphism.from_dict({"images": ["a"]})
    with pytest.raises(ParseError):
        FreeAutomorphism.from_dict({"rank": 2, "images": ["abB", "b"]},
                                   auto_reduce=False)
    phi = FreeAutomorphism.from_dict({"rank": 2, "images": ["abB", "b"]})
    assert phi.is_identity()


def test_power_and_negative_power(phi3):
    assert power(phi3, 2) == compose(phi3, phi3)
    assert power(phi3, 0).is_identity()
    assert power(phi3, -1) == invert(phi3)


def test_ranks_must_agree(phi3):
    with pytest.raises(RankMismatch):
        compose(phi3, FreeAutomorphism.identity(2))
    with pytest.raises(RankMismatch):
        apply(phi3, Word.from_str("a", 2))


def test_outer_class_ignores_conjugation(phi3):
    conjugated = conjugate_automorphism(phi3, Word.from_str("aC", 3))
    assert conjugated != phi3
    assert same_outer_class(phi3, conjugated)
    assert not same_outer_class(phi3, compose(phi3, phi3))
    assert outer_representative(conjugated).total_length() <= \
        conjugated.total_length()
