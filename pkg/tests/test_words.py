import random

import pytest

from twistcert.matrices import IntMatrix, det, sp_check
from twistcert.polynomials import charpoly, is_reciprocal
from twistcert.words import (
    CurveLetter,
    FamilyRejection,
    TBlock,
    TDecomposition,
    TwistWord,
    WordSyntaxError,
    curves_commute,
    eval_word,
    format_word,
    generator_matrix,
    hat_tau_d_word,
    parse_word,
    validate_family_T,
)


def random_word(rng, genus, length):
    letters = []
    for _ in range(length):
        kind = rng.choice("abcd")
        top = genus if kind in "ab" else genus - 1
        letters.append((CurveLetter(kind, rng.randint(1, top)), rng.choice((-2, -1, 1, 2))))
    return TwistWord(genus, tuple(letters))


def test_generator_matrices_at_genus_two():
    a1 = generator_matrix(CurveLetter("a", 1), 2)
    assert a1.m.rows == ((1, 0, 1, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    d1 = generator_matrix(CurveLetter("d", 1), 2)
    assert d1.m.is_identity()
    c1 = generator_matrix(CurveLetter("c", 1), 2)
    assert c1.m.rows == ((1, 0, -1, 1), (0, 1, 1, -1), (0, 0, 1, 0), (0, 0, 0, 1))
    b1 = generator_matrix(CurveLetter("b", 1), 2)
    assert b1.m == IntMatrix.from_unit_entries(4, {(3, 1): -1})


def test_generator_matrix_range_error():
    with pytest.raises(ValueError):
        generator_matrix(CurveLetter("c", 2), 2)
    with pytest.raises(ValueError):
        generator_matrix(CurveLetter("a", 3), 2)


def test_parse_word_basics():
    w = parse_word("a1^3 b2^-1", 2)
    assert len(w) == 2
    assert w.letters[0] == (CurveLetter("a", 1), 3)
    assert w.letters[1] == (CurveLetter("b", 2), -1)
    assert parse_word("", 2).letters == ()
    assert parse_word("a1^0 b1", 2).letters == ((CurveLetter("b", 1), 1),)


def test_parse_word_errors_carry_offsets():
    with pytest.raises(WordSyntaxError) as err:
        parse_word("z1", 2)
    assert err.value.offset == 0
    with pytest.raises(WordSyntaxError) as err:
        parse_word("a1 c3", 2)
    assert err.value.offset == 3
    with pytest.raises(WordSyntaxError) as err:
        parse_word("a1 b2^x", 2)
    assert err.value.offset == 3


def test_format_parse_round_trip(example_word_text):
    w = parse_word(example_word_text, 2)
    assert format_word(w) == example_word_text
    assert parse_word(format_word(w), 2) == w
    assert format_word(parse_word("a1^1", 2)) == "a1"


def test_eval_word_reproduces_known_matrix(example_word_text, example_matrix_rows):
    w = parse_word(example_word_text, 2)
    assert eval_word(w).m.rows == example_matrix_rows


def test_eval_word_trivial_cases():
    assert eval_word(TwistWord(2, ())).m.is_identity()
    assert eval_word(parse_word("a1 a1^-1", 2)).m.is_identity()
    assert eval_word(hat_tau_d_word(3)).m.is_identity()
    assert eval_word(parse_word("d1^-2 d2^4 d1^6", 3)).m.is_identity()


def test_eval_word_is_anti_homomorphism():
    rng = random.Random(13)
    for _ in range(20):
        g = rng.choice((2, 3))
        u = random_word(rng, g, rng.randint(0, 6))
        v = random_word(rng, g, rng.randint(0, 6))
        assert eval_word(u.concat(v)) == eval_word(v) @ eval_word(u)


def test_eval_word_symplectic_with_reciprocal_charpoly():
    rng = random.Random(17)
    for _ in range(15):
        g = rng.choice((2, 3))
        m = eval_word(random_word(rng, g, 10))
        assert sp_check(m.m, g)
        assert det(m.m) == 1
        assert is_reciprocal(charpoly(m.m))


def test_disjoint_adjacent_swap_preserves_eval():
    rng = random.Random(29)
    checked = 0
    while checked < 25:
        g = rng.choice((2, 3))
        w = random_word(rng, g, 8)
        i = rng.randint(0, len(w.letters) - 2)
        (x, ex), (y, ey) = w.letters[i], w.letters[i + 1]
        if not curves_commute(x, y):
            continue
        swapped = TwistWord(g, w.letters[:i] + ((y, ey), (x, ex)) + w.letters[i + 2:])
        assert eval_word(swapped) == eval_word(w)
        checked += 1


def test_non_commuting_pairs():
    a1, b1 = CurveLetter("a", 1), CurveLetter("b", 1)
    b2, c1, d1 = CurveLetter("b", 2), CurveLetter("c", 1), CurveLetter("d", 1)
    assert not curves_commute(a1, b1)
    assert not curves_commute(b1, c1)
    assert not curves_commute(b2, c1)
    assert not curves_commute(c1, d1)
    assert curves_commute(a1, CurveLetter("a", 2))
    assert curves_commute(a1, c1)
    assert curves_commute(a1, d1)
    # the lone non-commuting matrix pairs really fail to commute
    ma, mb = generator_matrix(a1, 2), generator_matrix(b1, 2)
    assert ma @ mb != mb @ ma


def test_validate_example_word(example_word_text):
    dec = validate_family_T(parse_word(example_word_text, 2))
    assert isinstance(dec, TDecomposition)
    assert len(dec.blocks) == 2
    assert dec.blocks[0] == TBlock(2, (1, 0), (0, 0), (-2,))
    assert dec.blocks[1] == TBlock(2, (0, 0), (1, 1), (0,))


def test_validate_hat_tau_d():
    for g in (2, 3, 4):
        dec = validate_family_T(hat_tau_d_word(g))
        assert isinstance(dec, TDecomposition)
        assert len(dec.blocks) == 1
        block = dec.blocks[0]
        assert block.p == (0,) * g and block.q == (0,) * g and block.r == (0,) * (g - 1)


def test_validate_rejections():
    rej = validate_family_T(parse_word("c1^-1", 2))
    assert isinstance(rej, FamilyRejection)
    assert rej.position == 0
    rej = validate_family_T(parse_word("a1", 2))
    assert isinstance(rej, FamilyRejection)
    rej = validate_family_T(TwistWord(2, ()))
    assert isinstance(rej, FamilyRejection)
    # wrong c exponent inside a block, position points at the c letter
    rej = validate_family_T(parse_word("d1^-2 c1^-1", 2))
    assert isinstance(rej, FamilyRejection)
    assert rej.position == 1
    # letter out of place: b after a needs a fresh d-part
    rej = validate_family_T(parse_word("d1^-2 a1 b1", 2))
    assert isinstance(rej, FamilyRejection)
    assert rej.position == 2
    # incomplete d-part at genus 3
    rej = validate_family_T(parse_word("d1^-2 a1", 3))
    assert isinstance(rej, FamilyRejection)
    assert rej.position == 0
    # odd d total cannot split into -2 blocks
    rej = validate_family_T(parse_word("d1^-2 d1^-3", 2))
    assert isinstance(rej, FamilyRejection)


def test_validate_splits_repeated_base_blocks():
    dec = validate_family_T(parse_word("d1^-2 d1^-2", 2))
    assert isinstance(dec, TDecomposition)
    assert len(dec.blocks) == 2
    dec = validate_family_T(parse_word("d1^-4 a1", 2))
    assert isinstance(dec, TDecomposition)
    assert len(dec.blocks) == 2
    assert dec.blocks[0].p == (0, 0)
    assert dec.blocks[1].p == (1, 0)
    dec = validate_family_T(parse_word("d1^-2 d2^-2 d1^-2 d2^-2 b3", 3))
    assert isinstance(dec, TDecomposition)
    assert len(dec.blocks) == 2
    assert dec.blocks[1].q == (0, 0, 1)


def test_validate_accepts_sampled_family_words():
    rng = random.Random(37)
    for _ in range(40):
        g = rng.choice((2, 3))
        blocks = []
        for _ in range(rng.randint(1, 3)):
            p = tuple(rng.randint(-3, 3) for _ in range(g))
            q = tuple(rng.randint(-3, 3) for _ in range(g))
            r = tuple(rng.choice((0, -2)) for _ in range(g - 1))
            blocks.append(TBlock(g, p, q, r))
        word = TDecomposition(g, tuple(blocks)).reassemble()
        dec = validate_family_T(word)
        assert isinstance(dec, TDecomposition)
        assert eval_word(dec.reassemble()) == eval_word(word)


def test_validate_accepts_unordered_b_run():
    dec = validate_family_T(parse_word("d1^-2 b2 b1", 2))
    assert isinstance(dec, TDecomposition)
    assert dec.blocks[0].q == (1, 1)


def test_tblock_validation():
    with pytest.raises(ValueError):
        TBlock(2, (1,), (0, 0), (0,))
    with pytest.raises(ValueError):
        TBlock(2, (0, 0), (0, 0), (-1,))
    with pytest.raises(ValueError):
        TDecomposition(2, ())


def test_twist_word_validation():
    with pytest.raises(ValueError):
        TwistWord(2, ((CurveLetter("a", 1), 0),))
    with pytest.raises(ValueError):
        TwistWord(2, ((CurveLetter("c", 2), 1),))
    with pytest.raises(ValueError):
        TwistWord(1, ())
