import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stability_lab.errors import EmptyWordError, WordSyntaxError
from stability_lab.relators import (
    Generator,
    Presentation,
    Word,
    concat,
    exponent_sum,
    free_reduce,
    invert,
    is_homogeneous,
    parse_presentation,
    parse_word,
    relator_length,
    word_to_string,
)
from conftest import gens

AB = gens("a", "b")
T123 = gens("t1", "t2", "t3")
RT = gens("r", "t")


class TestParseWord:
    def test_p2_relator(self):
        w = parse_word("t1 t2 t3 t1^-1 t2^-1 t3^-1", T123)
        assert len(w.letters) == 6
        assert [e for _, e in w.letters] == [1, 1, 1, -1, -1, -1]
        assert [g for g, _ in w.letters] == [0, 1, 2, 0, 1, 2]

    def test_commutator_shorthand(self):
        w = parse_word("[a,b]", AB)
        assert w.letters == ((0, 1), (1, 1), (0, -1), (1, -1))

    def test_bs_style_word(self):
        w = parse_word("a b^2 a^-1 b^-3", AB)
        assert w.letters == ((0, 1), (1, 2), (0, -1), (1, -3))

    def test_no_free_reduction(self):
        w = parse_word("a a^-1", AB)
        assert w.letters == ((0, 1), (0, -1))

    def test_whitespace_inside_commutator(self):
        assert parse_word("[ a , b ]", AB) == parse_word("[a,b]", AB)

    def test_unknown_generator_position(self):
        with pytest.raises(WordSyntaxError) as exc:
            parse_word("a c", AB)
        assert exc.value.position == 2

    def test_zero_exponent_position(self):
        with pytest.raises(WordSyntaxError) as exc:
            parse_word("a b^0", AB)
        assert exc.value.position == 4

    def test_malformed_exponent(self):
        with pytest.raises(WordSyntaxError):
            parse_word("a^x", AB)

    def test_missing_whitespace_between_terms(self):
        with pytest.raises(WordSyntaxError):
            parse_word("a^2b", AB)

    def test_nested_commutator_rejected(self):
        with pytest.raises(WordSyntaxError):
            parse_word("[[a,b],a]", AB)

    def test_commutator_takes_single_generators_only(self):
        with pytest.raises(WordSyntaxError):
            parse_word("[a^2,b]", AB)

    def test_commutator_exponent_rejected(self):
        with pytest.raises(WordSyntaxError):
            parse_word("[a,b]^2", AB)

    def test_case_sensitive_names(self):
        upper = gens("A", "a")
        w = parse_word("A a^-1", upper)
        assert w.letters == ((0, 1), (1, -1))


class TestWordOps:
    def test_exponent_sum_commutator(self):
        w = parse_word("[a,b]", AB)
        assert exponent_sum(w, 0) == 0

    def test_exponent_sum_hand_count(self):
        w = parse_word("a b^2 a^-1 b^-3", AB)
        assert exponent_sum(w, 1) == -1

    def test_exponent_sum_p4_relator(self):
        w = parse_word("r^-3 t r t r t^-1 r t^-1", RT)
        assert exponent_sum(w, 0) == 0

    def test_exponent_sum_out_of_range(self):
        w = parse_word("[a,b]", AB)
        with pytest.raises(IndexError):
            exponent_sum(w, 2)

    def test_homogeneous(self):
        assert is_homogeneous(parse_word("t1 t2 t3 t1^-1 t2^-1 t3^-1", T123))
        assert not is_homogeneous(parse_word("a b^2 a^-1 b^-3", AB))
        assert is_homogeneous(Word((), 2))

    def test_relator_length(self):
        assert relator_length(parse_word("t1 t2 t3 t1^-1 t2^-1 t3^-1", T123)) == 6
        assert relator_length(parse_word("r^-3 t r t r t^-1 r t^-1", RT)) == 10
        assert relator_length(parse_word("[a,b]", AB)) == 4

    def test_relator_length_empty(self):
        with pytest.raises(EmptyWordError):
            relator_length(Word((), 2))

    def test_invert(self):
        w = parse_word("a b^2", AB)
        assert invert(w).letters == ((1, -2), (0, -1))

    def test_free_reduce_merges(self):
        w = parse_word("a b b^-1 a", AB)
        assert free_reduce(w).letters == ((0, 2),)

    def test_free_reduce_to_empty(self):
        assert free_reduce(parse_word("a a^-1", AB)).letters == ()

    def test_concat(self):
        w = concat(parse_word("a", AB), parse_word("a^-1", AB))
        assert w.letters == ((0, 1), (0, -1))


NGENS = 3
letters_st = st.lists(
    st.tuples(
        st.integers(min_value=0, max_value=NGENS - 1),
        st.integers(min_value=-5, max_value=5).filter(lambda e: e != 0),
    ),
    max_size=30,
)
words_st = letters_st.map(lambda ls: Word(tuple(ls), NGENS))
NAMES = gens("a", "b", "c")


class TestProperties:
    @given(words_st)
    def test_exponent_sum_invariant_under_reduce(self, w):
        r = free_reduce(w)
        for g in range(NGENS):
            assert exponent_sum(w, g) == exponent_sum(r, g)

    @given(words_st)
    def test_homogeneous_iff_inverse_homogeneous(self, w):
        assert is_homogeneous(w) == is_homogeneous(invert(w))

    @given(words_st)
    def test_reduction_never_grows(self, w):
        r = free_reduce(w)
        if w.letters:
            if r.letters:
                assert relator_length(r) <= relator_length(w)
        else:
            assert not r.letters

    @settings(max_examples=200)
    @given(words_st)
    def test_parse_serialize_roundtrip(self, w):
        text = word_to_string(w, NAMES)
        assert parse_word(text, NAMES) == w

    @given(words_st)
    def test_invert_is_involution(self, w):
        assert invert(invert(w)) == w


class TestPresentation:
    def test_parse_file(self):
        pres = parse_presentation(
            """
            # the Klein bottle group
            gens: p q
            rel: p^2 q^-2
            """
        )
        assert pres.generator_names == ("p", "q")
        assert pres.relators[0].letters == ((0, 2), (1, -2))

    def test_comments_and_blank_lines(self):
        pres = parse_presentation("gens: a b # trailing\n\n# full line\nrel: [a,b]\n")
        assert len(pres.relators) == 1

    def test_duplicate_generators_rejected(self):
        with pytest.raises(WordSyntaxError):
            parse_presentation("gens: a a\n")

    def test_unknown_generator_in_relator(self):
        with pytest.raises(WordSyntaxError) as exc:
            parse_presentation("gens: a\nrel: a b\n")
        assert exc.value.line == 2

    def test_unrecognized_line(self):
        with pytest.raises(WordSyntaxError):
            parse_presentation("gens: a\nrelator: a\n")

    def test_missing_gens(self):
        with pytest.raises(WordSyntaxError):
            parse_presentation("rel: a\n")

    def test_relator_generator_list_must_match(self):
        with pytest.raises(WordSyntaxError):
            Presentation(AB, (Word(((0, 1),), 3),))
