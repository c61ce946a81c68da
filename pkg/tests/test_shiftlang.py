"""Language-level behavior of the four presentation kinds."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftlab.shiftlang import (
    Alphabet,
    FullShift,
    PeriodicOrbit,
    SftForbidden,
    SubstitutionShift,
    ComplexityProfile,
    complexity,
    entropy_profile,
    morse_hedlund_test,
    special_words,
    words_of_length,
)

from oracles import (
    fibonacci_rules,
    golden_mean_words,
    periodic_words,
    sft_words_brute,
    substitution_words,
)

BINARY = Alphabet.of("01")


@pytest.fixture(scope="module")
def golden():
    return SftForbidden(BINARY, ["11"])


@pytest.fixture(scope="module")
def fibonacci():
    return SubstitutionShift(BINARY, fibonacci_rules())


# -- alphabet ------------------------------------------------------------


def test_alphabet_rejects_duplicates_and_multichar():
    with pytest.raises(ValueError):
        Alphabet.of("00")
    with pytest.raises(ValueError):
        Alphabet(("ab",))
    with pytest.raises(ValueError):
        Alphabet(())


def test_word_key_orders_by_declared_order():
    # declared order b < a, hence "bb" < "ba" < "ab" < "aa"
    letters = Alphabet.of("ba")
    words = ["aa", "ab", "ba", "bb"]
    assert sorted(words, key=letters.word_key) == ["bb", "ba", "ab", "aa"]
    with pytest.raises(ValueError):
        letters.index("c")


# -- full shift ----------------------------------------------------------


def test_full_shift_counts_and_membership():
    x = FullShift(BINARY)
    assert complexity(x, 5) == 32
    assert x.count_words(20) == 2**20
    assert x.is_legal("0101010")
    assert not x.is_legal("012")
    assert words_of_length(x, 0) == ("",)


def test_full_shift_words_sorted():
    x = FullShift(Alphabet.of("abc"))
    ws = words_of_length(x, 2)
    assert ws == tuple(sorted(ws))
    assert len(ws) == 9


# -- golden mean SFT -----------------------------------------------------


def test_golden_mean_complexity_matches_frozen_values(golden):
    # Fibonacci numbers: P(n) = F(n+2)
    assert [complexity(golden, n) for n in range(1, 7)] == [2, 3, 5, 8, 13, 21]


def test_golden_mean_against_brute_force(golden):
    for n in range(1, 9):
        assert golden.word_set(n) == golden_mean_words(n)


def test_golden_mean_path_count_agrees_with_enumeration(golden):
    for n in range(1, 12):
        assert golden.count_words(n) == len(golden.words_of_length(n))


def test_sft_three_letter_forbidden_words_frozen():
    x = SftForbidden(BINARY, ["11"])
    assert x.word_set(3) == {"000", "001", "010", "100", "101"}


def test_sft_legality_is_two_sided_extendability():
    # '01' is forbidden, so any 0 must never be followed by 1; words ending
    # in 1 must continue with 1s forever, which is fine, but '10' forces the
    # suffix 0^inf, also fine.  All of 00, 10, 11 survive; 01 does not.
    x = SftForbidden(BINARY, ["01"])
    assert x.word_set(2) == {"00", "10", "11"}


def test_sft_trimming_removes_dead_ends():
    # forbidding 00 and 11 leaves only the alternating orbit
    x = SftForbidden(BINARY, ["00", "11"])
    assert x.word_set(4) == {"0101", "1010"}
    assert complexity(x, 9) == 2


def test_sft_empty_presentation_rejected():
    with pytest.raises(ValueError):
        SftForbidden(BINARY, ["0", "1"])
    with pytest.raises(ValueError):
        SftForbidden(BINARY, ["00", "01", "11"])


def test_sft_single_letter_forbidden_reduces_alphabet():
    x = SftForbidden(Alphabet.of("abc"), ["b"])
    assert x.word_set(2) == {"aa", "ac", "ca", "cc"}


def test_sft_mixed_length_forbidden_against_brute_force():
    x = SftForbidden(BINARY, ["111", "00"])
    for n in range(1, 8):
        assert x.word_set(n) == sft_words_brute("01", ["111", "00"], n)


def test_sft_rejects_garbage_forbidden_words():
    with pytest.raises(ValueError):
        SftForbidden(BINARY, [""])
    with pytest.raises(ValueError):
        SftForbidden(BINARY, ["12"])


# -- substitution shifts ---------------------------------------------------


def test_fibonacci_complexity_is_n_plus_one(fibonacci):
    for n in range(1, 13):
        assert complexity(fibonacci, n) == n + 1


def test_fibonacci_against_brute_force(fibonacci):
    for n in range(1, 11):
        assert fibonacci.word_set(n) == substitution_words(fibonacci_rules(), n)


def test_fibonacci_unique_right_special_word(fibonacci):
    for n in range(1, 9):
        assert len(special_words(fibonacci, n, "right")) == 1


def test_thue_morse_complexity_values():
    x = SubstitutionShift(BINARY, {"0": "01", "1": "10"})
    # classical counts for the doubling rule's shift
    for n in range(1, 9):
        assert x.word_set(n) == substitution_words({"0": "01", "1": "10"}, n)
    assert [complexity(x, n) for n in range(1, 7)] == [2, 4, 6, 10, 12, 16]


def test_substitution_primitivity_enforced():
    with pytest.raises(ValueError):
        SubstitutionShift(BINARY, {"0": "00", "1": "11"})
    with pytest.raises(ValueError):
        SubstitutionShift(BINARY, {"0": "0", "1": "10"})


def test_substitution_validates_rule_shape():
    with pytest.raises(ValueError):
        SubstitutionShift(BINARY, {"0": "01"})
    with pytest.raises(ValueError):
        SubstitutionShift(BINARY, {"0": "01", "1": ""})
    with pytest.raises(ValueError):
        SubstitutionShift(BINARY, {"0": "01", "1": "2"})


def test_substitution_primitivity_exponent_recorded(fibonacci):
    assert 1 <= fibonacci.primitivity_exponent <= 4


# -- periodic orbits ---------------------------------------------------------


def test_periodic_seed_normalization():
    a = PeriodicOrbit("0101")
    b = PeriodicOrbit("10")
    assert a.seed == b.seed == "01"
    assert a == b
    assert a.period == 2


def test_periodic_words_frozen_example():
    x = PeriodicOrbit("01")
    assert x.word_set(5) == {"01010", "10101"}


def test_periodic_against_brute_force():
    x = PeriodicOrbit("0010111")
    for n in range(1, 12):
        assert x.word_set(n) == periodic_words("0010111", n)


def test_periodic_complexity_caps_at_period():
    x = PeriodicOrbit("001011")
    for n in range(1, 14):
        assert complexity(x, n) == min(len(periodic_words("001011", n)), 6) == complexity(x, n)
    assert complexity(x, 30) == 6


def test_periodic_membership():
    x = PeriodicOrbit("010")
    assert x.is_legal("0010")
    assert not x.is_legal("11")


# -- special words ---------------------------------------------------------


def test_special_words_golden_mean(golden):
    # every legal word followed by 0 stays legal, so right-special words are
    # exactly those also extendable by 1, i.e. not ending in 1
    rs = special_words(golden, 3, "right")
    assert rs == ("000", "010", "100")
    ls = special_words(golden, 3, "left")
    assert ls == ("000", "001", "010")


def test_special_words_full_shift_everything():
    x = FullShift(BINARY)
    assert len(special_words(x, 4, "right")) == 16


def test_special_words_periodic_none():
    x = PeriodicOrbit("0011")
    assert special_words(x, 4, "right") == ()
    assert special_words(x, 4, "left") == ()


def test_special_words_rejects_bad_side(golden):
    with pytest.raises(ValueError):
        special_words(golden, 3, "up")


# -- entropy and periodicity tests --------------------------------------------


def test_entropy_profile_full_shift_exact():
    prof = entropy_profile(FullShift(BINARY), 6)
    assert prof.values == (2, 4, 8, 16, 32, 64)
    for e in prof.entropy_estimates:
        assert e == pytest.approx(math.log(2))
    assert prof.entropy_upper_estimate == pytest.approx(math.log(2))


def test_entropy_profile_golden_mean_near_limit(golden):
    prof = entropy_profile(golden, 14)
    assert prof.values[13] == 987
    assert prof.entropy_upper_estimate == pytest.approx(math.log(987) / 14)
    phi = (1 + math.sqrt(5)) / 2
    assert abs(prof.entropy_upper_estimate - math.log(phi)) < 0.02


def test_entropy_profile_estimates_monotone_enough(golden):
    # the min over the profile is attained at the last length for this SFT
    prof = entropy_profile(golden, 14)
    assert prof.entropy_upper_estimate == prof.entropy_estimates[-1]


def test_complexity_profile_validation():
    with pytest.raises(ValueError):
        ComplexityProfile((3, 2), (0.1, 0.1))
    with pytest.raises(ValueError):
        ComplexityProfile((2, 3, 13), (0.1, 0.1, 0.1))  # 13 > 2*3 at n=1+2
    with pytest.raises(ValueError):
        ComplexityProfile((0,), (0.0,))
    with pytest.raises(ValueError):
        ComplexityProfile((), ())


def test_morse_hedlund_periodic_witness():
    v = morse_hedlund_test(PeriodicOrbit("01"), 10)
    assert v.certifies_periodic and v.witness == 2
    assert str(v) == "PeriodicWitness(2)"


def test_morse_hedlund_aperiodic_no_witness(golden, fibonacci):
    v = morse_hedlund_test(golden, 12)
    assert not v.certifies_periodic and v.witness is None
    assert str(v) == "NoWitnessUpTo(12)"
    # Fibonacci sits right at the threshold P(n) = n + 1 and never crosses
    assert morse_hedlund_test(fibonacci, 12).witness is None


def test_morse_hedlund_longer_period():
    v = morse_hedlund_test(PeriodicOrbit("0010111"), 20)
    assert v.witness == 7


# -- structural invariants, property style -----------------------------------

small_forbidden = st.lists(
    st.text(alphabet="01", min_size=1, max_size=3), min_size=0, max_size=3
)


@settings(max_examples=60, deadline=None)
@given(small_forbidden)
def test_sft_counts_monotone_and_submultiplicative(forbidden):
    try:
        x = SftForbidden(BINARY, forbidden)
    except ValueError:
        return
    vals = [complexity(x, n) for n in range(1, 9)]
    for i in range(1, 8):
        assert vals[i] >= vals[i - 1]
    for i in range(1, 8):
        for j in range(1, 9 - i):
            assert vals[i + j - 1] <= vals[i - 1] * vals[j - 1]


@settings(max_examples=60, deadline=None)
@given(small_forbidden)
def test_sft_every_word_extends_both_ways(forbidden):
    try:
        x = SftForbidden(BINARY, forbidden)
    except ValueError:
        return
    for w in x.words_of_length(4):
        assert any(x.is_legal(w + a) for a in "01")
        assert any(x.is_legal(a + w) for a in "01")


@settings(max_examples=60, deadline=None)
@given(small_forbidden)
def test_sft_factors_of_legal_words_are_legal(forbidden):
    try:
        x = SftForbidden(BINARY, forbidden)
    except ValueError:
        return
    for w in x.words_of_length(6):
        for i in range(6):
            for j in range(i + 1, 7):
                assert x.is_legal(w[i:j])


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="01", min_size=1, max_size=8))
def test_periodic_profile_consistency(seed):
    x = PeriodicOrbit(seed)
    prof = entropy_profile(x, 10)  # validation inside must pass
    assert prof.values[-1] <= x.period
    assert morse_hedlund_test(x, x.period + 1).certifies_periodic


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=7))
def test_word_set_matches_words_list(n):
    x = SftForbidden(BINARY, ["101"])
    assert x.word_set(n) == set(x.words_of_length(n))
    assert list(x.words_of_length(n)) == sorted(x.words_of_length(n))
