"""Spacetime patches, rectangle complexity, coding, and periodicity checks."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftlab.blockcode import compose, identity_code, shift_power_code, symbol_map_code
from shiftlab.errors import BudgetExceededError
from shiftlab.shiftlang import (
    Alphabet,
    FullShift,
    PeriodicOrbit,
    SftForbidden,
    SubstitutionShift,
    complexity,
)
from shiftlab.spacetime import (
    SpacetimePatch,
    build_patches,
    coding_check,
    cyr_kra_audit,
    horizontal_segment,
    rectangle_complexity,
    uniform_vertical_period,
)

BINARY = Alphabet.of("01")


@pytest.fixture(scope="module")
def full2():
    return FullShift(BINARY)


@pytest.fixture(scope="module")
def fibonacci():
    return SubstitutionShift(BINARY, {"0": "01", "1": "0"})


@pytest.fixture(scope="module")
def orbit01():
    return PeriodicOrbit("01")


def flip(domain):
    return symbol_map_code(domain, {"0": "1", "1": "0"})


# -- patch construction ------------------------------------------------------


def test_patch_shape_validation():
    with pytest.raises(ValueError):
        SpacetimePatch(2, 2, ("01",))
    with pytest.raises(ValueError):
        SpacetimePatch(2, 2, ("01", "0"))


def test_flip_patches_on_full_shift(full2):
    patches = build_patches(full2, flip(full2), 2, 3)
    assert len(patches) == 4
    for p in patches:
        assert p.rows[1] == p.rows[0].translate(str.maketrans("01", "10"))
        assert p.rows[2] == p.rows[0]


def test_shift_patches_on_fibonacci(fibonacci):
    patches = build_patches(fibonacci, shift_power_code(fibonacci, 1), 3, 2)
    assert len(patches) == complexity(fibonacci, 4) == 5
    for p in patches:
        # row 1 is row 0 advanced by one cell; they overlap on two columns
        assert p.rows[1][:2] == p.rows[0][1:]


def test_periodic_flip_patches(orbit01):
    patches = build_patches(orbit01, flip(orbit01), 2, 2)
    assert len(patches) == 2


def test_patch_provenance_ignored_in_identity(full2):
    a = SpacetimePatch(1, 1, ("0",), source_word="x", code_name="p")
    b = SpacetimePatch(1, 1, ("0",), source_word="y", code_name="q")
    assert a == b and hash(a) == hash(b)
    assert a.as_text() == "0"


def test_build_patches_budget(full2):
    with pytest.raises(BudgetExceededError):
        build_patches(full2, shift_power_code(full2, 1), 3, 12, word_budget=100)


def test_rectangle_complexity_matches_1d(full2, fibonacci, orbit01):
    for domain in (full2, fibonacci, orbit01):
        sigma = shift_power_code(domain, 1)
        for n in range(1, 7):
            assert rectangle_complexity(domain, sigma, n, 1) == complexity(domain, n)


def test_rectangle_complexity_shift_diagonals(fibonacci):
    # width-n, height-k windows of the shift spacetime are length n+k-1 words
    for n in range(1, 5):
        for k in range(1, 5):
            expected = complexity(fibonacci, n + k - 1)
            got = rectangle_complexity(fibonacci, shift_power_code(fibonacci, 1), n, k)
            assert got == expected == n + k


def test_rectangle_complexity_flip_powers(full2):
    for n in range(1, 6):
        for k in range(1, 5):
            assert rectangle_complexity(full2, flip(full2), n, k) == 2**n


def test_rectangle_complexity_monotone(fibonacci):
    sigma = shift_power_code(fibonacci, 1)
    vals = {
        (n, k): rectangle_complexity(fibonacci, sigma, n, k)
        for n in range(1, 6)
        for k in range(1, 5)
    }
    for n in range(1, 5):
        for k in range(1, 4):
            assert vals[(n + 1, k)] >= vals[(n, k)]
            assert vals[(n, k + 1)] >= vals[(n, k)]


# -- coding relation ------------------------------------------------------------


def test_horizontal_segment_codes_cell_above(fibonacci):
    sigma = shift_power_code(fibonacci, 1)
    for k in range(1, 5):
        patches = build_patches(fibonacci, sigma, 2 * k + 1, k + 1)
        assert coding_check(patches, horizontal_segment(k), [(0, k)])


def test_shortened_segment_fails_to_code(fibonacci):
    # the forward-shift spacetime propagates along one diagonal, so the
    # essential cell of the segment sits at the right end; the backward
    # shift mirrors it.  Between the two, losing either end cell breaks
    # the coding, and losing both breaks it for each.
    k = 3
    target = [(0, k)]
    full = horizontal_segment(k)
    fwd = build_patches(fibonacci, shift_power_code(fibonacci, 1), 2 * k + 1, k + 1)
    assert not coding_check(fwd, full[:-1], target)  # right cell dropped
    assert coding_check(fwd, full[1:], target)       # left cell is redundant here
    assert not coding_check(fwd, full[1:-1], target)
    back = build_patches(fibonacci, shift_power_code(fibonacci, -1), 2 * k + 1, k + 1)
    assert coding_check(back, full, target)
    assert not coding_check(back, full[1:], target)  # left cell dropped
    assert not coding_check(back, full[1:-1], target)


def test_flip_origin_codes_whole_column(full2):
    patches = build_patches(full2, flip(full2), 3, 4)
    for j in range(1, 4):
        assert coding_check(patches, [(0, 0)], [(0, j)])


def test_shift_origin_does_not_code_above(full2):
    patches = build_patches(full2, shift_power_code(full2, 1), 3, 2)
    assert not coding_check(patches, [(0, 0)], [(0, 1)])


def test_coding_transport(fibonacci):
    # if A codes B and A union B codes C then A codes C
    sigma = shift_power_code(fibonacci, 1)
    patches = build_patches(fibonacci, sigma, 5, 3)
    a = horizontal_segment(2)
    b = [(0, 1)]
    c = [(0, 2)]
    a_codes_b = coding_check(patches, a, b)
    ab_codes_c = coding_check(patches, tuple(a) + tuple(b), c)
    assert a_codes_b and ab_codes_c
    assert coding_check(patches, a, c)


def test_coding_check_bounds_and_emptiness(full2):
    patches = build_patches(full2, flip(full2), 2, 2)
    with pytest.raises(ValueError):
        coding_check(patches, [(5, 0)], [(0, 0)])
    with pytest.raises(ValueError):
        coding_check(patches, [(0, 0)], [(0, 7)])
    with pytest.raises(ValueError):
        coding_check((), [(0, 0)], [(0, 0)])


# -- rectangle-count periodicity audit --------------------------------------------


def test_cyr_kra_periodic_flip(orbit01):
    patches = build_patches(orbit01, flip(orbit01), 4, 4)
    verdict = cyr_kra_audit(patches, 4, 4)
    assert verdict.status == "BelowThreshold"
    assert verdict.found and verdict.vector == (2, 0)
    assert verdict.patch_count == 2


def test_cyr_kra_small_periodic_case(orbit01):
    patches = build_patches(orbit01, flip(orbit01), 2, 2)
    verdict = cyr_kra_audit(patches, 2, 2)
    assert verdict.status == "BelowThreshold"
    assert verdict.vector == (-1, 1)  # a diagonal period of the checkerboard


def test_cyr_kra_above_threshold(full2):
    patches = build_patches(full2, flip(full2), 3, 3)
    verdict = cyr_kra_audit(patches, 3, 3)
    assert verdict.status == "AboveThreshold"
    assert verdict.patch_count == 8
    assert not verdict.found


def test_cyr_kra_fibonacci_shift_diagonal(fibonacci):
    # P(7) = 8 = 4*4/2 sits exactly at the threshold and the shift's
    # diagonal propagation is the periodicity vector
    patches = build_patches(fibonacci, shift_power_code(fibonacci, 1), 4, 4)
    verdict = cyr_kra_audit(patches, 4, 4)
    assert verdict.patch_count == 8
    assert verdict.status == "BelowThreshold"
    assert verdict.vector == (-1, 1)


def test_cyr_kra_vector_really_holds(fibonacci):
    patches = build_patches(fibonacci, shift_power_code(fibonacci, 1), 4, 4)
    verdict = cyr_kra_audit(patches, 4, 4)
    di, dj = verdict.vector
    for p in patches:
        for y in range(4):
            for x in range(4):
                if 0 <= x + di < 4 and 0 <= y + dj < 4:
                    assert p.cell(x + di, y + dj) == p.cell(x, y)


# -- vertical periods ---------------------------------------------------------------


def test_vertical_period_flip(full2):
    patches = build_patches(full2, flip(full2), 2, 4)
    assert uniform_vertical_period(patches) == 2


def test_vertical_period_identity(full2):
    patches = build_patches(full2, identity_code(full2), 2, 4)
    assert uniform_vertical_period(patches) == 1


def test_vertical_period_mixed_synthetic():
    # columns of periods 2 and 3 in one synthetic family force lcm 6
    col_a = "010101"  # period 2
    col_b = "011011"  # period 3
    patch = SpacetimePatch(2, 6, tuple(a + b for a, b in zip(col_a, col_b)))
    assert uniform_vertical_period([patch]) == 6


def test_vertical_period_unconcluded_when_window_short(full2):
    # the shift spacetime has aperiodic columns; nothing is certified
    patches = build_patches(full2, shift_power_code(full2, 1), 2, 4)
    assert uniform_vertical_period(patches) is None


def test_vertical_period_rejects_empty():
    with pytest.raises(ValueError):
        uniform_vertical_period(())


# -- structural properties -------------------------------------------------------------


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
def test_patch_count_bounded_by_words(n, k):
    domain = SftForbidden(BINARY, ["11"])
    sigma = shift_power_code(domain, 1)
    patches = build_patches(domain, sigma, n, k)
    # patches are images of generating words, never more numerous
    assert len(patches) <= complexity(domain, n + 2 * (k - 1))
    for p in patches:
        assert p.width == n and p.height == k
        for row in p.rows:
            assert domain.is_legal(row)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=3))
def test_coding_reflexive_and_monotone(k):
    domain = FullShift(BINARY)
    patches = build_patches(domain, flip(domain), 3, k)
    cells = [(0, 0), (1, 0)]
    assert coding_check(patches, cells, cells)
    assert coding_check(patches, cells, [(0, 0)])
