from itertools import combinations, permutations
from math import factorial

import pytest

from jacobigrammar import permstats
from jacobigrammar.permstats import (
    BACKENDS, EnumerationBoundError, STATISTICS, descents, descents_type_b, double_factorial,
    euler_numbers, longest_alt_subseq_of, matchings_odd_smaller,
)

EULER = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521]


def eulerian_row(n):
    row = [1]
    for m in range(2, n + 1):
        row = [(k + 1) * (row[k] if k < len(row) else 0) + (m - k) * (row[k - 1] if k else 0)
               for k in range(m)]
    return row


def naive_las(perm):
    # longest subsequence w1 > w2 < w3 > ... , by trying every subsequence
    for size in range(len(perm), 0, -1):
        for sub in combinations(perm, size):
            if all((sub[i] > sub[i + 1]) == (i % 2 == 0) for i in range(size - 1)):
                return size
    return 0


def test_euler_numbers():
    assert euler_numbers(10) == EULER


@pytest.mark.parametrize("n", range(1, 9))
def test_descents_are_eulerian(n):
    assert descents(n).as_list() == eulerian_row(n)


def test_type_b_eulerian():
    assert descents_type_b(1).as_list() == [1, 1]
    assert descents_type_b(2).as_list() == [1, 6, 1]
    assert descents_type_b(3).as_list() == [1, 23, 23, 1]
    assert descents_type_b(4).as_list() == [1, 76, 230, 76, 1]


@pytest.mark.parametrize("n", range(0, 9))
def test_matching_totals(n):
    assert matchings_odd_smaller(n).total() == double_factorial(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_longest_alt_subseq_against_naive(n):
    for perm in permutations(range(1, n + 1)):
        assert longest_alt_subseq_of(perm) == naive_las(perm)


def test_single_permutation_stats():
    p = (3, 1, 4, 2, 5)
    assert permstats.interior_peaks_of(p) == 1
    assert permstats.left_peaks_of(p) == 2
    assert permstats.descents_of(p) == 2
    assert permstats.alternating_runs_of(p) == 4
    assert permstats.up_down_runs_of(p) == 5
    # cycles (1 3 4 2)(5): values v with pi^{-1}(v) < v > pi(v) are 4 only
    assert permstats.cycle_peaks_of(p) == (0, 1)


@pytest.mark.parametrize("name", sorted(STATISTICS))
def test_totals_match_domain(name):
    n = 6
    assert STATISTICS[name](n).total() == permstats.domain_size(
        {"descents-b": "descents_type_b", "matchings-odd-smaller": "matchings_odd_smaller"}.get(name, name), n)


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
@pytest.mark.parametrize("n", range(1, 9))
def test_compiled_matches_python(n):
    py, cc = BACKENDS["python"], BACKENDS["compiled"]
    assert py.symmetric_stats(n) == cc.symmetric_stats(n)
    assert py.symmetric_stats(n, n) == cc.symmetric_stats(n, n)
    if n <= 6:
        assert list(py.signed_descents(n)) == list(cc.signed_descents(n))
    assert list(py.matchings_odd_smaller(n)) == list(cc.matchings_odd_smaller(n))


def test_split_enumeration_adds_up():
    kern = BACKENDS[permstats.BACKEND]
    whole = kern.symmetric_stats(6)
    merged = permstats._merge([kern.symmetric_stats(6, f) for f in range(1, 7)], 6)
    assert merged == whole


def test_bounds():
    with pytest.raises(EnumerationBoundError):
        permstats.symmetric_summary(permstats.MAX_SYMMETRIC + 1)
    with pytest.raises(EnumerationBoundError):
        descents_type_b(permstats.MAX_SIGNED + 1)
    with pytest.raises(EnumerationBoundError):
        matchings_odd_smaller(permstats.MAX_MATCHING + 1)
    with pytest.raises(ValueError):
        permstats.interior_peaks(0, backend="gpu")


def test_factorial_totals():
    assert sum(permstats.cycle_peaks_xy(7).counts.values()) == factorial(7)


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_first_entry_out_of_range(backend):
    with pytest.raises(ValueError):
        BACKENDS[backend].symmetric_stats(3, 4)
