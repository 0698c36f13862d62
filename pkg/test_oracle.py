"""
Tests for the brute-force oracle and sweep harness
"""
import csv
import json

import pytest

from errors import BudgetExceeded
from oracle import (
    candidate_pairs,
    classical_size,
    cross_check_certificates,
    exhaustive_sampler,
    mask_elements,
    random_pairs,
    random_sampler,
    restricted_size,
    save_report,
    save_results,
    sweep_exhaustive,
    sweep_random,
    write_tight_csv,
)
from prime_field import make_field
from sumsets import FpSet, anr_bound, interval


def test_direct_enumeration():
    assert mask_elements(0b1011) == [0, 1, 3]
    assert restricted_size([1, 2], [1, 3], 5) == 3
    assert restricted_size([3], [3], 5) == 0
    assert classical_size([0, 1], [0, 1], 5) == 3


def test_anr_sweep_p5():
    report = sweep_exhaustive(5, 'anr')
    assert report.ok
    # all ordered pairs of nonempty subsets minus the equal-size ones
    equal = sum(c * c for c in [5, 10, 10, 5, 1])
    assert report.pairs_checked == 31 * 31 - equal
    assert report.runtime_stats['mode'] == 'exhaustive'


def test_eh_sweep_p5_reports_tight_interval():
    report = sweep_exhaustive(5, 'eh')
    assert report.ok
    assert report.pairs_checked == 31
    assert ([0, 1, 2], [0, 1, 2]) in report.tight_pairs


def test_anr_sweep_p2():
    report = sweep_exhaustive(2, 'anr')
    assert report.ok
    assert report.pairs_checked == 4
    for A, B in report.tight_pairs:
        assert {len(A), len(B)} == {1, 2}


def test_cd_sweep_p5():
    report = sweep_exhaustive(5, 'cd')
    assert report.ok
    assert report.pairs_checked == 31 * 31


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_progression_pairs_are_tight(p):
    F = make_field(p)
    for start, step in [(0, 1), (3, 1), (1, 2), (p - 1, p - 2)]:
        for m in range(1, p + 1):
            for k in range(1, p + 1):
                if m == k or m + k - 2 > p:
                    continue
                A = interval(F, start, m, step)
                B = interval(F, start, k, step)
                assert restricted_size(A.to_list(), B.to_list(), p) == anr_bound(p, m, k), (start, step, m, k)


def test_interval_pairs_show_up_as_tight_in_sweeps():
    report = sweep_exhaustive(7, 'anr', tight_limit=10 ** 6)
    tight = set((tuple(A), tuple(B)) for A, B in report.tight_pairs)
    assert ((0, 1, 2), (0, 1, 2, 3, 4)) in tight
    assert ((0,), (0, 1)) in tight


def test_parallel_sweep_matches_serial():
    serial = sweep_exhaustive(5, 'anr', workers=1)
    parallel = sweep_exhaustive(5, 'anr', workers=2)
    assert parallel.pairs_checked == serial.pairs_checked
    assert parallel.tight_pairs == serial.tight_pairs
    assert parallel.tight_total == serial.tight_total
    assert parallel.violations == serial.violations == []


def test_budget_guard():
    assert candidate_pairs(13, 'anr') > 2 ** 24
    with pytest.raises(BudgetExceeded):
        sweep_exhaustive(13, 'anr')
    with pytest.raises(BudgetExceeded):
        sweep_exhaustive(7, 'anr', cap=100)


def test_budget_counts_only_sets_passing_the_size_filter():
    assert candidate_pairs(13, 'anr', 2) == 91 ** 2
    assert candidate_pairs(13, 'eh', 2) == 2 ** 13 - 1
    report = sweep_exhaustive(13, 'anr', size_filter=2)
    assert report.ok
    assert report.pairs_checked == 2 * 13 * 78


def test_random_pairs_are_reproducible():
    first = list(random_pairs(13, 50, seed=7))
    second = list(random_pairs(13, 50, seed=7))
    assert first == second
    for A, B in first:
        assert len(A) != len(B)
        assert A == sorted(set(A)) and all(0 <= x < 13 for x in A)


def test_random_sweep_p13():
    report = sweep_random(13, 'anr', samples=2000, seed=42)
    assert report.ok
    assert report.pairs_checked == 2000
    assert report.runtime_stats['seed'] == 42


def test_cross_check_worked_example():
    F = make_field(5)
    pair = [(FpSet.of(F, [1, 2]), FpSet.of(F, [0, 1, 2]))]
    report = cross_check_certificates(5, pair)
    assert report.ok
    assert report.pairs_checked == 1
    assert report.tight_pairs == [([1, 2], [0, 1, 2])]


def test_cross_check_exhaustive_p5():
    report = cross_check_certificates(5, exhaustive_sampler(5))
    assert report.ok
    assert report.pairs_checked == 31 * 31 - sum(c * c for c in [5, 10, 10, 5, 1])


def test_cross_check_random_p11():
    report = cross_check_certificates(11, random_sampler(11, 1000, seed=11), seed=11)
    assert report.ok
    assert report.pairs_checked == 1000


def test_cross_check_records_generator_errors():
    F = make_field(5)
    report = cross_check_certificates(5, [(FpSet.of(F, [1, 2]), FpSet.of(F, [3, 4]))])
    assert not report.ok
    assert 'EqualSizes' in report.violations[0]['reason']


def test_report_outputs(tmp_path):
    report = sweep_exhaustive(5, 'eh')
    save_report(report, tmp_path / "report.json")
    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc['pairs_checked'] == 31 and doc['violations'] == []

    write_tight_csv(report, tmp_path / "tight.csv")
    with open(tmp_path / "tight.csv", newline='') as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == len(report.tight_pairs)

    save_results(report, tmp_path / "_sweep_results.txt")
    assert "Violations: 0" in (tmp_path / "_sweep_results.txt").read_text(encoding='utf-8')
