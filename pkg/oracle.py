"""
Brute-force ground truth for the sumset bounds.

Subsets of Z/pZ are enumerated as bitmasks 1 .. 2**p - 1 in ascending order
and every sumset size is computed by direct enumeration with an integer
bitset. Nothing here touches the moment machinery; the only shared code is
the bound formulas in sumsets.py and the field constructor.

Exhaustive sweeps partition the range of first-set masks into contiguous
chunks, fan them out over a process pool and merge the partial reports in
chunk order, so the merged report does not depend on scheduling.
"""
from __future__ import annotations

import csv
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from datetime import datetime
from math import comb
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np
from tqdm import tqdm

from certificate import certify_anr, verify_certificate
from config import DEFAULT_PAIR_CAP, DEFAULT_RANDOM_SAMPLES, DEFAULT_SEED, SWEEP_CONFIG
from errors import BudgetExceeded, SumsetError
from prime_field import make_field
from sumsets import BOUNDS, FpSet

logger = logging.getLogger(__name__)

BOUND_KINDS = ('anr', 'eh', 'cd')
TIGHT_LIMIT = 10_000


@dataclass
class SweepReport:
    p: int
    bound_kind: str
    pairs_checked: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)
    tight_pairs: List[Tuple[List[int], List[int]]] = field(default_factory=list)
    tight_total: int = 0
    runtime_stats: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "SweepReport", tight_limit: int = TIGHT_LIMIT) -> "SweepReport":
        """Append another partial report; the caller merges in chunk order."""
        self.pairs_checked += other.pairs_checked
        self.violations.extend(other.violations)
        room = max(0, tight_limit - len(self.tight_pairs))
        self.tight_pairs.extend(other.tight_pairs[:room])
        self.tight_total += other.tight_total
        return self

    def to_json(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'bound_kind': self.bound_kind,
            'pairs_checked': self.pairs_checked,
            'violations': self.violations,
            'tight_pairs': [{'A': a, 'B': b} for a, b in self.tight_pairs],
            'tight_total': self.tight_total,
            'runtime_stats': self.runtime_stats,
        }


# ---------------------------------------------------------------------------
# Direct enumeration
# ---------------------------------------------------------------------------

def mask_elements(mask: int) -> List[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def restricted_size(A: List[int], B: List[int], p: int) -> int:
    bits = 0
    for a in A:
        for b in B:
            if a != b:
                bits |= 1 << ((a + b) % p)
    return bin(bits).count("1")


def classical_size(A: List[int], B: List[int], p: int) -> int:
    bits = 0
    for a in A:
        for b in B:
            bits |= 1 << ((a + b) % p)
    return bin(bits).count("1")


def _measure(kind: str, A: List[int], B: List[int], p: int) -> int:
    if kind == 'cd':
        return classical_size(A, B, p)
    return restricted_size(A, B, p)


def _record(report: SweepReport, kind: str, A: List[int], B: List[int], p: int, tight_limit: int):
    size = _measure(kind, A, B, p)
    bound = BOUNDS[kind](p, len(A), len(B))
    report.pairs_checked += 1
    if size < bound:
        report.violations.append({'A': A, 'B': B, 'size': size, 'bound': bound})
    elif size == bound:
        report.tight_total += 1
        if len(report.tight_pairs) < tight_limit:
            report.tight_pairs.append((A, B))


def _sweep_chunk(p: int, kind: str, lo: int, hi: int, max_size: Optional[int],
                 tight_limit: int) -> SweepReport:
    """Check every first-set mask in [lo, hi) against all admissible partners."""
    report = SweepReport(p, kind)
    full = 1 << p
    subsets = [mask_elements(mask) for mask in range(full)]
    if max_size is not None:
        admissible = [mask for mask in range(1, full) if len(subsets[mask]) <= max_size]
    else:
        admissible = list(range(1, full))

    for a_mask in range(lo, hi):
        A = subsets[a_mask]
        if max_size is not None and len(A) > max_size:
            continue
        if kind == 'eh':
            _record(report, kind, A, A, p, tight_limit)
            continue
        for b_mask in admissible:
            B = subsets[b_mask]
            if kind == 'anr' and len(A) == len(B):
                continue
            _record(report, kind, A, B, p, tight_limit)
    return report


def _chunks(total: int, parts: int) -> List[Tuple[int, int]]:
    """Split masks 1 .. total-1 into at most `parts` contiguous ranges."""
    start, stop = 1, total
    parts = max(1, min(parts, stop - start))
    step, extra = divmod(stop - start, parts)
    out = []
    for i in range(parts):
        end = start + step + (1 if i < extra else 0)
        out.append((start, end))
        start = end
    return out


def candidate_pairs(p: int, kind: str, size_filter: Optional[int] = None) -> int:
    """
    Work estimate for an exhaustive sweep: the mask pairs (masks for 'eh')
    whose sets pass size_filter, and never less than the 2**p - 1 masks
    enumerated to find them.
    """
    top = p if size_filter is None else max(0, min(p, size_filter))
    sets = sum(comb(p, size) for size in range(1, top + 1))
    pairs = sets if kind == 'eh' else sets * sets
    return max(pairs, (1 << p) - 1)


def sweep_exhaustive(p: int, bound_kind: str, size_filter: Optional[int] = None,
                     cap: int = DEFAULT_PAIR_CAP, workers: int = 1, progress: bool = False,
                     tight_limit: int = TIGHT_LIMIT) -> SweepReport:
    """
    Check the chosen bound on every nonempty pair (every set for 'eh').

    size_filter, when given, skips sets larger than that. Raises
    BudgetExceeded when the candidate pair count is above `cap`.
    """
    if bound_kind not in BOUND_KINDS:
        raise ValueError(f"unknown bound kind {bound_kind!r}; expected one of {BOUND_KINDS}")
    make_field(p)
    pairs = candidate_pairs(p, bound_kind, size_filter)
    if pairs > cap:
        raise BudgetExceeded(pairs, cap)

    start = time.time()
    started_at = datetime.now()
    chunks = _chunks(1 << p, workers * SWEEP_CONFIG['chunks_per_worker'] if workers > 1 else 1)
    logger.debug("sweep p=%d kind=%s: %d chunks over %d workers", p, bound_kind, len(chunks), workers)

    partials: List[Optional[SweepReport]] = [None] * len(chunks)
    bar = tqdm(total=len(chunks), desc=f"Sweep p={p} {bound_kind}", unit="chunk", disable=not progress)
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {
                executor.submit(_sweep_chunk, p, bound_kind, lo, hi, size_filter, tight_limit): i
                for i, (lo, hi) in enumerate(chunks)
            }
            for future in as_completed(futures):
                partials[futures[future]] = future.result()
                bar.update(1)
    else:
        for i, (lo, hi) in enumerate(chunks):
            partials[i] = _sweep_chunk(p, bound_kind, lo, hi, size_filter, tight_limit)
            bar.update(1)
    bar.close()

    report = SweepReport(p, bound_kind)
    for partial in partials:
        report.merge(partial, tight_limit)
    report.runtime_stats = {
        'mode': 'exhaustive',
        'seed': None,
        'workers': workers,
        'chunks': len(chunks),
        'size_filter': size_filter,
        'started_at': started_at.isoformat(timespec='seconds'),
        'elapsed_seconds': round(time.time() - start, 3),
    }
    return report


# ---------------------------------------------------------------------------
# Seeded random sampling
# ---------------------------------------------------------------------------

def _random_subset(rng: np.random.Generator, p: int, size: int) -> List[int]:
    if p <= 1 << 20:
        return sorted(int(x) for x in rng.choice(p, size=size, replace=False))
    chosen = set()
    while len(chosen) < size:
        chosen.add(int(rng.integers(0, p)))
    return sorted(chosen)


def random_pairs(p: int, count: int, seed: int, distinct_sizes: bool = True,
                 max_size: Optional[int] = None) -> Iterator[Tuple[List[int], List[int]]]:
    """`count` reproducible pairs of nonempty subsets; sizes drawn uniformly."""
    rng = np.random.default_rng(seed)
    top = min(p, max_size) if max_size else p
    if distinct_sizes and top < 2:
        return
    for _ in range(count):
        m = int(rng.integers(1, top + 1))
        k = int(rng.integers(1, top + 1))
        while distinct_sizes and k == m:
            k = int(rng.integers(1, top + 1))
        yield _random_subset(rng, p, m), _random_subset(rng, p, k)


def sweep_random(p: int, bound_kind: str, samples: int = DEFAULT_RANDOM_SAMPLES,
                 seed: int = DEFAULT_SEED, size_filter: Optional[int] = None,
                 progress: bool = False, tight_limit: int = TIGHT_LIMIT) -> SweepReport:
    """Seeded random version of sweep_exhaustive for moduli too large to exhaust."""
    if bound_kind not in BOUND_KINDS:
        raise ValueError(f"unknown bound kind {bound_kind!r}; expected one of {BOUND_KINDS}")
    make_field(p)
    start = time.time()
    started_at = datetime.now()
    report = SweepReport(p, bound_kind)
    pairs = random_pairs(p, samples, seed, distinct_sizes=bound_kind == 'anr', max_size=size_filter)
    for A, B in tqdm(pairs, total=samples, desc=f"Sample p={p} {bound_kind}", unit="pair",
                     disable=not progress):
        if bound_kind == 'eh':
            B = A
        _record(report, bound_kind, A, B, p, tight_limit)
    report.runtime_stats = {
        'mode': 'random',
        'seed': seed,
        'samples': samples,
        'workers': 1,
        'size_filter': size_filter,
        'started_at': started_at.isoformat(timespec='seconds'),
        'elapsed_seconds': round(time.time() - start, 3),
    }
    return report


# ---------------------------------------------------------------------------
# Certificates against the oracle
# ---------------------------------------------------------------------------

def exhaustive_sampler(p: int, max_size: Optional[int] = None) -> Iterator[Tuple[FpSet, FpSet]]:
    """Every pair of nonempty subsets with |A| != |B|, in mask order."""
    field_ = make_field(p)
    sets = [FpSet.from_mask(field_, mask) for mask in range(1, 1 << p)]
    if max_size is not None:
        sets = [S for S in sets if len(S) <= max_size]
    for A in sets:
        for B in sets:
            if len(A) != len(B):
                yield A, B


def random_sampler(p: int, count: int, seed: int, max_size: Optional[int] = None) -> Iterator[Tuple[FpSet, FpSet]]:
    field_ = make_field(p)
    for A, B in random_pairs(p, count, seed, distinct_sizes=True, max_size=max_size):
        yield FpSet(field_, tuple(A)), FpSet(field_, tuple(B))


def cross_check_certificates(p: int, sampler: Iterable[Tuple[FpSet, FpSet]], seed: Optional[int] = None,
                             progress: bool = False, tight_limit: int = TIGHT_LIMIT) -> SweepReport:
    """
    Certify and verify every sampled pair, then hold the claimed bound up
    against direct enumeration. Generator errors become violations.
    """
    make_field(p)
    start = time.time()
    report = SweepReport(p, 'anr')
    routes: Dict[str, int] = {}
    for A, B in tqdm(sampler, desc=f"Cross-check p={p}", unit="pair", disable=not progress):
        a, b = A.to_list(), B.to_list()
        report.pairs_checked += 1
        try:
            cert = certify_anr(A, B)
        except SumsetError as e:
            report.violations.append({'A': a, 'B': b, 'reason': f"{type(e).__name__}: {e}"})
            continue
        routes[cert.route] = routes.get(cert.route, 0) + 1
        verdict = verify_certificate(cert)
        truth = restricted_size(a, b, p)
        if not verdict.passed:
            report.violations.append({'A': a, 'B': b, 'reason': f"verification failed at {verdict.failed_check}"})
        elif cert.C_size != truth or cert.claimed_bound > truth:
            report.violations.append({'A': a, 'B': b, 'reason': 'certificate disagrees with enumeration',
                                      'size': truth, 'bound': cert.claimed_bound})
        elif truth == cert.claimed_bound:
            report.tight_total += 1
            if len(report.tight_pairs) < tight_limit:
                report.tight_pairs.append((a, b))
    report.runtime_stats = {
        'mode': 'certificates',
        'seed': seed,
        'routes': routes,
        'elapsed_seconds': round(time.time() - start, 3),
    }
    return report


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def save_report(report: SweepReport, path: Union[str, Path]):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(report.to_json(), f, indent=2)
        f.write("\n")


def write_tight_csv(report: SweepReport, path: Union[str, Path]):
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerow(['p', 'bound_kind', 'A', 'B', 'size_A', 'size_B'])
        for A, B in report.tight_pairs:
            writer.writerow([report.p, report.bound_kind, ' '.join(map(str, A)), ' '.join(map(str, B)),
                             len(A), len(B)])


def save_results(report: SweepReport, filename: Union[str, Path]):
    """Human-readable summary of a sweep."""
    stats = report.runtime_stats
    with open(filename, 'w', encoding='utf-8') as f:
        f.write("=" * 70 + "\n")
        f.write(f"Sumset bound sweep: kind={report.bound_kind}, p={report.p}\n")
        f.write("=" * 70 + "\n\n")

        f.write("CONFIGURATION\n")
        f.write("-" * 70 + "\n")
        f.write(f"Mode: {stats.get('mode')}\n")
        f.write(f"Seed: {stats.get('seed')}\n")
        f.write(f"Workers: {stats.get('workers', 1)}\n")
        f.write(f"Size filter: {stats.get('size_filter')}\n\n")

        f.write("RESULTS\n")
        f.write("-" * 70 + "\n")
        f.write(f"Pairs checked: {report.pairs_checked:,}\n")
        f.write(f"Violations: {len(report.violations)}\n")
        f.write(f"Tight pairs: {report.tight_total:,} ({len(report.tight_pairs):,} recorded)\n")
        f.write(f"Execution time: {stats.get('elapsed_seconds', 0):.2f} seconds\n\n")

        if report.violations:
            f.write("VIOLATIONS\n")
            f.write("-" * 70 + "\n")
            for v in report.violations[:50]:
                f.write(f"  {v}\n")
        else:
            f.write("✓ Bound holds on every checked pair\n")
        f.write("=" * 70 + "\n")
    print(f"[OK] Results saved to: {filename}")
