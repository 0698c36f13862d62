"""
Weighted sets and their power-sum moments.

For a set S = {s_1, ..., s_m} carrying weights w(s_j), the i-th moment is

    mu_i(S, w) = sum_j w(s_j) * s_j**i          (with 0**0 = 1)

and the excess index e_S(w) is the least i with mu_i != 0. For any nonzero
w the excess index is at most |S| - 1, because the first |S| moments are
the Vandermonde image of w.

Given weighted sets (A, w1) and (B, w2), the restricted sumset C = A +. B
inherits the weights

    w(c) = sum over a + b = c of w1(a) * w2(b) * (a - b)

and its moments gamma_n are a binomial convolution of the moments alpha of
(A, w1) and beta of (B, w2):

    gamma_n = sum_i C(n, i) alpha_{i+1} beta_{n-i} - sum_i C(n, i) alpha_i beta_{n+1-i}
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from errors import (
    AlignmentError,
    EmptyInput,
    InsufficientMoments,
    InternalInconsistency,
    ZeroWeights,
)
from exact_linalg import FpVector, mat_vec, solve, vandermonde
from prime_field import FieldElement, PrimeField, binomial_mod_p
from sumsets import FpSet, restricted_sumset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightSequence:
    """Weights aligned positionally with the sorted support."""

    support: FpSet
    weights: Tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.support):
            raise AlignmentError(
                f"{len(self.weights)} weights for a support of size {len(self.support)}"
            )
        p = self.support.field.p
        for w in self.weights:
            if w.field.p != p:
                raise AlignmentError(f"weight {w!r} does not belong to GF({p})")

    @classmethod
    def of(cls, support: FpSet, values: Sequence[int]) -> "WeightSequence":
        field = support.field
        return cls(support, tuple(field.element(v) for v in values))

    @property
    def field(self) -> PrimeField:
        return self.support.field

    @property
    def is_nonzero(self) -> bool:
        return any(self.weights)

    def values(self) -> List[int]:
        return [w.value for w in self.weights]

    def items(self) -> List[Tuple[int, int]]:
        return [(a, w.value) for a, w in zip(self.support, self.weights)]

    def __len__(self):
        return len(self.weights)


def _raw_power_sum(elements: Sequence[int], weights: Sequence[int], i: int, p: int) -> int:
    return sum(w * pow(a, i, p) for a, w in zip(elements, weights)) % p


def power_sum(S: FpSet, w: WeightSequence, i: int) -> FieldElement:
    """sum_j w(s_j) * s_j**i in the field."""
    if w.support != S:
        raise AlignmentError(f"weights are supported on {w.support}, not {S}")
    if i < 0:
        raise ValueError("moment index must be nonnegative")
    return S.field.element(_raw_power_sum(S.elements, w.values(), i, S.field.p))


class MomentProfile:
    """
    Lazily computed moments of a weighted set.

    Built from a WeightSequence the profile extends itself on demand; built
    from an explicit list (from_moments) it is fixed and asking past its end
    raises InsufficientMoments. Concurrent readers see identical values.
    """

    def __init__(self, weights: Optional[WeightSequence] = None,
                 moments: Optional[Sequence[FieldElement]] = None,
                 field: Optional[PrimeField] = None):
        if weights is None and moments is None:
            raise ValueError("a profile needs weights or explicit moments")
        self.weights = weights
        self.field = weights.field if weights is not None else field
        self._moments: List[FieldElement] = list(moments or [])
        self._lock = threading.Lock()

    @classmethod
    def of(cls, w: WeightSequence, upto: Optional[int] = None) -> "MomentProfile":
        profile = cls(weights=w)
        if upto is not None:
            profile.ensure(upto)
        return profile

    @classmethod
    def from_moments(cls, field: PrimeField, values: Sequence[int]) -> "MomentProfile":
        return cls(moments=[field.element(v) for v in values], field=field)

    @property
    def support(self) -> Optional[FpSet]:
        return self.weights.support if self.weights is not None else None

    @property
    def moments(self) -> Tuple[FieldElement, ...]:
        with self._lock:
            return tuple(self._moments)

    def ensure(self, n: int):
        """Make moments 0..n available."""
        with self._lock:
            if n < len(self._moments):
                return
            if self.weights is None:
                raise InsufficientMoments(
                    f"moment {n} requested, only {len(self._moments)} stored"
                )
            S = self.weights.support
            ws = self.weights.values()
            p = self.field.p
            for i in range(len(self._moments), n + 1):
                self._moments.append(FieldElement(_raw_power_sum(S.elements, ws, i, p), self.field))

    def __getitem__(self, i: int) -> FieldElement:
        self.ensure(i)
        with self._lock:
            return self._moments[i]

    def prefix(self, n: int) -> List[FieldElement]:
        """Moments 0..n-1."""
        if n <= 0:
            return []
        self.ensure(n - 1)
        with self._lock:
            return self._moments[:n]

    @property
    def excess(self) -> int:
        if self.weights is None:
            for i, mu in enumerate(self.moments):
                if mu:
                    return i
            raise InsufficientMoments("no nonzero moment among the stored ones")
        return excess_index(self.weights.support, self.weights)


def excess_index(S: FpSet, w: WeightSequence) -> int:
    """
    The least i with a nonzero i-th moment. Raises ZeroWeights for the zero
    sequence and InternalInconsistency if nothing nonzero turns up below |S|.
    """
    if w.support != S:
        raise AlignmentError(f"weights are supported on {w.support}, not {S}")
    if not w.is_nonzero:
        raise ZeroWeights(f"all weights on {S} vanish")
    p = S.field.p
    ws = w.values()
    for i in range(len(S)):
        if _raw_power_sum(S.elements, ws, i, p):
            return i
    raise InternalInconsistency(
        f"nonzero weights {ws} on {S} have vanishing moments 0..{len(S) - 1}"
    )


def extremal_weights(S: FpSet) -> WeightSequence:
    """
    The unique weights whose moments vanish for i <= |S| - 2 and equal 1 at
    i = |S| - 1: the solution of V x = (0, ..., 0, 1)^T with V the
    Vandermonde matrix of S.
    """
    if not S:
        raise EmptyInput("extremal weights need a nonempty support")
    field = S.field
    m = len(S)
    nodes = FpVector.of(field, S.elements)
    rhs = FpVector.of(field, [0] * (m - 1) + [1])
    V = vandermonde(nodes)
    x = solve(V, rhs)
    if mat_vec(V, x) != rhs:
        raise InternalInconsistency(f"extremal weights for {S} do not reproduce the target moments")
    return WeightSequence(S, tuple(x.entries))


def induced_weights(A: FpSet, w1: WeightSequence, B: FpSet, w2: WeightSequence) -> Tuple[FpSet, WeightSequence]:
    """
    Transfer (A, w1), (B, w2) onto C = A +. B.

    Every pair in A x B is visited; diagonal pairs carry the factor
    (a - b) = 0 and contribute nothing.
    """
    if w1.support != A or w2.support != B:
        raise AlignmentError("weights are not aligned with their sets")
    C = restricted_sumset(A, B)
    p = A.field.p
    acc: Dict[int, int] = {}
    for a, x in zip(A, w1.values()):
        for b, y in zip(B, w2.values()):
            c = (a + b) % p
            acc[c] = (acc.get(c, 0) + x * y * (a - b)) % p
    return C, WeightSequence.of(C, [acc[c] for c in C])


def _moment(profile, i: int) -> FieldElement:
    if isinstance(profile, MomentProfile):
        return profile[i]
    if i >= len(profile):
        raise InsufficientMoments(f"moment {i} requested, only {len(profile)} given")
    return profile[i]


def gamma_convolution(alpha, beta, n: int) -> FieldElement:
    """
    gamma_n from the moments of the two factors:

        sum_{i=0}^{n} C(n,i) alpha_{i+1} beta_{n-i} - sum_{i=0}^{n} C(n,i) alpha_i beta_{n+1-i}

    alpha and beta are MomentProfiles or plain sequences of FieldElements
    holding at least n + 2 entries.
    """
    if n < 0:
        raise ValueError("moment index must be nonnegative")
    if not isinstance(alpha, MomentProfile) and not alpha:
        raise InsufficientMoments(f"moment {n + 1} requested, no alpha moments given")
    field = alpha.field if isinstance(alpha, MomentProfile) else alpha[0].field
    total = field.zero
    for i in range(n + 1):
        c = binomial_mod_p(n, i, field)
        total = total + c * (_moment(alpha, i + 1) * _moment(beta, n - i)
                             - _moment(alpha, i) * _moment(beta, n + 1 - i))
    return total


def binomial_difference(n: int, r: int, s: int, field: PrimeField) -> FieldElement:
    """C(n, r) - C(n, s) mod p."""
    return binomial_mod_p(n, r, field) - binomial_mod_p(n, s, field)


def lemma42_leading(r: int, s: int, alpha_r1: FieldElement, beta_s1: FieldElement) -> FieldElement:
    """
    gamma_{r+s+1} when alpha_i = 0 for i <= r and beta_i = 0 for i <= s:

        (C(r+s+1, r) - C(r+s+1, s)) * alpha_{r+1} * beta_{s+1}
    """
    if r < 0 or s < 0:
        raise ValueError("r and s must be nonnegative")
    return binomial_difference(r + s + 1, r, s, alpha_r1.field) * alpha_r1 * beta_s1
