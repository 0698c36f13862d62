"""
Certificates for the restricted-sumset lower bound

    |A +. B| >= min{p, |A| + |B| - 2}        for |A| != |B|

and for its diagonal consequence |A +. A| >= min{p, 2|A| - 3}.

How a certificate is produced:
1. |A| = 1 or |B| = 1 (singleton route): the sums a0 + b with b != a0 are
   listed explicitly; there are |B| - 1 of them and they are distinct.
2. |A| + |B| - 2 > p (reduced-then-main): drop elements until
   |A'| + |B'| - 2 = p with |A'| != |B'|, then continue with (A', B').
3. main: give A and B their extremal weights, so alpha vanishes below
   m - 1 and beta below k - 1. The induced weights on C = A +. B then have
   gamma_n = 0 for n < m + k - 3 and

       gamma_{m+k-3} = (C(m+k-3, m-2) - C(m+k-3, k-2)) alpha_{m-1} beta_{k-1}

   which is nonzero because m != k and m + k - 3 <= p - 1. The excess index
   of C is therefore m + k - 3 <= |C| - 1.

The verifier at the bottom of this module trusts nothing but p, the sets,
the route, the reduction and the weights: every moment is recomputed with
plain integer arithmetic and compared with what the certificate stores.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from errors import (
    CertificateFormatError,
    EmptyInput,
    EqualSizes,
    InternalInconsistency,
    ModulusMismatch,
    NotOversized,
    SumsetError,
)
from moment_engine import (
    MomentProfile,
    WeightSequence,
    binomial_difference,
    excess_index,
    extremal_weights,
    induced_weights,
)
from prime_field import FieldElement, binomial_mod_p, make_field
from sumsets import FpSet, anr_bound, eh_bound, restricted_sumset

logger = logging.getLogger(__name__)

ROUTE_SINGLETON = 'singleton'
ROUTE_MAIN = 'main'
ROUTE_REDUCED = 'reduced-then-main'
ROUTE_EH = 'eh-corollary'
ROUTES = (ROUTE_SINGLETON, ROUTE_MAIN, ROUTE_REDUCED, ROUTE_EH)

CERTIFICATE_FIELDS = frozenset({
    'p', 'A', 'B', 'route', 'reduction', 'w1', 'w2', 'alpha', 'beta', 'gamma',
    'e_C', 'binomial_check', 'claimed_bound', 'C', 'C_size', 'witness',
})
# the witness may be left out; only singleton routes need one
OPTIONAL_FIELDS = frozenset({'witness'})
REDUCTION_FIELDS = frozenset({'removed_from_A', 'removed_from_B', 'A_prime', 'B_prime', 'd', 'd1', 'd2'})
BINOMIAL_FIELDS = frozenset({'n', 'r_choice', 's_choice', 'value'})


@dataclass(frozen=True)
class Reduction:
    removed_from_A: FpSet
    removed_from_B: FpSet
    A_prime: FpSet
    B_prime: FpSet
    d: int
    d1: int
    d2: int


@dataclass(frozen=True)
class BinomialCheck:
    n: int
    r_choice: int
    s_choice: int
    value: FieldElement


@dataclass(frozen=True)
class Certificate:
    p: int
    A: FpSet
    B: FpSet
    route: str
    claimed_bound: int
    C: FpSet
    C_size: int
    reduction: Optional[Reduction] = None
    w1: Optional[WeightSequence] = None
    w2: Optional[WeightSequence] = None
    alpha: Tuple[FieldElement, ...] = ()
    beta: Tuple[FieldElement, ...] = ()
    gamma: Tuple[FieldElement, ...] = ()
    e_C: Optional[int] = None
    binomial_check: Optional[BinomialCheck] = None
    witness: Tuple[int, ...] = field(default=())

    @property
    def reduced_pair(self) -> Tuple[FpSet, FpSet]:
        """The pair the moment argument runs on."""
        if self.reduction is not None:
            return self.reduction.A_prime, self.reduction.B_prime
        return self.A, self.B


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------

def _drop_largest(S: FpSet, count: int) -> Tuple[FpSet, FpSet]:
    """Split S into (kept, removed) where removed holds the `count` largest residues."""
    cut = len(S) - count
    return FpSet(S.field, S.elements[:cut]), FpSet(S.field, S.elements[cut:])


def reduce_oversized(A: FpSet, B: FpSet) -> Reduction:
    """
    Shrink (A, B) with |A| + |B| - 2 = p + d, d >= 1, to (A', B') with
    |A'| + |B'| - 2 = p and |A'| != |B'|. The smaller set loses ceil(d/2)
    elements and the larger floor(d/2); the largest residues go first.
    """
    if A.field.p != B.field.p:
        raise ModulusMismatch(A.field.p, B.field.p)
    p = A.field.p
    m, k = len(A), len(B)
    if m == k:
        raise EqualSizes(m)
    d = m + k - 2 - p
    if d < 1:
        raise NotOversized(f"|A| + |B| - 2 = {m + k - 2} <= p = {p}")
    d1, d2 = d // 2, d - d // 2

    if m < k:
        A_prime, removed_A = _drop_largest(A, d2)
        B_prime, removed_B = _drop_largest(B, d1)
    else:
        A_prime, removed_A = _drop_largest(A, d1)
        B_prime, removed_B = _drop_largest(B, d2)

    if not A_prime or not B_prime or len(A_prime) == len(B_prime) \
            or len(A_prime) + len(B_prime) - 2 != p:
        raise InternalInconsistency(
            f"reduction of sizes ({m}, {k}) over p={p} produced ({len(A_prime)}, {len(B_prime)})"
        )
    logger.debug("reduced (%d, %d) -> (%d, %d) with d=%d", m, k, len(A_prime), len(B_prime), d)
    return Reduction(removed_A, removed_B, A_prime, B_prime, d, d1, d2)


def _singleton_witness(A: FpSet, B: FpSet) -> Tuple[int, ...]:
    if len(A) == 1:
        x0, other = A.elements[0], B
    else:
        x0, other = B.elements[0], A
    p = A.field.p
    sums = [(x0 + t) % p for t in other if t != x0]
    return tuple(sums[:len(other) - 1])


def certify_anr(A: FpSet, B: FpSet) -> Certificate:
    """Build the certificate for |A +. B| >= min{p, |A| + |B| - 2}."""
    if A.field.p != B.field.p:
        raise ModulusMismatch(A.field.p, B.field.p)
    if not A or not B:
        raise EmptyInput("A and B must be nonempty")
    m, k = len(A), len(B)
    if m == k:
        raise EqualSizes(m)

    field_ = A.field
    p = field_.p
    C = restricted_sumset(A, B)
    bound = anr_bound(p, m, k)

    if min(m, k) == 1:
        witness = _singleton_witness(A, B)
        if len(set(witness)) != max(m, k) - 1 or not set(witness) <= set(C.elements):
            raise InternalInconsistency(f"singleton witness {witness} does not certify {A} +. {B}")
        logger.debug("singleton route for %s +. %s", A, B)
        return Certificate(p=p, A=A, B=B, route=ROUTE_SINGLETON, claimed_bound=bound,
                           C=C, C_size=len(C), witness=witness)

    reduction = None
    route = ROUTE_MAIN
    if m + k - 2 >= p + 1:
        reduction = reduce_oversized(A, B)
        route = ROUTE_REDUCED
    A_star, B_star = (reduction.A_prime, reduction.B_prime) if reduction else (A, B)
    ms, ks = len(A_star), len(B_star)
    n = ms + ks - 3

    w1 = extremal_weights(A_star)
    w2 = extremal_weights(B_star)
    alpha = MomentProfile.of(w1)
    beta = MomentProfile.of(w2)
    C_star, w = induced_weights(A_star, w1, B_star, w2)
    gamma = MomentProfile.of(w)

    check = BinomialCheck(n, ms - 2, ks - 2, binomial_difference(n, ms - 2, ks - 2, field_))
    if not check.value:
        raise InternalInconsistency(f"C({n},{ms - 2}) - C({n},{ks - 2}) vanishes mod {p}")
    e_C = excess_index(C_star, w)
    if e_C != n:
        raise InternalInconsistency(f"excess index of C is {e_C}, expected {n}")
    if len(C) < bound:
        raise InternalInconsistency(f"|A +. B| = {len(C)} below the bound {bound}")

    logger.debug("%s route for %s +. %s: e_C=%d", route, A, B, e_C)
    return Certificate(
        p=p, A=A, B=B, route=route, claimed_bound=bound, C=C, C_size=len(C),
        reduction=reduction, w1=w1, w2=w2,
        alpha=tuple(alpha.prefix(ms)), beta=tuple(beta.prefix(ks)), gamma=tuple(gamma.prefix(n + 1)),
        e_C=e_C, binomial_check=check,
    )


def certify_eh(A: FpSet) -> Certificate:
    """
    Certificate for |A +. A| >= min{p, 2|A| - 3}, via A' = A minus its
    smallest element: A +. A = A +. A' and |A'| != |A|.
    """
    if not A:
        raise EmptyInput("A must be nonempty")
    p = A.field.p
    if len(A) == 1:
        empty = FpSet(A.field, ())
        return Certificate(p=p, A=A, B=empty, route=ROUTE_EH, claimed_bound=0, C=empty, C_size=0)

    a0 = A.elements[0]
    A_prime = A.without(a0)
    C = restricted_sumset(A, A)
    if C != restricted_sumset(A, A_prime):
        raise InternalInconsistency(f"A +. A differs from A +. (A minus {a0}) for A = {A}")
    inner = certify_anr(A, A_prime)
    return replace(inner, route=ROUTE_EH, claimed_bound=eh_bound(p, len(A)))


# ---------------------------------------------------------------------------
# JSON format
# ---------------------------------------------------------------------------

def _weights_json(w: Optional[WeightSequence]):
    if w is None:
        return None
    return [{'element': a, 'weight': x} for a, x in w.items()]


def _reduction_json(r: Optional[Reduction]):
    if r is None:
        return None
    return {
        'removed_from_A': r.removed_from_A.to_list(),
        'removed_from_B': r.removed_from_B.to_list(),
        'A_prime': r.A_prime.to_list(),
        'B_prime': r.B_prime.to_list(),
        'd': r.d,
        'd1': r.d1,
        'd2': r.d2,
    }


def certificate_to_json(cert: Certificate) -> Dict[str, Any]:
    bc = cert.binomial_check
    return {
        'p': cert.p,
        'A': cert.A.to_list(),
        'B': cert.B.to_list(),
        'route': cert.route,
        'reduction': _reduction_json(cert.reduction),
        'w1': _weights_json(cert.w1),
        'w2': _weights_json(cert.w2),
        'alpha': [x.value for x in cert.alpha],
        'beta': [x.value for x in cert.beta],
        'gamma': [x.value for x in cert.gamma],
        'e_C': cert.e_C,
        'binomial_check': None if bc is None else {
            'n': bc.n, 'r_choice': bc.r_choice, 's_choice': bc.s_choice, 'value': bc.value.value,
        },
        'claimed_bound': cert.claimed_bound,
        'C': cert.C.to_list(),
        'C_size': cert.C_size,
        'witness': list(cert.witness),
    }


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _require_keys(doc, expected: frozenset, where: str, optional: frozenset = frozenset()):
    if not isinstance(doc, Mapping):
        raise CertificateFormatError(f"{where} must be a JSON object")
    unknown = set(doc) - expected
    missing = expected - optional - set(doc)
    if unknown:
        raise CertificateFormatError(f"unknown field(s) in {where}: {sorted(unknown)}")
    if missing:
        raise CertificateFormatError(f"missing field(s) in {where}: {sorted(missing)}")


def _int_list(value, name: str) -> List[int]:
    if not isinstance(value, list) or not all(_is_int(x) for x in value):
        raise CertificateFormatError(f"{name} must be an array of integers")
    return value


def _residue_list(value, name: str, p: int) -> List[int]:
    values = _int_list(value, name)
    if any(not 0 <= x < p for x in values):
        raise CertificateFormatError(f"{name} holds a value outside [0, {p})")
    return values


def _set_from(values, name: str, field_, allow_empty=False) -> FpSet:
    values = _residue_list(values, name, field_.p)
    if values != sorted(set(values)):
        raise CertificateFormatError(f"{name} must be strictly increasing")
    if not values and not allow_empty:
        raise CertificateFormatError(f"{name} must be nonempty")
    return FpSet(field_, tuple(values))


def _weights_from(value, name: str, field_) -> Optional[List[Tuple[int, int]]]:
    if value is None:
        return None
    if not isinstance(value, list):
        raise CertificateFormatError(f"{name} must be an array of element/weight pairs")
    pairs = []
    for item in value:
        _require_keys(item, frozenset({'element', 'weight'}), name)
        a, w = item['element'], item['weight']
        if not _is_int(a) or not _is_int(w) or not 0 <= a < field_.p or not 0 <= w < field_.p:
            raise CertificateFormatError(f"{name} holds a non-residue entry {item!r}")
        pairs.append((a, w))
    return pairs


def certificate_from_json(doc: Mapping[str, Any]) -> Certificate:
    """Parse and type-check a certificate object; rejects unknown fields."""
    _require_keys(doc, CERTIFICATE_FIELDS, 'certificate', OPTIONAL_FIELDS)
    if not _is_int(doc['p']):
        raise CertificateFormatError("p must be an integer")
    try:
        field_ = make_field(doc['p'])
    except SumsetError as e:
        raise CertificateFormatError(str(e)) from e
    p = field_.p
    if doc['route'] not in ROUTES:
        raise CertificateFormatError(f"unknown route {doc['route']!r}")

    A = _set_from(doc['A'], 'A', field_)
    B = _set_from(doc['B'], 'B', field_, allow_empty=doc['route'] == ROUTE_EH)
    C = _set_from(doc['C'], 'C', field_, allow_empty=True)

    reduction = None
    if doc['reduction'] is not None:
        r = doc['reduction']
        _require_keys(r, REDUCTION_FIELDS, 'reduction')
        if not all(_is_int(r[key]) for key in ('d', 'd1', 'd2')):
            raise CertificateFormatError("reduction sizes must be integers")
        reduction = Reduction(
            _set_from(r['removed_from_A'], 'reduction.removed_from_A', field_, allow_empty=True),
            _set_from(r['removed_from_B'], 'reduction.removed_from_B', field_, allow_empty=True),
            _set_from(r['A_prime'], 'reduction.A_prime', field_),
            _set_from(r['B_prime'], 'reduction.B_prime', field_),
            r['d'], r['d1'], r['d2'],
        )

    def weights(name, support_default):
        pairs = _weights_from(doc[name], name, field_)
        if pairs is None:
            return None
        support = FpSet(field_, tuple(a for a, _ in pairs)) if pairs else support_default
        return WeightSequence.of(support, [w for _, w in pairs])

    try:
        w1 = weights('w1', A)
        w2 = weights('w2', B)
    except SumsetError as e:
        raise CertificateFormatError(str(e)) from e

    check = None
    if doc['binomial_check'] is not None:
        bc = doc['binomial_check']
        _require_keys(bc, BINOMIAL_FIELDS, 'binomial_check')
        if not all(_is_int(bc[key]) for key in BINOMIAL_FIELDS) or not 0 <= bc['value'] < p:
            raise CertificateFormatError("binomial_check entries must be integers, value a residue")
        check = BinomialCheck(bc['n'], bc['r_choice'], bc['s_choice'], field_.element(bc['value']))

    for key in ('claimed_bound', 'C_size'):
        if not _is_int(doc[key]):
            raise CertificateFormatError(f"{key} must be an integer")
    if doc['e_C'] is not None and not _is_int(doc['e_C']):
        raise CertificateFormatError("e_C must be an integer or null")

    return Certificate(
        p=p, A=A, B=B, route=doc['route'],
        claimed_bound=doc['claimed_bound'], C=C, C_size=doc['C_size'],
        reduction=reduction, w1=w1, w2=w2,
        alpha=tuple(field_.element(x) for x in _residue_list(doc['alpha'], 'alpha', p)),
        beta=tuple(field_.element(x) for x in _residue_list(doc['beta'], 'beta', p)),
        gamma=tuple(field_.element(x) for x in _residue_list(doc['gamma'], 'gamma', p)),
        e_C=doc['e_C'], binomial_check=check,
        witness=tuple(_residue_list(doc.get('witness', []), 'witness', p)),
    )


def save_certificate(cert: Certificate, path: Union[str, Path]):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(certificate_to_json(cert), f, indent=2)
        f.write("\n")


def load_certificate(path: Union[str, Path]) -> Dict[str, Any]:
    """Read the raw certificate object; verify_certificate does the checking."""
    with open(path, encoding='utf-8') as f:
        try:
            return json.load(f)
        except (UnicodeDecodeError, ValueError, RecursionError) as e:
            # JSONDecodeError, bad UTF-8 and over-long integer literals all land here
            raise CertificateFormatError(f"{path}: not valid JSON ({e})") from e


# ---------------------------------------------------------------------------
# Independent verification
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail}


@dataclass
class VerificationReport:
    verdict: str
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return self.verdict == 'pass'

    @property
    def failed_check(self) -> Optional[str]:
        for c in self.checks:
            if not c.passed:
                return c.name
        return None

    def to_json(self):
        return {
            'verdict': self.verdict,
            'failed_check': self.failed_check,
            'checks': [c.to_json() for c in self.checks],
        }


class _CheckFailed(Exception):
    pass


def _moments(elements, weights, count, p) -> List[int]:
    return [sum(w * pow(a, i, p) for a, w in zip(elements, weights)) % p for i in range(count)]


def _restricted(A, B, p):
    return sorted({(a + b) % p for a in A for b in B if a != b})


class _Verifier:
    def __init__(self, doc):
        self.doc = doc
        self.checks: List[CheckResult] = []

    def check(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(CheckResult(name, bool(ok), detail))
        if not ok:
            raise _CheckFailed(name)

    def run(self):
        doc = self.doc
        try:
            cert = certificate_from_json(doc)
        except CertificateFormatError as e:
            self.check('schema', False, str(e))
        self.check('schema', True)
        p = cert.p
        A, B = list(cert.A), list(cert.B)
        m, k = len(A), len(B)
        route = cert.route

        # shape of the instance and route selection
        if route == ROUTE_EH:
            expected_B = A[1:]
            self.check('eh-shape', B == expected_B, f"B should be A minus {A[0]}")
            target = _restricted(A, A, p)
            self.check('eh-identity', m == 1 or target == _restricted(A, B, p),
                       "A +. A must equal A +. (A minus min A)")
            bound = eh_bound(p, m)
        else:
            self.check('distinct-sizes', m != k, f"|A| = {m}, |B| = {k}")
            target = _restricted(A, B, p)
            bound = anr_bound(p, m, k)
            if min(m, k) == 1:
                expected_route = ROUTE_SINGLETON
            elif m + k - 2 >= p + 1:
                expected_route = ROUTE_REDUCED
            else:
                expected_route = ROUTE_MAIN
            self.check('route', route == expected_route, f"expected {expected_route}, got {route}")

        self.check('claimed-bound-formula', cert.claimed_bound == bound,
                   f"stored {cert.claimed_bound}, formula gives {bound}")

        if m == 1 and route == ROUTE_EH:
            self._check_no_moments(cert)
            self.check('trivial-witness', not cert.witness and bound == 0)
        elif min(m, k) == 1:
            self._check_singleton(cert, A, B, p)
        else:
            self._check_main(cert, A, B, p)

        self.check('C-enumeration', list(cert.C) == target, f"recomputed {target}")
        self.check('C-size', cert.C_size == len(target), f"recomputed {len(target)}")
        self.check('bound-inequality', len(target) >= bound, f"|C| = {len(target)}, bound = {bound}")

    def _check_no_moments(self, cert: Certificate):
        self.check('no-moments',
                   cert.w1 is None and cert.w2 is None and not cert.alpha and not cert.beta
                   and not cert.gamma and cert.e_C is None and cert.binomial_check is None
                   and cert.reduction is None,
                   "singleton routes carry no weights, moments or reduction")

    def _check_singleton(self, cert: Certificate, A, B, p):
        self._check_no_moments(cert)
        x0, other = (A[0], B) if len(A) == 1 else (B[0], A)
        witness = list(cert.witness)
        ok = (len(witness) == len(other) - 1 and len(set(witness)) == len(witness)
              and all((w - x0) % p in other and (w - x0) % p != x0 for w in witness))
        self.check('singleton-witness', ok, f"need {len(other) - 1} distinct sums {x0} + b, b != {x0}")
        self.check('witness-in-C', set(witness) <= set(_restricted(A, B, p)))

    def _check_reduction(self, cert: Certificate, A, B, p):
        m, k = len(A), len(B)
        oversized = m + k - 2 >= p + 1
        r = cert.reduction
        if not oversized:
            self.check('reduction', r is None, "reduction present on an instance that fits")
            return A, B
        self.check('reduction', r is not None, "oversized instance without a reduction")
        d = m + k - 2 - p
        d1, d2 = d // 2, d - d // 2
        self.check('reduction-split', (r.d, r.d1, r.d2) == (d, d1, d2),
                   f"expected d={d}, d1={d1}, d2={d2}")
        A_prime, B_prime = list(r.A_prime), list(r.B_prime)
        drop_A, drop_B = (d2, d1) if m < k else (d1, d2)
        ok = (sorted(A_prime + list(r.removed_from_A)) == A
              and sorted(B_prime + list(r.removed_from_B)) == B
              and len(r.removed_from_A) == drop_A and len(r.removed_from_B) == drop_B)
        self.check('reduction-subsets', ok, "A' and B' must be A and B minus the removed elements")
        self.check('reduction-sizes',
                   A_prime and B_prime and len(A_prime) != len(B_prime)
                   and len(A_prime) + len(B_prime) - 2 == p,
                   f"|A'| = {len(A_prime)}, |B'| = {len(B_prime)}")
        self.check('reduction-monotone',
                   set(_restricted(A_prime, B_prime, p)) <= set(_restricted(A, B, p)))
        return A_prime, B_prime

    def _check_main(self, cert: Certificate, A, B, p):
        field_ = make_field(p)
        A_star, B_star = self._check_reduction(cert, A, B, p)
        m, k = len(A_star), len(B_star)
        n = m + k - 3

        self.check('weights-aligned',
                   cert.w1 is not None and cert.w2 is not None
                   and list(cert.w1.support) == A_star and list(cert.w2.support) == B_star,
                   "w1 and w2 must be supported on the (reduced) A and B")
        w1, w2 = cert.w1.values(), cert.w2.values()
        self.check('nonzero-sequence', any(w1) and any(w2), "w1 and w2 must not vanish identically")

        alpha = _moments(A_star, w1, n + 2, p)
        beta = _moments(B_star, w2, n + 2, p)
        self.check('alpha-stored', [x.value for x in cert.alpha] == alpha[:m], f"recomputed {alpha[:m]}")
        self.check('alpha-vanishing', not any(alpha[:m - 1]) and alpha[m - 1] != 0,
                   f"alpha_0..alpha_{m - 1} = {alpha[:m]}")
        self.check('beta-stored', [x.value for x in cert.beta] == beta[:k], f"recomputed {beta[:k]}")
        self.check('beta-vanishing', not any(beta[:k - 1]) and beta[k - 1] != 0,
                   f"beta_0..beta_{k - 1} = {beta[:k]}")

        # gamma straight from the definition
        induced: Dict[int, int] = {}
        for a, x in zip(A_star, w1):
            for b, y in zip(B_star, w2):
                if a != b:
                    c = (a + b) % p
                    induced[c] = (induced.get(c, 0) + x * y * (a - b)) % p
        C_star = sorted(induced)
        gamma = _moments(C_star, [induced[c] for c in C_star], n + 1, p)
        self.check('gamma-direct-vs-stored', [x.value for x in cert.gamma] == gamma, f"recomputed {gamma}")

        for j in range(n + 1):
            conv = sum(binomial_mod_p(j, i, field_).value
                       * (alpha[i + 1] * beta[j - i] - alpha[i] * beta[j + 1 - i])
                       for i in range(j + 1)) % p
            self.check(f'gamma-convolution[{j}]', conv == gamma[j], f"convolution {conv}, direct {gamma[j]}")

        diff = (binomial_mod_p(n, m - 2, field_) - binomial_mod_p(n, k - 2, field_)).value
        leading = diff * alpha[m - 1] * beta[k - 1] % p
        self.check('lemma42-leading', leading == gamma[n], f"closed form {leading}, direct {gamma[n]}")

        bc = cert.binomial_check
        self.check('binomial-check',
                   bc is not None and (bc.n, bc.r_choice, bc.s_choice) == (n, m - 2, k - 2)
                   and 1 <= n <= p - 1 and m != k,
                   f"expected n={n}, r={m - 2}, s={k - 2} with 1 <= n <= p - 1")
        self.check('binomial-value', bc.value.value == diff and diff != 0,
                   f"recomputed C({n},{m - 2}) - C({n},{k - 2}) = {diff}")

        excess = next((i for i, g in enumerate(gamma) if g), None)
        self.check('e_C', cert.e_C == excess == n, f"stored {cert.e_C}, recomputed {excess}, expected {n}")
        self.check('excess-bound', len(C_star) >= n + 1,
                   f"|C| = {len(C_star)} must be at least e_C + 1 = {n + 1}")


def verify_certificate(cert: Union[Certificate, Mapping[str, Any]]) -> VerificationReport:
    """
    Recompute every claim a certificate makes. Never raises on malformed
    content; the first failing check is named in the report.
    """
    doc = certificate_to_json(cert) if isinstance(cert, Certificate) else cert
    verifier = _Verifier(doc)
    try:
        verifier.run()
    except _CheckFailed:
        pass
    except (SumsetError, ValueError, TypeError, KeyError, IndexError, AttributeError) as e:
        verifier.checks.append(CheckResult('malformed', False, f"{type(e).__name__}: {e}"))
    verdict = 'pass' if verifier.checks and all(c.passed for c in verifier.checks) else 'fail'
    return VerificationReport(verdict, verifier.checks)
