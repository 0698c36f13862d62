"""
Tests for certificate generation, the JSON format and the verifier
"""
import copy
import json

import pytest

from certificate import (
    CERTIFICATE_FIELDS,
    ROUTE_EH,
    ROUTE_MAIN,
    ROUTE_REDUCED,
    ROUTE_SINGLETON,
    certificate_from_json,
    certificate_to_json,
    certify_anr,
    certify_eh,
    load_certificate,
    reduce_oversized,
    save_certificate,
    verify_certificate,
)
from errors import CertificateFormatError, EqualSizes, NotOversized
from oracle import restricted_size
from prime_field import make_field
from sumsets import FpSet, anr_bound, restricted_sumset


def S(p, *values):
    return FpSet.of(make_field(p), values)


@pytest.fixture
def worked_example():
    return certify_anr(S(5, 1, 2), S(5, 0, 1, 2))


def test_worked_example_values(worked_example):
    cert = worked_example
    assert cert.route == ROUTE_MAIN
    assert cert.reduction is None
    assert cert.w1.values() == [4, 1]
    assert cert.w2.values() == [3, 4, 3]
    assert [x.value for x in cert.alpha] == [0, 1]
    assert [x.value for x in cert.beta] == [0, 0, 1]
    assert [x.value for x in cert.gamma] == [0, 0, 4]
    assert cert.e_C == 2
    assert cert.binomial_check.n == 2
    assert (cert.binomial_check.r_choice, cert.binomial_check.s_choice) == (0, 1)
    assert cert.binomial_check.value == 4
    assert cert.claimed_bound == 3
    assert cert.C.to_list() == [1, 2, 3]
    assert cert.C_size == 3


def test_worked_example_verifies(worked_example):
    report = verify_certificate(worked_example)
    assert report.verdict == 'pass'
    assert report.failed_check is None
    names = [c.name for c in report.checks]
    assert 'gamma-direct-vs-stored' in names and 'lemma42-leading' in names


def test_singleton_route():
    cert = certify_anr(S(5, 2), S(5, 0, 1, 2))
    assert cert.route == ROUTE_SINGLETON
    assert cert.claimed_bound == 2
    assert cert.C.to_list() == [2, 3]
    assert cert.C_size == 2
    assert list(cert.witness) == [2, 3]
    assert cert.w1 is None and cert.gamma == ()
    assert verify_certificate(cert).passed


def test_singleton_on_the_right():
    cert = certify_anr(S(7, 0, 3, 5), S(7, 3))
    assert cert.route == ROUTE_SINGLETON
    assert sorted(cert.witness) == [1, 3]
    assert verify_certificate(cert).passed


def test_equal_sizes_rejected():
    with pytest.raises(EqualSizes, match="equal sizes"):
        certify_anr(S(5, 1, 2), S(5, 1, 3))


def test_reduce_oversized_examples():
    r = reduce_oversized(S(5, 0, 1, 2, 3), S(5, 0, 1, 2, 3, 4))
    assert (r.d, r.d1, r.d2) == (2, 1, 1)
    assert r.A_prime.to_list() == [0, 1, 2]
    assert r.B_prime.to_list() == [0, 1, 2, 3]
    assert r.removed_from_A.to_list() == [3]
    assert r.removed_from_B.to_list() == [4]

    r = reduce_oversized(S(5, 0, 1, 2, 3, 4), S(5, 0, 1, 2, 3))
    assert (len(r.A_prime), len(r.B_prime)) == (4, 3)

    with pytest.raises(NotOversized):
        reduce_oversized(S(3, 0, 1), S(3, 0, 1, 2))
    with pytest.raises(EqualSizes):
        reduce_oversized(S(5, 0, 1, 2, 3), S(5, 1, 2, 3, 4))


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_reduction_invariants_for_every_size_pair(p):
    F = make_field(p)
    for m in range(1, p + 1):
        for k in range(1, p + 1):
            if m == k or m + k - 2 <= p:
                continue
            A = FpSet(F, tuple(range(m)))
            B = FpSet(F, tuple(range(p - k, p)))
            r = reduce_oversized(A, B)
            assert r.A_prime and r.B_prime
            assert len(r.A_prime) != len(r.B_prime)
            assert len(r.A_prime) + len(r.B_prime) - 2 == p
            assert len(restricted_sumset(r.A_prime, r.B_prime)) <= len(restricted_sumset(A, B))


def test_reduced_route_certifies():
    cert = certify_anr(S(5, 0, 1, 2, 3), S(5, 0, 1, 2, 3, 4))
    assert cert.route == ROUTE_REDUCED
    A_star, B_star = cert.reduced_pair
    assert cert.e_C == len(A_star) + len(B_star) - 3 == 4
    assert cert.claimed_bound == 5
    assert verify_certificate(cert).passed


def test_eh_examples():
    cert = certify_eh(S(5, 0, 1, 2))
    assert cert.route == ROUTE_EH
    assert cert.claimed_bound == 3
    assert cert.C.to_list() == [1, 2, 3]
    assert verify_certificate(cert).passed

    cert = certify_eh(S(5, 4))
    assert cert.claimed_bound == 0 and cert.C_size == 0 and cert.C.to_list() == []
    assert verify_certificate(cert).passed

    cert = certify_eh(FpSet(make_field(7), tuple(range(7))))
    assert cert.claimed_bound == 7
    assert cert.reduction is not None
    assert cert.C_size == 7
    assert verify_certificate(cert).passed


def test_eh_pair_goes_through_the_singleton_shape():
    cert = certify_eh(S(7, 2, 5))
    assert cert.claimed_bound == 1
    assert list(cert.witness) == [0]
    assert verify_certificate(cert).passed


@pytest.mark.parametrize("p", [3, 5, 7])
def test_eh_certificates_for_every_set(p):
    F = make_field(p)
    for mask in range(1, 1 << p):
        A = FpSet.from_mask(F, mask)
        cert = certify_eh(A)
        assert verify_certificate(cert).passed, A
        assert restricted_size(A.to_list(), A.to_list(), p) >= cert.claimed_bound


def test_json_round_trip(tmp_path, worked_example):
    path = tmp_path / "cert.json"
    save_certificate(worked_example, path)
    doc = load_certificate(path)
    assert set(doc) == CERTIFICATE_FIELDS
    assert doc['w1'] == [{'element': 1, 'weight': 4}, {'element': 2, 'weight': 1}]
    assert doc['gamma'] == [0, 0, 4]
    assert certificate_from_json(doc) == worked_example
    assert verify_certificate(doc).passed


def test_unknown_fields_are_rejected(worked_example):
    doc = certificate_to_json(worked_example)
    doc['comment'] = 'hello'
    with pytest.raises(CertificateFormatError, match="unknown"):
        certificate_from_json(doc)
    report = verify_certificate(doc)
    assert report.failed_check == 'schema'


def test_witness_field_is_optional(worked_example):
    doc = certificate_to_json(worked_example)
    del doc['witness']
    assert certificate_from_json(doc) == worked_example
    assert verify_certificate(doc).passed


def test_singleton_without_witness_fails_its_witness_check():
    doc = certificate_to_json(certify_anr(S(7, 0, 3, 5), S(7, 3)))
    del doc['witness']
    assert verify_certificate(doc).failed_check == 'singleton-witness'


def test_excess_bound_counts_the_reduced_sums():
    report = verify_certificate(certify_anr(S(5, 0, 1, 2, 3), S(5, 0, 1, 2, 3, 4)))
    excess = [c for c in report.checks if c.name == 'excess-bound']
    assert len(excess) == 1 and excess[0].passed
    assert "|C| = 5" in excess[0].detail


def test_tampered_gamma_fails_at_direct_check(worked_example):
    doc = certificate_to_json(worked_example)
    doc['gamma'][2] = 0
    assert verify_certificate(doc).failed_check == 'gamma-direct-vs-stored'


def test_zero_weights_fail_the_nonzero_check(worked_example):
    doc = certificate_to_json(worked_example)
    doc['w1'] = [{'element': 1, 'weight': 0}, {'element': 2, 'weight': 0}]
    assert verify_certificate(doc).failed_check == 'nonzero-sequence'


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(p=6),
    lambda d: d.update(p="5"),
    lambda d: d['A'].append(99),
    lambda d: d['A'].reverse(),
    lambda d: d['w1'].append({'element': 3}),
    lambda d: d.update(w1="oops"),
    lambda d: d.update(binomial_check={'n': 2}),
    lambda d: d.update(route='shortcut'),
    lambda d: d.update(e_C=1.5),
    lambda d: d.pop('C_size'),
])
def test_malformed_content_is_reported_not_raised(worked_example, mutate):
    doc = certificate_to_json(worked_example)
    mutate(doc)
    report = verify_certificate(doc)
    assert report.verdict == 'fail'
    assert report.failed_check is not None


def test_non_object_document():
    report = verify_certificate(json.loads("[1, 2, 3]"))
    assert report.verdict == 'fail' and report.failed_check == 'schema'


def test_wrong_route_label(worked_example):
    doc = certificate_to_json(worked_example)
    doc['route'] = ROUTE_REDUCED
    assert verify_certificate(doc).failed_check == 'route'


def test_stored_sumset_must_match(worked_example):
    doc = certificate_to_json(worked_example)
    doc['C'] = [1, 2, 3, 4]
    doc['C_size'] = 4
    assert verify_certificate(doc).failed_check == 'C-enumeration'


def test_bogus_reduction_is_caught():
    cert = certify_anr(S(5, 0, 1, 2, 3), S(5, 0, 1, 2, 3, 4))
    doc = certificate_to_json(cert)
    doc['reduction']['A_prime'] = [0, 1, 3]
    doc['reduction']['removed_from_A'] = [2]
    report = verify_certificate(doc)
    assert report.verdict == 'fail'


def test_verifier_does_not_mutate_input(worked_example):
    doc = certificate_to_json(worked_example)
    before = copy.deepcopy(doc)
    verify_certificate(doc)
    assert doc == before


def test_claimed_bound_matches_theorem_formula():
    cert = certify_anr(S(7, 0, 1, 2), S(7, 0, 1, 2, 3, 4))
    assert cert.claimed_bound == anr_bound(7, 3, 5) == 6
    assert cert.C_size >= cert.claimed_bound
