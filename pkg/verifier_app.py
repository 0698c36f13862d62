"""
HTTP front end for certification and independent verification.
Run it through verifier_server.py (waitress) in production.
"""
from flask import Flask, jsonify, request

from certificate import certificate_to_json, certify_anr, certify_eh, verify_certificate
from config import SERVER_MAX_BODY, SERVER_MAX_P
from errors import SumsetError
from oracle import BOUND_KINDS
from prime_field import make_field
from sumsets import BOUNDS, FpSet

app = Flask(__name__)
app.config['MAX_CONTENT_LENGTH'] = SERVER_MAX_BODY


class BadRequest(Exception):
    pass


def _json_body():
    doc = request.get_json(silent=True)
    if not isinstance(doc, dict):
        raise BadRequest("request body must be a JSON object")
    return doc


def _field_from(value):
    if not isinstance(value, int) or isinstance(value, bool):
        raise BadRequest("p must be an integer")
    if value > SERVER_MAX_P:
        raise BadRequest(f"p above {SERVER_MAX_P} is not served")
    return make_field(value)


def _set_from(field_, value, name):
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise BadRequest(f"{name} must be an array of integers")
    return FpSet.of(field_, value)


@app.errorhandler(BadRequest)
def bad_request(e):
    return jsonify({'error': str(e)}), 400


@app.errorhandler(SumsetError)
def hypothesis_violation(e):
    return jsonify({'error': str(e), 'type': type(e).__name__}), 400


@app.route('/')
def home():
    """Status page listing the endpoints"""
    return jsonify({
        'status': 'running',
        'message': 'Restricted sumset certificate service',
        'endpoints': {
            '/certify': 'Certify |A +. B| >= min{p, |A|+|B|-2} (POST {"p", "A", "B"})',
            '/eh': 'Certify |A +. A| >= min{p, 2|A|-3} (POST {"p", "A"})',
            '/verify': 'Verify a certificate (POST certificate JSON)',
            '/bound': 'Evaluate a bound formula (GET ?p=&m=&k=&kind=)',
        },
    })


@app.route('/certify', methods=['POST'])
def certify():
    doc = _json_body()
    field_ = _field_from(doc.get('p'))
    A = _set_from(field_, doc.get('A'), 'A')
    B = _set_from(field_, doc.get('B'), 'B')
    return jsonify(certificate_to_json(certify_anr(A, B)))


@app.route('/eh', methods=['POST'])
def eh():
    doc = _json_body()
    field_ = _field_from(doc.get('p'))
    A = _set_from(field_, doc.get('A'), 'A')
    return jsonify(certificate_to_json(certify_eh(A)))


def _check_verify_size(doc):
    """Refuse documents whose verification cost the service will not pay."""
    p = doc.get('p')
    if not isinstance(p, int) or isinstance(p, bool):
        return
    if p > SERVER_MAX_P:
        raise BadRequest(f"p above {SERVER_MAX_P} is not served")
    for name in ('A', 'B'):
        value = doc.get(name)
        if isinstance(value, list) and len(value) > p:
            raise BadRequest(f"{name} has more than p = {p} elements")


@app.route('/verify', methods=['POST'])
def verify():
    doc = _json_body()
    _check_verify_size(doc)
    report = verify_certificate(doc)
    return jsonify(report.to_json()), (200 if report.passed else 422)


@app.route('/bound', methods=['GET'])
def bound():
    kind = request.args.get('kind', 'anr')
    if kind not in BOUND_KINDS:
        raise BadRequest(f"kind must be one of {', '.join(BOUND_KINDS)}")
    try:
        p = int(request.args['p'])
        m = int(request.args['m'])
        k = int(request.args.get('k', m))
    except (KeyError, ValueError):
        raise BadRequest("p and m are required integers") from None
    make_field(p)
    if m < 1 or k < 1:
        raise BadRequest("set sizes must be positive")
    return jsonify({'kind': kind, 'p': p, 'm': m, 'k': k, 'bound': BOUNDS[kind](p, m, k)})
