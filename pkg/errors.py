"""
Exceptions raised by the restricted-sumset toolkit.

Library modules raise these; only cli_app.py and verifier_app.py translate
them into exit codes or HTTP status codes.
"""


class SumsetError(Exception):
    """Root of every failure raised by this project"""


# Field arithmetic
class CompositeModulus(SumsetError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class ModulusOutOfRange(SumsetError):
    def __init__(self, p, limit):
        super().__init__(f"modulus {p} outside supported range [2, {limit})")
        self.p = p


class ModulusMismatch(SumsetError):
    def __init__(self, p, q):
        super().__init__(f"operands belong to different fields (p={p}, p={q})")


class ZeroInverse(SumsetError, ZeroDivisionError):
    def __init__(self, p):
        super().__init__(f"0 has no inverse mod {p}")


# Linear algebra
class SingularMatrix(SumsetError):
    pass


# Sets and weights
class EmptyInput(SumsetError):
    pass


class SetLiteralError(SumsetError, ValueError):
    pass


class AlignmentError(SumsetError):
    pass


class ZeroWeights(SumsetError):
    pass


class InternalInconsistency(SumsetError):
    """Raised when a lemma that must hold does not; points at an arithmetic bug"""


class InsufficientMoments(SumsetError):
    pass


# Certification
class NotOversized(SumsetError):
    pass


class EqualSizes(SumsetError):
    def __init__(self, size):
        super().__init__(f"equal sizes: |A| = |B| = {size}")
        self.size = size


class CertificateFormatError(SumsetError, ValueError):
    pass


# Sweeps
class BudgetExceeded(SumsetError):
    def __init__(self, pairs, cap):
        super().__init__(
            f"{pairs:,} pairs exceed the exhaustive cap of {cap:,}; use a seeded random sampler"
        )
        self.pairs = pairs
        self.cap = cap
