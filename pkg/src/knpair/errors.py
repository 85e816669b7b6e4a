"""Exception taxonomy shared by every module.

Each class carries a stable ``code`` string so that CLI consumers can match
on it without parsing messages.
"""


class KnpairError(Exception):
    code = "error"


class FactorizationIncomplete(KnpairError):
    code = "factorization-incomplete"


class InvalidHint(KnpairError):
    code = "invalid-hint"


class NuTooLarge(KnpairError):
    code = "nu-too-large"


class NotPrime(KnpairError):
    code = "not-prime"


class ReducibleModulus(KnpairError):
    code = "reducible-modulus"


class DivisionByZero(KnpairError, ZeroDivisionError):
    code = "division-by-zero"


class CtxMismatch(KnpairError):
    code = "ctx-mismatch"


class ZeroElement(KnpairError):
    code = "zero-element"


class DlogTooLarge(KnpairError):
    code = "dlog-too-large"


class NotADivisor(KnpairError):
    code = "not-a-divisor"


class RNotDivisor(NotADivisor):
    code = "r-not-divisor"


class ZeroPolynomial(KnpairError):
    code = "zero-polynomial"


class TooManyDivisors(KnpairError):
    code = "too-many-divisors"


class FieldTooLarge(KnpairError):
    code = "field-too-large"


class NoDegreeKDivisor(KnpairError):
    code = "no-degree-k-divisor"


class NotCoprime(KnpairError):
    code = "not-coprime"
