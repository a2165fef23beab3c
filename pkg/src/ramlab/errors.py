"""Exception hierarchy shared by every ramlab module.

The CLI maps these onto exit codes: domain errors exit 1, precision and
resource errors exit 2, internal inconsistencies exit 3.
"""


class RamlabError(Exception):
    exit_code = 1
    kind = "error"


class DomainError(RamlabError, ValueError):
    kind = "domain"


class UnsupportedFamilyError(DomainError):
    kind = "unsupported_family"


class PrecisionError(RamlabError, ArithmeticError):
    exit_code = 2
    kind = "precision"


class ResourceError(RamlabError):
    exit_code = 2
    kind = "resource"


class InconsistencyError(RamlabError):
    exit_code = 3
    kind = "inconsistency"


class IntegralityError(InconsistencyError):
    kind = "integrality"
