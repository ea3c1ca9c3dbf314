"""Exception hierarchy shared by all modules.

Every error carries a short machine-readable ``kind`` so the CLI can emit
structured messages.
"""


class UpsilonKitError(Exception):
    kind = "error"


class DomainError(UpsilonKitError, ValueError):
    kind = "domain"


class IntegrityError(UpsilonKitError):
    kind = "integrity"


class ValidationError(IntegrityError):
    kind = "validation"

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = "" if len(self.violations) <= 3 else f" (+{len(self.violations) - 3} more)"
        super().__init__(f"invalid complex: {head}{more}")


class NotAKnotError(UpsilonKitError):
    kind = "not-a-knot"


class NotLSpacePolynomialError(UpsilonKitError, ValueError):
    kind = "not-lspace"


class ModelError(UpsilonKitError):
    kind = "model"


class CatalogError(UpsilonKitError, KeyError):
    kind = "catalog"

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown catalog entry"


class DiagramError(UpsilonKitError):
    kind = "diagram"


class GradingError(UpsilonKitError):
    kind = "grading"


class DivergenceError(UpsilonKitError):
    kind = "divergence"


class CompletionError(IntegrityError):
    kind = "completion"


class NotALinkError(UpsilonKitError):
    kind = "not-a-link"


class CalibrationError(IntegrityError):
    kind = "calibration"
