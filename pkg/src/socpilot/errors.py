"""Exception types shared across the package."""


class SocpilotError(Exception):
    """Base class for all framework errors."""


class TemplateError(SocpilotError):
    pass


class MissingBinding(TemplateError):
    def __init__(self, name: str):
        super().__init__(f"missing binding: {name!r}")
        self.name = name


class UnknownPlaceholder(TemplateError):
    def __init__(self, name: str):
        super().__init__(f"binding does not match any placeholder: {name!r}")
        self.name = name


class ContractViolation(SocpilotError):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class BackendUnavailable(SocpilotError):
    pass


class RateLimited(SocpilotError):
    """Backend refused the request for rate reasons; retryable."""


class SchemaError(SocpilotError):
    def __init__(self, line: int, column: str, reason: str):
        super().__init__(f"line {line}, column {column!r}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class NoCandidateInRadius(SocpilotError):
    pass


class OverlappingSchedule(SocpilotError):
    pass


class ConfigError(SocpilotError):
    def __init__(self, message: str, *, path: str = ""):
        prefix = f"{path}: " if path else ""
        super().__init__(prefix + message)
        self.path = path


class ProfileEditAfterStart(SocpilotError):
    pass


class UnknownField(SocpilotError):
    pass


class MissingItem(SocpilotError):
    pass


class OutOfRange(SocpilotError):
    pass


class LengthMismatch(SocpilotError):
    pass


class ZeroRealValue(SocpilotError):
    pass


class InsufficientSamples(SocpilotError):
    pass


class UnknownAgent(SocpilotError):
    pass


class RunNotPaused(SocpilotError):
    pass


class IsolationBreach(SocpilotError):
    """A survey or interview left a trace in agent memory or status."""


class UnclassifiableStance(SocpilotError):
    pass
