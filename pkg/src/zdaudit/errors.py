"""Exception hierarchy shared by every module."""


class AuditGameError(ValueError):
    """Base class for all domain errors raised by this package."""


class NonPositiveParameter(AuditGameError):
    pass


class OrderingViolated(AuditGameError):
    pass


class PolicyViolated(AuditGameError):
    pass


class NonErgodic(AuditGameError):
    """The transition chain has no unique stationary distribution."""


class DegenerateTarget(AuditGameError):
    """Equalizer slope is zero so the pinned utility -gamma/alpha is undefined."""


class ZeroAttackPayoff(AuditGameError):
    pass


class ZeroPhi(AuditGameError):
    pass


class EmptyGrid(AuditGameError):
    pass


class InvalidStrategy(AuditGameError):
    pass


class ConfigError(AuditGameError):
    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key '{key}'")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)


class UnknownSubcommand(AuditGameError):
    pass
