class EngineError(Exception):
    """Base class for all errors raised by kleinwiman."""


class FieldError(EngineError):
    pass


class GroupError(EngineError):
    pass


class ConfigError(EngineError):
    pass


class SeriesError(EngineError):
    pass


class FatIdealError(EngineError):
    pass


class UsageError(EngineError):
    pass
