"""Exception hierarchy shared by all modules."""


class AlgebraError(Exception):
    """Base class for every error raised by gpdefo."""


class FieldError(AlgebraError, ValueError):
    pass


class DimensionMismatch(AlgebraError, ValueError):
    pass


class MalformedRelation(AlgebraError, ValueError):
    pass


class NotAdmissible(AlgebraError):
    """No degree up to the bound has all paths inside the ideal."""


class AlgebraMismatch(AlgebraError, ValueError):
    pass


class InvalidModule(AlgebraError, ValueError):
    pass


class ZeroGenerator(AlgebraError, ValueError):
    pass


class ZeroModule(AlgebraError, ValueError):
    pass


class UnsupportedField(AlgebraError):
    pass


class HypothesisFails(AlgebraError):
    """A mathematical precondition of the requested construction does not hold."""


class NotMonomial(AlgebraError):
    pass


class NotPerfect(AlgebraError, ValueError):
    pass


class InvalidLift(AlgebraError, ValueError):
    pass


class PrerequisiteFails(AlgebraError):
    """A transport precondition failed; ``condition`` names which one."""

    def __init__(self, condition, message=""):
        self.condition = condition
        super().__init__(f"{condition}: {message}" if message else condition)


class ParseError(AlgebraError, ValueError):
    """Malformed input; ``where`` locates the offending field or line."""

    def __init__(self, where, message):
        self.where = where
        super().__init__(f"{where}: {message}")
