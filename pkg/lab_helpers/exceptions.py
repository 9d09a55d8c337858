class LabError(Exception):
    """Base class of every error raised by the lab modules."""


class ConfigError(LabError, ValueError):
    pass


class PreconditionError(LabError, ValueError):
    def __init__(self, precondition, detail=''):
        self.precondition = precondition
        message = 'precondition failed: %s' % precondition
        if detail:
            message = '%s (%s)' % (message, detail)
        super().__init__(message)


class ZeroProbabilityCellError(LabError, ValueError):
    def __init__(self, cell):
        self.cell = cell
        super().__init__('conditioning cell has zero probability: %s' %
                         sorted(cell, key=repr))


class MissingSettingError(LabError, KeyError):
    def __init__(self, setting):
        self.setting = setting
        super().__init__('setting pair not present: %s' % (setting,))

    def __str__(self):
        return self.args[0]


class InsufficientCountsError(LabError, ValueError):
    pass


class NonFiniteForceError(LabError, ArithmeticError):
    pass


class EmptyGridError(LabError, ValueError):
    pass


class IncompatibleGridError(LabError, ValueError):
    pass


class SolverError(LabError, ArithmeticError):
    pass


class ModelDocumentError(LabError, ValueError):
    pass
