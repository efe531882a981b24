"""Exception hierarchy.

Every domain error derives from NeuralCodeError, which is a ValueError so that
callers treating bad input generically keep working.
"""


class NeuralCodeError(ValueError):
    pass


class DuplicateCodeword(NeuralCodeError):
    pass


class UnknownNeuron(NeuralCodeError):
    pass


class UniverseTooLarge(NeuralCodeError):
    pass


class InvalidParameter(NeuralCodeError):
    pass


class UnknownCode(NeuralCodeError):
    pass


class UnknownCodeword(NeuralCodeError):
    pass


class NotAWalk(NeuralCodeError):
    pass


class InfeasibleWalk(NeuralCodeError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoFeasiblePath(NeuralCodeError):
    pass


class DimensionError(NeuralCodeError):
    pass


class DegenerateSegment(NeuralCodeError):
    pass


class MixedSense(NeuralCodeError):
    pass


class CertificateMalformed(NeuralCodeError):
    pass
