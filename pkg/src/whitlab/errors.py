"""Exception hierarchy shared by every whitlab module."""


class WhitlabError(Exception):
    """Base class for all library errors."""


class DivisionByZero(WhitlabError, ZeroDivisionError):
    pass


class PrecisionExhausted(WhitlabError):
    pass


class NonSquare(WhitlabError):
    pass


class BadBranch(WhitlabError):
    pass


class OutOfDomain(WhitlabError):
    pass


class NoSuchRoot(WhitlabError):
    pass


class Divergent(WhitlabError):
    pass


class ConductorTooSmall(WhitlabError):
    pass


class NotAUnit(WhitlabError):
    pass


class LevelTooLow(WhitlabError):
    pass


class DomainEmpty(WhitlabError):
    pass


class TrivialCharacter(WhitlabError):
    pass


class RankZero(WhitlabError):
    pass


class PreconditionViolated(WhitlabError):
    pass


class BadConductor(WhitlabError):
    pass


class CentralCharacterNotTrivial(WhitlabError):
    pass


class UnsupportedCase(WhitlabError):
    pass


class IncompatibleSelector(WhitlabError):
    pass


class OutOfRange(WhitlabError):
    pass


class ConstraintViolated(WhitlabError):
    pass


class UnsupportedStratum(WhitlabError):
    pass


class HypothesisFailed(WhitlabError):
    pass


class GammaOutOfRange(WhitlabError):
    pass


class EnumerationTooLarge(WhitlabError):
    pass
