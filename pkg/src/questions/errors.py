"""Exception hierarchy shared by every module."""


class QuestionsError(ValueError):
    """Base class for all errors raised by this package."""


class SizeMismatchError(QuestionsError):
    """Two objects live on world sets of different sizes."""


class NormalizationError(QuestionsError):
    """A probability vector is negative or too far from summing to one."""


class NullConditioningError(QuestionsError):
    """Conditioning on a proposition of probability zero without an extension."""


class UndefinedQuantityError(QuestionsError):
    """An information quantity is undefined at the given probabilities."""


class GeneratorStructureError(QuestionsError):
    """The world set does not carry N-generator structure."""


class RankMismatchError(QuestionsError):
    """A question's rank differs from the one requested."""


class EnumerationTooLargeError(QuestionsError):
    """Exhaustive enumeration was requested beyond the supported bound."""


class NotTildeError(QuestionsError):
    """A two-proposition marginal does not satisfy the tilde relation."""


class ParityError(QuestionsError):
    """A monomial family member violates the odd/even parity rule."""


class DegenerateInputError(QuestionsError):
    """Coincident or antipodal points, zero vectors and similar degeneracies."""


class ActionError(QuestionsError):
    """An action in a sequence failed; the message names the step index."""
