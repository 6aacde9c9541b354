"""Exception types raised by the learners and their supporting machinery.

Every failure a caller might want to catch individually gets its own class;
they all inherit from PrivexpError so a bare ``except PrivexpError`` catches
any in-regime failure without also swallowing programming errors.
"""


class PrivexpError(Exception):
    """Base class for all failures raised by this package."""


class InvalidScale(PrivexpError):
    """A scale parameter (Laplace scale, Pareto minimum) was not positive and finite."""


class EmptyDataset(PrivexpError):
    """An operation required at least one sample and got none."""


class BadSplit(PrivexpError):
    """Budget split fractions were malformed (nonpositive or not summing to 1)."""


class BudgetExhausted(PrivexpError):
    """A privacy budget was consumed or split more than once."""


class InvalidRate(PrivexpError):
    """An exponential rate parameter was not strictly positive and finite."""


class InvalidRatio(PrivexpError):
    """Bounds were degenerate: lower >= upper, or a nonpositive endpoint."""


class InvalidShape(PrivexpError):
    """A Pareto shape parameter was not strictly positive."""


class EmptyRequest(PrivexpError):
    """A sampler was asked for zero draws."""


class OutOfRegime(PrivexpError):
    """A tuning parameter (target quantile, accuracy, ...) left its valid range."""


class TooFewSamples(PrivexpError):
    """The dataset is too small for the requested computation."""


class NonpositiveMean(PrivexpError):
    """The noised clipped mean came out nonpositive, so 1/mean is meaningless."""


class RangeEstimationFailed(PrivexpError):
    """The private range search returned nothing usable."""


class SearchExhausted(PrivexpError):
    """The noisy binary search used up its iteration budget without converging."""


class CoarseFailed(PrivexpError):
    """The coarse first-stage estimate failed, so routing cannot proceed."""


class NoBinSurvived(PrivexpError):
    """No histogram bin cleared the noise threshold."""


class ScaleViolation(PrivexpError):
    """A sample fell below the declared Pareto scale (left endpoint)."""


class EmptyTail(PrivexpError):
    """No samples remained at or above the tail pivot."""


class DegenerateBounds(PrivexpError):
    """Derived bounds collapsed to an empty or invalid interval."""


class IncompleteInputs(PrivexpError):
    """A computation was missing a required input (e.g. bounds for a calculator)."""


class RegimeViolation(PrivexpError):
    """Calculator inputs violate the regime its guarantee needs."""


class InputError(PrivexpError):
    """A data file could not be accessed or parsed.

    Carries the 1-based line number of the offending record when the
    failure is tied to one (parse errors); file-level failures leave it
    None.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None
                         else message)
        self.line = line
