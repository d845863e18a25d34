"""Exception types shared across the package."""


class DomainError(ValueError):
    """Numeric argument outside the mathematical domain of an operation."""


class ValidationError(ValueError):
    """Invalid configuration, flag value, or malformed input file."""


class NonFiniteLossError(ArithmeticError):
    """A loss term evaluated to NaN or infinity during training."""

    def __init__(self, term, epoch=None, batch=None):
        self.term = term
        self.epoch = epoch
        self.batch = batch
        where = ""
        if epoch is not None:
            where = f" at epoch {epoch}"
            if batch is not None:
                where += f", batch {batch}"
        super().__init__(f"non-finite value in loss term '{term}'{where}")
