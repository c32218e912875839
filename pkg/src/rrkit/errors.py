"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument value violates an operation's input contract."""


class ContractError(ValueError):
    """An argument is well formed but not in the shape the operation requires
    (for example a grammar that is not in Chomsky normal form)."""


class UnsupportedFilterError(ValueError):
    """The requested filter kind is not supported by this operation."""
