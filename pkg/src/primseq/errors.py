"""Exception types shared across the package.

Plain ValueError is used for invalid arguments; the classes below mark the
conditions that callers (in particular the CLI) treat specially.
"""


class ResourceLimitError(Exception):
    """A requested computation exceeds a configured memory/enumeration budget."""


class CapabilityError(Exception):
    """The available tables cannot certify the requested result (e.g. a prime
    factor above the sieve limit)."""


class ConstructionFailureError(Exception):
    """A witness construction precondition failed; the message names the
    failing condition."""
