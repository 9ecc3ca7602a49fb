"""Exception hierarchy shared across the package.

Three failure classes map onto the CLI exit codes: bad user input (1),
misuse of an API contract (2), and broken internal invariants (2).
"""


class DynReachError(Exception):
    """Base class for all package errors."""


class InputError(DynReachError, ValueError):
    """Malformed caller input: unknown ids, absent edges, parse errors."""


class LogicError(DynReachError, RuntimeError):
    """An operation was called outside its contract (caller bug)."""


class InternalError(DynReachError, RuntimeError):
    """A structural invariant of the index itself was violated."""
