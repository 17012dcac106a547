"""Exception hierarchy shared by the library, service and CLI.

UserInputError maps to CLI exit 1 / HTTP 400 (bad input or an unmet
precondition); EngineError maps to exit 2 / HTTP 500 (a broken internal
invariant, i.e. a bug).
"""


class QacmError(Exception):
    pass


class UserInputError(QacmError):
    pass


class EngineError(QacmError):
    pass
