"""Shared exception types.

`DataError` marks problems with input data (malformed files, broken
references); the CLI maps it to exit code 1, keeping exit code 2 for
usage errors.
"""


class DataError(Exception):
    pass
