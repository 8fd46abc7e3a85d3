"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: input problems exit 2,
integrity problems exit 3, anything else exits 1.
"""


class MotifBenchError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MotifBenchError):
    """Invalid argument, missing file, or violated precondition."""


class FormatError(InputError):
    """A source dataset file is malformed or internally inconsistent."""


class SchemaVersionError(MotifBenchError):
    """A serialized file declares a schema major we do not understand."""


class IntegrityError(MotifBenchError):
    """Cross-file consistency violation, e.g. a mask file whose
    fingerprint does not match the benchmark it claims to score."""


class UndefinedAucError(MotifBenchError):
    """ROC-AUC is undefined: the ground-truth mask is empty or covers
    every node, so one of the two classes has no members."""
