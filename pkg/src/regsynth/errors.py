"""Exception hierarchy shared by every regsynth module."""


class RegsynthError(Exception):
    """Base class for all errors raised by regsynth."""


class InputError(RegsynthError, ValueError):
    """A value supplied by the caller is malformed (foreign symbol, alphabet mismatch, ...)."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class WellFormednessError(ParseError):
    """The game parsed, but violates one of the structural invariants.

    ``witness`` is a shortest word exhibiting the violation, as a tuple of
    symbol names.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        if witness is not None:
            message = f"{message} (witness: {' '.join(witness) or 'ε'})"
        super().__init__(message)


class ContractError(RegsynthError):
    """A precondition of an operation was violated by the caller."""


class TeacherContractError(ContractError):
    """The teacher returned an answer the learner cannot use."""


class BudgetExceeded(RegsynthError):
    """An explicit-state computation hit its configured bound."""

    def __init__(self, bound, what="vertices", word=None):
        self.bound = bound
        self.what = what
        self.word = word
        msg = f"explicit-state budget of {bound} {what} exceeded"
        if word is not None:
            msg += f" while exploring from {word!r}"
        super().__init__(msg)


class CertificateInvalid(RegsynthError):
    """A certificate failed to provide a move (existential closedness broken)."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class Unrealizable(RegsynthError):
    """Some initial vertex is losing for Player 0, so no winning set exists."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"initial vertex {' '.join(witness) or 'ε'} is losing for Player 0")


class RoundLimitExceeded(RegsynthError):
    """The learner gave up after the configured number of equivalence queries."""

    def __init__(self, rounds, stats=None, diagnostics=None):
        self.rounds = rounds
        self.stats = stats
        self.diagnostics = diagnostics
        super().__init__(f"no winning set found within {rounds} equivalence queries")
