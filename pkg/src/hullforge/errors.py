"""Exception hierarchy.

Every error carries a stable ``code`` string that the CLI maps onto its exit
status and echoes into the JSON report.
"""


class HullforgeError(Exception):
    code = "ERROR"
    exit_code = 6

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        out = {"code": self.code, "message": str(self)}
        out.update(self.details)
        return out


class MalformedInput(HullforgeError):
    code = "MALFORMED_INPUT"
    exit_code = 4


class ParseError(MalformedInput):
    code = "PARSE_ERROR"

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message, line=line, column=column)


class PurityViolation(HullforgeError):
    code = "PURITY_VIOLATION"
    exit_code = 2


class NoncoherentCap(HullforgeError):
    code = "NONCOHERENT_CAP"
    exit_code = 5


class TorsionPresent(HullforgeError):
    code = "TORSION_PRESENT"
    exit_code = 4


class EmbWitnessNotFound(HullforgeError):
    code = "EMB_WITNESS_NOT_FOUND"
    exit_code = 6


class NonterminationGuard(HullforgeError):
    code = "NONTERMINATION_GUARD"
    exit_code = 6


class InvariantFailure(HullforgeError):
    code = "INVARIANT_FAILURE"
    exit_code = 6
