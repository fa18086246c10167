"""Exception hierarchy shared by every lincnf module."""


class LincnfError(Exception):
    """Base class for all errors raised by lincnf."""


class FormulaError(LincnfError, ValueError):
    pass


class ZeroLiteral(FormulaError):
    def __init__(self, clause_index):
        self.clause_index = clause_index
        super().__init__(f"clause {clause_index}: literal 0 is not allowed")


class DuplicateVariableInClause(FormulaError):
    def __init__(self, clause_index, variable):
        self.clause_index = clause_index
        self.variable = variable
        super().__init__(
            f"clause {clause_index}: variable {variable} occurs more than once"
        )


class EmptyFormula(FormulaError):
    pass


class UnknownVariable(FormulaError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class IndexOutOfRange(FormulaError, IndexError):
    pass


class ForeignVariable(FormulaError):
    pass


# precondition failures on formula classes
class ClassPreconditionError(LincnfError, ValueError):
    pass


class NotLinear(ClassPreconditionError):
    pass


class NotRegular(ClassPreconditionError):
    pass


class NotMonotone(ClassPreconditionError):
    pass


class PrescreenFail(ClassPreconditionError):
    pass


# parameter arithmetic
class ParameterError(LincnfError, ValueError):
    pass


class NonIntegralSize(ParameterError):
    pass


NonIntegral = NonIntegralSize


class NegativeDisjointedness(ParameterError):
    pass


class DegenerateRegularity(ParameterError):
    pass


class InconsistentParameters(ParameterError):
    pass


class NotPrime(ParameterError):
    pass


# search and solving limits
class BudgetExhausted(LincnfError):
    pass


class TooLarge(LincnfError):
    pass


# DIMACS parsing
class DimacsError(LincnfError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedHeader(DimacsError):
    pass


class ClauseCountMismatch(DimacsError):
    pass


class VariableOutOfDeclaredRange(DimacsError):
    pass


class MalformedClause(DimacsError):
    pass
