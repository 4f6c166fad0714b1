'''
Exception hierarchy for invsurf

Every error raised on purpose by the package derives from InvsurfError, which
is a ValueError.  Each class carries a ``kind`` string that the command line
interface writes into its structured error report, and an optional
``location`` (a byte offset for parse errors, an index for factor lists).

    >>> try:
    ...     create_tower([2, 8])
    ... except InvsurfError as err:
    ...     print(err.kind)
    RedundantGenerator

'''


class InvsurfError(ValueError):
    '''Base class of all invsurf errors'''
    kind = 'InvsurfError'

    def __init__(self, message, location=None):
        ValueError.__init__(self, message)
        self.message = message
        self.location = location

    def as_dict(self):
        return {'error': self.kind,
                'message': self.message,
                'location': self.location}


class InvalidParameter(InvsurfError):
    kind = 'InvalidParameter'


######################################################################
# exact

class NotSquareFree(InvsurfError):
    kind = 'NotSquareFree'


class RedundantGenerator(InvsurfError):
    kind = 'RedundantGenerator'


class TowerTooHigh(InvsurfError):
    kind = 'TowerTooHigh'


class DivisionByZero(InvsurfError, ZeroDivisionError):
    kind = 'DivisionByZero'


class TowerMismatch(InvsurfError):
    kind = 'TowerMismatch'


class ZeroRadicand(InvsurfError):
    kind = 'ZeroRadicand'


class SquareRadicand(InvsurfError):
    kind = 'SquareRadicand'


######################################################################
# poly

class DimensionMismatch(InvsurfError):
    kind = 'DimensionMismatch'


class ZeroDivisor(InvsurfError, ZeroDivisionError):
    kind = 'ZeroDivisor'


class DegenerateInVar(InvsurfError):
    kind = 'DegenerateInVar'


######################################################################
# parse_io

class ParseSyntaxError(InvsurfError):
    kind = 'SyntaxError'

    def __init__(self, message, location=None, expected=None):
        InvsurfError.__init__(self, message, location)
        self.expected = expected

    def as_dict(self):
        d = InvsurfError.as_dict(self)
        d['expected'] = self.expected
        return d


class UnknownSymbol(ParseSyntaxError):
    kind = 'UnknownSymbol'


class NegativeExponent(ParseSyntaxError):
    kind = 'NegativeExponent'


class SchemaError(InvsurfError):
    kind = 'SchemaError'


######################################################################
# transform

class ZeroPolynomial(InvsurfError):
    kind = 'ZeroPolynomial'


class NotHomogeneous(InvsurfError):
    kind = 'NotHomogeneous'


class ZeroVector(InvsurfError):
    kind = 'ZeroVector'


######################################################################
# infinity

class NotInvariantLine(InvsurfError):
    kind = 'NotInvariant'


class UnsupportedDimension(InvsurfError):
    kind = 'UnsupportedDimension'


class ExtensionTooDeep(InvsurfError):
    kind = 'ExtensionTooDeep'


class DuplicateLine(InvsurfError):
    kind = 'DuplicateLine'


######################################################################
# distinguished

class SingularA(InvsurfError):
    kind = 'SingularA'


class VerificationFailed(InvsurfError):
    kind = 'VerificationFailed'


class DegenerateFactorization(InvsurfError):
    kind = 'DegenerateFactorization'


class B1Vanishes(InvsurfError):
    kind = 'B1Vanishes'


######################################################################
# darboux

class ConstantInput(InvsurfError):
    kind = 'ConstantInput'


class EliminationBudgetExceeded(InvsurfError):
    kind = 'EliminationBudgetExceeded'


class FactorNotSemiInvariant(InvsurfError):
    kind = 'FactorNotSemiInvariant'


class UnsupportedCoefficientField(InvsurfError):
    kind = 'UnsupportedCoefficientField'
