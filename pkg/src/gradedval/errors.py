"""Exception hierarchy shared by all gradedval modules."""


class GradedValError(Exception):
    """Base class for all errors raised by this package."""


# -- exact lattice ----------------------------------------------------------

class SingularLattice(GradedValError):
    """The matrix is singular, so the generated subgroup has infinite index."""


class DimensionMismatch(GradedValError):
    """Incompatible matrix/vector dimensions."""


# -- ordered groups ---------------------------------------------------------

class AmbientMismatch(GradedValError):
    """Elements belong to different ambient groups."""


class UnsupportedBlockRank(GradedValError):
    """Archimedean blocks of rational rank >= 3 are not representable."""


class NotASubgroup(GradedValError):
    """The alleged subgroup's generators do not lie in the bigger group."""


class InfiniteIndex(GradedValError):
    """The two groups span different rational vector spaces."""


class NotInGroup(GradedValError):
    """The element does not belong to the finitely generated group."""


# -- affine monoids ---------------------------------------------------------

class NotPointed(GradedValError):
    """No strictly positive linear functional certifies the monoid pointed."""


class DependentGenerators(GradedValError):
    """Parallelepiped generators are linearly dependent."""


class BoundTooSmall(GradedValError):
    """The element lies in the rational cone but no multiplier within the
    configured bound certifies saturation membership."""


# -- monomial extensions ----------------------------------------------------

class InvalidExtension(GradedValError):
    """The monomial extension violates the required block/zero pattern."""


class NonPositiveValue(GradedValError):
    """A derived monomial value is not strictly positive."""


class SingularBlock(GradedValError):
    """A diagonal exponent block is singular."""


# -- monomialization engine -------------------------------------------------

class NotAlongValuation(GradedValError):
    """A transform would make a variable's value non-positive."""


class NotTheorem48Form(GradedValError):
    """Input extension is not in the shape the engine normalizes."""


class NoNonnegativeLift(GradedValError):
    """The bounded search for nonnegative lifting exponents failed."""


class HypothesisA6Failed(GradedValError):
    """|det A| does not equal the subgroup index of the value groups."""


class HypothesisA7Failed(GradedValError):
    """The exponent map does not induce the expected quotient isomorphism."""


# -- graded modules ---------------------------------------------------------

class ZeroElement(GradedValError):
    """Operation undefined on the zero module element."""


class GradingMismatch(GradedValError):
    """A term's data is inconsistent with the grading."""


# -- value semigroups -------------------------------------------------------

class NegativeQuery(GradedValError):
    """Membership queried for a negative element."""


class NotASubsemigroup(GradedValError):
    """Generators of the small semigroup do not lie in the big one."""


class NonPositiveGenerator(GradedValError):
    """Semigroup generators must be strictly positive."""


class NonIncreasingTail(GradedValError):
    """Generating-sequence values must strictly increase after the start."""


class EnumerationOverflow(GradedValError):
    """Semigroup enumeration exceeded the safety cap."""


# -- ramification ledger ----------------------------------------------------

class Inconsistent(GradedValError):
    """Numeric ramification data contradicts the defining identities."""


class CharMismatch(GradedValError):
    """Tower factors have different residue characteristics."""


class MissingIndex(GradedValError):
    """A required index (d, g or r) is absent from the record."""


# -- serialization / CLI ----------------------------------------------------

class ParseError(GradedValError):
    """Malformed input document."""
