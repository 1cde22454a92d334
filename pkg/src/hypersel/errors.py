"""Exception taxonomy shared by all modules.

Every failure mode a caller can provoke has its own class so that tests
and the CLI can match on type instead of message text.  Internal
invariant breakage (things a caller cannot cause) raises plain
RuntimeError/AssertionError and is not part of this vocabulary.
"""


class HyperselError(Exception):
    """Base class for all package errors."""


class DuplicateLabel(HyperselError):
    """A ground set was given repeated labels."""


class MissingSubset(HyperselError):
    """A selection table is not defined on exactly the required subsets."""


class ChoiceOutsideSubset(HyperselError):
    """A selection table picks an element not contained in its subset."""


class EvenGround(HyperselError):
    """A rotational tournament needs an odd ground size."""


class NotRegular(HyperselError):
    """Operation requires a constant-score structure."""


class NotArityTwo(HyperselError):
    """Operation requires a tournament (arity-2 structure)."""


class SizeMismatch(HyperselError):
    """Two objects that must have equal size do not."""


class ArityMismatch(HyperselError):
    """Two structures that must have equal arity do not."""


class BudgetExceeded(HyperselError):
    """An enumeration or search hit its resource cap before finishing."""


class NotPrime(HyperselError):
    """A parameter required to be prime is not."""


class OutOfRange(HyperselError):
    """A numeric parameter is outside its documented range."""


class ArityNotInDomain(HyperselError):
    """A partial selection does not admit the requested arity."""


class RegularInput(HyperselError):
    """The level-class split is undefined for regular structures."""


class HypothesisViolated(HyperselError):
    """An extension precondition (primality, size, divisibility) fails."""


class PrimeInput(HyperselError):
    """The composite-arity shortcut was invoked with a prime successor."""


class NotAMember(HyperselError):
    """The designated target open is not a member of the family."""


class NoTransversal(HyperselError):
    """A family member contains no sample point, so no transversal exists."""


class NotModelContinuous(HyperselError):
    """Neighborhood shrinking hit the radius floor without preserving."""


class NotIso(HyperselError):
    """A map claimed to be an isomorphism is not one."""


class BrokenLink(HyperselError):
    """Two consecutive chain families lack the unique-meet property."""


class NotNice(HyperselError):
    """A family system failed the niceness check."""


class NonBijectiveTransfer(HyperselError):
    """Selection construction requires bijective transfer maps."""


class PreconditionUnverified(HyperselError):
    """Ambient hypotheses of a checked implication could not be
    established, so a verdict would be meaningless."""


class DocumentError(HyperselError):
    """A JSON document is malformed or carries unknown fields."""
