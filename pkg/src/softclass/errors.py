"""Exception hierarchy shared by every module in the package."""


class SoftClassError(ValueError):
    """Base class for all validation and evaluation errors."""


class DuplicateName(SoftClassError):
    pass


class UnknownAttribute(SoftClassError):
    pass


class UnknownElement(SoftClassError):
    pass


class ContextMismatch(SoftClassError):
    pass


class EmptyParameterIntersection(SoftClassError):
    pass


class NotASuperset(SoftClassError):
    pass


class PartialPointMap(SoftClassError):
    pass


class PartialAttributeMap(SoftClassError):
    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = tuple(missing)


class BoundsExceeded(SoftClassError):
    pass


class EmptyTarget(SoftClassError):
    pass


class SideConditionUnmet(SoftClassError):
    pass


class DocumentSyntaxError(SoftClassError):
    pass


class SchemaError(SoftClassError):
    pass
