"""Exception hierarchy shared by all egocircles modules."""


class EgoCirclesError(Exception):
    """Base class for every error raised by the package."""

    def __init__(self, message: str = "", ego_id: str | None = None):
        self.ego_id = ego_id
        if ego_id is not None:
            message = f"[ego {ego_id}] {message}"
        super().__init__(message)


class FatalFormat(EgoCirclesError):
    pass


class EmptyInput(EgoCirclesError):
    pass


class ZeroSpan(EgoCirclesError):
    pass


class SpanTooShort(EgoCirclesError):
    pass


class TooFewDistinct(EgoCirclesError):
    pass


class EmptyNetwork(EgoCirclesError):
    pass


class DegenerateNetwork(EgoCirclesError):
    pass


class InsufficientSample(EgoCirclesError):
    pass


class UndefinedC(EgoCirclesError):
    pass


class Underdetermined(EgoCirclesError):
    pass


class DegenerateDesign(EgoCirclesError):
    pass


class InvalidConfig(EgoCirclesError):
    pass
