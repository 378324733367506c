"""Exception hierarchy shared by every peakwalk module."""

from __future__ import annotations


class PeakwalkError(Exception):
    """Base class for library errors."""


class BadParam(PeakwalkError, ValueError):
    pass


class UnknownName(PeakwalkError, KeyError):
    pass


class MalformedGraph6(PeakwalkError, ValueError):
    pass


class UnsupportedOrder(PeakwalkError, ValueError):
    pass


class NotSymmetric(PeakwalkError, ValueError):
    pass


class EigensolverFailure(PeakwalkError, RuntimeError):
    pass


class RecognitionFailure(PeakwalkError):
    """No quadratic-integer form fits the eigenvalues."""


class AmbiguousFit(PeakwalkError):
    """More than one quadratic-integer form fits; the tolerance is too loose."""


class OutOfRange(PeakwalkError, ValueError):
    pass


class Disconnected(PeakwalkError, ValueError):
    pass
