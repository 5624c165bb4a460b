"""
Exception hierarchy for spherical_kit.
Every failure the library raises on purpose derives from SphericalKitError.
"""


class SphericalKitError(Exception):
    """Base class; the CLI maps these to non-zero exit codes."""


# ---------- root data ----------
class RankMismatch(SphericalKitError):
    pass


class IndexOutOfRange(SphericalKitError):
    pass


class NonDominant(SphericalKitError):
    pass


class OutsideLattice(SphericalKitError):
    pass


# ---------- trigonometric ring ----------
class NonDivisible(SphericalKitError):
    pass


class NotCosPolynomial(SphericalKitError):
    pass


# ---------- intertwiners ----------
class FactorMismatch(SphericalKitError):
    pass


class OrbitMismatch(SphericalKitError):
    pass


# ---------- radial part / solver ----------
class NonBlockDiagonal(SphericalKitError):
    pass


class NotInSpan(SphericalKitError):
    pass


class DependentBasis(SphericalKitError):
    pass


class EigenspaceNotOneDimensional(SphericalKitError):
    pass


class NormalizationError(SphericalKitError):
    pass


# ---------- integration ----------
class ReductionFailed(SphericalKitError):
    pass


# ---------- oracle ----------
class CapExceeded(SphericalKitError):
    pass


class PeelingError(SphericalKitError):
    pass


# ---------- cli ----------
class JobValidationError(SphericalKitError):
    def __init__(self, errors):
        super().__init__(f"Validation failed: {errors}")
        self.errors = errors
