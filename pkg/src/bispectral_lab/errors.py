"""Exception hierarchy shared by all modules."""


class BispectralError(Exception):
    """Base class for all library errors."""


class DegenerateParameter(BispectralError):
    """A parameter combination makes a required denominator vanish."""


class NonConvergent(BispectralError):
    """A series or product failed to meet its stopping criterion."""


class BranchAmbiguity(BispectralError):
    """A non-integer power was requested on a branch cut."""


class PoleAtSamplePoint(BispectralError):
    """An operator coefficient was evaluated at one of its poles."""


class NotInvariant(BispectralError):
    """An object expected to be fixed by the involution is not."""


class NotLaurentPolynomial(BispectralError):
    """A rational function with nontrivial denominator where a Laurent
    polynomial is required."""


class MissingExtensionData(BispectralError):
    """Half-integer exponents present but the data fixing the extended
    involution is missing or ambiguous."""


class NoSolution(BispectralError):
    """A band linear solve for an intertwining operator is inconsistent."""


class NotDivisible(BispectralError):
    """Left factorization requested where no exact factor exists."""


class DependentKernel(BispectralError):
    """Casorati determinant of kernel functions vanishes identically."""


class IllConditioned(BispectralError):
    """A numerical solve or quadrature failed its conditioning check."""
