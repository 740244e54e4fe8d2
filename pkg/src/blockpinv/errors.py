"""Exception and warning types."""

import numpy as np


class GenInvError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(GenInvError, ValueError):
    """Shapes of the operands are not conformable."""


class SVDConvergenceError(GenInvError, np.linalg.LinAlgError):
    """The singular value decomposition did not converge."""


class MembershipError(GenInvError, ValueError):
    """A matrix failed a Penrose-equation membership check."""


class NotHermitianPSDError(GenInvError, ValueError):
    """A matrix expected to be Hermitian nonnegative definite is not."""


class NotProjectorError(GenInvError, ValueError):
    """A matrix expected to be an orthogonal projector is not."""


class NotComplementaryError(GenInvError, ValueError):
    """Two subspaces do not form a direct sum decomposition of the ambient space."""


class IllConditionedWarning(UserWarning):
    """Result is exact in exact arithmetic but numerically ill-conditioned."""
