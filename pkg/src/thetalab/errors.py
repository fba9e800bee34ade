"""Exception types shared across the workbench."""


class ThetaLabError(Exception):
    """Base class for every error raised by this package."""


class IncompatibleProfiles(ThetaLabError):
    """Composition or comparison of shape morphisms whose endpoints do not match."""


class BoundExceeded(ThetaLabError):
    """A level outside the degree bound of a presheaf was requested."""


class InvalidFace(ThetaLabError):
    """A face specification does not name a face of the given cell constructor."""


class AssemblyMismatch(ThetaLabError):
    """A glued cell constructor failed to match the direct construction."""


class NotSegal(ThetaLabError):
    """Reconstruction from a 1-level presheaf hit a non-bijective Segal map."""

    def __init__(self, p, witness=None):
        self.p = p
        self.witness = witness
        super().__init__(f"Segal map at p={p} is not bijective (witness={witness!r})")


class SliceNotCategory(ThetaLabError):
    """A slice of the checked presheaf is not itself a category."""

    def __init__(self, p, inner=None):
        self.p = p
        self.inner = inner
        super().__init__(f"slice at p={p} is not a category: {inner}")


class SegalFails(ThetaLabError):
    """A Segal map failed to be an equivalence during a category check."""

    def __init__(self, p, detail=None):
        self.p = p
        self.detail = detail
        super().__init__(f"Segal map at p={p} is not an equivalence: {detail}")


class CapExceeded(ThetaLabError):
    """Closure of a generated category exceeded the hom-set cap."""

    def __init__(self, cap, where=None):
        self.cap = cap
        self.where = where
        super().__init__(f"hom-set cap {cap} exceeded at {where!r}; category may be infinite")


class BudgetExceeded(ThetaLabError):
    """An enumeration search exceeded its node budget."""

    def __init__(self, budget, what=""):
        self.budget = budget
        super().__init__(f"search budget {budget} exceeded {what}")


class NotIdempotent(ThetaLabError):
    """The telescope construction needs a strictly idempotent endomorphism."""


class AlphaTooSmall(ThetaLabError):
    """The ambient size cannot accommodate the direct limit being built."""


class UndecidableFixture(ThetaLabError):
    """The comparison was asked outside the decidable fixture class."""


class FixtureError(ThetaLabError):
    """A fixture file is malformed or internally inconsistent."""
