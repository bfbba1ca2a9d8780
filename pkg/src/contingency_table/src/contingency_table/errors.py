"""Error hierarchy shared by every latentem package."""


class LatentModelError(ValueError):
    """Base class for invalid tables, models and fitting inputs."""


class NegativeEntryError(LatentModelError):
    """A count or frequency is negative."""


class ZeroTableError(LatentModelError):
    """The table carries no positive mass."""


class ZeroLineError(LatentModelError):
    """A row or column of the table sums to zero."""

    def __init__(self, axis: str, index: int, label: str | None = None) -> None:
        self.axis = axis
        self.index = index
        self.label = label
        name = f"{index}" if label is None else f"{index} ({label!r})"
        super().__init__(f"{axis} {name} sums to zero")


class SupportMismatchError(LatentModelError):
    """The model puts zero mass where the data has positive mass."""


class NotSquareError(LatentModelError):
    """A square table was required."""


class NotSymmetricError(LatentModelError):
    """A symmetric table was required."""


class LambdaOutOfRangeError(LatentModelError):
    """The inflation factor would make some table entry negative."""

    def __init__(self, lam: float, bound: float) -> None:
        self.lam = lam
        self.bound = bound
        super().__init__(
            f"inflation factor {lam} outside [1, {bound}] allowed by non-negativity"
        )


class EmptyGroupError(LatentModelError):
    """A hard partition leaves some group without members."""


class SquareOnlyError(LatentModelError):
    """The operation needs as many row groups as column groups."""


class ZeroRowGroupError(LatentModelError):
    """A latent group has zero outgoing mass."""


class MarginMismatchError(LatentModelError):
    """Model vertex weights differ from the table margins."""


class SymmetryViolationError(LatentModelError):
    """The symmetric variant received asymmetric data or parameters."""


class InfeasibleWeightsError(LatentModelError):
    """Emissions cannot reproduce the observed frequencies."""

    def __init__(self, residual: float, threshold: float) -> None:
        self.residual = residual
        self.threshold = threshold
        super().__init__(
            f"group weights leave residual {residual:.3g} above {threshold:.3g}"
        )


class EmptyTextError(LatentModelError):
    """The text yields fewer than two tokens."""


class UnmappableEncodingError(LatentModelError):
    """The text file cannot be decoded."""


class ConfigError(LatentModelError):
    """Invalid run configuration."""


__all__ = [
    "ConfigError",
    "EmptyGroupError",
    "EmptyTextError",
    "InfeasibleWeightsError",
    "LambdaOutOfRangeError",
    "LatentModelError",
    "MarginMismatchError",
    "NegativeEntryError",
    "NotSquareError",
    "NotSymmetricError",
    "SquareOnlyError",
    "SupportMismatchError",
    "SymmetryViolationError",
    "UnmappableEncodingError",
    "ZeroLineError",
    "ZeroRowGroupError",
    "ZeroTableError",
]
