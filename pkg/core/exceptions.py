"""Error states of the maps and charts."""


class DomainError(ValueError):
    """A point or parameter lies outside the domain of the requested map."""


class DegenerateDirectionError(DomainError):
    """A polar angle was requested for the chart center itself."""


class OutOfDomainError(DomainError):
    """The inverse collapse map is undefined at the point (boundary or slit)."""


class SlitError(OutOfDomainError):
    """A point lies on one of the slits [v5, v9] or [v0, v6]."""


class OrbitEscapeError(DomainError):
    """An orbit left the domain of its map."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step
