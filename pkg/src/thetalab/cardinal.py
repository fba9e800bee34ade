"""Cardinal values: natural numbers plus a single countable-infinity symbol."""

from functools import total_ordering


@total_ordering
class Cardinal:
    """Either a finite non-negative integer or the symbol omega.

    Only the arithmetic needed by the cardinality routines is provided:
    addition, comparison, and display.
    """

    __slots__ = ("_value",)

    def __init__(self, value):
        if value == "omega":
            self._value = "omega"
        else:
            assert isinstance(value, int) and value >= 0, value
            self._value = value

    @property
    def finite(self):
        return self._value != "omega"

    @property
    def value(self):
        """The integer value; only meaningful when finite."""
        assert self.finite, "omega has no integer value"
        return self._value

    def __add__(self, other):
        if isinstance(other, int):
            other = Cardinal(other)
        if not self.finite or not other.finite:
            return OMEGA
        return Cardinal(self._value + other._value)

    __radd__ = __add__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.finite and self._value == other
        if isinstance(other, Cardinal):
            return self._value == other._value
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int):
            other = Cardinal(other)
        if not isinstance(other, Cardinal):
            return NotImplemented
        if not self.finite:
            return False
        if not other.finite:
            return True
        return self._value < other._value

    def __hash__(self):
        return hash(("Cardinal", self._value))

    def __repr__(self):
        return "ω" if not self.finite else str(self._value)


OMEGA = Cardinal("omega")
