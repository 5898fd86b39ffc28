"""Signed log-magnitude reals for constants that overflow a double."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class LogReal:
    """A real number stored as ``sign * exp(log)``.

    ``sign`` is -1, 0 or +1. For zero, ``log`` is ``-inf``.
    """

    sign: int
    log: float

    @classmethod
    def from_float(cls, x: float) -> "LogReal":
        if x == 0:
            return cls(0, -math.inf)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, log: float) -> "LogReal":
        return cls(1, log)

    @property
    def value(self) -> float | None:
        """Plain float, or None when it would overflow."""
        if self.sign == 0:
            return 0.0
        if self.log > 709.78:
            return None
        return self.sign * math.exp(self.log)

    @property
    def log10(self) -> float:
        return self.log / math.log(10.0)

    def __mul__(self, other: "LogReal") -> "LogReal":
        if self.sign == 0 or other.sign == 0:
            return LogReal(0, -math.inf)
        return LogReal(self.sign * other.sign, self.log + other.log)

    def __truediv__(self, other: "LogReal") -> "LogReal":
        if other.sign == 0:
            raise ZeroDivisionError("division by LogReal zero")
        if self.sign == 0:
            return self
        return LogReal(self.sign * other.sign, self.log - other.log)

    def __float__(self) -> float:
        v = self.value
        return math.copysign(math.inf, self.sign) if v is None else v
