"""Three-valued answers for searches that may be cut short by a budget."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any


class Truth(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """``NO`` only comes from an exhaustive search; ``YES`` always carries a witness."""

    value: Truth
    mode: str  # "exhaustive" | "witness" | "budget"
    witness: Any = None
    reason: str = ""

    @classmethod
    def yes(cls, witness, mode: str = "exhaustive", reason: str = "") -> "Verdict":
        if witness is None:
            raise ValueError("a YES verdict needs a witness")
        return cls(Truth.YES, mode, witness, reason)

    @classmethod
    def no(cls, reason: str = "") -> "Verdict":
        return cls(Truth.NO, "exhaustive", None, reason)

    @classmethod
    def unknown(cls, reason: str = "", mode: str = "budget") -> "Verdict":
        return cls(Truth.UNKNOWN, mode, None, reason)

    @classmethod
    def of(cls, flag: bool, witness=True, reason: str = "") -> "Verdict":
        return cls.yes(witness, reason=reason) if flag else cls.no(reason)

    @property
    def is_yes(self) -> bool:
        return self.value is Truth.YES

    @property
    def is_no(self) -> bool:
        return self.value is Truth.NO

    @property
    def is_unknown(self) -> bool:
        return self.value is Truth.UNKNOWN

    @property
    def decided(self) -> bool:
        return self.value is not Truth.UNKNOWN

    def as_bool(self) -> bool | None:
        return None if self.is_unknown else self.is_yes

    def negate(self) -> "Verdict":
        if self.is_yes:
            return Verdict.no(self.reason)
        if self.is_no:
            return Verdict.yes(True, reason=self.reason)
        return self

    def __bool__(self) -> bool:
        raise TypeError("Verdict is three-valued; use .is_yes / .is_no / .as_bool()")

    def __str__(self) -> str:
        return self.value.value


def v_and(*vs: Verdict) -> Verdict:
    if any(v.is_no for v in vs):
        return Verdict.no()
    if all(v.is_yes for v in vs):
        return Verdict.yes(True, mode="witness" if any(v.mode != "exhaustive" for v in vs) else "exhaustive")
    return Verdict.unknown()


def v_or(*vs: Verdict) -> Verdict:
    for v in vs:
        if v.is_yes:
            return v
    if all(v.is_no for v in vs):
        return Verdict.no()
    return Verdict.unknown()
