"""Small result types shared by validators and predicates."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome carrying a witness for diagnosability.

    Predicates return a Verdict instead of a bare bool so that a negative
    answer always explains itself (the failing epsilon, the offending pair,
    the missing point).  Truthiness follows `ok`.
    """

    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class CheckFailure:
    check: str
    witness: dict


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a structural or axiomatic validation run."""

    subject: str
    failures: tuple[CheckFailure, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def failed_checks(self) -> tuple[str, ...]:
        return tuple(f.check for f in self.failures)
