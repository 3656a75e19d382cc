"""Verification suite request and report."""

from typing import Literal

from pydantic import BaseModel, Field

SuiteName = Literal["oracle", "genfun", "props"]


class CheckFailure(BaseModel):
    """A failed check and what went wrong."""

    name: str
    detail: str


class VerifyReport(BaseModel):
    """Outcome of one suite run; identical for identical (suite, seed, trials)."""

    suite: SuiteName
    seed: int
    trials: int
    checks: int = Field(0, ge=0, description="Number of checks executed")
    failures: int = Field(0, ge=0, description="Number of failed checks")
    failed: list[CheckFailure] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0


class VerifyRequest(BaseModel):
    suite: SuiteName = "oracle"
    seed: int = 1
    trials: int = Field(10, ge=1, le=200)
