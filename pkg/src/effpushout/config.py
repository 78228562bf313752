"""
Runtime settings.

Verification of reductions and equivalences walks every generator of the
complexes involved. Above a size threshold it switches to a seeded sample;
the threshold, sample size and seed live here.
"""

from __future__ import annotations

import os

from pydantic import BaseModel, Field

ENV_LIMIT = "EFFPUSHOUT_VERIFY_LIMIT"
ENV_SAMPLE = "EFFPUSHOUT_VERIFY_SAMPLE"
ENV_SEED = "EFFPUSHOUT_VERIFY_SEED"


class VerificationSettings(BaseModel):
    """How exhaustively reductions are checked."""
    exhaustive_limit: int = Field(
        default=5000, ge=0,
        description="Complexes with at most this many generators are checked on every generator",
    )
    sample_size: int = Field(
        default=1000, ge=1,
        description="Number of generators checked per complex above the limit",
    )
    seed: int = Field(default=0, description="Seed for the sample")

    @classmethod
    def from_env(cls) -> VerificationSettings:
        """Build settings from EFFPUSHOUT_VERIFY_* variables, defaults otherwise."""
        data: dict[str, str] = {}
        for key, var in (
            ("exhaustive_limit", ENV_LIMIT),
            ("sample_size", ENV_SAMPLE),
            ("seed", ENV_SEED),
        ):
            value = os.environ.get(var)
            if value is not None and value.strip():
                data[key] = value.strip()
        return cls.model_validate(data)


def resolve_settings(settings: VerificationSettings | None) -> VerificationSettings:
    """Return `settings`, or the environment-derived defaults."""
    return settings if settings is not None else VerificationSettings.from_env()
