"""Run configurations for the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field

RANDOM_SUITES = ("theorem1", "lemma3", "theorem3", "theorem4", "theorem5", "steinitz")
VERIFY_SUITES = ("theorem1", "lemma3", "theorem3", "theorem4", "theorem5", "dm", "steinitz", "curve")


@dataclass(frozen=True)
class RandomConfig:
    """Parameters of a randomized sweep.

    ``max_rank`` bounds the lattice rank for theorem1, the number of O_K
    components l for the CM suites and the ambient rank n for steinitz.
    """

    suite: str
    count: int = 100
    seed: int = 1
    max_rank: int | None = None
    fields: tuple[int, ...] | None = None
    regenerations: int = 10

    def resolved_max_rank(self) -> int:
        if self.max_rank is not None:
            return self.max_rank
        return 8 if self.suite == "theorem1" else 3

    def resolved_fields(self) -> tuple[int, ...]:
        if self.fields is not None:
            return self.fields
        return DEFAULT_FIELDS.get(self.suite, ())


DEFAULT_FIELDS: dict[str, tuple[int, ...]] = {
    "lemma3": (3, 5, 7, 10, 11, 13),
    "theorem3": (3, 7, 11, 23),
    "theorem4": (3, 7, 23),
    "theorem5": (5, 13),
    "steinitz": (5, 10, 23),
}


@dataclass(frozen=True)
class CurveSuiteConfig:
    """Sizes of the group-law property checks run on each curve entry."""

    default_range: int = 2
    scalar_max: int = 5
    scalar_points: int = 2
    mixed_max: int = 3
    mixed_points: int = 6
    pair_points: int = 10
    torsion_bound: int = 24
    extract_bound: int = 10
    map_multiples: int = 6


@dataclass(frozen=True)
class VerifyConfig:
    suite: str
    curve: CurveSuiteConfig = field(default_factory=CurveSuiteConfig)
