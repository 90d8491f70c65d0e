"""Deterministic input families for the verification suites.

A family is (generator id, seed, size parameters); the same triple always
produces the same sequences.  All generators emit nonnegative sequences
with short dense supports (desk scale), which is what the positive suites
quantify over; signedness is exercised separately by the operator tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import FiniteSequence

__all__ = ["InputFamily", "GENERATORS"]

GENERATORS = ("delta", "indicator", "ramp", "random", "mixed")


@dataclass(frozen=True)
class InputFamily:
    generator: str
    seed: int
    cases: int = 12
    max_support: int = 64
    max_value: float = 8.0
    span: int = 32

    def __post_init__(self) -> None:
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}")
        if self.cases < 1:
            raise ValueError("need at least one case")

    def label(self) -> str:
        return f"{self.generator}/seed{self.seed}/n{self.cases}"

    def sequences(self) -> list[FiniteSequence]:
        rng = np.random.default_rng(self.seed)
        out = []
        for i in range(self.cases):
            gen = self.generator
            if gen == "mixed":
                gen = ("delta", "indicator", "ramp", "random")[i % 4]
            out.append(self._one(gen, rng, first=(i == 0)))
        return out

    def _one(self, gen: str, rng: np.random.Generator, first: bool) -> FiniteSequence:
        if gen == "delta":
            if first:
                return FiniteSequence.delta(0)
            pos = int(rng.integers(-self.span, self.span + 1))
            scale = float(rng.uniform(0.25, self.max_value))
            return FiniteSequence.delta(pos, scale)
        length = int(rng.integers(2, self.max_support + 1))
        lo = int(rng.integers(-self.span, self.span - min(length, 2 * self.span) + 2))
        if gen == "indicator":
            return FiniteSequence.indicator(lo, lo + length - 1)
        if gen == "ramp":
            scale = float(rng.uniform(0.25, self.max_value))
            vals = np.linspace(scale / length, scale, length)
            if rng.integers(2):
                vals = vals[::-1].copy()
            return FiniteSequence(lo, vals)
        vals = rng.uniform(0.0, self.max_value, size=length)
        vals[rng.uniform(size=length) < 0.1] = 0.0
        if not np.any(vals):
            vals[0] = 1.0
        return FiniteSequence(lo, vals)
