"""Seeded samplers for free-product words and elements.

Every randomized estimate in the library draws through a
:class:`SamplerConfig`, so runs are reproducible by seed.  Samplers emit
values already in canonical form (alternating factors, nonzero values),
which keeps the hot paths allocation-light.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import islice
from typing import Iterator

from .free_product import FreeProductElement, FreeProductRack, SyllableWord
from .words import AbelianWord

__all__ = [
    "SamplerConfig",
    "make_rng",
    "sample_syllable_word",
    "sample_element",
    "iter_sample_elements",
    "enumerate_syllable_words",
]


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    samples: int = 10_000
    max_syllables: int = 12
    max_exponent: int = 5


def make_rng(config: SamplerConfig) -> random.Random:
    return random.Random(config.seed)


def sample_syllable_word(
    parent: FreeProductRack,
    rng: random.Random,
    max_syllables: int,
    max_exponent: int,
    avoid_leading: str | None = None,
) -> SyllableWord:
    """A random alternating word of up to ``max_syllables`` syllables;
    ``avoid_leading`` keeps the first syllable out of one factor."""
    length = rng.randint(0, max_syllables)
    names = parent.factor_names
    syllables: list[tuple[str, AbelianWord]] = []
    previous = avoid_leading
    for _ in range(length):
        name = rng.choice([n for n in names if n != previous])
        model = parent.model(name)
        syllables.append((name, model.sample_value(rng, max_exponent)))
        previous = name
    return SyllableWord(tuple(syllables))


def sample_element(
    parent: FreeProductRack,
    rng: random.Random,
    max_syllables: int,
    max_exponent: int,
) -> FreeProductElement:
    """A random reduced element with bounded tail; already canonical."""
    factor = rng.choice(parent.factor_names)
    model = parent.model(factor)
    key = model.sample_key(rng, max_exponent)
    tail = sample_syllable_word(
        parent, rng, max_syllables, max_exponent, avoid_leading=factor
    )
    return FreeProductElement(parent, factor, key, tail)


def iter_sample_elements(
    parent: FreeProductRack, config: SamplerConfig
) -> Iterator[FreeProductElement]:
    rng = make_rng(config)
    for _ in range(config.samples):
        yield sample_element(parent, rng, config.max_syllables, config.max_exponent)


def enumerate_syllable_words(
    parent: FreeProductRack, max_syllables: int, max_exponent: int
) -> Iterator[SyllableWord]:
    """All alternating words with at most ``max_syllables`` syllables and factor
    values drawn from each model's bounded enumeration (identity included).

    The count grows geometrically; meant for small exhaustive budgets.
    """
    values = {
        f.factor: tuple(f.enumerate_values(max_exponent)) for f in parent.factors
    }
    names = parent.factor_names

    def extend(prefix: tuple[tuple[str, AbelianWord], ...], last: str | None):
        yield SyllableWord(prefix)
        if len(prefix) == max_syllables:
            return
        for name in names:
            if name == last:
                continue
            for value in values[name]:
                yield from extend(prefix + ((name, value),), name)

    yield from extend((), None)


def count_enumerated_words(
    parent: FreeProductRack, max_syllables: int, max_exponent: int, limit: int
) -> int:
    """Number of words the exhaustive enumeration would yield, capped at limit."""
    return sum(
        1
        for _ in islice(
            enumerate_syllable_words(parent, max_syllables, max_exponent), limit
        )
    )
