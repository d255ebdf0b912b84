"""Random configurations and the transformations that must not change a verdict."""

from __future__ import annotations

import random
from fractions import Fraction

from hypersing.smoothing import (
    CALABI_YAU,
    TAG_LIMINAL,
    TAG_ONE_RATIONAL,
    TAG_STRONG,
    Configuration,
    SingularPointRecord,
)

SCALES = [Fraction(x) for x in (1, -1, 2, -2, 3)] + [Fraction(1, 2), Fraction(-2, 3)]


def random_configuration(rng: random.Random) -> Configuration:
    n = rng.choice((3, 4, 5))
    tags = [TAG_LIMINAL] * rng.randint(1, 5) + [TAG_STRONG] * rng.randint(0, 2)
    if rng.random() < 0.1:
        tags.append(TAG_ONE_RATIONAL)
    rng.shuffle(tags)
    points = tuple(SingularPointRecord(f"p{i}", tag) for i, tag in enumerate(tags))
    m = tags.count(TAG_LIMINAL)
    rows = rng.randint(0, 4)
    phi = tuple(tuple(Fraction(rng.randint(-2, 2)) for _ in range(m)) for _ in range(rows))
    flags = {"h1_O_vanishes": rng.random() < 0.9, "deformations_unobstructed": rng.random() < 0.5}
    return Configuration(CALABI_YAU, n, points, phi, flags)


def scale_columns(config: Configuration, rng: random.Random) -> Configuration:
    m = len(config.liminal_points())
    scales = [rng.choice(SCALES) for _ in range(m)]
    phi = tuple(tuple(x * s for x, s in zip(row, scales)) for row in config.relation_matrix)
    return Configuration(config.variety_kind, config.n, config.points, phi, config.flags)


def row_operations(config: Configuration, rng: random.Random, steps: int = 6) -> Configuration:
    rows = [list(r) for r in config.relation_matrix]
    for _ in range(steps if len(rows) > 0 else 0):
        op = rng.randrange(3)
        i = rng.randrange(len(rows))
        if op == 0:
            j = rng.randrange(len(rows))
            rows[i], rows[j] = rows[j], rows[i]
        elif op == 1:
            s = rng.choice(SCALES)
            rows[i] = [x * s for x in rows[i]]
        elif len(rows) > 1:
            j = rng.choice([k for k in range(len(rows)) if k != i])
            s = rng.choice(SCALES)
            rows[i] = [x + s * y for x, y in zip(rows[i], rows[j])]
    phi = tuple(tuple(r) for r in rows)
    return Configuration(config.variety_kind, config.n, config.points, phi, config.flags)


def permute_points(config: Configuration, rng: random.Random) -> Configuration:
    old_liminal = [p.id for p in config.liminal_points()]
    points = list(config.points)
    rng.shuffle(points)
    new_liminal = [p.id for p in points if p.tag == TAG_LIMINAL]
    order = [old_liminal.index(pid) for pid in new_liminal]
    phi = tuple(tuple(row[k] for k in order) for row in config.relation_matrix)
    return Configuration(config.variety_kind, config.n, tuple(points), phi, config.flags)


TRANSFORMS = (scale_columns, row_operations, permute_points)
