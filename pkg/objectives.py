"""
Objective functions over triangle profiles.

f1 counts distinct triangle-degrees (maximised, n for TD graphs), f2 counts
vertex pairs sharing a triangle-degree (minimised, 0 for TD graphs) and f3
sums 1/(t_i - t_{i+1} + 1/n) over the descending profile (minimised, below n
exactly for TD graphs).
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from math import comb

# Strict-improvement margin for f3 comparisons
F3_EPSILON = 1e-9


class ObjectiveKind(Enum):
    F1 = 'f1'
    F2 = 'f2'
    F3 = 'f3'

    @property
    def maximize(self):
        return self is ObjectiveKind.F1

    @property
    def direction(self):
        return 'maximize' if self.maximize else 'minimize'

    @classmethod
    def parse(cls, name):
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"Unknown objective {name!r}, expected one of f1, f2, f3") from None


@dataclass(frozen=True)
class ObjectiveValue:
    value: float
    kind: ObjectiveKind

    @property
    def direction(self):
        return self.kind.direction

    def better_than(self, other):
        return is_improvement(self.kind, self.value, other.value)

    def to_dict(self):
        return {'objective': self.kind.value, 'value': self.value, 'direction': self.direction}


def _values(profile):
    return profile.t if hasattr(profile, 't') else tuple(profile)


def f1(profile):
    return len(set(_values(profile)))


def f2(profile):
    return sum(comb(size, 2) for size in Counter(_values(profile)).values())


def f3(profile):
    values = sorted(_values(profile), reverse=True)
    n = len(values)
    if n < 2:
        raise ValueError("f3 needs at least two vertices")
    inv_n = 1.0 / n
    total = 0.0
    for i in range(n - 1):
        total += 1.0 / ((values[i] - values[i + 1]) + inv_n)
    return total


OBJECTIVES = {
    ObjectiveKind.F1: f1,
    ObjectiveKind.F2: f2,
    ObjectiveKind.F3: f3,
}


def evaluate(kind, profile):
    return OBJECTIVES[kind](profile)


def objective_value(kind, profile):
    return ObjectiveValue(evaluate(kind, profile), kind)


def is_improvement(kind, candidate, incumbent):
    """True if candidate is strictly better than incumbent for this objective."""
    if kind is ObjectiveKind.F1:
        return candidate > incumbent
    if kind is ObjectiveKind.F2:
        return candidate < incumbent
    return candidate < incumbent - F3_EPSILON


def is_triangle_distinct(profile):
    values = _values(profile)
    return len(set(values)) == len(values)


def check_necessary_condition(n, r):
    """C(r,2) >= n-1 must hold for an r-regular TD graph on n vertices to exist."""
    return comb(r, 2) >= n - 1
