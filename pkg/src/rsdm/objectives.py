"""Test functions: a symmetric bowl, Bohachevsky's bowl and a narrow tilted valley."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .core import ConfigurationError, ParameterVector


def f1(x: float, y: float, z: float) -> float:
    """Three dimensional sphere. Minimum 0 at the origin."""
    return x * x + y * y + z * z


def f6(x: float, y: float) -> float:
    """Bohachevsky's multi-modal bowl. Minimum 0 at (0, 0)."""
    return (x * x + 2.0 * y * y
            - 0.3 * math.cos(3.0 * math.pi * x)
            - 0.4 * math.cos(4.0 * math.pi * y)
            + 0.7)


def f9(x: float, y: float) -> float:
    """Narrow quadratic valley whose long axis runs along y = x.

    Curvature across the valley is 10^4 times that along it.
    Minimum 0 at (0, 0).
    """
    a = x + y
    b = 100.0 * y - 100.0 * x
    return a * a + b * b


@dataclass(frozen=True)
class Objective:
    name: str
    dim: int
    func: Callable[..., float]
    init_box: Tuple[Tuple[float, float], ...]
    optimum_value: float
    optimum_point: ParameterVector

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigurationError(f"{self.name}: dim must be >= 1")
        if len(self.init_box) != self.dim or len(self.optimum_point) != self.dim:
            raise ConfigurationError(
                f"{self.name}: init_box and optimum_point need {self.dim} entries"
            )
        for lo, hi in self.init_box:
            if not lo < hi:
                raise ConfigurationError(f"{self.name}: empty init interval [{lo}, {hi}]")

    def __call__(self, x: Sequence[float]) -> float:
        return self.func(*x)

    def eval(self, x: Sequence[float]) -> float:
        return self.func(*x)

    @property
    def mean_width(self) -> float:
        return sum(hi - lo for lo, hi in self.init_box) / self.dim

    @classmethod
    def vectorial(cls, name, dim, func, box, optimum_value=0.0, optimum_point=None):
        """Wrap ``func(vector)`` of any dimension, with the same box on every axis."""
        point = tuple(optimum_point) if optimum_point is not None else (0.0,) * dim
        return cls(name, dim, lambda *x: func(x), (tuple(box),) * dim,
                   optimum_value, point)


F1 = Objective("F1", 3, f1, ((-5.12, 5.12),) * 3, 0.0, (0.0, 0.0, 0.0))
F6 = Objective("F6", 2, f6, ((-50.0, 50.0),) * 2, 0.0, (0.0, 0.0))
F9 = Objective("F9", 2, f9, ((-20.0, 20.0),) * 2, 0.0, (0.0, 0.0))

_REGISTRY: Dict[str, Objective] = {o.name: o for o in (F1, F6, F9)}


def registry() -> List[Objective]:
    return list(_REGISTRY.values())


def register(objective: Objective) -> None:
    """Make a user objective addressable by name."""
    _REGISTRY[objective.name] = objective


def get(name: str) -> Objective:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown function {name!r}; valid: {', '.join(_REGISTRY)}"
        ) from None
