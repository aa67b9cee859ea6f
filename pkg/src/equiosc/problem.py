"""Node systems and problem bundles.

A problem couples a kernel, a field, and n positive multipliers r_j; a node
system is a sorted vector in the closed simplex 0 ≤ y_1 ≤ … ≤ y_n ≤ 1 with
sentinels y_0 = 0 and y_{n+1} = 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AdmissibilityError, PreconditionError, SchemaError
from .fields import PiecewiseField, field_admissible, field_from_json, field_to_json
from .kernels import KernelSpec, kernel_from_json, kernel_to_json

__all__ = [
    "NodeSystem",
    "Problem",
    "problem_from_json",
    "problem_to_json",
    "load_problem",
    "dump_problem",
]


@dataclass(frozen=True)
class NodeSystem:
    """Sorted node vector in the closed simplex over [0, 1]."""

    nodes: tuple[float, ...]

    def __post_init__(self):
        nodes = tuple(float(v) for v in self.nodes)
        if not nodes:
            raise PreconditionError("a node system needs at least one node")
        prev = 0.0
        for v in nodes:
            if math.isnan(v) or v < 0.0 or v > 1.0:
                raise PreconditionError(f"node {v!r} outside [0, 1]")
            if v < prev:
                raise PreconditionError("nodes must be sorted ascending")
            prev = v
        object.__setattr__(self, "nodes", nodes)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def strict(self) -> bool:
        """Membership in the open simplex: 0 < y_1 < … < y_n < 1."""
        ys = self.with_sentinels()
        return all(a < b for a, b in zip(ys, ys[1:]))

    def with_sentinels(self) -> tuple[float, ...]:
        return (0.0,) + self.nodes + (1.0,)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.nodes, dtype=float)

    def __iter__(self):
        return iter(self.nodes)

    def __len__(self):
        return len(self.nodes)


def as_node_system(y) -> NodeSystem:
    if isinstance(y, NodeSystem):
        return y
    if isinstance(y, (int, float)):
        return NodeSystem((float(y),))
    return NodeSystem(tuple(float(v) for v in y))


@dataclass(frozen=True)
class Problem:
    """n, multipliers r, kernel, and an admissible field on [0, 1]."""

    n: int
    r: tuple[float, ...]
    kernel: KernelSpec
    field: PiecewiseField

    def __post_init__(self):
        if int(self.n) < 1:
            raise SchemaError("n must be a positive integer")
        object.__setattr__(self, "n", int(self.n))
        r = tuple(float(v) for v in self.r)
        if len(r) != self.n:
            raise SchemaError(f"expected {self.n} multipliers, got {len(r)}")
        if any(not math.isfinite(v) or v <= 0.0 for v in r):
            raise SchemaError("all multipliers r_j must be finite and positive")
        object.__setattr__(self, "r", r)
        if self.field.domain != (0.0, 1.0):
            raise SchemaError("problem fields live on [0, 1]")
        if not field_admissible(self.field, self.n):
            raise AdmissibilityError(
                f"field is finite at too few points for n={self.n} (weighted count)"
            )

    def node_system(self, y) -> NodeSystem:
        ns = as_node_system(y)
        if ns.n != self.n:
            raise PreconditionError(f"expected {self.n} nodes, got {ns.n}")
        return ns


def problem_to_json(problem: Problem) -> dict:
    return {
        "n": problem.n,
        "r": list(problem.r),
        "kernel": kernel_to_json(problem.kernel),
        "field": field_to_json(problem.field),
    }


def problem_from_json(doc: dict) -> Problem:
    try:
        n = int(doc["n"])
        r = tuple(float(v) for v in doc["r"])
        kernel = kernel_from_json(doc["kernel"])
        field = field_from_json(doc["field"])
    except (TypeError, KeyError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed problem document: {exc}") from exc
    return Problem(n=n, r=r, kernel=kernel, field=field)


def load_problem(path) -> Problem:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    return problem_from_json(doc)


def dump_problem(problem: Problem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(problem_to_json(problem), fh, indent=2)
        fh.write("\n")
