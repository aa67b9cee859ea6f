"""Piecewise-defined external field functions.

A field is an upper semicontinuous function J: [lo, hi] → R ∪ {−∞} stored as
an ordered list of closed-form pieces plus optional isolated point overrides.
The value at a breakpoint is the maximum of the one-sided piece limits and any
override there, which makes every constructible field usc by definition.

The closed-form family (constants, indicator levels, c·sqrt(s(t−t0)), logs of
such non-negative weights, identically −∞ stretches) is small on purpose:
breakpoints are exact, so per-piece maximization and singularity-set geometry
are sound. Arbitrary callables are not accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, SchemaError
from .extreal import NEG_INFINITY, ExtReal, as_extreal, is_neg_infinity

__all__ = [
    "Constant",
    "Formula",
    "Indicator",
    "LogOfWeight",
    "NegInfinityPiece",
    "Piece",
    "PiecewiseField",
    "SingularSegment",
    "SqrtAffine",
    "constant_field",
    "field_admissible",
    "field_eval",
    "field_from_json",
    "field_to_json",
    "indicator_field",
    "log_of_weight_field",
    "singularity_set",
    "sqrt_affine_field",
]

_NEG_INF = float("-inf")
_EPS_DOMAIN = 1e-12


class Formula:
    """One closed-form branch of a piecewise field."""

    kind: str = ""

    def _value(self, t: float) -> float:
        raise NotImplementedError

    def _values(self, t: np.ndarray) -> np.ndarray:
        return np.array([self._value(float(v)) for v in t])

    @property
    def concave(self) -> bool:
        """Whether this branch is concave on any interval inside its domain."""
        raise NotImplementedError

    def _validate_on(self, lo: float, hi: float) -> None:
        """Reject pieces whose formula is undefined somewhere on [lo, hi]."""

    def _neg_inf_on(self, lo: float, hi: float) -> tuple[str, tuple[float, ...]]:
        """(“all” | “points” | “none”, zero locations) for the −∞ set on [lo, hi]."""
        return ("none", ())

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(Formula):
    c: float
    kind = "Constant"

    def __post_init__(self):
        if not math.isfinite(float(self.c)):
            raise SchemaError("Constant level must be finite; use NegInfinityPiece for −∞")

    def _value(self, t):
        return float(self.c)

    def _values(self, t):
        return np.full(np.shape(t), float(self.c))

    @property
    def concave(self):
        return True

    def to_json(self):
        return {"kind": "Constant", "c": float(self.c)}


@dataclass(frozen=True)
class NegInfinityPiece(Formula):
    kind = "NegInfinity"

    def _value(self, t):
        return _NEG_INF

    def _values(self, t):
        return np.full(np.shape(t), _NEG_INF)

    @property
    def concave(self):
        return True

    def _neg_inf_on(self, lo, hi):
        return ("all", ())

    def to_json(self):
        return {"kind": "NegInfinity"}


@dataclass(frozen=True)
class Indicator(Formula):
    """A constant level carried by an indicator-style jump piece."""

    value: float
    kind = "Indicator"

    def __post_init__(self):
        if not math.isfinite(float(self.value)):
            raise SchemaError("Indicator level must be finite")

    def _value(self, t):
        return float(self.value)

    def _values(self, t):
        return np.full(np.shape(t), float(self.value))

    @property
    def concave(self):
        return True

    def to_json(self):
        return {"kind": "Indicator", "value": float(self.value)}


@dataclass(frozen=True)
class SqrtAffine(Formula):
    """c · sqrt(s·(t − t0)); requires s·(t − t0) ≥ 0 on the hosting piece."""

    c: float
    s: float
    t0: float
    kind = "SqrtAffine"

    def __post_init__(self):
        for name in ("c", "s", "t0"):
            if not math.isfinite(float(getattr(self, name))):
                raise SchemaError(f"SqrtAffine parameter {name} must be finite")
        if float(self.s) == 0.0:
            raise SchemaError("SqrtAffine slope s must be non-zero")

    def _arg(self, t: float) -> float:
        return float(self.s) * (t - float(self.t0))

    def _value(self, t):
        arg = self._arg(t)
        if arg < 0.0:
            if arg < -_EPS_DOMAIN:
                raise DomainError("sqrt argument negative inside a SqrtAffine piece")
            arg = 0.0
        return float(self.c) * math.sqrt(arg)

    def _values(self, t):
        arg = float(self.s) * (np.asarray(t, dtype=float) - float(self.t0))
        return float(self.c) * np.sqrt(np.maximum(arg, 0.0))

    @property
    def concave(self):
        return float(self.c) >= 0.0

    def _validate_on(self, lo, hi):
        if min(self._arg(lo), self._arg(hi)) < -_EPS_DOMAIN:
            raise SchemaError("SqrtAffine piece extends past the zero of its argument")

    def to_json(self):
        return {"kind": "SqrtAffine", "c": float(self.c), "s": float(self.s), "t0": float(self.t0)}


@dataclass(frozen=True)
class LogOfWeight(Formula):
    """log of a non-negative closed-form weight; −∞ exactly at the weight's zeros."""

    weight: Formula
    kind = "LogOfWeight"

    def __post_init__(self):
        if isinstance(self.weight, (NegInfinityPiece, LogOfWeight)):
            raise SchemaError("LogOfWeight expects a plain non-negative weight formula")

    def _value(self, t):
        w = self.weight._value(t)
        if w <= 0.0:
            if w < -_EPS_DOMAIN:
                raise DomainError("negative weight under LogOfWeight")
            return _NEG_INF
        return math.log(w)

    def _values(self, t):
        w = self.weight._values(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.log(np.maximum(w, 0.0))
        return out

    @property
    def concave(self):
        # log of the supported weight branches (positive constants/indicator
        # levels, non-negative sqrt-affine arcs) is concave.
        return self.weight.concave

    def _validate_on(self, lo, hi):
        self.weight._validate_on(lo, hi)
        for t in (lo, hi):
            w = self.weight._value(t)
            if w < -_EPS_DOMAIN:
                raise SchemaError("weight under LogOfWeight must be non-negative")

    def _neg_inf_on(self, lo, hi):
        w = self.weight
        if isinstance(w, Constant) and float(w.c) <= 0.0:
            return ("all", ())
        if isinstance(w, Indicator) and float(w.value) <= 0.0:
            return ("all", ())
        if isinstance(w, SqrtAffine):
            t0 = float(w.t0)
            if float(w.c) == 0.0:
                return ("all", ())
            if lo <= t0 <= hi:
                return ("points", (t0,))
        return ("none", ())

    def to_json(self):
        return {"kind": "LogOfWeight", "weight": self.weight.to_json()}


def formula_from_json(doc: dict) -> Formula:
    try:
        kind = doc["kind"]
    except (TypeError, KeyError) as exc:
        raise SchemaError(f"malformed formula document: {doc!r}") from exc
    if kind == "Constant":
        return Constant(c=float(doc["c"]))
    if kind == "NegInfinity":
        return NegInfinityPiece()
    if kind == "Indicator":
        return Indicator(value=float(doc["value"]))
    if kind == "SqrtAffine":
        return SqrtAffine(c=float(doc["c"]), s=float(doc["s"]), t0=float(doc["t0"]))
    if kind == "LogOfWeight":
        return LogOfWeight(weight=formula_from_json(doc["weight"]))
    raise SchemaError(f"unknown formula kind {kind!r}")


@dataclass(frozen=True)
class Piece:
    lo: float
    hi: float
    formula: Formula

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise SchemaError(f"piece needs lo < hi, got [{self.lo}, {self.hi}]")
        self.formula._validate_on(lo, hi)


@dataclass(frozen=True)
class SingularSegment:
    """One maximal component of the −∞ set, with endpoint membership flags."""

    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class PiecewiseField:
    """Upper semicontinuous field on a closed interval, as contiguous pieces."""

    pieces: tuple[Piece, ...]
    point_values: tuple[tuple[float, ExtReal], ...] = ()
    domain: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        lo, hi = (float(self.domain[0]), float(self.domain[1]))
        object.__setattr__(self, "domain", (lo, hi))
        if not lo < hi:
            raise SchemaError("field domain must be a non-degenerate interval")
        pieces = tuple(self.pieces)
        if not pieces:
            raise SchemaError("field needs at least one piece")
        if pieces[0].lo != lo or pieces[-1].hi != hi:
            raise SchemaError("pieces must cover the domain exactly")
        for left, right in zip(pieces, pieces[1:]):
            if left.hi != right.lo:
                raise SchemaError("pieces must be contiguous without gaps or overlaps")
        object.__setattr__(self, "pieces", pieces)
        cleaned = []
        for t, v in self.point_values:
            t = float(t)
            if not (lo <= t <= hi):
                raise SchemaError("point override outside the domain")
            cleaned.append((t, as_extreal(v)))
        cleaned.sort(key=lambda p: p[0])
        if len({t for t, _ in cleaned}) != len(cleaned):
            raise SchemaError("duplicate point overrides")
        object.__setattr__(self, "point_values", tuple(cleaned))

    # -- geometry ----------------------------------------------------------
    def knots(self) -> tuple[float, ...]:
        """All piece boundaries, domain endpoints included."""
        ks = [self.pieces[0].lo]
        ks.extend(p.hi for p in self.pieces)
        return tuple(ks)

    def interior_knots(self) -> tuple[float, ...]:
        return tuple(p.hi for p in self.pieces[:-1])

    def override_points(self) -> tuple[float, ...]:
        return tuple(t for t, _ in self.point_values)

    def pieces_at(self, t: float) -> tuple[Piece, ...]:
        return tuple(p for p in self.pieces if p.lo <= t <= p.hi)

    def piece_over(self, lo: float, hi: float) -> Piece:
        """The unique piece whose closure contains [lo, hi]."""
        mid = 0.5 * (lo + hi)
        for p in self.pieces:
            if p.lo <= mid <= p.hi:
                return p
        raise DomainError(f"no piece covers [{lo}, {hi}]")

    # -- evaluation ---------------------------------------------------------
    def _value_float(self, t: float) -> float:
        best = _NEG_INF
        for p in self.pieces_at(t):
            v = p.formula._value(t)
            if v > best:
                best = v
        for tau, ov in self.point_values:
            if tau == t:
                fov = float(ov) if not is_neg_infinity(ov) else _NEG_INF
                if fov > best:
                    best = fov
                break
        return best

    def value(self, t: float) -> ExtReal:
        t = float(t)
        lo, hi = self.domain
        if math.isnan(t) or t < lo or t > hi:
            raise DomainError(f"field argument {t!r} outside [{lo}, {hi}]")
        return as_extreal(self._value_float(t))

    def values(self, ts: np.ndarray) -> np.ndarray:
        """Vectorized usc evaluation; −∞ appears as IEEE -inf."""
        ts = np.asarray(ts, dtype=float)
        lo, hi = self.domain
        if ts.size and (np.nanmin(ts) < lo or np.nanmax(ts) > hi):
            raise DomainError("field argument outside the domain")
        out = np.full(ts.shape, _NEG_INF)
        for p in self.pieces:
            mask = (ts >= p.lo) & (ts <= p.hi)
            if mask.any():
                out[mask] = np.maximum(out[mask], p.formula._values(ts[mask]))
        for tau, ov in self.point_values:
            mask = ts == tau
            if mask.any():
                fov = float(ov) if not is_neg_infinity(ov) else _NEG_INF
                out[mask] = np.maximum(out[mask], fov)
        return out

    # -- structure ----------------------------------------------------------
    def singular_segments(self) -> tuple[SingularSegment, ...]:
        cores: list[tuple[float, float]] = []
        candidate_points: list[float] = []
        for p in self.pieces:
            mode, pts = p.formula._neg_inf_on(p.lo, p.hi)
            if mode == "all":
                cores.append((p.lo, p.hi))
            elif mode == "points":
                candidate_points.extend(pts)

        def minus_inf_at(t: float) -> bool:
            return self._value_float(t) == _NEG_INF

        merged: list[list[float]] = []
        for lo, hi in sorted(cores):
            if merged and merged[-1][1] == lo and minus_inf_at(lo):
                merged[-1][1] = hi
            else:
                merged.append([lo, hi])
        segments = [
            SingularSegment(lo, hi, minus_inf_at(lo), minus_inf_at(hi)) for lo, hi in merged
        ]
        for t in sorted(set(candidate_points)):
            if not minus_inf_at(t):
                continue
            if any(seg.lo <= t <= seg.hi for seg in segments):
                continue
            segments.append(SingularSegment(t, t, True, True))
        segments.sort(key=lambda s: (s.lo, s.hi))
        return tuple(segments)

    def finiteness_count(self, endpoints_half: bool = True) -> float:
        """Weighted count of finiteness points (endpoints weigh 1/2); may be inf."""
        for p in self.pieces:
            mode, _ = p.formula._neg_inf_on(p.lo, p.hi)
            if mode != "all":
                return math.inf
        lo, hi = self.domain
        count = 0.0
        candidates = set(self.knots()) | set(self.override_points())
        for t in candidates:
            if self._value_float(t) > _NEG_INF:
                count += 0.5 if (endpoints_half and t in (lo, hi)) else 1.0
        return count


# -- module-level operations -------------------------------------------------

def field_eval(field: PiecewiseField, t: float) -> ExtReal:
    return field.value(t)


def field_admissible(field: PiecewiseField, n: int) -> bool:
    """True iff the weighted count of finiteness points exceeds n."""
    if n < 1:
        raise SchemaError("n must be a positive integer")
    return field.finiteness_count() > n


def singularity_set(field: PiecewiseField) -> tuple[SingularSegment, ...]:
    return field.singular_segments()


# -- constructors -------------------------------------------------------------

def constant_field(c: float, domain=(0.0, 1.0)) -> PiecewiseField:
    return PiecewiseField((Piece(domain[0], domain[1], Constant(c)),), domain=domain)


def sqrt_affine_field(c: float, s: float, t0: float, domain=(0.0, 1.0)) -> PiecewiseField:
    return PiecewiseField((Piece(domain[0], domain[1], SqrtAffine(c, s, t0)),), domain=domain)


def indicator_field(
    intervals: Sequence[tuple[float, float]],
    inside: float = 1.0,
    outside: float = 0.0,
    domain=(0.0, 1.0),
) -> PiecewiseField:
    """Field equal to `inside` on the given closed intervals, `outside` elsewhere.

    With outside = −∞ (pass ``None``) use :func:`log_of_weight_field` instead.
    """
    lo, hi = domain
    pieces: list[Piece] = []
    cursor = lo
    for a, b in sorted((float(a), float(b)) for a, b in intervals):
        if a < cursor - 1e-15:
            raise SchemaError("indicator intervals must be disjoint and sorted")
        if a > cursor:
            pieces.append(Piece(cursor, a, Constant(outside)))
        pieces.append(Piece(max(a, cursor), b, Indicator(inside)))
        cursor = b
    if cursor < hi:
        pieces.append(Piece(cursor, hi, Constant(outside)))
    return PiecewiseField(tuple(pieces), domain=domain)


def log_of_weight_field(weight: PiecewiseField) -> PiecewiseField:
    """log ∘ weight, piece by piece; zero-weight stretches become −∞ pieces."""
    pieces = []
    for p in weight.pieces:
        mode, _ = p.formula._neg_inf_on(p.lo, p.hi)  # reused: zeros of log(w)
        if isinstance(p.formula, NegInfinityPiece):
            raise SchemaError("weights take values in [0, ∞); −∞ pieces are not weights")
        if isinstance(p.formula, Constant) and float(p.formula.c) <= 0.0:
            pieces.append(Piece(p.lo, p.hi, NegInfinityPiece()))
        elif isinstance(p.formula, Indicator) and float(p.formula.value) <= 0.0:
            pieces.append(Piece(p.lo, p.hi, NegInfinityPiece()))
        elif isinstance(p.formula, LogOfWeight):
            raise SchemaError("weight already contains logs; expected plain weight pieces")
        else:
            pieces.append(Piece(p.lo, p.hi, LogOfWeight(p.formula)))
    point_values = tuple(
        (t, NEG_INFINITY if is_neg_infinity(v) or float(v) <= 0.0 else math.log(float(v)))
        for t, v in weight.point_values
    )
    return PiecewiseField(tuple(pieces), point_values, domain=weight.domain)


def affine_transport(field: PiecewiseField, a: float, width: float, domain=(0.0, 1.0)) -> PiecewiseField:
    """Pull a field on [a, a+width] back to `domain` via t = a + width·u."""
    if width <= 0.0:
        raise SchemaError("affine transport needs positive width")

    def move_formula(f: Formula) -> Formula:
        if isinstance(f, SqrtAffine):
            return SqrtAffine(f.c, f.s * width, (f.t0 - a) / width)
        if isinstance(f, LogOfWeight):
            return LogOfWeight(move_formula(f.weight))
        return f

    lo, hi = domain
    span = hi - lo

    def move_point(t: float) -> float:
        return lo + span * ((t - a) / width)

    pieces = tuple(
        Piece(move_point(p.lo), move_point(p.hi), move_formula(p.formula)) for p in field.pieces
    )
    # exact cover of the new domain despite rounding
    fixed = [Piece(lo, pieces[0].hi if len(pieces) > 1 else hi, pieces[0].formula)]
    for i, p in enumerate(pieces[1:], start=1):
        left = fixed[-1].hi
        right = hi if i == len(pieces) - 1 else p.hi
        fixed.append(Piece(left, right, p.formula))
    point_values = tuple((move_point(t), v) for t, v in field.point_values)
    return PiecewiseField(tuple(fixed), point_values, domain=domain)


# -- JSON ---------------------------------------------------------------------

def field_to_json(field: PiecewiseField) -> dict:
    return {
        "pieces": [
            {"lo": p.lo, "hi": p.hi, "formula": p.formula.to_json()} for p in field.pieces
        ],
        "point_values": [
            [t, None if is_neg_infinity(v) else float(v)] for t, v in field.point_values
        ],
    }


def field_from_json(doc: dict, domain=(0.0, 1.0)) -> PiecewiseField:
    try:
        pieces = tuple(
            Piece(float(p["lo"]), float(p["hi"]), formula_from_json(p["formula"]))
            for p in doc["pieces"]
        )
        raw_points: Iterable = doc.get("point_values", []) or []
    except (TypeError, KeyError) as exc:
        raise SchemaError(f"malformed field document: {doc!r}") from exc
    point_values = tuple(
        (float(t), NEG_INFINITY if v is None else float(v)) for t, v in raw_points
    )
    return PiecewiseField(pieces, point_values, domain=domain)
