"""Online-premean contract: accumulator state, absorb, merge, finalize.

Every mean in this package is evaluated as ``finalize(fold(absorb, init, xs))``
where the state lives in a commutative semigroup (a fixed-length real vector,
optionally extended by an integer element counter).  States are plain
immutable values; absorb and merge return new states, so shard-parallel
accumulation followed by a merge tree needs no locking.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    DomainError,
    EmptyStateError,
    FamilyMismatch,
    NumericalFailure,
    ParseError,
)

STATE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class DomainInterval:
    """An interval of the extended real line with endpoint flags."""

    lo: float = -math.inf
    hi: float = math.inf
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval: lo={self.lo} hi={self.hi}")

    def contains(self, x: float) -> bool:
        if math.isnan(x):
            return False
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if x > self.hi or (x == self.hi and not self.hi_closed):
            return False
        return True

    def sample_grid(self, points: int = 64) -> list[float]:
        """A finite representative grid, clipping infinite endpoints."""
        lo = self.lo if math.isfinite(self.lo) else -50.0
        hi = self.hi if math.isfinite(self.hi) else 50.0
        if hi <= lo:
            hi = lo + 100.0
        eps = (hi - lo) * 1e-3
        if not self.lo_closed or not math.isfinite(self.lo):
            lo += eps
        if not self.hi_closed or not math.isfinite(self.hi):
            hi -= eps
        step = (hi - lo) / (points - 1)
        return [lo + i * step for i in range(points)]

    @staticmethod
    def positive() -> "DomainInterval":
        return DomainInterval(0.0, math.inf, False, False)

    @staticmethod
    def reals() -> "DomainInterval":
        return DomainInterval(-math.inf, math.inf, False, False)


@dataclass(frozen=True)
class ComplexityType:
    """Position in the hierarchy T1 <= T1+ <= T2 <= T2+ <= ..."""

    k: int
    plus_counter: bool

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be a positive integer")

    @property
    def order_index(self) -> int:
        return 2 * self.k - 1 if self.plus_counter else 2 * self.k - 2

    @property
    def label(self) -> str:
        return f"T{self.k}+" if self.plus_counter else f"T{self.k}"

    def __le__(self, other: "ComplexityType") -> bool:
        return self.order_index <= other.order_index

    def __lt__(self, other: "ComplexityType") -> bool:
        return self.order_index < other.order_index


@dataclass(frozen=True)
class MeanDescriptor:
    """Finite encoding of a generating pair: per-element encoder + finalizer.

    ``encode`` maps one input to its state-vector contribution; ``finalizer``
    maps (reals, count) back to the interval.  ``ctype`` is None for means of
    no finite type (median).  ``params`` must round-trip through JSON for the
    descriptor to be reconstructible from a state file.
    """

    family: str
    params: dict
    domain: DomainInterval
    ctype: Optional[ComplexityType]
    k: int
    has_counter: bool
    encode: Callable[[float], tuple]
    finalizer: Callable[[tuple, int], float]
    ctype_is_upper_bound: bool = False
    unbounded_state: bool = False  # median: state is the whole sorted multiset
    paper_k: Optional[int] = None  # biplanar: exponent-set cardinality

    @property
    def family_id(self) -> str:
        return f"{self.family}:{json.dumps(self.params, sort_keys=True)}"

    @property
    def name(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({inner})"

    @property
    def type_label(self) -> str:
        return self.ctype.label if self.ctype is not None else "no finite type"


@dataclass(frozen=True)
class AccumulatorState:
    """A semigroup element: real vector, element count, sticky overflow flag.

    ``count`` is always tracked for emptiness detection; it is part of the
    serialized state only for counter-bearing (T_k^+) families.
    """

    descriptor: MeanDescriptor
    reals: tuple
    count: int
    overflow: bool = False

    @property
    def family_id(self) -> str:
        return self.descriptor.family_id

    @property
    def counter(self) -> Optional[int]:
        return self.count if self.descriptor.has_counter else None

    def is_empty(self) -> bool:
        return self.count == 0

    # convenience wrappers around the module-level operations
    def absorb(self, x: float) -> "AccumulatorState":
        return absorb(self, x)

    def merge(self, other: "AccumulatorState") -> "AccumulatorState":
        return merge(self, other)

    def finalize(self) -> float:
        return finalize(self)


def init(descriptor: MeanDescriptor) -> AccumulatorState:
    """The empty state: all-zero reals (or empty multiset), count 0."""
    reals = () if descriptor.unbounded_state else (0.0,) * descriptor.k
    return AccumulatorState(descriptor, reals, 0)


def absorb(state: AccumulatorState, x: float) -> AccumulatorState:
    d = state.descriptor
    x = float(x)
    if not d.domain.contains(x):
        raise DomainError(f"{x} outside domain of {d.name}")
    if d.unbounded_state:
        values = list(state.reals)
        bisect.insort(values, x)
        return AccumulatorState(d, tuple(values), state.count + 1, state.overflow)
    try:
        contribution = d.encode(x)
    except OverflowError:
        contribution = (math.inf,) * d.k  # flagged below, surfaced at finalize
    reals = tuple(a + b for a, b in zip(state.reals, contribution))
    overflow = state.overflow or not all(math.isfinite(v) for v in reals)
    return AccumulatorState(d, reals, state.count + 1, overflow)


def merge(a: AccumulatorState, b: AccumulatorState) -> AccumulatorState:
    if a.family_id != b.family_id:
        raise FamilyMismatch(f"{a.family_id} vs {b.family_id}")
    d = a.descriptor
    if d.unbounded_state:
        values = sorted(a.reals + b.reals)
        return AccumulatorState(d, tuple(values), a.count + b.count,
                                a.overflow or b.overflow)
    reals = tuple(u + v for u, v in zip(a.reals, b.reals))
    overflow = (a.overflow or b.overflow
                or not all(math.isfinite(v) for v in reals))
    return AccumulatorState(d, reals, a.count + b.count, overflow)


def finalize(state: AccumulatorState) -> float:
    if state.is_empty():
        raise EmptyStateError("finalize of the empty state")
    if state.overflow:
        raise NumericalFailure("state carries non-finite components")
    value = state.descriptor.finalizer(state.reals, state.count)
    if not math.isfinite(value):
        raise NumericalFailure(f"finalizer produced {value}")
    return value


def evaluate_stream(descriptor: MeanDescriptor, xs: Iterable[float]) -> float:
    """init, absorb each element, finalize at end of input."""
    state = init(descriptor)
    for x in xs:
        state = absorb(state, x)
    return finalize(state)


def serialize_state(state: AccumulatorState) -> bytes:
    """UTF-8 JSON with hex-float reals; round-trips bit-exactly."""
    d = state.descriptor
    payload = {
        "version": STATE_FORMAT_VERSION,
        "family": d.family,
        "params": d.params,
        "k": len(state.reals) if d.unbounded_state else d.k,
        "reals": [float(v).hex() for v in state.reals],
        "counter": state.count if d.has_counter else None,
        "overflow": state.overflow,
    }
    return json.dumps(payload).encode("utf-8")


def parse_state(data) -> AccumulatorState:
    """Inverse of serialize_state; raises ParseError with a byte offset."""
    from . import families  # deferred: families depends on core

    if isinstance(data, bytes):
        text = data.decode("utf-8", errors="replace")
    else:
        text = data
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.pos) from e
    if not isinstance(payload, dict):
        raise ParseError("top-level JSON value is not an object")
    for key in ("version", "family", "params", "k", "reals", "counter", "overflow"):
        if key not in payload:
            raise ParseError(f"missing field {key!r}")
    if payload["version"] != STATE_FORMAT_VERSION:
        raise ParseError(f"unsupported version {payload['version']}")
    try:
        descriptor = families.descriptor_from_params(payload["family"], payload["params"])
    except Exception as e:
        raise ParseError(f"cannot rebuild descriptor: {e}") from e
    try:
        reals = tuple(float.fromhex(s) for s in payload["reals"])
    except (ValueError, TypeError) as e:
        raise ParseError(f"bad hex float: {e}") from e
    if not descriptor.unbounded_state and len(reals) != descriptor.k:
        raise ParseError(
            f"expected {descriptor.k} components, got {len(reals)}")
    counter = payload["counter"]
    if descriptor.has_counter:
        if not isinstance(counter, int) or counter < 0:
            raise ParseError(f"bad counter {counter!r}")
        count = counter
    else:
        # counterless families use the all-zero vector as the empty sentinel
        count = 0 if all(v == 0.0 for v in reals) else 1
    return AccumulatorState(descriptor, reals, count, bool(payload["overflow"]))
