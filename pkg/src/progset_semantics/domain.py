"""
The finite state domain.

States hold one clamped integer per tracked variable plus the reserved
expression slots ``e_t`` (last integer value) and ``b_t`` (last Boolean
value).  Vector-states are tuples of states; a :class:`DVState` may end in
the divergence marker.  :class:`StateDomain` owns every operation that
depends on the configured range and variable order.
"""

import itertools
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Any, TypeAlias

from progset_semantics.error_codes import (
    PSEM_3001_VALUE_OUT_OF_RANGE,
    PSEM_3002_UNTRACKED_VARIABLE,
    PSEM_3003_STATE_ENCODING_INVALID,
    PSEM_5005_STATE_CAP,
)
from progset_semantics.errors import ResourceLimitError, SemanticsError
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.models.domain import DomainConfig

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)

E_T = "e_t"
B_T = "b_t"


class DomainError(SemanticsError):
    """Raised for values or encodings that do not fit the domain."""


class UntrackedVariableError(DomainError):
    """Raised when a variable outside ``tracked_vars`` is used."""

    def __init__(self, name: str, tracked: Iterable[str]) -> None:
        self.name = name
        listing = ", ".join(tracked) or "none"
        super().__init__(
            PSEM_3002_UNTRACKED_VARIABLE,
            f"variable '{name}' is not tracked (tracked: {listing})",
        )


class Divergence(Enum):
    """The divergence marker."""

    UP = "↑"

    def __repr__(self) -> str:
        return "↑"


UP = Divergence.UP


@dataclass(frozen=True, slots=True, order=True)
class State:
    """A program state.

    Attributes:
        h: Values of the tracked variables, in the domain's variable order.
        e_t: Value of the last evaluated integer expression.
        b_t: Value of the last evaluated Boolean expression.
    """

    h: tuple[int, ...]
    e_t: int
    b_t: bool


VState: TypeAlias = tuple[State, ...]
RawDVector: TypeAlias = tuple[State | Divergence, ...]


@dataclass(frozen=True, slots=True, order=True)
class DVState:
    """A finite vector of states, optionally terminated by divergence."""

    entries: VState
    diverges: bool = False

    def __len__(self) -> int:
        return len(self.entries)

    def occludes(self, other: "DVState") -> bool:
        """True when this diverging vector is a proper prefix of ``other``.

        A diverging vector occludes every distinct vector whose entries
        start with its own entries.
        """
        if not self.diverges or self == other:
            return False
        n = len(self.entries)
        return len(other.entries) >= n and other.entries[:n] == self.entries

    def as_raw(self) -> RawDVector:
        return self.entries + ((UP,) if self.diverges else ())


def vector_key(v: DVState) -> tuple[int, VState, bool]:
    """Canonical ordering of vectors: length, then entries, then the flag."""
    return (len(v.entries), v.entries, v.diverges)


def sorted_vectors(vs: Iterable[DVState]) -> list[DVState]:
    return sorted(vs, key=vector_key)


class StateDomain:
    """Operations over the finite domain fixed by a :class:`DomainConfig`.

    Args:
        config: Range, tracked variables and caps.
    """

    def __init__(self, config: DomainConfig) -> None:
        self.config = config
        self.lo = config.lo
        self.hi = config.hi
        self.variables: tuple[str, ...] = tuple(config.tracked_vars)
        self._index = {name: i for i, name in enumerate(self.variables)}
        self.caps = config.caps

    def __repr__(self) -> str:
        return f"StateDomain([{self.lo}, {self.hi}], {list(self.variables)})"

    # -- values ------------------------------------------------------------

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def clamp(self, v: int) -> int:
        return min(self.hi, max(self.lo, v))

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UntrackedVariableError(name, self.variables) from None

    def require_tracked(self, names: Iterable[str]) -> None:
        for name in sorted(names):
            self.index_of(name)

    def _check_value(self, slot: str, value: int) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise DomainError(
                PSEM_3003_STATE_ENCODING_INVALID, f"slot '{slot}' needs an integer, got {value!r}"
            )
        if not self.lo <= value <= self.hi:
            raise DomainError(
                PSEM_3001_VALUE_OUT_OF_RANGE,
                f"value {value} for '{slot}' is outside [{self.lo}, {self.hi}]",
            )
        return value

    # -- states ------------------------------------------------------------

    def make_state(
        self, h: Mapping[str, int] | None = None, e_t: int | None = None, b_t: bool = False
    ) -> State:
        """Build a state; slots not given take ``lo`` (integers) and false (``b_t``).

        Raises:
            UntrackedVariableError: For a variable outside ``tracked_vars``.
            DomainError: For an out-of-range value.
        """
        values = [self.lo] * len(self.variables)
        for name, value in (h or {}).items():
            values[self.index_of(name)] = self._check_value(name, value)
        e_value = self.lo if e_t is None else self._check_value(E_T, e_t)
        return State(tuple(values), e_value, bool(b_t))

    def value(self, sigma: State, name: str) -> int:
        return sigma.h[self.index_of(name)]

    def subst(self, sigma: State, slot: str, value: int | bool) -> State:
        """Return ``sigma`` with ``slot`` (a variable, ``e_t`` or ``b_t``) set to ``value``."""
        if slot == B_T:
            if not isinstance(value, bool):
                raise DomainError(
                    PSEM_3003_STATE_ENCODING_INVALID, f"b_t needs a Boolean, got {value!r}"
                )
            return State(sigma.h, sigma.e_t, value)
        checked = self._check_value(slot, int(value) if isinstance(value, bool) else value)
        if slot == E_T:
            return State(sigma.h, checked, sigma.b_t)
        i = self.index_of(slot)
        return State(sigma.h[:i] + (checked,) + sigma.h[i + 1 :], sigma.e_t, sigma.b_t)

    def restrict(self, sigma: State, names: Iterable[str]) -> dict[str, int]:
        """Project the variable part of ``sigma`` onto ``names``, in tracked order."""
        wanted = set(names)
        self.require_tracked(wanted)
        return {v: sigma.h[i] for i, v in enumerate(self.variables) if v in wanted}

    def agree_outside(self, sigma: State, tau: State, names: Iterable[str]) -> bool:
        """True when the states agree on every slot except the variables ``names``."""
        skip = {self.index_of(n) for n in names}
        if sigma.e_t != tau.e_t or sigma.b_t != tau.b_t:
            return False
        return all(a == b for i, (a, b) in enumerate(zip(sigma.h, tau.h)) if i not in skip)

    def ordered(self, names: Iterable[str]) -> tuple[str, ...]:
        """``names`` in the domain's variable order."""
        wanted = set(names)
        self.require_tracked(wanted)
        return tuple(v for v in self.variables if v in wanted)

    # -- enumeration -------------------------------------------------------

    def state_count(self, over: Iterable[str]) -> int:
        return self.width ** (len(set(over)) + 1) * 2

    def _guard_count(self, count: int, what: str) -> None:
        if count > self.caps.max_states:
            logger.warning(
                "State cap reached",
                extra={"extra_data": {"requested": count, "cap": self.caps.max_states}},
            )
            raise ResourceLimitError(PSEM_5005_STATE_CAP, "max_states", self.caps.max_states, what)

    def _assignments(self, over: Iterable[str]) -> Iterable[tuple[int, ...]]:
        positions = {self.index_of(n) for n in over}
        axes = [
            range(self.lo, self.hi + 1) if i in positions else (self.lo,)
            for i in range(len(self.variables))
        ]
        return itertools.product(*axes)

    def enumerate_states(self, over: Iterable[str] | None = None) -> list[State]:
        """All states differing on ``over`` plus ``e_t`` and ``b_t``, in order.

        Slots outside ``over`` hold ``lo``.  ``over`` defaults to every
        tracked variable.

        Raises:
            ResourceLimitError: If the count exceeds ``max_states``.
        """
        names = set(self.variables if over is None else over)
        self._guard_count(self.state_count(names), f"states over {sorted(names)}")
        return [
            State(h, e_t, b_t)
            for h in self._assignments(names)
            for e_t in range(self.lo, self.hi + 1)
            for b_t in (False, True)
        ]

    def enumerate_projections(self, over: Iterable[str]) -> list[State]:
        """One state per assignment of ``over``; everything else canonical."""
        names = set(over)
        self._guard_count(self.width ** len(names), f"projections over {sorted(names)}")
        return [State(h, self.lo, False) for h in self._assignments(names)]

    def canonical(self, sigma: State, over: Iterable[str]) -> State:
        """Reset every slot outside ``over`` (and ``e_t``, ``b_t``) to its default."""
        keep = {self.index_of(n) for n in over}
        h = tuple(v if i in keep else self.lo for i, v in enumerate(sigma.h))
        return State(h, self.lo, False)

    # -- JSON --------------------------------------------------------------

    def state_to_json(self, sigma: State) -> dict[str, Any]:
        return {
            "h": dict(zip(self.variables, sigma.h, strict=True)),
            "e_t": sigma.e_t,
            "b_t": sigma.b_t,
        }

    def state_from_json(self, obj: Any) -> State:
        """Decode ``{"h": {...}, "e_t": n, "b_t": bool}``; missing slots take defaults.

        A bare mapping of variables (``{"x": 1}``) is accepted as ``h``.
        """
        if not isinstance(obj, dict):
            raise DomainError(
                PSEM_3003_STATE_ENCODING_INVALID, f"a state is an object, got {obj!r}"
            )
        if "h" in obj or E_T in obj or B_T in obj:
            unknown = set(obj) - {"h", E_T, B_T}
            if unknown:
                raise DomainError(
                    PSEM_3003_STATE_ENCODING_INVALID, f"unknown state keys {sorted(unknown)}"
                )
            h = obj.get("h", {})
            e_t = obj.get(E_T)
            b_t = obj.get(B_T, False)
        else:
            h, e_t, b_t = obj, None, False
        if not isinstance(h, dict) or not isinstance(b_t, bool):
            raise DomainError(PSEM_3003_STATE_ENCODING_INVALID, f"malformed state {obj!r}")
        return self.make_state(h, e_t, b_t)

    def vector_to_json(self, v: DVState) -> Any:
        entries = [self.state_to_json(s) for s in v.entries]
        return {"entries": entries, "diverges": True} if v.diverges else entries

    def vector_from_json(self, obj: Any) -> DVState:
        """Decode a list of states or ``{"entries": [...], "diverges": bool}``."""
        if isinstance(obj, list):
            return DVState(tuple(self.state_from_json(s) for s in obj))
        if isinstance(obj, dict) and "entries" in obj and isinstance(obj["entries"], list):
            diverges = obj.get("diverges", False)
            if not isinstance(diverges, bool):
                raise DomainError(PSEM_3003_STATE_ENCODING_INVALID, "'diverges' must be a Boolean")
            return DVState(tuple(self.state_from_json(s) for s in obj["entries"]), diverges)
        raise DomainError(PSEM_3003_STATE_ENCODING_INVALID, f"malformed vector-state {obj!r}")

    def raw_to_json(self, raw: RawDVector) -> list[Any]:
        return [e.value if isinstance(e, Divergence) else self.state_to_json(e) for e in raw]

    def describe(self, sigma: State) -> str:
        """Compact text form, e.g. ``⟨x=1, e_t=0, b_t=f⟩``."""
        parts = [f"{v}={sigma.h[i]}" for i, v in enumerate(self.variables)]
        parts += [f"e_t={sigma.e_t}", f"b_t={'t' if sigma.b_t else 'f'}"]
        return "⟨" + ", ".join(parts) + "⟩"
