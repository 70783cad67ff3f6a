"""Symmetric exchange axiom checking, with reproducible failure witnesses."""

from __future__ import annotations

from dataclasses import dataclass

from .setsystem import SetSystem, iter_bits, popcount


@dataclass(frozen=True)
class ExchangeWitness:
    """A triple (X, Y, u) violating symmetric exchange.

    X and Y are feasible masks, u is an element of X ^ Y, and no v in
    X ^ Y (v = u allowed) makes X ^ {u, v} feasible.
    """

    x: int
    y: int
    u: str

    def describe(self, system: SetSystem) -> str:
        xs = ",".join(system.subset_labels(self.x))
        ys = ",".join(system.subset_labels(self.y))
        return f"X={{{xs}}} Y={{{ys}}} u={self.u}"


def check_symmetric_exchange(system: SetSystem) -> ExchangeWitness | None:
    """Return None when the axiom holds, else the lexicographically first
    witness (X ascending, then Y, then u by bit position).
    """
    if not system.is_proper:
        raise ValueError("symmetric exchange is only defined for proper systems")
    feas = system.feasible
    fset = set(feas)
    for x in feas:
        for y in feas:
            d = x ^ y
            for u in iter_bits(d):
                base = x ^ u
                if base in fset:  # v = u
                    continue
                if any(v != u and base ^ v in fset for v in iter_bits(d)):
                    continue
                lab = system.labels[u.bit_length() - 1]
                return ExchangeWitness(x, y, lab)
    return None


def is_delta_matroid(system: SetSystem) -> bool:
    return check_symmetric_exchange(system) is None


# Family-keyed cache: the axiom depends only on the feasible masks.
_se_cache: dict[tuple[int, ...], bool] = {}


def is_delta_matroid_cached(system: SetSystem) -> bool:
    key = system.feasible
    hit = _se_cache.get(key)
    if hit is None:
        hit = check_symmetric_exchange(system) is None
        _se_cache[key] = hit
    return hit


def clear_exchange_cache() -> None:
    _se_cache.clear()


def is_normal(system: SetSystem) -> bool:
    """The empty set is feasible."""
    if not system.is_proper:
        raise ValueError("requires a proper system")
    return system.feasible[0] == 0


def is_even(system: SetSystem) -> bool:
    """All feasible sets have sizes of the same parity."""
    if not system.is_proper:
        raise ValueError("requires a proper system")
    parity = popcount(system.feasible[0]) & 1
    return all(popcount(m) & 1 == parity for m in system.feasible)
