"""Twisted-duality closures, vf-safety, and obstruction membership."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import catalog
from .exchange import is_delta_matroid_cached
from .setsystem import (
    SetSystem,
    SubsetLike,
    UnrealizableMinorError,
    canonical_key,
)

ORBIT_GUARD = 8  # closure size is bounded by 6^n labeled systems


def twisted_duals_wrt(system: SetSystem, subset: SubsetLike) -> list[SetSystem]:
    """The at-most-six twisted duals of the system with respect to one set.

    Candidates, in order: S, S*A, S+A, (S+A)*A, (S*A)+A, ((S*A)+A)*A.
    Duplicates are dropped, keeping first occurrences.
    """
    a = system.mask(subset)
    sa = system.twist(a)
    pa = system.loop_complement(a)
    words = [system, sa, pa, pa.twist(a), sa.loop_complement(a),
             sa.loop_complement(a).twist(a)]
    out: list[SetSystem] = []
    for w in words:
        if w not in out:
            out.append(w)
    return out


def dual_pivot(system: SetSystem, subset: SubsetLike) -> SetSystem:
    """Loop-complement, twist, loop-complement, all on the same subset."""
    a = system.mask(subset)
    return system.loop_complement(a).twist(a).loop_complement(a)


@dataclass(frozen=True)
class Orbit:
    """Closure of a set system under single-element twists and loop
    complementations.

    members are sorted; canonical forms when built up to isomorphism.
    generator_log maps each labeled member's feasible tuple to its BFS
    parent and the generating operation ("*x" or "+x"), None for the seed.
    """

    members: tuple[SetSystem, ...]
    generator_log: dict[tuple[int, ...], tuple[tuple[int, ...], str] | None]

    @property
    def size(self) -> int:
        return len(self.members)


def _labeled_closure(system: SetSystem):
    """BFS over feasible tuples under {*e, +e}; returns (states, log)."""
    if system.size > ORBIT_GUARD:
        raise ValueError(f"orbit guard: ground sets over {ORBIT_GUARD} elements")
    labels = system.labels
    bits = [(1 << i, labels[i]) for i in range(system.size)]
    seed = system.feasible
    log: dict[tuple[int, ...], tuple[tuple[int, ...], str] | None] = {seed: None}
    frontier = [system]
    while frontier:
        nxt = []
        for s in frontier:
            for bit, lab in bits:
                for child, op in ((s.twist(bit), f"*{lab}"),
                                  (s.loop_complement(bit), f"+{lab}")):
                    if child.feasible not in log:
                        log[child.feasible] = (s.feasible, op)
                        nxt.append(child)
        frontier = nxt
    return log


def orbit(system: SetSystem, up_to_iso: bool = False) -> Orbit:
    """Breadth-first twisted-duality closure of a proper set system."""
    if not system.is_proper:
        raise ValueError("orbit requires a proper system")
    log = _labeled_closure(system)
    labels = system.labels
    if up_to_iso:
        reps: dict[tuple, SetSystem] = {}
        for feas in log:
            s = SetSystem(labels, feas)
            key = canonical_key(s)
            if key not in reps:
                reps[key] = s.canonical_form()
        members = tuple(sorted(reps.values(), key=lambda s: s.feasible))
    else:
        members = tuple(SetSystem(labels, feas) for feas in sorted(log))
    return Orbit(members, log)


# vf-safety is constant on a twisted-duality class, so one closure
# answers the question for every member at once.
_vf_cache: dict[tuple[int, tuple[int, ...]], bool] = {}


def is_vf_safe(system: SetSystem) -> bool:
    """Every twisted dual (the system included) satisfies symmetric exchange."""
    if not system.is_proper:
        raise ValueError("vf-safety requires a proper system")
    key = (system.size, system.feasible)
    hit = _vf_cache.get(key)
    if hit is not None:
        return hit
    states = _labeled_closure(system)
    labels = system.labels
    safe = all(is_delta_matroid_cached(SetSystem(labels, feas)) for feas in states)
    n = system.size
    for feas in states:
        _vf_cache[(n, feas)] = safe
    return safe


def clear_duality_caches() -> None:
    _vf_cache.clear()
    _catalog_key_cache.clear()


# ----------------------------------------------------------------------
# catalog membership over three-operation minors


@dataclass(frozen=True)
class MinorMatch:
    """Witness that a specific minor hits a catalog entry."""

    delete_mask: int
    contract_mask: int
    penrose_mask: int
    catalog_index: int


_catalog_key_cache: dict[tuple, dict] = {}


def _catalog_index(entries: Sequence[SetSystem]) -> dict:
    """Map canonical keys of the entries to their first index, by size."""
    cache_key = tuple((e.size, e.feasible) for e in entries)
    hit = _catalog_key_cache.get(cache_key)
    if hit is not None:
        return hit
    by_key: dict[tuple, int] = {}
    for i, e in enumerate(entries):
        by_key.setdefault(canonical_key(e), i)
    index = {"keys": by_key, "sizes": {e.size for e in entries}}
    _catalog_key_cache[cache_key] = index
    return index


def find_catalog_3_minor(
    system: SetSystem, entries: Sequence[SetSystem]
) -> MinorMatch | None:
    """First three-operation minor isomorphic to a catalog entry, if any.

    Assignments of elements to keep / delete / contract / penrose are
    scanned in a fixed order, so the witness is deterministic.  Minors
    whose ground size matches no entry are skipped without evaluation.
    """
    if not system.is_proper:
        raise ValueError("requires a proper system")
    index = _catalog_index(entries)
    sizes = index["sizes"]
    keys = index["keys"]
    n = system.size
    for assign in itertools.product(range(4), repeat=n):
        x = y = z = 0
        survivors = n
        for i, role in enumerate(assign):
            if role:
                survivors -= 1
                if role == 1:
                    x |= 1 << i
                elif role == 2:
                    y |= 1 << i
                else:
                    z |= 1 << i
        if survivors not in sizes:
            continue
        try:
            m = system.three_minor(x, y, z)
        except UnrealizableMinorError:
            continue
        idx = keys.get(canonical_key(m))
        if idx is not None:
            return MinorMatch(x, y, z, idx)
    return None


def has_catalog_3_minor(system: SetSystem, entries: Sequence[SetSystem]) -> bool:
    return find_catalog_3_minor(system, entries) is not None


def is_vf_safe_via_obstruction(system: SetSystem) -> bool:
    """Obstruction form of vf-safety: no three-operation minor is a
    twisted dual of S3."""
    return not has_catalog_3_minor(system, catalog.s3_twisted_duals())
