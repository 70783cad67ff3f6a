"""Named small set systems and the machine-checkable identity suite.

Every family here is hard-coded label-for-label; the twist-closure table
of S3 is additionally cross-checked against the computed orbit the first
time it is requested.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .setsystem import SetSystem


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    system: SetSystem
    source: str


def _sys(labels: str | tuple[str, ...], *sets: str) -> SetSystem:
    """Compact constructor: _sys("abc", "", "ab", "abc")."""
    labels = tuple(labels)
    return SetSystem.from_sets(labels, [tuple(s) for s in sets])


def _s_chain(i: int) -> SetSystem:
    labels = tuple(f"e{k}" for k in range(1, i + 1))
    return SetSystem.from_sets(labels, [(), labels])


_ENTRIES: dict[str, CatalogEntry] = {}


def _add(name: str, system: SetSystem, source: str) -> None:
    _ENTRIES[name] = CatalogEntry(name, system, source)


_add("D3", _sys("abc", "", "a", "b", "c", "ab", "ac", "bc"),
     "delta-matroid whose full loop complementation is not one")
for _i in range(2, 9):
    _add(f"S{_i}", _s_chain(_i),
         "excluded-minor chain for delta-matroids" if _i >= 3 else "two-element twist pair")
_add("T1", _sys("abc", "", "ab", "abc"), "excluded minor for delta-matroids")
_add("T2", _sys("abc", "", "ab", "ac", "abc"), "excluded minor for delta-matroids")
_add("T3", _sys("abc", "", "a", "ab", "abc"), "excluded minor for delta-matroids")
_add("T4", _sys("abc", "", "a", "ab", "ac", "abc"), "excluded minor for delta-matroids")
_add("T5", _sys("abcd", "", "ab", "abcd"), "excluded minor for delta-matroids")
_add("T6", _sys("abcd", "", "ab", "ac", "abcd"), "excluded minor for delta-matroids")
_add("T7", _sys("abcd", "", "ab", "ac", "ad", "abcd"), "excluded minor for delta-matroids")
_add("T8", _sys("abcd", "", "a", "ab", "ac", "ad", "abcd"), "excluded minor for delta-matroids")
_add("B1", _sys("abc", "", "ab", "ac", "bc", "abc"), "excluded minor for binary delta-matroids")
_add("B2", _sys("abc", "", "a", "b", "c", "ab", "ac", "bc"),
     "excluded minor for binary delta-matroids (equals D3)")
_add("B3", _sys("abc", "", "b", "c", "ab", "ac", "abc"),
     "excluded minor for binary delta-matroids")
_add("B4", _sys("abcd", "", "ab", "ac", "ad", "bc", "bd", "cd"),
     "excluded minor for binary delta-matroids")
_add("B5", _sys("abcd", "", "ab", "ad", "bc", "cd", "abcd"),
     "excluded minor for binary delta-matroids")


def names() -> list[str]:
    return sorted(_ENTRIES)


def entry(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise KeyError(f"unknown catalog name {name!r}") from None


def get(name: str) -> SetSystem:
    return entry(name).system


# ----------------------------------------------------------------------
# The 28 twist/loop-complement closures of S3, up to isomorphism,
# transcribed table by table.  Within each block: the seed family first,
# then its listed twists.

_S3_TABLES: tuple[tuple[str, ...], ...] = (
    # twists of S3
    ("", "abc"),                    # S3
    ("a", "bc"),                    # S3 * a
    # twists of S3 + a
    ("", "a", "abc"),               # S3 + a
    ("", "bc", "abc"),              # (S3 + a)^*
    ("", "a", "bc"),                # (S3 + a) * a
    ("a", "bc", "abc"),             # (S3 + a) * bc
    ("b", "ab", "ac"),              # (S3 + a) * b
    ("b", "c", "ac"),               # (S3 + a) * ac
    # twists of S3 + ab
    ("", "a", "b", "ab", "abc"),    # S3 + ab
    ("", "c", "ac", "bc", "abc"),   # (S3 + ab)^*
    ("", "a", "b", "ab", "bc"),     # (S3 + ab) * a
    ("a", "c", "ac", "bc", "abc"),  # (S3 + ab) * bc
    ("c", "ab", "ac", "bc", "abc"), # (S3 + ab) * c
    ("", "a", "b", "c", "ab"),      # (S3 + ab) * ab
    # twists of S3 + abc
    ("", "a", "b", "c", "ab", "ac", "bc"),    # S3 + abc
    ("a", "b", "c", "ab", "ac", "bc", "abc"), # (S3 + abc)^*
    ("", "a", "b", "c", "ab", "ac", "abc"),   # (S3 + abc) * a
    ("", "b", "c", "ab", "ac", "bc", "abc"),  # (S3 + abc) * bc
    # twists of (S3 * a) + ab
    ("a", "ab", "bc", "abc"),       # (S3 * a) + ab
    ("", "a", "c", "bc"),           # ((S3 * a) + ab)^*
    ("", "b", "bc", "abc"),         # ((S3 * a) + ab) * a
    ("a", "c", "ab", "ac"),         # ((S3 * a) + ab) * b
    # twists of (S3 * a) + abc
    ("a", "ab", "ac", "bc"),        # (S3 * a) + abc
    ("a", "b", "c", "bc"),          # ((S3 * a) + abc)^*
    ("", "b", "c", "abc"),          # ((S3 * a) + abc) * a
    ("", "ab", "ac", "abc"),        # ((S3 * a) + abc) * bc
    ("a", "c", "ab", "abc"),        # ((S3 * a) + abc) * b
    ("", "c", "ab", "bc"),          # ((S3 * a) + abc) * ac
)


@lru_cache(maxsize=1)
def s3_twisted_duals() -> tuple[SetSystem, ...]:
    """The 28 twisted duals of S3, canonicalized.

    The transcription is verified against the computed closure of S3 on
    first use; a mismatch means a transcription error and raises.
    """
    from .duality import orbit  # local import; duality depends on catalog

    transcribed = {_sys("abc", *fams).canonical_form() for fams in _S3_TABLES}
    computed = set(orbit(get("S3"), up_to_iso=True).members)
    if transcribed != computed:
        raise AssertionError(
            "transcribed twisted-dual table of S3 disagrees with the computed closure"
        )
    if len(transcribed) != 28:
        raise AssertionError(f"expected 28 twisted duals of S3, got {len(transcribed)}")
    return tuple(sorted(transcribed, key=lambda s: (len(s.feasible), s.feasible)))


# ----------------------------------------------------------------------
# Identity suite


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: SetSystem
    rhs: SetSystem
    relation: str  # "equal" or "isomorphic"

    @property
    def holds(self) -> bool:
        if self.relation == "equal":
            return self.lhs == self.rhs
        return self.lhs.is_isomorphic(self.rhs)


def identity_suite() -> list[IdentityCheck]:
    """Small named identities relating the catalog systems."""
    g = get
    s3_abc = _sys("abc", "", "abc")  # the S3 family on labels a, b, c
    checks = [
        IdentityCheck("T1^* + c = S3", g("T1").dual().loop_complement(["c"]), s3_abc, "equal"),
        IdentityCheck("T2^* + bc ~ T1", g("T2").dual().loop_complement(["b", "c"]), g("T1"), "isomorphic"),
        IdentityCheck("T3 + a = T1", g("T3").loop_complement(["a"]), g("T1"), "equal"),
        IdentityCheck("T4 + a = T2", g("T4").loop_complement(["a"]), g("T2"), "equal"),
        IdentityCheck("T5 pen d = T1", g("T5").penrose_contract("d"), g("T1"), "equal"),
        IdentityCheck("T6 pen d = T2", g("T6").penrose_contract("d"), g("T2"), "equal"),
        IdentityCheck("T7 pen d = T4", g("T7").penrose_contract("d"), g("T4"), "equal"),
        IdentityCheck("T8 pen d = T2", g("T8").penrose_contract("d"), g("T2"), "equal"),
        IdentityCheck("D3 + abc = S3", g("D3").loop_complement(["a", "b", "c"]), s3_abc, "equal"),
        IdentityCheck("B2 = S3 + abc", s3_abc.loop_complement(["a", "b", "c"]), g("B2"), "equal"),
        IdentityCheck("B4 pen d = B2", g("B4").penrose_contract("d"), g("B2"), "equal"),
        IdentityCheck("(B3 + a)^* = B1", g("B3").loop_complement(["a"]).dual(), g("B1"), "equal"),
        IdentityCheck("B5 pen d ~ B3", g("B5").penrose_contract("d"), g("B3"), "isomorphic"),
    ]
    for n in range(4, 9):
        checks.append(IdentityCheck(
            f"S{n} pen e{n} = S{n - 1}",
            g(f"S{n}").penrose_contract(f"e{n}"),
            g(f"S{n - 1}"),
            "equal",
        ))
    return checks
