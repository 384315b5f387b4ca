"""The 17 wallpaper groups: K-group ranks and the stability rank test.

Each record stores, for one plane crystallographic group, the K_0/K_1
groups of the two skeleta A_1 and A_2 of a two-dimensional noncommutative
CW model of its group C*-algebra, plus the sheet count s (the number of
matrix-algebra summands attached at the top cell).  The test evaluated
here:

    (i)   rank K_0(A_1) = rank K_0(A_2)
    (ii)  rank K_1(A_1) - rank K_1(A_2) = s

(i) and (ii) are equivalent, and either one certifies matricial stability.
A failed condition is *not* a proof of instability, so verdicts are the
tri-state-free pair {stable_certified, no_certificate}; for the five
uncertified groups the zoo supplies explicit far-from-representation
witnesses instead.

The table is data, transcribed once and cross-checked at load: the (i)/(ii)
equivalence must hold row by row and the certified set must be exactly the
unshaded rows.  Any mismatch raises, it is never corrected silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TableConsistencyError

#: alternate names for the three groups that carry doubled symbols in some
#: sources; values are the table's canonical names
ALIASES = {"p4mm": "p4m", "p4mg": "p4g", "p6mm": "p6m"}


@dataclass(frozen=True)
class KGroup:
    """A finitely generated abelian group: free rank plus cyclic torsion
    orders (each >= 2)."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise TableConsistencyError("negative rank")
        if any(t < 2 for t in self.torsion):
            raise TableConsistencyError("torsion orders must be >= 2")

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z{t}" for t in self.torsion)
        return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class CrystalRecord:
    name: str
    k0_a2: KGroup
    k0_a1: KGroup
    k1_a2: KGroup
    k1_a1: KGroup
    sheets: int
    shaded: bool


@dataclass(frozen=True)
class RankVerdict:
    cond_i: bool
    cond_ii: bool
    certifies_stable: bool
    status: str  # "stable_certified" | "no_certificate"


def _z(rank: int, *torsion: int) -> KGroup:
    return KGroup(rank, tuple(torsion))


# columns: name, K0(A2), K0(A1), K1(A2), K1(A1), sheets, shaded
_ROWS = (
    ("p1",   _z(2),    _z(1),   _z(2),    _z(2),    2, True),
    ("p2",   _z(6),    _z(5),   _z(0),    _z(1),    2, True),
    ("pm",   _z(3),    _z(3),   _z(3),    _z(4),    1, False),
    ("pg",   _z(1),    _z(1),   _z(1, 2), _z(2, 2), 1, False),
    ("cm",   _z(2),    _z(2),   _z(2),    _z(3),    1, False),
    ("pmm",  _z(9),    _z(9),   _z(0),    _z(1),    1, False),
    ("pmg",  _z(4),    _z(4),   _z(1),    _z(2),    1, False),
    ("pgg",  _z(3),    _z(3),   _z(0, 2), _z(1, 2), 1, False),
    ("cmm",  _z(5),    _z(5),   _z(0),    _z(1),    1, False),
    ("p4",   _z(9),    _z(8),   _z(0),    _z(1),    2, True),
    ("p4m",  _z(9),    _z(9),   _z(0),    _z(1),    1, False),
    ("p4g",  _z(6),    _z(6),   _z(0),    _z(1),    1, False),
    ("p3",   _z(8),    _z(7),   _z(0),    _z(1),    2, True),
    ("p3m1", _z(5),    _z(5),   _z(1),    _z(2),    1, False),
    ("p31m", _z(5),    _z(5),   _z(1),    _z(3),    2, False),
    ("p6",   _z(10),   _z(9),   _z(0),    _z(1),    2, True),
    ("p6m",  _z(8),    _z(8),   _z(0),    _z(1),    1, False),
)

_TABLE = tuple(CrystalRecord(*row) for row in _ROWS)


def builtin_table() -> tuple[CrystalRecord, ...]:
    """All 17 records, in the conventional table order."""
    return _TABLE


def record(name: str) -> CrystalRecord:
    """Look up one record by name; doubled-symbol aliases are accepted."""
    canonical = ALIASES.get(name, name)
    for rec in _TABLE:
        if rec.name == canonical:
            return rec
    raise KeyError(f"no wallpaper group named {name!r}")


def rank_conditions(rec: CrystalRecord) -> RankVerdict:
    """Evaluate conditions (i) and (ii) on one record.

    ``certifies_stable`` follows condition (i); ``no_certificate`` does not
    assert instability.
    """
    cond_i = rec.k0_a1.rank == rec.k0_a2.rank
    cond_ii = rec.k1_a1.rank - rec.k1_a2.rank == rec.sheets
    return RankVerdict(
        cond_i=cond_i,
        cond_ii=cond_ii,
        certifies_stable=cond_i,
        status="stable_certified" if cond_i else "no_certificate",
    )


def classify_all() -> list[tuple[CrystalRecord, RankVerdict]]:
    """Evaluate every record and enforce the table's cross-checks.

    Raises :class:`TableConsistencyError` if (i) and (ii) ever disagree or
    the certified set differs from the unshaded set (a transcription
    failure).
    """
    if len(_TABLE) != 17:
        raise TableConsistencyError(f"expected 17 rows, found {len(_TABLE)}")
    names = [rec.name for rec in _TABLE]
    if len(set(names)) != 17:
        raise TableConsistencyError("duplicate wallpaper names")
    if sum(rec.shaded for rec in _TABLE) != 5:
        raise TableConsistencyError("expected exactly 5 shaded rows")
    out = []
    for rec in _TABLE:
        verdict = rank_conditions(rec)
        if verdict.cond_i != verdict.cond_ii:
            raise TableConsistencyError(
                f"{rec.name}: rank conditions disagree "
                f"(i)={verdict.cond_i} (ii)={verdict.cond_ii}"
            )
        if verdict.certifies_stable == rec.shaded:
            raise TableConsistencyError(
                f"{rec.name}: certificate/shading mismatch"
            )
        out.append((rec, verdict))
    return out
