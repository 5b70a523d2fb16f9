"""Finitely generated abelian groups in invariant-factor form."""
from dataclasses import dataclass

from .snf import invariant_factors


@dataclass(frozen=True, order=True)
class AbelianGroup:
    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in tors) or any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError(f"torsion must be a divisibility chain of integers >= 2: {tors}")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_factors(cls, rank, factors):
        """Build from arbitrary cyclic orders (0 means Z), normalising."""
        factors = [abs(int(d)) for d in factors]
        rank = rank + factors.count(0)
        nonunit = [d for d in factors if d > 1]
        if not nonunit:
            return cls(rank, ())
        diag = [[d if i == j else 0 for j in range(len(nonunit))] for i, d in enumerate(nonunit)]
        inv = [d for d in invariant_factors(diag) if d > 1]
        return cls(rank, tuple(inv))

    @classmethod
    def from_presentation(cls, ngens, relations):
        """Cokernel of the relation matrix (one row per relation)."""
        rows = [list(r) for r in relations if any(r)]
        if not rows:
            return cls(ngens, ())
        d = invariant_factors(rows)
        nonzero = [x for x in d if x]
        return cls(ngens - len(nonzero), tuple(x for x in nonzero if x > 1))

    @classmethod
    def parse(cls, text):
        text = text.replace(" ", "")
        if text in ("0", ""):
            return cls()
        rank, tors = 0, []
        for part in text.split("+"):
            if part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            elif part.startswith("Z_"):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group {text!r}")
        return cls.from_factors(rank, tors)

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"
