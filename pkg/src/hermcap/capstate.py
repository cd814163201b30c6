"""Incrementally maintained cap with per-point coverage multiplicities.

``cmult[y]`` counts the members whose tangent section contains y.  A point is
covered when its multiplicity is positive; the cap is complete when every
surface point is covered.  Adding or removing a member touches exactly the
q^3 + q^2 + 1 entries of its tangent section, so both operations and all the
derived functionals (relevance, coverage, weight) run off the same counters:

    relevance(x)          #{y in tangent(x) : cmult[y] == 0}
    coverage_mult(y)      cmult[y]
    coverage_intersect(x) #{y in tangent(x) : cmult[y] > 0}
    weight(x)             sum over tangent(x) of 1 / cmult[y]   (member only)

relevance + coverage_intersect is identically the tangent-section size.  The
two coverage notions differ: the multiplicity drives the weight, while the
intersection count complements relevance.

Weight is exposed both as an exact Fraction (identity checks) and as a float
(search heuristics; comparisons there use a 1e-9 tolerance).
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

import numpy as np

from .errors import CapCompleteError, CapViolationError, MemberNotFoundError
from .hermitian import SurfaceModel


class CapState:
    __slots__ = ("model", "members", "cmult", "covered_count")

    def __init__(self, model: SurfaceModel):
        self.model = model
        self.members: set[int] = set()
        self.cmult = np.zeros(model.num_points, dtype=np.int32)
        self.covered_count = 0

    @classmethod
    def from_ids(cls, model: SurfaceModel, ids) -> "CapState":
        """Seed a state from a point set; raises CapViolationError if not a cap."""
        cap = cls(model)
        for x in sorted({int(i) for i in ids}):
            cap.add_point(x)
        return cap

    def __len__(self) -> int:
        return len(self.members)

    def members_sorted(self) -> np.ndarray:
        return np.array(sorted(self.members), dtype=np.int32)

    # -- mutation ------------------------------------------------------------

    def add_point(self, x: int) -> None:
        """Add an uncovered point; adding a covered one is a cap violation."""
        x = int(x)
        if self.cmult[x] != 0:
            raise CapViolationError(f"point {x} is covered; adding it breaks the cap")
        row = self.model.tangent_set(x)
        vals = self.cmult[row]
        self.covered_count += int(np.count_nonzero(vals == 0))
        self.cmult[row] = vals + 1
        self.members.add(x)

    def remove_point(self, x: int) -> None:
        x = int(x)
        if x not in self.members:
            raise MemberNotFoundError(f"point {x} is not a cap member")
        row = self.model.tangent_set(x)
        vals = self.cmult[row] - 1
        self.cmult[row] = vals
        self.covered_count -= int(np.count_nonzero(vals == 0))
        self.members.remove(x)

    # -- queries -------------------------------------------------------------

    def relevance(self, x: int) -> int:
        """Number of points newly covered if x joined the cap (0 for members)."""
        return int(np.count_nonzero(self.cmult[self.model.tangent_set(int(x))] == 0))

    def relevance_many(self, ids: np.ndarray) -> np.ndarray:
        if len(ids) == 0:
            return np.zeros(0, dtype=np.int64)
        rows = self.model.tangent_rows(np.asarray(ids))
        return np.count_nonzero(self.cmult[rows] == 0, axis=1)

    def removal_relevance(self, x: int) -> int:
        """relevance(x) with respect to the cap minus x; x must be a member."""
        x = int(x)
        if x not in self.members:
            raise MemberNotFoundError(f"point {x} is not a cap member")
        return int(np.count_nonzero(self.cmult[self.model.tangent_set(x)] == 1))

    def removal_relevance_many(self, ids: np.ndarray) -> np.ndarray:
        rows = self.model.tangent_rows(np.asarray(ids))
        return np.count_nonzero(self.cmult[rows] == 1, axis=1)

    def coverage_mult(self, y: int) -> int:
        return int(self.cmult[int(y)])

    def coverage_intersect(self, x: int) -> int:
        return int(np.count_nonzero(self.cmult[self.model.tangent_set(int(x))] > 0))

    def weight(self, x: int) -> Fraction:
        """Exact sum over tangent(x) of reciprocal coverage multiplicities."""
        x = int(x)
        if x not in self.members:
            raise MemberNotFoundError(f"weight is defined for members only, not {x}")
        counts = Counter(self.cmult[self.model.tangent_set(x)].tolist())
        return sum((Fraction(n, m) for m, n in counts.items()), Fraction(0))

    def weight_float(self, x: int) -> float:
        x = int(x)
        if x not in self.members:
            raise MemberNotFoundError(f"weight is defined for members only, not {x}")
        return float(np.sum(1.0 / self.cmult[self.model.tangent_set(x)]))

    def weight_after_add(self, x: int) -> float:
        """Weight x would have right after joining the cap."""
        return float(np.sum(1.0 / (self.cmult[self.model.tangent_set(int(x))] + 1.0)))

    def weight_after_add_many(self, ids: np.ndarray) -> np.ndarray:
        rows = self.model.tangent_rows(np.asarray(ids))
        return np.sum(1.0 / (self.cmult[rows] + 1.0), axis=1)

    def uncovered(self) -> np.ndarray:
        return np.flatnonzero(self.cmult == 0).astype(np.int32)

    def uncovered_count(self) -> int:
        return self.model.num_points - self.covered_count

    def is_complete(self) -> bool:
        return self.covered_count == self.model.num_points

    def r_extrema(self) -> tuple[int, int]:
        """(min, max) relevance over uncovered points; error when complete."""
        m = self.uncovered()
        if len(m) == 0:
            raise CapCompleteError("cap is complete; no uncovered points")
        rel = self.relevance_many(m)
        return int(rel.min()), int(rel.max())
