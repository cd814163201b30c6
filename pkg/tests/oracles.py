"""Independent brute-force recomputations used as test oracles.

Everything here is plain set algebra over scalar evaluations of the
sesquilinear form; none of it touches the incremental counters, dense
tangent storage, or the line-intersection generator construction that the
package uses internally.
"""

from itertools import combinations

from hermcap import hermitian_inner, normalize_point


def pg3_points(field):
    """All normalized points of PG(3, q^2), computed by scanning vectors."""
    n = field.order2
    pts = set()
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if a or b or c or d:
                        pts.add(normalize_point(field, (a, b, c, d)))
    return sorted(pts)


def surface_points(field):
    return [x for x in pg3_points(field) if hermitian_inner(field, x, x) == 0]


def tangent_sets_by_pairs(model):
    """tangent(x) as Python sets from scalar form evaluations over all pairs."""
    coords = [model.coords_of(i) for i in range(model.num_points)]
    out = [set() for _ in coords]
    f = model.field
    for a in range(len(coords)):
        for b in range(a, len(coords)):
            if hermitian_inner(f, coords[a], coords[b]) == 0:
                out[a].add(b)
                out[b].add(a)
    return out


def all_lines_pg3(field):
    """Every line of PG(3, q^2) as a frozenset of normalized points."""
    pts = pg3_points(field)
    lines = set()
    for x, y in combinations(pts, 2):
        members = {x}
        for lam in range(field.order2):
            coords = tuple(field.add(y[i], field.mul(lam, x[i])) for i in range(4))
            members.add(normalize_point(field, coords))
        lines.add(frozenset(members))
    return lines


def relevance_by_sets(tsets, cap_members, x):
    """|tangent(x) minus union of members' tangents|."""
    covered = set()
    for m in cap_members:
        covered |= tsets[m]
    return len(tsets[x] - covered)


def enumerate_complete_caps(tsets, num_points, seed):
    """All complete caps containing the seed, by exhaustive branching.

    At each incomplete cap the least uncovered point u must eventually be
    covered, and only currently-uncovered points of tangent(u) can do it, so
    branching over those candidates reaches every complete extension.
    """
    seed = frozenset(seed)
    complete = set()
    seen = set()

    def covered_by(cap):
        cov = set()
        for m in cap:
            cov |= tsets[m]
        return cov

    def rec(cap):
        if cap in seen:
            return
        seen.add(cap)
        cov = covered_by(cap)
        uncovered = [x for x in range(num_points) if x not in cov]
        if not uncovered:
            complete.add(cap)
            return
        u = uncovered[0]
        for z in sorted(tsets[u]):
            if z not in cov:
                rec(cap | {z})

    rec(seed)
    return complete
