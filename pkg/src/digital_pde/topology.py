"""Contractibility, simple points, digital spheres/manifolds/surfaces.

The central notion is contractibility: a one-point graph is
contractible, and so is any graph that can be reduced to one point by
sequentially deleting simple points (a point is simple when its rim is
contractible; an edge is simple when its edge rim is contractible).

On top of that sit the recursive recognizers: a digital n-sphere is a
connected graph all of whose rims are (n-1)-spheres and which stays
contractible after deleting any single point; an n-manifold only needs
the rim condition.  A 0-sphere is two isolated points.

Greedy deletion can dead-end in principle, so contractibility is a
depth-first search over deletion choices with memoization; verdicts
for sphere/surface checks are cached by canonical form because rim
checks revisit the same small graphs constantly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .canonical import canonical_form
from .graph_core import DigitalSpace, Subspace, UnknownEdgeError, join

# Shared verdict caches, keyed by canonical form (label-independent).
_contractible_cache: Dict[tuple, bool] = {}
_sphere_cache: Dict[tuple, bool] = {}
_surface_cache: Dict[tuple, bool] = {}


def clear_caches() -> None:
    _contractible_cache.clear()
    _sphere_cache.clear()
    _surface_cache.clear()


@dataclass
class ReductionTrace:
    """Sequence of simple-point deletions applied to a start graph."""

    deleted_points: List[int] = field(default_factory=list)
    terminal: Optional[DigitalSpace] = None

    def replay(self, start: DigitalSpace) -> DigitalSpace:
        g = start
        for v in self.deleted_points:
            if not is_simple_point(g, v):
                raise ValueError(f"point {v} was not simple at its deletion step")
            g = g.delete_point(v)
        return g


@dataclass
class ManifoldReport:
    """Outcome of a sphere/manifold/surface check, with a failure witness."""

    space: str
    n: int
    kind: str  # "sphere" | "manifold" | "surface"
    ok: bool
    witness_point: Optional[int] = None
    witness_reason: Optional[str] = None

    def to_json_dict(self) -> dict:
        witness = None
        if not self.ok:
            witness = {"point": self.witness_point, "reason": self.witness_reason}
        return {
            "space": self.space,
            "n": self.n,
            "verdict": f"{self.n}-{self.kind}" if self.ok else "none",
            "witness": witness,
        }


# ---------------------------------------------------------------------------
# contractibility
# ---------------------------------------------------------------------------

def is_contractible(g: DigitalSpace) -> Tuple[bool, Optional[ReductionTrace]]:
    """Decide reducibility to one point by simple-point deletions.

    Returns the verdict and, when contractible, a witnessing deletion
    order.  The search is exact: it backtracks over deletion choices
    rather than trusting a greedy order.
    """
    if len(g.points) == 0:
        raise ValueError("contractibility is undefined for the empty graph")
    if not g.is_connected():
        return False, None
    key = canonical_form(g)
    cached = _contractible_cache.get(key)
    if cached is False:
        return False, None

    # Dead-state memo local to this search: induced subgraphs are
    # identified by their remaining point sets.
    dead: set = set()
    adj = {v: g.neighbors(v) for v in g.points}

    def rim_contractible(live: frozenset, v) -> bool:
        rim_pts = adj[v] & live
        if not rim_pts:
            return False
        sub = g.induced(rim_pts)
        return is_contractible(sub)[0]

    def search(live: frozenset) -> Optional[List[int]]:
        if len(live) == 1:
            return []
        if live in dead:
            return None
        # Smallest-rim-first keeps the branching factor down.
        candidates = sorted(
            (v for v in live if rim_contractible(live, v)),
            key=lambda v: (len(adj[v] & live), v),
        )
        for v in candidates:
            rest = search(live - {v})
            if rest is not None:
                return [v] + rest
        dead.add(live)
        return None

    order = search(frozenset(g.points))
    if order is None:
        _contractible_cache[key] = False
        return False, None
    _contractible_cache[key] = True
    terminal = g
    for v in order:
        terminal = terminal.delete_point(v)
    return True, ReductionTrace(deleted_points=order, terminal=terminal)


def is_simple_point(g: DigitalSpace, v) -> bool:
    """A point is simple when its rim is contractible."""
    rim = g.rim(v)
    if len(rim.points) == 0:
        return False
    return is_contractible(rim)[0]


def is_simple_edge(g: DigitalSpace, u, v) -> bool:
    """An edge is simple when its edge rim is contractible."""
    rim = g.edge_rim(u, v)
    if len(rim.points) == 0:
        return False
    return is_contractible(rim)[0]


# ---------------------------------------------------------------------------
# contractible transformations
# ---------------------------------------------------------------------------

def attach_point(g: DigitalSpace, rim_points, new_id) -> DigitalSpace:
    """Glue a new point whose rim is the given contractible subgraph."""
    sub = g.induced(rim_points)
    if not is_contractible(sub)[0]:
        raise ValueError("attachment rim is not contractible")
    return g.add_point(new_id, rim_points)


def attach_edge(g: DigitalSpace, u, v) -> DigitalSpace:
    """Insert edge (u,v); valid only if the edge is simple afterwards."""
    result = g.add_edge(u, v)
    if not is_simple_edge(result, u, v):
        raise ValueError(f"edge ({u},{v}) would not be simple")
    return result


def delete_simple_point(g: DigitalSpace, v) -> DigitalSpace:
    if not is_simple_point(g, v):
        raise ValueError(f"point {v} is not simple")
    return g.delete_point(v)


def r_transform(m: DigitalSpace, u, v, new_id) -> DigitalSpace:
    """Replace the edge (u,v) by a new point.

    The new point is glued with rim {u, v} plus the common neighbors
    of u and v, and the edge (u,v) is removed.  On a digital manifold
    this is a homeomorphism: it adds one point and keeps both local
    and global topology.
    """
    if not m.has_edge(u, v):
        raise UnknownEdgeError(f"({u},{v}) is not an edge")
    common = m.neighbors(u) & m.neighbors(v)
    return m.add_point(new_id, common | {u, v}).delete_edge(u, v)


def homotopy_reduce(g: DigitalSpace) -> Tuple[DigitalSpace, ReductionTrace]:
    """Delete simple points (smallest label first) until none remain.

    The result is homotopy-equivalent to the input by construction; it
    is a heuristic core, not a minimal model.
    """
    if len(g.points) == 0:
        raise ValueError("cannot reduce the empty graph")
    deleted = []
    current = g
    while len(current.points) > 1:
        for v in sorted(current.points):
            if is_simple_point(current, v):
                current = current.delete_point(v)
                deleted.append(v)
                break
        else:
            break
    return current, ReductionTrace(deleted_points=deleted, terminal=current)


# ---------------------------------------------------------------------------
# spheres, manifolds, surfaces
# ---------------------------------------------------------------------------

def _sphere_verdict(g: DigitalSpace, n: int) -> bool:
    if n < 0:
        return False
    if n == 0:
        return len(g.points) == 2 and len(g.edges) == 0
    key = (canonical_form(g), n)
    cached = _sphere_cache.get(key)
    if cached is not None:
        return cached
    ok = False
    if g.is_connected() and len(g.points) >= 2:
        ok = all(_sphere_verdict(g.rim(v), n - 1) for v in g.points)
        if ok:
            # The definition quantifies over every point: G - v must be
            # contractible for each v, not just one sample.
            ok = all(is_contractible(g.delete_point(v))[0] for v in g.points)
    _sphere_cache[key] = ok
    return ok


def is_n_sphere(g: DigitalSpace, n: int) -> ManifoldReport:
    """Check the recursive digital n-sphere definition, with witness."""
    name = g.name or "space"
    if n == 0:
        ok = len(g.points) == 2 and len(g.edges) == 0
        return ManifoldReport(name, 0, "sphere", ok,
                              witness_reason=None if ok else "not two isolated points")
    if not g.is_connected():
        return ManifoldReport(name, n, "sphere", False, witness_reason="not connected")
    for v in g.points:
        if not _sphere_verdict(g.rim(v), n - 1):
            return ManifoldReport(name, n, "sphere", False, v,
                                  f"rim of {v} is not a {n - 1}-sphere")
    for v in g.points:
        if not is_contractible(g.delete_point(v))[0]:
            return ManifoldReport(name, n, "sphere", False, v,
                                  f"deleting {v} leaves a non-contractible graph")
    return ManifoldReport(name, n, "sphere", True)


def is_n_manifold(g: DigitalSpace, n: int) -> ManifoldReport:
    """Connected graph whose every rim is a digital (n-1)-sphere."""
    name = g.name or "space"
    if n < 1:
        raise ValueError("manifold dimension must be >= 1")
    if not g.is_connected():
        return ManifoldReport(name, n, "manifold", False, witness_reason="not connected")
    for v in g.points:
        if not _sphere_verdict(g.rim(v), n - 1):
            return ManifoldReport(name, n, "manifold", False, v,
                                  f"rim of {v} is not a {n - 1}-sphere")
    return ManifoldReport(name, n, "manifold", True)


def _surface_verdict(g: DigitalSpace, n: int) -> bool:
    if n < 0:
        return False
    if n == 0:
        return len(g.points) == 2 and len(g.edges) == 0
    key = (canonical_form(g), n)
    cached = _surface_cache.get(key)
    if cached is not None:
        return cached
    ok = (g.is_connected() and len(g.points) > 0
          and all(_surface_verdict(g.rim(v), n - 1) for v in g.points))
    _surface_cache[key] = ok
    return ok


def is_n_surface(g: DigitalSpace, n: int) -> ManifoldReport:
    """Recursive surface check; the n=0 base case is the 0-sphere."""
    name = g.name or "space"
    if n == 0:
        ok = len(g.points) == 2 and len(g.edges) == 0
        return ManifoldReport(name, 0, "surface", ok,
                              witness_reason=None if ok else "not two isolated points")
    if not g.is_connected():
        return ManifoldReport(name, n, "surface", False, witness_reason="not connected")
    for v in g.points:
        if not _surface_verdict(g.rim(v), n - 1):
            return ManifoldReport(name, n, "surface", False, v,
                                  f"rim of {v} is not a {n - 1}-surface")
    return ManifoldReport(name, n, "surface", True)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def zero_sphere() -> DigitalSpace:
    return DigitalSpace([1, 2], [], name="s0")


def minimal_sphere(n: int) -> DigitalSpace:
    """Join of (n+1) copies of the 0-sphere: complete (n+1)-partite
    graph with parts of size two, 2(n+1) points total."""
    if n < 0:
        raise ValueError("sphere dimension must be >= 0")
    pts = list(range(1, 2 * (n + 1) + 1))
    # Points 2i-1, 2i form the i-th antipodal pair (no edge inside a pair).
    edges = []
    for i in pts:
        for j in pts:
            if i < j and (i - 1) // 2 != (j - 1) // 2:
                edges.append((i, j))
    return DigitalSpace(pts, edges, name=f"s{n}_min")


def disk_from_sphere(m: DigitalSpace, v) -> Tuple[DigitalSpace, Subspace, Subspace]:
    """Split a sphere at v into a disk, its boundary, and its interior.

    Returns (disk = m - v, boundary = rim of v, interior = disk minus
    boundary).  The caller is responsible for m actually being a
    sphere; the decomposition itself is purely structural.
    """
    boundary = m.rim(v)
    disk = m.delete_point(v)
    interior = disk.induced(set(disk.points) - set(boundary.points))
    return disk, boundary, interior


def cone(g: DigitalSpace) -> DigitalSpace:
    """Join with a single apex point; always contractible."""
    apex = DigitalSpace([1], [], name="pt")
    return join(apex, g, name=f"cone({g.name or 'space'})")
