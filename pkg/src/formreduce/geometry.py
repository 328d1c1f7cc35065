"""Smallest enclosing disks and root-cluster detection.

The enclosing-disk routine is the classic move-to-front randomized
algorithm (expected linear time) over complex points, with a fixed
per-call shuffle seed so results are deterministic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace

from .errors import (
    EmptyInput,
    MissingDistances,
    OddDegree,
    TriangleViolation,
    WrongClusterSize,
)

DEFAULT_SEED = 12345

_CONTAIN_EPS = 1e-14


@dataclass(frozen=True)
class Disk:
    """Closed disk: complex center plus nonnegative radius."""

    center: complex
    radius: float

    def __post_init__(self):
        if self.radius < 0.0:
            raise ValueError(f"negative radius {self.radius}")

    def contains(self, p, slack=0.0):
        return abs(complex(p) - self.center) <= self.radius * (1.0 + slack) + (
            _CONTAIN_EPS * (1.0 + self.radius)
        )


def _contains(c, r, p):
    return abs(p - c) <= r + _CONTAIN_EPS * (1.0 + r)


def _diameter_disk(a, b):
    c = 0.5 * (a + b)
    return c, max(abs(a - c), abs(b - c))


def _circumdisk(a, b, c):
    """Circumcircle of three points, or None if (nearly) collinear."""
    # translate towards the centroid for numerical stability
    o = (a + b + c) / 3.0
    ax, ay = (a - o).real, (a - o).imag
    bx, by = (b - o).real, (b - o).imag
    cx, cy = (c - o).real, (c - o).imag
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    center = complex(ux, uy) + o
    radius = max(abs(a - center), abs(b - center), abs(c - center))
    return center, radius


def _cross(o, a, b):
    return (a - o).real * (b - o).imag - (a - o).imag * (b - o).real


def _sed_two_fixed(pts, p, q):
    """Minimal disk with p and q on the boundary, covering pts."""
    c, r = _diameter_disk(p, q)
    left = None
    right = None
    for s in pts:
        if _contains(c, r, s):
            continue
        cross = _cross(p, q, s)
        circ = _circumdisk(p, q, s)
        if circ is None:
            continue
        cc, cr = circ
        if cross > 0.0 and (left is None or _cross(p, q, cc) > _cross(p, q, left[0])):
            left = (cc, cr)
        elif cross < 0.0 and (right is None or _cross(p, q, cc) < _cross(p, q, right[0])):
            right = (cc, cr)
    if left is None and right is None:
        return c, r
    if left is None:
        return right
    if right is None:
        return left
    return left if left[1] <= right[1] else right


def _sed_one_fixed(pts, p):
    """Minimal disk with p on the boundary, covering pts."""
    c, r = p, 0.0
    for i, q in enumerate(pts):
        if not _contains(c, r, q):
            if r == 0.0:
                c, r = _diameter_disk(p, q)
            else:
                c, r = _sed_two_fixed(pts[: i + 1], p, q)
    return c, r


def smallest_enclosing_disk(points, seed=DEFAULT_SEED):
    """Smallest disk containing all points; deterministic for a fixed seed."""
    pts = [complex(p) for p in points]
    if not pts:
        raise EmptyInput("no points given")
    rng = random.Random(seed)
    rng.shuffle(pts)
    c, r = pts[0], 0.0
    for i, p in enumerate(pts):
        if not _contains(c, r, p):
            c, r = _sed_one_fixed(pts[: i + 1], p)
    return Disk(center=c, radius=r)


@dataclass(frozen=True)
class ClusterHit:
    """Result of majority-cluster detection: member count, minimal disk
    over the members, and their indices into the root list."""

    count: int
    disk: Disk
    indices: tuple


def detect_majority_cluster(roots, eps):
    """Find a root whose 2*eps-neighborhood holds at least half the roots.

    Counting is with multiplicity and includes the root itself.  Among
    neighborhoods of maximal count, ties break by smallest enclosing
    radius, then by lowest root index.  Returns None when no neighborhood
    reaches half.
    """
    if not eps > 0.0:
        raise ValueError(f"eps = {eps} must be positive")
    rts = [complex(r) for r in roots]
    n = len(rts)
    best = None
    for j, base in enumerate(rts):
        members = tuple(i for i, r in enumerate(rts) if abs(r - base) <= 2.0 * eps)
        k = len(members)
        if 2 * k < n:
            continue
        disk = smallest_enclosing_disk([rts[i] for i in members])
        key = (-k, disk.radius, j)
        if best is None or key < best[0]:
            best = (key, ClusterHit(count=k, disk=disk, indices=members))
    if best is None:
        return None
    hit = best[1]
    member_pts = [rts[i] for i in hit.indices]
    pairwise = max(
        (abs(a - b) for i, a in enumerate(member_pts) for b in member_pts[i + 1:]),
        default=0.0,
    )
    if pairwise <= 2.0 * eps:
        # Jung bound for sets of diameter 2*eps
        assert hit.disk.radius <= 2.0 * eps / math.sqrt(3.0) * (1.0 + 1e-9)
    return hit


@dataclass(frozen=True)
class ClusterSplit:
    """Half/half partition of the roots with the two minimal disks.

    disk1 is the smaller-radius side (ties keep the input orientation).
    d1 and d2 are distances from the covariant coordinate t to the disk
    centers, absent until attach_covariant fills them.
    """

    roots: tuple
    cluster_indices: tuple
    disk1: Disk
    disk2: Disk
    d1: float | None = None
    d2: float | None = None

    @property
    def complement_indices(self):
        chosen = set(self.cluster_indices)
        return tuple(i for i in range(len(self.roots)) if i not in chosen)

    def side_points(self):
        r1 = [self.roots[i] for i in self.cluster_indices]
        r2 = [self.roots[i] for i in self.complement_indices]
        return r1, r2

    @property
    def center_gap(self):
        return abs(self.disk1.center - self.disk2.center)


def split_half(roots, cluster_indices):
    """Split the roots into the indexed half and its complement.

    Each side gets its smallest enclosing disk; sides are swapped if needed
    so that disk1.radius <= disk2.radius.
    """
    rts = tuple(complex(r) for r in roots)
    n = len(rts)
    if n % 2 != 0:
        raise OddDegree(f"degree {n} is odd")
    chosen = tuple(sorted(set(int(i) for i in cluster_indices)))
    if len(chosen) != n // 2 or any(i < 0 or i >= n for i in chosen):
        raise WrongClusterSize(
            f"need exactly {n // 2} distinct valid indices, got {cluster_indices}"
        )
    other = tuple(i for i in range(n) if i not in set(chosen))
    disk_a = smallest_enclosing_disk([rts[i] for i in chosen])
    disk_b = smallest_enclosing_disk([rts[i] for i in other])
    if disk_a.radius > disk_b.radius:
        chosen, other = other, chosen
        disk_a, disk_b = disk_b, disk_a
    return ClusterSplit(roots=rts, cluster_indices=chosen, disk1=disk_a, disk2=disk_b)


def attach_covariant(split, z):
    """Fill in the center distances d1 = |t - c1|, d2 = |t - c2|.

    Checks the per-root triangle window around t: every root of side i must
    satisfy max(d_i - r_i, 0) <= |t - alpha| <= d_i + r_i.  (The lower edge
    uses max(..., 0): when t lies inside a disk, interior roots may sit
    closer to t than |r_i - d_i|.)  A root outside its stated disk, which
    is what actually breaks the window, raises TriangleViolation.
    """
    t = complex(z.t, 0.0)
    d1 = abs(t - split.disk1.center)
    d2 = abs(t - split.disk2.center)
    pts1, pts2 = split.side_points()
    for d, disk, pts in ((d1, split.disk1, pts1), (d2, split.disk2, pts2)):
        lo = max(d - disk.radius, 0.0)
        hi = d + disk.radius
        tol = 1e-9 * (1.0 + hi)
        for p in pts:
            if not disk.contains(p, slack=1e-9):
                raise TriangleViolation(
                    f"root {p} outside its disk (center {disk.center}, "
                    f"radius {disk.radius})"
                )
            dist = abs(t - p)
            if dist < lo - tol or dist > hi + tol:
                raise TriangleViolation(
                    f"|t - {p}| = {dist} outside [{lo}, {hi}]"
                )
    return replace(split, d1=d1, d2=d2)


def require_distances(split):
    if split.d1 is None or split.d2 is None:
        raise MissingDistances("call attach_covariant first")
    return split
