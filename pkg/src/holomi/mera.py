"""
Causal-cone geometry of a MERA-like layered coarse-graining network.

Only the network's causal structure is simulated, never tensor contents.

Layout
------
Level ``k`` (``0 <= k <= depth``) holds ``n_sites // branch**k`` sites.  Site
``j`` at level ``k`` has parent ``j // branch`` at level ``k + 1``, and
neighbouring sites of a level are linked by a horizontal bond (the
disentangler reach).  The resulting graph is planar.  Its bounded faces sit
between horizontally adjacent sites: ``face (k, j)`` lies above the bond
``(k, j)-(k, j+1)``, bounded by the two upward bonds and the horizontal bond of
the parents (a triangle when both sites share a parent).

A cut separating a boundary block from the rest of the network is a path
through these faces, from the bottom gap at the left end of the block to the
one at its right end, or out through the network's side.  Each face-to-face
step severs one bond.  Minimal cuts are therefore shortest paths on the dual
graph, found with a bidirectional breadth-first search that only touches
faces near the cut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import BadBranch, BlockOutOfRange, DomainError, NotPowerOfBranch
from .phase import Phase

MAX_SITES = 2**24
PAD = 1
WIDTH_FLOOR = {2: 3, 3: 2}

Interval = tuple[int, int]


@dataclass(frozen=True)
class MeraNetwork:
    branch: int
    n_sites: int
    depth: int
    bond_entropy: float = 1.0

    def __post_init__(self):
        if self.branch not in (2, 3):
            raise BadBranch(f"branch must be 2 or 3, got {self.branch!r}")
        if self.depth < 1 or self.branch**self.depth != self.n_sites:
            raise NotPowerOfBranch(f"n_sites={self.n_sites} is not branch**depth with depth >= 1")
        if not self.bond_entropy > 0:
            raise DomainError("bond_entropy must be positive")

    @property
    def width_floor(self) -> int:
        return WIDTH_FLOOR[self.branch]

    def level_size(self, k: int) -> int:
        return self.n_sites // self.branch**k


def build_network(n_sites: int, branch: int, bond_entropy: float = 1.0) -> MeraNetwork:
    if branch not in (2, 3):
        raise BadBranch(f"branch must be 2 or 3, got {branch!r}")
    if not (isinstance(n_sites, int) and 1 < n_sites <= MAX_SITES):
        raise NotPowerOfBranch(f"n_sites must be an integer in (1, 2**24], got {n_sites!r}")
    depth, m = 0, n_sites
    while m % branch == 0:
        m //= branch
        depth += 1
    if m != 1:
        raise NotPowerOfBranch(f"{n_sites} is not a power of {branch}")
    return MeraNetwork(branch, n_sites, depth, bond_entropy)


@dataclass(frozen=True)
class CausalCone:
    per_level: tuple[Interval, ...]

    @property
    def widths(self) -> list[int]:
        return [hi - lo + 1 for lo, hi in self.per_level]

    def floor_level(self, width_floor: int) -> int:
        """First level at which the width is at most ``width_floor``."""
        return next(k for k, w in enumerate(self.widths) if w <= width_floor)


def _check_block(network: MeraNetwork, block: Sequence[int]) -> Interval:
    lo, hi = int(block[0]), int(block[1])
    if not (0 <= lo <= hi < network.n_sites):
        raise BlockOutOfRange(f"block [{lo}, {hi}] is not inside [0, {network.n_sites})")
    return lo, hi


def causal_cone(network: MeraNetwork, block: Sequence[int]) -> CausalCone:
    """Per-level site intervals that can influence ``block`` (inclusive ends).

    Each level the interval is padded by one site on both sides, mapped to the
    parents and clamped to the level.
    """
    lo, hi = _check_block(network, block)
    b = network.branch
    levels = [(lo, hi)]
    for k in range(1, network.depth + 1):
        top = network.level_size(k) - 1
        lo, hi = max(0, (lo - PAD) // b), min(top, (hi + PAD) // b)
        levels.append((lo, hi))
    return CausalCone(tuple(levels))


def cone_overlap_level(network: MeraNetwork, blockA: Sequence[int],
                       blockB: Sequence[int]) -> Optional[int]:
    """Smallest level below the top at which the cones of two blocks share a site.

    The top level is a single site that every cone contains, so a meeting there
    is reported as ``None``.
    """
    a, b = _check_block(network, blockA), _check_block(network, blockB)
    if not (a[1] < b[0] or b[1] < a[0]):
        raise DomainError("blocks must be disjoint")
    ca, cb = causal_cone(network, a), causal_cone(network, b)
    for k in range(network.depth):
        (alo, ahi), (blo, bhi) = ca.per_level[k], cb.per_level[k]
        if alo <= bhi and blo <= ahi:
            return k
    return None


def block_pair(l: int, d: int, start: int = 0) -> tuple[Interval, Interval]:
    """Two blocks of ``l`` sites with ``d`` sites between them."""
    if l < 1 or d < 1:
        raise DomainError("l and d must be positive")
    a = (start, start + l - 1)
    return a, (a[1] + d + 1, a[1] + d + l)


def centered_pair(network: MeraNetwork, l: int, d: int) -> tuple[Interval, Interval]:
    """:func:`block_pair` placed in the middle of the network."""
    span = 2 * l + d
    if span > network.n_sites:
        raise BlockOutOfRange(f"2l + d = {span} exceeds n_sites = {network.n_sites}")
    return block_pair(l, d, (network.n_sites - span) // 2)


# ---- dual graph -----------------------------------------------------------------

_SIDE = ("side",)


def _bottom(g):
    return ("bot", g)


def _neighbours(network: MeraNetwork, node):
    """``(neighbour, level of the severed bond)`` pairs of a dual node."""
    b = network.branch
    if node[0] == "bot":
        yield (0, node[1] - 1), 0
        return
    if node == _SIDE:
        for k in range(network.depth):
            last = network.level_size(k) - 2
            yield (k, 0), k
            if last != 0:
                yield (k, last), k
        return
    k, j = node
    last = network.level_size(k) - 2
    yield ((k, j - 1), k) if j > 0 else (_SIDE, k)
    yield ((k, j + 1), k) if j < last else (_SIDE, k)
    if (j + 1) % b == 0:
        yield (k + 1, (j + 1) // b - 1), k + 1
    if k == 0:
        yield _bottom(j + 1), 0
    else:
        yield (k - 1, b * (j + 1) - 1), k


def _is_dead_end(node):
    # bottom gaps only touch one bond; the side face is an ordinary face
    return node[0] == "bot"


def _gap_node(network: MeraNetwork, g: int):
    """Dual terminal for the boundary gap left of site ``g``."""
    if g <= 0 or g >= network.n_sites:
        return _SIDE
    return _bottom(g)


@dataclass
class _Path:
    bonds: int
    per_level: list[int] = field(default_factory=list)


def _shortest(network: MeraNetwork, src, dst) -> _Path:
    """Bidirectional BFS between two dual nodes; bottom gaps are endpoints only."""
    per_level = [0] * (network.depth + 1)
    if src == dst:
        return _Path(0, per_level)
    dist = [{src: 0}, {dst: 0}]
    parent = [{src: None}, {dst: None}]
    frontier = [[src], [dst]]
    radius = [0, 0]
    best, meet = math.inf, None
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        other = 1 - side
        nxt = []
        for node in frontier[side]:
            if _is_dead_end(node) and node != (src, dst)[side]:
                continue
            for nb, lvl in _neighbours(network, node):
                if nb in dist[side]:
                    continue
                dist[side][nb] = dist[side][node] + 1
                parent[side][nb] = (node, lvl)
                nxt.append(nb)
                if nb in dist[other] and not (_is_dead_end(nb) and nb not in (src, dst)):
                    total = dist[side][nb] + dist[other][nb]
                    if total < best:
                        best, meet = total, nb
        frontier[side] = nxt
        radius[side] += 1
        if best <= radius[0] + radius[1]:
            break
    if meet is None:
        raise DomainError("the two gaps are not connected in the dual graph")
    for s in (0, 1):
        node = meet
        while parent[s][node] is not None:
            prev, lvl = parent[s][node]
            per_level[lvl] += 1
            node = prev
    return _Path(int(best), per_level)


@dataclass(frozen=True)
class CutResult:
    bond_count: int
    length: float
    per_level_bonds: tuple[int, ...]
    routing: Optional[Phase] = None
    cut_connected: Optional[int] = None
    cut_disconnected: Optional[int] = None


def _combine(network, paths, routing=None, con=None, dis=None) -> CutResult:
    per_level = [sum(p.per_level[k] for p in paths) for k in range(network.depth + 1)]
    bonds = sum(p.bonds for p in paths)
    return CutResult(bonds, bonds * network.bond_entropy, tuple(per_level), routing, con, dis)


def minimal_cut(network: MeraNetwork, blocks: Sequence[Sequence[int]]) -> CutResult:
    """Fewest bonds separating one or two boundary blocks from the rest of the network.

    For two blocks the connected routing (outer ends joined, inner ends joined)
    competes with the disconnected one (each block cut on its own); ties go to
    the connected routing.
    """
    ivs = sorted(_check_block(network, blk) for blk in blocks)
    if len(ivs) == 1:
        (lo, hi), = ivs
        return _combine(network, [_shortest(network, _gap_node(network, lo),
                                            _gap_node(network, hi + 1))])
    if len(ivs) != 2:
        raise DomainError("minimal_cut takes one or two blocks")
    (a0, a1), (b0, b1) = ivs
    if a1 >= b0:
        raise DomainError("blocks must be disjoint")
    g1, g2, g3, g4 = (_gap_node(network, g) for g in (a0, a1 + 1, b0, b1 + 1))
    con = [_shortest(network, g1, g4), _shortest(network, g2, g3)]
    dis = [_shortest(network, g1, g2), _shortest(network, g3, g4)]
    n_con, n_dis = sum(p.bonds for p in con), sum(p.bonds for p in dis)
    if n_con <= n_dis:
        return _combine(network, con, Phase.CONNECTED, n_con, n_dis)
    return _combine(network, dis, Phase.DISCONNECTED, n_con, n_dis)


def regime_classify(l: int, d: int, branch: int) -> Phase:
    """Connected when the block depth ``log l`` reaches the separation depth ``log d``."""
    if branch not in (2, 3):
        raise BadBranch(f"branch must be 2 or 3, got {branch!r}")
    if l < 1 or d < 1:
        raise DomainError("l and d must be positive")
    # w_H >= w_* with w = log_branch(size) is l >= d; integers keep ties exact
    return Phase.CONNECTED if l >= d else Phase.DISCONNECTED
