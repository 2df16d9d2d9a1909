"""
(2,1)-coloring of cactus graphs of girth at least 4.

Blocks are colored top-down from a root vertex, each block once its
attachment vertex x is colored:

* x holds the D2 class: the rest of the block alternates the two D1 colors;
* x holds D1(i), edge block: the other end takes D1(1-i);
* x holds D1(i), even cycle: the cycle alternates D1 colors from x;
* x holds D1(i), odd cycle: the vertex two steps from x takes the D2
  class and the rest alternates D1 colors.

A D2 vertex is placed only at distance 2 from a D1 attachment vertex, so
every vertex within distance 2 of it lies in its own block.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Dict, List, Optional

from abcolor.colorers.bounds import finish
from abcolor.coloring import Color, MixedColoring, Tag, d1, d2
from abcolor.config import ColorerConfig
from abcolor.errors import PreconditionError
from abcolor.graph import Block, Graph, blocks, find_triangle

logger = logging.getLogger(__name__)


def color_cactus_g4(g: Graph, config: Optional[ColorerConfig] = None) -> MixedColoring:
    config = config or ColorerConfig()
    tri = find_triangle(g)
    if tri is not None:
        raise PreconditionError(f"girth below 4: triangle {tuple(v + 1 for v in tri)}")
    dec = blocks(g)
    for b in dec.blocks:
        if not (b.is_edge or b.is_cycle()):
            raise PreconditionError(
                f"not a cactus: block on {len(b.vertices)} vertices with {len(b.edges)} edges"
            )

    block_ids: Dict[int, List[int]] = {}
    for i, b in enumerate(dec.blocks):
        for v in b.vertices:
            block_ids.setdefault(v, []).append(i)

    colors: List[Optional[Color]] = [None] * g.n
    done = [False] * len(dec.blocks)
    for root in g.vertices:
        if colors[root] is not None:
            continue
        colors[root] = d2(0) if root in block_ids else d1(0)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for bi in block_ids.get(x, ()):
                if done[bi]:
                    continue
                done[bi] = True
                for v, col in _color_block(dec.blocks[bi], x, colors[x]).items():
                    colors[v] = col
                    queue.append(v)

    logger.info("cactus: %d blocks colored", len(dec.blocks))
    return finish(g, 2, colors, "cactus", config.compact)


def _color_block(block: Block, x: int, cx: Color) -> Dict[int, Color]:
    """Colors for the vertices of ``block`` other than its attachment vertex ``x``."""
    walk = _cycle_from(block, x)
    rest = walk[1:]
    if cx[0] is Tag.D2:
        return {v: d1(j % 2) for j, v in enumerate(rest)}
    i = cx[1]
    if len(walk) % 2 == 0:
        # walk[j] takes D1 with the parity of j
        return {v: d1((i + j + 1) % 2) for j, v in enumerate(rest)}
    out = {rest[0]: d1(1 - i), rest[1]: d2(0)}
    # rest[2:] has even length and ends next to x
    tail = rest[2:]
    for j, v in enumerate(reversed(tail)):
        out[v] = d1((1 - i + j) % 2)
    return out


def _cycle_from(block: Block, x: int) -> List[int]:
    """Block vertices in cyclic order starting at ``x`` (both ends for an edge)."""
    if block.is_edge:
        u, v = block.edges[0]
        return [x, v if u == x else u]
    nbrs: Dict[int, List[int]] = {}
    for u, v in block.edges:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    walk = [x]
    prev, cur = x, min(nbrs[x])
    while cur != x:
        walk.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    return walk
