"""Partition-refinement vertex traversal shared by the lexicographic searches.

The block sequence is kept as a doubly-linked list of vertex buckets.  Buckets
store their members in increasing order (initial blocks are sorted and bucket
splits append neighbors in adjacency order), so taking the first live entry of
the first bucket realizes the lowest-index tie-break in amortized O(|V|+|E|).
Moved or visited entries are skipped lazily via per-vertex bucket ids.
"""

from __future__ import annotations

import random
from typing import Sequence


def refine_traversal(
    adj: Sequence[Sequence[int]],
    initial_blocks: Sequence[Sequence[int]],
    forced: Sequence[int] = (),
    rng: random.Random | None = None,
    skip_record: Sequence[int] | None = None,
) -> tuple[list[int], list[list[int]]]:
    """Visit all vertices, always picking from the lexicographically first block.

    ``initial_blocks`` is the starting block sequence (each block sorted, the
    blocks disjoint and covering all vertices).  The first ``len(forced)``
    picks are forced to the given vertices, which must lie in the front block
    at their turn.  With ``rng`` the pick among the front block is random
    instead of lowest-index.

    If ``skip_record`` is not None, recording is enabled: whenever the visited
    vertex belongs to no previously recorded block and is not in
    ``skip_record``, the current front block is recorded.  Returns the visit
    order and the recorded blocks in recording order.
    """
    n = len(adj)
    members: list[list[int]] = []
    head: list[int] = []
    nxt: list[int] = []
    prv: list[int] = []
    stamp: list[int] = []
    twin: list[int] = []

    vblock = [-1] * n
    visited = bytearray(n)

    recording = skip_record is not None
    recorded = bytearray(n)
    skip = bytearray(n)
    if recording:
        for u in skip_record:
            skip[u] = 1

    first = -1
    prev_id = -1
    for blk in initial_blocks:
        if not blk:
            continue
        bid = len(members)
        members.append(list(blk))
        head.append(0)
        stamp.append(-1)
        twin.append(-1)
        prv.append(prev_id)
        nxt.append(-1)
        if prev_id >= 0:
            nxt[prev_id] = bid
        else:
            first = bid
        for u in blk:
            vblock[u] = bid
        prev_id = bid

    tau: list[int] = []
    records: list[list[int]] = []
    nforced = len(forced)

    for step in range(n):
        # advance to the first block that still has a live entry
        b = first
        v = -1
        while b != -1:
            mem = members[b]
            h = head[b]
            ln = len(mem)
            while h < ln:
                u = mem[h]
                if vblock[u] == b and not visited[u]:
                    break
                h += 1
            head[b] = h
            if h < ln:
                v = mem[h]
                break
            nb = nxt[b]
            pb = prv[b]
            if pb >= 0:
                nxt[pb] = nb
            else:
                first = nb
            if nb >= 0:
                prv[nb] = pb
            b = nb
        if v < 0:
            raise ValueError("traversal exhausted before all vertices were visited")

        if step < nforced:
            v = forced[step]
            assert vblock[v] == b and not visited[v], "forced vertex not in front block"
        elif rng is not None:
            live = [u for u in members[b][head[b]:] if vblock[u] == b and not visited[u]]
            v = rng.choice(live)

        if recording and not recorded[v] and not skip[v]:
            block_now = [
                u for u in members[b][head[b]:] if vblock[u] == b and not visited[u]
            ]
            for u in block_now:
                recorded[u] = 1
            records.append(block_now)

        visited[v] = 1
        tau.append(v)

        for w in adj[v]:
            if visited[w]:
                continue
            bw = vblock[w]
            if stamp[bw] != step:
                stamp[bw] = step
                t = len(members)
                members.append([])
                head.append(0)
                stamp.append(-1)
                twin.append(-1)
                pb = prv[bw]
                prv.append(pb)
                nxt.append(bw)
                if pb >= 0:
                    nxt[pb] = t
                else:
                    first = t
                prv[bw] = t
                twin[bw] = t
            tw = twin[bw]
            members[tw].append(w)
            vblock[w] = tw

    return tau, records
