"""Pure-Python kernel for left-greedy normalization of permutation factors.

The compiled twin (``_garside_c``) implements the same two entry points with
identical semantics; ``braid`` picks whichever is available.

Conventions
-----------
A permutation braid on k strands is stored as its permutation table
``p`` with ``p[i]`` the end position of the strand starting at ``i``.
Products are in diagram order: ``mul(p, q)`` is "p, then q", i.e. the
function composition q o p.  Under this convention:

* the starting set of a factor ``b`` (the simple generators that can begin
  it) is its descent set ``{i : b[i] > b[i+1]}``;
* the finishing set is the descent set of the inverse table;
* the half twist Delta is the order-reversing table.

``normalize(k, factors)`` rewrites a sequence of permutation tables into
left-greedy normal form: repeatedly, for each adjacent pair (A, B) and each
simple generator s that starts B but does not finish A, the transposition
is transferred (A <- A s, B <- s^-1 B) until every pair is left-weighted
(finishing set of A contains starting set of B).  Full Delta factors are
stripped from the front, trivial factors from the back.  Returns
``(delta_count, factors)``.
"""

from __future__ import annotations


def mul(p: list[int], q: list[int]) -> list[int]:
    """Diagram-order product: p first, then q."""
    return [q[v] for v in p]


def inverse(p: list[int]) -> list[int]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return inv


def tau(p: list[int]) -> list[int]:
    """Conjugation by Delta (an involution on permutation tables)."""
    k = len(p)
    return [k - 1 - p[k - 1 - i] for i in range(k)]


def _rebalance(A: list[int], B: list[int]) -> bool:
    """Make the pair (A, B) left-weighted in place; True if anything moved.

    Transfers every simple generator s in start(B) \\ finish(A): appending
    s to A swaps the two values s, s+1 in A's table, removing it from the
    front of B swaps the two entries at positions s, s+1.  After a
    transfer, only s-1, s, s+1 can newly qualify, but we simply rescan;
    factor lengths are bounded by k(k-1)/2 so the loop is cheap.
    """
    k = len(A)
    invA = inverse(A)
    moved = False
    scanning = True
    while scanning:
        scanning = False
        for s in range(k - 1):
            if B[s] > B[s + 1]:  # s starts B
                # s finishes A iff value s appears after value s+1 in A.
                if invA[s] < invA[s + 1]:
                    # transfer: A <- A s (swap values), B <- s B (swap entries)
                    ia, ib = invA[s], invA[s + 1]
                    A[ia], A[ib] = A[ib], A[ia]
                    invA[s], invA[s + 1] = ib, ia
                    B[s], B[s + 1] = B[s + 1], B[s]
                    moved = True
                    scanning = True
    return moved


def normalize(k: int, factors: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Left-greedy normal form of a positive factor sequence.

    Returns ``(delta_count, normal_factors)`` with every adjacent pair
    left-weighted, no leading Delta and no trailing identity factors.
    """
    identity = list(range(k))
    delta = list(reversed(identity))
    work = [list(f) for f in factors if f != identity]
    # Bubble passes: rebalance adjacent pairs until stable.  A transfer at
    # position i can disturb position i-1, so after a change we step back.
    i = 0
    while i + 1 < len(work):
        if _rebalance(work[i], work[i + 1]):
            if work[i + 1] == identity:
                del work[i + 1]
            i = max(i - 1, 0)
        else:
            i += 1
    # Strip leading Deltas into the power, trailing identities entirely.
    # (Left-weighting forces interior Deltas to the front and interior
    # identities to the back, so plain stripping is enough.)
    n_delta = 0
    while work and work[0] == delta:
        n_delta += 1
        work.pop(0)
    while work and work[-1] == identity:
        work.pop()
    return n_delta, work


BACKEND = "pure"
