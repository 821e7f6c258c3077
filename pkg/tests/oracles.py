"""Independent reference implementations used to check the library.

These deliberately re-derive results with plain loops and exhaustive search,
sharing no code with the package internals.
"""
import math

from iabsim.geometry import nearest_wired
from iabsim.policy import PolicyKind, WbfKind


def enumerate_widest(mat, wired, origin, threshold):
    """Best (bottleneck, hops, path) over every simple path to a first wired node.

    Exhaustive DFS; paths are ranked by highest bottleneck, then fewest hops,
    then lexicographically smallest id sequence. Returns None when no wired
    node is reachable.
    """
    n = mat.shape[0]
    best = None

    def rank(b, hops, path):
        return (-b, hops, path)

    stack = [(origin, frozenset([origin]), math.inf, ())]
    while stack:
        node, visited, bottleneck, path = stack.pop()
        for j in range(n):
            if j in visited or mat[node, j] < threshold:
                continue
            b2 = min(bottleneck, mat[node, j])
            if wired[j]:
                cand = (b2, len(path) + 1, path + (j,))
                if best is None or rank(*cand) < rank(*best):
                    best = cand
            else:
                stack.append((j, visited | {j}, b2, path + (j,)))
    return best


def reference_greedy_trace(kind, dep, mat, threshold, wbf, max_hops, bandwidth_hz=400e6):
    """Re-derive one greedy walk with explicit loops; returns (hops, bottleneck, ok)."""

    def bias(n):
        if wbf.kind == WbfKind.NONE:
            return 0.0
        base = (n / wbf.n_ht) ** wbf.k if wbf.kind == WbfKind.POLYNOMIAL else wbf.gamma ** (n / wbf.n_ht)
        return base * wbf.gamma_gap_db + wbf.gamma_h_db

    def rank(node_id, value):
        return (value, dep.node(node_id).is_wired, -node_id)

    current, visited, hops, bottleneck = dep.origin_id, {dep.origin_id}, [], math.inf
    for n in range(max_hops):
        admissible = [
            j
            for j in range(dep.n_gnbs)
            if j != current and j not in visited and mat[current, j] >= threshold
        ]
        if not admissible:
            return tuple(hops), bottleneck, False
        if kind == PolicyKind.WF and any(dep.node(j).is_wired for j in admissible):
            wired = [j for j in admissible if dep.node(j).is_wired]
            chosen = max(wired, key=lambda j: (mat[current, j], -j))
        else:
            pool = admissible
            if kind == PolicyKind.PA:
                cur = dep.node(current).position
                target = dep.node(nearest_wired(current, dep)).position
                forward = [
                    j
                    for j in admissible
                    if (dep.node(j).position.x - cur.x) * (target.x - cur.x)
                    + (dep.node(j).position.y - cur.y) * (target.y - cur.y)
                    > 0
                ]
                pool = forward or admissible

            def value(j):
                v = mat[current, j] + (bias(n) if dep.node(j).is_wired else 0.0)
                if kind == PolicyKind.MLR:
                    return (bandwidth_hz / max(dep.node(j).attached_count, 1)) * math.log2(
                        1 + 10 ** (v / 10)
                    )
                return v

            chosen = max(pool, key=lambda j: rank(j, value(j)))
        hops.append(chosen)
        visited.add(chosen)
        bottleneck = min(bottleneck, mat[current, chosen])
        current = chosen
        if dep.node(chosen).is_wired:
            return tuple(hops), bottleneck, True
    return tuple(hops), bottleneck, False
