"""Pure-Python Fincke-Pohst traversal (fallback for the compiled kernel)."""
from __future__ import annotations

from math import ceil, floor, sqrt

from .errors import NodeLimitExceeded


def fincke_pohst(qf, center, r2: float, max_nodes: int):
    """Integer points y with sum_i qf[i][i] (y_i - c_i + sum_{j>i} qf[i][j] (y_j - c_j))^2 <= r2.

    ``qf`` holds the squared Cholesky diagonal on its diagonal and the
    normalised off-diagonal Cholesky entries above it.  Points come out in
    lexicographic order of (y_{n-1}, ..., y_0).
    """
    n = len(center)
    q = [[float(qf[i][j]) for j in range(n)] for i in range(n)]
    c = [float(v) for v in center]
    if n == 0:
        return []
    y = [0] * n
    hi = [0] * n
    shift = [0.0] * n  # c_i - sum_{j>i} q_ij (y_j - c_j)
    budget = [0.0] * (n + 1)
    budget[n] = r2
    out = []
    nodes = 0

    def open_level(i):
        s = c[i]
        for j in range(i + 1, n):
            s -= q[i][j] * (y[j] - c[j])
        shift[i] = s
        b = budget[i + 1]
        if b < 0:
            return False
        h = sqrt(b / q[i][i])
        lo = ceil(s - h)
        hi[i] = floor(s + h)
        y[i] = lo - 1
        return True

    i = n - 1
    if not open_level(i):
        return []
    while i < n:
        y[i] += 1
        if y[i] > hi[i]:
            i += 1
            continue
        nodes += 1
        if nodes > max_nodes:
            raise NodeLimitExceeded(f"more than {max_nodes} nodes")
        d = y[i] - shift[i]
        budget[i] = budget[i + 1] - q[i][i] * d * d
        if budget[i] < 0:
            continue
        if i == 0:
            out.append(tuple(y))
        else:
            i -= 1
            open_level(i)
    return out
