"""Pure-Python twin of the compiled shell summation in ``_series.pyx``."""

from __future__ import annotations

import numpy as np


def shell_sums(b, x, leaf, order: int):
    """Per-shell sums of ``leaf[|m|] * prod_j (b_j)_{m_j} x_j^{m_j} / m_j!``.

    Returns ``(shells, abs_shells)``, both of length ``order + 1``; entry ``k``
    collects the multi-indices with ``|m| = k`` (signed and absolute).
    Terms are generated by one multiplicative update per step.
    """
    b = [float(v) for v in b]
    x = [float(v) for v in x]
    leaf = [float(v) for v in leaf]
    n = len(b)
    if len(x) != n:
        raise ValueError("b and x must have the same length")
    if len(leaf) < order + 1:
        raise ValueError("leaf factors must cover every shell")
    shells = [0.0] * (order + 1)
    abs_shells = [0.0] * (order + 1)
    if n == 0:
        shells[0] = leaf[0]
        abs_shells[0] = abs(leaf[0])
        return np.array(shells), np.array(abs_shells)

    last = n - 1
    bl, xl = b[last], x[last]

    def walk(j: int, used: int, t: float) -> None:
        if j == last:
            for mj in range(order - used + 1):
                k = used + mj
                v = t * leaf[k]
                shells[k] += v
                abs_shells[k] += abs(v)
                t *= (bl + mj) * xl / (mj + 1)
                if t == 0.0:
                    break
            return
        bj, xj = b[j], x[j]
        for mj in range(order - used + 1):
            walk(j + 1, used + mj, t)
            t *= (bj + mj) * xj / (mj + 1)
            if t == 0.0:
                break

    walk(0, 0, 1.0)
    return np.array(shells), np.array(abs_shells)
