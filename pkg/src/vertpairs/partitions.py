"""Partition combinatorics: strict partitions, transposition, and the
nesting vectors n_0 <= ... <= n_{d-1} that index the direct summation."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Partition:
    """A partition stored as a non-increasing tuple of positive parts."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def is_strict(self) -> bool:
        return all(self.parts[i] > self.parts[i + 1] for i in range(len(self.parts) - 1))

    def to_json(self):
        return list(self.parts)


def transpose(p: Partition) -> Partition:
    """Conjugate partition (columns of the diagram become rows)."""
    if not p.parts:
        return Partition(())
    cols = [sum(1 for part in p.parts if part > i) for i in range(p.parts[0])]
    return Partition(tuple(cols))


def enumerate_strict_partitions(d: int) -> list:
    """All partitions of d with strictly decreasing parts, lexicographically
    decreasing."""
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    out = []

    def rec(remaining, maximum, prefix):
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for first in range(min(remaining, maximum), 0, -1):
            rec(remaining - first, first - 1, prefix + [first])

    rec(d, d, [])
    return out


@dataclass(frozen=True)
class NestingVector:
    """Lengths (n_0, ..., n_{d-1}) of a nested divisor flag, non-decreasing."""

    d: int
    n: tuple = field(default=())

    def __post_init__(self):
        n = tuple(self.n)
        object.__setattr__(self, "n", n)
        if self.d <= 0 or len(n) != self.d:
            raise ValueError(f"need exactly d={self.d} entries, got {n}")
        if n and n[0] < 0:
            raise ValueError(f"entries must be non-negative: {n}")
        if any(n[i] > n[i + 1] for i in range(self.d - 1)):
            raise ValueError(f"entries must be non-decreasing: {n}")

    def delta(self, i: int) -> int:
        """Successive difference n_i - n_{i-1} for 1 <= i <= d-1."""
        if not 1 <= i <= self.d - 1:
            raise IndexError(i)
        return self.n[i] - self.n[i - 1]

    @property
    def deltas(self) -> tuple:
        return tuple(self.n[i] - self.n[i - 1] for i in range(1, self.d))


def euler_characteristic(nv: NestingVector, kappa_sq: int) -> int:
    """sum_i (n_i - (i+1)*kappa_sq)."""
    return sum(n - (i + 1) * kappa_sq for i, n in enumerate(nv.n))


def enumerate_nestings(d: int, chi_window, kappa_sq: int) -> list:
    """All nesting vectors whose Euler characteristic lies in chi_window.

    chi = d*n_0 + sum_i (d-i)*delta_i - kappa_sq*d(d+1)/2, and every variable
    enters with positive weight, so the window bounds the search box.
    """
    lo, hi = chi_window
    if lo > hi:
        return []
    shift = kappa_sq * d * (d + 1) // 2
    top = hi + shift  # need d*n_0 + sum (d-i) delta_i <= top
    out = []
    if top < 0:
        return out

    def rec(i, n_prev, weight_used, chosen):
        if i == d:
            chi = d * chosen[0] + sum(
                (d - k) * (chosen[k] - chosen[k - 1]) for k in range(1, d)
            ) - shift
            if lo <= chi <= hi:
                out.append(NestingVector(d, tuple(chosen)))
            return
        budget = (top - weight_used) // (d - i)
        for delta in range(budget + 1):
            chosen.append(n_prev + delta)
            rec(i + 1, n_prev + delta, weight_used + (d - i) * delta, chosen)
            chosen.pop()

    for n0 in range(top // d + 1):
        rec(1, n0, d * n0, [n0])
    return out
