"""Exact truncated power series and the v1(q) coefficient engine.

v1(q) = sum_{n>=0} q^{n(n+1)/2} / prod_{k=1}^{n} (1 + q^{2k}), and V1(n) is
its n-th coefficient.  Everything here is exact integer arithmetic; the
coefficients grow like exp(c*sqrt(n)) and routinely exceed 64 bits, so
Python's arbitrary-precision ints are load-bearing, not a convenience.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_COEFF_CEILING = 50_000
CEILING_ENV_VAR = "V1SIGNS_MAX_N"


class ResourceLimitError(RuntimeError):
    """Requested coefficient range exceeds the configured ceiling."""


def coefficient_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV_VAR)
    if raw is None:
        return DEFAULT_COEFF_CEILING
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{CEILING_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ValueError(f"{CEILING_ENV_VAR} must be nonnegative, got {value}")
    return value


@dataclass(frozen=True)
class TruncatedIntSeries:
    """Power series with integer coefficients, exact modulo q^(order+1)."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"negative order: {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"need {self.order + 1} coefficients for order {self.order}, "
                f"got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def constant(cls, value: int, order: int) -> "TruncatedIntSeries":
        return cls(order, (int(value),) + (0,) * order)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], order: int | None = None) -> "TruncatedIntSeries":
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        coeffs += [0] * (order + 1 - len(coeffs))
        return cls(order, tuple(coeffs[: order + 1]))

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])


def series_mul(a: TruncatedIntSeries, b: TruncatedIntSeries) -> TruncatedIntSeries:
    """Exact product modulo q^(order+1); both inputs must share the order."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} != {b.order}")
    n = a.order
    out = [0] * (n + 1)
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedIntSeries(n, tuple(out))


def series_inverse(a: TruncatedIntSeries) -> TruncatedIntSeries:
    """Multiplicative inverse modulo q^(order+1).

    Requires unit constant term, which keeps the inverse integral:
    b[0] = 1 and b[i] = -sum_{j=1..i} a[j] b[i-j].
    """
    if a.coeffs[0] != 1:
        raise ValueError(f"constant term must be 1, got {a.coeffs[0]}")
    n = a.order
    inv = [0] * (n + 1)
    inv[0] = 1
    for i in range(1, n + 1):
        acc = 0
        for j in range(1, i + 1):
            aj = a.coeffs[j]
            if aj:
                acc += aj * inv[i - j]
        inv[i] = -acc
    return TruncatedIntSeries(n, tuple(inv))


def pochhammer_neg_q2(n: int, order: int) -> TruncatedIntSeries:
    """(-q^2; q^2)_n = prod_{k=1}^{n} (1 + q^(2k)), truncated; empty product is 1."""
    if n < 0:
        raise ValueError(f"negative Pochhammer index: {n}")
    out = [0] * (order + 1)
    out[0] = 1
    for k in range(1, n + 1):
        m = 2 * k
        if m > order:
            break
        # multiply by (1 + q^m) in place, descending so old values are used
        for i in range(order, m - 1, -1):
            out[i] += out[i - m]
    return TruncatedIntSeries(order, tuple(out))


def _accumulate_v1(max_n: int, n_from: int, n_to: int) -> list[int]:
    """Summands n in [n_from, n_to) of the defining sum, as coefficients 0..max_n.

    Maintains inv = 1/prod_{k<=n}(1+q^2k) incrementally.  Dividing by
    (1 + q^m) is the recurrence b[i] = a[i] - b[i-m], the memoized form of
    multiplying by the alternating series sum_j (-1)^j q^(mj); one exact
    subtraction per kept coefficient.  inv is truncated to max_n - n(n+1)/2
    as n grows, which is exact because the n-th summand starts at degree
    n(n+1)/2.
    """
    out = [0] * (max_n + 1)
    inv = [0] * (max_n + 1)
    inv[0] = 1
    if n_from == 0:
        out[0] = 1
    n = 1
    while n * (n + 1) // 2 <= max_n and n < n_to:
        t = n * (n + 1) // 2
        keep = max_n - t
        m = 2 * n
        for i in range(m, keep + 1):
            inv[i] -= inv[i - m]
        del inv[keep + 1:]
        if n >= n_from:
            for i in range(keep + 1):
                out[t + i] += inv[i]
        n += 1
    return out


def v1_coefficients(max_n: int, *, ceiling: int | None = None, jobs: int = 1) -> list[int]:
    """Exact V1(0..max_n).

    The outer sum runs over all n with n(n+1)/2 <= max_n.  With jobs > 1 the
    outer sum is partitioned into contiguous blocks computed in separate
    processes and combined by exact addition; the result is bit-identical to
    the sequential one.
    """
    if max_n < 0:
        raise ValueError(f"negative max_n: {max_n}")
    limit = coefficient_ceiling() if ceiling is None else ceiling
    if max_n > limit:
        raise ResourceLimitError(
            f"max_n={max_n} exceeds the coefficient ceiling {limit} "
            f"(raise via the {CEILING_ENV_VAR} environment variable)"
        )
    n_outer = 0
    while (n_outer + 1) * (n_outer + 2) // 2 <= max_n:
        n_outer += 1
    if jobs <= 1 or n_outer < 2 * jobs:
        return _accumulate_v1(max_n, 0, n_outer + 1)
    bounds = [round(i * (n_outer + 1) / jobs) for i in range(jobs + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        partials = list(
            pool.map(_accumulate_v1, [max_n] * jobs, bounds[:-1], bounds[1:])
        )
    out = partials[0]
    for part in partials[1:]:
        for i, v in enumerate(part):
            if v:
                out[i] += v
    return out


def v1_series(max_n: int, **kwargs) -> TruncatedIntSeries:
    return TruncatedIntSeries.from_coeffs(v1_coefficients(max_n, **kwargs))


def write_coefficients_csv(path, coeffs: Sequence[int]) -> None:
    """CSV with header n,V1; one decimal-integer row per n; \\n newlines."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "V1"])
        for n, v in enumerate(coeffs):
            writer.writerow([n, v])


def read_coefficients_csv(path) -> list[int]:
    """Read a coefficient CSV produced by write_coefficients_csv."""
    out: list[int] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["n", "V1"]:
            raise ValueError(f"unexpected CSV header: {header}")
        for row in reader:
            n, v = int(row[0]), int(row[1])
            if n != len(out):
                raise ValueError(f"non-contiguous index {n} at row {len(out)}")
            out.append(v)
    return out
