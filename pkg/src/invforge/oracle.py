"""Brute-force invariant dimensions versus Hilbert-series predictions.

The observed side stacks, for each generator g, the matrix of the linear
map f -> apply(g, f) - f on the degree-d monomial basis and takes the
nullspace dimension by exact Gaussian elimination over F_q.  Matrices
hold field element indices; all arithmetic runs through the field's
add/mul tables, vectorized with numpy fancy indexing, so nothing is ever
rounded.  Every elimination is double-checked by multiplying the
original matrix against each nullspace vector.

The predicted side expands the hypersurface series
(1 + t^e) / prod_i (1 - t^(d_i)) implied by the structure theorems:
hsop degrees (1, 2, q) with module generator degree q for the unipotent
group, and (2, q+1, q(q-1)/2) with degree q + q(q-1)/2 for SL2.  The
predictions are derived from those free-module statements, not read
from any table.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldCtx
from . import action
from .poly import Poly, monomials_of_degree


class BudgetError(ValueError):
    """Requested degree exceeds the desk-scale enumeration budget."""


def degree_of_B(q: int) -> int:
    return q + q * (q - 1) // 2


def default_budget(q: int) -> int:
    """Largest oracle degree worth running: covers the relation degree at
    q=3, the relation-plus-slack window at q=5, and q+1 beyond."""
    if q == 3:
        return 2 * degree_of_B(q)
    if q == 5:
        return degree_of_B(q) + q
    return q + 1


def _np_tables(ctx: FieldCtx):
    add = np.array(ctx._add, dtype=np.int16)
    mul = np.array(ctx._mul, dtype=np.int16)
    return add, mul


def nullspace(rows, ncols: int, ctx: FieldCtx):
    """Nullspace basis of a matrix over F_q (rows of element indices).

    Returns a list of length-ncols tuples.  Each basis vector is verified
    against the original matrix before being returned.
    """
    add_t, mul_t = _np_tables(ctx)
    neg_t = np.array(ctx._neg, dtype=np.int16)
    original = np.array(rows, dtype=np.int16).reshape(-1, ncols)
    mat = original.copy()
    nrows = mat.shape[0]
    pivots = []
    r = 0
    for col in range(ncols):
        hot = np.nonzero(mat[r:, col])[0]
        if hot.size == 0:
            continue
        pr = r + int(hot[0])
        if pr != r:
            mat[[r, pr]] = mat[[pr, r]]
        piv_inv = ctx.inv(int(mat[r, col]))
        mat[r] = mul_t[piv_inv, mat[r]]
        factors = mat[:, col].copy()
        factors[r] = 0
        # mat -= factors * pivot_row, via the exact tables.
        mat = add_t[mat, neg_t[mul_t[factors[:, None], mat[r][None, :]]]]
        pivots.append((r, col))
        r += 1
        if r == nrows:
            break
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = [0] * ncols
        v[free] = 1
        for pr, pc in pivots:
            v[pc] = ctx.neg(int(mat[pr, free]))
        basis.append(tuple(v))
    for v in basis:
        acc = np.zeros(original.shape[0], dtype=np.int16)
        for j, c in enumerate(v):
            if c:
                acc = add_t[acc, mul_t[c, original[:, j]]]
        if np.any(acc):
            raise AssertionError("nullspace vector fails exact re-check")
    return basis


def _difference_rows(ctx: FieldCtx, generators, d: int, basis):
    """Stacked matrices of f -> apply(g, f) - f on the degree-d basis."""
    index = {m: i for i, m in enumerate(basis)}
    n = len(basis)
    rows = []
    for g in generators:
        block = [[0] * n for _ in range(n)]
        for j, m in enumerate(basis):
            img = action.apply(g, Poly(ctx, {m: 1}))
            img = img - Poly(ctx, {m: 1})
            for mm, c in img.terms.items():
                block[index[mm]][j] = c
        rows.extend(block)
    return rows


def invariant_dimension(ctx: FieldCtx, generators, d: int) -> int:
    """Dimension of the degree-d fixed space of the generated group."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if not generators:
        raise ValueError("empty generator list")
    if d == 0:
        return 1
    basis = monomials_of_degree(d)
    rows = _difference_rows(ctx, generators, d, basis)
    return len(nullspace(rows, len(basis), ctx))


def invariant_basis(ctx: FieldCtx, generators, d: int):
    """A basis of the degree-d fixed space, re-certified invariant."""
    if d == 0:
        return [Poly.constant(ctx, 1)]
    basis = monomials_of_degree(d)
    rows = _difference_rows(ctx, generators, d, basis)
    out = []
    for v in nullspace(rows, len(basis), ctx):
        f = Poly(ctx, {m: c for m, c in zip(basis, v) if c})
        for g in generators:
            if action.apply(g, f) != f:
                raise AssertionError("oracle basis vector is not invariant")
        out.append(f)
    return out


def hilbert_hypersurface(hsop_degrees, module_gen_degree, max_degree: int):
    """Coefficients of (1 + t^e) / prod (1 - t^d) through max_degree.

    module_gen_degree None means numerator 1."""
    for d in hsop_degrees:
        if d <= 0:
            raise ValueError("hsop degrees must be positive")
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    if module_gen_degree is not None:
        if module_gen_degree <= 0:
            raise ValueError("module generator degree must be positive")
        if module_gen_degree <= max_degree:
            coeffs[module_gen_degree] += 1
    for d in hsop_degrees:
        for i in range(d, max_degree + 1):
            coeffs[i] += coeffs[i - d]
    return coeffs


class DimTable:
    """Observed versus predicted invariant dimensions by degree."""

    __slots__ = ("group_tag", "max_degree", "observed", "predicted")

    def __init__(self, group_tag, max_degree, observed, predicted):
        self.group_tag = group_tag
        self.max_degree = max_degree
        self.observed = list(observed)
        self.predicted = list(predicted)

    @property
    def passed(self) -> bool:
        return self.observed == self.predicted

    def rows(self):
        for d in range(self.max_degree + 1):
            yield d, self.observed[d], self.predicted[d], \
                self.observed[d] == self.predicted[d]

    def to_json(self):
        return {"group": self.group_tag, "max_degree": self.max_degree,
                "observed": self.observed, "predicted": self.predicted,
                "pass": self.passed}

    def to_text(self) -> str:
        lines = [f"{self.group_tag}-invariant dimensions "
                 f"(predictions implied by the free-module structure)",
                 f"{'degree':>6} | {'observed':>8} | {'predicted':>9} | pass"]
        for d, obs, pred, ok in self.rows():
            lines.append(f"{d:>6} | {obs:>8} | {pred:>9} | "
                         f"{'yes' if ok else 'NO'}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        lines = ["degree,observed,predicted,pass"]
        for d, obs, pred, ok in self.rows():
            lines.append(f"{d},{obs},{pred},{'true' if ok else 'false'}")
        return "\n".join(lines) + "\n"


def compare(ctx: FieldCtx, group_tag: str, max_degree: int) -> DimTable:
    """Observed dimensions against the hypersurface prediction.

    group_tag "P" uses all sigma_c with hsop degrees (1, 2, q), module
    generator degree q; "SL2" uses P plus tau with hsop degrees
    (2, q+1, q(q-1)/2), module generator degree q + q(q-1)/2.
    """
    q = ctx.q
    if max_degree > default_budget(q):
        raise BudgetError(
            f"max degree {max_degree} exceeds the q={q} budget "
            f"{default_budget(q)}")
    if group_tag == "P":
        generators = action.enumerate_P(ctx)
        hsop = (1, 2, q)
        shift = q
    elif group_tag == "SL2":
        generators = action.generators_SL2(ctx)
        hsop = (2, q + 1, q * (q - 1) // 2)
        shift = q + q * (q - 1) // 2
    else:
        raise ValueError(f"unknown group tag {group_tag!r}")
    observed = [invariant_dimension(ctx, generators, d)
                for d in range(max_degree + 1)]
    predicted = hilbert_hypersurface(hsop, shift, max_degree)
    return DimTable(group_tag, max_degree, observed, predicted)
