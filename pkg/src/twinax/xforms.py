"""Exact affine transformations of Q^d and the light-cone toolkit: Lorentz
boosts, spatial rotations, dilations, translations, slope-1-line preservation
tests, and the decomposition of a cone-preserving affine map into a Poincare
map and a dilation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .efield import (
    ONE,
    ZERO,
    CoordPoint,
    FieldElem,
    as_field,
    field_sqrt,
)
from .errors import (
    DimensionMismatch,
    DimensionTooLow,
    FasterThanLight,
    NotConePreserving,
    SingularMatrix,
)

Matrix = tuple  # tuple of row tuples of FieldElem


def matrix_of(rows) -> Matrix:
    return tuple(tuple(as_field(entry) for entry in row) for row in rows)


def identity_matrix(d: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d)
    )


def minkowski_matrix(d: int) -> Matrix:
    """diag(1, -1, ..., -1)."""
    return tuple(
        tuple((ONE if i == 0 else -ONE) if i == j else ZERO for j in range(d))
        for i in range(d)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, k = len(a), len(b[0]), len(b)
    if len(a[0]) != k:
        raise DimensionMismatch("matrix product shape mismatch")
    return tuple(
        tuple(
            _dot_row_col(a, b, i, j, k) for j in range(m)
        )
        for i in range(n)
    )


def _dot_row_col(a, b, i, j, k):
    total = ZERO
    for t in range(k):
        total = total + a[i][t] * b[t][j]
    return total


def mat_vec(a: Matrix, v: CoordPoint) -> CoordPoint:
    if len(a[0]) != v.dim:
        raise DimensionMismatch("matrix/vector shape mismatch")
    return CoordPoint(
        tuple(_dot_row_vec(row, v) for row in a)
    )


def _dot_row_vec(row, v):
    total = ZERO
    for entry, coord in zip(row, v.coords):
        total = total + entry * coord
    return total


def transpose(a: Matrix) -> Matrix:
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def mat_scale(a: Matrix, s: FieldElem) -> Matrix:
    s = as_field(s)
    return tuple(tuple(s * entry for entry in row) for row in a)


def mat_inverse(a: Matrix) -> Matrix:
    """Exact Gauss-Jordan inverse; raises SingularMatrix if det = 0."""
    n = len(a)
    work = [list(row) for row in a]
    inv = [list(row) for row in identity_matrix(n)]
    for col in range(n):
        pivot = None
        for row in range(col, n):
            if not work[row][col].is_zero():
                pivot = row
                break
        if pivot is None:
            raise SingularMatrix("matrix is not invertible")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = work[col][col].inverse()
        work[col] = [scale * entry for entry in work[col]]
        inv[col] = [scale * entry for entry in inv[col]]
        for row in range(n):
            if row == col or work[row][col].is_zero():
                continue
            factor = work[row][col]
            work[row] = [x - factor * y for x, y in zip(work[row], work[col])]
            inv[row] = [x - factor * y for x, y in zip(inv[row], inv[col])]
    return tuple(tuple(row) for row in inv)


def determinant(a: Matrix) -> FieldElem:
    n = len(a)
    work = [list(row) for row in a]
    det = ONE
    for col in range(n):
        pivot = None
        for row in range(col, n):
            if not work[row][col].is_zero():
                pivot = row
                break
        if pivot is None:
            return ZERO
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det = det * work[col][col]
        scale = work[col][col].inverse()
        for row in range(col + 1, n):
            if work[row][col].is_zero():
                continue
            factor = work[row][col] * scale
            work[row] = [x - factor * y for x, y in zip(work[row], work[col])]
    return det


@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + offset with an invertible exact linear part."""

    linear: Matrix
    offset: CoordPoint

    @staticmethod
    def identity(d: int) -> "AffineMap":
        return AffineMap(identity_matrix(d), CoordPoint.zero(d))

    @property
    def dim(self) -> int:
        return len(self.linear)

    def apply(self, x: CoordPoint) -> CoordPoint:
        return mat_vec(self.linear, x) + self.offset

    def linear_apply(self, v: CoordPoint) -> CoordPoint:
        return mat_vec(self.linear, v)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner: x -> self(inner(x))."""
        return AffineMap(
            mat_mul(self.linear, inner.linear),
            mat_vec(self.linear, inner.offset) + self.offset,
        )

    def inverse(self) -> "AffineMap":
        inv = mat_inverse(self.linear)
        return AffineMap(inv, -mat_vec(inv, self.offset))

    def determinant(self) -> FieldElem:
        return determinant(self.linear)

    def is_identity(self) -> bool:
        return self == AffineMap.identity(self.dim)


def translation(offset: CoordPoint) -> AffineMap:
    return AffineMap(identity_matrix(offset.dim), offset)


def dilation(d: int, factor) -> AffineMap:
    factor = as_field(factor)
    if factor.sign() <= 0:
        raise ValueError("dilation factor must be positive")
    return AffineMap(mat_scale(identity_matrix(d), factor), CoordPoint.zero(d))


def lorentz_boost(d: int, velocity) -> AffineMap:
    """The pure boost taking the time axis to the worldline of `velocity`.

    velocity is the spatial (d-1)-vector; requires |velocity| < 1 exactly.
    The time column is (gamma, gamma*v), so boost(v).linear_apply(1_t) is the
    unit clock tick of the moving frame.
    """
    if isinstance(velocity, CoordPoint):
        v = list(velocity.coords)
    else:
        v = [as_field(c) for c in velocity]
    if len(v) != d - 1:
        raise DimensionMismatch(f"velocity must have {d - 1} spatial components")
    speed_sq = ZERO
    for c in v:
        speed_sq = speed_sq + c * c
    gap = ONE - speed_sq
    if gap.sign() <= 0:
        raise FasterThanLight("boost velocity must satisfy |v| < 1 exactly")
    gamma = field_sqrt(gap).inverse()
    rows = [[gamma] + [gamma * c for c in v]]
    if speed_sq.is_zero():
        for i in range(1, d):
            rows.append([ONE if i == j else ZERO for j in range(d)])
        return AffineMap(matrix_of(rows), CoordPoint.zero(d))
    shear = (gamma - ONE) / speed_sq
    for i in range(1, d):
        row = [gamma * v[i - 1]]
        for j in range(1, d):
            entry = shear * v[i - 1] * v[j - 1]
            if i == j:
                entry = entry + ONE
            row.append(entry)
        rows.append(row)
    return AffineMap(matrix_of(rows), CoordPoint.zero(d))


def spatial_rotation(d: int, axis_i: int, axis_j: int, cos, sin) -> AffineMap:
    """A rotation in the spatial plane (axis_i, axis_j); axes are 1-based
    spatial indices (so the time coordinate 0 is never touched).
    Requires cos^2 + sin^2 = 1 exactly.
    """
    cos, sin = as_field(cos), as_field(sin)
    if cos * cos + sin * sin != ONE:
        raise ValueError("rotation parameters must satisfy cos^2 + sin^2 = 1")
    if not (1 <= axis_i < d and 1 <= axis_j < d and axis_i != axis_j):
        raise DimensionMismatch("rotation plane must use two distinct spatial axes")
    rows = [list(row) for row in identity_matrix(d)]
    rows[axis_i][axis_i] = cos
    rows[axis_j][axis_j] = cos
    rows[axis_i][axis_j] = -sin
    rows[axis_j][axis_i] = sin
    return AffineMap(matrix_of(rows), CoordPoint.zero(d))


def minkowski_gram(linear: Matrix) -> Matrix:
    """L^T @ eta @ L for the Minkowski form eta = diag(1, -1, ..., -1)."""
    d = len(linear)
    return mat_mul(transpose(linear), mat_mul(minkowski_matrix(d), linear))


def _cone_scale(linear: Matrix):
    """c with L^T eta L = c * eta, or None."""
    d = len(linear)
    gram = minkowski_gram(linear)
    c = gram[0][0]
    eta = minkowski_matrix(d)
    for i in range(d):
        for j in range(d):
            if gram[i][j] != c * eta[i][j]:
                return None
    return c


def preserves_slope1(mapping: AffineMap, *, allow_low_dim: bool = False) -> bool:
    """True iff the linear part scales the Minkowski form by some c > 0.

    For d >= 3 this is exactly preservation of slope-1 lines by an affine
    bijection.  d = 2 is rejected: the equivalence fails there (null-axis
    swaps preserve slope-1 lines without scaling the form).
    """
    if mapping.dim < 3 and not allow_low_dim:
        raise DimensionTooLow(
            "slope-1 preservation analysis needs dimension >= 3"
        )
    c = _cone_scale(mapping.linear)
    return c is not None and c.sign() > 0


@dataclass(frozen=True)
class DecompositionResult:
    """input = poincare composed with a dilation applied first.

    recompose() reproduces the input exactly; the field-automorphism component
    is always the identity, the only order-automorphism this backend admits.
    """

    poincare: AffineMap
    dilation: FieldElem
    automorphism: str = "identity"

    def recompose(self) -> AffineMap:
        return self.poincare.compose(dilation(self.poincare.dim, self.dilation))


def az_decompose(mapping: AffineMap) -> DecompositionResult:
    """Split a slope-1-preserving affine map into Poincare part and dilation."""
    if mapping.dim < 3:
        raise DimensionTooLow("the decomposition is only valid for dimension >= 3")
    c = _cone_scale(mapping.linear)
    if c is None or c.sign() <= 0:
        raise NotConePreserving(
            "linear part does not scale the Minkowski form by a positive factor"
        )
    scale = field_sqrt(c)
    poincare = AffineMap(mat_scale(mapping.linear, scale.inverse()), mapping.offset)
    return DecompositionResult(poincare, scale)


def is_poincare(mapping: AffineMap) -> bool:
    """True iff the linear part preserves the Minkowski form exactly."""
    c = _cone_scale(mapping.linear)
    return c is not None and c == ONE
