"""
The gl(V) ⊕ V dendriform presentation.

Basis: the matrix units E_ij in row-major order (index i·n + j), then the
standard basis u_1..u_n of V. With (A+u) ≺ (B+v) = AB + Av,
(A+u) ≻ (B+v) = −BA and δ_β(A+u) = βAβ⁻¹ + βu the sub-adjacent bracket is
the one underlying the Hom-omni-Lie algebra.
"""

from typing import Optional

from homleib.algebra.linalg import LinearMap, Product, Vector, map_inverse
from homleib.algebra.model import AlgebraPresentation, VarietyTag
from homleib.algebra.scalar import FieldSpec
from homleib.core.exceptions import DimensionError
from homleib.core.logging import log_warning, logged_operation
from homleib.construct.twist import YAU_FROM_UNTWISTED, TwistRecipe, verify_output, yau_twist

OMNI_MODES = ("yau", "literal")


def _untwisted_products(field: FieldSpec, n: int):
    dim = n * n + n
    prec, succ = [], []
    for i in range(n):
        for j in range(n):
            eij = i * n + j
            for k in range(n):
                # E_ij E_jk = E_ik
                prec.append((eij, j * n + k, i * n + k, 1))
                # E_ki E_ij = E_kj, with a minus sign
                succ.append((eij, k * n + i, k * n + j, -1))
            # E_ij u_j = u_i
            prec.append((eij, n * n + j, n * n + i, 1))
    return Product.from_entries(field, dim, prec), Product.from_entries(field, dim, succ)


def adjoint_twist(beta: LinearMap) -> LinearMap:
    """δ_β on gl(V) ⊕ V."""
    n = beta.dim_in
    inverse = map_inverse(beta)
    field = beta.field
    columns = []
    for i in range(n):
        for j in range(n):
            # β E_ij β⁻¹ has entry (a, b) equal to β[a][i]·β⁻¹[j][b]
            coords = [beta.entry(a, i) * inverse.entry(j, b) for a in range(n) for b in range(n)]
            columns.append(Vector(field, coords + [field.zero] * n))
    for k in range(n):
        columns.append(Vector(field, [field.zero] * (n * n) + list(beta.column(k).coords)))
    return LinearMap.from_columns(field, columns, n * n + n)


@logged_operation("omni_gl_example")
def omni_gl_example(
    n: int,
    beta: LinearMap,
    mode: str = "yau",
    jobs: Optional[int] = None,
) -> AlgebraPresentation:
    """
    The dendriform presentation on gl(V) ⊕ V for dim V = n.

    ``mode="yau"`` composes both products with δ_β (the Yau twist of the
    untwisted structure, valid for every invertible β). ``mode="literal"``
    keeps the untwisted products next to δ_β, which satisfies the
    dendriform identities only for β = id.
    """
    if mode not in OMNI_MODES:
        raise ValueError(f"unknown omni mode {mode!r}; expected one of {OMNI_MODES}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if beta.shape != (n, n):
        raise DimensionError(f"β must be {n}×{n}, got {beta.dim_out}×{beta.dim_in}")

    field = beta.field
    delta = adjoint_twist(beta)
    prec, succ = _untwisted_products(field, n)
    dim = n * n + n
    untwisted = AlgebraPresentation(
        dim=dim,
        field=field,
        variety=VarietyTag.HOM_LEIBNIZ_DENDRIFORM,
        products={"prec": prec, "succ": succ},
        twists={"al": LinearMap.identity(field, dim)},
        multiplicative=True,
        name=f"omni_gl{n}",
    )
    if mode == "yau":
        return yau_twist(untwisted, TwistRecipe.single(delta, YAU_FROM_UNTWISTED), jobs=jobs)

    if not beta.is_identity:
        log_warning("literal omni products with β ≠ id are not expected to be dendriform")
    literal = untwisted.replace(twists={"al": delta}, name=f"omni_gl{n}_literal")
    return verify_output(literal, "omni_gl_example", jobs)
