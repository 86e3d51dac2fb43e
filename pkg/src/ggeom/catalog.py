"""Standard structures used throughout the docs, tests and models.

Every builder takes the coordinate names so that two copies can be
multiplied without a collision.
"""

from __future__ import annotations

from .calculus import Chart, OneForm, TwoForm, VectorField
from .ggcore import ClassicalACS, GCS, GACS, from_complex, from_contact, from_symplectic
from .products import standard_real_acs, standard_real_gacs
from .symbolic import Scalar

__all__ = [
    "classical_from_columns",
    "cosymplectic",
    "darboux_sasakian",
    "perturbed_darboux",
    "twisted",
    "darboux_contact",
    "standard_complex",
    "symplectic_plane",
    "standard_real_acs",
    "standard_real_gacs",
]


def classical_from_columns(chart: Chart, columns, xi, eta) -> ClassicalACS:
    """Build (phi, xi, eta) with ``columns[j]`` = components of phi(D_j)."""
    n = chart.dim
    phi = [[Scalar.coerce(columns[j][i]) for j in range(n)] for i in range(n)]
    return ClassicalACS(chart, phi, VectorField(chart, xi), OneForm(chart, eta))


def _chart(coords) -> tuple[Chart, list[Scalar]]:
    chart = Chart(tuple(coords))
    return chart, [Scalar.coord(c) for c in chart.coords]


def cosymplectic(coords=("x", "y", "z")) -> ClassicalACS:
    """phi: Dx -> Dy, Dy -> -Dx, Dz -> 0 with xi = Dz, eta = dz."""
    chart, _ = _chart(coords)
    return classical_from_columns(chart, [[0, 1, 0], [-1, 0, 0], [0, 0, 0]], [0, 0, 1], [0, 0, 1])


def darboux_sasakian(coords=("x", "y", "z")) -> ClassicalACS:
    """eta = dz - y dx, xi = Dz, phi(Dx) = -Dy, phi(Dy) = Dx + y Dz."""
    chart, (_, y, _) = _chart(coords)
    return classical_from_columns(chart, [[0, -1, 0], [1, 0, y], [0, 0, 0]], [0, 0, 1], [-y, 0, 1])


def perturbed_darboux(coords=("x", "y", "z")) -> ClassicalACS:
    """Darboux data with phi rescaled by k = 1 + y^2 on the contact plane.

    phi(Dy) = k (Dx + y Dz) and phi(Dx + y Dz) = -Dy / k.
    """
    chart, (_, y, _) = _chart(coords)
    k = 1 + y * y
    return classical_from_columns(chart, [[0, -1 / k, 0], [k, 0, k * y], [0, 0, 0]], [0, 0, 1], [-y, 0, 1])


def twisted(coords=("x", "y", "z")) -> ClassicalACS:
    """eta = dz + z dx, xi = Dz: L_xi eta = dx, so none of the normality tensors vanish."""
    chart, (_, _, z) = _chart(coords)
    return classical_from_columns(chart, [[0, 1, 0], [-1, 0, z], [0, 0, 0]], [0, 0, 1], [z, 0, 1])


def darboux_contact(coords=("x", "y", "z")) -> GACS:
    chart, (_, y, _) = _chart(coords)
    return from_contact(OneForm(chart, [-y, 0, 1]))


def standard_complex(coords=("x", "y")) -> GCS:
    chart, _ = _chart(coords)
    return from_complex([[0, -1], [1, 0]], chart)


def symplectic_plane(coords=("x", "y"), coefficient=1) -> GCS:
    """c dx^dy for a Scalar coefficient ``c`` (may depend on the coordinates)."""
    chart, _ = _chart(coords)
    return from_symplectic(TwoForm.from_upper(chart, {(0, 1): coefficient}))
