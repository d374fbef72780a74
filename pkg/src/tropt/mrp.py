"""Modified Rodrigues Parameter (MRP) rotation chart.

An MRP vector ``psi = tan(theta/4) * axis`` encodes a rotation of angle
``theta`` about ``axis``.  The chart is singular at 360 degrees; the shadow
set ``-psi / |psi|^2`` encodes the same rotation and is used to keep
iterates away from the singularity.  All functions broadcast over leading
batch dimensions.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "mrp_to_rotation",
    "mrp_rate",
    "mrp_shadow",
    "rotation_to_mrp",
    "skew",
]


def skew(v: np.ndarray) -> np.ndarray:
    """Cross-product matrix: skew(v) @ u == cross(v, u). Batched over leading dims."""
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape[:-1] + (3, 3))
    x, y, z = v[..., 0], v[..., 1], v[..., 2]
    out[..., 0, 1] = -z
    out[..., 0, 2] = y
    out[..., 1, 0] = z
    out[..., 1, 2] = -x
    out[..., 2, 0] = -y
    out[..., 2, 1] = x
    return out


def mrp_to_rotation(psi: np.ndarray) -> np.ndarray:
    """Rotation matrix for an MRP vector.

    Returns the proper orthogonal matrix rotating by ``4*atan(|psi|)``
    about ``psi/|psi|`` (identity for ``psi = 0``).  For a body attitude
    the matrix maps body-frame coordinates to inertial-frame coordinates.
    """
    psi = np.asarray(psi, dtype=float)
    sq = np.sum(psi * psi, axis=-1)[..., None, None]
    k = skew(psi)
    eye = np.broadcast_to(np.eye(3), k.shape)
    return eye + (4.0 * (1.0 - sq) * k + 8.0 * (k @ k)) / (1.0 + sq) ** 2


def mrp_rate(psi: np.ndarray, omega_body: np.ndarray) -> np.ndarray:
    """Time derivative of the MRP given body-frame angular velocity.

    psi_dot = 1/4 [(1 - psi.psi) I + 2 skew(psi) + 2 psi psi^T] omega
    """
    psi = np.asarray(psi, dtype=float)
    omega = np.asarray(omega_body, dtype=float)
    sq = np.sum(psi * psi, axis=-1, keepdims=True)
    dot = np.sum(psi * omega, axis=-1, keepdims=True)
    return 0.25 * ((1.0 - sq) * omega + 2.0 * np.cross(psi, omega) + 2.0 * psi * dot)


def mrp_shadow(psi: np.ndarray) -> np.ndarray:
    """Shadow-set counterpart ``-psi/|psi|^2`` (same rotation, other chart)."""
    psi = np.asarray(psi, dtype=float)
    sq = np.sum(psi * psi, axis=-1, keepdims=True)
    if np.any(sq == 0.0):
        raise ValueError("mrp_shadow undefined for the zero MRP")
    return -psi / sq


def rotation_to_mrp(R: np.ndarray) -> np.ndarray:
    """MRP of a rotation matrix, on the inner chart (|psi| <= 1).

    Uses a quaternion extraction that is stable for all rotations, then
    psi = q_vec / (1 + q_w) with q_w >= 0.
    """
    R = np.asarray(R, dtype=float)
    batch = R.shape[:-2]
    Rf = R.reshape((-1, 3, 3))
    n = Rf.shape[0]
    q = np.zeros((n, 4))  # (w, x, y, z)
    tr = np.trace(Rf, axis1=-2, axis2=-1)
    # Shepperd's method, branch on the largest of (trace, diagonal entries).
    diag = np.stack([Rf[:, 0, 0], Rf[:, 1, 1], Rf[:, 2, 2]], axis=-1)
    choice = np.where(tr > np.max(diag, axis=-1), 3, np.argmax(diag, axis=-1))

    def fill(mask, w, x, y, z, s):
        q[mask, 0] = (w / s)[mask]
        q[mask, 1] = (x / s)[mask]
        q[mask, 2] = (y / s)[mask]
        q[mask, 3] = (z / s)[mask]

    with np.errstate(invalid="ignore", divide="ignore"):
        s = 2.0 * np.sqrt(np.abs(1.0 + tr))
        fill(choice == 3, s * s / 4.0, Rf[:, 2, 1] - Rf[:, 1, 2],
             Rf[:, 0, 2] - Rf[:, 2, 0], Rf[:, 1, 0] - Rf[:, 0, 1], s)
        s = 2.0 * np.sqrt(np.abs(1.0 + Rf[:, 0, 0] - Rf[:, 1, 1] - Rf[:, 2, 2]))
        fill(choice == 0, Rf[:, 2, 1] - Rf[:, 1, 2], s * s / 4.0,
             Rf[:, 0, 1] + Rf[:, 1, 0], Rf[:, 0, 2] + Rf[:, 2, 0], s)
        s = 2.0 * np.sqrt(np.abs(1.0 + Rf[:, 1, 1] - Rf[:, 0, 0] - Rf[:, 2, 2]))
        fill(choice == 1, Rf[:, 0, 2] - Rf[:, 2, 0], Rf[:, 0, 1] + Rf[:, 1, 0],
             s * s / 4.0, Rf[:, 1, 2] + Rf[:, 2, 1], s)
        s = 2.0 * np.sqrt(np.abs(1.0 + Rf[:, 2, 2] - Rf[:, 0, 0] - Rf[:, 1, 1]))
        fill(choice == 2, Rf[:, 1, 0] - Rf[:, 0, 1], Rf[:, 0, 2] + Rf[:, 2, 0],
             Rf[:, 1, 2] + Rf[:, 2, 1], s * s / 4.0, s)

    # Enforce q_w >= 0 so the result lies on the inner chart.
    sign = np.where(q[:, :1] < 0.0, -1.0, 1.0)
    q = q * sign
    psi = q[:, 1:] / (1.0 + q[:, :1])
    return psi.reshape(batch + (3,))
