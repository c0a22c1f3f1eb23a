"""Triangle meshes of revolution surfaces in Wavefront OBJ format.

The surface ``Z(phi, x) = (rho(x) cos phi, rho(x) sin phi, x)`` is sampled on
the profile nodes times ``n_phi`` azimuthal segments; each quad is split into
two triangles. Vertex normals are the analytic unit normal
``Z_phi x Z_x / |Z_phi x Z_x|``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

N_PHI = 96


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray  # (V, 3)
    normals: np.ndarray  # (V, 3)
    faces: np.ndarray  # (F, 3), zero-based

    @property
    def area(self) -> float:
        a, b, c = (self.vertices[self.faces[:, k]] for k in range(3))
        return float(0.5 * np.sum(np.linalg.norm(np.cross(b - a, c - a), axis=1)))


def revolution_mesh(x, rho, drho, n_phi: int = N_PHI) -> Mesh:
    """Mesh of the surface generated by the profile ``rho`` with slope ``drho`` at nodes ``x``."""
    x, rho, drho = (np.asarray(a, dtype=float) for a in (x, rho, drho))
    if not (x.shape == rho.shape == drho.shape and x.ndim == 1 and x.size >= 2):
        raise ValueError("x, rho, drho must be 1-D arrays of equal length >= 2")
    if n_phi < 3:
        raise ValueError("need at least 3 azimuthal segments")
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    P, X = np.meshgrid(phi, x, indexing="xy")
    Rr = np.broadcast_to(rho[:, None], P.shape)
    D = np.broadcast_to(drho[:, None], P.shape)
    cp, sp = np.cos(P), np.sin(P)
    verts = np.stack([Rr * cp, Rr * sp, X], axis=-1).reshape(-1, 3)
    z_phi = np.stack([-Rr * sp, Rr * cp, np.zeros_like(P)], axis=-1)
    z_x = np.stack([D * cp, D * sp, np.ones_like(P)], axis=-1)
    nrm = np.cross(z_phi, z_x)
    nrm /= np.linalg.norm(nrm, axis=-1, keepdims=True)

    i = np.arange(x.size - 1)[:, None]
    j = np.arange(n_phi)[None, :]
    a = i * n_phi + j
    b = i * n_phi + (j + 1) % n_phi
    c = (i + 1) * n_phi + (j + 1) % n_phi
    d = (i + 1) * n_phi + j
    faces = np.concatenate(
        [np.stack([a, b, c], axis=-1).reshape(-1, 3), np.stack([a, c, d], axis=-1).reshape(-1, 3)]
    )
    return Mesh(verts, nrm.reshape(-1, 3), faces)


def to_obj(mesh: Mesh, name: str = "surface") -> str:
    lines = [f"o {name}"]
    lines += [f"v {p[0]:.9g} {p[1]:.9g} {p[2]:.9g}" for p in mesh.vertices]
    lines += [f"vn {n[0]:.9g} {n[1]:.9g} {n[2]:.9g}" for n in mesh.normals]
    lines += [f"f {a + 1}//{a + 1} {b + 1}//{b + 1} {c + 1}//{c + 1}" for a, b, c in mesh.faces]
    return "\n".join(lines) + "\n"


def write_obj(mesh: Mesh, path, name: str = "surface") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(to_obj(mesh, name))


def read_obj_vertices(path) -> np.ndarray:
    """Vertex coordinates of an OBJ file written by :func:`write_obj`."""
    with open(path, encoding="utf-8") as fh:
        rows = [line.split()[1:] for line in fh if line.startswith("v ")]
    return np.array(rows, dtype=float)
