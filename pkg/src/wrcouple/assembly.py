"""P1 finite element assembly for the two coupled subdomains.

The computational domain is Omega1 = [-1,0] (x [0,1] in 2D) and
Omega2 = [0,1] (x [0,1]), glued along the interface x = 0.  Each
subdomain is discretized with n_cells cells per unit length; matrices
are partitioned into interior (I) and interface (Gamma) blocks.

1D blocks use the grid-scaled convention (everything multiplied by
1/dx relative to the natural weak form), i.e.

    A_II = lambda/dx^2 * tridiag(-1, 2, -1),   M_II = alpha/6 * tridiag(1, 4, 1),
    A_GG = lambda/dx^2,                        M_GG = alpha/3,

with the coupling vectors hitting the interior node next to x = 0.
2D blocks are the natural P1 matrices on a structured triangulation
(every cell split along its lower-left to upper-right diagonal).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .materials import Material


@dataclass(frozen=True)
class MeshSpec:
    """Structured mesh of one unit-length (or unit-square) subdomain."""

    dim: int
    n_cells: int

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if self.n_cells < 2:
            raise ValueError(f"need n_cells >= 2 for an interior node, got {self.n_cells}")

    @property
    def dx(self) -> float:
        return 1.0 / self.n_cells

    @property
    def n_interface(self) -> int:
        """Interface unknowns s (corner nodes carry the Dirichlet condition in 2D)."""
        return 1 if self.dim == 1 else self.n_cells - 1

    @property
    def n_interior(self) -> int:
        n = self.n_cells - 1
        return n if self.dim == 1 else n * n


@dataclass
class SubdomainOperator:
    """Mass/stiffness blocks of one subdomain, partitioned I / Gamma."""

    mesh: MeshSpec
    material: Material
    side: str
    m_ii: sp.csr_matrix
    a_ii: sp.csr_matrix
    m_ig: sp.csr_matrix
    a_ig: sp.csr_matrix
    m_gi: sp.csr_matrix
    a_gi: sp.csr_matrix
    m_gg: sp.csr_matrix
    a_gg: sp.csr_matrix
    interior_coords: np.ndarray = field(repr=False)
    interface_coords: np.ndarray = field(repr=False)

    @property
    def n_interior(self) -> int:
        return self.m_ii.shape[0]

    @property
    def n_interface(self) -> int:
        return self.m_gg.shape[0]


@dataclass
class MonolithicOperator:
    """Glued full-domain operator, unknowns ordered [I1, Gamma, I2]."""

    mass: sp.csr_matrix
    stiffness: sp.csr_matrix
    n1: int
    s: int
    n2: int
    coords: np.ndarray = field(repr=False)
    mesh: MeshSpec
    materials: tuple

    @property
    def n_total(self) -> int:
        return self.n1 + self.s + self.n2

    @property
    def idx_interior1(self):
        return slice(0, self.n1)

    @property
    def idx_interface(self):
        return slice(self.n1, self.n1 + self.s)

    @property
    def idx_interior2(self):
        return slice(self.n1 + self.s, self.n_total)


def _check_side(side):
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def assemble_1d(material: Material, mesh: MeshSpec, side: str) -> SubdomainOperator:
    """Assemble the grid-scaled 1D P1 blocks of one subdomain."""
    _check_side(side)
    if mesh.dim != 1:
        raise ValueError("assemble_1d needs a 1D mesh")
    n = mesh.n_cells - 1
    dx = mesh.dx
    lam = material.lambda_cond / dx**2
    a6 = material.alpha / 6.0

    a_ii = sp.diags([-lam, 2.0 * lam, -lam], [-1, 0, 1], shape=(n, n), format="csr")
    m_ii = sp.diags([a6, 4.0 * a6, a6], [-1, 0, 1], shape=(n, n), format="csr")
    a_gg = sp.csr_matrix(np.array([[lam]]))
    m_gg = sp.csr_matrix(np.array([[2.0 * a6]]))

    j = n - 1 if side == "left" else 0
    a_ig = sp.csr_matrix(([-lam], ([j], [0])), shape=(n, 1))
    m_ig = sp.csr_matrix(([a6], ([j], [0])), shape=(n, 1))

    if side == "left":
        x = -1.0 + dx * np.arange(1, n + 1)
    else:
        x = dx * np.arange(1, n + 1)
    return SubdomainOperator(
        mesh=mesh, material=material, side=side,
        m_ii=m_ii, a_ii=a_ii, m_ig=m_ig, a_ig=a_ig,
        m_gi=sp.csr_matrix(m_ig.T), a_gi=sp.csr_matrix(a_ig.T),
        m_gg=m_gg, a_gg=a_gg,
        interior_coords=x.reshape(-1, 1),
        interface_coords=np.zeros((1, 1)),
    )


def _unit_square_mesh(n: int, x_offset: float):
    """Nodes and triangles of the structured unit-square triangulation."""
    xs = x_offset + np.arange(n + 1) / n
    ys = np.arange(n + 1) / n
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    nodes = np.column_stack([xx.ravel(), yy.ravel()])  # index = i*(n+1) + j

    def idx(i, j):
        return i * (n + 1) + j

    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    v00, v10 = idx(ii, jj), idx(ii + 1, jj)
    v11, v01 = idx(ii + 1, jj + 1), idx(ii, jj + 1)
    # each cell split along its lower-left -> upper-right diagonal
    tris = np.vstack([
        np.column_stack([v00, v10, v11]),
        np.column_stack([v00, v11, v01]),
    ])
    return nodes, tris


def _assemble_p1(nodes, tris, lam, alpha):
    """Natural P1 mass/stiffness over the whole node set (no BCs applied)."""
    p = nodes[tris]  # (ntri, 3, 2)
    x, y = p[:, :, 0], p[:, :, 1]
    bx = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    by = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    area2 = x[:, 0] * bx[:, 0] + x[:, 1] * bx[:, 1] + x[:, 2] * bx[:, 2]
    area = 0.5 * np.abs(area2)

    ke = (bx[:, :, None] * bx[:, None, :] + by[:, :, None] * by[:, None, :])
    ke *= (lam / (4.0 * area))[:, None, None]
    me_ref = (np.ones((3, 3)) + np.eye(3)) / 12.0
    me = alpha * area[:, None, None] * me_ref[None, :, :]

    rows = np.repeat(tris, 3, axis=1).ravel()
    cols = np.tile(tris, (1, 3)).ravel()
    nn = nodes.shape[0]
    a_full = sp.coo_matrix((ke.ravel(), (rows, cols)), shape=(nn, nn)).tocsr()
    m_full = sp.coo_matrix((me.ravel(), (rows, cols)), shape=(nn, nn)).tocsr()
    return m_full, a_full


def _full_matrices_2d(material: Material, mesh: MeshSpec, side: str):
    """Unpartitioned 2D matrices plus the node classification."""
    _check_side(side)
    n = mesh.n_cells
    x_offset = -1.0 if side == "left" else 0.0
    nodes, tris = _unit_square_mesh(n, x_offset)
    m_full, a_full = _assemble_p1(nodes, tris, material.lambda_cond, material.alpha)

    i_idx = np.arange((n + 1) * (n + 1)) // (n + 1)
    j_idx = np.arange((n + 1) * (n + 1)) % (n + 1)
    iface_col = n if side == "left" else 0
    on_iface = (i_idx == iface_col) & (j_idx > 0) & (j_idx < n)
    on_boundary = (i_idx == 0) | (i_idx == n) | (j_idx == 0) | (j_idx == n)
    interface = np.where(on_iface)[0]
    interior = np.where(~on_boundary)[0]
    # interface already ascending in y; interior lexicographic in (x, y)
    return m_full, a_full, nodes, interior, interface


def assemble_2d(material: Material, mesh: MeshSpec, side: str) -> SubdomainOperator:
    """Assemble the natural 2D P1 blocks of one subdomain on the unit square."""
    if mesh.dim != 2:
        raise ValueError("assemble_2d needs a 2D mesh")
    m_full, a_full, nodes, interior, interface = _full_matrices_2d(material, mesh, side)

    def block(mat, rows, cols):
        return mat[rows][:, cols].tocsr()

    return SubdomainOperator(
        mesh=mesh, material=material, side=side,
        m_ii=block(m_full, interior, interior), a_ii=block(a_full, interior, interior),
        m_ig=block(m_full, interior, interface), a_ig=block(a_full, interior, interface),
        m_gi=block(m_full, interface, interior), a_gi=block(a_full, interface, interior),
        m_gg=block(m_full, interface, interface), a_gg=block(a_full, interface, interface),
        interior_coords=nodes[interior],
        interface_coords=nodes[interface],
    )


def assemble_operator(material: Material, mesh: MeshSpec, side: str) -> SubdomainOperator:
    """Dimension dispatch for :func:`assemble_1d` / :func:`assemble_2d`."""
    return assemble_1d(material, mesh, side) if mesh.dim == 1 else assemble_2d(material, mesh, side)


def assemble_monolithic(mat1: Material, mat2: Material, mesh: MeshSpec) -> MonolithicOperator:
    """Glue the two subdomain operators into the full-domain reference operator.

    The interface row is the sum of the two subdomain Gamma-row
    contributions; interior rows are untouched.
    """
    op1 = assemble_operator(mat1, mesh, "left")
    op2 = assemble_operator(mat2, mesh, "right")

    def glue(b1_ii, b1_ig, b1_gi, b1_gg, b2_ii, b2_ig, b2_gi, b2_gg):
        return sp.bmat(
            [
                [b1_ii, b1_ig, None],
                [b1_gi, b1_gg + b2_gg, b2_gi],
                [None, b2_ig, b2_ii],
            ],
            format="csr",
        )

    mass = glue(op1.m_ii, op1.m_ig, op1.m_gi, op1.m_gg,
                op2.m_ii, op2.m_ig, op2.m_gi, op2.m_gg)
    stiffness = glue(op1.a_ii, op1.a_ig, op1.a_gi, op1.a_gg,
                     op2.a_ii, op2.a_ig, op2.a_gi, op2.a_gg)
    coords = np.vstack([op1.interior_coords, op1.interface_coords, op2.interior_coords])
    return MonolithicOperator(
        mass=mass, stiffness=stiffness,
        n1=op1.n_interior, s=op1.n_interface, n2=op2.n_interior,
        coords=coords, mesh=mesh, materials=(mat1, mat2),
    )
