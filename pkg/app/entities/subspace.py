"""Entidade Subspace."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subespaço de R^n representado por uma base ortonormal (n x k)."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        basis = np.array(self.basis, dtype=float)
        if basis.ndim != 2:
            basis = basis.reshape(self.ambient_dim, -1)
        if basis.shape[0] != self.ambient_dim:
            raise ValueError(
                f"Base com {basis.shape[0]} linhas para dimensão ambiente {self.ambient_dim}"
            )
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def projector(self) -> np.ndarray:
        """Projetor ortogonal sobre o subespaço."""
        return self.basis @ self.basis.T

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((ambient_dim, 0)))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim))

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"
