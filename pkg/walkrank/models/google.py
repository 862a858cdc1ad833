import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator


class GoogleModel:
    """
    The Google matrix P = alpha*S + (1 - alpha)*v*1^T, kept implicit.

    ``h`` is the column-substochastic link matrix (A^T scaled by out-degree),
    ``dangling`` the indicator of zero out-degree nodes. S and P are never
    formed; ``apply`` computes P @ x from ``h`` and two rank-one corrections.
    """

    def __init__(
        self,
        h: sp.csr_matrix,
        dangling: np.ndarray,
        alpha: float,
        preference: np.ndarray,
        uniform_preference: bool = True,
    ):
        self.h = h
        self.dangling = dangling
        self.alpha = float(alpha)
        self.preference = preference
        self.uniform_preference = uniform_preference
        self.n = h.shape[0]

        self.h.data.flags.writeable = False
        self.dangling.flags.writeable = False
        self.preference.flags.writeable = False

    @property
    def has_dangling(self) -> bool:
        return bool(self.dangling.any())

    def apply_s(self, x: np.ndarray) -> np.ndarray:
        return self.h @ x + (self.dangling @ x) / self.n

    def apply(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).ravel()
        return self.alpha * self.apply_s(x) + (1.0 - self.alpha) * x.sum() * self.preference

    def as_operator(self) -> LinearOperator:
        return LinearOperator(
            (self.n, self.n),
            matvec=self.apply,
            rmatvec=self._apply_t,
            dtype=float,
        )

    def _apply_t(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float).ravel()
        return (
            self.alpha * (self.h.T @ y + self.dangling * y.sum() / self.n)
            + (1.0 - self.alpha) * (self.preference @ y) * np.ones(self.n)
        )

    def dense(self) -> np.ndarray:
        """Materialise P; only meant for small graphs."""
        ones = np.ones(self.n)
        s = self.h.toarray() + np.outer(ones, self.dangling) / self.n
        return self.alpha * s + (1.0 - self.alpha) * np.outer(self.preference, ones)

    def __repr__(self):
        return f"<GoogleModel n={self.n} alpha={self.alpha} dangling={int(self.dangling.sum())}>"
