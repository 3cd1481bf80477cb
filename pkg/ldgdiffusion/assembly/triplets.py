import numpy as np
import scipy.sparse as sp


class TripletAccumulator:
    """
    Collects N x N blocks as (row, col, value) triplets and builds one CSR
    matrix, summing duplicates. Blocks are stored in the order they are added.
    """

    def __init__(self, num_t, n_local):
        self.num_t = num_t
        self.n_local = n_local
        self.rows = []
        self.cols = []
        self.data = []

    @property
    def shape(self):
        size = self.num_t * self.n_local
        return size, size

    def add_blocks(self, row_t, col_t, blocks, scale=1.0):
        """
        :param row_t: (P,) triangle index of the block row
        :param col_t: (P,) triangle index of the block column
        :param blocks: (P, N, N) local matrices
        """
        row_t = np.asarray(row_t, dtype=np.int64)
        if row_t.size == 0:
            return
        n = self.n_local
        local = np.arange(n)
        rows = row_t[:, None, None] * n + local[None, :, None]
        cols = np.asarray(col_t, dtype=np.int64)[:, None, None] * n + local[None, None, :]
        rows, cols = np.broadcast_arrays(rows, cols)
        self.rows.append(rows.ravel())
        self.cols.append(cols.ravel())
        self.data.append((scale * np.asarray(blocks, dtype=float)).ravel())

    def add_diagonal(self, coefficients, local, mask=None):
        """Adds diag(coefficients) (x) local, restricted to triangles in mask."""
        coefficients = np.asarray(coefficients, dtype=float)
        k = np.arange(len(coefficients)) if mask is None else np.flatnonzero(mask)
        self.add_blocks(k, k, coefficients[k, None, None] * np.asarray(local)[None])

    def to_csr(self):
        if self.data:
            rows = np.concatenate(self.rows)
            cols = np.concatenate(self.cols)
            data = np.concatenate(self.data)
        else:
            rows = cols = np.zeros(0, dtype=np.int64)
            data = np.zeros(0)
        matrix = sp.coo_matrix((data, (rows, cols)), shape=self.shape).tocsr()
        matrix.sum_duplicates()
        matrix.eliminate_zeros()
        matrix.sort_indices()
        return matrix
