"""scikit-learn style wrapper around the reduction search.

``fit`` finds the reduced encoder; ``transform`` maps codewords of the
original code onto codewords of the reduced one by the recorded branch
shifts, and ``inverse_transform`` undoes it.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .polymatrix import PolyMatrix, parse_octal, parse_poly_matrix
from .reduction import search_reduction


def _as_encoder(encoder) -> PolyMatrix:
    if isinstance(encoder, PolyMatrix):
        return encoder
    text = str(encoder)
    return parse_poly_matrix(text) if "D" in text else parse_octal(text)


class TailBitingReducer(TransformerMixin, BaseEstimator):
    """Re-encode a tail-biting code with fewer trellis states.

    Parameters
    ----------
    encoder : PolyMatrix or str
        Octal tuple such as ``"(7,5)"`` or polynomial grid such as ``"1+D,D;D^2,1"``.
    n_sections : int
        Number of trellis sections N.
    """

    def __init__(self, encoder="(7,5)", n_sections=5, all_variants=False, partial_division=False, dual="auto"):
        self.encoder = encoder
        self.n_sections = n_sections
        self.all_variants = all_variants
        self.partial_division = partial_division
        self.dual = dual

    def fit(self, X=None, y=None):
        G = _as_encoder(self.encoder)
        n = G.n0 * self.n_sections
        if X is not None:
            X = check_array(X, dtype=np.uint8)
            if X.shape[1] != n:
                raise ValueError(f"expected {n} columns, got {X.shape[1]}")
        rep = search_reduction(
            G, self.n_sections, self.all_variants, self.partial_division, self.dual
        )
        self.report_ = rep
        self.reduced_encoder_ = rep.reduced
        self.shift_vector_ = tuple(rep.shift_vector)
        self.n_features_in_ = n
        dest = np.empty(n, dtype=np.intp)
        for b in range(self.n_sections):
            for j, s in enumerate(self.shift_vector_):
                dest[b * G.n0 + j] = ((b + s) % self.n_sections) * G.n0 + j
        self.destination_ = dest
        return self

    def transform(self, X):
        check_is_fitted(self, "destination_")
        X = check_array(X, dtype=np.uint8)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        out = np.zeros_like(X)
        out[:, self.destination_] = X
        return out

    def inverse_transform(self, X):
        check_is_fitted(self, "destination_")
        X = check_array(X, dtype=np.uint8)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        return X[:, self.destination_]
