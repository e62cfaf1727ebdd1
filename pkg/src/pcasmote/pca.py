"""Principal component analysis with variance-coverage component selection.

``fit_pca`` eigendecomposes the covariance or correlation matrix of the
training features and keeps the smallest number of leading components whose
cumulative eigenvalue share reaches the requested threshold.  ``transform``
projects rows through ``(x - mean) / scale @ components``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, model_io
from .dataset import Dataset

#: Eigenvalues below this fraction of the largest one count as zero when
#: computing coverage, so rank-deficient data reaches coverage 1.0 exactly.
RANK_TOL = 1e-12


@dataclass(frozen=True)
class PcaModel:
    """Fitted linear reducer.

    ``components`` is (n_features, retained); column j is the eigenvector
    for ``eigenvalues[j]``.  ``scale`` is all ones in covariance mode and the
    per-feature standard deviation (floored) in correlation mode.
    """

    mean: np.ndarray
    scale: np.ndarray
    components: np.ndarray
    eigenvalues: np.ndarray
    retained: int
    variance_threshold: float
    mode: str

    @property
    def n_features(self) -> int:
        return self.mean.shape[0]

    def coverage(self, m: int) -> float:
        """Cumulative variance share of the first ``m`` components."""
        clamped = np.maximum(self.eigenvalues, 0.0)
        total = float(clamped.sum())
        if total == 0.0:
            return 1.0
        return float(clamped[:m].sum()) / total


def retained_for_threshold(eigenvalues: np.ndarray, threshold: float) -> int:
    """Smallest component count whose coverage reaches ``threshold``."""
    clamped = np.maximum(np.asarray(eigenvalues, dtype=np.float64), 0.0)
    if clamped.size == 0:
        raise ValueError("no eigenvalues")
    cutoff = RANK_TOL * max(float(clamped[0]), 1.0)
    clamped[clamped < cutoff] = 0.0
    total = clamped.sum()
    if total == 0.0:
        return 1
    coverage = np.cumsum(clamped) / total
    # tiny fp slack so threshold 1.0 stops at the true rank
    reached = np.nonzero(coverage >= threshold - 1e-12)[0]
    return int(reached[0]) + 1


def fit_pca(ds: Dataset, threshold: float = 0.90, mode: str = "correlation") -> PcaModel:
    """Fit the reducer on a complete dataset.

    Args:
        ds:        dataset with no missing cells and at least two samples.
        threshold: variance coverage target in (0, 1].
        mode:      "covariance" or "correlation" (z-scored features).
    """
    if ds.n_samples < 2:
        raise ValueError("PCA needs at least two samples")
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must lie in (0, 1]")
    if mode not in ("covariance", "correlation"):
        raise ValueError(f"unknown PCA mode {mode!r}")
    if ds.has_missing():
        raise ValueError("dataset still contains missing cells; impute first")

    mean = linalg.mean_vector(ds.features)
    if mode == "correlation":
        sd = linalg.column_std(ds.features)
        scale = np.where(sd < linalg.SD_FLOOR, 1.0, sd)
        basis = linalg.correlation_matrix(ds.features)
    else:
        scale = np.ones(ds.n_features)
        basis = linalg.covariance_matrix(ds.features)

    eig = linalg.jacobi_eigen(basis)
    retained = retained_for_threshold(eig.eigenvalues, threshold)
    return PcaModel(
        mean=mean,
        scale=scale,
        components=eig.eigenvectors[:, :retained].copy(),
        eigenvalues=eig.eigenvalues.copy(),
        retained=retained,
        variance_threshold=threshold,
        mode=mode,
    )


def transform(model: PcaModel, ds: Dataset) -> Dataset:
    """Project a dataset onto the retained components.

    Labels and class names pass through unchanged; features become
    ``PC1 .. PCm``.
    """
    if ds.n_features != model.n_features:
        raise ValueError(
            f"dataset has {ds.n_features} features, model expects {model.n_features}"
        )
    z = (ds.features - model.mean) / model.scale
    projected = z @ model.components
    return Dataset(
        features=projected,
        labels=ds.labels.copy(),
        class_names=ds.class_names,
        feature_names=tuple(f"PC{i}" for i in range(1, model.retained + 1)),
        provenance=ds.provenance,
    )


def save_pca(model: PcaModel, path) -> None:
    model_io.write_blocks(
        path,
        kind="pca",
        scalars={
            "mode": model.mode,
            "threshold": repr(model.variance_threshold),
            "retained": model.retained,
        },
        arrays={
            "mean": model.mean,
            "scale": model.scale,
            "eigenvalues": model.eigenvalues,
            "components": model.components,
        },
    )


def load_pca(path) -> PcaModel:
    scalars, arrays = model_io.read_blocks(path, expected_kind="pca")
    return PcaModel(
        mean=arrays["mean"],
        scale=arrays["scale"],
        components=arrays["components"],
        eigenvalues=arrays["eigenvalues"],
        retained=int(scalars["retained"]),
        variance_threshold=float(scalars["threshold"]),
        mode=scalars["mode"],
    )
