"""pcasmote: dimensionality reduction + minority oversampling toolkit.

Builds five comparable views of a small imbalanced tabular dataset — the raw
baseline, a PCA reduction, and successive SMOTE balancing stages — and
evaluates each with Gaussian naive Bayes under seeded stratified
cross-validation, reporting accuracy, false-positive rate, precision,
recall, and misclassification counts.
"""

__version__ = "0.1.0"

from .dataset import Dataset, class_counts, impute_missing, load_uci_lung_cancer
from .experiment import ExperimentConfig, run_experiment
from .metrics import ConfusionMatrix, MetricRow
from .naive_bayes import NbModel, fit_nb, predict
from .pca import PcaModel, fit_pca, transform
from .smote import SmoteConfig, balance_sequence, oversample_class

__all__ = [
    "__version__",
    "Dataset",
    "class_counts",
    "impute_missing",
    "load_uci_lung_cancer",
    "ExperimentConfig",
    "run_experiment",
    "ConfusionMatrix",
    "MetricRow",
    "NbModel",
    "fit_nb",
    "predict",
    "PcaModel",
    "fit_pca",
    "transform",
    "SmoteConfig",
    "balance_sequence",
    "oversample_class",
]
