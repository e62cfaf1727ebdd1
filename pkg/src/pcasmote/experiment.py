"""Five-method comparison harness.

The default flow evaluates, in order: the imputed raw dataset (Initial), its
PCA reduction (PCA), and the chained oversampling stages (SMOTE1..n), each
under seeded stratified cross-validation with naive Bayes.  Per seed, the
held-out predictions of all folds are pooled into one confusion matrix; the
reported row is the mean over seeds with min/max and medians retained.

``resample_scope`` controls where oversampling happens: ``whole-dataset``
resamples once up front (synthetic neighbours of test points may then appear
in training — the historical protocol this harness reproduces), while
``train-folds-only`` resamples inside each training fold and tests only on
original samples.
"""

from __future__ import annotations

import hashlib
import statistics
from dataclasses import dataclass, field

from . import __version__
from .dataset import (
    Dataset,
    class_counts,
    impute_missing,
    load_dataset,
    stratified_folds,
)
from .metrics import MetricRow, confusion_matrix, metric_row
from .naive_bayes import fit_nb, predict_matrix
from .pca import PcaModel, fit_pca, transform
from .rng import derive_seed
from .smote import balance_sequence

PROTOCOLS = ("k-fold", "leave-one-out")
RESAMPLE_SCOPES = ("whole-dataset", "train-folds-only")

RATE_FIELDS = ("accuracy", "fp_rate", "precision", "recall", "misclassified")


@dataclass
class PcaSettings:
    threshold: float = 0.90
    mode: str = "correlation"
    fit_within_fold: bool = False


@dataclass
class SmoteSettings:
    k: int = 5
    order: tuple[str, ...] = ("TypeA", "TypeC", "TypeB")
    per_class_target: int = 18
    seed: int = 7


@dataclass
class EvalSettings:
    protocol: str = "k-fold"
    k: int = 10
    seeds: tuple[int, ...] = tuple(range(1, 21))
    resample_scope: str = "whole-dataset"


@dataclass
class ExperimentConfig:
    dataset: str
    imputation: str = "mode"
    pca: PcaSettings = field(default_factory=PcaSettings)
    smote: SmoteSettings = field(default_factory=SmoteSettings)
    eval: EvalSettings = field(default_factory=EvalSettings)


@dataclass(frozen=True)
class EvalSummary:
    """Mean metrics over seeds plus the per-seed rows and spreads."""

    mean: MetricRow
    per_seed: tuple[tuple[int, MetricRow], ...]
    ranges: dict            # field -> (min, max) over seeds
    misclassified_median: float


@dataclass(frozen=True)
class StepResult:
    method_name: str
    n_features: int
    n_samples: int
    class_counts: list[int]
    summary: EvalSummary


@dataclass(frozen=True)
class ExperimentReport:
    config: dict
    steps: tuple[StepResult, ...]
    dataset_sha256: str
    toolkit_version: str
    resample_scope: str
    pca_mode: str
    pca_retained: int
    pca_retained_other_mode: int


def _pool_predictions(ds: Dataset, n_folds: int, seed: int):
    """Cross-validate naive Bayes on a fixed dataset; pooled label pairs."""
    assignment = stratified_folds(ds, n_folds, seed)
    actual: list[int] = []
    predicted: list[int] = []
    for fold in range(n_folds):
        test_idx = assignment.test_indices(fold)
        if test_idx.size == 0:
            continue
        model = fit_nb(ds.subset(assignment.train_indices(fold)))
        preds = predict_matrix(model, ds.features[test_idx])
        actual.extend(int(ds.labels[i]) for i in test_idx)
        predicted.extend(int(p) for p in preds)
    return actual, predicted


def _summarise(
    rows: list[tuple[int, MetricRow]], method_name: str, n_samples: int, n_features: int
) -> EvalSummary:
    def values(name):
        return [getattr(row, name) for _, row in rows]

    acc = statistics.fmean(values("accuracy"))
    mean_row = MetricRow(
        method_name=method_name,
        n_samples=n_samples,
        n_features=n_features,
        accuracy=acc,
        fp_rate=statistics.fmean(values("fp_rate")),
        precision=statistics.fmean(values("precision")),
        recall=statistics.fmean(values("recall")),
        misclassified=round(statistics.fmean(values("misclassified"))),
    )
    ranges = {name: (min(values(name)), max(values(name))) for name in RATE_FIELDS}
    return EvalSummary(
        mean=mean_row,
        per_seed=tuple(rows),
        ranges=ranges,
        misclassified_median=float(statistics.median(values("misclassified"))),
    )


def _check_eval_args(ds: Dataset, protocol: str, k: int, seeds) -> int:
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}")
    if not seeds:
        raise ValueError("need at least one evaluation seed")
    for name, count in zip(ds.class_names, class_counts(ds)):
        if count < 2:
            raise ValueError(f"class {name} has {count} sample(s); need at least 2")
    return ds.n_samples if protocol == "leave-one-out" else k


def evaluate_dataset(
    ds: Dataset,
    protocol: str = "k-fold",
    k: int = 10,
    seeds=(1,),
    method_name: str = "",
) -> EvalSummary:
    """Seeded cross-validation of naive Bayes on one fixed dataset."""
    n_folds = _check_eval_args(ds, protocol, k, seeds)
    rows = []
    for seed in seeds:
        actual, predicted = _pool_predictions(ds, n_folds, seed)
        cm = confusion_matrix(actual, predicted, ds.n_classes, ds.class_names)
        rows.append((seed, metric_row(cm, method_name, ds.n_features)))
    return _summarise(rows, method_name, ds.n_samples, ds.n_features)


def evaluate_fold_pipeline(
    base: Dataset,
    cfg: ExperimentConfig,
    pca_model: PcaModel | None,
    n_smote_runs: int,
    method_name: str,
) -> EvalSummary:
    """Leak-free evaluation: PCA/SMOTE applied inside each training fold.

    ``pca_model`` is the globally fitted reducer, ignored when
    ``cfg.pca.fit_within_fold`` is set.  Test folds stay original, so the
    pooled sample count equals the base dataset size.
    """
    n_folds = _check_eval_args(base, cfg.eval.protocol, cfg.eval.k, cfg.eval.seeds)
    order_idx = resolve_order(base, cfg.smote.order)[:n_smote_runs]
    rows = []
    n_features = pca_model.retained if pca_model is not None else base.n_features
    for seed_pos, seed in enumerate(cfg.eval.seeds):
        assignment = stratified_folds(base, n_folds, seed)
        actual: list[int] = []
        predicted: list[int] = []
        for fold in range(n_folds):
            test_idx = assignment.test_indices(fold)
            if test_idx.size == 0:
                continue
            train = base.subset(assignment.train_indices(fold))
            test = base.subset(test_idx)
            model = pca_model
            if cfg.pca.fit_within_fold:
                model = fit_pca(train, cfg.pca.threshold, cfg.pca.mode)
            if model is not None:
                train = transform(model, train)
                test = transform(model, test)
                n_features = model.retained
            if order_idx:
                fold_seed = derive_seed(derive_seed(cfg.smote.seed, seed_pos), fold)
                train = balance_sequence(
                    train,
                    order_idx,
                    cfg.smote.per_class_target,
                    k=cfg.smote.k,
                    seed=fold_seed,
                )[-1]
            nb = fit_nb(train)
            preds = predict_matrix(nb, test.features)
            actual.extend(int(y) for y in test.labels)
            predicted.extend(int(p) for p in preds)
        cm = confusion_matrix(actual, predicted, base.n_classes, base.class_names)
        rows.append((seed, metric_row(cm, method_name, n_features)))
    return _summarise(rows, method_name, base.n_samples, n_features)


def resolve_order(ds: Dataset, order: tuple[str, ...]) -> list[int]:
    """Map class names from the config onto label indices."""
    indices = []
    for name in order:
        if name not in ds.class_names:
            raise ValueError(f"unknown class {name!r} in smote order")
        indices.append(ds.class_names.index(name))
    return indices


def _config_echo(cfg: ExperimentConfig) -> dict:
    return {
        "dataset": cfg.dataset,
        "imputation": cfg.imputation,
        "pca": {
            "threshold": cfg.pca.threshold,
            "mode": cfg.pca.mode,
            "fit_within_fold": cfg.pca.fit_within_fold,
        },
        "smote": {
            "k": cfg.smote.k,
            "order": list(cfg.smote.order),
            "per_class_target": cfg.smote.per_class_target,
            "seed": cfg.smote.seed,
        },
        "eval": {
            "protocol": cfg.eval.protocol,
            "k": cfg.eval.k,
            "seeds": list(cfg.eval.seeds),
            "resample_scope": cfg.eval.resample_scope,
        },
    }


def method_names(n_smote_runs: int) -> list[str]:
    return ["Initial", "PCA"] + [f"SMOTE{i}" for i in range(1, n_smote_runs + 1)]


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Execute the full comparison described by ``cfg``."""
    raw = load_dataset(cfg.dataset)
    imputed = impute_missing(raw, cfg.imputation)
    order_idx = resolve_order(imputed, cfg.smote.order)

    pca_model = fit_pca(imputed, cfg.pca.threshold, cfg.pca.mode)
    other_mode = "covariance" if cfg.pca.mode == "correlation" else "correlation"
    other_model = fit_pca(imputed, cfg.pca.threshold, other_mode)

    names = method_names(len(order_idx))
    steps: list[StepResult] = []

    def fixed_step(ds: Dataset, name: str) -> StepResult:
        summary = evaluate_dataset(
            ds, cfg.eval.protocol, cfg.eval.k, cfg.eval.seeds, method_name=name
        )
        return StepResult(
            method_name=name,
            n_features=ds.n_features,
            n_samples=ds.n_samples,
            class_counts=class_counts(ds),
            summary=summary,
        )

    if cfg.eval.resample_scope == "whole-dataset":
        reduced = transform(pca_model, imputed)
        datasets = [imputed, reduced] + balance_sequence(
            reduced,
            order_idx,
            cfg.smote.per_class_target,
            k=cfg.smote.k,
            seed=cfg.smote.seed,
        )
        for ds, name in zip(datasets, names):
            steps.append(fixed_step(ds, name))
    elif cfg.eval.resample_scope == "train-folds-only":
        steps.append(fixed_step(imputed, "Initial"))
        fold_pca = None if cfg.pca.fit_within_fold else pca_model
        for i, name in enumerate(names[1:]):
            summary = evaluate_fold_pipeline(imputed, cfg, fold_pca, i, name)
            steps.append(
                StepResult(
                    method_name=name,
                    n_features=summary.mean.n_features,
                    n_samples=imputed.n_samples,
                    class_counts=class_counts(imputed),
                    summary=summary,
                )
            )
    else:
        raise ValueError(f"unknown resample scope {cfg.eval.resample_scope!r}")

    return ExperimentReport(
        config=_config_echo(cfg),
        steps=tuple(steps),
        dataset_sha256=_sha256_of(cfg.dataset),
        toolkit_version=__version__,
        resample_scope=cfg.eval.resample_scope,
        pca_mode=cfg.pca.mode,
        pca_retained=pca_model.retained,
        pca_retained_other_mode=other_model.retained,
    )


def misclassified_count(row: MetricRow) -> int:
    """Number of pooled test predictions the row got wrong."""
    return row.misclassified


def _sha256_of(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        digest.update(fh.read())
    return digest.hexdigest()
