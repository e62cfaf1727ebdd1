import numpy as np
import pytest

from pcasmote.dataset import Dataset
from pcasmote.experiment import (
    EvalSettings,
    ExperimentConfig,
    PcaSettings,
    SmoteSettings,
    evaluate_dataset,
    method_names,
    misclassified_count,
    run_experiment,
)
from pcasmote.rng import Rng


def gaussian_blobs(rng, centers, n_per_class, spread):
    rows, labels = [], []
    for cls, center in enumerate(centers):
        for _ in range(n_per_class):
            rows.append([c + rng.gauss(0, spread) for c in center])
            labels.append(cls)
    return Dataset(
        features=np.array(rows),
        labels=np.array(labels),
        class_names=tuple(f"c{i}" for i in range(len(centers))),
        feature_names=tuple(f"f{i}" for i in range(len(centers[0]))),
    )


class _PyRandom:
    """Adapter: gauss() on top of the toolkit Rng for test data."""

    def __init__(self, seed):
        self.rng = Rng(seed)

    def gauss(self, mu, sigma):
        import math

        u1 = 1.0 - self.rng.random()
        u2 = self.rng.random()
        return mu + sigma * math.sqrt(-2 * math.log(u1)) * math.cos(2 * math.pi * u2)


def default_config(data_file, **eval_kwargs) -> ExperimentConfig:
    return ExperimentConfig(
        dataset=str(data_file),
        imputation="mode",
        pca=PcaSettings(),
        smote=SmoteSettings(),
        eval=EvalSettings(**eval_kwargs) if eval_kwargs else EvalSettings(),
    )


class TestEvaluateDataset:
    def test_perfectly_separable_data(self):
        ds = gaussian_blobs(_PyRandom(1), [(0.0, 0.0), (50.0, 50.0)], 10, 0.5)
        for protocol in ("k-fold", "leave-one-out"):
            summary = evaluate_dataset(ds, protocol, k=5, seeds=(1, 2))
            assert summary.mean.accuracy == 1.0
            assert summary.mean.fp_rate == 0.0
            assert summary.mean.misclassified == 0

    def test_leave_one_out_pools_every_sample(self):
        ds = gaussian_blobs(_PyRandom(2), [(0.0,), (3.0,)], 8, 1.0)
        summary = evaluate_dataset(ds, "leave-one-out", k=10, seeds=(7,))
        assert summary.mean.n_samples == 16
        (seed, row), = summary.per_seed
        assert row.misclassified <= 16

    def test_leave_one_out_seed_independent(self):
        ds = gaussian_blobs(_PyRandom(3), [(0.0,), (2.0,)], 9, 1.0)
        summary = evaluate_dataset(ds, "leave-one-out", k=2, seeds=(1, 2, 3))
        accs = [row.accuracy for _, row in summary.per_seed]
        assert len(set(accs)) == 1

    def test_protocols_agree_near_bayes_rate(self):
        # blobs at +/-1 with sd 1: Bayes error = P(N(0,1) > 1) ~ 0.1587
        ds = gaussian_blobs(_PyRandom(4), [(-1.0, -1.0), (1.0, 1.0)], 60, 1.0)
        kfold = evaluate_dataset(ds, "k-fold", k=10, seeds=tuple(range(1, 6)))
        loo = evaluate_dataset(ds, "leave-one-out", k=10, seeds=(1,))
        # 2-D blobs at distance 2*sqrt(2): Bayes accuracy = Phi(sqrt(2)) ~ 0.921
        bayes = 0.921
        assert abs(kfold.mean.accuracy - loo.mean.accuracy) < 0.1
        assert abs(kfold.mean.accuracy - bayes) < 0.1
        assert abs(loo.mean.accuracy - bayes) < 0.1

    def test_pooled_matrix_total_per_seed(self, lung):
        summary = evaluate_dataset(lung, "k-fold", k=10, seeds=(1, 2, 3))
        for _, row in summary.per_seed:
            assert row.n_samples == 32
            assert 0 <= row.misclassified <= 32

    def test_mean_and_ranges(self):
        ds = gaussian_blobs(_PyRandom(5), [(0.0,), (1.5,)], 12, 1.0)
        summary = evaluate_dataset(ds, "k-fold", k=4, seeds=tuple(range(1, 9)))
        accs = [row.accuracy for _, row in summary.per_seed]
        assert abs(summary.mean.accuracy - sum(accs) / len(accs)) < 1e-12
        assert summary.ranges["accuracy"] == (min(accs), max(accs))

    def test_requires_two_samples_per_class(self):
        ds = gaussian_blobs(_PyRandom(6), [(0.0,), (4.0,)], 3, 0.1)
        lopsided = ds.subset([0, 1, 2, 3])  # class 1 keeps one sample
        with pytest.raises(ValueError):
            evaluate_dataset(lopsided, "k-fold", k=2, seeds=(1,))

    def test_unknown_protocol_rejected(self, lung):
        with pytest.raises(ValueError):
            evaluate_dataset(lung, "bootstrap", k=2, seeds=(1,))


@pytest.fixture(scope="module")
def report(data_file):
    return run_experiment(default_config(data_file, seeds=tuple(range(1, 4))))


class TestRunExperiment:
    def test_five_steps_in_order(self, report):
        assert [s.method_name for s in report.steps] == [
            "Initial",
            "PCA",
            "SMOTE1",
            "SMOTE2",
            "SMOTE3",
        ]

    def test_sample_count_column(self, report):
        assert [s.n_samples for s in report.steps] == [32, 32, 41, 49, 54]

    def test_class_count_trajectory(self, report):
        assert [s.class_counts for s in report.steps] == [
            [9, 13, 10],
            [9, 13, 10],
            [18, 13, 10],
            [18, 13, 18],
            [18, 18, 18],
        ]

    def test_feature_count_column(self, report):
        n_initial = report.steps[0].n_features
        assert n_initial == 56
        reduced = [s.n_features for s in report.steps[1:]]
        assert all(n == report.pca_retained for n in reduced)

    def test_sample_column_nondecreasing_with_cumulative_synthesis(self, report):
        samples = [s.n_samples for s in report.steps[1:]]
        assert samples == sorted(samples)
        assert samples[-1] == 32 + (18 - 9) + (18 - 10) + (18 - 13)

    def test_retained_counts_reported(self, report):
        assert 1 <= report.pca_retained <= 56
        assert 1 <= report.pca_retained_other_mode <= 56
        assert report.pca_mode == "correlation"

    def test_dataset_checksum_present(self, report):
        assert len(report.dataset_sha256) == 64

    def test_deterministic_reports(self, data_file):
        cfg = default_config(data_file, seeds=(1, 2))
        a = run_experiment(cfg)
        b = run_experiment(cfg)
        assert a == b

    def test_empty_order_truncates_to_two_steps(self, data_file):
        cfg = default_config(data_file, seeds=(1,))
        cfg.smote = SmoteSettings(order=())
        report = run_experiment(cfg)
        assert [s.method_name for s in report.steps] == ["Initial", "PCA"]

    def test_method_names_helper(self):
        assert method_names(0) == ["Initial", "PCA"]
        assert method_names(3) == ["Initial", "PCA", "SMOTE1", "SMOTE2", "SMOTE3"]


class TestTrainFoldsOnlyScope:
    def test_smoke_and_sample_counts(self, data_file):
        cfg = default_config(
            data_file, seeds=(1, 2), resample_scope="train-folds-only"
        )
        report = run_experiment(cfg)
        assert [s.method_name for s in report.steps] == [
            "Initial",
            "PCA",
            "SMOTE1",
            "SMOTE2",
            "SMOTE3",
        ]
        # tests stay original in this scope: every pooled count is 32
        assert [s.n_samples for s in report.steps] == [32] * 5
        for step in report.steps:
            assert 0.0 <= step.summary.mean.accuracy <= 1.0
        assert report.resample_scope == "train-folds-only"

    def test_fit_within_fold_runs(self, data_file):
        cfg = default_config(
            data_file, seeds=(1,), resample_scope="train-folds-only"
        )
        cfg.pca = PcaSettings(fit_within_fold=True)
        report = run_experiment(cfg)
        assert len(report.steps) == 5


class TestMisclassified:
    def test_perfect_accuracy_zero(self):
        ds = gaussian_blobs(_PyRandom(7), [(0.0,), (40.0,)], 6, 0.1)
        summary = evaluate_dataset(ds, "k-fold", k=3, seeds=(1,))
        assert misclassified_count(summary.mean) == 0

    def test_counts_complement_accuracy(self, lung):
        summary = evaluate_dataset(lung, "k-fold", k=10, seeds=(5,))
        (_, row), = summary.per_seed
        assert misclassified_count(row) == 32 - round(row.accuracy * 32)
