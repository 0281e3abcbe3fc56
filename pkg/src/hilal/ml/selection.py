"""Stratified k-fold cross-validation, grid search and classification reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dataset import Dataset
from .hyperparams import FAMILIES, HyperParams, default_grid
from .models import DEFAULT_SEED, train


class InfeasibleSplitError(ValueError):
    pass


def kfold_split(d: Dataset, k: int = 4) -> list:
    """Stratified, unshuffled folds as a list of (train, test) index arrays.

    Rows are dealt to folds class by class in dataset order.  Per-fold class
    counts come from dealing the label-sorted rows round-robin, so fold sizes
    and per-class counts differ by at most one.
    """
    y = d.y
    if k < 2:
        raise InfeasibleSplitError(f"k must be >= 2, got {k}")
    classes, y_enc = np.unique(y, return_inverse=True)
    counts = np.bincount(y_enc)
    if counts.min() < k:
        short = classes[np.argmin(counts)]
        raise InfeasibleSplitError(f"class {short} has {counts.min()} rows, fewer than k={k}")
    y_sorted = np.sort(y_enc)
    allocation = np.array([np.bincount(y_sorted[i::k], minlength=len(classes)) for i in range(k)])
    fold_of = np.empty(len(y), dtype=int)
    for c in range(len(classes)):
        fold_of[y_enc == c] = np.repeat(np.arange(k), allocation[:, c])
    all_idx = np.arange(len(y))
    return [(all_idx[fold_of != f], all_idx[fold_of == f]) for f in range(k)]


@dataclass(frozen=True)
class ClassReport:
    precision: float
    recall: float
    f1: float
    support: int


def classification_report(y_true, y_pred) -> dict:
    """Per-class precision/recall/F1/support; undefined ratios are reported as 0."""
    y_true, y_pred = np.asarray(y_true), np.asarray(y_pred)
    out = {}
    for c in (0, 1):
        tp = int(np.sum((y_pred == c) & (y_true == c)))
        pp = int(np.sum(y_pred == c))
        sup = int(np.sum(y_true == c))
        p = tp / pp if pp else 0.0
        r = tp / sup if sup else 0.0
        f1 = 2 * p * r / (p + r) if p + r else 0.0
        out[c] = ClassReport(p, r, f1, sup)
    return out


@dataclass
class CvReport:
    family: str
    candidates: list = field(default_factory=list)  # HyperParams in grid order
    candidate_scores: list = field(default_factory=list)  # mean fold accuracy or None on error
    errors: dict = field(default_factory=dict)  # candidate index -> message
    best_index: Optional[int] = None
    overall_accuracy: Optional[float] = None
    per_class: dict = field(default_factory=dict)

    @property
    def best_hyperparams(self) -> Optional[HyperParams]:
        return None if self.best_index is None else self.candidates[self.best_index]

    @property
    def best_score(self) -> Optional[float]:
        return None if self.best_index is None else self.candidate_scores[self.best_index]

    def format(self, precision: int = 4) -> str:
        lines = [f"[{self.family}]"]
        for hp, s in zip(self.candidates, self.candidate_scores):
            lines.append(f"  {hp.label():<60} {'error' if s is None else f'{s:.{precision}f}'}")
        if self.best_index is not None:
            lines.append(f"  best: {self.best_hyperparams.label()}  CV score {self.best_score:.{precision}f}")
        if self.overall_accuracy is not None:
            lines.append(f"  overall CV accuracy {self.overall_accuracy:.{precision}f}")
            lines.append(f"  {'class':>6} {'precision':>10} {'recall':>10} {'f1':>10} {'support':>8}")
            for c, r in self.per_class.items():
                lines.append(f"  {c:>6} {r.precision:>10.{precision}f} {r.recall:>10.{precision}f}"
                             f" {r.f1:>10.{precision}f} {r.support:>8d}")
        return "\n".join(lines)


def fold_accuracies(d: Dataset, hp: HyperParams, k: int = 4, seed: int = DEFAULT_SEED) -> list:
    scores = []
    for tr, te in kfold_split(d, k):
        model = train(d.subset(tr), hp, seed)
        scores.append(float(np.mean(model.predict(d.X[te]) == d.y[te])))
    return scores


def grid_search(d: Dataset, family: str, grid: Optional[list] = None, k: int = 4,
                seed: int = DEFAULT_SEED) -> CvReport:
    """Mean test-fold accuracy per candidate; the first best candidate wins.

    A candidate whose training fails is recorded in ``errors`` and skipped.
    """
    grid = default_grid(family) if grid is None else list(grid)
    if not grid:
        raise ValueError("empty hyperparameter grid")
    report = CvReport(family, candidates=grid)
    best = None
    for i, hp in enumerate(grid):
        if hp.family != family:
            raise ValueError(f"grid entry {hp!r} is not a {family} configuration")
        try:
            score = float(np.mean(fold_accuracies(d, hp, k, seed)))
        except Exception as exc:  # noqa: BLE001 - recorded per candidate
            report.errors[i] = f"{type(exc).__name__}: {exc}"
            report.candidate_scores.append(None)
            continue
        report.candidate_scores.append(score)
        if best is None or score > report.candidate_scores[best]:
            best = i
    report.best_index = best
    return report


def cross_val_predict(d: Dataset, hp: HyperParams, k: int = 4, seed: int = DEFAULT_SEED,
                      report: Optional[CvReport] = None):
    """Out-of-fold predictions for every row plus the filled-in report."""
    pred = np.full(len(d), -1, dtype=int)
    for tr, te in kfold_split(d, k):
        model = train(d.subset(tr), hp, seed)
        pred[te] = model.predict(d.X[te])
    if report is None:
        report = CvReport(hp.family, candidates=[hp], candidate_scores=[None], best_index=0)
    report.overall_accuracy = float(np.mean(pred == d.y))
    report.per_class = classification_report(d.y, pred)
    return pred, report


def tune(d: Dataset, family: str, grid: Optional[list] = None, k: int = 4,
         seed: int = DEFAULT_SEED) -> CvReport:
    """Grid search followed by cross-validated predictions of the winner."""
    report = grid_search(d, family, grid, k, seed)
    if report.best_index is not None:
        cross_val_predict(d, report.best_hyperparams, k, seed, report)
    return report


def format_comparison(reports: list, precision: int = 4) -> str:
    """One row per family: best hyperparameters, best CV score, overall CV accuracy."""
    head = f"{'Model':<8} {'Best Hyperparameters':<62} {'Best CV Score':>13} {'Overall CV Accuracy':>19}"
    lines = [head, "-" * len(head)]
    for r in reports:
        if r.best_index is None:
            lines.append(f"{r.family:<8} {'(all candidates failed)':<62}")
            continue
        acc = "" if r.overall_accuracy is None else f"{r.overall_accuracy:.{precision}f}"
        lines.append(f"{r.family:<8} {r.best_hyperparams.label():<62} "
                     f"{r.best_score:>13.{precision}f} {acc:>19}")
    return "\n".join(lines)


__all__ = [
    "FAMILIES", "ClassReport", "CvReport", "InfeasibleSplitError", "classification_report",
    "cross_val_predict", "fold_accuracies", "format_comparison", "grid_search", "kfold_split", "tune",
]
