"""Visibility dataset handling and the five trained classifiers."""
from .dataset import FEATURES, Dataset, DatasetError, Observation, load_dataset, parse_dataset
from .hyperparams import FAMILIES, HyperParams, UnsupportedOptionError, default_grid
from .models import (
    ConvergenceError,
    TrainedClassifier,
    TrainingError,
    predict,
    train,
    train_forest,
    train_knn,
    train_logreg,
    train_svm,
    train_tree,
)
from .persistence import ModelFormatError, load_model, read_model, save_model, write_model
from .selection import (
    CvReport,
    InfeasibleSplitError,
    classification_report,
    cross_val_predict,
    grid_search,
    kfold_split,
    tune,
)
from .stats import EmptyDatasetError, summary_stats, zone_distribution

__all__ = [
    "FAMILIES", "FEATURES", "ConvergenceError", "CvReport", "Dataset", "DatasetError", "EmptyDatasetError",
    "HyperParams", "InfeasibleSplitError", "ModelFormatError", "Observation", "TrainedClassifier",
    "TrainingError", "UnsupportedOptionError", "classification_report", "cross_val_predict", "default_grid",
    "grid_search", "kfold_split", "load_dataset", "load_model", "parse_dataset", "predict", "read_model",
    "save_model", "summary_stats", "train", "train_forest", "train_knn", "train_logreg", "train_svm",
    "train_tree", "tune", "write_model", "zone_distribution",
]
