"""
Five classifiers, stratified 4-fold CV and grid search
======================================================

Everything (logistic regression, linear SVM, CART, random forest, k-NN) is
implemented on numpy alone.  Grid search scores each candidate by mean
test-fold accuracy; the winner is then cross-validated once more to get
out-of-fold predictions for every row.
"""

import sys
import tempfile
from pathlib import Path

import numpy as np

import hilal
from hilal.ml import FAMILIES, load_dataset, read_model, train, tune, write_model
from hilal.ml.selection import format_comparison, kfold_split

path = sys.argv[1] if len(sys.argv) > 1 else Path(hilal.__file__).parent / "data" / "surrogate_rabat.csv"
d = load_dataset(path)

for i, (tr, te) in enumerate(kfold_split(d, 4)):
    print(f"fold {i}: test {len(te)} rows, seen {int(d.y[te].sum())}")

reports = [tune(d, family, seed=42) for family in FAMILIES]
print(format_comparison(reports))

lr = reports[0]
print()
print(lr.format())

# refit the winner on all rows and keep it
model = train(d, lr.best_hyperparams)
print("weights", model.model.weights, "intercept", model.model.intercept)
out = Path(tempfile.gettempdir()) / "logreg.model"
write_model(model, out)
print(out.read_text())
assert np.array_equal(read_model(out).predict(d.X), model.predict(d.X))

# the decision boundary in (ARCV, W): ARCV at which P(seen) = 0.5
w = np.linspace(0, 1.6, 5)
arcv = -(model.model.intercept + model.model.weights[1] * w) / model.model.weights[0]
print("W", w, "\nARCV at p=0.5", np.round(arcv, 2))
