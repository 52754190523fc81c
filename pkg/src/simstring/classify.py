"""Minimal classification harness.

Covers exactly what the comparative experiments need: ZeroR, k-nearest
neighbour (standardized Euclidean, deterministic tie handling), a binary
information-gain tree, a product-rule vote ensemble, stratified k-fold
cross-validation, and single-feature ranking.

Class indices follow sorted label order everywhere, so "smallest class index"
tie-breaking and "lexicographically smallest label" agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from .features import FeatureVector


def to_matrix(rows: Sequence[FeatureVector]) -> Tuple[np.ndarray, List[str], Tuple[str, ...]]:
    """Stacks rows sharing one schema into (X, labels, names)."""
    if not rows:
        raise ValueError("no rows")
    names = rows[0].names
    for r in rows:
        if r.names != names:
            raise ValueError("feature schema mismatch between rows")
        if r.label is None:
            raise ValueError("unlabeled row cannot enter the harness")
    X = np.array([r.values for r in rows], dtype=np.float64)
    return X, [r.label for r in rows], names


# ------------------------------------------------------------------ specs

@dataclass(frozen=True)
class ZeroR:
    pass


@dataclass(frozen=True)
class Knn:
    k: int = 5
    standardize: bool = True
    weighting: str = "uniform"  # or "inverse"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.weighting not in ("uniform", "inverse"):
            raise ValueError("weighting must be 'uniform' or 'inverse'")


@dataclass(frozen=True)
class Tree:
    max_depth: int = 10
    min_leaf: int = 2

    def __post_init__(self):
        if self.max_depth < 1 or self.min_leaf < 1:
            raise ValueError("max_depth and min_leaf must be >= 1")


@dataclass(frozen=True)
class Vote:
    children: Tuple["ClassifierSpec", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("vote needs at least 2 children")


ClassifierSpec = Union[ZeroR, Knn, Tree, Vote]

PROB_FLOOR = 1e-9


# ------------------------------------------------------------------ classifiers

def _zero_r_proba(ytr: np.ndarray, n_test: int, n_classes: int) -> np.ndarray:
    freq = np.bincount(ytr, minlength=n_classes) / len(ytr)
    return np.tile(freq, (n_test, 1))


def _knn_proba(spec: Knn, Xtr, ytr, Xte, n_classes: int) -> np.ndarray:
    n_train = Xtr.shape[0]
    if spec.k > n_train:
        raise ValueError(f"k={spec.k} exceeds training size {n_train}")
    if spec.standardize:
        mean = Xtr.mean(axis=0)
        std = Xtr.std(axis=0)
        keep = std != 0.0  # constant features carry no distance information
        Xtr = (Xtr[:, keep] - mean[keep]) / std[keep]
        Xte = (Xte[:, keep] - mean[keep]) / std[keep]
    onehot = np.eye(n_classes)[ytr]
    tr_sq = np.einsum("ij,ij->i", Xtr, Xtr)
    k = spec.k
    out = np.empty((Xte.shape[0], n_classes))
    chunk = max(1, int(2e7) // max(n_train, 1))  # cap the distance block size
    for lo in range(0, Xte.shape[0], chunk):
        te = Xte[lo : lo + chunk]
        d2 = np.maximum(
            tr_sq[None, :] - 2.0 * (te @ Xtr.T) + np.einsum("ij,ij->i", te, te)[:, None],
            0.0,
        )
        kth = np.partition(d2, k - 1, axis=1)[:, k - 1 : k]
        strict = d2 < kth
        equal = d2 == kth
        need = k - strict.sum(axis=1, keepdims=True)
        # distance ties resolved by training order: first `need` equal columns
        take = equal & (np.cumsum(equal, axis=1) <= need)
        sel = strict | take
        if spec.weighting == "uniform":
            weights = sel.astype(np.float64)
        else:
            weights = np.where(sel, 1.0 / (np.sqrt(d2) + 1e-12), 0.0)
        votes = weights @ onehot
        out[lo : lo + chunk] = votes / votes.sum(axis=1, keepdims=True)
    return out


def _counts_entropy(counts: np.ndarray, totals: np.ndarray) -> np.ndarray:
    """Entropy (nats) per row of class counts with the given row totals."""
    clogc = np.where(counts > 0, counts * np.log(np.maximum(counts, 1)), 0.0)
    return np.log(totals) - clogc.sum(axis=-1) / totals


class _TreeNode:
    __slots__ = ("feature", "threshold", "left", "right", "probs")

    def __init__(self, probs=None, feature=None, threshold=None, left=None, right=None):
        self.probs = probs
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right


def _grow_tree(X, onehot, depth, spec: Tree) -> _TreeNode:
    n = X.shape[0]
    counts = onehot.sum(axis=0)
    probs = counts / n
    if depth >= spec.max_depth or n < 2 * spec.min_leaf or np.count_nonzero(counts) <= 1:
        return _TreeNode(probs=probs)
    parent_h = _counts_entropy(counts, np.array(float(n)))
    best_gain = 0.0
    best = None
    for j in range(X.shape[1]):
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        left_counts = np.cumsum(onehot[order], axis=0)[:-1]
        nl = np.arange(1, n, dtype=np.float64)
        nr = n - nl
        valid = (xs[:-1] < xs[1:]) & (nl >= spec.min_leaf) & (nr >= spec.min_leaf)
        if not valid.any():
            continue
        hl = _counts_entropy(left_counts, nl)
        hr = _counts_entropy(counts[None, :] - left_counts, nr)
        gain = parent_h - (nl * hl + nr * hr) / n
        gain = np.where(valid, gain, -np.inf)
        i = int(np.argmax(gain))
        if gain[i] > best_gain + 1e-12:
            best_gain = float(gain[i])
            best = (j, (xs[i] + xs[i + 1]) / 2.0, order, i)
    if best is None:
        return _TreeNode(probs=probs)
    j, threshold, order, i = best
    left_idx, right_idx = order[: i + 1], order[i + 1 :]
    return _TreeNode(
        feature=j,
        threshold=threshold,
        left=_grow_tree(X[left_idx], onehot[left_idx], depth + 1, spec),
        right=_grow_tree(X[right_idx], onehot[right_idx], depth + 1, spec),
    )


def _tree_proba(spec: Tree, Xtr, ytr, Xte, n_classes: int) -> np.ndarray:
    onehot = np.eye(n_classes)[ytr]
    root = _grow_tree(Xtr, onehot, 0, spec)
    out = np.empty((Xte.shape[0], n_classes))
    for i, x in enumerate(Xte):
        node = root
        while node.probs is None:
            node = node.left if x[node.feature] <= node.threshold else node.right
        out[i] = node.probs
    return out


def predict_proba(spec: ClassifierSpec, Xtr, ytr, Xte, n_classes: int) -> np.ndarray:
    if isinstance(spec, ZeroR):
        return _zero_r_proba(ytr, Xte.shape[0], n_classes)
    if isinstance(spec, Knn):
        return _knn_proba(spec, Xtr, ytr, Xte, n_classes)
    if isinstance(spec, Tree):
        return _tree_proba(spec, Xtr, ytr, Xte, n_classes)
    if isinstance(spec, Vote):
        product = np.ones((Xte.shape[0], n_classes))
        for child in spec.children:
            product *= np.maximum(predict_proba(child, Xtr, ytr, Xte, n_classes), PROB_FLOOR)
        return product / product.sum(axis=1, keepdims=True)
    raise TypeError(f"unknown classifier spec {spec!r}")


def predict(spec: ClassifierSpec, Xtr, ytr, Xte, n_classes: int) -> np.ndarray:
    # argmax takes the first maximum: ties go to the smallest class index
    return np.argmax(predict_proba(spec, Xtr, ytr, Xte, n_classes), axis=1)


# ------------------------------------------------------------------ evaluation

def stratified_kfold(labels: Sequence[str], k: int, seed: int) -> np.ndarray:
    """Fold id per instance; per-class shuffled round-robin, classes visited in
    sorted order from one seeded stream."""
    if k < 2:
        raise ValueError("k must be >= 2")
    by_class: Dict[str, List[int]] = {}
    for i, lab in enumerate(labels):
        by_class.setdefault(lab, []).append(i)
    rng = random.Random(seed)
    folds = np.empty(len(labels), dtype=np.int64)
    for lab in sorted(by_class):
        idx = by_class[lab]
        if len(idx) < k:
            raise ValueError(f"class {lab!r} has {len(idx)} instances, fewer than {k} folds")
        rng.shuffle(idx)
        for pos, i in enumerate(idx):
            folds[i] = pos % k
    return folds


@dataclass
class CvResult:
    classes: Tuple[str, ...]
    fold_accuracies: List[float]
    confusion: np.ndarray  # true class x predicted class

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean(self.fold_accuracies))

    @property
    def accuracy(self) -> float:
        return float(np.trace(self.confusion) / self.confusion.sum())

    def per_class(self) -> Dict[str, Tuple[float, float, float]]:
        """class -> (true-positive rate, precision, recall)."""
        out = {}
        for i, c in enumerate(self.classes):
            tp = self.confusion[i, i]
            actual = self.confusion[i, :].sum()
            predicted = self.confusion[:, i].sum()
            rate = float(tp / actual) if actual else 0.0
            precision = float(tp / predicted) if predicted else 0.0
            out[c] = (rate, precision, rate)
        return out


def evaluate(
    rows: Sequence[FeatureVector], spec: ClassifierSpec, k: int = 10, seed: int = 0
) -> CvResult:
    X, labels, _ = to_matrix(rows)
    classes = tuple(sorted(set(labels)))
    index = {c: i for i, c in enumerate(classes)}
    y = np.array([index[lab] for lab in labels], dtype=np.int64)
    folds = stratified_kfold(labels, k, seed)
    confusion = np.zeros((len(classes), len(classes)), dtype=np.int64)
    fold_accuracies = []
    for f in range(k):
        test_mask = folds == f
        Xtr, ytr = X[~test_mask], y[~test_mask]
        Xte, yte = X[test_mask], y[test_mask]
        pred = predict(spec, Xtr, ytr, Xte, len(classes))
        np.add.at(confusion, (yte, pred), 1)
        fold_accuracies.append(float((pred == yte).mean()))
    return CvResult(classes, fold_accuracies, confusion)


def rank_features(
    rows: Sequence[FeatureVector], spec: ClassifierSpec, k: int = 10, seed: int = 0
) -> List[Tuple[str, float]]:
    """Cross-validated accuracy of each feature alone; descending, name-tied."""
    if not rows:
        raise ValueError("no rows")
    names = rows[0].names
    scores = []
    for j, name in enumerate(names):
        single = [FeatureVector((name,), (r.values[j],), r.label) for r in rows]
        result = evaluate(single, spec, k, seed)
        scores.append((name, result.mean_accuracy))
    scores.sort(key=lambda item: (-item[1], item[0]))
    return scores
