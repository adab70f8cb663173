"""Naive Bayes over discretized features.

Posteriors are the two-class normalization of the smoothed class-conditional
products; accumulation happens in log space. Laplace smoothing uses the
fitted interval count of each feature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ContractViolation

# class indices: 0 = non-keyphrase, 1 = keyphrase
NONKEY, KEY = 0, 1


@dataclass
class NaiveBayesModel:
    feature_names: tuple[str, ...]
    interval_counts: tuple[int, ...]
    class_counts: list[int]  # [nonkey, key]
    # conditional_counts[f][cls][interval]
    conditional_counts: list[list[list[int]]]
    smoothing: float = 1.0

    @property
    def prior(self) -> float:
        """Unsmoothed keyphrase prior from the training counts."""
        return self.class_counts[KEY] / sum(self.class_counts)

    def replace_feature(
        self,
        feature_index: int,
        values: Sequence[int],
        labels: Sequence[bool],
    ) -> None:
        """Retrain one feature's conditional table from a separate vector set
        (features are assumed independent, so this is sound)."""
        n_int = self.interval_counts[feature_index]
        table = [[0] * n_int for _ in range(2)]
        for v, lab in zip(values, labels, strict=True):
            table[int(lab)][min(max(v, 0), n_int - 1)] += 1
        self.conditional_counts[feature_index] = table


def train(
    vectors: Sequence[Sequence[int]],
    labels: Sequence[bool],
    feature_names: Sequence[str],
    interval_counts: Sequence[int],
    smoothing: float = 1.0,
) -> NaiveBayesModel:
    """Tally per-feature, per-interval, per-class counts."""
    if not vectors:
        raise ContractViolation("need at least one training vector")
    if len(vectors) != len(labels):
        raise ContractViolation("vectors and labels must have equal length")
    arity = len(feature_names)
    if len(interval_counts) != arity:
        raise ContractViolation("interval_counts arity mismatch")
    class_counts = [0, 0]
    cond = [[[0] * n for _ in range(2)] for n in interval_counts]
    for x, lab in zip(vectors, labels):
        if len(x) != arity:
            raise ContractViolation(
                f"vector arity {len(x)} != model arity {arity}"
            )
        cls = int(bool(lab))
        class_counts[cls] += 1
        for f, v in enumerate(x):
            n_int = interval_counts[f]
            cond[f][cls][min(max(v, 0), n_int - 1)] += 1
    return NaiveBayesModel(
        tuple(feature_names),
        tuple(interval_counts),
        class_counts,
        cond,
        smoothing,
    )


def class_log_joints(model: NaiveBayesModel, x: Sequence[int]) -> list[float]:
    """Smoothed log p(class) + sum_f log p(x_f | class), for both classes."""
    if len(x) != len(model.feature_names):
        raise ContractViolation(
            f"vector arity {len(x)} != model arity {len(model.feature_names)}"
        )
    s = model.smoothing
    total = sum(model.class_counts)
    joints = []
    for cls in (NONKEY, KEY):
        logp = math.log(model.class_counts[cls] + s) - math.log(total + 2 * s)
        for f, v in enumerate(x):
            n_int = model.interval_counts[f]
            v = min(max(v, 0), n_int - 1)  # clamp out-of-range intervals
            count = model.conditional_counts[f][cls][v]
            logp += math.log(count + s)
            logp -= math.log(model.class_counts[cls] + s * n_int)
        joints.append(logp)
    return joints


def posterior(model: NaiveBayesModel, x: Sequence[int]) -> float:
    """p(keyphrase | x), normalized over the two classes."""
    log_non, log_key = class_log_joints(model, x)
    m = max(log_non, log_key)
    e_non = math.exp(log_non - m)
    e_key = math.exp(log_key - m)
    return e_key / (e_key + e_non)
