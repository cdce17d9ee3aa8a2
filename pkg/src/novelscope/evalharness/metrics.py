"""Classification metrics with exact rational arithmetic."""

from dataclasses import dataclass
from fractions import Fraction

from novelscope.errors import LengthMismatch
from novelscope.evalharness.groundtruth import LABEL_NOVEL


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float
    accuracy: float
    confusion: tuple[int, int, int, int]  # (tp, fp, fn, tn)


def compute_metrics(predictions: list[str], truth: list[str]) -> Metrics:
    """Precision/recall/F1/accuracy with "novel" as the positive class.

    All ratios are computed as exact fractions and converted to float only at
    the end, so results match a counting oracle bit-for-bit.
    """
    if not predictions or len(predictions) != len(truth):
        raise LengthMismatch(
            f"predictions ({len(predictions)}) and truth ({len(truth)}) "
            "must be nonempty and equal length"
        )
    tp = fp = fn = tn = 0
    for pred, true in zip(predictions, truth):
        pred_pos = pred == LABEL_NOVEL
        true_pos = true == LABEL_NOVEL
        if pred_pos and true_pos:
            tp += 1
        elif pred_pos:
            fp += 1
        elif true_pos:
            fn += 1
        else:
            tn += 1

    precision = Fraction(tp, tp + fp) if tp + fp else Fraction(0)
    recall = Fraction(tp, tp + fn) if tp + fn else Fraction(0)
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall > 0
        else Fraction(0)
    )
    accuracy = Fraction(tp + tn, tp + fp + fn + tn)
    return Metrics(
        precision=float(precision),
        recall=float(recall),
        f1=float(f1),
        accuracy=float(accuracy),
        confusion=(tp, fp, fn, tn),
    )
