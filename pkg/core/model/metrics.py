from statistics import fmean

from pydantic import BaseModel, ConfigDict, Field


def safe_ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


class FoldMetrics(BaseModel):
    """Строка отчёта: одна цель, один фолд"""

    model_config = ConfigDict(frozen=True)

    target: str
    fold: int
    tp: int
    fp: int
    positives: int
    precision: float = Field(ge=0.0, le=1.0)
    recall: float = Field(ge=0.0, le=1.0)
    f1: float = Field(ge=0.0)
    seconds: float = 0.0
    p_rules: int = 0
    n_rules: int = 0
    hypothesis_size: int = 0

    @classmethod
    def from_counts(cls, target: str, fold: int, tp: int, fp: int, positives: int, **extra) -> "FoldMetrics":
        precision = safe_ratio(tp, tp + fp)
        recall = safe_ratio(tp, positives)
        f1 = safe_ratio(2 * precision * recall, precision + recall)
        return cls(target=target, fold=fold, tp=tp, fp=fp, positives=positives,
                   precision=precision, recall=recall, f1=f1, **extra)


class TargetSummary(BaseModel):
    """Макроусреднение по фолдам для одной цели"""

    model_config = ConfigDict(frozen=True)

    target: str
    precision: float
    recall: float
    f1: float
    seconds: float


class MetricsReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    folds: tuple[FoldMetrics, ...] = ()

    @property
    def targets(self) -> tuple:
        return tuple(dict.fromkeys(row.target for row in self.folds))

    def summary(self, target: str) -> TargetSummary:
        rows = [row for row in self.folds if row.target == target]
        return TargetSummary(
            target=target,
            precision=fmean(r.precision for r in rows),
            recall=fmean(r.recall for r in rows),
            f1=fmean(r.f1 for r in rows),
            seconds=sum(r.seconds for r in rows),
        )

    def summaries(self) -> list[TargetSummary]:
        return [self.summary(target) for target in self.targets]

    @property
    def macro_f1(self) -> float:
        """Среднее макро-F1 по целям"""
        summaries = self.summaries()
        return fmean(s.f1 for s in summaries) if summaries else 0.0

    @property
    def macro_precision(self) -> float:
        summaries = self.summaries()
        return fmean(s.precision for s in summaries) if summaries else 0.0

    @property
    def macro_recall(self) -> float:
        summaries = self.summaries()
        return fmean(s.recall for s in summaries) if summaries else 0.0

    def merge(self, other: "MetricsReport") -> "MetricsReport":
        return MetricsReport(folds=self.folds + other.folds)
