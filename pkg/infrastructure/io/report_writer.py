from pathlib import Path

from core.model.metrics import MetricsReport

TSV_COLUMNS = ("target", "fold", "tp", "fp", "precision", "recall", "f1", "seconds")


def report_tsv(report: MetricsReport) -> str:
    """Файл отчёта: строки фолдов, сгруппированные по целям в порядке их появления"""
    lines = ["\t".join(TSV_COLUMNS)]
    for target in report.targets:
        for row in (r for r in report.folds if r.target == target):
            lines.append(
                f"{row.target}\t{row.fold}\t{row.tp}\t{row.fp}\t"
                f"{row.precision:.6f}\t{row.recall:.6f}\t{row.f1:.6f}\t{row.seconds:.3f}"
            )
    return "\n".join(lines) + "\n"


def report_table(report: MetricsReport) -> str:
    """Сводка для консоли: макро-показатели по каждой цели"""
    header = f"{'target':<24} {'precision':>9} {'recall':>9} {'f1':>9} {'seconds':>9}"
    lines = [header, "-" * len(header)]
    for s in report.summaries():
        lines.append(f"{s.target:<24} {s.precision:>9.4f} {s.recall:>9.4f} {s.f1:>9.4f} {s.seconds:>9.2f}")
    lines.append(f"{'macro':<24} {report.macro_precision:>9.4f} {report.macro_recall:>9.4f} {report.macro_f1:>9.4f}")
    return "\n".join(lines) + "\n"


def write_report(report: MetricsReport, path: str):
    Path(path).write_text(report_tsv(report), encoding="utf-8")
