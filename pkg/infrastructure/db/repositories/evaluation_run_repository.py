from datetime import datetime
from typing import Optional

from sqlalchemy.orm import selectinload

from core.model import EvaluationRun, FoldResult, MetricsReport
from infrastructure.db.repositories.base_repository import BaseRepository


class EvaluationRunRepository(BaseRepository[EvaluationRun]):
    def __init__(self, session):
        super().__init__(session, EvaluationRun)

    def save_report(self, report: MetricsReport, config, kb_path: Optional[str] = None,
                    started_at: Optional[datetime] = None) -> EvaluationRun:
        """Сохраняет прогон кросс-валидации вместе со строками фолдов"""
        run = EvaluationRun(
            started_at=started_at or datetime.now(),
            kb_path=kb_path,
            fuzzification=config.fuzzification.value,
            fuzzy_sets=config.fuzzy_sets,
            folds=config.folds,
            seed=config.seed,
            n_stage=config.n_stage,
            macro_f1=report.macro_f1,
            parameters=config.model_dump_json(),
        )
        run.fold_results = [
            FoldResult(target=row.target, fold=row.fold, tp=row.tp, fp=row.fp,
                       precision=row.precision, recall=row.recall, f1=row.f1, seconds=row.seconds)
            for row in report.folds
        ]
        return self.add(run)

    def get_run_by_id(self, run_id: int) -> Optional[EvaluationRun]:
        """Прогон с предзагрузкой строк фолдов"""
        return (
            self.session
            .query(EvaluationRun)
            .options(selectinload(EvaluationRun.fold_results))
            .filter(EvaluationRun.id == run_id)
            .first()
        )

    def get_runs_by_kb_path(self, kb_path: str) -> list[EvaluationRun]:
        return self.session.query(EvaluationRun).filter(
            EvaluationRun.kb_path == kb_path
        ).order_by(EvaluationRun.id).all()

    def get_best_run(self, kb_path: Optional[str] = None) -> Optional[EvaluationRun]:
        """Прогон с наибольшим макро-F1 (при равенстве — более ранний)"""
        query = self.session.query(EvaluationRun)
        if kb_path is not None:
            query = query.filter(EvaluationRun.kb_path == kb_path)
        return query.order_by(EvaluationRun.macro_f1.desc(), EvaluationRun.id).first()
