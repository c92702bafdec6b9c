from .evaluation_run_repository import EvaluationRunRepository
