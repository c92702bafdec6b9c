from pathlib import Path
from typing import Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from core.errors import FormatError
from core.model.fuzzy import LogicFamily
from core.model.task import FuzzificationMethod, LearningTask


class Settings(BaseSettings):
    LOG_FILE: str = "pnowl.log"
    LOG_LEVEL: str = "INFO"
    DATABASE_URL: Optional[str] = None  # если задан, результаты eval сохраняются в БД
    WORKERS: int = 1

    model_config = SettingsConfigDict(
        # Путь к файлу .env
        env_file=str(Path(__file__).with_name(".env")),
        env_file_encoding="utf-8",
        extra="ignore",
    )


# Создаём экземпляр настроек
settings = Settings()


class RunConfig(BaseModel):
    """Параметры прогона (файл key=value); по умолчанию типичная настройка обеих стадий"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    theta_p: float = Field(0.1, ge=0.0, le=1.0)
    theta_n: float = Field(0.3, ge=0.0, le=1.0)
    eta_p: float = Field(1.0, ge=0.0, le=1.0)
    eta_n: float = Field(0.2, ge=0.0, le=1.0)
    max_conjuncts_p: int = Field(5, ge=1)
    max_conjuncts_n: int = Field(10, ge=1)
    max_depth_p: int = Field(1, ge=0)
    max_depth_n: int = Field(1, ge=0)
    fuzzy_sets: int = 3
    fuzzification: FuzzificationMethod = FuzzificationMethod.UNIFORM
    cmeans_m: float = Field(2.0, gt=1.0)
    cmeans_epsilon: float = Field(0.05, gt=0.0)
    cmeans_max_iterations: int = Field(100, ge=1)
    conjunction: LogicFamily = LogicFamily.GOEDEL
    implication: LogicFamily = LogicFamily.LUKASIEWICZ
    backtrack: int = Field(5, ge=0)
    n_stage: bool = True
    seed: int = 42
    folds: int = Field(5, ge=2)
    record_timings: bool = False

    @field_validator("fuzzy_sets")
    @classmethod
    def _check_fuzzy_sets(cls, value: int) -> int:
        if value not in (3, 5, 7):
            raise ValueError(f"fuzzy_sets должно быть 3, 5 или 7, получено {value}")
        return value

    def task_for(self, target: str, labels: dict) -> LearningTask:
        parameters = self.model_dump(exclude={"folds", "record_timings"})
        return LearningTask(target=target, labels=labels, **parameters)


def load_run_config(path: Optional[str] = None, **overrides) -> RunConfig:
    """Загрузка RunConfig из файла key=value; неизвестные ключи отклоняются"""
    values = {}
    if path is not None:
        if not Path(path).is_file():
            raise FormatError("файл конфигурации не найден", path=path)
        for key, value in dotenv_values(path, encoding="utf-8").items():
            if value is None:
                raise FormatError(f"ключ {key} без значения", path=path)
            values[key.strip().lower()] = value.strip()
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig.model_validate(values)
