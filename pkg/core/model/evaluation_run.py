from sqlalchemy import Column, Integer, String, Float, Boolean, DateTime, Text
from sqlalchemy.orm import relationship

from core.model.base import Base


class EvaluationRun(Base):
    __tablename__ = "evaluation_run"

    id = Column(Integer, primary_key=True, autoincrement=True)
    started_at = Column(DateTime, nullable=False)
    kb_path = Column(String(255))
    fuzzification = Column(String(20), nullable=False)
    fuzzy_sets = Column(Integer, nullable=False)
    folds = Column(Integer, nullable=False)
    seed = Column(Integer, nullable=False)
    n_stage = Column(Boolean, default=True)
    macro_f1 = Column(Float)
    parameters = Column(Text)  # RunConfig в JSON

    fold_results = relationship(
        "FoldResult",
        back_populates="run",
        cascade="all, delete-orphan",
        lazy="selectin",
        order_by="FoldResult.id"
    )
