from sqlalchemy import Column, Integer, String, Float, ForeignKey
from sqlalchemy.orm import relationship

from core.model.base import Base


class FoldResult(Base):
    __tablename__ = "fold_result"

    id = Column(Integer, primary_key=True, autoincrement=True)
    target = Column(String(100), nullable=False)
    fold = Column(Integer, nullable=False)
    tp = Column(Integer, nullable=False)
    fp = Column(Integer, nullable=False)
    precision = Column(Float, nullable=False)
    recall = Column(Float, nullable=False)
    f1 = Column(Float, nullable=False)
    seconds = Column(Float)
    run_id = Column(Integer, ForeignKey('evaluation_run.id'), nullable=False)

    run = relationship(
        "EvaluationRun",
        back_populates="fold_results",
        lazy="joined"
    )
