from typing import Generic, Optional, TypeVar

from sqlalchemy.orm import Session

ModelT = TypeVar("ModelT")


class BaseRepository(Generic[ModelT]):
    def __init__(self, session: Session, model: type[ModelT]):
        self.session = session
        self.model = model

    def get_by_id(self, id: int) -> Optional[ModelT]:
        """Получение записи по ID"""
        return self.session.query(self.model).filter(self.model.id == id).first()

    def get_all(self) -> list[ModelT]:
        return self.session.query(self.model).order_by(self.model.id).all()

    def add(self, instance: ModelT) -> ModelT:
        """Добавить новую запись"""
        self.session.add(instance)
        self.session.commit()
        return instance

    def delete(self, instance: ModelT):
        self.session.delete(instance)
        self.session.commit()
