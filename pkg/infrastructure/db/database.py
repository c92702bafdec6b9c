import logging

from sqlalchemy import create_engine, text
from sqlalchemy.orm import sessionmaker

from core.model.base import Base  # Импортируем базовый класс и все модели
import core.model  # noqa: F401  регистрирует таблицы в Base.metadata


class Database:
    def __init__(self, database_url: str):
        """
        Подключение к базе результатов.
        :param database_url: Строка подключения SQLAlchemy (например, sqlite:///runs.db).
        """
        self.logger = logging.getLogger("Database")
        self.engine = create_engine(database_url, echo=False)  # echo=True для вывода SQL-запросов
        self.Session = sessionmaker(bind=self.engine, expire_on_commit=False)

    def init_db(self):
        """Создание таблиц evaluation_run и fold_result, если их ещё нет"""
        Base.metadata.create_all(self.engine)

    def get_session(self):
        return self.Session()

    def check_connection(self) -> bool:
        try:
            with self.get_session() as session:
                session.execute(text("SELECT 1"))
            return True
        except Exception as e:
            self.logger.error(f"Ошибка подключения к базе данных: {e}")
            return False

    def close_connection(self):
        """Закрывает пул соединений"""
        try:
            if self.engine is not None:
                self.engine.dispose()
                self.logger.info("Соединение с базой данных закрыто")
        except Exception as e:
            self.logger.error(f"Ошибка при закрытии соединения с БД: {e}")
