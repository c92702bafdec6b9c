import logging
import sys
from typing import Optional, Sequence

from infrastructure.config.config import settings
from infrastructure.db.database import Database
from ui.cli import cli_main


class Application:
    def __init__(self):
        """Инициализация приложения"""
        self.logger = logging.getLogger("App")
        self.db: Optional[Database] = None
        self._logging_initialized = False

        # Настраиваем логирование
        self.setup_logging()

    def setup_logging(self):
        """Настройка системы логирования"""
        if self._logging_initialized:
            return

        level = getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)

        # Создаем форматтер
        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S"
        )

        # Консольный обработчик (stderr, чтобы не смешивать с результатами команд)
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)

        # Файловый обработчик
        file_handler = logging.FileHandler(settings.LOG_FILE, encoding="utf-8")
        file_handler.setFormatter(formatter)

        root_logger = logging.getLogger()
        root_logger.handlers = []
        root_logger.setLevel(level)
        root_logger.addHandler(console_handler)
        root_logger.addHandler(file_handler)

        self._logging_initialized = True

    def initialize_db(self) -> bool:
        """Подключение к базе результатов, если задан DATABASE_URL"""
        if not settings.DATABASE_URL:
            return True
        try:
            self.db = Database(settings.DATABASE_URL)
            if not self.db.check_connection():
                raise ConnectionError("Не удалось подключиться к БД")

            self.db.init_db()
            self.logger.info("База данных результатов инициализирована")
            return True
        except Exception as e:
            self.logger.critical(f"Ошибка инициализации БД: {e}")
            self.db = None
            return False

    def shutdown(self):
        if self.db is not None:
            self.db.close_connection()

    def run(self, argv: Sequence[str]) -> int:
        """Основной метод запуска приложения"""
        if not self.initialize_db():
            return 1
        try:
            return cli_main(argv, db=self.db)
        finally:
            self.shutdown()


if __name__ == "__main__":
    sys.exit(Application().run(sys.argv[1:]))
