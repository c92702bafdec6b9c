import logging
from pathlib import Path
from typing import Optional, Sequence

import click

from core.model.metrics import MetricsReport
from core.service.evaluation_service import EvaluationService, best_per_target, sweep
from core.service.learner_service import learn
from core.service.reasoner import Reasoner
from infrastructure.config.config import RunConfig, load_run_config, settings
from infrastructure.db.database import Database
from infrastructure.db.repositories import EvaluationRunRepository
from infrastructure.io.csv_converter import csv_to_kb
from infrastructure.io.fuzzyowl_exporter import export_fuzzyowl
from infrastructure.io.hypothesis_store import load_hypothesis, save_hypothesis
from infrastructure.io.kb_loader import dump_examples, load_examples, load_kb, write_kb
from infrastructure.io.report_writer import report_table, report_tsv

logger = logging.getLogger("CLI")

EXISTING_FILE = click.Path(exists=True, dir_okay=False)


def run_options(func):
    """Общие параметры прогона: файл конфигурации и зерно"""
    func = click.option("--seed", type=int, default=None, help="Зерно разбиения на фолды.")(func)
    func = click.option("--config", "config_path", type=EXISTING_FILE, default=None,
                        help="Файл параметров key=value.")(func)
    return func


def _config(config_path: Optional[str], seed: Optional[int]) -> RunConfig:
    return load_run_config(config_path, seed=seed)


def _write(text: str, out: Optional[str]):
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Записан файл {out}")


@click.group()
def cli():
    """Индукция взвешенных нечётких аксиом EL(D) по размеченным индивидам."""


@cli.command()
@click.argument("csv_path", type=EXISTING_FILE)
@click.option("--target", "target_column", required=True, help="Столбец класса.")
@click.option("--positive", "positive_values", multiple=True, help="Значение цели, считающееся положительным.")
@click.option("--positive-min", type=float, default=None, help="Положительные: значение цели не меньше порога.")
@click.option("--target-name", default=None, help="Имя целевого класса (по умолчанию из значения).")
@click.option("--numeric", multiple=True, help="Числовой столбец.")
@click.option("--categorical", multiple=True, help="Категориальный столбец.")
@click.option("--boolean", multiple=True, help="Булев столбец.")
@click.option("--id-column", default=None, help="Столбец с именами индивидов.")
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True)
def convert(csv_path, target_column, positive_values, positive_min, target_name, numeric, categorical,
            boolean, id_column, out):
    """CSV → база знаний и файлы примеров (по одному на цель)."""
    dataset = csv_to_kb(csv_path, target_column, positive_values=positive_values, positive_min=positive_min,
                        numeric=numeric, categorical=categorical, boolean=boolean,
                        id_column=id_column, target_name=target_name)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    kb_path = out_dir / f"{Path(csv_path).stem}.kb"
    write_kb(dataset.kb, str(kb_path))
    click.echo(str(kb_path))
    for target, labels in dataset.examples.items():
        examples_path = out_dir / f"{target}.examples"
        examples_path.write_text(dump_examples(labels), encoding="utf-8")
        click.echo(str(examples_path))


@cli.command(name="learn")
@click.argument("kb_path", type=EXISTING_FILE)
@click.argument("examples_path", type=EXISTING_FILE)
@click.option("--target", default=None, help="Целевой класс (по умолчанию имя файла примеров).")
@run_options
@click.option("--out", type=click.Path(file_okay=False), default=".", show_default=True)
def learn_command(kb_path, examples_path, target, config_path, seed, out):
    """Обучение гипотезы: JSON-файл гипотезы и её запись в fuzzyDL."""
    config = _config(config_path, seed)
    kb = load_kb(kb_path)
    target = target or Path(examples_path).stem
    task = config.task_for(target, load_examples(examples_path))
    hypothesis, families = learn(kb, task)

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    save_hypothesis(str(out_dir / f"{target}.hypothesis.json"), hypothesis, families.values())
    _write(export_fuzzyowl(hypothesis, families.values()), str(out_dir / f"{target}.fuzzyowl"))
    for rule in hypothesis.p_rules + hypothesis.n_rules:
        click.echo(str(rule))
    if hypothesis.is_empty:
        logger.warning(f"{target}: гипотеза пуста")


@cli.command()
@click.argument("kb_path", type=EXISTING_FILE)
@click.argument("hypothesis_path", type=EXISTING_FILE)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Файл результата (иначе stdout).")
def predict(kb_path, hypothesis_path, out):
    """Степень h(a) и решение h(a) > 0 для каждого индивида."""
    kb = load_kb(kb_path)
    hypothesis = load_hypothesis(hypothesis_path).hypothesis
    values = Reasoner.for_hypothesis(kb, hypothesis).hypothesis_values(hypothesis)
    lines = [f"{ind}\t{value:.6f}\t{int(value > 0.0)}" for ind, value in zip(kb.individual_order, values)]
    _write("".join(line + "\n" for line in lines), out)


def _save_runs(db: Database, runs: Sequence[tuple[RunConfig, MetricsReport]], kb_path: str):
    with db.get_session() as session:
        repository = EvaluationRunRepository(session)
        for config, report in runs:
            run = repository.save_report(report, config, kb_path=kb_path)
            logger.info(f"Прогон сохранён в БД (id={run.id})")


@cli.command(name="eval")
@click.argument("kb_path", type=EXISTING_FILE)
@click.option("--examples", "examples_paths", type=EXISTING_FILE, multiple=True, required=True,
              help="Файл примеров; имя файла задаёт целевой класс.")
@click.option("--sweep", "run_sweep", is_flag=True, help="Перебор фаззификаций: uniform/cmeans × 3, 5, 7.")
@click.option("--workers", type=int, default=None, help="Число параллельных фолдов.")
@click.option("--db", "database_url", default=None, help="URL базы результатов (SQLAlchemy).")
@run_options
@click.option("--out", type=click.Path(), default=None,
              help="Файл отчёта TSV (для --sweep каталог отчётов).")
@click.pass_context
def eval_command(ctx, kb_path, examples_paths, run_sweep, workers, database_url, config_path, seed, out):
    """Стратифицированная кросс-валидация по всем целям."""
    config = _config(config_path, seed)
    kb = load_kb(kb_path)
    tasks = [config.task_for(Path(p).stem, load_examples(p)) for p in examples_paths]
    service = EvaluationService(workers=workers or settings.WORKERS, record_timings=config.record_timings)

    if run_sweep:
        reports = sweep(service, kb, tasks, k=config.folds, seed=config.seed)
        runs = [(config.model_copy(update={"fuzzification": method, "fuzzy_sets": sets}), report)
                for (method, sets), report in reports.items()]
        if out is not None:
            out_dir = Path(out)
            out_dir.mkdir(parents=True, exist_ok=True)
            for (method, sets), report in reports.items():
                _write(report_tsv(report), str(out_dir / f"{method.value}_{sets}.tsv"))
        for target, ((method, sets), f1) in best_per_target(reports).items():
            click.echo(f"{target}\t{method.value}/{sets}\t{f1:.4f}")
    else:
        report = service.cross_validate_targets(kb, tasks, k=config.folds, seed=config.seed)
        runs = [(config, report)]
        if out is not None:
            _write(report_tsv(report), out)
        click.echo(report_table(report), nl=False)

    db = Database(database_url) if database_url else (ctx.obj or {}).get("db")
    if db is not None:
        db.init_db()
        _save_runs(db, runs, kb_path)
        if database_url:
            db.close_connection()


@cli.command()
@click.argument("hypothesis_path", type=EXISTING_FILE)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Файл результата (иначе stdout).")
def export(hypothesis_path, out):
    """Запись сохранённой гипотезы в синтаксисе fuzzyDL."""
    stored = load_hypothesis(hypothesis_path)
    _write(export_fuzzyowl(stored.hypothesis, stored.families or None), out)


def cli_main(argv: Optional[Sequence[str]] = None, db: Optional[Database] = None) -> int:
    """Точка входа: 0 — успех, 1 — ошибка данных или файлов, 2 — ошибка вызова"""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="pnowl",
                          standalone_mode=False, obj={"db": db})
        return result if isinstance(result, int) else 0
    except click.UsageError as e:
        e.show()
        return 2
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        click.echo("Прервано", err=True)
        return 1
    except (ValueError, OSError) as e:
        logger.error(f"Ошибка: {e}")
        click.echo(f"Ошибка: {e}", err=True)
        return 1
