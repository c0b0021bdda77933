import sys
from pathlib import Path

dag_path = Path(__file__).parent.parent
sys.path.append(str(dag_path))

from datetime import datetime, timedelta

from airflow import DAG
from airflow.operators.python import PythonOperator
from airflow.utils.log.logging_mixin import LoggingMixin

from config.run import RUN_CONFIG
from src.analysis.csv_report_loader import CsvReportLoader
from src.analysis.report import export_case
from src.cli.config import load_scenario
from src.cli.runner import ScenarioRunner, comparison_tables, load_cells
from src.solve.base_backend import BackendConfig
from src.tariffs.schemes import SCHEME_TAGS

logger = LoggingMixin().log

# Configuration
DEFAULT_ARGS = {
    'owner': 'airflow',
    'depends_on_past': False,
    'start_date': datetime(2024, 1, 1),
    'email_on_failure': False,
    'email_on_retry': False,
    'retries': 0,
    'retry_delay': timedelta(minutes=5),
}

CELLS = [(scheme, limit) for scheme in SCHEME_TAGS for limit in RUN_CONFIG['export_limits']]


def run_cell(scheme: str, export_limit, scenario: str, out_dir: str) -> str:
    """
    Build, solve and report one tariff / export cell.

    Args:
        scheme: Tariff tag
        export_limit: Export cap in kWh/h, None for no cap
        scenario: Scenario JSON document
        out_dir: Output directory of the grid

    Returns:
        Solve status of the cell, pushed to XCom
    """
    logger.info(f"Starting cell {scheme}/{export_case(export_limit)}")
    runner = ScenarioRunner(load_scenario(scenario), BackendConfig.from_config(), out_dir)
    return runner.run_cell(scheme, export_limit).status


def combine_cells(out_dir: str) -> None:
    """Write the combined tables from the cell directories."""
    labels = [f"{scheme}_{export_case(limit)}" for scheme, limit in CELLS]
    loader = CsvReportLoader()
    for name, table in comparison_tables(load_cells(out_dir, labels)).items():
        loader.load_table(name, table, out_dir)


with DAG('zen_tariff_grid',
         default_args=DEFAULT_ARGS,
         schedule_interval=None,
         catchup=False) as dag:

    logger.info("Starting DAG")

    combine_task = PythonOperator(
        task_id='combine_tables',
        python_callable=combine_cells,
        op_kwargs={'out_dir': RUN_CONFIG['out_dir']},
        trigger_rule='all_done',
    )

    for scheme, limit in CELLS:
        cell_task = PythonOperator(
            task_id=f'solve_{scheme}_{export_case(limit)}',
            python_callable=run_cell,
            op_kwargs={
                'scheme': scheme,
                'export_limit': limit,
                'scenario': RUN_CONFIG['scenario'],
                'out_dir': RUN_CONFIG['out_dir'],
            }
        )
        cell_task >> combine_task
