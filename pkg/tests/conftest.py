import sys
from pathlib import Path

import pytest

from src.logger import logger

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

COVEND_PROJECT = "101045956"
COVEND_WEIGHTS = (0.5102, 0.3239, 0.0136, 0.1523)
COVEND_ANGLES = (1.5912, 1.2109, 0.2337, 0.8018)


@pytest.fixture(autouse=True)
def quiet_logger():
    # 每次写入时才取 sys.stderr，兼容 capsys 的替换
    logger.remove()
    logger.add(lambda message: sys.stderr.write(message), level="WARNING", format="{level} | {message}")
    yield


@pytest.fixture
def covend_path() -> Path:
    return DATA_DIR / "covend_participants.csv"


@pytest.fixture
def write_table(tmp_path):
    """把文本写成临时表格文件"""

    def _write(text: str, name: str = "participants.csv", encoding: str = "utf-8") -> Path:
        path = tmp_path / name
        path.write_bytes(text.encode(encoding))
        return path

    return _write
