#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CORDIS 数据处理模块

读取 CORDIS 风格的参与机构表（逗号或分号分隔），把活动类型映射到四螺旋主体，
并按项目计算资助主导权重 p_i。
"""

import math
import re
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

import chardet
import numpy as np
import pandas as pd

import config
from .ewl import HelixActor
from .exceptions import (
    DataIntegrityError,
    DegenerateFundingError,
    InputOutputError,
    InvalidArgumentError,
    RowParseError,
    SchemaError,
    UnknownActivityTypeError,
    UnknownProjectError,
)
from .logger import logger

_ACTOR_BY_KEY = {actor.key: actor for actor in HelixActor}
ACTIVITY_TO_ACTOR: Dict[str, HelixActor] = {
    code: _ACTOR_BY_KEY[key] for code, key in config.ACTIVITY_TYPE_MAPPING.items()
}


@dataclass(frozen=True)
class IngestOptions:
    """读取选项：列名可按导出版本改名"""

    project_column: str = config.DEFAULT_PROJECT_COLUMN
    activity_column: str = config.DEFAULT_ACTIVITY_COLUMN
    contribution_column: str = config.DEFAULT_CONTRIBUTION_COLUMN
    organisation_column: str = config.DEFAULT_ORGANISATION_COLUMN
    encoding: Optional[str] = None  # None 表示自动检测
    delimiter: Optional[str] = None  # None 表示从表头自动检测


@dataclass(frozen=True)
class ParticipantRecord:
    """一条参与机构记录"""

    project_id: str
    activity_type: str
    ec_contribution: float
    organisation_id: Optional[str] = None
    row: Optional[int] = None

    @property
    def actor(self) -> HelixActor:
        return map_activity_type(self.activity_type, self.row)


@dataclass(frozen=True)
class DominanceWeights:
    """某个项目的四螺旋主导权重"""

    p: Dict[HelixActor, float]
    project_id: Optional[str] = None
    participants: int = 0

    def as_array(self) -> np.ndarray:
        return np.array([self.p.get(actor, 0.0) for actor in HelixActor.ordered()])

    @property
    def coverage(self) -> int:
        """资助份额大于零的主体数"""
        return sum(1 for value in self.p.values() if value > 0)

    def to_dict(self) -> Dict[str, float]:
        return {actor.key: float(self.p.get(actor, 0.0)) for actor in HelixActor.ordered()}


@dataclass(frozen=True)
class ProjectSummary:
    """项目概况：参与机构数、总资助与覆盖的主体类型数"""

    project_id: str
    participants: int
    total_funding: float
    helix_types: int
    actors: List[str] = field(default_factory=list)


def map_activity_type(code: str, row: Optional[int] = None) -> HelixActor:
    """
    活动类型映射：HES, REC → Academia；PRC → Industry；PUB → Government；OTH → CivilSociety

    Args:
        code: 活动类型代码，大小写不敏感
        row: 出错时报告的数据行号

    Returns:
        HelixActor: 对应的主体
    """
    normalized = (code or "").strip().upper()
    actor = ACTIVITY_TO_ACTOR.get(normalized)
    if actor is None:
        raise UnknownActivityTypeError(code, row)
    return actor


_SPACES = re.compile(r"[\s']")


def parse_amount(text: str, row: Optional[int] = None, line: Optional[int] = None) -> float:
    """
    解析资助金额，兼容小数点/小数逗号和千位分隔符

    同时出现 '.' 和 ',' 时，后出现者为小数分隔符；只出现一个 ',' 时视为小数逗号
    （分号分隔的导出文件的习惯）；多个相同分隔符视为千位分隔符。空值记为 0。
    """
    raw = "" if text is None else str(text)
    cleaned = _SPACES.sub("", raw)
    if cleaned == "":
        return 0.0

    has_dot, has_comma = "." in cleaned, "," in cleaned
    if has_dot and has_comma:
        if cleaned.rfind(",") > cleaned.rfind("."):
            cleaned = cleaned.replace(".", "").replace(",", ".")
        else:
            cleaned = cleaned.replace(",", "")
    elif has_comma:
        if cleaned.count(",") == 1:
            cleaned = cleaned.replace(",", ".")
        else:
            cleaned = cleaned.replace(",", "")
    elif has_dot and cleaned.count(".") > 1:
        cleaned = cleaned.replace(".", "")

    try:
        value = float(cleaned)
    except ValueError:
        raise RowParseError(f"cannot parse contribution {raw!r}", row=row or 0, line=line)
    if not math.isfinite(value):
        raise RowParseError(f"contribution {raw!r} is not finite", row=row or 0, line=line)
    return value


class ParticipantTableReader:
    """参与机构表读取器"""

    def __init__(self, options: Optional[IngestOptions] = None):
        """
        初始化读取器

        Args:
            options: 列名、编码和分隔符选项
        """
        self.options = options or IngestOptions()

    def read(self, path: Union[str, Path]) -> List[ParticipantRecord]:
        """
        读取整张表

        Args:
            path: 表格文件路径

        Returns:
            List[ParticipantRecord]: 每个数据行一条记录
        """
        path = Path(path)
        logger.info(f"开始读取参与机构表: {path}")
        try:
            raw_data = path.read_bytes()
        except OSError as e:
            logger.error(f"读取文件失败: {e}")
            raise InputOutputError(f"cannot read {path}: {e}") from e

        if not raw_data.strip():
            raise SchemaError(f"{path} is empty; a header row is required")

        encoding = self.options.encoding or self._detect_encoding(raw_data)
        try:
            text = raw_data.decode(encoding)
        except (UnicodeDecodeError, LookupError) as e:
            raise InputOutputError(f"cannot decode {path} as {encoding}: {e}") from e

        header = text.lstrip("\ufeff").splitlines()[0]
        delimiter = self.options.delimiter or self._detect_delimiter(header)
        if delimiter not in config.SUPPORTED_DELIMITERS:
            raise InvalidArgumentError(f"unsupported delimiter {delimiter!r}")
        logger.debug(f"分隔符: {delimiter!r}, 编码: {encoding}")

        frame = self._read_frame(path, delimiter, encoding)
        self._check_columns(frame, path)
        records = self._to_records(frame)
        logger.success(f"读取完成，共 {len(records)} 条记录")
        return records

    def _detect_encoding(self, raw_data: bytes) -> str:
        """检测文件编码，能按 UTF-8 解码时一律用 utf-8-sig"""
        try:
            raw_data.decode('utf-8-sig')
            return 'utf-8-sig'
        except UnicodeDecodeError:
            pass
        result = chardet.detect(raw_data)
        encoding = result.get('encoding') or 'latin-1'
        confidence = result.get('confidence') or 0.0
        logger.warning(f"文件不是 UTF-8，检测到编码: {encoding} (置信度: {confidence:.2f})")
        return encoding

    @staticmethod
    def _detect_delimiter(header: str) -> str:
        # 表头里分号多于逗号时按分号分隔
        return ";" if header.count(";") > header.count(",") else ","

    def _read_frame(self, path: Path, delimiter: str, encoding: str) -> pd.DataFrame:
        try:
            frame = pd.read_csv(
                path,
                sep=delimiter,
                dtype=str,
                keep_default_na=False,
                encoding=encoding,
                skipinitialspace=True,
            )
        except pd.errors.EmptyDataError as e:
            raise SchemaError(f"{path} has no header row") from e
        except pd.errors.ParserError as e:
            raise SchemaError(f"{path} is not a well-formed delimited table: {e}") from e
        except OSError as e:
            raise InputOutputError(f"cannot read {path}: {e}") from e
        frame.columns = [str(c).strip() for c in frame.columns]
        return frame

    def _check_columns(self, frame: pd.DataFrame, path: Path) -> None:
        required = [
            self.options.project_column,
            self.options.activity_column,
            self.options.contribution_column,
        ]
        missing = [c for c in required if c not in frame.columns]
        if missing:
            logger.error(f"缺少必需列: {missing}")
            raise SchemaError(
                f"{path} is missing required column(s) {', '.join(missing)}; "
                f"found {', '.join(frame.columns)}"
            )

    def _to_records(self, frame: pd.DataFrame) -> List[ParticipantRecord]:
        opts = self.options
        has_org = opts.organisation_column in frame.columns
        records = []
        for position, values in enumerate(frame.to_dict(orient='records'), start=1):
            line = position + 1
            activity = str(values[opts.activity_column]).strip().upper()
            map_activity_type(activity, position)
            amount = parse_amount(values[opts.contribution_column], row=position, line=line)
            organisation = str(values[opts.organisation_column]).strip() if has_org else None
            records.append(ParticipantRecord(
                project_id=str(values[opts.project_column]).strip(),
                activity_type=activity,
                ec_contribution=amount,
                organisation_id=organisation or None,
                row=position,
            ))
        return records


def load_participants(path: Union[str, Path], options: Optional[IngestOptions] = None) -> List[ParticipantRecord]:
    """读取参与机构表，见 ParticipantTableReader.read"""
    return ParticipantTableReader(options).read(path)


def compute_dominance(records: List[ParticipantRecord], project_id: str) -> DominanceWeights:
    """
    计算项目的主导权重 p_i = 主体 i 的资助之和 / 项目总资助

    Args:
        records: 参与机构记录
        project_id: 项目编号

    Returns:
        DominanceWeights: 四个主体的权重，没有参与者的主体为 0
    """
    project_id = str(project_id).strip()
    selected = [r for r in records if r.project_id == project_id]
    if not selected:
        raise UnknownProjectError(project_id)

    negative = [r for r in selected if r.ec_contribution < 0]
    if negative:
        first = negative[0]
        raise DataIntegrityError(
            f"negative ecContribution {first.ec_contribution!r} at row {first.row} of project {project_id!r}"
        )

    by_actor: Dict[HelixActor, List[float]] = defaultdict(list)
    for record in selected:
        by_actor[record.actor].append(record.ec_contribution)

    total = math.fsum(r.ec_contribution for r in selected)
    if not total > 0:
        raise DegenerateFundingError(f"project {project_id!r} has zero total funding")

    weights = {
        actor: math.fsum(by_actor.get(actor, [])) / total for actor in HelixActor.ordered()
    }
    if abs(math.fsum(weights.values()) - 1.0) > config.SIMPLEX_TOLERANCE:
        raise DataIntegrityError(f"weights of project {project_id!r} do not sum to 1: {list(weights.values())}")
    logger.info(f"项目 {project_id} 主导权重: " + ", ".join(f"{a.key}={v:.4f}" for a, v in weights.items()))
    return DominanceWeights(p=weights, project_id=project_id, participants=len(selected))


def summarize_projects(records: List[ParticipantRecord]) -> List[ProjectSummary]:
    """按项目汇总参与机构数、总资助和覆盖的主体类型数，按项目编号排序"""
    grouped: Dict[str, List[ParticipantRecord]] = defaultdict(list)
    for record in records:
        grouped[record.project_id].append(record)

    summaries = []
    for project_id in sorted(grouped):
        rows = grouped[project_id]
        present = sorted({r.actor for r in rows}, key=lambda actor: actor.qubit)
        summaries.append(ProjectSummary(
            project_id=project_id,
            participants=len(rows),
            total_funding=math.fsum(r.ec_contribution for r in rows),
            helix_types=len(present),
            actors=[actor.key for actor in present],
        ))
    return summaries
