#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结果导出模块

所有产物都以确定的方式写出（键排序、固定缩进、'\n' 换行、UTF-8），
同样的输入两次运行得到逐字节相同的文件。
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import pandas as pd
import yaml

from .exceptions import InputOutputError, SchemaError
from .logger import logger


def to_json(data: Dict[str, Any]) -> str:
    """导出为 JSON 文本"""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def to_yaml(data: Dict[str, Any]) -> str:
    """导出为 YAML 文本"""
    return yaml.safe_dump(
        data,
        allow_unicode=True,
        default_flow_style=False,
        sort_keys=True,
        indent=2,
    )


def render(data: Dict[str, Any], format_type: str = 'json') -> str:
    if format_type.lower() in ('yaml', 'yml'):
        return to_yaml(data)
    return to_json(data)


def to_csv(header: Sequence[str], rows: List[Sequence[Any]]) -> str:
    """导出为 CSV 文本"""
    frame = pd.DataFrame(list(rows), columns=list(header))
    return frame.to_csv(index=False, lineterminator="\n")


class ArtifactWriter:
    """把流水线产物写入输出目录"""

    def __init__(self, output_dir: Union[str, Path]):
        self.output_dir = Path(output_dir)
        self.written: List[Path] = []

    def _write(self, name: str, content: str) -> Path:
        path = self.output_dir / name
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding='utf-8', newline='') as f:
                f.write(content)
        except OSError as e:
            logger.error(f"写入文件失败 {path}: {e}")
            raise InputOutputError(f"cannot write {path}: {e}") from e
        self.written.append(path)
        logger.debug(f"已写入 {path} ({len(content)} 字符)")
        return path

    def write_json(self, name: str, data: Dict[str, Any]) -> Path:
        return self._write(name, to_json(data))

    def write_text(self, name: str, text: str) -> Path:
        return self._write(name, text)

    def write_csv(self, name: str, header: Sequence[str], rows: List[Sequence[Any]]) -> Path:
        return self._write(name, to_csv(header, rows))


def load_yaml_file(path: Union[str, Path]) -> Dict[str, Any]:
    """读取 YAML 配置文件"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise InputOutputError(f"cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise SchemaError(f"config {path} is not valid YAML: {e}") from e
    return data or {}
