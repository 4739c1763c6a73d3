#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义模块

所有流水线错误都继承 PipelineError，并携带一个稳定的错误码，
命令行据此输出 `error[<CODE>]: <message>` 并选择退出码。
"""

from typing import Optional


class PipelineError(Exception):
    """流水线错误基类"""

    code = "INTERNAL"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def one_line(self) -> str:
        """单行、可 grep 的错误描述"""
        text = " ".join(self.message.split())
        return f"error[{self.code}]: {text}"


class InvalidArgumentError(PipelineError, ValueError):
    """参数不合法"""

    code = "INVALID_ARGUMENT"


class SchemaError(PipelineError):
    """输入表格结构错误（缺列、空文件、无法识别的 QASM 语句）"""

    code = "SCHEMA_ERROR"


class RowParseError(PipelineError):
    """某一数据行无法解析"""

    code = "PARSE_ERROR"

    def __init__(self, message: str, row: int, line: Optional[int] = None):
        location = f"row {row}" if line is None else f"row {row} (line {line})"
        super().__init__(f"{location}: {message}")
        self.row = row
        self.line = line


class UnknownActivityTypeError(PipelineError):
    """无法映射到四螺旋主体的活动类型"""

    code = "UNKNOWN_ACTIVITY_TYPE"

    def __init__(self, activity_code: str, row: Optional[int] = None):
        where = "" if row is None else f" at row {row}"
        super().__init__(f"unknown activity type {activity_code!r}{where}")
        self.activity_code = activity_code
        self.row = row


class UnknownProjectError(PipelineError):
    """数据中不存在的项目"""

    code = "UNKNOWN_PROJECT"

    def __init__(self, project_id: str):
        super().__init__(f"no participant records for project {project_id!r}")
        self.project_id = project_id


class DegenerateFundingError(PipelineError):
    """项目总资助为零"""

    code = "DEGENERATE_FUNDING"


class DataIntegrityError(PipelineError):
    """数据完整性错误，例如负的资助金额"""

    code = "DATA_INTEGRITY"


class DegenerateScoresError(PipelineError):
    """推荐分数全部为零"""

    code = "DEGENERATE_SCORES"


class InputOutputError(PipelineError):
    """文件读写失败"""

    code = "IO_ERROR"
