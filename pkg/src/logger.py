#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
日志配置模块

使用 loguru 提供彩色日志输出，支持不同级别的日志显示。
控制台日志写到 stderr，stdout 留给命令行的机器可读输出。
"""

import sys
from pathlib import Path
from typing import Optional, Union

from loguru import logger

CONSOLE_FORMAT = "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def setup_logger(level: str = "INFO", log_dir: Optional[Union[str, Path]] = None) -> None:
    """
    重新配置日志处理器

    Args:
        level: 控制台日志级别
        log_dir: 文件日志目录，为 None 时不写文件
    """
    # 移除已有的日志处理器
    logger.remove()

    # 添加控制台彩色日志处理器
    logger.add(
        sys.stderr,
        format=CONSOLE_FORMAT,
        level=level,
        colorize=True,
        backtrace=True,
        diagnose=False
    )

    # 添加文件日志处理器（可选）
    if log_dir is not None:
        log_path = Path(log_dir)
        log_path.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_path / "pipeline_{time:YYYY-MM-DD}.log",
            format=FILE_FORMAT,
            level="DEBUG",
            rotation="1 day",
            retention="7 days",
            compression="zip",
            encoding="utf-8"
        )


setup_logger("INFO")

# 导出配置好的logger
__all__ = ["logger", "setup_logger"]
