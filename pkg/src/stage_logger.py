#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
流水线阶段日志记录器

每个阶段结束时向 stdout 打印一行摘要，耗时写入日志。
"""

import sys
import time
from typing import Dict, Optional, TextIO

from .logger import logger


class PipelineStageLogger:
    """记录流水线各阶段的开始、完成和耗时"""

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream or sys.stdout
        self.timings: Dict[str, float] = {}
        self._started: Dict[str, float] = {}

    def log_stage_start(self, stage: str) -> None:
        """记录阶段开始"""
        self._started[stage] = time.perf_counter()
        logger.info(f"开始阶段: {stage}")

    def log_stage_complete(self, stage: str, summary: str) -> None:
        """记录阶段完成并打印一行摘要"""
        started = self._started.pop(stage, None)
        if started is not None:
            self.timings[stage] = time.perf_counter() - started
            logger.info(f"阶段 {stage} 完成 - 耗时: {self.timings[stage]:.3f}秒")
        self.stream.write(f"[{stage}] {summary}\n")
        self.stream.flush()

    def log_stage_failed(self, stage: str, error: Exception) -> None:
        """记录阶段失败"""
        self._started.pop(stage, None)
        logger.error(f"阶段 {stage} 失败: {error}")

    def total_time(self) -> float:
        return sum(self.timings.values())
