#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行入口

子命令：
  weights   读取 CORDIS 表，计算项目主导权重和策略角
  game      运行参数化 EWL 博弈，输出分布、采样计数、推荐分数和线路统计
  evolve    由推荐分数构造 Dirac–Solow–Swan 哈密顿量并输出轨迹 CSV
  pipeline  从数据读取到轨迹的完整流水线，产物写入输出目录
  projects  列出表中各项目的参与机构数和覆盖的主体类型数
"""

import argparse
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import config
from src.circuit import count_ops, export_qasm
from src.cordis import DominanceWeights, IngestOptions, compute_dominance, load_participants, summarize_projects
from src.dss import DssState, TrajectoryMode, build_hamiltonian, trajectory, uniform_state
from src.ewl import RecommenderScores, StrategyAngles, angles_from_dominance, build_ewl_circuit, marginal_scores
from src.exceptions import InvalidArgumentError, PipelineError, SchemaError
from src.exporter import ArtifactWriter, load_yaml_file, render, to_csv
from src.logger import logger, setup_logger
from src.simulator import bitstring, probabilities, run, sample
from src.stage_logger import PipelineStageLogger


def _is_int(value) -> bool:
    # YAML 的 true/false 也是 int
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass
class PipelineConfig:
    """流水线配置"""

    input_path: Optional[str] = None
    project_id: Optional[str] = None
    shots: int = config.DEFAULT_SHOTS
    seed: int = config.DEFAULT_SEED
    scale: float = config.DEFAULT_SCALE
    t_max: float = config.DEFAULT_T_MAX
    steps: int = config.DEFAULT_STEPS
    mode: str = config.DEFAULT_MODE
    output_dir: Optional[str] = None
    exact: bool = False
    psi0: str = config.DEFAULT_PSI0
    project_column: str = config.DEFAULT_PROJECT_COLUMN
    activity_column: str = config.DEFAULT_ACTIVITY_COLUMN
    contribution_column: str = config.DEFAULT_CONTRIBUTION_COLUMN

    @classmethod
    def from_sources(cls, file_values: Optional[Dict[str, Any]] = None,
                     overrides: Optional[Dict[str, Any]] = None) -> "PipelineConfig":
        """配置文件的值先生效，命令行中显式给出的值覆盖它们"""
        known = {f.name for f in fields(cls)}
        values: Dict[str, Any] = {}
        for source in (file_values or {}, overrides or {}):
            unknown = sorted(set(source) - known)
            if unknown:
                raise SchemaError(f"unknown configuration key(s): {', '.join(unknown)}")
            values.update({k: v for k, v in source.items() if v is not None})
        cfg = cls(**values)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        """检查数值范围"""
        if not _is_int(self.shots) or self.shots < 1:
            raise InvalidArgumentError(f"shots must be a positive integer, got {self.shots!r}")
        if not _is_int(self.seed) or not 0 <= self.seed <= config.MAX_SEED:
            raise InvalidArgumentError(f"seed must be an integer in [0, 2^64), got {self.seed!r}")
        for name in ('scale', 't_max'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
                raise InvalidArgumentError(f"{name} must be a positive real, got {value!r}")
        if not _is_int(self.steps) or self.steps < 2:
            raise InvalidArgumentError(f"steps must be an integer >= 2, got {self.steps!r}")
        TrajectoryMode.parse(self.mode)
        if self.psi0 not in config.PSI0_CHOICES:
            raise InvalidArgumentError(f"psi0 must be one of {', '.join(config.PSI0_CHOICES)}, got {self.psi0!r}")

    def ingest_options(self) -> IngestOptions:
        return IngestOptions(
            project_column=self.project_column,
            activity_column=self.activity_column,
            contribution_column=self.contribution_column,
        )

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) in (None, "")]
        if missing:
            raise InvalidArgumentError(f"missing required setting(s): {', '.join(missing)}")


def parse_float_list(text: str, name: str) -> List[float]:
    """解析逗号分隔的实数列表"""
    try:
        values = [float(token) for token in text.split(",") if token.strip() != ""]
    except ValueError:
        raise InvalidArgumentError(f"{name} must be a comma-separated list of numbers, got {text!r}")
    if not values or not all(math.isfinite(v) for v in values):
        raise InvalidArgumentError(f"{name} must be a non-empty list of finite numbers, got {text!r}")
    return values


def weights_payload(weights: DominanceWeights, angles: StrategyAngles) -> Dict[str, Any]:
    """weights.json 的内容"""
    return {
        'project_id': weights.project_id,
        'participants': weights.participants,
        'helix_coverage': weights.coverage,
        'p': weights.to_dict(),
        'theta': angles.to_dict(),
    }


def cmd_weights(cfg: PipelineConfig, format_type: str = 'json') -> str:
    """weights 子命令：输出权重文档，给出输出目录时同时写 weights.json"""
    cfg.require('input_path', 'project_id')
    records = load_participants(cfg.input_path, cfg.ingest_options())
    weights = compute_dominance(records, cfg.project_id)
    document = weights_payload(weights, angles_from_dominance(weights))
    if cfg.output_dir:
        ArtifactWriter(cfg.output_dir).write_json(config.OUTPUT_FILES['weights'], document)
    return render(document, format_type)


def game_document(theta: Sequence[float], shots: int, seed: int, exact: bool) -> Dict[str, Any]:
    """运行博弈并汇总分布、计数、分数和线路统计"""
    circuit = build_ewl_circuit(theta)
    dist = probabilities(run(circuit))
    scores = marginal_scores(dist)
    stats = count_ops(circuit)
    document: Dict[str, Any] = {
        'n_qubits': circuit.n_qubits,
        'theta': [float(t) for t in theta],
        'distribution': dist.as_dict(),
        'scores': scores.to_dict(),
        'stats': stats.to_dict(),
        'bit_order': config.BIT_ORDER_NOTE,
    }
    if not exact:
        counts = sample(dist, shots, seed)
        document.update({'shots': shots, 'seed': seed, 'counts': counts.counts})
    return document


def cmd_game(theta: Sequence[float], shots: int = config.DEFAULT_SHOTS, seed: int = config.DEFAULT_SEED,
             exact: bool = False, n_qubits: int = config.HELIX_QUBITS, format_type: str = 'json') -> str:
    """game 子命令"""
    if len(theta) != n_qubits:
        raise InvalidArgumentError(f"expected {n_qubits} angles, got {len(theta)}")
    PipelineConfig(shots=shots, seed=seed).validate()
    return render(game_document(theta, shots, seed, exact), format_type)


def trajectory_csv(traj) -> str:
    return to_csv(['t', 'p_disruptive'], traj.rows())


def cmd_evolve(scores: Sequence[float], scale: float = config.DEFAULT_SCALE, t_max: float = config.DEFAULT_T_MAX,
               steps: int = config.DEFAULT_STEPS, mode: str = config.DEFAULT_MODE) -> str:
    """evolve 子命令：返回轨迹 CSV 文本"""
    PipelineConfig(scale=scale, t_max=t_max, steps=steps, mode=mode).validate()
    recommender = RecommenderScores.from_q(scores)
    hamiltonian = build_hamiltonian(recommender, scale)
    traj = trajectory(hamiltonian, uniform_state(recommender.n), t_max, steps, mode)
    return trajectory_csv(traj)


def cmd_pipeline(cfg: PipelineConfig, stages: Optional[PipelineStageLogger] = None) -> Path:
    """
    完整流水线：读取 → 权重 → 策略角 → 博弈 → 分数 → 哈密顿量 → 轨迹

    任何阶段失败都会中止，之前阶段已写出的文件保留。

    Args:
        cfg: 流水线配置
        stages: 阶段日志记录器

    Returns:
        Path: 输出目录
    """
    cfg.require('input_path', 'project_id', 'output_dir')
    stages = stages or PipelineStageLogger()
    writer = ArtifactWriter(cfg.output_dir)
    files = config.OUTPUT_FILES
    current = 'ingest'

    try:
        stages.log_stage_start(current)
        records = load_participants(cfg.input_path, cfg.ingest_options())
        stages.log_stage_complete(current, f"{len(records)} participant records from {cfg.input_path}")

        current = 'weights'
        stages.log_stage_start(current)
        weights = compute_dominance(records, cfg.project_id)
        stages.log_stage_complete(current, "p = " + ", ".join(f"{k}={v:.4f}" for k, v in weights.to_dict().items()))

        current = 'angles'
        stages.log_stage_start(current)
        angles = angles_from_dominance(weights)
        writer.write_json(files['weights'], weights_payload(weights, angles))
        stages.log_stage_complete(current, "theta = " + ", ".join(f"{t:.4f}" for t in angles.theta))

        current = 'game'
        stages.log_stage_start(current)
        circuit = build_ewl_circuit(angles)
        stats = count_ops(circuit)
        writer.write_text(files['circuit'], export_qasm(circuit))
        writer.write_json(files['stats'], {**stats.to_dict(), 'n_qubits': circuit.n_qubits})
        dist = probabilities(run(circuit))
        counts = None if cfg.exact else sample(dist, cfg.shots, cfg.seed)
        header = ['bitstring', 'index', 'probability'] + ([] if counts is None else ['count'])
        rows = []
        for k, p in enumerate(dist.probabilities):
            row = [bitstring(k, dist.n_qubits), k, float(p)]
            if counts is not None:
                row.append(counts.count_of(k))
            rows.append(row)
        writer.write_csv(files['distribution'], header, rows)
        sampled = "exact" if counts is None else f"{cfg.shots} shots, seed {cfg.seed}"
        stages.log_stage_complete(
            current, f"{stats.total_unitary_gates} unitary gates, depth {stats.depth}, {sampled}"
        )

        current = 'scores'
        stages.log_stage_start(current)
        scores = marginal_scores(dist)
        writer.write_json(files['scores'], scores.to_dict())
        stages.log_stage_complete(current, "q = " + ", ".join(f"{v:.4f}" for v in scores.q))

        current = 'hamiltonian'
        stages.log_stage_start(current)
        hamiltonian = build_hamiltonian(scores, cfg.scale)
        stages.log_stage_complete(current, "omega = " + ", ".join(f"{w:.4f}" for w in hamiltonian.omega))

        current = 'trajectory'
        stages.log_stage_start(current)
        psi0 = DssState.from_weights(weights.as_array()) if cfg.psi0 == 'weights' else uniform_state(scores.n)
        traj = trajectory(hamiltonian, psi0, cfg.t_max, cfg.steps, cfg.mode)
        writer.write_text(files['trajectory'], trajectory_csv(traj))
        stages.log_stage_complete(
            current, f"{cfg.steps} points to t={cfg.t_max}, mode {traj.mode.value}, "
                     f"min p={traj.p_disruptive.min():.4f}"
        )
    except PipelineError as e:
        stages.log_stage_failed(current, e)
        raise

    logger.success(f"流水线完成，产物写入 {writer.output_dir}")
    return writer.output_dir


def cmd_projects(input_path: str, options: IngestOptions, min_helix_types: int = 0) -> str:
    """projects 子命令：项目概况 CSV"""
    summaries = summarize_projects(load_participants(input_path, options))
    rows = [
        [s.project_id, s.participants, s.total_funding, s.helix_types, ";".join(s.actors)]
        for s in summaries if s.helix_types >= min_helix_types
    ]
    return to_csv(['project_id', 'participants', 'total_funding', 'helix_types', 'actors'], rows)


class PipelineArgumentParser(argparse.ArgumentParser):
    """参数错误转成 InvalidArgumentError，以便统一输出单行错误"""

    def error(self, message):
        raise InvalidArgumentError(message)


def _add_ingest_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--project-column', default=None, help=f"项目编号列名 (默认 {config.DEFAULT_PROJECT_COLUMN})")
    parser.add_argument('--activity-column', default=None, help=f"活动类型列名 (默认 {config.DEFAULT_ACTIVITY_COLUMN})")
    parser.add_argument('--contribution-column', default=None,
                        help=f"资助金额列名 (默认 {config.DEFAULT_CONTRIBUTION_COLUMN})")


def build_parser() -> argparse.ArgumentParser:
    parser = PipelineArgumentParser(prog='app.py', description="四螺旋 EWL 量子博弈与 Dirac–Solow–Swan 演化流水线")
    parser.add_argument('--log-level', default='INFO', type=str.upper,
                        choices=['TRACE', 'DEBUG', 'INFO', 'SUCCESS', 'WARNING', 'ERROR', 'CRITICAL'],
                        help="控制台日志级别")
    parser.add_argument('--log-dir', default=None, help="文件日志目录（不给则不写文件）")
    sub = parser.add_subparsers(dest='command', parser_class=PipelineArgumentParser)
    sub.required = True

    p_weights = sub.add_parser('weights', help="计算主导权重与策略角")
    p_weights.add_argument('--input', dest='input_path', required=True)
    p_weights.add_argument('--project-id', required=True)
    p_weights.add_argument('--output-dir', default=None)
    p_weights.add_argument('--format', dest='format_type', choices=['json', 'yaml'], default='json')
    _add_ingest_arguments(p_weights)

    p_game = sub.add_parser('game', help="运行 EWL 博弈")
    p_game.add_argument('--theta', required=True, help="逗号分隔的策略角（弧度）")
    p_game.add_argument('--qubits', type=int, default=config.HELIX_QUBITS)
    p_game.add_argument('--shots', type=int, default=config.DEFAULT_SHOTS)
    p_game.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
    p_game.add_argument('--exact', action='store_true', help="只输出精确分布，不采样")
    p_game.add_argument('--format', dest='format_type', choices=['json', 'yaml'], default='json')

    p_evolve = sub.add_parser('evolve', help="哈密顿量演化")
    p_evolve.add_argument('--scores', required=True, help="逗号分隔的推荐分数 q_i")
    p_evolve.add_argument('--scale', type=float, default=config.DEFAULT_SCALE)
    p_evolve.add_argument('--t-max', type=float, default=config.DEFAULT_T_MAX)
    p_evolve.add_argument('--steps', type=int, default=config.DEFAULT_STEPS)
    p_evolve.add_argument('--mode', choices=config.TRAJECTORY_MODES, default=config.DEFAULT_MODE)
    p_evolve.add_argument('--output', default=None, help="CSV 输出路径（不给则写到 stdout）")

    p_pipe = sub.add_parser('pipeline', help="完整流水线")
    p_pipe.add_argument('--config', dest='config_file', default=None, help="YAML 配置文件")
    p_pipe.add_argument('--input', dest='input_path', default=None)
    p_pipe.add_argument('--project-id', default=None)
    p_pipe.add_argument('--output-dir', default=None)
    p_pipe.add_argument('--shots', type=int, default=None)
    p_pipe.add_argument('--seed', type=int, default=None)
    p_pipe.add_argument('--scale', type=float, default=None)
    p_pipe.add_argument('--t-max', type=float, default=None)
    p_pipe.add_argument('--steps', type=int, default=None)
    p_pipe.add_argument('--mode', choices=config.TRAJECTORY_MODES, default=None)
    p_pipe.add_argument('--psi0', choices=config.PSI0_CHOICES, default=None)
    p_pipe.add_argument('--exact', action='store_true', default=None)
    _add_ingest_arguments(p_pipe)

    p_projects = sub.add_parser('projects', help="列出项目概况")
    p_projects.add_argument('--input', dest='input_path', required=True)
    p_projects.add_argument('--min-helix-types', type=int, default=0)
    _add_ingest_arguments(p_projects)
    return parser


_PIPELINE_KEYS = {f.name for f in fields(PipelineConfig)}


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k in _PIPELINE_KEYS and v is not None}


def _dispatch(args: argparse.Namespace) -> None:
    out = sys.stdout
    if args.command == 'weights':
        cfg = PipelineConfig.from_sources(overrides=_overrides(args))
        out.write(cmd_weights(cfg, args.format_type))
    elif args.command == 'game':
        theta = parse_float_list(args.theta, 'theta')
        out.write(cmd_game(theta, args.shots, args.seed, args.exact, args.qubits, args.format_type))
    elif args.command == 'evolve':
        scores = parse_float_list(args.scores, 'scores')
        text = cmd_evolve(scores, args.scale, args.t_max, args.steps, args.mode)
        if args.output:
            writer = ArtifactWriter(Path(args.output).parent)
            writer.write_text(Path(args.output).name, text)
        else:
            out.write(text)
    elif args.command == 'pipeline':
        file_values = load_yaml_file(args.config_file) if args.config_file else {}
        if not isinstance(file_values, dict):
            raise SchemaError(f"config {args.config_file} must be a mapping")
        cfg = PipelineConfig.from_sources(file_values, _overrides(args))
        cmd_pipeline(cfg)
    elif args.command == 'projects':
        cfg = PipelineConfig.from_sources(overrides=_overrides(args))
        out.write(cmd_projects(args.input_path, cfg.ingest_options(), args.min_helix_types))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """命令行主函数，返回退出码"""
    try:
        args = build_parser().parse_args(argv)
        setup_logger(args.log_level, args.log_dir)
        _dispatch(args)
    except PipelineError as e:
        sys.stderr.write(e.one_line() + "\n")
        return config.EXIT_CODES.get(e.code, 1)
    except Exception as e:
        # 堆栈只写 DEBUG 日志
        logger.opt(exception=e).debug("未预期的错误")
        sys.stderr.write(f"error[INTERNAL]: {' '.join(str(e).split())}\n")
        return config.EXIT_CODES['INTERNAL']
    return 0


if __name__ == "__main__":
    sys.exit(main())
